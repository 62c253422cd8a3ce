//! Essential orders of stratified multiplicity data: from matrices of
//! standard/proper-standard composition multiplicities, compute the
//! minimal partial order forced by the nonzero entries, and run the
//! consistency checks available at that level of generality (Cartan row
//! divisibility at maximal labels, reciprocity against endomorphism
//! dimensions, idempotence, agreement with Bruhat order on the group
//! instances).
//!
//! Orientation: lambda precedes mu exactly when L_lambda occurs in the
//! standard or proper standard object of mu. On regular group-block
//! data this comes out anti-isomorphic to Bruhat order under the
//! identity labeling; comparisons against Bruhat-ascending figures go
//! through an explicit reversal, never a silent flip.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bruhat::{bruhat_order, OrderError, OrderRelation};
use crate::cosets::{coset_poset, CosetError};
use crate::coxeter::{EnumeratedGroup, ParabolicSubset};
use crate::hecke::HeckeContext;
use crate::wposet::{WeightedPoset, WposetError};

#[derive(Debug, Error)]
pub enum StratError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix {name} must be {n}x{n} to match the labels")]
    Shape { name: &'static str, n: usize },
    #[error("standard diagonal multiplicity must be positive at {0}")]
    StandardDiagonal(String),
    #[error("proper standard diagonal multiplicity must be 1 at {0}")]
    ProperDiagonal(String),
    #[error("endomorphism dimension vector must have length {0}")]
    EndoShape(usize),
    #[error("multiplicity data is not stratifiable, essential order has a cycle: {0}")]
    Cycle(String),
    #[error("check requires projective filtration multiplicities")]
    MissingProjData,
    #[error("check requires endomorphism dimensions")]
    MissingEndoData,
    #[error(transparent)]
    Order(OrderError),
    #[error(transparent)]
    Poset(#[from] WposetError),
}

/// Multiplicity data of one stratified block. Matrix rows are indexed
/// by the standard object, columns by the simple: delta[mu][lambda] is
/// the multiplicity of L_lambda in the standard object of mu, and
/// pbar_delta the same for the proper standard object. proj_delta, when
/// present, has proj_delta[lambda][mu] = multiplicity of the standard
/// object of mu in a projective filtration of P_lambda; d are
/// endomorphism-algebra dimensions; base_order lists covers (i, j) with
/// i below j of an ambient order the essential order must refine.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StratData {
    pub labels: Vec<String>,
    pub delta: Vec<Vec<u64>>,
    pub pbar_delta: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub proj_delta: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub base_order: Option<Vec<(usize, usize)>>,
}

/// Row verdicts of the Cartan check at one maximal label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanRowCheck {
    pub label: String,
    /// Cartan diagonal entry c[lambda][lambda].
    pub diagonal: u64,
    /// diagonal <= every nonzero c[lambda][mu]
    pub inequality_ok: bool,
    /// every c[lambda][mu] is a multiple of the diagonal
    pub divisibility_ok: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CartanRowReport {
    pub rows: Vec<CartanRowCheck>,
}

impl CartanRowReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.inequality_ok && r.divisibility_ok)
    }
}

impl StratData {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Shape and diagonal invariants: square matrices matching the
    /// label count, positive standard diagonal, proper standard
    /// diagonal exactly 1.
    pub fn validate_basic(&self) -> Result<(), StratError> {
        let n = self.size();
        let square = |m: &[Vec<u64>]| m.len() == n && m.iter().all(|row| row.len() == n);
        if !square(&self.delta) {
            return Err(StratError::Shape { name: "delta", n });
        }
        if !square(&self.pbar_delta) {
            return Err(StratError::Shape {
                name: "pbar_delta",
                n,
            });
        }
        if let Some(f) = &self.proj_delta {
            if !square(f) {
                return Err(StratError::Shape {
                    name: "proj_delta",
                    n,
                });
            }
        }
        if let Some(d) = &self.d {
            if d.len() != n {
                return Err(StratError::EndoShape(n));
            }
        }
        for i in 0..n {
            if self.delta[i][i] == 0 {
                return Err(StratError::StandardDiagonal(self.labels[i].clone()));
            }
            if self.pbar_delta[i][i] != 1 {
                return Err(StratError::ProperDiagonal(self.labels[i].clone()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String, StratError> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<StratData, StratError> {
        let data: StratData = serde_json::from_str(s)?;
        data.validate_basic()?;
        Ok(data)
    }

    fn label_cycle(&self, e: OrderError) -> StratError {
        match e {
            OrderError::Cycle(path) => StratError::Cycle(
                path.iter()
                    .chain(path.first())
                    .map(|&i| self.labels[i].as_str())
                    .collect::<Vec<_>>()
                    .join(" -> "),
            ),
            other => StratError::Order(other),
        }
    }

    /// The supplied ambient order, closed from its cover list.
    pub fn base_order_relation(&self) -> Result<Option<OrderRelation>, StratError> {
        match &self.base_order {
            None => Ok(None),
            Some(covers) => OrderRelation::from_edges(self.size(), covers)
                .map(Some)
                .map_err(|e| self.label_cycle(e)),
        }
    }

    /// The essential order: the minimal partial order containing
    /// (lambda, mu) for every lambda != mu whose simple occurs in the
    /// standard or proper standard object of mu. Independent of
    /// base_order by construction.
    pub fn essential_order(&self) -> Result<OrderRelation, StratError> {
        self.validate_basic()?;
        let n = self.size();
        let mut edges = Vec::new();
        for mu in 0..n {
            for la in 0..n {
                if la != mu && (self.delta[mu][la] != 0 || self.pbar_delta[mu][la] != 0) {
                    edges.push((la, mu));
                }
            }
        }
        OrderRelation::from_edges(n, &edges).map_err(|e| self.label_cycle(e))
    }

    /// Recomputing the essential order with itself installed as the
    /// base order is a fixed point, and the essential order refines the
    /// supplied base order when one is present.
    pub fn check_idempotence(&self) -> Result<bool, StratError> {
        let eo = self.essential_order()?;
        let mut replayed = self.clone();
        replayed.base_order = Some(
            eo.covers()
                .iter()
                .map(|&(a, b)| (a as usize, b as usize))
                .collect(),
        );
        if replayed.essential_order()? != eo {
            return Ok(false);
        }
        if let Some(base) = self.base_order_relation()? {
            let n = self.size();
            for i in 0..n {
                for j in 0..n {
                    if eo.leq(i, j) && !base.leq(i, j) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Cartan matrix c[lambda][mu] = sum_nu F[lambda][nu] D[nu][mu].
    fn cartan_matrix(&self) -> Result<Vec<Vec<u64>>, StratError> {
        let f = self.proj_delta.as_ref().ok_or(StratError::MissingProjData)?;
        let n = self.size();
        let mut c = vec![vec![0u64; n]; n];
        for (c_row, f_row) in c.iter_mut().zip(f) {
            for (nu, &f_val) in f_row.iter().enumerate() {
                if f_val != 0 {
                    for (c_val, &d_val) in c_row.iter_mut().zip(&self.delta[nu]) {
                        *c_val += f_val * d_val;
                    }
                }
            }
        }
        Ok(c)
    }

    /// At every label maximal in the base order (essential order when
    /// no base is supplied): the Cartan diagonal is minimal among the
    /// nonzero row entries and divides the whole row.
    pub fn check_cartan_row(&self) -> Result<CartanRowReport, StratError> {
        self.validate_basic()?;
        let c = self.cartan_matrix()?;
        let base = match self.base_order_relation()? {
            Some(b) => b,
            None => self.essential_order()?,
        };
        let rows = base
            .maximal_vertices()
            .into_iter()
            .map(|la| {
                let diag = c[la][la];
                let inequality_ok = diag > 0
                    && c[la].iter().all(|&entry| entry == 0 || diag <= entry);
                let divisibility_ok =
                    diag > 0 && c[la].iter().all(|&entry| entry % diag == 0);
                CartanRowCheck {
                    label: self.labels[la].clone(),
                    diagonal: diag,
                    inequality_ok,
                    divisibility_ok,
                }
            })
            .collect();
        Ok(CartanRowReport { rows })
    }

    /// Reciprocity: d_mu F[lambda][mu] = d_lambda pbar_delta[mu][lambda]
    /// for all pairs.
    pub fn check_reciprocity(&self) -> Result<bool, StratError> {
        self.validate_basic()?;
        let f = self.proj_delta.as_ref().ok_or(StratError::MissingProjData)?;
        let d = self.d.as_ref().ok_or(StratError::MissingEndoData)?;
        let n = self.size();
        for la in 0..n {
            for mu in 0..n {
                if d[mu] * f[la][mu] != d[la] * self.pbar_delta[mu][la] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Entrywise filtration identity delta[mu] = delta[mu][mu] *
    /// pbar_delta[mu], the shadow of standard objects being filtered by
    /// proper standard ones under a duality.
    pub fn check_duality_filtration(&self) -> bool {
        let n = self.size();
        (0..n).all(|mu| {
            (0..n).all(|la| self.delta[mu][la] == self.delta[mu][mu] * self.pbar_delta[mu][la])
        })
    }

    /// The weight of each label: the standard diagonal multiplicity
    /// (equal to the standard endomorphism dimension over an
    /// algebraically closed field).
    pub fn weight_function(&self) -> Vec<u64> {
        (0..self.size()).map(|i| self.delta[i][i]).collect()
    }

    /// The weighted poset invariant carried by this data: weights from
    /// weight_function over the essential order.
    pub fn invariant_poset(&self) -> Result<WeightedPoset, StratError> {
        Ok(WeightedPoset::new(
            self.weight_function(),
            self.essential_order()?,
        )?)
    }
}

/// Minimal multiplicity data whose invariant is the given weighted
/// poset: the standard diagonal carries the weight, proper standard
/// multiplicities put a 1 on each cover edge, and the filtration
/// identity fixes the off-diagonal standard entries.
pub fn from_weighted_poset(poset: &WeightedPoset) -> StratData {
    let n = poset.size();
    let weights = poset.weights();
    let mut delta = vec![vec![0u64; n]; n];
    let mut pbar = vec![vec![0u64; n]; n];
    for i in 0..n {
        delta[i][i] = weights[i];
        pbar[i][i] = 1;
    }
    for &(lo, hi) in poset.order().covers() {
        let (lo, hi) = (lo as usize, hi as usize);
        pbar[hi][lo] = 1;
        delta[hi][lo] = weights[hi];
    }
    StratData {
        labels: (0..n).map(|i| format!("p{i}")).collect(),
        delta,
        pbar_delta: pbar,
        proj_delta: None,
        d: Some(weights.to_vec()),
        base_order: Some(
            poset
                .order()
                .covers()
                .iter()
                .map(|&(a, b)| (a as usize, b as usize))
                .collect(),
        ),
    }
}

/// Multiplicity data of the regular group block: labels are reduced
/// words, standard multiplicities come from the canonical-basis
/// evaluation at 1, the projective filtration is its transpose, all
/// endomorphism dimensions are 1, and the base order is reversed
/// Bruhat.
pub fn regular_block_data(group: &EnumeratedGroup) -> StratData {
    let ctx = HeckeContext::new(group);
    let n = group.order();
    let elements: Vec<_> = group.elements().collect();
    let mut delta = vec![vec![0u64; n]; n];
    for (y_idx, &y) in elements.iter().enumerate() {
        for (x_idx, &x) in elements.iter().enumerate() {
            delta[y_idx][x_idx] = ctx.verma_multiplicity(y, x);
        }
    }
    let proj = (0..n)
        .map(|la| (0..n).map(|mu| delta[mu][la]).collect())
        .collect();
    StratData {
        labels: elements.iter().map(|&w| group.word_string(w)).collect(),
        pbar_delta: delta.clone(),
        delta,
        proj_delta: Some(proj),
        d: Some(vec![1; n]),
        base_order: Some(
            bruhat_order(group)
                .reversed()
                .covers()
                .iter()
                .map(|&(a, b)| (a as usize, b as usize))
                .collect(),
        ),
    }
}

/// Certifies the Bruhat agreement available from group combinatorics:
/// with no quotient the essential order of the regular block data is
/// exactly reversed Bruhat order; with a quotient subset G the Bruhat
/// restrictions to longest and shortest coset representatives of G\W
/// must coincide.
pub fn check_bruhat_conformance(
    group: &EnumeratedGroup,
    g_set: &ParabolicSubset,
) -> Result<bool, StratError> {
    if g_set.is_empty() {
        let eo = regular_block_data(group).essential_order()?;
        Ok(eo == bruhat_order(group).reversed())
    } else {
        let empty = ParabolicSubset::empty(group.rank());
        match coset_poset(group, g_set, &empty) {
            Ok(_) => Ok(true),
            Err(WposetError::Coset(CosetError::RepresentativeMismatch(_, _))) => Ok(false),
            Err(other) => Err(other.into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_group, CoxeterDatum};

    fn group(name: &str) -> EnumeratedGroup {
        build_group(&CoxeterDatum::parse(name).unwrap()).unwrap()
    }

    fn diagonal_data(n: usize) -> StratData {
        let mut delta = vec![vec![0u64; n]; n];
        let mut pbar = vec![vec![0u64; n]; n];
        for i in 0..n {
            delta[i][i] = 1;
            pbar[i][i] = 1;
        }
        StratData {
            labels: (0..n).map(|i| format!("x{i}")).collect(),
            delta,
            pbar_delta: pbar,
            proj_delta: None,
            d: None,
            base_order: None,
        }
    }

    #[test]
    fn semisimple_data_gives_discrete_order() {
        let data = diagonal_data(3);
        let eo = data.essential_order().unwrap();
        assert_eq!(eo, OrderRelation::discrete(3));
        assert!(data.check_idempotence().unwrap());
        assert!(data.check_duality_filtration());
        assert_eq!(data.weight_function(), vec![1, 1, 1]);
    }

    #[test]
    fn sl2_block_is_a_two_chain() {
        let g = group("A1");
        let data = regular_block_data(&g);
        assert_eq!(data.labels, vec!["e", "1"]);
        assert_eq!(data.delta, vec![vec![1, 1], vec![0, 1]]);
        let eo = data.essential_order().unwrap();
        // the longer word sits below the identity
        assert!(eo.leq(1, 0));
        assert!(!eo.leq(0, 1));
        assert_eq!(eo, bruhat_order(&g).reversed());
        assert!(data.check_idempotence().unwrap());
        assert!(data.check_reciprocity().unwrap());
    }

    #[test]
    fn regular_blocks_reverse_bruhat() {
        for name in ["A2", "B2", "G2"] {
            let g = group(name);
            let data = regular_block_data(&g);
            data.validate_basic().unwrap();
            let eo = data.essential_order().unwrap();
            assert_eq!(eo, bruhat_order(&g).reversed(), "{name}");
            assert!(data.check_idempotence().unwrap(), "{name}");
            assert!(data.check_reciprocity().unwrap(), "{name}");
            assert!(data.check_duality_filtration(), "{name}");
            assert_eq!(data.weight_function(), vec![1; g.order()], "{name}");
        }
    }

    #[test]
    fn essential_order_ignores_base_order() {
        let g = group("A2");
        let mut data = regular_block_data(&g);
        let eo = data.essential_order().unwrap();
        data.base_order = None;
        assert_eq!(data.essential_order().unwrap(), eo);
        // enlarge the base order to the full reversed Bruhat relation
        let bo = bruhat_order(&g);
        let full: Vec<(usize, usize)> = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && bo.leq(j, i))
            .collect();
        data.base_order = Some(full);
        assert_eq!(data.essential_order().unwrap(), eo);
        assert!(data.check_idempotence().unwrap());
    }

    #[test]
    fn cartan_checks() {
        // one-simple block of dual-numbers flavor
        let singleton = StratData {
            labels: vec!["x".into()],
            delta: vec![vec![2]],
            pbar_delta: vec![vec![1]],
            proj_delta: Some(vec![vec![1]]),
            d: Some(vec![2]),
            base_order: None,
        };
        singleton.validate_basic().unwrap();
        let report = singleton.check_cartan_row().unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].diagonal, 2);
        assert!(report.all_ok());
        assert!(singleton.check_reciprocity().unwrap());
        assert!(singleton.check_duality_filtration());
        assert_eq!(singleton.weight_function(), vec![2]);

        let o_block = regular_block_data(&group("A1"));
        let report = o_block.check_cartan_row().unwrap();
        assert_eq!(report.rows.len(), 1, "unique maximal label");
        assert_eq!(report.rows[0].label, "e");
        assert!(report.all_ok());

        // violation at the maximal label: diagonal exceeds a nonzero
        // off-diagonal entry and fails divisibility
        let bad = StratData {
            labels: vec!["a".into(), "b".into()],
            delta: vec![vec![1, 0], vec![0, 1]],
            pbar_delta: vec![vec![1, 0], vec![0, 1]],
            proj_delta: Some(vec![vec![2, 1], vec![0, 1]]),
            d: None,
            base_order: Some(vec![(1, 0)]),
        };
        let report = bad.check_cartan_row().unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(!report.rows[0].inequality_ok);
        assert!(!report.rows[0].divisibility_ok);
        assert!(!report.all_ok());
    }

    #[test]
    fn reciprocity_negative_control() {
        let g = group("A2");
        let mut data = regular_block_data(&g);
        assert!(data.check_reciprocity().unwrap());
        data.proj_delta.as_mut().unwrap()[0][3] += 1;
        assert!(!data.check_reciprocity().unwrap());

        let mut missing = regular_block_data(&g);
        missing.proj_delta = None;
        assert!(matches!(
            missing.check_reciprocity(),
            Err(StratError::MissingProjData)
        ));
        let mut missing_d = regular_block_data(&g);
        missing_d.d = None;
        assert!(matches!(
            missing_d.check_reciprocity(),
            Err(StratError::MissingEndoData)
        ));
    }

    #[test]
    fn poset_shell_carries_the_invariant() {
        let g = group("A2");
        let g_set = ParabolicSubset::parse(2, "s1").unwrap();
        let s_set = ParabolicSubset::empty(2);
        let poset = coset_poset(&g, &g_set, &s_set).unwrap();
        let data = from_weighted_poset(&poset);
        data.validate_basic().unwrap();
        assert_eq!(data.weight_function(), vec![2, 2, 2]);
        assert_eq!(data.essential_order().unwrap(), *poset.order());
        assert!(data.check_idempotence().unwrap());
        assert!(data.check_duality_filtration());
        assert_eq!(data.invariant_poset().unwrap(), poset);
    }

    #[test]
    fn bruhat_conformance() {
        for name in ["A1", "A2"] {
            let g = group(name);
            let empty = ParabolicSubset::empty(g.rank());
            assert!(check_bruhat_conformance(&g, &empty).unwrap(), "{name}");
        }
        let a3 = group("A3");
        let g_set = ParabolicSubset::parse(3, "s1,s2").unwrap();
        assert!(check_bruhat_conformance(&a3, &g_set).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let data = regular_block_data(&group("A1"));
        let json = data.to_json().unwrap();
        let back = StratData::from_json(&json).unwrap();
        assert_eq!(back, data);

        let minimal = diagonal_data(2);
        let json = minimal.to_json().unwrap();
        assert!(!json.contains("proj_delta"), "optional fields omitted");
        assert_eq!(StratData::from_json(&json).unwrap(), minimal);
    }

    #[test]
    fn validation_errors() {
        let mut bad_shape = diagonal_data(2);
        bad_shape.delta.pop();
        assert!(matches!(
            bad_shape.validate_basic(),
            Err(StratError::Shape { name: "delta", .. })
        ));

        let mut zero_diag = diagonal_data(2);
        zero_diag.delta[0][0] = 0;
        assert!(matches!(
            zero_diag.validate_basic(),
            Err(StratError::StandardDiagonal(_))
        ));

        let mut bad_pbar = diagonal_data(2);
        bad_pbar.pbar_delta[1][1] = 2;
        assert!(matches!(
            bad_pbar.validate_basic(),
            Err(StratError::ProperDiagonal(_))
        ));

        let mut cyclic = diagonal_data(2);
        cyclic.delta[0][1] = 1;
        cyclic.delta[1][0] = 1;
        match cyclic.essential_order() {
            Err(StratError::Cycle(path)) => {
                assert!(path.contains("x0") && path.contains("x1"), "{path}");
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }
}
