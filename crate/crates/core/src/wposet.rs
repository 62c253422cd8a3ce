//! Weighted posets: canonical forms, isomorphism testing, DOT and JSON
//! serialization, and full double-coset catalogs over all parabolic
//! pairs of a type.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bruhat::{OrderError, OrderRelation};
use crate::cosets;
use crate::coxeter::{CoxeterError, EnumeratedGroup, ParabolicSubset};

#[derive(Debug, Error)]
pub enum WposetError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("weight at vertex {0} must be positive")]
    ZeroWeight(usize),
    #[error("{weights} weights for an order on {vertices} vertices")]
    SizeMismatch { weights: usize, vertices: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Coset(#[from] cosets::CosetError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A finite poset with a positive integer weight on every vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedPoset {
    weights: Vec<u64>,
    order: OrderRelation,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    weights: Vec<u64>,
    covers: Vec<(usize, usize)>,
}

impl WeightedPoset {
    pub fn new(weights: Vec<u64>, order: OrderRelation) -> Result<Self, WposetError> {
        if weights.len() != order.size() {
            return Err(WposetError::SizeMismatch {
                weights: weights.len(),
                vertices: order.size(),
            });
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(WposetError::ZeroWeight(i));
        }
        Ok(WeightedPoset { weights, order })
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn order(&self) -> &OrderRelation {
        &self.order
    }

    /// Canonical single-line JSON with sorted cover pairs.
    pub fn to_json(&self) -> String {
        let doc = PosetJson {
            weights: self.weights.clone(),
            covers: self
                .order
                .covers()
                .iter()
                .map(|&(a, b)| (a as usize, b as usize))
                .collect(),
        };
        serde_json::to_string(&doc).expect("poset serialization cannot fail")
    }

    /// Parses the `{"weights":[...], "covers":[[i,j],...]}` schema.
    /// Cover lists are normalized: the order is the reflexive-
    /// transitive closure of the pairs and redundant pairs are
    /// absorbed.
    pub fn from_json(text: &str) -> Result<Self, WposetError> {
        let doc: PosetJson = serde_json::from_str(text)?;
        let order = OrderRelation::from_edges(doc.weights.len(), &doc.covers)?;
        WeightedPoset::new(doc.weights, order)
    }

    /// Graphviz digraph: nodes labeled by weight, one edge per cover
    /// pair, drawn upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        for (i, w) in self.weights.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{w}\"];\n"));
        }
        for &(a, b) in self.order.covers() {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// The same poset with vertices renamed by `perm` (old index ->
    /// new index).
    pub fn relabeled(&self, perm: &[u32]) -> WeightedPoset {
        let n = self.size();
        assert_eq!(perm.len(), n);
        let mut weights = vec![0u64; n];
        for (old, &new) in perm.iter().enumerate() {
            weights[new as usize] = self.weights[old];
        }
        let edges: Vec<(usize, usize)> = self
            .order
            .covers()
            .iter()
            .map(|&(a, b)| (perm[a as usize] as usize, perm[b as usize] as usize))
            .collect();
        let order = OrderRelation::from_edges(n, &edges).expect("relabeling keeps acyclicity");
        WeightedPoset { weights, order }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IsoMode {
    Weighted,
    Unweighted,
}

/// Searches for an order isomorphism p -> q (weight-preserving in
/// weighted mode) by backtracking over vertices grouped by simple
/// invariants. Returns a witness map (p index -> q index) when one
/// exists. This is a direct search, deliberately independent of
/// `canonical_form`.
pub fn is_isomorphic(
    p: &WeightedPoset,
    q: &WeightedPoset,
    mode: IsoMode,
) -> Option<Vec<u32>> {
    let n = p.size();
    if n != q.size() {
        return None;
    }
    let inv = |poset: &WeightedPoset| -> Vec<(u64, u32, usize, usize)> {
        let levels = poset.order().levels();
        let mut down = vec![0usize; poset.size()];
        let mut up = vec![0usize; poset.size()];
        for &(a, b) in poset.order().covers() {
            up[a as usize] += 1;
            down[b as usize] += 1;
        }
        (0..poset.size())
            .map(|v| {
                let w = match mode {
                    IsoMode::Weighted => poset.weights()[v],
                    IsoMode::Unweighted => 1,
                };
                (w, levels[v], down[v], up[v])
            })
            .collect()
    };
    let ip = inv(p);
    let iq = inv(q);
    {
        let mut a = ip.clone();
        let mut b = iq.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }

    // assign p vertices in order of fewest candidates first
    let mut order_of_assign: Vec<usize> = (0..n).collect();
    let candidate_count =
        |v: usize| iq.iter().filter(|&&c| c == ip[v]).count();
    order_of_assign.sort_by_key(|&v| (candidate_count(v), v));

    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        k: usize,
        order_of_assign: &[usize],
        ip: &[(u64, u32, usize, usize)],
        iq: &[(u64, u32, usize, usize)],
        p: &WeightedPoset,
        q: &WeightedPoset,
        map: &mut Vec<u32>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order_of_assign.len() {
            return true;
        }
        let v = order_of_assign[k];
        for u in 0..q.size() {
            if used[u] || iq[u] != ip[v] {
                continue;
            }
            let consistent = order_of_assign[..k].iter().all(|&v2| {
                let u2 = map[v2] as usize;
                p.order().leq(v, v2) == q.order().leq(u, u2)
                    && p.order().leq(v2, v) == q.order().leq(u2, u)
            });
            if consistent {
                map[v] = u as u32;
                used[u] = true;
                if dfs(k + 1, order_of_assign, ip, iq, p, q, map, used) {
                    return true;
                }
                map[v] = u32::MAX;
                used[u] = false;
            }
        }
        false
    }
    if dfs(0, &order_of_assign, &ip, &iq, p, q, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Relabeling-invariant canonical form of a weighted poset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm {
    /// old vertex index -> canonical index
    pub relabeling: Vec<u32>,
    /// canonical JSON bytes of the relabeled poset; equal signatures
    /// mean isomorphic weighted posets
    pub signature: Vec<u8>,
}

/// Computes the canonical form by color refinement (weight, chain
/// level, cover degrees, iterated neighborhood colors) with
/// individualization backtracking, minimizing the serialized bytes over
/// all discrete refinements.
pub fn canonical_form(p: &WeightedPoset) -> CanonicalForm {
    let n = p.size();
    if n == 0 {
        return CanonicalForm {
            relabeling: Vec::new(),
            signature: p.to_json().into_bytes(),
        };
    }
    let levels = p.order().levels();
    let mut down_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut up_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in p.order().covers() {
        up_adj[a as usize].push(b as usize);
        down_adj[b as usize].push(a as usize);
    }

    // initial colors ranked by (weight, level, downdeg, updeg)
    let initial: Vec<(u64, u32, usize, usize)> = (0..n)
        .map(|v| (p.weights()[v], levels[v], down_adj[v].len(), up_adj[v].len()))
        .collect();
    let mut sorted = initial.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let colors: Vec<u32> = initial
        .iter()
        .map(|key| sorted.binary_search(key).unwrap() as u32)
        .collect();

    let refine = |mut colors: Vec<u32>| -> Vec<u32> {
        loop {
            let keys: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
                .map(|v| {
                    let mut lo: Vec<u32> =
                        down_adj[v].iter().map(|&u| colors[u]).collect();
                    let mut hi: Vec<u32> =
                        up_adj[v].iter().map(|&u| colors[u]).collect();
                    lo.sort_unstable();
                    hi.sort_unstable();
                    (colors[v], lo, hi)
                })
                .collect();
            let mut ranked: Vec<&(u32, Vec<u32>, Vec<u32>)> = keys.iter().collect();
            ranked.sort();
            ranked.dedup();
            let rank: BTreeMap<&(u32, Vec<u32>, Vec<u32>), u32> = ranked
                .into_iter()
                .enumerate()
                .map(|(r, k)| (k, r as u32))
                .collect();
            let next: Vec<u32> = keys.iter().map(|k| rank[k]).collect();
            if next == colors {
                return colors;
            }
            colors = next;
        }
    };

    struct Search<'a> {
        p: &'a WeightedPoset,
        best: Option<(Vec<u8>, Vec<u32>)>,
    }
    impl Search<'_> {
        fn leaf(&mut self, colors: &[u32]) {
            let n = colors.len();
            let mut perm_inv: Vec<usize> = (0..n).collect();
            perm_inv.sort_unstable_by_key(|&v| colors[v]);
            let mut perm = vec![0u32; n];
            for (new, &old) in perm_inv.iter().enumerate() {
                perm[old] = new as u32;
            }
            let sig = self.p.relabeled(&perm).to_json().into_bytes();
            if self.best.as_ref().is_none_or(|(b, _)| sig < *b) {
                self.best = Some((sig, perm));
            }
        }
    }

    fn search(
        s: &mut Search<'_>,
        refine: &dyn Fn(Vec<u32>) -> Vec<u32>,
        colors: Vec<u32>,
    ) {
        let n = colors.len();
        // smallest non-singleton class, lowest color on ties
        let mut class_size: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colors {
            *class_size.entry(c).or_insert(0) += 1;
        }
        let target = class_size
            .iter()
            .filter(|&(_, &size)| size > 1)
            .min_by_key(|&(&c, &size)| (size, c))
            .map(|(&c, _)| c);
        match target {
            None => s.leaf(&colors),
            Some(c) => {
                for v in 0..n {
                    if colors[v] == c {
                        let mut next: Vec<u32> =
                            colors.iter().map(|&x| x * 2).collect();
                        next[v] += 1;
                        search(s, refine, refine(next));
                    }
                }
            }
        }
    }

    let mut s = Search { p, best: None };
    search(&mut s, &refine, refine(colors));
    let (signature, relabeling) = s.best.expect("search visits at least one leaf");
    CanonicalForm {
        relabeling,
        signature,
    }
}

/// The poset relabeled into canonical vertex order.
pub fn canonicalize(p: &WeightedPoset) -> WeightedPoset {
    p.relabeled(&canonical_form(p).relabeling)
}

/// One cell of a catalog grid.
pub struct CatalogCell {
    pub s_set: ParabolicSubset,
    pub g_set: ParabolicSubset,
    pub poset: WeightedPoset,
}

/// The full grid of weighted double-coset posets of one group, over all
/// 2^n x 2^n parabolic pairs, S outer and G inner in subset-mask order.
pub struct Catalog {
    pub type_name: String,
    pub cells: Vec<CatalogCell>,
}

pub fn catalog(group: &EnumeratedGroup) -> Result<Catalog, WposetError> {
    let n = group.rank();
    let mut cells = Vec::new();
    for s_set in ParabolicSubset::all_subsets(n) {
        for g_set in ParabolicSubset::all_subsets(n) {
            let poset = cosets::coset_poset(group, &g_set, &s_set)?;
            cells.push(CatalogCell { s_set, g_set, poset });
        }
    }
    Ok(Catalog {
        type_name: group.datum().name(),
        cells,
    })
}
