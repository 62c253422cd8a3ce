//! Hecke algebra of an enumerated Weyl group in the canonical basis:
//! Kazhdan-Lusztig polynomials, mu-coefficients, structure constants
//! h_{x,y,z}, Lusztig's a-function (generic brute force plus the
//! Robinson-Schensted closed form in type A), and Verma composition
//! multiplicities.
//!
//! Conventions: the standard basis H_w satisfies
//! H_s H_w = H_{sw} when sw > w and H_s H_w = H_{sw} + (v^-1 - v) H_w
//! otherwise; the canonical basis element b_w = sum_y h_{y,w} H_y has
//! h_{y,w} = v^{l(w)-l(y)} P_{y,w}(v^-2) with P the classical
//! polynomial in q; a(z) is the maximal v-degree of h_{x,y,z} over all
//! x, y.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bruhat::bruhat_order;
use crate::coxeter::{ElementId, EnumeratedGroup, GroupElement, Side, TypeLetter};

#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("group order {order} exceeds the Hecke a-function cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("the Robinson-Schensted backend requires an irreducible type A group, got {0}")]
    NotTypeA(String),
}

/// Integer Laurent polynomial in one variable, sparse by exponent.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// c * v^e
    pub fn monomial(e: i32, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_pairs(pairs: &[(i32, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    /// Highest exponent, None for the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    /// self += c * v^shift * other
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: i64, shift: i32) {
        for (&e, &oc) in &other.coeffs {
            self.add_term(e + shift, oc * c);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(other, 1, 0);
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(other, -1, 0);
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// v -> v^-1
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Value at v = 1 (sum of coefficients).
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "v")?,
                1 => write!(f, "{c}v")?,
                _ if c == 1 => write!(f, "v^{e}")?,
                _ => write!(f, "{c}v^{e}")?,
            }
        }
        Ok(())
    }
}

/// Element of the Hecke algebra in the canonical basis: finitely many
/// ids with Laurent coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeckeElement {
    pub support: BTreeMap<ElementId, LaurentPoly>,
}

impl HeckeElement {
    pub fn from_pairs(pairs: Vec<(ElementId, LaurentPoly)>) -> Self {
        HeckeElement {
            support: pairs.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
        }
    }
}

/// Canonical-basis data of one enumerated group: every b_w expanded in
/// the standard basis. Construction is a single pass by increasing
/// length; the table is immutable afterwards.
pub struct HeckeContext<'g> {
    group: &'g EnumeratedGroup,
    /// cb[w][u] = coefficient of H_u in b_w; dense columns.
    cb: Vec<Vec<LaurentPoly>>,
}

impl<'g> HeckeContext<'g> {
    pub fn new(group: &'g EnumeratedGroup) -> Self {
        let n = group.order();
        let mut cb: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        for id in 0..n as u32 {
            let w = group.element(ElementId(id));
            if id == 0 {
                let mut col = vec![LaurentPoly::zero(); n];
                col[0] = LaurentPoly::one();
                cb.push(col);
                continue;
            }
            let s = *group
                .descents(w, Side::Left)
                .first()
                .expect("non-identity element has a left descent");
            let w_prime = group.left_mul_simple(w, s);
            debug_assert!(group.length(w_prime) + 1 == group.length(w));
            // b_s b_{w'} = H_s b_{w'} + v b_{w'}
            let mut col = left_mul_standard(group, s, &cb[w_prime.id.0 as usize]);
            for (u, p) in col.iter_mut().enumerate() {
                p.add_scaled(&cb[w_prime.id.0 as usize][u], 1, 1);
            }
            // subtract mu(z, w') b_z for z with sz < z
            let corrections: Vec<(u32, i64)> = cb[w_prime.id.0 as usize]
                .iter()
                .enumerate()
                .filter(|&(z, _)| z as u32 != w_prime.id.0)
                .filter_map(|(z, p)| {
                    let mu = p.coeff(1);
                    if mu != 0 {
                        let z_el = group.element(ElementId(z as u32));
                        if group.descents(z_el, Side::Left).contains(&s) {
                            return Some((z as u32, mu));
                        }
                    }
                    None
                })
                .collect();
            for (z, mu) in corrections {
                let zcol = &cb[z as usize];
                for u in 0..n {
                    col[u].add_scaled(&zcol[u], -mu, 0);
                }
            }
            debug_assert!(col[id as usize] == LaurentPoly::one());
            debug_assert!(col.iter().enumerate().all(|(u, p)| {
                u as u32 == id || p.is_zero() || p.min_degree().unwrap() >= 1
            }));
            cb.push(col);
        }
        HeckeContext { group, cb }
    }

    pub fn group(&self) -> &'g EnumeratedGroup {
        self.group
    }

    /// h_{y,w}: the H_y-coordinate of b_w, a polynomial in v.
    pub fn h_poly(&self, y: GroupElement, w: GroupElement) -> &LaurentPoly {
        // length() asserts the handles belong to this context's group
        let _ = (self.group.length(y), self.group.length(w));
        &self.cb[w.id.0 as usize][y.id.0 as usize]
    }

    /// Classical Kazhdan-Lusztig polynomial P_{y,w} in the variable q.
    /// Zero when y is not below w; P_{w,w} = 1.
    pub fn kl_polynomial(&self, y: GroupElement, w: GroupElement) -> LaurentPoly {
        let order = bruhat_order(self.group);
        if !order.leq(y.id.0 as usize, w.id.0 as usize) {
            return LaurentPoly::zero();
        }
        let gap = (self.group.length(w) - self.group.length(y)) as i32;
        let h = self.h_poly(y, w);
        let mut p = LaurentPoly::zero();
        for (e, c) in h.terms() {
            let num = gap - e;
            assert!(num >= 0 && num % 2 == 0, "h-polynomial exponent parity");
            p.add_term(num / 2, c);
        }
        p
    }

    /// Coefficient of v in h_{y,w}; equals the top-degree-bound
    /// coefficient of P_{y,w} and is 1 on covers.
    pub fn mu(&self, y: GroupElement, w: GroupElement) -> i64 {
        self.h_poly(y, w).coeff(1)
    }

    /// [Delta_y : L_x] = P_{y,x}(1) when y <= x, else 0.
    pub fn verma_multiplicity(&self, y: GroupElement, x: GroupElement) -> u64 {
        let order = bruhat_order(self.group);
        if !order.leq(y.id.0 as usize, x.id.0 as usize) {
            return 0;
        }
        let m = self.h_poly(y, x).eval_one();
        debug_assert!(m > 0);
        m as u64
    }

    /// Columns H_u * b_y over the standard basis for every u, built by
    /// left weak order walking.
    fn standard_times_cb(&self, y: GroupElement) -> Vec<Vec<LaurentPoly>> {
        let n = self.group.order();
        let mut cols: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        cols.push(self.cb[y.id.0 as usize].clone());
        for id in 1..n as u32 {
            let u = self.group.element(ElementId(id));
            let s = *self
                .group
                .descents(u, Side::Left)
                .first()
                .expect("non-identity element has a left descent");
            let shorter = self.group.left_mul_simple(u, s);
            debug_assert!(shorter.id.0 < id);
            cols.push(left_mul_standard(self.group, s, &cols[shorter.id.0 as usize]));
        }
        cols
    }

    fn expand_product(
        &self,
        x: GroupElement,
        cols: &[Vec<LaurentPoly>],
    ) -> Vec<LaurentPoly> {
        let n = self.group.order();
        let mut prod = vec![LaurentPoly::zero(); n];
        for (u, hx) in self.cb[x.id.0 as usize].iter().enumerate() {
            if hx.is_zero() {
                continue;
            }
            for z in 0..n {
                if !cols[u][z].is_zero() {
                    let term = hx.mul(&cols[u][z]);
                    prod[z].add_scaled(&term, 1, 0);
                }
            }
        }
        prod
    }

    /// Converts a standard-basis column to canonical coordinates by
    /// unitriangular elimination from the top.
    fn to_canonical(&self, mut prod: Vec<LaurentPoly>) -> Vec<(ElementId, LaurentPoly)> {
        let n = self.group.order();
        let mut out = Vec::new();
        for z in (0..n).rev() {
            if prod[z].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut prod[z]);
            let zcol = &self.cb[z];
            for (u, p) in zcol.iter().enumerate() {
                if u != z && !p.is_zero() {
                    let term = c.mul(p);
                    prod[u].add_scaled(&term, -1, 0);
                }
            }
            out.push((ElementId(z as u32), c));
        }
        debug_assert!(prod.iter().all(LaurentPoly::is_zero));
        out.reverse();
        out
    }

    /// Structure constants of b_x b_y = sum_z h_{x,y,z} b_z.
    pub fn cprime_multiply(&self, x: GroupElement, y: GroupElement) -> HeckeElement {
        let cols = self.standard_times_cb(y);
        HeckeElement::from_pairs(self.to_canonical(self.expand_product(x, &cols)))
    }

    /// Standard-basis expansion of bar(b_w), for validation: the bar
    /// involution fixes v^k H_w at v^-k bar(H_w) with
    /// bar(H_w) = (H_{s_1}^-1 ... H_{s_k}^-1) read off a reduced word
    /// of w^-1 reversed; canonical basis elements must be fixed points.
    pub fn bar_of_cb(&self, w: GroupElement) -> Vec<LaurentPoly> {
        let n = self.group.order();
        // bar(H_u) columns by induction over length
        let mut bar_h: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        let mut e_col = vec![LaurentPoly::zero(); n];
        e_col[0] = LaurentPoly::one();
        bar_h.push(e_col);
        for id in 1..n as u32 {
            let u = self.group.element(ElementId(id));
            let s = *self
                .group
                .descents(u, Side::Left)
                .first()
                .expect("non-identity element has a left descent");
            let shorter = self.group.left_mul_simple(u, s);
            // bar(H_u) = bar(H_s) bar(H_{shorter}) and
            // bar(H_s) = H_s^-1 = H_s + (v - v^-1) H_e
            let prev = &bar_h[shorter.id.0 as usize];
            let mut col = left_mul_standard(self.group, s, prev);
            let vminus = LaurentPoly::from_pairs(&[(1, 1), (-1, -1)]);
            for (t, p) in col.iter_mut().enumerate() {
                let term = vminus.mul(&prev[t]);
                p.add_scaled(&term, 1, 0);
            }
            bar_h.push(col);
        }
        let mut out = vec![LaurentPoly::zero(); n];
        for (u, p) in self.cb[w.id.0 as usize].iter().enumerate() {
            if !p.is_zero() {
                let barp = p.bar();
                for t in 0..n {
                    if !bar_h[u][t].is_zero() {
                        let term = barp.mul(&bar_h[u][t]);
                        out[t].add_scaled(&term, 1, 0);
                    }
                }
            }
        }
        out
    }

    /// The raw standard-basis column of b_w.
    pub fn cb_column(&self, w: GroupElement) -> &[LaurentPoly] {
        &self.cb[w.id.0 as usize]
    }
}

/// H_s * (sum_u col[u] H_u) in the standard basis, s a 1-based simple.
fn left_mul_standard(
    group: &EnumeratedGroup,
    s: usize,
    col: &[LaurentPoly],
) -> Vec<LaurentPoly> {
    let n = group.order();
    let mut out = vec![LaurentPoly::zero(); n];
    for (u, p) in col.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let u_el = group.element(ElementId(u as u32));
        let su = group.left_mul_simple(u_el, s);
        if group.length(su) > group.length(u_el) {
            out[su.id.0 as usize].add_scaled(p, 1, 0);
        } else {
            out[su.id.0 as usize].add_scaled(p, 1, 0);
            // (v^-1 - v) H_u
            out[u].add_scaled(p, 1, -1);
            out[u].add_scaled(p, -1, 1);
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AMethod {
    Hecke,
    Rsk,
    Auto,
}

impl AMethod {
    pub fn parse(s: &str) -> Option<AMethod> {
        match s.to_ascii_lowercase().as_str() {
            "hecke" => Some(AMethod::Hecke),
            "rsk" => Some(AMethod::Rsk),
            "auto" => Some(AMethod::Auto),
            _ => None,
        }
    }
}

/// a-values of every element of one group, indexed by element id.
pub struct AFunctionTable {
    values: Vec<u32>,
    group_order: usize,
}

impl AFunctionTable {
    pub fn value(&self, w: GroupElement) -> u32 {
        self.values[w.id.0 as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check(&self, group: &EnumeratedGroup) {
        assert_eq!(
            self.group_order,
            group.order(),
            "table built for another group"
        );
    }
}

/// Default group-order ceiling for the brute-force Hecke backend.
pub const HECKE_A_CAP: usize = 48;

/// Computes Lusztig's a-function. The hecke method takes the maximal
/// v-degree of the structure constants h_{x,y,z} over all x, y (brute
/// force, capped); the rsk method uses the Robinson-Schensted insertion
/// shape in irreducible type A; auto dispatches rsk for type A and
/// hecke otherwise.
pub fn a_function(
    group: &EnumeratedGroup,
    method: AMethod,
) -> Result<AFunctionTable, HeckeError> {
    a_function_with_cap(group, method, HECKE_A_CAP)
}

pub fn a_function_with_cap(
    group: &EnumeratedGroup,
    method: AMethod,
    cap: usize,
) -> Result<AFunctionTable, HeckeError> {
    let is_type_a = group.datum().factors().len() == 1
        && group.datum().factors()[0].0 == TypeLetter::A;
    let method = match method {
        AMethod::Auto => {
            if is_type_a {
                AMethod::Rsk
            } else {
                AMethod::Hecke
            }
        }
        m => m,
    };
    let values = match method {
        AMethod::Rsk => {
            if !is_type_a {
                return Err(HeckeError::NotTypeA(group.datum().name()));
            }
            group
                .elements()
                .map(|w| rsk_a_value(group, w))
                .collect()
        }
        AMethod::Hecke => {
            if group.order() > cap {
                return Err(HeckeError::CapExceeded {
                    order: group.order(),
                    cap,
                });
            }
            hecke_a_values(group)
        }
        AMethod::Auto => unreachable!(),
    };
    Ok(AFunctionTable {
        values,
        group_order: group.order(),
    })
}

fn hecke_a_values(group: &EnumeratedGroup) -> Vec<u32> {
    let ctx = HeckeContext::new(group);
    let n = group.order();
    let mut a = vec![0u32; n];
    for y in group.elements() {
        let cols = ctx.standard_times_cb(y);
        for x in group.elements() {
            let canon = ctx.to_canonical(ctx.expand_product(x, &cols));
            for (z, h) in canon {
                if let Some(d) = h.degree() {
                    debug_assert!(d >= 0, "structure-constant degrees are nonnegative");
                    let z = z.0 as usize;
                    if d as u32 > a[z] {
                        a[z] = d as u32;
                    }
                }
            }
        }
    }
    a
}

/// a(w) in irreducible type A via the Robinson-Schensted insertion
/// shape: sum over the conjugate partition columns of C(k, 2).
fn rsk_a_value(group: &EnumeratedGroup, w: GroupElement) -> u32 {
    let points = group.rank() + 1;
    let mut perm: Vec<usize> = (1..=points).collect();
    for letter in group.reduced_word(w) {
        perm.swap(letter - 1, letter);
    }
    let shape = rs_insertion_shape(&perm);
    let conjugate = conjugate_partition(&shape);
    conjugate.iter().map(|&k| (k * (k - 1) / 2) as u32).sum()
}

fn rs_insertion_shape(perm: &[usize]) -> Vec<usize> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &x in perm {
        let mut carry = x;
        let mut placed = false;
        for row in rows.iter_mut() {
            // first entry strictly greater gets bumped
            match row.iter().position(|&y| y > carry) {
                Some(i) => {
                    std::mem::swap(&mut row[i], &mut carry);
                }
                None => {
                    row.push(carry);
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            rows.push(vec![carry]);
        }
    }
    rows.iter().map(Vec::len).collect()
}

fn conjugate_partition(shape: &[usize]) -> Vec<usize> {
    let cols = shape.first().copied().unwrap_or(0);
    (1..=cols)
        .map(|i| shape.iter().filter(|&&r| r >= i).count())
        .collect()
}

/// CSV dump of an a-function table: header word,length,a then one row
/// per element in id order, the identity written as "e".
pub fn a_table_csv(group: &EnumeratedGroup, table: &AFunctionTable) -> String {
    table.check(group);
    let mut out = String::from("word,length,a\n");
    for w in group.elements() {
        out.push_str(&format!(
            "{},{},{}\n",
            group.word_string(w),
            group.length(w),
            table.value(w)
        ));
    }
    out
}
