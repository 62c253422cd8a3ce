//! Finite Weyl groups: Cartan-type data, full enumeration by the action
//! on the root lattice, lengths, descents, reduced words, and parabolic
//! subgroup helpers.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use thiserror::Error;

use crate::bruhat::OrderRelation;

/// Default ceiling on the number of elements an enumeration may
/// materialize.
pub const DEFAULT_CAP: u64 = 1_000_000;

static NEXT_GROUP_UID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("unrecognized Cartan type {0:?}")]
    Parse(String),
    #[error("no finite type {letter}{rank}")]
    InvalidRank { letter: TypeLetter, rank: usize },
    #[error("group order {projected} exceeds enumeration cap {cap}")]
    CapExceeded { projected: u128, cap: u64 },
    #[error("operands belong to different enumerated groups")]
    MixedGroups,
    #[error("simple reflection index {index} out of range 1..={rank}")]
    InvalidSimple { index: usize, rank: usize },
    #[error("operation requires an irreducible type A group, got {0}")]
    NotTypeA(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TypeLetter {
    A,
    B,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            TypeLetter::A => 'A',
            TypeLetter::B => 'B',
            TypeLetter::D => 'D',
            TypeLetter::E => 'E',
            TypeLetter::F => 'F',
            TypeLetter::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A finite Weyl type: product of irreducible factors, with the Coxeter
/// matrix and the root-lattice pairing of the whole diagram.
///
/// Factors are normalized on construction: C_n is the same Coxeter
/// group as B_n, B1 and C1 mean A1, and D3 means A3.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterDatum {
    factors: Vec<(TypeLetter, usize)>,
    n: usize,
    /// Bond orders m_ij: 1 on the diagonal, {2,3,4,6} off it.
    coxeter: Vec<Vec<u8>>,
    /// pairing[i][j] = <alpha_i, alpha_j^vee>; the simple reflection
    /// s_j sends e_i to e_i - pairing[i][j] e_j.
    pairing: Vec<Vec<i32>>,
}

fn factor_order(letter: TypeLetter, rank: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match letter {
        TypeLetter::A => fact(rank + 1),
        TypeLetter::B => (1u128 << rank) * fact(rank),
        TypeLetter::D => (1u128 << (rank - 1)) * fact(rank),
        TypeLetter::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        TypeLetter::F => 1152,
        TypeLetter::G => 12,
    }
}

fn factor_positive_roots(letter: TypeLetter, rank: usize) -> usize {
    match letter {
        TypeLetter::A => rank * (rank + 1) / 2,
        TypeLetter::B => rank * rank,
        TypeLetter::D => rank * (rank - 1),
        TypeLetter::E => match rank {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        TypeLetter::F => 24,
        TypeLetter::G => 6,
    }
}

/// Bonds of one irreducible diagram as (i, j, m, p_ij, p_ji) with local
/// 0-based node indices; p_ij = <alpha_i, alpha_j^vee>.
fn factor_bonds(letter: TypeLetter, rank: usize) -> Vec<(usize, usize, u8, i32, i32)> {
    let chain = |upto: usize| -> Vec<(usize, usize, u8, i32, i32)> {
        (0..upto).map(|i| (i, i + 1, 3, -1, -1)).collect()
    };
    match letter {
        TypeLetter::A => chain(rank - 1),
        TypeLetter::B => {
            // alpha_rank is the short root
            let mut v = chain(rank.saturating_sub(2));
            v.push((rank - 2, rank - 1, 4, -2, -1));
            v
        }
        TypeLetter::D => {
            let mut v = chain(rank - 2);
            v.push((rank - 3, rank - 1, 3, -1, -1));
            v
        }
        TypeLetter::E => {
            // chain 1-3-4-5-6(-7-8) plus 2-4, numbered from 1
            let mut v = vec![(0, 2, 3, -1, -1), (1, 3, 3, -1, -1)];
            for i in 2..rank - 1 {
                v.push((i, i + 1, 3, -1, -1));
            }
            v
        }
        TypeLetter::F => vec![
            (0, 1, 3, -1, -1),
            // alpha_3, alpha_4 short
            (1, 2, 4, -2, -1),
            (2, 3, 3, -1, -1),
        ],
        TypeLetter::G => {
            // alpha_1 short, alpha_2 long
            vec![(0, 1, 6, -1, -3)]
        }
    }
}

impl CoxeterDatum {
    /// Builds a datum from (letter, rank) factors, normalizing B1/C1 to
    /// A1, C to B, and D3 to A3.
    pub fn new(factors: &[(char, usize)]) -> Result<Self, CoxeterError> {
        if factors.is_empty() {
            return Err(CoxeterError::Parse(String::new()));
        }
        let mut norm: Vec<(TypeLetter, usize)> = Vec::new();
        for &(c, rank) in factors {
            let letter = match c.to_ascii_uppercase() {
                'A' => TypeLetter::A,
                'B' | 'C' => TypeLetter::B,
                'D' => TypeLetter::D,
                'E' => TypeLetter::E,
                'F' => TypeLetter::F,
                'G' => TypeLetter::G,
                other => return Err(CoxeterError::Parse(other.to_string())),
            };
            let ok = match letter {
                TypeLetter::A => rank >= 1,
                TypeLetter::B => rank >= 1,
                TypeLetter::D => rank >= 3,
                TypeLetter::E => (6..=8).contains(&rank),
                TypeLetter::F => rank == 4,
                TypeLetter::G => rank == 2,
            };
            if !ok {
                return Err(CoxeterError::InvalidRank { letter, rank });
            }
            norm.push(match (letter, rank) {
                (TypeLetter::B, 1) => (TypeLetter::A, 1),
                (TypeLetter::D, 3) => (TypeLetter::A, 3),
                other => other,
            });
        }
        let n: usize = norm.iter().map(|&(_, r)| r).sum();
        let mut coxeter = vec![vec![2u8; n]; n];
        let mut pairing = vec![vec![0i32; n]; n];
        for i in 0..n {
            coxeter[i][i] = 1;
            pairing[i][i] = 2;
        }
        let mut off = 0;
        for &(letter, rank) in &norm {
            for (i, j, m, pij, pji) in factor_bonds(letter, rank) {
                coxeter[off + i][off + j] = m;
                coxeter[off + j][off + i] = m;
                pairing[off + i][off + j] = pij;
                pairing[off + j][off + i] = pji;
            }
            off += rank;
        }
        Ok(CoxeterDatum {
            factors: norm,
            n,
            coxeter,
            pairing,
        })
    }

    /// Parses names like "A3", "B2", "g2", "A2xA1" ('x' separates
    /// factors, case-insensitive).
    pub fn parse(s: &str) -> Result<Self, CoxeterError> {
        let mut factors = Vec::new();
        for part in s.split(['x', 'X']) {
            let part = part.trim();
            let mut chars = part.chars();
            let letter = chars
                .next()
                .ok_or_else(|| CoxeterError::Parse(s.to_string()))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| CoxeterError::Parse(s.to_string()))?;
            factors.push((letter, rank));
        }
        CoxeterDatum::new(&factors).map_err(|e| match e {
            CoxeterError::Parse(_) => CoxeterError::Parse(s.to_string()),
            other => other,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[(TypeLetter, usize)] {
        &self.factors
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    /// The normalized type name, e.g. "A3" or "B2xA1".
    pub fn name(&self) -> String {
        self.factors
            .iter()
            .map(|(l, r)| format!("{l}{r}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u8>] {
        &self.coxeter
    }

    pub fn pairing(&self) -> &[Vec<i32>] {
        &self.pairing
    }

    /// Group order by the closed formula, without enumeration.
    pub fn order(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(l, r)| factor_order(l, r))
            .product()
    }

    /// Number of positive roots; equals the length of the longest
    /// element.
    pub fn positive_root_count(&self) -> usize {
        self.factors
            .iter()
            .map(|&(l, r)| factor_positive_roots(l, r))
            .sum()
    }
}

/// Index of an element in its enumerated group. The identity is always
/// index 0 and ids are sorted by length first (breadth-first discovery).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ElementId(pub u32);

/// Handle to an element of one specific enumerated group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub id: ElementId,
    guid: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Subset of the simple reflections, externally 1-based ("s1").
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ParabolicSubset {
    mask: u32,
    rank: usize,
}

impl ParabolicSubset {
    pub fn empty(rank: usize) -> Self {
        ParabolicSubset { mask: 0, rank }
    }

    pub fn full(rank: usize) -> Self {
        ParabolicSubset {
            mask: (1u32 << rank) - 1,
            rank,
        }
    }

    /// Builds from 1-based simple indices.
    pub fn from_indices(rank: usize, indices: &[usize]) -> Result<Self, CoxeterError> {
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > rank {
                return Err(CoxeterError::InvalidSimple { index: i, rank });
            }
            mask |= 1 << (i - 1);
        }
        Ok(ParabolicSubset { mask, rank })
    }

    /// Parses "none", "all", or a comma-separated generator list like
    /// "s1,s3" (bare indices "1,3" are accepted too).
    pub fn parse(rank: usize, s: &str) -> Result<Self, CoxeterError> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("none") {
            return Ok(ParabolicSubset::empty(rank));
        }
        if s.eq_ignore_ascii_case("all") {
            return Ok(ParabolicSubset::full(rank));
        }
        let mut indices = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let digits = part.strip_prefix(['s', 'S']).unwrap_or(part);
            let i: usize = digits
                .parse()
                .map_err(|_| CoxeterError::InvalidSimple { index: 0, rank })?;
            indices.push(i);
        }
        ParabolicSubset::from_indices(rank, &indices)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == (1u32 << self.rank) - 1
    }

    /// 1-based member indices, ascending.
    pub fn members(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&i| self.contains(i)).collect()
    }

    /// Membership of the 1-based simple index.
    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && index <= self.rank && self.mask & (1 << (index - 1)) != 0
    }

    pub(crate) fn bits(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(|&b| self.mask & (1 << b) != 0)
    }

    pub fn is_subset_of(&self, other: &ParabolicSubset) -> bool {
        self.rank == other.rank && self.mask & !other.mask == 0
    }

    /// File-name label: "none" or underscore-joined members "s1_s3".
    pub fn label(&self) -> String {
        if self.is_empty() {
            "none".to_string()
        } else {
            self.members()
                .iter()
                .map(|i| format!("s{i}"))
                .collect::<Vec<_>>()
                .join("_")
        }
    }

    /// All 2^rank subsets in mask order (stable grid order).
    pub fn all_subsets(rank: usize) -> Vec<ParabolicSubset> {
        (0..(1u32 << rank))
            .map(|mask| ParabolicSubset { mask, rank })
            .collect()
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "none")
        } else {
            let m = self
                .members()
                .iter()
                .map(|i| format!("s{i}"))
                .collect::<Vec<_>>()
                .join(",");
            write!(f, "{{{m}}}")
        }
    }
}

/// A fully enumerated finite Weyl group: every element's root-lattice
/// action, lengths, Cayley moves by simple reflections on both sides,
/// inverses, and the positive root system. Immutable after
/// construction.
pub struct EnumeratedGroup {
    datum: CoxeterDatum,
    uid: u64,
    /// n*n action matrices, flattened row-major, indexed by element id.
    mats: Vec<Vec<i32>>,
    lengths: Vec<u32>,
    /// right[w*n + j] = id of w s_{j+1}
    right: Vec<u32>,
    /// left[w*n + j] = id of s_{j+1} w
    left: Vec<u32>,
    inv: Vec<u32>,
    pos_roots: Vec<Vec<i32>>,
    reflections: Vec<ElementId>,
    w0: ElementId,
    pub(crate) bruhat_cache: OnceLock<OrderRelation>,
}

fn mat_mul(a: &[i32], b: &[i32], n: usize) -> Vec<i32> {
    let mut c = vec![0i32; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik != 0 {
                for j in 0..n {
                    c[i * n + j] += aik * b[k * n + j];
                }
            }
        }
    }
    c
}

fn mat_vec(a: &[i32], v: &[i32], n: usize) -> Vec<i32> {
    let mut out = vec![0i32; n];
    for i in 0..n {
        for j in 0..n {
            out[i] += a[i * n + j] * v[j];
        }
    }
    out
}

/// Builds the group with the default enumeration cap.
pub fn build_group(datum: &CoxeterDatum) -> Result<EnumeratedGroup, CoxeterError> {
    build_group_with_cap(datum, DEFAULT_CAP)
}

/// Builds the group, refusing types whose order exceeds `cap`.
pub fn build_group_with_cap(
    datum: &CoxeterDatum,
    cap: u64,
) -> Result<EnumeratedGroup, CoxeterError> {
    let projected = datum.order();
    if projected > cap as u128 {
        return Err(CoxeterError::CapExceeded { projected, cap });
    }
    let n = datum.rank();
    let expected = projected as usize;

    // simple reflection matrices: column i of s_j is e_i - p[i][j] e_j
    let mut gens: Vec<Vec<i32>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut m = vec![0i32; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        for i in 0..n {
            m[j * n + i] -= datum.pairing[i][j];
        }
        gens.push(m);
    }

    let ident: Vec<i32> = {
        let mut m = vec![0i32; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        m
    };

    // breadth-first closure under right multiplication; column j of the
    // action matrix is w(alpha_j), so the sign of that column decides
    // whether w s_j ascends
    let mut index: HashMap<Vec<i32>, u32> = HashMap::with_capacity(expected);
    let mut mats: Vec<Vec<i32>> = Vec::with_capacity(expected);
    let mut lengths: Vec<u32> = Vec::with_capacity(expected);
    let mut right: Vec<u32> = Vec::new();
    index.insert(ident.clone(), 0);
    mats.push(ident);
    lengths.push(0);
    let mut head = 0usize;
    while head < mats.len() {
        let w_len = lengths[head];
        let mut row = vec![u32::MAX; n];
        for (j, gen) in gens.iter().enumerate() {
            let prod = mat_mul(&mats[head], gen, n);
            if let Some(&id) = index.get(&prod) {
                row[j] = id;
            } else {
                // w s_j ascends iff w(alpha_j) > 0; w(alpha_j) is
                // column j of M(w). Breadth-first search reaches every
                // element at distance = length, so descents are always
                // already known and new elements always ascend.
                debug_assert!((0..n).all(|i| mats[head][i * n + j] >= 0));
                let id = mats.len() as u32;
                index.insert(prod.clone(), id);
                mats.push(prod);
                lengths.push(w_len + 1);
                row[j] = id;
            }
        }
        right.extend(row);
        head += 1;
        if mats.len() > expected {
            // closure overshot the formula order: convention bug
            panic!("enumeration exceeded the formula order for {}", datum.name());
        }
    }
    assert_eq!(
        mats.len(),
        expected,
        "enumeration of {} closed at the wrong order",
        datum.name()
    );

    // breadth-first ids are sorted by length; identity is id 0
    debug_assert!(lengths.windows(2).all(|w| w[0] <= w[1]));

    let left: Vec<u32> = {
        let mut left = vec![0u32; mats.len() * n];
        for (w, mat) in mats.iter().enumerate() {
            for (j, gen) in gens.iter().enumerate() {
                let prod = mat_mul(gen, mat, n);
                left[w * n + j] = index[&prod];
            }
        }
        left
    };

    // inverse via reversed reduced word (peel right descents)
    let inv: Vec<u32> = (0..mats.len())
        .map(|w| {
            let mut cur = w as u32;
            let mut acc = 0u32;
            while lengths[cur as usize] > 0 {
                let j = (0..n)
                    .find(|&j| {
                        lengths[right[cur as usize * n + j] as usize] < lengths[cur as usize]
                    })
                    .expect("non-identity element has a right descent");
                // w = w' s_j peels letters last-to-first, which builds
                // the inverse first-to-last via left multiplication
                acc = right[acc as usize * n + j];
                cur = right[cur as usize * n + j];
            }
            acc
        })
        .collect();

    // positive roots: orbit of the simples, keeping the all-nonnegative
    // vectors
    let mut roots: Vec<Vec<i32>> = Vec::new();
    let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
    for j in 0..n {
        let mut e = vec![0i32; n];
        e[j] = 1;
        seen.insert(e.clone(), ());
        roots.push(e);
    }
    let mut head = 0usize;
    while head < roots.len() {
        for gen in &gens {
            let img = mat_vec(gen, &roots[head], n);
            if !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                roots.push(img);
            }
        }
        head += 1;
    }
    let mut pos_roots: Vec<Vec<i32>> = roots
        .into_iter()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect();
    pos_roots.sort();
    assert_eq!(pos_roots.len(), datum.positive_root_count());

    // reflections: closure of the simples under conjugation
    let mut is_refl = vec![false; mats.len()];
    let mut stack: Vec<u32> = Vec::new();
    for &s in &right[..n] {
        // identity row: e * s_j
        is_refl[s as usize] = true;
        stack.push(s);
    }
    while let Some(t) = stack.pop() {
        for j in 0..n {
            let c = right[left[t as usize * n + j] as usize * n + j];
            if !is_refl[c as usize] {
                is_refl[c as usize] = true;
                stack.push(c);
            }
        }
    }
    let reflections: Vec<ElementId> = (0..mats.len() as u32)
        .filter(|&i| is_refl[i as usize])
        .map(ElementId)
        .collect();
    assert_eq!(reflections.len(), pos_roots.len());

    let w0 = ElementId(
        (0..mats.len() as u32)
            .max_by_key(|&i| lengths[i as usize])
            .unwrap(),
    );
    assert_eq!(lengths[w0.0 as usize] as usize, pos_roots.len());

    Ok(EnumeratedGroup {
        datum: datum.clone(),
        uid: NEXT_GROUP_UID.fetch_add(1, Ordering::Relaxed),
        mats,
        lengths,
        right,
        left,
        inv,
        pos_roots,
        reflections,
        w0,
        bruhat_cache: OnceLock::new(),
    })
}

impl EnumeratedGroup {
    pub fn datum(&self) -> &CoxeterDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            id: ElementId(0),
            guid: self.uid,
        }
    }

    pub fn element(&self, id: ElementId) -> GroupElement {
        assert!((id.0 as usize) < self.order(), "element id out of range");
        GroupElement { id, guid: self.uid }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as u32).map(|i| GroupElement {
            id: ElementId(i),
            guid: self.uid,
        })
    }

    fn check(&self, w: GroupElement) -> usize {
        assert!(
            w.guid == self.uid,
            "element handle does not belong to this group"
        );
        w.id.0 as usize
    }

    pub fn simple(&self, index: usize) -> Result<GroupElement, CoxeterError> {
        if index == 0 || index > self.rank() {
            return Err(CoxeterError::InvalidSimple {
                index,
                rank: self.rank(),
            });
        }
        Ok(GroupElement {
            id: ElementId(self.right[index - 1]),
            guid: self.uid,
        })
    }

    /// The element's action on the root lattice, row-major n x n;
    /// column j holds the coordinates of w(alpha_j).
    pub fn action(&self, w: GroupElement) -> &[i32] {
        let i = self.check(w);
        &self.mats[i]
    }

    pub fn length(&self, w: GroupElement) -> u32 {
        let i = self.check(w);
        self.lengths[i]
    }

    /// Coxeter length recomputed as the inversion count on positive
    /// roots (slow path kept for validation).
    pub fn inversion_count(&self, w: GroupElement) -> u32 {
        let i = self.check(w);
        let n = self.rank();
        self.pos_roots
            .iter()
            .filter(|r| {
                let img = mat_vec(&self.mats[i], r, n);
                img.iter().all(|&c| c <= 0)
            })
            .count() as u32
    }

    pub fn multiply(
        &self,
        w: GroupElement,
        u: GroupElement,
    ) -> Result<GroupElement, CoxeterError> {
        if w.guid != self.uid || u.guid != self.uid {
            return Err(CoxeterError::MixedGroups);
        }
        let mut cur = w.id.0;
        for j in self.word_indices(u) {
            cur = self.right[cur as usize * self.rank() + j];
        }
        Ok(GroupElement {
            id: ElementId(cur),
            guid: self.uid,
        })
    }

    pub fn inverse(&self, w: GroupElement) -> GroupElement {
        let i = self.check(w);
        GroupElement {
            id: ElementId(self.inv[i]),
            guid: self.uid,
        }
    }

    /// w s_{index} (1-based index).
    pub fn right_mul_simple(&self, w: GroupElement, index: usize) -> GroupElement {
        let i = self.check(w);
        assert!(index >= 1 && index <= self.rank());
        GroupElement {
            id: ElementId(self.right[i * self.rank() + index - 1]),
            guid: self.uid,
        }
    }

    /// s_{index} w (1-based index).
    pub fn left_mul_simple(&self, w: GroupElement, index: usize) -> GroupElement {
        let i = self.check(w);
        assert!(index >= 1 && index <= self.rank());
        GroupElement {
            id: ElementId(self.left[i * self.rank() + index - 1]),
            guid: self.uid,
        }
    }

    /// Descent set on the requested side, as 1-based simple indices.
    pub fn descents(&self, w: GroupElement, side: Side) -> Vec<usize> {
        let i = self.check(w);
        let n = self.rank();
        let table = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        (0..n)
            .filter(|&j| self.lengths[table[i * n + j] as usize] < self.lengths[i])
            .map(|j| j + 1)
            .collect()
    }

    /// 0-based letters of the canonical reduced word (descent peeling,
    /// lowest simple first).
    fn word_indices(&self, w: GroupElement) -> Vec<usize> {
        let i = self.check(w);
        let n = self.rank();
        let mut cur = i as u32;
        let mut rev = Vec::with_capacity(self.lengths[i] as usize);
        while self.lengths[cur as usize] > 0 {
            let j = (0..n)
                .find(|&j| self.lengths[self.right[cur as usize * n + j] as usize]
                    < self.lengths[cur as usize])
                .expect("non-identity element has a right descent");
            rev.push(j);
            cur = self.right[cur as usize * n + j];
        }
        rev.reverse();
        rev
    }

    /// Canonical reduced word as 1-based simple indices; empty for the
    /// identity. The product of the letters recovers the element and
    /// the word length equals the Coxeter length.
    pub fn reduced_word(&self, w: GroupElement) -> Vec<usize> {
        self.word_indices(w).into_iter().map(|j| j + 1).collect()
    }

    /// Compact display of an element: "e" or the reduced word digits,
    /// e.g. "121".
    pub fn word_string(&self, w: GroupElement) -> String {
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.into_iter().map(|i| i.to_string()).collect()
        }
    }

    /// Element with the given reduced (or unreduced) word, 1-based.
    pub fn from_word(&self, word: &[usize]) -> Result<GroupElement, CoxeterError> {
        let mut cur = self.identity();
        for &i in word {
            if i == 0 || i > self.rank() {
                return Err(CoxeterError::InvalidSimple {
                    index: i,
                    rank: self.rank(),
                });
            }
            cur = self.right_mul_simple(cur, i);
        }
        Ok(cur)
    }

    /// Longest element of the standard parabolic subgroup W_J; the
    /// whole group's longest element when J is full, the identity when
    /// J is empty.
    pub fn longest_element(&self, j_set: &ParabolicSubset) -> GroupElement {
        assert_eq!(j_set.rank(), self.rank(), "parabolic rank mismatch");
        if j_set.is_full() {
            return self.element(self.w0);
        }
        let mut cur = self.identity();
        loop {
            let next = j_set
                .bits()
                .map(|b| self.right_mul_simple(cur, b + 1))
                .find(|&u| self.length(u) > self.length(cur));
            match next {
                Some(u) => cur = u,
                None => return cur,
            }
        }
    }

    /// Elements of the standard parabolic subgroup W_J, sorted by id.
    pub fn parabolic_elements(&self, j_set: &ParabolicSubset) -> Vec<ElementId> {
        assert_eq!(j_set.rank(), self.rank(), "parabolic rank mismatch");
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut head = 0;
        while head < out.len() {
            let w = out[head] as usize;
            for b in j_set.bits() {
                let u = self.right[w * self.rank() + b];
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    out.push(u);
                }
            }
            head += 1;
        }
        out.sort_unstable();
        out.into_iter().map(ElementId).collect()
    }

    /// All reflections (conjugates of simples), sorted by id.
    pub fn reflections(&self) -> &[ElementId] {
        &self.reflections
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.pos_roots
    }
}

/// The partition of {1..n+1} induced by a parabolic subset of the
/// symmetric group S_{n+1} (irreducible type A_n): positions i and i+1
/// fall in one block exactly when s_i is a member. Sorted descending.
pub fn parabolic_partition(
    datum: &CoxeterDatum,
    j_set: &ParabolicSubset,
) -> Result<Vec<usize>, CoxeterError> {
    if datum.factors().len() != 1 || datum.factors()[0].0 != TypeLetter::A {
        return Err(CoxeterError::NotTypeA(datum.name()));
    }
    assert_eq!(j_set.rank(), datum.rank(), "parabolic rank mismatch");
    let points = datum.rank() + 1;
    let mut blocks = Vec::new();
    let mut current = 1usize;
    for i in 1..=datum.rank() {
        if j_set.contains(i) {
            current += 1;
        } else {
            blocks.push(current);
            current = 1;
        }
    }
    blocks.push(current);
    debug_assert_eq!(blocks.iter().sum::<usize>(), points);
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    Ok(blocks)
}
