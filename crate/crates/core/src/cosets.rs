//! Double cosets G\W/S of parabolic pairs: orbit enumeration, extreme
//! representatives, the right-subcoset weight, and the induced weighted
//! Bruhat poset.

use thiserror::Error;

use crate::bruhat::bruhat_order;
use crate::coxeter::{ElementId, EnumeratedGroup, GroupElement, ParabolicSubset};
use crate::wposet::WeightedPoset;

#[derive(Debug, Error)]
pub enum CosetError {
    #[error(
        "restrictions to longest and shortest representatives disagree \
         (cosets {0} and {1}); this indicates an implementation bug"
    )]
    RepresentativeMismatch(usize, usize),
}

/// One cell of G\W/S.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    /// Element ids, ascending (so sorted by length first).
    pub member_ids: Vec<ElementId>,
    pub longest_rep: ElementId,
    pub shortest_rep: ElementId,
    /// Number of right S-subcosets contained in the cell.
    pub weight: u64,
}

/// Enumerates the double cosets of W by left multiplication with the
/// parabolic G and right multiplication with the parabolic S, as orbit
/// closure. Cosets are sorted by shortest representative id; members
/// partition the group.
pub fn double_cosets(
    group: &EnumeratedGroup,
    g_set: &ParabolicSubset,
    s_set: &ParabolicSubset,
) -> Vec<DoubleCoset> {
    let n = group.order();
    assert_eq!(g_set.rank(), group.rank(), "parabolic rank mismatch");
    assert_eq!(s_set.rank(), group.rank(), "parabolic rank mismatch");
    let mut coset_of = vec![u32::MAX; n];
    let mut cosets: Vec<Vec<u32>> = Vec::new();
    for start in 0..n as u32 {
        if coset_of[start as usize] != u32::MAX {
            continue;
        }
        // orbit of the smallest unassigned id; ids ascend by length,
        // so `start` is a shortest member of its coset
        let label = cosets.len() as u32;
        let mut members = vec![start];
        coset_of[start as usize] = label;
        let mut head = 0;
        while head < members.len() {
            let w = group.element(ElementId(members[head]));
            let moves = g_set
                .bits()
                .map(|b| group.left_mul_simple(w, b + 1))
                .chain(s_set.bits().map(|b| group.right_mul_simple(w, b + 1)));
            for u in moves {
                if coset_of[u.id.0 as usize] == u32::MAX {
                    coset_of[u.id.0 as usize] = label;
                    members.push(u.id.0);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        cosets.push(members);
    }

    let s_order = group.parabolic_elements(s_set).len() as u64;
    cosets
        .into_iter()
        .map(|members| {
            let weight = right_subcoset_count(group, s_set, &members);
            // the shortcut |coset| / |S| must agree with the literal
            // count of right subcosets
            assert_eq!(
                weight * s_order,
                members.len() as u64,
                "right S-subcosets do not tile the double coset evenly"
            );
            let shortest = unique_extreme(group, &members, false);
            let longest = unique_extreme(group, &members, true);
            DoubleCoset {
                member_ids: members.into_iter().map(ElementId).collect(),
                longest_rep: longest,
                shortest_rep: shortest,
                weight,
            }
        })
        .collect()
}

/// Counts the right S-cosets inside `members` by literally partitioning
/// the member set into orbits of right multiplication by S-generators.
fn right_subcoset_count(
    group: &EnumeratedGroup,
    s_set: &ParabolicSubset,
    members: &[u32],
) -> u64 {
    let mut unseen: std::collections::BTreeSet<u32> = members.iter().copied().collect();
    let mut count = 0u64;
    while let Some(&start) = unseen.iter().next() {
        count += 1;
        let mut stack = vec![start];
        unseen.remove(&start);
        while let Some(w) = stack.pop() {
            for b in s_set.bits() {
                let u = group.right_mul_simple(group.element(ElementId(w)), b + 1);
                if unseen.remove(&u.id.0) {
                    stack.push(u.id.0);
                }
            }
        }
    }
    count
}

/// The unique longest (or shortest) member; panics if the extreme
/// length is attained twice, which cannot happen for parabolic double
/// cosets.
fn unique_extreme(group: &EnumeratedGroup, members: &[u32], longest: bool) -> ElementId {
    let length = |&id: &u32| group.length(group.element(ElementId(id)));
    let extreme = if longest {
        members.iter().map(length).max()
    } else {
        members.iter().map(length).min()
    }
    .expect("cosets are nonempty");
    let mut hits = members.iter().filter(|id| length(id) == extreme);
    let found = *hits.next().expect("extreme length is attained");
    assert!(
        hits.next().is_none(),
        "extreme-length representative is not unique"
    );
    ElementId(found)
}

/// The weighted poset of G\W/S: one vertex per double coset carrying
/// the right-subcoset weight, ordered by the Bruhat order restricted to
/// longest representatives. The restriction to shortest representatives
/// is computed as well and must agree; a mismatch is reported as a
/// consistency error.
pub fn coset_poset(
    group: &EnumeratedGroup,
    g_set: &ParabolicSubset,
    s_set: &ParabolicSubset,
) -> Result<WeightedPoset, crate::wposet::WposetError> {
    let cosets = double_cosets(group, g_set, s_set);
    let order = bruhat_order(group);
    let longest: Vec<usize> = cosets.iter().map(|c| c.longest_rep.0 as usize).collect();
    let shortest: Vec<usize> = cosets.iter().map(|c| c.shortest_rep.0 as usize).collect();
    let by_longest = order.restrict(&longest);
    let by_shortest = order.restrict(&shortest);
    if by_longest != by_shortest {
        for i in 0..cosets.len() {
            for j in 0..cosets.len() {
                if by_longest.leq(i, j) != by_shortest.leq(i, j) {
                    return Err(CosetError::RepresentativeMismatch(i, j).into());
                }
            }
        }
    }
    let weights: Vec<u64> = cosets.iter().map(|c| c.weight).collect();
    WeightedPoset::new(weights, by_longest)
}

/// Longest coset representatives of G\W (the set X_G): elements whose
/// left descent set contains every generator of G, sorted by id.
pub fn longest_left_coset_reps(
    group: &EnumeratedGroup,
    g_set: &ParabolicSubset,
) -> Vec<GroupElement> {
    double_cosets(group, g_set, &ParabolicSubset::empty(group.rank()))
        .iter()
        .map(|c| group.element(c.longest_rep))
        .collect()
}
