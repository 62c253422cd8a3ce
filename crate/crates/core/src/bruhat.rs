//! Partial orders as bitset matrices, the Bruhat order of an enumerated
//! group, and restriction to element subsets.

use std::collections::VecDeque;

use thiserror::Error;

use crate::coxeter::{ElementId, EnumeratedGroup};

#[derive(Debug, Error)]
pub enum OrderError {
    #[error("relation is not antisymmetric: contains the cycle {}", format_cycle(.0))]
    Cycle(Vec<usize>),
    #[error("edge ({0}, {1}) out of range for {2} vertices")]
    EdgeOutOfRange(usize, usize, usize),
}

fn format_cycle(c: &[usize]) -> String {
    let mut parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
    if let Some(first) = c.first() {
        parts.push(first.to_string());
    }
    parts.join(" -> ")
}

/// Square bit matrix with u64-block rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 != 0
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    /// rows[i] |= rows[j]
    pub fn or_row(&mut self, i: usize, j: usize) {
        let (a, b) = if i < j {
            let (lo, hi) = self.rows.split_at_mut(j * self.words);
            (&mut lo[i * self.words..i * self.words + self.words], &hi[..self.words])
        } else {
            let (lo, hi) = self.rows.split_at_mut(i * self.words);
            (&mut hi[..self.words], &lo[j * self.words..j * self.words + self.words])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x |= y;
        }
    }

    pub fn row_is_subset(&self, i: usize, j: usize) -> bool {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .all(|(a, b)| a & !b == 0)
    }
}

/// A finite partial order: reflexive-antisymmetric-transitive `leq`
/// plus its cover pairs (the transitive reduction).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderRelation {
    leq: BitMatrix,
    covers: Vec<(u32, u32)>,
}

impl OrderRelation {
    /// Discrete order (equality only) on n vertices.
    pub fn discrete(n: usize) -> Self {
        let mut leq = BitMatrix::new(n);
        for i in 0..n {
            leq.set(i, i);
        }
        OrderRelation {
            leq,
            covers: Vec::new(),
        }
    }

    /// Builds from a transitively closed, reflexive bit matrix.
    /// Panics if the matrix is not a partial order (callers construct
    /// it from graded data); use `from_edges` for untrusted input.
    pub fn from_leq(leq: BitMatrix) -> Self {
        let n = leq.size();
        for i in 0..n {
            assert!(leq.get(i, i), "leq must be reflexive");
            for j in 0..n {
                if leq.get(i, j) {
                    assert!(
                        i == j || !leq.get(j, i),
                        "leq must be antisymmetric"
                    );
                    assert!(
                        leq.row_is_subset(j, i),
                        "leq must be transitively closed"
                    );
                }
            }
        }
        let covers = transitive_reduction(&leq);
        OrderRelation { leq, covers }
    }

    /// Builds the reflexive-transitive closure of arbitrary directed
    /// edges (i below j), failing on cycles with a shortest witness.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, OrderError> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(OrderError::EdgeOutOfRange(i, j, n));
            }
            if i != j {
                adj[i].push(j);
            } else {
                return Err(OrderError::Cycle(vec![i]));
            }
        }
        if let Some(cycle) = shortest_cycle(&adj) {
            return Err(OrderError::Cycle(cycle));
        }
        // closure by depth-first reachability per vertex, processing in
        // reverse topological order so each row is final when merged
        let topo = topo_order(&adj);
        let mut leq = BitMatrix::new(n);
        for i in 0..n {
            leq.set(i, i);
        }
        for &v in topo.iter().rev() {
            for &u in &adj[v] {
                leq.or_row(v, u);
            }
        }
        let covers = transitive_reduction(&leq);
        Ok(OrderRelation { leq, covers })
    }

    pub fn size(&self) -> usize {
        self.leq.size()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    /// Cover pairs (lower, upper), sorted.
    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    /// Longest-chain rank of each vertex: 0 on minimal elements, and
    /// one more than the highest-ranked lower cover elsewhere.
    pub fn levels(&self) -> Vec<u32> {
        let n = self.size();
        let mut level = vec![0u32; n];
        let mut indeg = vec![0usize; n];
        let mut up: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            indeg[b as usize] += 1;
            up[a as usize].push(b);
        }
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            for &b in &up[v] {
                let b = b as usize;
                level[b] = level[b].max(level[v] + 1);
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push_back(b);
                }
            }
        }
        level
    }

    /// Induced order on `subset`: vertex k of the result is
    /// subset[k], with covers recomputed from the induced relation.
    pub fn restrict(&self, subset: &[usize]) -> OrderRelation {
        let m = subset.len();
        let mut leq = BitMatrix::new(m);
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                if self.leq.get(i, j) {
                    leq.set(a, b);
                }
            }
        }
        let covers = transitive_reduction(&leq);
        OrderRelation { leq, covers }
    }

    /// The opposite order.
    pub fn reversed(&self) -> OrderRelation {
        let n = self.size();
        let mut leq = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if self.leq.get(j, i) {
                    leq.set(i, j);
                }
            }
        }
        let mut covers: Vec<(u32, u32)> =
            self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        OrderRelation { leq, covers }
    }

    /// Full validation: reflexive, antisymmetric, transitive, covers =
    /// transitive reduction. Used by tests and untrusted input paths.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.size();
        for i in 0..n {
            if !self.leq.get(i, i) {
                return Err(format!("not reflexive at {i}"));
            }
            for j in 0..n {
                if self.leq.get(i, j) {
                    if i != j && self.leq.get(j, i) {
                        return Err(format!("not antisymmetric at ({i},{j})"));
                    }
                    if !self.leq.row_is_subset(j, i) {
                        return Err(format!("not transitive through ({i},{j})"));
                    }
                }
            }
        }
        let expected = transitive_reduction(&self.leq);
        if expected != self.covers {
            return Err("covers are not the transitive reduction".to_string());
        }
        Ok(())
    }

    pub fn maximal_vertices(&self) -> Vec<usize> {
        let n = self.size();
        (0..n)
            .filter(|&i| (0..n).all(|j| j == i || !self.leq.get(i, j)))
            .collect()
    }
}

fn transitive_reduction(leq: &BitMatrix) -> Vec<(u32, u32)> {
    let n = leq.size();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && leq.get(i, j) {
                let direct = (0..n)
                    .all(|k| k == i || k == j || !(leq.get(i, k) && leq.get(k, j)));
                if direct {
                    covers.push((i as u32, j as u32));
                }
            }
        }
    }
    covers.sort_unstable();
    covers
}

fn topo_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut indeg = vec![0usize; n];
    for row in adj {
        for &j in row {
            indeg[j] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &j in &adj[v] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                queue.push_back(j);
            }
        }
    }
    order
}

/// Shortest directed cycle, as a vertex list without the closing
/// repetition, or None if the graph is acyclic.
fn shortest_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    if topo_order(adj).len() == n {
        return None;
    }
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        // breadth-first from start; first return to start closes a
        // shortest cycle through it
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        dist[start] = 0;
        queue.push_back(start);
        'bfs: while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if u == start {
                    let mut path = vec![v];
                    let mut cur = v;
                    while cur != start {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                        best = Some(path);
                    }
                    break 'bfs;
                }
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
    }
    best
}

/// The Bruhat order on the whole enumerated group, indexed by element
/// id. Covers are found through reflections (x is covered by tx when
/// the length rises by exactly one); the result is cached on the group.
pub fn bruhat_order(group: &EnumeratedGroup) -> &OrderRelation {
    group.bruhat_cache.get_or_init(|| compute_bruhat(group))
}

fn compute_bruhat(group: &EnumeratedGroup) -> OrderRelation {
    let n = group.order();
    let mut covers: Vec<(u32, u32)> = Vec::new();
    // up[x] lists y with x covered by y
    let mut up: Vec<Vec<u32>> = vec![Vec::new(); n];
    for w in group.elements() {
        let lw = group.length(w);
        for &t in group.reflections() {
            let t = group.element(t);
            let u = group.multiply(t, w).expect("same group");
            if group.length(u) == lw + 1 {
                covers.push((w.id.0, u.id.0));
                up[w.id.0 as usize].push(u.id.0);
            }
        }
    }
    covers.sort_unstable();

    // up-set rows by decreasing length: x <= y iff y in the union of
    // cover chains above x
    let mut leq = BitMatrix::new(n);
    let mut ids: Vec<u32> = (0..n as u32).collect();
    ids.sort_unstable_by_key(|&i| {
        std::cmp::Reverse(group.length(group.element(ElementId(i))))
    });
    for &x in &ids {
        leq.set(x as usize, x as usize);
        for &y in &up[x as usize] {
            leq.or_row(x as usize, y as usize);
        }
    }
    OrderRelation { leq, covers }
}
