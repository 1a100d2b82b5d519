//! Simple pseudo-graphs and the pressing operation.
//!
//! Pressing a looped vertex `v` complements the subgraph induced on its closed
//! neighbourhood, loops included. Vertices are addressed by their 0-based
//! position; every graph also carries a table of external labels so that
//! positions can shift (e.g. after [`PseudoGraph::press_and_remove`]) without
//! losing names.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PseudoGraph {
    /// Non-loop adjacency; symmetric with an empty diagonal.
    adj: Vec<FixedBitSet>,
    loops: FixedBitSet,
    labels: Vec<usize>,
}

/// An ordered list of distinct vertex positions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct PressingSequence(Vec<usize>);

impl PressingSequence {
    pub fn new(order: Vec<usize>) -> Self {
        Self(order)
    }

    pub fn natural(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Maps positions to the graph's external labels.
    pub fn to_labels(&self, g: &PseudoGraph) -> Vec<usize> {
        self.0.iter().map(|&v| g.label(v)).collect()
    }
}

impl From<Vec<usize>> for PressingSequence {
    fn from(order: Vec<usize>) -> Self {
        Self(order)
    }
}

impl PseudoGraph {
    /// `n` isolated, unlooped vertices labelled `1..=n`.
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![FixedBitSet::with_capacity(n); n],
            loops: FixedBitSet::with_capacity(n),
            labels: (1..=n).collect(),
        }
    }

    /// Builds a graph from 0-based non-loop edges and looped vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                g.loops.insert(u);
            } else {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
        for &v in loops {
            g.check_vertex(v)?;
            g.loops.insert(v);
        }
        Ok(g)
    }

    /// Reads a symmetric adjacency matrix; diagonal entries are loops.
    pub fn from_adjacency(a: &Gf2Matrix) -> Result<Self> {
        if !a.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = a.dim();
        let mut g = Self::new(n);
        for i in 0..n {
            for j in a.row(i).ones() {
                if i == j {
                    g.loops.insert(i);
                } else {
                    g.adj[i].insert(j);
                }
            }
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: labels.len(),
            });
        }
        check_distinct(&labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn position_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn has_default_labels(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| l == i + 1)
    }

    pub fn is_looped(&self, v: usize) -> bool {
        self.loops.contains(v)
    }

    pub fn loops(&self) -> &FixedBitSet {
        &self.loops
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.is_looped(u)
        } else {
            self.adj[u].contains(v)
        }
    }

    /// Non-loop neighbours of `v`.
    pub fn open_neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    /// `N(v)`: the non-loop neighbours, plus `v` itself when it is looped.
    pub fn neighborhood(&self, v: usize) -> FixedBitSet {
        let mut nb = self.adj[v].clone();
        nb.set(v, self.is_looped(v));
        nb
    }

    /// Non-loop edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// True when there are no edges and no loops: the goal state of pressing.
    pub fn is_cleared(&self) -> bool {
        self.loops.is_clear() && self.adj.iter().all(|r| r.is_clear())
    }

    pub fn adjacency_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_fn(self.n(), |i, j| self.has_edge(i, j))
    }

    pub fn rank(&self) -> usize {
        self.adjacency_matrix().rank()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.n()
    }

    pub(crate) fn require_full_rank(&self) -> Result<()> {
        let rank = self.rank();
        if rank == self.n() {
            Ok(())
        } else {
            Err(Error::RankDeficient { rank, n: self.n() })
        }
    }

    /// Presses `v` in place.
    pub fn press_in_place(&mut self, v: usize) -> Result<()> {
        self.check_vertex(v)?;
        if !self.is_looped(v) {
            return Err(Error::UnloopedVertex(v));
        }
        let nb = self.neighborhood(v);
        for u in nb.ones() {
            self.adj[u].symmetric_difference_with(&nb);
            self.adj[u].remove(u);
            self.loops.toggle(u);
        }
        Ok(())
    }

    /// `G_(v)`: the graph after pressing `v`. The vertex count is unchanged and
    /// `v` ends up isolated and loopless.
    pub fn press(&self, v: usize) -> Result<Self> {
        let mut g = self.clone();
        g.press_in_place(v)?;
        Ok(g)
    }

    /// `G^(v)`: press `v`, then delete it.
    pub fn press_and_remove(&self, v: usize) -> Result<Self> {
        Ok(self.press(v)?.remove_vertex(v))
    }

    /// Deletes vertex `v`; the rest keep their relative order and labels.
    pub fn remove_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// The subgraph induced on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let k = vertices.len();
        let mut g = Self::new(k);
        for (i, &u) in vertices.iter().enumerate() {
            g.loops.set(i, self.is_looped(u));
            for (j, &w) in vertices.iter().enumerate() {
                if i != j && self.adj[u].contains(w) {
                    g.adj[i].insert(j);
                }
            }
        }
        g.labels = vertices.iter().map(|&u| self.labels[u]).collect();
        g
    }

    /// Reorders vertices so that new position `i` holds old vertex `order[i]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        crate::gf2::Permutation::new(order.to_vec())?;
        if order.len() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: order.len(),
            });
        }
        Ok(self.induced(order))
    }

    /// True iff each vertex is looped when pressed and the final graph has
    /// neither edges nor loops.
    pub fn is_successful(&self, s: &PressingSequence) -> bool {
        let mut g = self.clone();
        for &v in s.as_slice() {
            if v >= g.n() || g.press_in_place(v).is_err() {
                return false;
            }
        }
        g.is_cleared()
    }

    /// True iff every connected component on two or more vertices contains a
    /// looped vertex, which is exactly when a successful sequence exists.
    pub fn is_pressable(&self) -> bool {
        let n = self.n();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen.put(start) || self.adj[start].is_clear() {
                continue;
            }
            let mut has_loop = false;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                has_loop |= self.is_looped(u);
                for w in self.adj[u].ones() {
                    if !seen.put(w) {
                        queue.push_back(w);
                    }
                }
            }
            if !has_loop {
                return false;
            }
        }
        true
    }

    /// Visits every successful pressing sequence in lexicographic order of
    /// positions. The visitor can stop the walk early.
    pub fn for_each_sequence<B>(
        &self,
        mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if !self.is_pressable() {
            return ControlFlow::Continue(());
        }
        let mut prefix = Vec::with_capacity(self.n());
        self.walk(&mut prefix, &mut visit)
    }

    fn walk<B>(
        &self,
        prefix: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if self.is_cleared() {
            return visit(prefix);
        }
        for v in self.loops.ones() {
            let mut next = self.clone();
            next.press_in_place(v).expect("looped vertex");
            // Prune branches that can no longer be completed.
            if !next.is_pressable() {
                continue;
            }
            prefix.push(v);
            next.walk(prefix, visit)?;
            prefix.pop();
        }
        ControlFlow::Continue(())
    }

    /// `Σ(G)`: all successful pressing sequences, lexicographically sorted.
    pub fn sequences(&self) -> Vec<PressingSequence> {
        let rank = self.rank();
        let mut out = Vec::new();
        let _ = self.for_each_sequence::<()>(|s| {
            debug_assert_eq!(s.len(), rank);
            out.push(PressingSequence(s.to_vec()));
            ControlFlow::Continue(())
        });
        out
    }

    pub fn count_sequences(&self) -> u64 {
        let mut count = 0u64;
        let _ = self.for_each_sequence::<()>(|_| {
            count += 1;
            ControlFlow::Continue(())
        });
        count
    }

    /// The instructional Cholesky root for a full-length successful sequence:
    /// row `i` is the closed neighbourhood of `s[i]` at the moment it is
    /// pressed, with columns in `s` order.
    pub fn instructional_root(&self, s: &PressingSequence) -> Result<Gf2Matrix> {
        let n = self.n();
        let order = s.as_slice();
        if order.len() != n {
            return Err(if self.is_successful(s) {
                Error::RankDeficient {
                    rank: order.len(),
                    n,
                }
            } else {
                Error::NotSuccessful
            });
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::NotSuccessful);
            }
            pos[v] = i;
        }
        let mut g = self.clone();
        let mut root = Gf2Matrix::zeros(order.len());
        for (i, &v) in order.iter().enumerate() {
            if !g.is_looped(v) {
                return Err(Error::NotSuccessful);
            }
            for w in g.neighborhood(v).ones() {
                if pos[w] == usize::MAX {
                    return Err(Error::NotSuccessful);
                }
                root.set(i, pos[w], true);
            }
            g.press_in_place(v)?;
        }
        if !g.is_cleared() {
            return Err(Error::NotSuccessful);
        }
        Ok(root)
    }

    /// `x ⊕ G`: a new first vertex `x`, looped, joined to every looped vertex
    /// of `G`; every pair among those looped vertices (loops included) is
    /// toggled, so `x` becomes the only looped vertex.
    pub fn left_append(&self, label: usize) -> Result<Self> {
        self.check_new_label(label)?;
        let n = self.n();
        let looped: Vec<usize> = self.loops.ones().map(|v| v + 1).collect();
        let mut g = Self::new(n + 1);
        for (u, v) in self.edges() {
            g.add_edge(u + 1, v + 1);
        }
        for (i, &a) in looped.iter().enumerate() {
            g.add_edge(0, a);
            for &b in &looped[i + 1..] {
                g.toggle_edge(a, b);
            }
        }
        g.loops.insert(0);
        g.labels = std::iter::once(label)
            .chain(self.labels.iter().copied())
            .collect();
        Ok(g)
    }

    /// `G ⊕ x`: a new last vertex `x` joined to every looped vertex of `G`,
    /// looped iff `G` has an even number of vertices.
    pub fn right_append(&self, label: usize) -> Result<Self> {
        self.check_new_label(label)?;
        let n = self.n();
        let mut g = Self::new(n + 1);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for l in self.loops.ones() {
            g.loops.insert(l);
            g.add_edge(l, n);
        }
        g.loops.set(n, n % 2 == 0);
        g.labels = self.labels.iter().copied().chain([label]).collect();
        Ok(g)
    }

    /// Disjoint union; `other`'s vertices follow this graph's.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let n = self.n();
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        check_distinct(&labels)?;
        let mut g = Self::new(n + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + n, v + n);
        }
        for v in self.loops.ones() {
            g.loops.insert(v);
        }
        for v in other.loops.ones() {
            g.loops.insert(v + n);
        }
        g.labels = labels;
        Ok(g)
    }

    /// Label-blind isomorphism test (loops must map to loops), by
    /// backtracking over vertex assignments. Meant for small graphs.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        let n = self.n();
        if n != other.n() || self.loops.count_ones(..) != other.loops.count_ones(..) {
            return false;
        }
        let degree = |g: &Self, v: usize| (g.adj[v].count_ones(..), g.is_looped(v));
        let mut a: Vec<_> = (0..n).map(|v| degree(self, v)).collect();
        let mut b: Vec<_> = (0..n).map(|v| degree(other, v)).collect();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
        let mut mapping = vec![usize::MAX; n];
        let mut used = FixedBitSet::with_capacity(n);
        self.extend_isomorphism(other, 0, &mut mapping, &mut used)
    }

    fn extend_isomorphism(
        &self,
        other: &Self,
        v: usize,
        mapping: &mut [usize],
        used: &mut FixedBitSet,
    ) -> bool {
        if v == self.n() {
            return true;
        }
        for w in 0..other.n() {
            if used.contains(w)
                || self.is_looped(v) != other.is_looped(w)
                || self.adj[v].count_ones(..) != other.adj[w].count_ones(..)
            {
                continue;
            }
            let consistent = (0..v).all(|u| self.adj[v].contains(u) == other.adj[w].contains(mapping[u]));
            if !consistent {
                continue;
            }
            mapping[v] = w;
            used.insert(w);
            if self.extend_isomorphism(other, v + 1, mapping, used) {
                return true;
            }
            used.remove(w);
        }
        false
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    fn toggle_edge(&mut self, u: usize, v: usize) {
        self.adj[u].toggle(v);
        self.adj[v].toggle(u);
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    fn check_new_label(&self, label: usize) -> Result<()> {
        if self.labels.contains(&label) {
            Err(Error::DuplicateLabel(label))
        } else {
            Ok(())
        }
    }
}

fn check_distinct(labels: &[usize]) -> Result<()> {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::DuplicateLabel(w[0])),
        None => Ok(()),
    }
}

/// `G_Λ(n)`: loop on vertex 1, the path `1-2-...-n` and the extra edge
/// `(n-2, n)`.
pub fn lambda_generator(n: usize) -> Result<PseudoGraph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("G_Λ(n) needs n >= 3, got {n}")));
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 3, n - 1));
    PseudoGraph::from_edges(n, &edges, &[0])
}
