//! Finite posets stored as strict-order closure bitsets.
//!
//! Element `a` is above `b` (written `a ≻ b`) when bit `b` of `below[a]` is
//! set. Elements are dense 0-based ids with an external label table.
//! Sequences of elements are always written greatest-first, the order in
//! which the corresponding vertices get pressed.

mod build;
mod stats;

pub use build::BuildTree;
pub use stats::PosetStats;

use std::collections::VecDeque;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Poset {
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    hasse: Vec<(usize, usize)>,
    labels: Vec<usize>,
}

/// Four elements `(a, b, c, d)` forming an induced pattern.
pub type Quadruple = [usize; 4];

impl Poset {
    /// Transitive closure of the arcs `a → b` (meaning `a ≻ b`) on `n`
    /// elements labelled `1..=n`.
    pub fn from_dag(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in arcs {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange(a.max(b)));
            }
            if a == b {
                return Err(Error::Cycle);
            }
            succ[a].push(b);
            indegree[b] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() < n {
            return Err(Error::Cycle);
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &v in order.iter().rev() {
            let mut acc = FixedBitSet::with_capacity(n);
            for &w in &succ[v] {
                acc.insert(w);
                acc.union_with(&below[w]);
            }
            below[v] = acc;
        }
        Ok(Self::from_below(below, (1..=n).collect()))
    }

    /// Builds a poset from a relation that must already be a strict order.
    pub(crate) fn from_below(below: Vec<FixedBitSet>, labels: Vec<usize>) -> Self {
        let n = below.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in below.iter().enumerate() {
            debug_assert!(!row.contains(a));
            for b in row.ones() {
                debug_assert!(row.is_superset(&below[b]));
                above[b].insert(a);
            }
        }
        let mut hasse = Vec::new();
        for (a, row) in below.iter().enumerate() {
            let mut covers = row.clone();
            for z in row.ones() {
                covers.difference_with(&below[z]);
            }
            hasse.extend(covers.ones().map(|b| (a, b)));
        }
        Self {
            below,
            above,
            hasse,
            labels,
        }
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_below(vec![FixedBitSet::with_capacity(n); n], (1..=n).collect())
    }

    /// The total order `1 ≻ 2 ≻ ... ≻ n`.
    pub fn chain(n: usize) -> Self {
        let arcs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_dag(n, &arcs).expect("a path is acyclic")
    }

    /// `Λ(n)`: the chain `1 ≻ ... ≻ n-2` over two incomparable minimal
    /// elements `n-1` and `n`.
    pub fn lambda(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("Λ(n) needs n >= 3, got {n}")));
        }
        let mut arcs: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
        arcs.push((n - 3, n - 1));
        Self::from_dag(n, &arcs)
    }

    /// `X(n)`: two maximal elements `1, 2` joined through the chain
    /// `3 ≻ ... ≻ n-2` to two minimal elements `n-1, n`. For `n = 4` the
    /// chain is empty and this is the bowtie.
    pub fn x_family(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument(format!("X(n) needs n >= 4, got {n}")));
        }
        if n == 4 {
            return Self::from_dag(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        }
        let mut arcs = vec![(0, 2), (n - 3, n - 1)];
        arcs.extend((1..n - 2).map(|i| (i, i + 1)));
        Self::from_dag(n, &arcs)
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: labels.len(),
            });
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0]));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.below.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> usize {
        self.labels[a]
    }

    pub fn position_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn has_default_labels(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| l == i + 1)
    }

    /// `a ≻ b`.
    pub fn greater(&self, a: usize, b: usize) -> bool {
        self.below[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.greater(a, b) || self.greater(b, a)
    }

    pub fn below(&self, a: usize) -> &FixedBitSet {
        &self.below[a]
    }

    pub fn above(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    /// Cover relations `(a, b)` with `a` covering `b`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Same as [`covers`](Self::covers), as an owned arc list.
    pub fn transitive_reduction(&self) -> Vec<(usize, usize)> {
        self.hasse.clone()
    }

    /// All strictly related pairs `(a, b)` with `a ≻ b`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        self.below
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().map(move |b| (a, b)))
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n()).filter(|&a| self.above[a].is_clear()).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.n()).filter(|&a| self.below[a].is_clear()).collect()
    }

    /// Connected components of the comparability graph, each sorted, ordered
    /// by smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.put(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.below[v].ones().chain(self.above[v].ones()) {
                    if !seen.put(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subposet on `elements`, with ids following the given order.
    pub fn induced(&self, elements: &[usize]) -> Self {
        let k = elements.len();
        let mut below = vec![FixedBitSet::with_capacity(k); k];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                if self.greater(a, b) {
                    below[i].insert(j);
                }
            }
        }
        Self::from_below(below, elements.iter().map(|&a| self.labels[a]).collect())
    }

    /// `P - a`.
    pub fn remove(&self, a: usize) -> Self {
        let keep: Vec<usize> = (0..self.n()).filter(|&b| b != a).collect();
        self.induced(&keep)
    }

    /// Disjoint union; `other`'s elements follow this poset's.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let n = self.n();
        let total = n + other.n();
        let mut below = vec![FixedBitSet::with_capacity(total); total];
        for (a, row) in self.below.iter().enumerate() {
            below[a].extend(row.ones());
        }
        for (a, row) in other.below.iter().enumerate() {
            below[a + n].extend(row.ones().map(|b| b + n));
        }
        let labels = self.labels.iter().chain(&other.labels).copied().collect();
        Self::from_below(below, (1..=total).collect()).with_labels(labels)
    }

    /// Adds a new element above every existing one; it becomes id 0.
    pub fn with_greatest(&self, label: usize) -> Result<Self> {
        let n = self.n();
        let mut below = vec![FixedBitSet::with_capacity(n + 1); n + 1];
        below[0].insert_range(1..);
        for (a, row) in self.below.iter().enumerate() {
            below[a + 1].extend(row.ones().map(|b| b + 1));
        }
        let labels = std::iter::once(label).chain(self.labels.iter().copied()).collect();
        Self::from_below(below, (1..=n + 1).collect()).with_labels(labels)
    }

    /// Adds a new element below every existing one; it becomes the last id.
    pub fn with_least(&self, label: usize) -> Result<Self> {
        let n = self.n();
        let mut below = vec![FixedBitSet::with_capacity(n + 1); n + 1];
        for (a, row) in self.below.iter().enumerate() {
            below[a].extend(row.ones());
            below[a].insert(n);
        }
        let labels = self.labels.iter().copied().chain([label]).collect();
        Self::from_below(below, (1..=n + 1).collect()).with_labels(labels)
    }

    /// True iff `order` lists every element once, greatest-first.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        let n = self.n();
        if order.len() != n {
            return false;
        }
        let mut placed = FixedBitSet::with_capacity(n);
        for &v in order {
            if v >= n || placed.contains(v) || !self.above[v].is_subset(&placed) {
                return false;
            }
            placed.insert(v);
        }
        true
    }

    /// True iff the identity order `0, 1, ..., n-1` is a linear extension.
    pub fn ids_are_linear_extension(&self) -> bool {
        self.below.iter().enumerate().all(|(a, row)| row.ones().all(|b| b > a))
    }

    /// Visits every linear extension (greatest-first) in lexicographic order.
    pub fn for_each_linear_extension<B>(
        &self,
        mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let n = self.n();
        let mut prefix = Vec::with_capacity(n);
        let mut placed = FixedBitSet::with_capacity(n);
        self.extend_linear(&mut prefix, &mut placed, &mut visit)
    }

    fn extend_linear<B>(
        &self,
        prefix: &mut Vec<usize>,
        placed: &mut FixedBitSet,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if prefix.len() == self.n() {
            return visit(prefix);
        }
        for v in 0..self.n() {
            if placed.contains(v) || !self.above[v].is_subset(placed) {
                continue;
            }
            placed.insert(v);
            prefix.push(v);
            self.extend_linear(prefix, placed, visit)?;
            prefix.pop();
            placed.remove(v);
        }
        ControlFlow::Continue(())
    }

    /// `LinExt(P)`, greatest-first, lexicographically sorted.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let _ = self.for_each_linear_extension::<()>(|e| {
            out.push(e.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn count_linear_extensions(&self) -> u64 {
        let mut count = 0;
        let _ = self.for_each_linear_extension::<()>(|_| {
            count += 1;
            ControlFlow::Continue(())
        });
        count
    }

    /// The lexicographically first linear extension.
    pub fn first_linear_extension(&self) -> Vec<usize> {
        match self.for_each_linear_extension(|e| ControlFlow::Break(e.to_vec())) {
            ControlFlow::Break(e) => e,
            ControlFlow::Continue(()) => Vec::new(),
        }
    }

    /// Some induced `N`: `a ≻ c`, `a ≻ d`, `b ≻ d`, every other pair among the
    /// four incomparable. Exhaustive scan.
    pub fn find_induced_n(&self) -> Option<Quadruple> {
        let n = self.n();
        for a in 0..n {
            for d in self.below[a].ones() {
                for b in self.above[d].ones() {
                    if b == a || self.comparable(a, b) {
                        continue;
                    }
                    for c in self.below[a].ones() {
                        if c != d && !self.comparable(b, c) && !self.comparable(c, d) {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Some induced bowtie: `a` and `b` both above `c` and `d`, with `a ∥ b`
    /// and `c ∥ d`. Exhaustive scan.
    pub fn find_induced_bowtie(&self) -> Option<Quadruple> {
        let n = self.n();
        for a in 0..n {
            for b in a + 1..n {
                if self.comparable(a, b) {
                    continue;
                }
                let mut common = self.below[a].clone();
                common.intersect_with(&self.below[b]);
                for c in common.ones() {
                    for d in common.ones().filter(|&d| d > c) {
                        if !self.comparable(c, d) {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn stats(&self) -> PosetStats {
        PosetStats::of(self)
    }

    /// Checks both Hasse edge-count identities that hold for V-posets.
    pub fn check_edge_formulas(&self) -> bool {
        self.stats().edge_formulas_hold()
    }

    /// The relation as a bitset matrix, usable as a hash key when comparing
    /// posets that share an id order.
    pub fn closure_rows(&self) -> &[FixedBitSet] {
        &self.below
    }
}

/// Equality of labelled orders: same label set, same relation between labels.
/// Id order does not matter.
impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        if self.n() != other.n() {
            return false;
        }
        if self.labels == other.labels {
            return self.below == other.below;
        }
        let Some(map): Option<Vec<usize>> = self
            .labels
            .iter()
            .map(|&l| other.position_of(l))
            .collect()
        else {
            return false;
        };
        (0..self.n()).all(|a| {
            (0..self.n()).all(|b| self.greater(a, b) == other.greater(map[a], map[b]))
        })
    }
}

impl Eq for Poset {}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_one() -> Poset {
        Poset::from_dag(4, &[(0, 2), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn closure_of_dag() {
        let p = Poset::from_dag(3, &[]).unwrap();
        assert!(p.relations().is_empty());
        let p = example_one();
        assert!(p.greater(0, 3) && p.greater(1, 3));
        assert!(!p.comparable(0, 1));
        assert_eq!(Poset::chain(4).relations().len(), 6);
    }

    #[test]
    fn cycles_rejected() {
        assert_eq!(Poset::from_dag(2, &[(0, 1), (1, 0)]).unwrap_err(), Error::Cycle);
        assert_eq!(Poset::from_dag(2, &[(1, 1)]).unwrap_err(), Error::Cycle);
        assert_eq!(
            Poset::from_dag(2, &[(0, 5)]).unwrap_err(),
            Error::VertexOutOfRange(5)
        );
    }

    #[test]
    fn reductions() {
        assert_eq!(Poset::chain(4).transitive_reduction(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(example_one().transitive_reduction(), vec![(0, 2), (1, 2), (2, 3)]);
        assert!(Poset::antichain(3).transitive_reduction().is_empty());
        // Redundant arcs collapse away.
        let p = Poset::from_dag(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn linear_extension_lists() {
        assert_eq!(Poset::antichain(3).linear_extensions().len(), 6);
        assert_eq!(
            Poset::lambda(3).unwrap().linear_extensions(),
            vec![vec![0, 1, 2], vec![0, 2, 1]]
        );
        assert_eq!(
            example_one().linear_extensions(),
            vec![vec![0, 1, 2, 3], vec![1, 0, 2, 3]]
        );
        for n in 3..=8 {
            assert_eq!(Poset::lambda(n).unwrap().count_linear_extensions(), 2);
        }
    }

    #[test]
    fn n_pattern() {
        assert_eq!(Poset::chain(4).find_induced_n(), None);
        let p = Poset::from_dag(4, &[(0, 2), (0, 3), (1, 3)]).unwrap();
        assert_eq!(p.find_induced_n(), Some([0, 1, 2, 3]));
        for n in 3..=8 {
            assert_eq!(Poset::lambda(n).unwrap().find_induced_n(), None);
        }
    }

    #[test]
    fn bowtie_pattern() {
        let bowtie = Poset::x_family(4).unwrap();
        assert_eq!(bowtie.find_induced_bowtie(), Some([0, 1, 2, 3]));
        assert_eq!(Poset::x_family(5).unwrap().find_induced_bowtie(), Some([0, 1, 3, 4]));
        assert_eq!(example_one().find_induced_bowtie(), None);
    }

    #[test]
    fn families() {
        let l4 = Poset::lambda(4).unwrap();
        assert_eq!(l4.covers(), &[(0, 1), (1, 2), (1, 3)]);
        assert!(Poset::lambda(2).is_err());
        let x5 = Poset::x_family(5).unwrap();
        assert_eq!(x5.covers(), &[(0, 2), (1, 2), (2, 3), (2, 4)]);
        assert!(Poset::x_family(3).is_err());
        for n in 4..=8 {
            assert!(Poset::x_family(n).unwrap().find_induced_bowtie().is_some());
            assert!(Poset::x_family(n).unwrap().find_induced_n().is_none());
        }
    }

    #[test]
    fn label_aware_equality() {
        let p = example_one();
        let q = Poset::from_dag(4, &[(3, 1), (2, 1), (1, 0)])
            .unwrap()
            .with_labels(vec![4, 3, 2, 1])
            .unwrap();
        assert_eq!(p, q);
        assert_ne!(p, Poset::chain(4));
    }

    #[test]
    fn extremal_operations() {
        let p = Poset::antichain(2).with_least(3).unwrap().with_least(4).unwrap();
        assert_eq!(p, example_one());
        let g = example_one().with_greatest(9).unwrap();
        assert_eq!(g.maximal(), vec![0]);
        assert_eq!(g.remove(0), example_one());
        assert!(example_one().with_least(3).is_err());
    }

    #[test]
    fn components_and_extremes() {
        let p = Poset::chain(2).disjoint_union(&Poset::antichain(1).with_labels(vec![5]).unwrap()).unwrap();
        assert_eq!(p.components(), vec![vec![0, 1], vec![2]]);
        assert_eq!(p.maximal(), vec![0, 2]);
        assert_eq!(p.minimal(), vec![1, 2]);
    }
}
