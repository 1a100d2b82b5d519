//! V-poset recognition from an arbitrary DAG.
//!
//! The pipeline has three stages: an induced-N test that also produces the
//! transitive reduction, a bottom-up sweep that looks for a bowtie in the
//! reduction, and a second sweep that marks everything above a branching
//! vertex and fails when a marked vertex has two parents (an `X(n)` shape).
//! The sweeps follow the level-by-level procedure exactly, including its
//! `Visited` bookkeeping, and report how often each arc was touched.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::Result;
use crate::poset::{BuildTree, Poset, Quadruple};

/// Output of the first stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub n: usize,
    pub is_n_free: bool,
    /// Cover relations of the input's closure.
    pub reduced_arcs: Vec<(usize, usize)>,
    pub n_witness: Option<Quadruple>,
}

/// Which stage rejected the input, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    VPoset,
    InducedN,
    Bowtie,
    ClosureNotVPoset,
}

impl Verdict {
    pub fn is_vposet(self) -> bool {
        self == Verdict::VPoset
    }
}

/// Closure, induced-N scan and reduction. This is the cubic reference path;
/// the later stages only rely on its input/output contract.
pub fn n_free_reduce(n: usize, arcs: &[(usize, usize)]) -> Result<ReductionResult> {
    let p = Poset::from_dag(n, arcs)?;
    let n_witness = p.find_induced_n();
    Ok(ReductionResult {
        n,
        is_n_free: n_witness.is_none(),
        reduced_arcs: p.transitive_reduction(),
        n_witness,
    })
}

/// Adjacency lists that remember arc ids, so sweeps can count visits.
struct Digraph {
    out: Vec<Vec<(usize, usize)>>,
    inn: Vec<Vec<(usize, usize)>>,
}

impl Digraph {
    fn new(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (id, &(a, b)) in arcs.iter().enumerate() {
            out[a].push((id, b));
            inn[b].push((id, a));
        }
        Self { out, inn }
    }

    fn sinks(&self) -> OrderedSet {
        let mut set = OrderedSet::new(self.out.len());
        for v in (0..self.out.len()).filter(|&v| self.out[v].is_empty()) {
            set.add(v);
        }
        set
    }
}

/// Insertion-ordered set of vertex ids.
struct OrderedSet {
    items: Vec<usize>,
    member: FixedBitSet,
}

impl OrderedSet {
    fn new(n: usize) -> Self {
        Self {
            items: Vec::new(),
            member: FixedBitSet::with_capacity(n),
        }
    }

    fn add(&mut self, v: usize) {
        if !self.member.put(v) {
            self.items.push(v);
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.member.contains(v)
    }

    fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn clear(&mut self) {
        self.items.clear();
        self.member.clear();
    }
}

/// Per-arc visit counters, indexed like the arc list given to a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArcVisits(pub Vec<u32>);

impl ArcVisits {
    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    fn touch(&mut self, arc: usize) {
        self.0[arc] += 1;
    }
}

/// Bowtie test on an induced-N-free transitive reduction: false iff some
/// parent with out-degree above one has a child with in-degree above one.
pub fn is_bowtie_free(n: usize, reduced: &[(usize, usize)]) -> bool {
    is_bowtie_free_traced(n, reduced).0
}

pub fn is_bowtie_free_traced(n: usize, reduced: &[(usize, usize)]) -> (bool, ArcVisits) {
    let d = Digraph::new(n, reduced);
    let mut visits = ArcVisits(vec![0; reduced.len()]);
    let mut current = d.sinks();
    let mut parents = OrderedSet::new(n);
    let mut visited = OrderedSet::new(n);
    while !current.is_empty() {
        for &v in &current.items {
            for &(arc, u) in &d.inn[v] {
                visits.touch(arc);
                parents.add(u);
            }
        }
        for &v in &parents.items {
            if d.out[v].len() > 1 {
                for &(arc, u) in &d.out[v] {
                    visits.touch(arc);
                    if d.inn[u].len() > 1 {
                        return (false, visits);
                    }
                    visited.add(u);
                }
            }
        }
        for &v in &current.items {
            visited.add(v);
        }
        current.clear();
        for &v in &parents.items {
            if !visited.contains(v) {
                current.add(v);
                visited.add(v);
            }
        }
        parents.clear();
    }
    (true, visits)
}

/// Final stage on an induced-N-free, bowtie-free reduction: marks every
/// vertex at or above a branching parent as `Multiple` and fails when a
/// marked vertex is reached with in-degree above one.
pub fn closure_is_vposet(n: usize, reduced: &[(usize, usize)]) -> bool {
    closure_is_vposet_traced(n, reduced).0
}

pub fn closure_is_vposet_traced(n: usize, reduced: &[(usize, usize)]) -> (bool, ArcVisits) {
    let d = Digraph::new(n, reduced);
    let mut visits = ArcVisits(vec![0; reduced.len()]);
    let mut current = d.sinks();
    let mut parents = OrderedSet::new(n);
    let mut visited = OrderedSet::new(n);
    let mut multiple = OrderedSet::new(n);
    while !current.is_empty() {
        for &v in &current.items {
            let marked = multiple.contains(v);
            if marked && d.inn[v].len() > 1 {
                return (false, visits);
            }
            for &(arc, u) in &d.inn[v] {
                visits.touch(arc);
                parents.add(u);
                if marked {
                    multiple.add(u);
                }
            }
        }
        for &v in &parents.items {
            if d.out[v].len() > 1 {
                multiple.add(v);
            }
        }
        for &v in &current.items {
            visited.add(v);
        }
        current.clear();
        for &v in &parents.items {
            if !visited.contains(v) {
                current.add(v);
            }
        }
        parents.clear();
    }
    (true, visits)
}

/// Runs all three stages and reports the first one that rejects.
pub fn classify(n: usize, arcs: &[(usize, usize)]) -> Result<Verdict> {
    let reduction = n_free_reduce(n, arcs)?;
    Ok(if !reduction.is_n_free {
        Verdict::InducedN
    } else if !is_bowtie_free(n, &reduction.reduced_arcs) {
        Verdict::Bowtie
    } else if !closure_is_vposet(n, &reduction.reduced_arcs) {
        Verdict::ClosureNotVPoset
    } else {
        Verdict::VPoset
    })
}

/// True iff the transitive closure of the DAG is a V-poset.
pub fn recognize(n: usize, arcs: &[(usize, usize)]) -> Result<bool> {
    Ok(classify(n, arcs)?.is_vposet())
}

pub fn recognize_poset(p: &Poset) -> bool {
    recognize(p.n(), p.covers()).expect("covers of a poset are acyclic")
}

/// Recovers a construction tree for a V-poset: split into components, or
/// strip the unique greatest element (preferred) or unique least element.
/// Returns `None` when the poset is not a V-poset.
pub fn decompose(p: &Poset) -> Option<BuildTree> {
    match p.n() {
        0 => return None,
        1 => return Some(BuildTree::Element(p.label(0))),
        _ => {}
    }
    let components = p.components();
    if components.len() > 1 {
        return components
            .iter()
            .map(|c| decompose(&p.induced(c)))
            .collect::<Option<Vec<_>>>()
            .map(BuildTree::Union);
    }
    if let [top] = p.maximal()[..] {
        return decompose(&p.remove(top)).map(|t| BuildTree::greatest(p.label(top), t));
    }
    if let [bottom] = p.minimal()[..] {
        return decompose(&p.remove(bottom)).map(|t| BuildTree::least(p.label(bottom), t));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOWTIE: [(usize, usize); 4] = [(0, 2), (0, 3), (1, 2), (1, 3)];
    const EXAMPLE_ONE: [(usize, usize); 3] = [(0, 2), (1, 2), (2, 3)];

    #[test]
    fn reduce_chain() {
        let r = n_free_reduce(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(r.is_n_free);
        assert_eq!(r.reduced_arcs, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn reduce_detects_n() {
        let r = n_free_reduce(4, &[(0, 2), (0, 3), (1, 3)]).unwrap();
        assert!(!r.is_n_free);
        assert_eq!(r.n_witness, Some([0, 1, 2, 3]));
    }

    #[test]
    fn reduce_x6_is_n_free() {
        let x6 = Poset::x_family(6).unwrap();
        let r = n_free_reduce(6, x6.covers()).unwrap();
        assert!(r.is_n_free);
        assert_eq!(r.reduced_arcs, x6.covers());
    }

    #[test]
    fn bowtie_sweep() {
        assert!(!is_bowtie_free(4, &BOWTIE));
        assert!(is_bowtie_free(6, Poset::lambda(6).unwrap().covers()));
        assert!(is_bowtie_free(4, &EXAMPLE_ONE));
    }

    #[test]
    fn closure_sweep() {
        assert!(!closure_is_vposet(5, Poset::x_family(5).unwrap().covers()));
        for n in 3..=8 {
            assert!(closure_is_vposet(n, Poset::lambda(n).unwrap().covers()));
        }
        assert!(closure_is_vposet(4, &EXAMPLE_ONE));
    }

    #[test]
    fn pipeline() {
        assert_eq!(classify(4, &BOWTIE).unwrap(), Verdict::Bowtie);
        assert_eq!(
            classify(5, Poset::x_family(5).unwrap().covers()).unwrap(),
            Verdict::ClosureNotVPoset
        );
        for n in 4..=8 {
            assert!(!recognize(n, Poset::x_family(n).unwrap().covers()).unwrap());
        }
        assert!(recognize(4, &EXAMPLE_ONE).unwrap());
        assert!(recognize(0, &[]).unwrap());
        assert!(recognize(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn decompose_cases() {
        let single = Poset::antichain(1);
        assert_eq!(decompose(&single), Some(BuildTree::Element(1)));
        let p = Poset::from_dag(4, &EXAMPLE_ONE).unwrap();
        let tree = decompose(&p).unwrap();
        assert_eq!(tree.build().unwrap(), p);
        assert_eq!(tree.to_string(), "(least 4 (least 3 (union (elem 1) (elem 2))))");
        assert_eq!(decompose(&Poset::x_family(4).unwrap()), None);
    }

    #[test]
    fn decompose_prefers_greatest() {
        let tree = decompose(&Poset::chain(2)).unwrap();
        assert_eq!(tree, BuildTree::greatest(1, BuildTree::Element(2)));
    }
}
