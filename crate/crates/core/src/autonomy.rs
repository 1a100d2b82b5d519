//! Instructional posets, autonomy tests and generator construction.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::poset::{BuildTree, Poset};
use crate::pressing::{PressingSequence, PseudoGraph};
use crate::recognize;

/// `𝒫(G, s)`: the closure of the DAG read off the instructional root.
/// Element `v` of the poset is vertex `v` of `g` and carries its label.
pub fn instructional_poset(g: &PseudoGraph, s: &PressingSequence) -> Result<Poset> {
    let root = g.instructional_root(s)?;
    poset_from_root(g, s.as_slice(), &root)
}

fn poset_from_root(g: &PseudoGraph, order: &[usize], root: &Gf2Matrix) -> Result<Poset> {
    let mut arcs = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        for j in root.row(i).ones().filter(|&j| j > i) {
            arcs.push((a, order[j]));
        }
    }
    Poset::from_dag(g.n(), &arcs)?.with_labels(g.labels().to_vec())
}

/// `𝔖(G)` together with the partition of `Σ(G)` it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstructionalFamily {
    pub posets: Vec<Poset>,
    /// `classes[i]` holds the sequences whose instructional poset is
    /// `posets[i]`, lexicographically sorted.
    pub classes: Vec<Vec<PressingSequence>>,
}

impl InstructionalFamily {
    pub fn len(&self) -> usize {
        self.posets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.posets.is_empty()
    }

    pub fn sequence_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }
}

/// Groups `Σ(G)` by instructional poset and checks that each class is
/// exactly the set of linear extensions of its poset.
pub fn instructional_family(g: &PseudoGraph) -> Result<InstructionalFamily> {
    g.require_full_rank()?;
    let mut groups: BTreeMap<Vec<FixedBitSet>, (Poset, Vec<PressingSequence>)> = BTreeMap::new();
    let mut failure = None;
    let _ = g.for_each_sequence(|s| {
        let seq = PressingSequence::new(s.to_vec());
        match instructional_poset(g, &seq) {
            Ok(p) => {
                groups
                    .entry(p.closure_rows().to_vec())
                    .or_insert_with(|| (p, Vec::new()))
                    .1
                    .push(seq);
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let (posets, classes): (Vec<_>, Vec<_>) = groups.into_values().unzip();
    for (p, class) in posets.iter().zip(&classes) {
        let extensions = p.linear_extensions();
        let same = extensions.len() == class.len()
            && extensions.iter().zip(class).all(|(e, s)| e == s.as_slice());
        if !same {
            return Err(Error::PartitionViolation(format!(
                "class of size {} differs from the {} linear extensions of its poset",
                class.len(),
                extensions.len()
            )));
        }
    }
    Ok(InstructionalFamily { posets, classes })
}

/// True iff every successful sequence yields the same instructional poset.
pub fn is_autonomous_graph(g: &PseudoGraph) -> Result<bool> {
    Ok(instructional_family(g)?.len() == 1)
}

/// Matrix order used for generators: the first greatest-first linear
/// extension of `p`.
pub fn generator_order(p: &Poset) -> Vec<usize> {
    p.first_linear_extension()
}

/// Related pairs that are not covers. Each doubles the number of generators.
pub fn free_pair_count(p: &Poset) -> usize {
    p.relations().len() - p.covers().len()
}

/// Visits every generator of `p` in the canonical matrix order: all unit
/// upper-triangular `U` containing every cover of `p`, any subset of the
/// remaining related pairs, and nothing else, giving `A = UᵀU`.
pub fn for_each_generator<B>(
    p: &Poset,
    mut visit: impl FnMut(PseudoGraph) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let order = generator_order(p);
    let mut pos = vec![0; p.n()];
    for (i, &a) in order.iter().enumerate() {
        pos[a] = i;
    }
    let mut base = Gf2Matrix::identity(p.n());
    for &(a, b) in p.covers() {
        base.set(pos[a], pos[b], true);
    }
    let covers: std::collections::HashSet<_> = p.covers().iter().copied().collect();
    let free: Vec<(usize, usize)> = p
        .relations()
        .into_iter()
        .filter(|r| !covers.contains(r))
        .map(|(a, b)| (pos[a], pos[b]))
        .collect();
    let labels: Vec<usize> = order.iter().map(|&a| p.label(a)).collect();
    assert!(free.len() < 64, "too many free pairs to enumerate");
    for mask in 0..1u64 << free.len() {
        let mut u = base.clone();
        for (bit, &(i, j)) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                u.set(i, j, true);
            }
        }
        let a = u.transpose().multiply(&u).expect("same dimension");
        let g = PseudoGraph::from_adjacency(&a)
            .and_then(|g| g.with_labels(labels.clone()))
            .expect("UᵀU is symmetric and labels are distinct");
        visit(g)?;
    }
    ControlFlow::Continue(())
}

/// All generators of `p`; there are `2^free_pair_count(p)` of them.
pub fn enumerate_generators(p: &Poset) -> Vec<PseudoGraph> {
    let mut out = Vec::new();
    let _ = for_each_generator::<()>(p, |g| {
        debug_assert!(
            instructional_poset(&g, &PressingSequence::natural(g.n())).as_ref() == Ok(p),
            "generator does not reproduce its poset"
        );
        out.push(g);
        ControlFlow::Continue(())
    });
    out
}

/// Exhaustive check: some generator of `p` has `Σ(G) = LinExt(P)`.
pub fn is_autonomous_poset_oracle(p: &Poset) -> bool {
    let order = generator_order(p);
    // `p` re-indexed by matrix position, matching generator vertex ids.
    let mut arcs = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        for (j, &b) in order.iter().enumerate() {
            if p.greater(a, b) {
                arcs.push((i, j));
            }
        }
    }
    let q = Poset::from_dag(p.n(), &arcs).expect("order of a poset is acyclic");
    let extensions = q.count_linear_extensions();
    for_each_generator(p, |g| {
        if sequences_within(&g, &q, extensions) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_break()
}

/// True iff `Σ(g) ⊆ LinExt(q)` and `|Σ(g)| = expected`. The walk stops as
/// soon as a pressed vertex still has an unpressed element above it.
fn sequences_within(g: &PseudoGraph, q: &Poset, expected: u64) -> bool {
    fn walk(g: &PseudoGraph, q: &Poset, placed: &mut FixedBitSet, count: &mut u64) -> bool {
        if g.is_cleared() {
            *count += 1;
            return true;
        }
        for v in g.loops().ones() {
            let mut next = g.clone();
            next.press_in_place(v).expect("looped vertex");
            if !next.is_pressable() {
                continue;
            }
            if !q.above(v).is_subset(placed) {
                return false;
            }
            placed.insert(v);
            let ok = walk(&next, q, placed, count);
            placed.remove(v);
            if !ok {
                return false;
            }
        }
        true
    }
    let mut placed = FixedBitSet::with_capacity(g.n());
    let mut count = 0;
    walk(g, q, &mut placed, &mut count) && count == expected
}

/// Linear-time path: a poset is autonomous iff it is a V-poset.
pub fn is_autonomous_poset(p: &Poset) -> bool {
    recognize::recognize_poset(p)
}

/// Builds a graph generating only `tree.build()`: a singleton is a looped
/// vertex, unions are disjoint unions, a greatest element is left-appended
/// and a least element right-appended. Vertex order is
/// [`BuildTree::element_order`].
pub fn synthesize_generator(tree: &BuildTree) -> Result<PseudoGraph> {
    tree.validate()?;
    synthesize(tree)
}

fn synthesize(tree: &BuildTree) -> Result<PseudoGraph> {
    match tree {
        BuildTree::Element(x) => PseudoGraph::from_edges(1, &[], &[0])?.with_labels(vec![*x]),
        BuildTree::Union(children) => {
            let mut iter = children.iter();
            let first = synthesize(iter.next().expect("validated non-empty"))?;
            iter.try_fold(first, |acc, c| acc.disjoint_union(&synthesize(c)?))
        }
        BuildTree::Greatest(x, child) => synthesize(child)?.left_append(*x),
        BuildTree::Least(x, child) => synthesize(child)?.right_append(*x),
    }
}

/// Column-weight criterion for `|Σ(G)| = 1`, applied to the root of the
/// natural order. False when the natural order does not press successfully.
pub fn is_uniquely_pressable(g: &PseudoGraph) -> Result<bool> {
    g.require_full_rank()?;
    let n = g.n();
    if n == 0 {
        return Ok(true);
    }
    let Ok(root) = g.instructional_root(&PressingSequence::natural(n)) else {
        return Ok(false);
    };
    Ok(column_conditions_hold(&root))
}

/// The four conditions on column weights `w_1..w_n` (1-based below):
/// column `j` is ones exactly on rows `j-w_j+1..=j`; `1 = w_1 ≤ … ≤ w_n`;
/// `w_i > 2` implies `w_{i+2} > w_i`; an odd `w_i` with `i > 1` forces
/// `w_j = j` for every `j ≥ i`.
pub fn column_conditions_hold(u: &Gf2Matrix) -> bool {
    let n = u.dim();
    let w: Vec<usize> = (0..n).map(|j| u.column_weight(j)).collect();
    let contiguous = (0..n).all(|j| {
        w[j] >= 1 && w[j] <= j + 1 && (0..n).all(|i| u.get(i, j) == (i + w[j] > j && i <= j))
    });
    let monotone = w.first() == Some(&1) && w.windows(2).all(|p| p[0] <= p[1]);
    let spread = (0..n.saturating_sub(2)).all(|i| w[i] <= 2 || w[i + 2] > w[i]);
    let odd_tail = (1..n).all(|i| w[i] % 2 == 0 || (i..n).all(|j| w[j] == j + 1));
    contiguous && monotone && spread && odd_tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pressing::lambda_generator;

    fn example_one() -> Poset {
        Poset::from_dag(4, &[(0, 2), (1, 2), (2, 3)]).unwrap()
    }

    fn bowtie_graph() -> PseudoGraph {
        let a = Gf2Matrix::from_rows(&[[1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1]]).unwrap();
        PseudoGraph::from_adjacency(&a).unwrap()
    }

    fn single() -> PseudoGraph {
        PseudoGraph::from_edges(1, &[], &[0]).unwrap()
    }

    #[test]
    fn instructional_posets() {
        let p = instructional_poset(&single(), &PressingSequence::natural(1)).unwrap();
        assert_eq!(p, Poset::antichain(1));
        let g = lambda_generator(3).unwrap();
        let p = instructional_poset(&g, &PressingSequence::natural(3)).unwrap();
        assert_eq!(p, Poset::lambda(3).unwrap());
        let p = instructional_poset(&bowtie_graph(), &PressingSequence::natural(4)).unwrap();
        assert_eq!(p, Poset::x_family(4).unwrap());
        assert_eq!(
            instructional_poset(&g, &PressingSequence::new(vec![1, 0, 2])),
            Err(Error::NotSuccessful)
        );
    }

    #[test]
    fn families() {
        let fam = instructional_family(&lambda_generator(4).unwrap()).unwrap();
        assert_eq!(fam.posets, vec![Poset::lambda(4).unwrap()]);
        assert_eq!(fam.classes[0].len(), 2);
        let fam = instructional_family(&bowtie_graph()).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.sequence_count() as u64, bowtie_graph().count_sequences());
        let deficient = PseudoGraph::from_edges(2, &[(0, 1)], &[0, 1]).unwrap();
        assert!(matches!(
            instructional_family(&deficient),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn autonomous_graphs() {
        assert!(is_autonomous_graph(&single()).unwrap());
        for n in 3..=7 {
            assert!(is_autonomous_graph(&lambda_generator(n).unwrap()).unwrap());
        }
        let bowtie = bowtie_graph();
        assert!(bowtie.is_successful(&PressingSequence::new(vec![3, 2, 1, 0])));
        assert!(!is_autonomous_graph(&bowtie).unwrap());
    }

    #[test]
    fn generator_counts() {
        let p = example_one();
        let gens = enumerate_generators(&p);
        assert_eq!(gens.len(), 4);
        for g in &gens {
            assert_eq!(instructional_poset(g, &PressingSequence::natural(4)).unwrap(), p);
        }
        let lambda = enumerate_generators(&Poset::lambda(3).unwrap());
        assert_eq!(lambda, vec![lambda_generator(3).unwrap()]);
        assert_eq!(enumerate_generators(&Poset::chain(3)).len(), 2);
    }

    #[test]
    fn poset_autonomy_both_paths() {
        for n in 3..=6 {
            let p = Poset::lambda(n).unwrap();
            assert!(is_autonomous_poset_oracle(&p));
            assert!(is_autonomous_poset(&p));
        }
        for n in 4..=6 {
            let p = Poset::x_family(n).unwrap();
            assert!(!is_autonomous_poset_oracle(&p));
            assert!(!is_autonomous_poset(&p));
        }
        assert!(is_autonomous_poset_oracle(&Poset::antichain(0)));
    }

    #[test]
    fn synthesis() {
        let g = synthesize_generator(&BuildTree::Element(1)).unwrap();
        assert_eq!(g, single());
        let tree: BuildTree = "(least 4 (least 3 (union (elem 1) (elem 2))))".parse().unwrap();
        let g = synthesize_generator(&tree).unwrap();
        assert!(is_autonomous_graph(&g).unwrap());
        assert!(enumerate_generators(&example_one()).contains(&g));
        let lambda5: BuildTree =
            "(greatest 1 (greatest 2 (greatest 3 (union (elem 4) (elem 5)))))".parse().unwrap();
        let g = synthesize_generator(&lambda5).unwrap();
        assert!(g.is_isomorphic(&lambda_generator(5).unwrap()));
        assert!(synthesize_generator(&BuildTree::union(vec![])).is_err());
    }

    #[test]
    fn unique_pressability() {
        assert!(is_uniquely_pressable(&single()).unwrap());
        assert!(!is_uniquely_pressable(&lambda_generator(4).unwrap()).unwrap());
        let edge = PseudoGraph::from_edges(2, &[(0, 1)], &[0]).unwrap();
        assert!(is_uniquely_pressable(&edge).unwrap());
        assert_eq!(edge.count_sequences(), 1);
    }
}
