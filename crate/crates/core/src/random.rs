//! Seeded random instances for sweeps and sampling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2::Gf2Matrix;
use crate::poset::{BuildTree, Poset};
use crate::pressing::PseudoGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random tree on `n >= 1` elements with labels `1..=n` in random order.
pub fn build_tree(rng: &mut impl Rng, n: usize) -> BuildTree {
    assert!(n >= 1, "a build tree needs at least one element");
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    tree_from(rng, &labels)
}

fn tree_from(rng: &mut impl Rng, labels: &[usize]) -> BuildTree {
    if let [x] = labels {
        return BuildTree::Element(*x);
    }
    match rng.random_range(0..3) {
        0 => {
            let split = rng.random_range(1..labels.len());
            let left = tree_from(rng, &labels[..split]);
            let right = tree_from(rng, &labels[split..]);
            // Flatten nested unions so the tree stays canonical-looking.
            let mut children = Vec::new();
            for t in [left, right] {
                match t {
                    BuildTree::Union(inner) => children.extend(inner),
                    other => children.push(other),
                }
            }
            BuildTree::Union(children)
        }
        1 => BuildTree::greatest(labels[0], tree_from(rng, &labels[1..])),
        _ => BuildTree::least(labels[0], tree_from(rng, &labels[1..])),
    }
}

/// A random poset: each pair of a hidden random order is related with
/// probability `density`, then closed transitively. Element ids are
/// shuffled so the id order is not a linear extension in general.
pub fn poset(rng: &mut impl Rng, n: usize, density: f64) -> Poset {
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                arcs.push((ids[i], ids[j]));
            }
        }
    }
    Poset::from_dag(n, &arcs).expect("arcs follow a total order")
}

/// A uniformly random symmetric matrix, as a pseudo-graph.
pub fn graph(rng: &mut impl Rng, n: usize) -> PseudoGraph {
    let mut a = Gf2Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            if rng.random_bool(0.5) {
                a.set(i, j, true);
                a.set(j, i, true);
            }
        }
    }
    PseudoGraph::from_adjacency(&a).expect("symmetric")
}

/// Rejection-samples [`graph`] until the adjacency matrix is invertible.
pub fn full_rank_graph(rng: &mut impl Rng, n: usize) -> PseudoGraph {
    loop {
        let g = graph(rng, n);
        if g.is_full_rank() {
            return g;
        }
    }
}
