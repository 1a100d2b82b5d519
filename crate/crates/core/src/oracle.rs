//! Brute-force reference implementations, kept deliberately naive and
//! independent of the bitset code paths they check.

use std::collections::BTreeSet;

use crate::gf2::Gf2Matrix;
use crate::poset::Poset;
use crate::pressing::PseudoGraph;

type Dense = Vec<Vec<bool>>;

fn dense(a: &Gf2Matrix) -> Dense {
    let n = a.dim();
    (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect()
}

/// Calls `f` on every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Leibniz-formula determinant over GF(2) of the leading `k × k` block.
pub fn leading_minor(a: &Gf2Matrix, k: usize) -> bool {
    let m = dense(a);
    let mut det = false;
    for_each_permutation(k, |p| {
        det ^= (0..k).all(|i| m[i][p[i]]);
    });
    det
}

pub fn is_lpn(a: &Gf2Matrix) -> bool {
    (1..=a.dim()).all(|k| leading_minor(a, k))
}

pub fn rank(a: &Gf2Matrix) -> usize {
    let mut m = dense(a);
    let n = m.len();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..n {
            if i != r && m[i][c] {
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Presses by direct matrix update: toggles every entry of `N(v) × N(v)`.
fn press(m: &mut Dense, v: usize) -> bool {
    if !m[v][v] {
        return false;
    }
    let nbhd: Vec<usize> = (0..m.len()).filter(|&u| m[v][u]).collect();
    for &x in &nbhd {
        for &y in &nbhd {
            m[x][y] ^= true;
        }
    }
    true
}

pub fn is_successful(g: &PseudoGraph, order: &[usize]) -> bool {
    let mut m = dense(&g.adjacency_matrix());
    order.iter().all(|&v| press(&mut m, v)) && m.iter().flatten().all(|&b| !b)
}

/// `Σ(G)` by trying all `n!` orders of length `rank`. Only orders that use
/// every vertex are produced, so the graph must be full rank.
pub fn sequences(g: &PseudoGraph) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for_each_permutation(g.n(), |p| {
        if is_successful(g, p) {
            out.insert(p.to_vec());
        }
    });
    out
}

/// `LinExt(P)` greatest-first, by filtering all permutations.
pub fn linear_extensions(p: &Poset) -> BTreeSet<Vec<usize>> {
    let n = p.n();
    let mut out = BTreeSet::new();
    for_each_permutation(n, |order| {
        let ok = (0..n).all(|i| (i + 1..n).all(|j| !p.greater(order[j], order[i])));
        if ok {
            out.insert(order.to_vec());
        }
    });
    out
}

/// Every quadruple of distinct elements, in lexicographic order.
fn quadruples(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| {
            (0..n).flat_map(move |c| (0..n).map(move |d| [a, b, c, d]))
        })
    })
    .filter(|q| (0..4).all(|i| (i + 1..4).all(|j| q[i] != q[j])))
}

/// Induced N: `a ≻ c`, `a ≻ d`, `b ≻ d`, and no other comparabilities.
pub fn has_induced_n(p: &Poset) -> bool {
    quadruples(p.n()).any(|[a, b, c, d]| {
        p.greater(a, c)
            && p.greater(a, d)
            && p.greater(b, d)
            && !p.comparable(a, b)
            && !p.comparable(b, c)
            && !p.comparable(c, d)
    })
}

/// Induced bowtie: `a, b ≻ c, d` with `a ∥ b` and `c ∥ d`.
pub fn has_induced_bowtie(p: &Poset) -> bool {
    quadruples(p.n()).any(|[a, b, c, d]| {
        p.greater(a, c)
            && p.greater(a, d)
            && p.greater(b, c)
            && p.greater(b, d)
            && !p.comparable(a, b)
            && !p.comparable(c, d)
    })
}

/// Size of a largest antichain, by checking every subset.
pub fn width(p: &Poset) -> usize {
    let n = p.n();
    (0u32..1 << n)
        .filter(|&mask| {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            set.iter().all(|&a| set.iter().all(|&b| !p.greater(a, b)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Elements in a longest chain, by checking every subset.
pub fn height(p: &Poset) -> usize {
    let n = p.n();
    (0u32..1 << n)
        .filter(|&mask| {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            set.iter()
                .all(|&a| set.iter().all(|&b| a == b || p.comparable(a, b)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Every poset on `n` elements up to relabelling, each given by a natural
/// labelling: a transitive relation with `a ≻ b` only for `a < b`.
pub fn all_natural_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&q| q == (a, b)).expect("a < b");
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let has = |a: usize, b: usize| mask >> index(a, b) & 1 == 1;
        let transitive = pairs.iter().all(|&(a, b)| {
            !has(a, b) || (b + 1..n).all(|c| !has(b, c) || has(a, c))
        });
        if transitive {
            let arcs: Vec<_> = pairs.iter().copied().filter(|&(a, b)| has(a, b)).collect();
            out.push(Poset::from_dag(n, &arcs).expect("natural arcs are acyclic"));
        }
    }
    out
}

/// Every symmetric `n × n` matrix over GF(2).
pub fn all_symmetric(n: usize) -> Vec<Gf2Matrix> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    (0u64..1 << cells.len())
        .map(|mask| {
            let mut m = Gf2Matrix::zeros(n);
            for (bit, &(i, j)) in cells.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    m.set(i, j, true);
                    m.set(j, i, true);
                }
            }
            m
        })
        .collect()
}

/// Every pseudo-graph on `n` vertices whose adjacency matrix is full rank.
pub fn all_full_rank_graphs(n: usize) -> Vec<PseudoGraph> {
    all_symmetric(n)
        .into_iter()
        .filter(|a| rank(a) == n)
        .map(|a| PseudoGraph::from_adjacency(&a).expect("symmetric"))
        .collect()
}
