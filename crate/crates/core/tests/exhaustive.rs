//! Exhaustive checks over every small instance.

use std::collections::BTreeMap;

use presslab::autonomy::{instructional_family, is_uniquely_pressable};
use presslab::oracle;
use presslab::recognize::{classify, decompose, recognize, Verdict};
use presslab::{Gf2Matrix, Permutation, PressingSequence, PseudoGraph};

#[test]
fn cholesky_root_is_the_only_factor() {
    for n in 1..=4 {
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let mut factors: BTreeMap<Gf2Matrix, Vec<Gf2Matrix>> = BTreeMap::new();
        for mask in 0u32..1 << cells.len() {
            let mut v = Gf2Matrix::zeros(n);
            for (bit, &(i, j)) in cells.iter().enumerate() {
                v.set(i, j, mask >> bit & 1 == 1);
            }
            let a = v.transpose().multiply(&v).unwrap();
            factors.entry(a).or_default().push(v);
        }
        for a in oracle::all_symmetric(n) {
            if !a.is_full_rank() {
                continue;
            }
            let found = factors.get(&a).cloned().unwrap_or_default();
            match a.cholesky_root().unwrap() {
                Some(u) => assert_eq!(found, vec![u], "matrix\n{a}"),
                None => assert!(found.is_empty(), "matrix\n{a}"),
            }
        }
    }
}

#[test]
fn lpn_cholesky_and_pressing_agree_on_every_order() {
    for n in 1..=5 {
        for a in oracle::all_symmetric(n) {
            if !a.is_full_rank() {
                continue;
            }
            let g = PseudoGraph::from_adjacency(&a).unwrap();
            oracle::for_each_permutation(n, |s| {
                let c = a
                    .conjugate_by_permutation(&Permutation::new(s.to_vec()).unwrap())
                    .unwrap();
                let pressed = g.is_successful(&PressingSequence::new(s.to_vec()));
                assert_eq!(pressed, c.is_lpn(), "order {s:?} on\n{a}");
                assert_eq!(pressed, c.cholesky_root().unwrap().is_some());
            });
        }
    }
}

#[test]
fn lpn_matches_determinants() {
    for n in 1..=4 {
        for a in oracle::all_symmetric(n) {
            assert_eq!(a.is_lpn(), oracle::is_lpn(&a), "matrix\n{a}");
            assert_eq!(a.rank(), oracle::rank(&a));
        }
    }
}

#[test]
fn recognition_matches_patterns_up_to_six() {
    for n in 1..=6 {
        for p in oracle::all_natural_posets(n) {
            let brute = !oracle::has_induced_n(&p) && !oracle::has_induced_bowtie(&p);
            assert_eq!(recognize(n, p.covers()).unwrap(), brute, "{:?}", p.covers());
            assert_eq!(recognize(n, &p.relations()).unwrap(), brute);
            let verdict = classify(n, p.covers()).unwrap();
            assert_eq!(verdict == Verdict::InducedN, oracle::has_induced_n(&p));
            match decompose(&p) {
                Some(tree) => {
                    assert!(brute);
                    assert_eq!(tree.build().unwrap(), p);
                }
                None => assert!(!brute),
            }
        }
    }
}

#[test]
fn some_four_vertex_graph_has_two_posets() {
    let mut found = 0;
    for g in oracle::all_full_rank_graphs(4) {
        let family = instructional_family(&g).unwrap();
        if family.len() == 2 {
            found += 1;
            let total: usize = family.classes.iter().map(Vec::len).sum();
            assert_eq!(total, oracle::sequences(&g).len());
        }
    }
    assert!(found > 0);
}

#[test]
fn unique_pressability_small() {
    for n in 1..=4 {
        for g in oracle::all_full_rank_graphs(n) {
            let natural: Vec<usize> = (0..n).collect();
            if !oracle::is_successful(&g, &natural) {
                assert!(!is_uniquely_pressable(&g).unwrap());
                continue;
            }
            let unique = oracle::sequences(&g).len() == 1;
            assert_eq!(is_uniquely_pressable(&g).unwrap(), unique, "graph\n{g}");
        }
    }
}
