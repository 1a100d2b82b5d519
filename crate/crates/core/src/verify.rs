//! The ten acceptance checks, runnable from the CLI and the test suite.
//!
//! Every check compares library results with an independent brute-force
//! computation from [`crate::oracle`] or with published constants.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::autonomy::{
    enumerate_generators, instructional_family, instructional_poset, is_autonomous_graph,
    is_autonomous_poset_oracle, is_uniquely_pressable,
};
use crate::gf2::Gf2Matrix;
use crate::oracle;
use crate::poset::Poset;
use crate::pressing::{lambda_generator, PressingSequence, PseudoGraph};
use crate::random;
use crate::recognize::{self, closure_is_vposet_traced, is_bowtie_free_traced, n_free_reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Caps the size of exhaustive sweeps; `None` uses the full sizes.
    pub max_n: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            max_n: None,
        }
    }
}

impl VerifyConfig {
    fn cap(&self, n: usize) -> usize {
        self.max_n.map_or(n, |m| m.min(n))
    }

    fn rng(&self, criterion: u64) -> rand_chacha::ChaCha8Rng {
        random::rng(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ criterion)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    /// Every individual check agreed.
    pub correct: bool,
    pub cases: usize,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

impl CriterionReport {
    pub fn within_limit(&self) -> bool {
        self.limit_ms.is_none_or(|l| self.elapsed_ms <= l)
    }

    pub fn passed(&self) -> bool {
        self.correct && self.within_limit()
    }

    pub fn summary_line(&self) -> String {
        self.line(true)
    }

    /// Like [`summary_line`](Self::summary_line) without wall-clock figures.
    pub fn summary_line_untimed(&self) -> String {
        self.line(false)
    }

    fn line(&self, timing: bool) -> String {
        let timing = match (timing, self.limit_ms) {
            (false, _) => String::new(),
            (true, Some(l)) => format!(", {} ms / limit {l} ms", self.elapsed_ms),
            (true, None) => format!(", {} ms", self.elapsed_ms),
        };
        format!(
            "[{}] criterion {:>2} {}: {} cases{timing}; {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.cases,
            self.detail
        )
    }
}

/// Running tally of cases and the first few failures.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    fn detail(&self, success: &str) -> String {
        if self.failure_count == 0 {
            success.to_string()
        } else {
            format!("{} failures, e.g. {}", self.failure_count, self.failures.join("; "))
        }
    }
}

pub const CRITERIA: [(&str, Option<u64>); 10] = [
    ("four generators", Some(1)),
    ("bowtie counterexample", Some(1)),
    ("lambda family", Some(30)),
    ("X family rejection", Some(120)),
    ("main theorem sweep", Some(600)),
    ("partition into linear-extension classes", Some(300)),
    ("Cholesky equivalences", Some(60)),
    ("edge-count formulas", Some(60)),
    ("unique pressability", Some(120)),
    ("traversal bound", None),
];

pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionReport> {
    (1..=CRITERIA.len()).map(|id| run(id, cfg)).collect()
}

/// Runs criterion `id` (1-based).
pub fn run(id: usize, cfg: &VerifyConfig) -> CriterionReport {
    let (name, limit) = CRITERIA[id - 1];
    let start = Instant::now();
    let (tally, success) = match id {
        1 => four_generators(),
        2 => bowtie_counterexample(),
        3 => lambda_family(),
        4 => x_family(),
        5 => main_sweep(cfg),
        6 => partition(cfg),
        7 => cholesky(cfg),
        8 => edge_formulas(cfg),
        9 => unique_pressability(cfg),
        10 => traversal_bound(cfg),
        _ => panic!("no criterion {id}"),
    };
    let elapsed = start.elapsed();
    CriterionReport {
        id,
        name,
        correct: tally.failure_count == 0,
        cases: tally.cases,
        detail: tally.detail(success),
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|s| Duration::from_secs(s).as_millis()),
    }
}

fn example_one() -> Poset {
    Poset::from_dag(4, &[(0, 2), (1, 2), (2, 3)]).expect("acyclic")
}

fn bowtie_graph() -> PseudoGraph {
    let a = Gf2Matrix::from_rows(&[[1, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1]])
        .expect("square");
    PseudoGraph::from_adjacency(&a).expect("symmetric")
}

fn four_generators() -> (Tally, &'static str) {
    let mut t = Tally::default();
    let p = example_one();
    let gens = enumerate_generators(&p);
    t.check(gens.len() == 4, || format!("{} generators", gens.len()));
    let mut distinct = gens.clone();
    distinct.sort_by_key(|g| g.adjacency_matrix());
    distinct.dedup();
    t.check(distinct.len() == gens.len(), || "duplicate generators".into());
    for g in &gens {
        let q = instructional_poset(g, &PressingSequence::natural(g.n()));
        t.check(q.as_ref() == Ok(&p), || format!("generator\n{g}has poset {q:?}"));
    }
    (t, "4 distinct generators, each reproducing the poset")
}

fn bowtie_counterexample() -> (Tally, &'static str) {
    let mut t = Tally::default();
    let g = bowtie_graph();
    let reversed = [3, 2, 1, 0];
    t.check(g.is_successful(&PressingSequence::new(reversed.to_vec())), || {
        "(4,3,2,1) not successful".into()
    });
    t.check(oracle::is_successful(&g, &reversed), || "oracle rejects (4,3,2,1)".into());
    t.check(is_autonomous_graph(&g) == Ok(false), || "graph reported autonomous".into());
    (t, "(4,3,2,1) presses successfully and the graph is not autonomous")
}

fn lambda_family() -> (Tally, &'static str) {
    let mut t = Tally::default();
    for n in 3..=6 {
        let target = lambda_generator(n).expect("n >= 3");
        let autonomous: Vec<PseudoGraph> = enumerate_generators(&Poset::lambda(n).expect("n >= 3"))
            .into_iter()
            .filter(|g| is_autonomous_graph(g) == Ok(true))
            .collect();
        t.check(
            autonomous.len() == 1 && autonomous[0].is_isomorphic(&target),
            || format!("n={n}: {} autonomous generators", autonomous.len()),
        );
        let count = target.count_sequences();
        t.check(count == 2 && oracle::sequences(&target).len() == 2, || {
            format!("n={n}: {count} sequences")
        });
    }
    (t, "one autonomous generator, isomorphic to the path-based graph, with 2 sequences")
}

fn x_family() -> (Tally, &'static str) {
    let mut t = Tally::default();
    for n in 4..=7 {
        let x = Poset::x_family(n).expect("n >= 4");
        t.check(!recognize::recognize_poset(&x), || format!("X({n}) recognized"));
        if n <= 6 {
            let autonomous = enumerate_generators(&x)
                .iter()
                .filter(|g| is_autonomous_graph(g) == Ok(true))
                .count();
            t.check(autonomous == 0, || format!("X({n}) has {autonomous} autonomous generators"));
        }
    }
    (t, "rejected by recognition; no autonomous generator for n <= 6")
}

fn poset_agreement(t: &mut Tally, p: &Poset) {
    let oracle_path = is_autonomous_poset_oracle(p);
    let fast = recognize::recognize_poset(p);
    let brute = !oracle::has_induced_n(p) && !oracle::has_induced_bowtie(p);
    let tree_ok = match recognize::decompose(p) {
        Some(tree) => fast && tree.build().as_ref() == Ok(p),
        None => !fast,
    };
    t.check(oracle_path == fast && fast == brute && tree_ok, || {
        format!("poset {:?}: oracle={oracle_path} fast={fast} brute={brute}", p.relations())
    });
}

fn main_sweep(cfg: &VerifyConfig) -> (Tally, &'static str) {
    let mut t = Tally::default();
    for n in 1..=cfg.cap(5) {
        for p in oracle::all_natural_posets(n) {
            poset_agreement(&mut t, &p);
        }
    }
    let mut rng = cfg.rng(5);
    for _ in 0..500 {
        let n = rng.random_range(6..=7);
        let density = rng.random_range(0.15..0.6);
        poset_agreement(&mut t, &random::poset(&mut rng, n, density));
    }
    (t, "oracle, recognition and pattern scan agree")
}

fn partition_check(t: &mut Tally, g: &PseudoGraph) {
    let family = match instructional_family(g) {
        Ok(f) => f,
        Err(e) => return t.check(false, || format!("graph\n{g}: {e}")),
    };
    let expected = oracle::sequences(g);
    let mut seen = std::collections::BTreeSet::new();
    let mut ok = true;
    for (p, class) in family.posets.iter().zip(&family.classes) {
        let extensions = oracle::linear_extensions(p);
        let members: std::collections::BTreeSet<Vec<usize>> =
            class.iter().map(|s| s.as_slice().to_vec()).collect();
        ok &= members == extensions;
        for s in members {
            ok &= seen.insert(s);
        }
    }
    ok &= seen == expected;
    t.check(ok, || format!("graph\n{g}violates the partition"));
}

fn partition(cfg: &VerifyConfig) -> (Tally, &'static str) {
    let mut t = Tally::default();
    for n in 1..=cfg.cap(4) {
        for g in oracle::all_full_rank_graphs(n) {
            partition_check(&mut t, &g);
        }
    }
    let mut rng = cfg.rng(6);
    for _ in 0..1000 {
        let n = rng.random_range(5..=7);
        partition_check(&mut t, &random::full_rank_graph(&mut rng, n));
    }
    (t, "classes are disjoint linear-extension sets covering every sequence")
}

fn cholesky(cfg: &VerifyConfig) -> (Tally, &'static str) {
    let mut t = Tally::default();
    for n in 1..=cfg.cap(5) {
        for a in oracle::all_symmetric(n) {
            if oracle::rank(&a) != n {
                continue;
            }
            let elim = a.eliminate_without_swaps().is_ok();
            let lpn = a.is_lpn();
            let brute_lpn = oracle::is_lpn(&a);
            let root = a.cholesky_root().expect("symmetric");
            let g = PseudoGraph::from_adjacency(&a).expect("symmetric");
            let presses = oracle::is_successful(&g, &(0..n).collect::<Vec<_>>());
            let root_ok = root.as_ref().is_none_or(|u| {
                u.is_upper_triangular()
                    && (0..n).all(|i| u.get(i, i))
                    && u.transpose().multiply(u).as_ref() == Ok(&a)
            });
            t.check(
                elim == lpn && lpn == brute_lpn && lpn == root.is_some() && lpn == presses && root_ok,
                || format!("matrix\n{a}elim={elim} lpn={lpn} brute={brute_lpn}"),
            );
        }
    }
    (t, "elimination, LPN, Cholesky and natural-order pressing agree; UᵀU = A")
}

fn edge_formulas(cfg: &VerifyConfig) -> (Tally, &'static str) {
    let mut t = Tally::default();
    let mut rng = cfg.rng(8);
    for _ in 0..1000 {
        let n = rng.random_range(1..=10);
        let tree = random::build_tree(&mut rng, n);
        let p = match tree.build() {
            Ok(p) => p,
            Err(e) => {
                t.check(false, || format!("{tree}: {e}"));
                continue;
            }
        };
        let s = p.stats();
        let heights: usize = p
            .components()
            .iter()
            .map(|c| oracle::height(&p.induced(c)))
            .sum();
        t.check(s.width == oracle::width(&p) && s.height_sum == heights, || {
            format!("{tree}: stats {s:?} disagree with brute force")
        });
        t.check(s.height_identity_holds(), || {
            format!("{tree}: e = 2n+c-M-m-h fails for {s:?}")
        });
        t.check(s.edge_bound_holds(), || format!("{tree}: e <= 2n-2 fails for {s:?}"));
        t.check(s.width_identity_holds(), || {
            format!("{tree}: e = n+w-M-m fails for {s:?}")
        });
    }
    (t, "both edge-count identities and the upper bound hold")
}

fn unique_pressability(cfg: &VerifyConfig) -> (Tally, &'static str) {
    let mut t = Tally::default();
    for n in 1..=cfg.cap(5) {
        for g in oracle::all_full_rank_graphs(n) {
            if !oracle::is_successful(&g, &(0..n).collect::<Vec<_>>()) {
                continue;
            }
            let criterion = is_uniquely_pressable(&g).expect("full rank");
            let count = oracle::sequences(&g).len();
            t.check(criterion == (count == 1), || {
                format!("graph\n{g}criterion={criterion} but {count} sequences")
            });
        }
    }
    (t, "column conditions hold exactly for graphs with one sequence")
}

fn traversal_check(t: &mut Tally, p: &Poset) {
    let r = n_free_reduce(p.n(), p.covers()).expect("acyclic");
    if !r.is_n_free {
        return;
    }
    let (bowtie_free, visits) = is_bowtie_free_traced(p.n(), &r.reduced_arcs);
    t.check(visits.max() <= 2, || {
        format!("bowtie sweep touched an arc {} times on {:?}", visits.max(), r.reduced_arcs)
    });
    if bowtie_free {
        let (_, visits) = closure_is_vposet_traced(p.n(), &r.reduced_arcs);
        t.check(visits.max() <= 2, || {
            format!("closure sweep touched an arc {} times on {:?}", visits.max(), r.reduced_arcs)
        });
    }
}

fn traversal_bound(cfg: &VerifyConfig) -> (Tally, &'static str) {
    let mut t = Tally::default();
    for n in 1..=cfg.cap(6) {
        for p in oracle::all_natural_posets(n) {
            traversal_check(&mut t, &p);
        }
    }
    for n in 3..=12 {
        traversal_check(&mut t, &Poset::lambda(n).expect("n >= 3"));
        if n >= 4 {
            traversal_check(&mut t, &Poset::x_family(n).expect("n >= 4"));
        }
    }
    let mut rng = cfg.rng(10);
    for _ in 0..300 {
        let n = rng.random_range(7..=16);
        traversal_check(&mut t, &random::build_tree(&mut rng, n).build().expect("valid tree"));
        let density = rng.random_range(0.05..0.5);
        traversal_check(&mut t, &random::poset(&mut rng, n, density));
    }
    (t, "no arc touched more than twice")
}
