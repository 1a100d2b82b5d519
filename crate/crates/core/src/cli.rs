//! Command-line front end. Vertex and element names in all text are labels,
//! which default to the 1-based positions.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::autonomy;
use crate::error::Error;
use crate::gf2::Gf2Matrix;
use crate::poset::{BuildTree, Poset};
use crate::pressing::{PressingSequence, PseudoGraph};
use crate::random;
use crate::recognize::{self, Verdict};
use crate::text::DagInput;
use crate::verify::{self, VerifyConfig};

/// Largest number of free pairs `generators` will enumerate (2^20 graphs).
const MAX_FREE_PAIRS: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "presslab", version, about = "Graph pressing, instructional posets and V-poset recognition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Press vertices in order and print the resulting graph.
    Press {
        file: PathBuf,
        /// Vertex labels to press, in order.
        vertices: Vec<usize>,
    },
    /// List the successful pressing sequences, greatest-first, sorted.
    Sequences {
        file: PathBuf,
        /// Print only the number of sequences.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the instructional posets with the size of each class.
    Posets {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the closure of a DAG is a V-poset.
    Recognize {
        file: PathBuf,
        /// Print a construction tree or the forbidden pattern found.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// List every generator of a poset.
    Generators {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Test autonomy of a graph (`.osp`) or a poset (any other file).
    Autonomy {
        file: PathBuf,
        /// For posets, run the exhaustive generator search instead of recognition.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build an autonomous generator from a construction tree.
    Synthesize { file: PathBuf },
    /// Run the acceptance checks.
    Verify {
        /// Cap the size of exhaustive sweeps.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, env = "PRESSLAB_SEED", default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        /// Run only this criterion (1-10).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        criterion: Option<u8>,
        /// Check a single matrix file instead: rank, LPN and Cholesky root.
        #[arg(long, conflicts_with = "criterion")]
        matrix: Option<PathBuf>,
        /// Leave out wall-clock times so output is reproducible.
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        json: bool,
    },
    /// EXPERIMENTAL: distribution of the number of instructional posets over
    /// random full-rank graphs. Gathers data for an open question only.
    Stats {
        /// Number of vertices.
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, env = "PRESSLAB_SEED", default_value_t = VerifyConfig::default().seed)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Failure of a command: `Parse` exits with 2, everything else with 1.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Semantic(String),
    /// The reader went away; stop quietly.
    ClosedPipe,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Semantic(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Semantic(format!("output error: {e}"))
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `argv` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Semantic(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::ClosedPipe) => 0,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Semantic(format!("cannot read {}: {e}", path.display())))
}

fn parse_in<T>(path: &Path) -> Result<T, Failure>
where
    T: std::str::FromStr<Err = Error>,
{
    read(path)?.parse().map_err(|e: Error| match e {
        Error::Parse { line, message } => {
            Failure::Parse(format!("{}:{line}: {message}", path.display()))
        }
        other => Failure::from(other),
    })
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Press { file, vertices } => press(&file, &vertices, out),
        Command::Sequences { file, count, json } => sequences(&file, count, json, out),
        Command::Posets { file, json } => posets(&file, json, out),
        Command::Recognize { file, witness, json } => recognize_cmd(&file, witness, json, out),
        Command::Generators { file, json } => generators(&file, json, out),
        Command::Autonomy { file, oracle, json } => autonomy_cmd(&file, oracle, json, out),
        Command::Synthesize { file } => {
            let tree: BuildTree = parse_in(&file)?;
            write!(out, "{}", autonomy::synthesize_generator(&tree)?)?;
            Ok(0)
        }
        Command::Verify {
            max_n,
            seed,
            criterion,
            matrix,
            no_timing,
            json,
        } => match matrix {
            Some(path) => check_matrix(&path, json, out),
            None => verify_cmd(VerifyConfig { seed, max_n }, criterion, no_timing, json, out),
        },
        Command::Stats {
            n,
            samples,
            seed,
            json,
        } => stats(n, samples, seed, json, out),
    }
}

fn position(g: &PseudoGraph, label: usize) -> Result<usize, Failure> {
    g.position_of(label)
        .ok_or_else(|| Failure::Semantic(format!("no vertex named {label}")))
}

fn press(file: &Path, vertices: &[usize], out: &mut dyn Write) -> Outcome {
    let mut g: PseudoGraph = parse_in(file)?;
    for &label in vertices {
        let v = position(&g, label)?;
        g.press_in_place(v).map_err(|_| {
            Failure::Semantic(format!("vertex {label} has no loop and cannot be pressed"))
        })?;
    }
    write!(out, "{g}")?;
    Ok(0)
}

fn labelled(g: &PseudoGraph, s: &PressingSequence) -> Vec<usize> {
    s.to_labels(g)
}

fn join(items: &[usize]) -> String {
    items.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn sequences(file: &Path, count: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let g: PseudoGraph = parse_in(file)?;
    if count {
        let c = g.count_sequences();
        if json {
            writeln!(out, "{}", json!({ "count": c }))?;
        } else {
            writeln!(out, "{c}")?;
        }
        return Ok(0);
    }
    let all: Vec<Vec<usize>> = g.sequences().iter().map(|s| labelled(&g, s)).collect();
    if json {
        writeln!(out, "{}", json!({ "count": all.len(), "sequences": all }))?;
    } else {
        for s in &all {
            writeln!(out, "{}", join(s))?;
        }
    }
    Ok(0)
}

fn poset_json(p: &Poset) -> Value {
    let covers: Vec<[usize; 2]> = p
        .covers()
        .iter()
        .map(|&(a, b)| [p.label(a), p.label(b)])
        .collect();
    json!({ "elements": p.labels(), "covers": covers })
}

fn posets(file: &Path, json: bool, out: &mut dyn Write) -> Outcome {
    let g: PseudoGraph = parse_in(file)?;
    let family = autonomy::instructional_family(&g)?;
    if json {
        let items: Vec<Value> = family
            .posets
            .iter()
            .zip(&family.classes)
            .map(|(p, class)| {
                let seqs: Vec<Vec<usize>> = class.iter().map(|s| labelled(&g, s)).collect();
                json!({ "poset": poset_json(p), "class_size": class.len(), "sequences": seqs })
            })
            .collect();
        writeln!(out, "{}", json!({ "count": family.len(), "posets": items }))?;
        return Ok(0);
    }
    writeln!(out, "# {} instructional posets", family.len())?;
    for (i, (p, class)) in family.posets.iter().zip(&family.classes).enumerate() {
        writeln!(out, "# poset {}: class size {}", i + 1, class.len())?;
        write!(out, "{p}")?;
    }
    Ok(0)
}

fn recognize_cmd(file: &Path, witness: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let dag: DagInput = parse_in(file)?;
    let verdict = recognize::classify(dag.n, &dag.arcs)?;
    let p = dag.to_poset()?;
    let mut report = json!({
        "vposet": verdict.is_vposet(),
        "verdict": verdict,
    });
    let mut lines = vec![if verdict.is_vposet() { "VPOSET" } else { "NOT-VPOSET" }.to_string()];
    if witness {
        match verdict {
            Verdict::VPoset => {
                let tree = recognize::decompose(&p)
                    .ok_or_else(|| Failure::Semantic("recognized poset did not decompose".into()))?;
                lines.push(tree.to_string());
                report["tree"] = json!(tree.to_string());
            }
            _ => {
                let (pattern, quad) = match verdict {
                    Verdict::InducedN => ("N", p.find_induced_n()),
                    _ => ("bowtie", p.find_induced_bowtie()),
                };
                let quad = quad.ok_or_else(|| {
                    Failure::Semantic(format!("no induced {pattern} found in a rejected poset"))
                })?;
                let names = quad.map(|a| p.label(a));
                lines.push(format!("{pattern} {}", join(&names)));
                report["pattern"] = json!(pattern);
                report["witness"] = json!(names);
            }
        }
    }
    if json {
        writeln!(out, "{report}")?;
    } else {
        for l in lines {
            writeln!(out, "{l}")?;
        }
    }
    Ok(0)
}

fn graph_json(g: &PseudoGraph) -> Value {
    let loops: Vec<usize> = g.loops().ones().map(|v| g.label(v)).collect();
    let edges: Vec<[usize; 2]> = g
        .edges()
        .into_iter()
        .map(|(u, v)| [g.label(u), g.label(v)])
        .collect();
    json!({ "vertices": g.labels(), "loops": loops, "edges": edges })
}

fn generators(file: &Path, json: bool, out: &mut dyn Write) -> Outcome {
    let p: Poset = parse_in(file)?;
    let free = autonomy::free_pair_count(&p);
    if free > MAX_FREE_PAIRS {
        return Err(Failure::Semantic(format!(
            "poset has 2^{free} generators; the limit is 2^{MAX_FREE_PAIRS}"
        )));
    }
    let gens = autonomy::enumerate_generators(&p);
    if json {
        let items: Vec<Value> = gens.iter().map(graph_json).collect();
        writeln!(out, "{}", json!({ "count": gens.len(), "generators": items }))?;
        return Ok(0);
    }
    writeln!(out, "# {} generators", gens.len())?;
    for (i, g) in gens.iter().enumerate() {
        writeln!(out, "# generator {}", i + 1)?;
        write!(out, "{g}")?;
    }
    Ok(0)
}

fn autonomy_cmd(file: &Path, oracle: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let is_graph = file.extension().is_some_and(|e| e == "osp");
    let (autonomous, detail) = if is_graph {
        let g: PseudoGraph = parse_in(file)?;
        let family = autonomy::instructional_family(&g)?;
        (family.len() == 1, json!({ "kind": "graph", "posets": family.len() }))
    } else {
        let p: Poset = parse_in(file)?;
        let method = if oracle { "oracle" } else { "recognition" };
        let result = if oracle {
            autonomy::is_autonomous_poset_oracle(&p)
        } else {
            autonomy::is_autonomous_poset(&p)
        };
        (result, json!({ "kind": "poset", "method": method }))
    };
    if json {
        let mut report = detail;
        report["autonomous"] = json!(autonomous);
        writeln!(out, "{report}")?;
    } else {
        writeln!(out, "{}", if autonomous { "AUTONOMOUS" } else { "NOT-AUTONOMOUS" })?;
    }
    Ok(0)
}

fn verify_cmd(
    cfg: VerifyConfig,
    criterion: Option<u8>,
    no_timing: bool,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let ids: Vec<usize> = match criterion {
        Some(c) => vec![c as usize],
        None => (1..=verify::CRITERIA.len()).collect(),
    };
    let reports: Vec<_> = ids.into_iter().map(|id| verify::run(id, &cfg)).collect();
    let all_passed = reports.iter().all(|r| r.passed());
    if json {
        let items: Vec<Value> = reports
            .iter()
            .map(|r| {
                let mut v = serde_json::to_value(r).expect("plain data");
                v["passed"] = json!(r.passed());
                if no_timing {
                    v["elapsed_ms"] = Value::Null;
                }
                v
            })
            .collect();
        writeln!(out, "{}", json!({ "seed": cfg.seed, "passed": all_passed, "criteria": items }))?;
    } else {
        for r in &reports {
            let line = if no_timing {
                r.summary_line_untimed()
            } else {
                r.summary_line()
            };
            writeln!(out, "{line}")?;
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn check_matrix(path: &Path, json: bool, out: &mut dyn Write) -> Outcome {
    let a: Gf2Matrix = parse_in(path)?;
    let rank = a.rank();
    let lpn = a.is_lpn();
    let elimination = a.eliminate_without_swaps().is_ok();
    let root = if a.is_symmetric() { a.cholesky_root()? } else { None };
    let root_ok = root
        .as_ref()
        .is_none_or(|u| u.transpose().multiply(u).as_ref() == Ok(&a));
    let consistent = lpn == elimination && (!a.is_symmetric() || lpn == root.is_some()) && root_ok;
    if json {
        writeln!(
            out,
            "{}",
            json!({
                "n": a.dim(),
                "rank": rank,
                "lpn": lpn,
                "elimination": elimination,
                "root": root.as_ref().map(|u| u.to_rows()),
                "consistent": consistent,
            })
        )?;
    } else {
        writeln!(out, "rank {rank}")?;
        writeln!(out, "lpn {lpn}")?;
        writeln!(out, "elimination {elimination}")?;
        match &root {
            Some(u) => write!(out, "root\n{u}")?,
            None => writeln!(out, "root none")?,
        }
        writeln!(out, "{}", if consistent { "CONSISTENT" } else { "INCONSISTENT" })?;
    }
    Ok(if consistent { 0 } else { 1 })
}

fn stats(n: usize, samples: usize, seed: u64, json: bool, out: &mut dyn Write) -> Outcome {
    if n == 0 || n > 10 {
        return Err(Failure::Semantic("--n must be between 1 and 10".into()));
    }
    let mut rng = random::rng(seed);
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let mut total_sequences = 0u64;
    for _ in 0..samples {
        let g = random::full_rank_graph(&mut rng, n);
        let family = autonomy::instructional_family(&g)?;
        total_sequences += family.sequence_count() as u64;
        *histogram.entry(family.len()).or_default() += 1;
    }
    let mean = if samples == 0 {
        0.0
    } else {
        total_sequences as f64 / samples as f64
    };
    if json {
        let hist: BTreeMap<String, usize> =
            histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        writeln!(
            out,
            "{}",
            json!({
                "experimental": true,
                "n": n,
                "samples": samples,
                "seed": seed,
                "mean_sequences": mean,
                "posets_histogram": hist,
            })
        )?;
    } else {
        writeln!(out, "# experimental: {samples} random full-rank graphs on {n} vertices, seed {seed}")?;
        writeln!(out, "mean sequences {mean:.3}")?;
        for (k, v) in &histogram {
            writeln!(out, "{k} posets: {v}")?;
        }
    }
    Ok(0)
}
