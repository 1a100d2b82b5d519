use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use presslab::autonomy::{enumerate_generators, is_autonomous_graph};
use presslab::cli::run;
use presslab::{Poset, PseudoGraph};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn presslab(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("presslab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fixture(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Splits output on `# ...` header lines into separately parseable blocks.
fn blocks(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') {
            out.push(String::new());
        } else if let Some(last) = out.last_mut() {
            last.push_str(line);
            last.push('\n');
        }
    }
    out.retain(|b| !b.is_empty());
    out
}

const LAMBDA3: &str = "3\nl 1\ne 1 2\ne 1 3\ne 2 3\n";
const EXAMPLE_ONE: &str = "4\n1 > 3\n2 > 3\n3 > 4\n";

#[test]
fn recognize_rejects_x5() {
    let dir = TempDir::new().unwrap();
    let x5 = fixture(&dir, "x5.dag", &Poset::x_family(5).unwrap().to_string());
    let o = presslab(&["recognize", s(&x5)]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "NOT-VPOSET\n"));
    let o = presslab(&["recognize", s(&x5), "--witness"]);
    assert_eq!(o.stdout, "NOT-VPOSET\nbowtie 1 2 4 5\n");
}

#[test]
fn recognize_witness_tree_and_json_agree() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "ex1.dag", EXAMPLE_ONE);
    let plain = presslab(&["recognize", s(&f), "--witness"]);
    let lines: Vec<&str> = plain.stdout.lines().collect();
    assert_eq!(lines[0], "VPOSET");
    let json: Value = serde_json::from_str(&presslab(&["recognize", s(&f), "--witness", "--json"]).stdout).unwrap();
    assert_eq!(json["vposet"], true);
    assert_eq!(json["verdict"], "v-poset");
    assert_eq!(json["tree"], lines[1]);
    let n = fixture(&dir, "n.dag", "4\n1 > 3\n1 > 4\n2 > 4\n");
    let json: Value = serde_json::from_str(&presslab(&["recognize", s(&n), "--witness", "--json"]).stdout).unwrap();
    assert_eq!(json["pattern"], "N");
    assert_eq!(json["witness"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn sequences_count_and_listing() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "lambda3.osp", LAMBDA3);
    let o = presslab(&["sequences", s(&f), "--count"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "2\n"));
    let o = presslab(&["sequences", s(&f)]);
    assert_eq!(o.stdout, "1 2 3\n1 3 2\n");
    let json: Value = serde_json::from_str(&presslab(&["sequences", s(&f), "--json"]).stdout).unwrap();
    assert_eq!(json["count"], 2);
    assert_eq!(json["sequences"], serde_json::json!([[1, 2, 3], [1, 3, 2]]));
}

#[test]
fn press_unlooped_vertex_fails() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "empty.osp", "2\ne 1 2\n");
    let o = presslab(&["press", s(&f), "1"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("cannot be pressed"));
}

#[test]
fn press_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "lambda3.osp", LAMBDA3);
    let o = presslab(&["press", s(&f), "1", "2"]);
    assert_eq!(o.code, 0);
    let g: PseudoGraph = LAMBDA3.parse().unwrap();
    let expected = g.press(0).unwrap().press(1).unwrap();
    assert_eq!(o.stdout.parse::<PseudoGraph>().unwrap(), expected);
}

#[test]
fn parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "bad.osp", "3\ne 1 9\n");
    let o = presslab(&["sequences", s(&f)]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("bad.osp:2"));
    let t = fixture(&dir, "bad.tree", "(union (elem 1)");
    assert_eq!(presslab(&["synthesize", s(&t)]).code, 2);
    assert_eq!(presslab(&["frobnicate"]).code, 2);
    assert_eq!(presslab(&["verify", "--criterion", "11"]).code, 2);
}

#[test]
fn semantic_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let cyclic = fixture(&dir, "cyclic.dag", "2\n1 > 2\n2 > 1\n");
    assert_eq!(presslab(&["recognize", s(&cyclic)]).code, 1);
    let deficient = fixture(&dir, "deficient.osp", "2\nl 1\nl 2\ne 1 2\n");
    assert_eq!(presslab(&["posets", s(&deficient)]).code, 1);
    assert_eq!(presslab(&["sequences", "/nonexistent/file.osp"]).code, 1);
    let dup = fixture(&dir, "dup.tree", "(union (elem 1) (elem 1))");
    assert_eq!(presslab(&["synthesize", s(&dup)]).code, 1);
}

#[test]
fn help_exits_zero() {
    let o = presslab(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("recognize"));
    let o = presslab(&["stats", "--help"]);
    assert!(o.stdout.contains("EXPERIMENTAL"));
}

#[test]
fn generators_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "ex1.dag", EXAMPLE_ONE);
    let o = presslab(&["generators", s(&f)]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("# 4 generators\n"));
    let parsed: Vec<PseudoGraph> = blocks(&o.stdout).iter().map(|b| b.parse().unwrap()).collect();
    assert_eq!(parsed, enumerate_generators(&EXAMPLE_ONE.parse().unwrap()));
    let json: Value = serde_json::from_str(&presslab(&["generators", s(&f), "--json"]).stdout).unwrap();
    assert_eq!(json["count"], 4);
    assert_eq!(json["generators"].as_array().unwrap().len(), 4);
}

#[test]
fn posets_round_trip() {
    let dir = TempDir::new().unwrap();
    let bowtie = fixture(&dir, "bowtie.osp", "matrix 4\n1011\n0111\n1110\n1101\n");
    let o = presslab(&["posets", s(&bowtie)]);
    assert!(o.stdout.starts_with("# 2 instructional posets\n"));
    let parsed: Vec<Poset> = blocks(&o.stdout).iter().map(|b| b.parse().unwrap()).collect();
    assert_eq!(parsed.len(), 2);
    assert!(parsed.contains(&Poset::x_family(4).unwrap()));
    let json: Value = serde_json::from_str(&presslab(&["posets", s(&bowtie), "--json"]).stdout).unwrap();
    assert_eq!(json["count"], 2);
}

#[test]
fn synthesize_and_autonomy() {
    let dir = TempDir::new().unwrap();
    let tree = fixture(&dir, "ex1.tree", "(least 4 (least 3 (union (elem 1) (elem 2))))\n");
    let o = presslab(&["synthesize", s(&tree)]);
    assert_eq!(o.code, 0);
    let g: PseudoGraph = o.stdout.parse().unwrap();
    assert!(is_autonomous_graph(&g).unwrap());
    let osp = fixture(&dir, "gen.osp", &o.stdout);
    assert_eq!(presslab(&["autonomy", s(&osp)]).stdout, "AUTONOMOUS\n");
    let bowtie = fixture(&dir, "bowtie.osp", "matrix 4\n1011\n0111\n1110\n1101\n");
    assert_eq!(presslab(&["autonomy", s(&bowtie)]).stdout, "NOT-AUTONOMOUS\n");
    let x6 = fixture(&dir, "x6.dag", &Poset::x_family(6).unwrap().to_string());
    for extra in [&[][..], &["--oracle"][..]] {
        let mut args = vec!["autonomy", s(&x6)];
        args.extend_from_slice(extra);
        assert_eq!(presslab(&args).stdout, "NOT-AUTONOMOUS\n");
    }
    let json: Value = serde_json::from_str(&presslab(&["autonomy", s(&x6), "--oracle", "--json"]).stdout).unwrap();
    assert_eq!(json["autonomous"], false);
    assert_eq!(json["method"], "oracle");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--criterion", "5", "--max-n", "4", "--seed", "11", "--no-timing"];
    let a = presslab(&args);
    let b = presslab(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.starts_with("[PASS] criterion  5"));
    let json: Value = serde_json::from_str(&presslab(&["verify", "--criterion", "2", "--json"]).stdout).unwrap();
    assert_eq!(json["passed"], true);
}

#[test]
fn verify_checks_matrix_fixture() {
    let dir = TempDir::new().unwrap();
    let m = fixture(&dir, "m.txt", "3\n111\n101\n110\n");
    let o = presslab(&["verify", "--matrix", s(&m)]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.ends_with("CONSISTENT\n"));
    assert!(o.stdout.contains("root\n3\n111\n010\n001\n"));
}

#[test]
fn stats_is_seeded() {
    let a = presslab(&["stats", "--n", "4", "--samples", "30", "--seed", "3", "--json"]);
    let b = presslab(&["stats", "--n", "4", "--samples", "30", "--seed", "3", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let json: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(json["experimental"], true);
    let total: u64 = json["posets_histogram"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 30);
}

#[test]
fn binary_reads_seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_presslab");
    let run_with = |seed: &str| {
        Command::new(bin)
            .args(["stats", "--n", "4", "--samples", "10"])
            .env("PRESSLAB_SEED", seed)
            .output()
            .unwrap()
    };
    let a = run_with("42");
    assert!(a.status.success());
    assert!(String::from_utf8_lossy(&a.stdout).contains("seed 42"));
    let bad = Command::new(bin).args(["press"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
