//! Runs the ten acceptance criteria at their stated limits and prints one
//! PASS/FAIL line for each.
//!
//! A criterion listed in `KNOWN_FAILURES` still prints FAIL. The process
//! exits non-zero unless the set of failing criteria equals that list
//! exactly, so a new failure or an unexpected pass both break the build.

use std::process::ExitCode;

use presslab::verify::{self, VerifyConfig, CRITERIA};

const KNOWN_FAILURES: &[(usize, &str)] = &[(
    8,
    "e = 2n+c-M-m-h is false for connected V-posets whose remainder after \
     deleting the unique extremal element is disconnected (README, Known deviations)",
)];

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        for (i, (name, _)) in CRITERIA.iter().enumerate() {
            println!("criterion_{:02}_{}: test", i + 1, name.replace(' ', "_"));
        }
        return ExitCode::SUCCESS;
    }
    let selected: Vec<usize> = args.iter().filter_map(|a| a.parse().ok()).collect();
    let cfg = VerifyConfig::default();
    let mut unexpected = Vec::new();
    for id in 1..=CRITERIA.len() {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let report = verify::run(id, &cfg);
        println!("{}", report.summary_line());
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        match (report.passed(), known) {
            (true, None) => {}
            (false, Some((_, why))) => println!("    known failure: {why}"),
            (true, Some(_)) => unexpected.push(format!("criterion {id} passed but is listed as failing")),
            (false, None) => unexpected.push(format!("criterion {id} failed")),
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: results match expectations");
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("acceptance: {u}");
        }
        ExitCode::FAILURE
    }
}
