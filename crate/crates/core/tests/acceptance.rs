//! One pass/fail line per acceptance criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::time::Instant;

use tanlift::verify::{self, Config, SuiteReport};

/// Minimum case counts per check, for the checks whose size is part of the requirement.
const MINIMUMS: &[(&str, usize)] = &[
    ("lifted-schouten", 50),
    ("field-lift-brackets", 50),
    ("one-form-pairings", 50),
    ("multivector-contractions", 50),
    ("forms-as-pullbacks", 50),
    ("multivectors-as-pullbacks", 50),
    ("naturality", 10),
    ("graded-duality", 20),
    ("wedge-diagrams", 20),
    ("lift-diagrams", 20),
    ("cyclic-versus-schouten", 200),
    ("tangent-cobracket", 5),
    ("dual-compatibility", 5),
    ("linearization-bridge", 5),
];

fn judge(report: &SuiteReport) -> Result<usize, String> {
    let mut cases = 0;
    for c in &report.checks {
        if !c.passed() {
            return Err(format!("{}: {}", c.name, c.failures.first().cloned().unwrap_or_default()));
        }
        if let Some((_, min)) = MINIMUMS.iter().find(|(n, _)| *n == c.name) {
            if c.cases < *min {
                return Err(format!("{}: only {} cases, need {min}", c.name, c.cases));
            }
        }
        cases += c.cases;
    }
    Ok(cases)
}

fn cli_is_deterministic() -> Result<usize, String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_tanlift"))
            .args(["verify", "all", "--seed", "7"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if a.stdout != b.stdout || a.status.code() != b.status.code() {
        return Err("two runs differ".into());
    }
    let text = String::from_utf8_lossy(&a.stdout);
    let claims_pass = text.lines().last().is_some_and(|l| l.starts_with("PASS"));
    if a.status.code() != Some(if claims_pass { 0 } else { 1 }) {
        return Err(format!("exit code {:?} does not match the verdict", a.status.code()));
    }
    if !claims_pass {
        return Err("verify all reported failures".into());
    }
    let bad = Command::new(env!("CARGO_BIN_EXE_tanlift"))
        .args(["verify", "no-such-suite"])
        .output()
        .map_err(|e| e.to_string())?;
    if bad.status.code() != Some(2) {
        return Err("an unknown suite should exit with 2".into());
    }
    Ok(a.stdout.len())
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let reports = verify::run("all", &Config { seed: 7, ..Config::default() }).expect("suites run");
    let mut failed = 0;
    for criterion in 1..=9u8 {
        let outcome = reports
            .iter()
            .find(|r| r.criterion == criterion)
            .ok_or_else(|| "no suite".to_string())
            .and_then(|r| judge(r).map(|n| format!("{} ({n} cases)", r.suite)));
        match outcome {
            Ok(msg) => println!("criterion {criterion}: pass  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {criterion}: FAIL  {msg}");
            }
        }
    }
    match cli_is_deterministic() {
        Ok(n) => println!("criterion 10: pass  verify all --seed 7 is byte-identical across runs ({n} bytes)"),
        Err(msg) => {
            failed += 1;
            println!("criterion 10: FAIL  {msg}");
        }
    }
    let secs = start.elapsed().as_secs_f64();
    println!("elapsed: {secs:.2}s");
    assert_eq!(failed, 0, "{failed} criteria failed");
    assert!(secs < 60.0, "acceptance took {secs:.1}s");
}
