//! Acceptance suite: one pass/fail line per criterion. Set `ARTHUR_SEED` to
//! change the seed of the randomized criteria.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use arthur_calc::props::{self, Config};

fn fixtures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut out: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("fixtures directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "arc"))
        .collect();
    out.sort();
    out
}

/// Replays every fixture through `arthur-calc check`.
fn fixture_replay() -> (bool, String) {
    let start = Instant::now();
    let files = fixtures();
    let mut failed = Vec::new();
    for f in &files {
        let out = Command::new(env!("CARGO_BIN_EXE_arthur-calc")).arg("check").arg(f).output().expect("run arthur-calc");
        if !out.status.success() {
            failed.push(String::from_utf8_lossy(&out.stdout).trim().to_string());
        }
    }
    let ok = failed.is_empty() && !files.is_empty();
    let verdict = if ok { "PASS" } else { "FAIL" };
    let mut line = format!(
        "criterion 14 {verdict}  CLI fixture replay: {} scripts, {} mismatches, {:.1}s",
        files.len(),
        failed.len(),
        start.elapsed().as_secs_f64()
    );
    for f in failed {
        line.push_str(&format!("\n    {f}"));
    }
    (ok, line)
}

fn main() -> ExitCode {
    let seed = std::env::var("ARTHUR_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(1);
    let cfg = Config::full(seed);
    println!("acceptance suite, seed {seed}");
    let mut failed = Vec::new();
    for id in props::CRITERIA {
        let r = props::run_criterion(id, &cfg);
        println!("{r}");
        if !r.passed() {
            failed.push(id);
        }
    }
    let (ok, line) = fixture_replay();
    println!("{line}");
    if !ok {
        failed.push(14);
    }
    if failed.is_empty() {
        println!("all 14 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
