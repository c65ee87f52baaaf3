//! One line per criterion; exits nonzero if any fails.
//! Set SHORTWIDE_DATA to a data directory to run the dataset checks.

use std::path::PathBuf;
use std::process::{Command, ExitCode};

use shortwide_cli::selftest::{read_tree, run_one, Outcome, DETERMINISM_COMMANDS};

/// Runs the compiled binary twice per command and compares stdout and files.
fn binary_determinism() -> Result<usize, String> {
    let bin = env!("CARGO_BIN_EXE_shortwide");
    let mut files = 0;
    for line in DETERMINISM_COMMANDS {
        let mut seen = Vec::new();
        for _ in 0..2 {
            let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
            let out = Command::new(bin)
                .args(line.split_whitespace())
                .arg("--out")
                .arg(dir.path())
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!("`{line}` failed: {}", String::from_utf8_lossy(&out.stderr)));
            }
            let tree = read_tree(dir.path()).map_err(|e| format!("{e:#}"))?;
            seen.push((out.stdout, tree));
        }
        if seen[0] != seen[1] {
            return Err(format!("`{line}` output differs between processes"));
        }
        files += seen[0].1.len();
    }
    Ok(files)
}

fn main() -> ExitCode {
    let data = std::env::var_os("SHORTWIDE_DATA").map(PathBuf::from);
    let mut failed = false;
    for id in 1..=12 {
        let mut r = run_one(id, data.as_deref());
        if id == 12 && r.outcome == Outcome::Pass {
            match binary_determinism() {
                Ok(n) => r.detail += &format!("; binary: {n} files identical across two processes"),
                Err(e) => {
                    r.outcome = Outcome::Fail;
                    r.detail = e;
                }
            }
        }
        failed |= r.outcome == Outcome::Fail;
        println!("{}", r.line(true));
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
