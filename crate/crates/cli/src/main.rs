use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use serde_json::json;
use shortwide_cli::cli::{Cli, Command};
use shortwide_cli::commands::execute;
use shortwide_cli::selftest::{run_all, Outcome};

fn out_dir(cmd: &Command) -> Option<&std::path::Path> {
    match cmd {
        Command::Distances(a) | Command::Survival(a) => a.out.as_deref(),
        Command::Fit(a) => a.out.as_deref(),
        Command::Ensemble(a) => a.out.as_deref(),
        Command::Neuro(a) => a.out.as_deref(),
        Command::Oracle(a) => a.out.as_deref(),
        Command::Bench(a) => a.out.as_deref(),
        Command::SelfTest(_) => None,
    }
}

fn self_test(data: Option<&std::path::Path>, timings: bool) -> ExitCode {
    let reports = run_all(data);
    for r in &reports {
        println!("{}", r.line(timings));
    }
    if reports.iter().any(|r| r.outcome == Outcome::Fail) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let cmd = cli
        .command
        .as_ref()
        .context("no command given; see --help")?;
    let out = execute(cmd)?;
    if let Some(dir) = out_dir(cmd) {
        out.write_to(dir)?;
    }
    print!("{}", out.summary_text());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{}", json!({ "error": e.to_string(), "context": ["--workers"] }));
            return ExitCode::FAILURE;
        }
    }
    if cli.self_test {
        return self_test(cli.with_data.as_deref(), false);
    }
    if let Some(Command::SelfTest(a)) = &cli.command {
        return self_test(a.with_data.as_deref(), a.timings);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let chain: Vec<String> = e.chain().map(ToString::to_string).collect();
            let (head, context) = chain.split_last().expect("errors have a message");
            let mut context = context.to_vec();
            context.reverse();
            eprintln!("{}", json!({ "error": head, "context": context }));
            ExitCode::FAILURE
        }
    }
}
