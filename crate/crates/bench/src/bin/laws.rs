//! Runs the law suites over the fixture types and the built-in instances.

use std::process::ExitCode;

use clap::Parser;
use costgen::laws::{exit_status, run_laws};
use costgen_bench::suites::shipped_suites;

#[derive(Debug, Parser)]
#[command(name = "laws", version)]
struct Args {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override every law's sample count.
    #[arg(long)]
    samples: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let reports = run_laws(&shipped_suites(), args.seed, args.samples);
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("{} laws, {failed} failed", reports.len());
    ExitCode::from(exit_status(&reports) as u8)
}
