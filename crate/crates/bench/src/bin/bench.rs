use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use costgen::fixtures::register_fixtures;
use costgen::{cheapness, sum_len};
use costgen_bench::run::{linear_fit, median};
use costgen_bench::{emit_csv, run_bench, GrowthModel, Outcome, Policy, RunRecord};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Naive,
    Sizediv,
    Budgeted,
}

/// Generate list-children trees under one policy and report sizes and timings.
#[derive(Debug, Parser)]
#[command(name = "bench", version)]
struct Args {
    #[arg(long, value_enum)]
    policy: PolicyArg,
    /// Comma-separated sizes (budgets for the budgeted policy).
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<u64>,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    samples: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Constructor events after which a naive run is abandoned.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    step_cap: u64,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Size divisor for the sizediv policy.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    divisor: u32,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let policy = match args.policy {
        PolicyArg::Naive => Policy::Naive,
        PolicyArg::Sizediv => Policy::SizeDivision(args.divisor),
        PolicyArg::Budgeted => Policy::Budgeted,
    };

    let records = match run_bench(policy, &args.sizes, args.samples, args.seed, args.step_cap) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("bench: {e}");
            return ExitCode::from(2);
        }
    };

    print_shapes();
    print_summary(policy, &records);

    if let Some(path) = &args.csv {
        if let Err(e) = emit_csv(&records, path) {
            eprintln!("bench: {e}");
            return ExitCode::FAILURE;
        }
        println!("wrote {} rows to {}", records.len(), path.display());
    }
    ExitCode::SUCCESS
}

fn print_shapes() {
    let reg = register_fixtures();
    println!("fixture shapes:");
    for name in reg.names() {
        let shape = reg.shape(name).expect("listed name");
        println!(
            "  {name:<10} constructors={} cheapness={} cheapest={}",
            sum_len(shape).0,
            cheapness(shape).0,
            shape.cheapest_constructor().unwrap_or("-"),
        );
    }
    println!();
}

fn print_summary(policy: Policy, records: &[RunRecord]) {
    let mut by_size: BTreeMap<u64, Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        by_size.entry(r.size).or_default().push(r);
    }

    println!("policy {policy}");
    println!(
        "{:>10} {:>8} {:>14} {:>14} {:>9} {:>7} {:>6}",
        "size", "samples", "median cons", "median ns", "complete", "capped", "failed"
    );
    let mut points = Vec::new();
    for (size, runs) in &by_size {
        let cons: Vec<f64> = runs.iter().map(|r| r.constructors as f64).collect();
        let nanos: Vec<f64> = runs.iter().map(|r| r.nanos as f64).collect();
        let count = |o| runs.iter().filter(|r| r.outcome == o).count();
        let med_ns = median(&nanos).unwrap_or(0.0);
        points.push((*size as f64, med_ns));
        println!(
            "{size:>10} {:>8} {:>14.0} {:>14.0} {:>9} {:>7} {:>6}",
            runs.len(),
            median(&cons).unwrap_or(0.0),
            med_ns,
            count(Outcome::Completed),
            count(Outcome::StepCapped),
            count(Outcome::Failed),
        );
        if policy == Policy::Naive {
            let model = GrowthModel::naive_tree(*size);
            println!(
                "{:>10} mean branching {:.2}, predicted share reaching the cap {:.1}%",
                "",
                model.mean_branching(),
                100.0 * (1.0 - model.extinction_probability()),
            );
        }
    }
    if let Some(fit) = linear_fit(&points).filter(|_| points.len() >= 3) {
        println!(
            "median ns vs size: slope {:.3} ns/unit, R^2 {:.4}",
            fit.slope, fit.r_squared
        );
    }
}
