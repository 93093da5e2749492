use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use uniqcov::algorithms::{
    best_unique_subcollection, phi_bound, ugf_ratio, ugs_ratio, unique_greedy, unique_greedy_freq_detailed,
    unique_greedy_size, RatioBoundConfig,
};
use uniqcov::gen::{random_instance, RandomSpec};
use uniqcov::kernel::{build_kernel, solve_in_kernel_with_budget};
use uniqcov::oracle::exact_max_unique_coverage_with_budget;
use uniqcov::setsys::harmonic;

use crate::svg::{line_chart, Series};
use crate::table::write_table;
use crate::{BoundViolation, Global};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum ExpAlgo {
    Ug,
    Ugf,
    Ugs,
    Best,
    Kernel,
}

impl ExpAlgo {
    fn name(self) -> &'static str {
        match self {
            ExpAlgo::Ug => "ug",
            ExpAlgo::Ugf => "ugf",
            ExpAlgo::Ugs => "ugs",
            ExpAlgo::Best => "best",
            ExpAlgo::Kernel => "kernel",
        }
    }
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "ug,ugf,ugs,best,kernel")]
    pub algos: Vec<ExpAlgo>,
    /// Random instances per parameter combination.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 20)]
    pub n: u32,
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub k: Vec<usize>,
    /// Frequency caps to sweep.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub r_max: Vec<usize>,
    /// Error parameters to sweep (ε_r for ugf, ε_d = ε̂_d for ugs, ε for kernel).
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    pub eps: Vec<f64>,
    #[arg(long)]
    pub d_max: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Also write a ratio plot.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Debug)]
struct Row {
    trial: usize,
    k: usize,
    r_max: usize,
    eps: f64,
    algo: ExpAlgo,
    seed: u64,
    r: usize,
    d: usize,
    value: usize,
    coverage: usize,
    oracle: usize,
    ratio: f64,
    basis: &'static str,
    bound: f64,
    ok: bool,
    wall_ms: f64,
}

const HEADER: [&str; 20] = [
    "trial", "seed", "n", "m", "k", "r_max", "r", "d", "eps", "algorithm", "value", "coverage", "oracle_value",
    "ratio", "ratio_basis", "bound", "bound_satisfied", "wall_ms", "bound_kind", "solution_size",
];

type Scored = (Row, &'static str, usize);

struct Job {
    trial: usize,
    k: usize,
    r_max: usize,
    eps: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

fn run_job(global: &Global, args: &ExperimentArgs, job: &Job) -> Result<Vec<Scored>> {
    let seed = global.seed.wrapping_mul(1_000_003).wrapping_add(job.trial as u64);
    let spec = RandomSpec { n: args.n, m: args.m, k: job.k, r_max: Some(job.r_max), d_max: args.d_max, seed };
    let sys = random_instance(&spec)?;
    let all = sys.all();
    let (r, d, m) = (all.max_frequency(), all.max_set_size(), sys.m());
    let coverage = all.coverage_size();
    let oracle = exact_max_unique_coverage_with_budget(&sys, global.oracle_budget)?.unique_coverage();
    let mut rows = Vec::new();
    for &algo in &args.algos {
        let start = Instant::now();
        let (value, size, bound, basis, kind) = match algo {
            ExpAlgo::Ug => {
                let b = unique_greedy(&all)?;
                (b.unique_coverage(), b.len(), 1.0 / harmonic(m as u64), "coverage", "1/H_m")
            }
            ExpAlgo::Ugf => {
                let out = unique_greedy_freq_detailed(&all, None, job.eps)?;
                let bound = if r >= 2 { ugf_ratio(r, job.eps) } else { 1.0 };
                (out.solution.unique_coverage(), out.solution.len(), bound, "coverage", "ugf")
            }
            ExpAlgo::Ugs => {
                let b = unique_greedy_size(&all, job.eps, job.eps)?;
                (b.unique_coverage(), b.len(), ugs_ratio(d, job.eps, job.eps), "coverage", "ugs")
            }
            ExpAlgo::Best => {
                let cfg = RatioBoundConfig::tuned(m, r.max(1), d.max(1))?;
                let b = best_unique_subcollection(&all, &cfg)?;
                (b.unique_coverage(), b.len(), 1.0 / phi_bound(m, r.max(1), d.max(1))?, "coverage", "1/phi")
            }
            ExpAlgo::Kernel => {
                let phi = phi_bound(job.k, r.max(1), d.max(1))?;
                let buf = build_kernel(&sys, job.eps, phi)?;
                let sol = solve_in_kernel_with_budget(&buf, job.k, global.oracle_budget)?;
                (sol.unique_coverage, sol.ids.len(), 1.0 - job.eps, "oracle", "1-eps")
            }
        };
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let rt = if basis == "oracle" { ratio(value, oracle) } else { ratio(value, coverage) };
        rows.push((
            Row {
                trial: job.trial,
                k: job.k,
                r_max: job.r_max,
                eps: job.eps,
                algo,
                seed,
                r,
                d,
                value,
                coverage,
                oracle,
                ratio: rt,
                basis,
                bound,
                ok: rt >= bound - 1e-9,
                wall_ms,
            },
            kind,
            size,
        ));
    }
    Ok(rows)
}

pub fn run(global: &Global, args: &ExperimentArgs) -> Result<()> {
    if let Some(&k) = args.k.iter().find(|&&k| k < 1 || k > args.m) {
        return Err(anyhow!(uniqcov::Error::InvalidK { k, m: args.m }));
    }
    let mut jobs = Vec::new();
    for trial in 0..args.trials {
        for &k in &args.k {
            for &r_max in &args.r_max {
                for &eps in &args.eps {
                    jobs.push(Job { trial, k, r_max, eps });
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.threads.unwrap_or(0)).build()?;
    let results: Vec<Result<Vec<Scored>>> =
        pool.install(|| jobs.par_iter().map(|job| run_job(global, args, job)).collect());
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    rows.sort_by(|a, b| {
        (a.0.k, a.0.r_max, a.0.trial, a.0.algo)
            .cmp(&(b.0.k, b.0.r_max, b.0.trial, b.0.algo))
            .then(a.0.eps.total_cmp(&b.0.eps))
    });
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|(row, kind, size)| {
            vec![
                row.trial.to_string(),
                row.seed.to_string(),
                args.n.to_string(),
                args.m.to_string(),
                row.k.to_string(),
                row.r_max.to_string(),
                row.r.to_string(),
                row.d.to_string(),
                row.eps.to_string(),
                row.algo.name().to_string(),
                row.value.to_string(),
                row.coverage.to_string(),
                row.oracle.to_string(),
                format!("{:.6}", row.ratio),
                row.basis.to_string(),
                format!("{:.6}", row.bound),
                row.ok.to_string(),
                format!("{:.3}", row.wall_ms),
                kind.to_string(),
                size.to_string(),
            ]
        })
        .collect();
    write_table(global, &[], &HEADER, &table)?;

    if let Some(path) = &args.svg {
        let mut series = Vec::new();
        for &algo in &args.algos {
            for &eps in &args.eps {
                let points: Vec<(f64, f64)> = rows
                    .iter()
                    .filter(|(r, _, _)| r.algo == algo && r.eps == eps)
                    .enumerate()
                    .map(|(i, (r, _, _))| (i as f64, r.ratio))
                    .collect();
                let name = if args.eps.len() > 1 { format!("{} eps={eps}", algo.name()) } else { algo.name().to_string() };
                series.push(Series { name, points });
            }
        }
        std::fs::write(path, line_chart("achieved ratio per run", "run", "ratio", &series))?;
    }

    let violations = rows.iter().filter(|(r, _, _)| !r.ok).count();
    if violations > 0 {
        return Err(BoundViolation(format!("{violations} of {} rows below their guaranteed ratio", rows.len())).into());
    }
    Ok(())
}
