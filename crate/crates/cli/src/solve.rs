use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use uniqcov::algorithms::{
    best_unique_subcollection, phi_bound, tuned_error, unique_greedy, unique_greedy_freq, unique_greedy_size,
    RatioBoundConfig,
};
use uniqcov::io::read_instance;
use uniqcov::kernel::{build_kernel, solve_in_kernel_with_budget};
use uniqcov::oracle::{exact_max_unique_coverage_with_budget, greedy_max_coverage};
use uniqcov::SetSystem;

use crate::table::{join_ids, write_table};
use crate::Global;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveAlgo {
    Exact,
    GreedyMc,
    Ug,
    Ugf,
    Ugs,
    Best,
    Kernel,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(value_enum)]
    pub algo: SolveAlgo,
    /// Instance file.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Override the instance's cardinality constraint.
    #[arg(long)]
    pub k: Option<usize>,
    /// Kernel ε (default 0.5), ε_r for ugf or ε_d for ugs (default tuned).
    #[arg(long)]
    pub eps: Option<f64>,
    /// ε̂_d for ugs (default tuned).
    #[arg(long)]
    pub eps_hat: Option<f64>,
    /// Ratio bound used to size the kernel (default φ(k, r, d)).
    #[arg(long)]
    pub phi: Option<f64>,
    /// Also compute the exact optimum and report the ratio.
    #[arg(long)]
    pub oracle: bool,
}

pub fn load_instance(path: &Path, k: Option<usize>) -> Result<SetSystem> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let sys = read_instance(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
    Ok(match k {
        Some(k) => sys.with_k(k)?,
        None => sys,
    })
}

pub fn run(global: &Global, args: &SolveArgs) -> Result<()> {
    let sys = load_instance(&args.input, args.k)?;
    let (r, d) = (sys.max_frequency(), sys.max_set_size());
    let budget = global.oracle_budget;
    let all = sys.all();
    let ids: Vec<usize> = match args.algo {
        SolveAlgo::Exact => exact_max_unique_coverage_with_budget(&sys, budget)?.into_ids(),
        SolveAlgo::GreedyMc => greedy_max_coverage(&sys).into_ids(),
        SolveAlgo::Ug => unique_greedy(&all)?.into_ids(),
        SolveAlgo::Ugf => {
            let eps = args.eps.unwrap_or_else(|| if r >= 2 { tuned_error(r) } else { 0.5 });
            unique_greedy_freq(&all, eps)?.into_ids()
        }
        SolveAlgo::Ugs => {
            let tuned = RatioBoundConfig::tuned(sys.m(), r.max(1), d.max(1))?;
            let eps_d = args.eps.unwrap_or(tuned.eps_d);
            let eps_hat = args.eps_hat.unwrap_or(tuned.eps_hat_d);
            unique_greedy_size(&all, eps_d, eps_hat)?.into_ids()
        }
        SolveAlgo::Best => {
            let cfg = RatioBoundConfig::tuned(sys.m(), r.max(1), d.max(1))?;
            best_unique_subcollection(&all, &cfg)?.into_ids()
        }
        SolveAlgo::Kernel => {
            let eps = args.eps.unwrap_or(0.5);
            let phi = match args.phi {
                Some(p) => p,
                None => phi_bound(sys.k(), r.max(1), d.max(1))?,
            };
            let buf = build_kernel(&sys, eps, phi)?;
            solve_in_kernel_with_budget(&buf, sys.k(), budget)?.ids
        }
    };
    let sol = sys.collection(ids)?;
    let (oracle, ratio) = if args.oracle {
        let opt = exact_max_unique_coverage_with_budget(&sys, budget)?.unique_coverage();
        let ratio = if opt == 0 { 1.0 } else { sol.unique_coverage() as f64 / opt as f64 };
        (opt.to_string(), format!("{ratio:.6}"))
    } else {
        (String::new(), String::new())
    };
    let algo = args.algo.to_possible_value().expect("named variant").get_name().to_string();
    write_table(
        global,
        &[],
        &["algorithm", "k", "ids", "unique_coverage", "coverage", "r", "d", "oracle_value", "ratio"],
        &[vec![
            algo,
            sys.k().to_string(),
            join_ids(sol.ids()),
            sol.unique_coverage().to_string(),
            sol.coverage_size().to_string(),
            r.to_string(),
            d.to_string(),
            oracle,
            ratio,
        ]],
    )
}
