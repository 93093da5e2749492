use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use anyhow::{anyhow, Context, Result};
use clap::{Args, ValueEnum};
use uniqcov::io::InstanceReader;
use uniqcov::oracle::exact_max_unique_coverage_with_budget;
use uniqcov::streaming::{PipelineStream, StreamParams, StreamReport, TopSetsStream, DEFAULT_C};

use crate::solve::load_instance;
use crate::table::{join_ids, write_table};
use crate::Global;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StreamAlgo {
    Topsets,
    Pipeline,
}

#[derive(Args, Debug)]
pub struct StreamArgs {
    /// Instance file, read one set at a time.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub algo: StreamAlgo,
    /// Cardinality constraint (default: the file's k).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0.2)]
    pub eps: f64,
    /// Constant in the sampling probability.
    #[arg(long, default_value_t = DEFAULT_C)]
    pub c: f64,
    /// Upper bound on element frequency (required for topsets).
    #[arg(long)]
    pub r_bound: Option<usize>,
    /// Load the whole instance afterwards and compare against the optimum.
    #[arg(long)]
    pub oracle: bool,
}

pub fn run(global: &Global, args: &StreamArgs) -> Result<()> {
    let file = File::open(&args.input).with_context(|| format!("opening {}", args.input.display()))?;
    let reader = InstanceReader::new(BufReader::new(file)).with_context(|| format!("reading {}", args.input.display()))?;
    let h = reader.header();
    let k = args.k.unwrap_or(h.k);
    let params = StreamParams::new(k, args.eps, args.c, global.seed)?;
    let report = match args.algo {
        StreamAlgo::Topsets => {
            let r_bound = args
                .r_bound
                .ok_or_else(|| uniqcov::Error::Domain("topsets needs --r-bound".into()))?;
            let mut s = TopSetsStream::new(h.n, h.m, r_bound, &params)?.with_budget(global.oracle_budget);
            for set in reader {
                s.push(&set.with_context(|| format!("reading {}", args.input.display()))?)?;
            }
            s.finish()?
        }
        StreamAlgo::Pipeline => {
            let mut s = PipelineStream::new(h.n, h.m, &params, None)?;
            for set in reader {
                s.push(&set.with_context(|| format!("reading {}", args.input.display()))?)?;
            }
            s.finish()?
        }
    };
    write_report(global, args, k, &report)
}

fn write_report(global: &Global, args: &StreamArgs, k: usize, report: &StreamReport) -> Result<()> {
    let full = if args.oracle {
        let sys = load_instance(&args.input, Some(k))?;
        if let Some(r) = args.r_bound {
            if sys.max_frequency() > r {
                return Err(anyhow!(uniqcov::Error::Domain(format!(
                    "--r-bound {r} is below the measured frequency {}",
                    sys.max_frequency()
                ))));
            }
        }
        let opt = exact_max_unique_coverage_with_budget(&sys, global.oracle_budget)?.unique_coverage();
        Some((sys, opt))
    } else {
        None
    };
    let rows: Vec<Vec<String>> = report
        .instances
        .iter()
        .map(|inst| {
            let (oracle, ratio) = match &full {
                Some((sys, opt)) if !inst.terminated => {
                    let value = sys.collection(inst.solution.clone()).map(|c| c.unique_coverage()).unwrap_or(0);
                    let ratio = if *opt == 0 { 1.0 } else { value as f64 / *opt as f64 };
                    (opt.to_string(), format!("{ratio:.6}"))
                }
                Some((_, opt)) => (opt.to_string(), String::new()),
                None => (String::new(), String::new()),
            };
            vec![
                inst.guess_v.to_string(),
                format!("{:.6}", inst.p),
                inst.terminated.to_string(),
                inst.stored_sets.to_string(),
                join_ids(&inst.solution),
                inst.value.to_string(),
                oracle,
                ratio,
            ]
        })
        .collect();
    let comment = format!(
        "# selected guess_v={} p={:.6} solution={} value={} est_value={:.3} exact={}",
        report.chosen_guess,
        report.p,
        join_ids(&report.solution),
        report.value,
        report.est_value,
        report.exact
    );
    write_table(
        global,
        &[comment],
        &["guess_v", "p", "terminated", "stored_sets", "solution_ids", "value", "oracle_value", "ratio"],
        &rows,
    )
}
