use std::io::Write;

use anyhow::Result;
use clap::Args;
use uniqcov::gen::{random_instance, RandomSpec};
use uniqcov::hardgen::{default_a, DisjAnswer, HardInstance, HardInstanceSpec};
use uniqcov::io::write_instance;

use crate::table::open_output;
use crate::Global;

#[derive(Args, Debug)]
pub struct GenRandomArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub k: usize,
    /// Cap on element frequency.
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Cap on set size.
    #[arg(long)]
    pub d_max: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GenHardArgs {
    /// Number of players (and the cardinality constraint).
    #[arg(long)]
    pub k: usize,
    /// Layer size parameter (default ⌈k·log2 m + log2(k/0.05)⌉).
    #[arg(long)]
    pub a: Option<u64>,
    /// Index range.
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "no")]
    pub answer: DisjAnswer,
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn run_random(global: &Global, args: &GenRandomArgs) -> Result<()> {
    let spec = RandomSpec {
        n: args.n,
        m: args.m,
        k: args.k,
        r_max: args.r_max,
        d_max: args.d_max,
        seed: global.seed,
    };
    let sys = random_instance(&spec)?;
    let mut out = open_output(global.out.as_deref())?;
    writeln!(
        out,
        "# random {} {} {} {} {} {}",
        args.n,
        args.m,
        args.k,
        opt(args.r_max),
        opt(args.d_max),
        global.seed
    )?;
    write_instance(&mut out, &sys)?;
    out.flush()?;
    Ok(())
}

pub fn run_hard(global: &Global, args: &GenHardArgs) -> Result<()> {
    let a = args.a.unwrap_or_else(|| default_a(args.k, args.m));
    let spec = HardInstanceSpec::new(args.k, a, args.m, args.answer, global.seed)?;
    let inst = HardInstance::generate(spec)?;
    let sys = inst.to_set_system()?;
    let mut out = open_output(global.out.as_deref())?;
    writeln!(out, "{}", inst.metadata_line())?;
    write_instance(&mut out, &sys)?;
    out.flush()?;
    Ok(())
}
