use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use uniqcov::hardgen::{
    distinct_family_bound, distinguisher_threshold, identical_family_bound, parse_metadata_line, verify_identical_family, DisjAnswer,
    HardInstance, HardInstanceSpec, LayeredUniverse,
};
use uniqcov::io::read_instance;
use uniqcov::FrequencyCounter;

use crate::table::write_table;
use crate::{BoundViolation, Global};

#[derive(Args, Debug)]
pub struct VerifyHardArgs {
    /// Check a file written by gen-hard instead of running a sweep.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
    pub a: Vec<u64>,
    /// Seeds per (k, a), starting at --seed.
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    /// Indices per instance.
    #[arg(long, default_value_t = 8)]
    pub m: usize,
}

pub fn run(global: &Global, args: &VerifyHardArgs) -> Result<()> {
    match &args.input {
        Some(path) => verify_file(global, path),
        None => sweep(global, args),
    }
}

fn sweep(global: &Global, args: &VerifyHardArgs) -> Result<()> {
    let mut rows = Vec::new();
    let mut failures = 0usize;
    for &k in &args.k {
        for &a in &args.a {
            for seed in global.seed..global.seed + args.seeds {
                let spec = HardInstanceSpec::new(k, a, args.m, DisjAnswer::No, seed)?;
                let layers = LayeredUniverse::new(&spec)?;
                let mut layers_ok = true;
                for i in 0..args.m {
                    for j in 0..k {
                        let profile = layers.layer_profile(&layers.player_set(i, j)?);
                        layers_ok &= (1..=k).all(|t| profile[t - 1] * k == t * layers.layer_size(t));
                    }
                }
                let expected = layers.identical_family_value();
                let bound = identical_family_bound(k, a);
                let mut family_ok = true;
                for i in 0..args.m {
                    family_ok &= verify_identical_family(&layers, i).is_ok();
                }
                let ok = layers_ok && family_ok;
                failures += usize::from(!ok);
                rows.push(vec![
                    k.to_string(),
                    a.to_string(),
                    seed.to_string(),
                    layers.n().to_string(),
                    expected.to_string(),
                    format!("{bound:.3}"),
                    layers_ok.to_string(),
                    family_ok.to_string(),
                    ok.to_string(),
                ]);
            }
        }
    }
    write_table(
        global,
        &[],
        &["k", "a", "seed", "n", "identical_value", "bound", "layer_claim", "identical_family", "bound_satisfied"],
        &rows,
    )?;
    if failures > 0 {
        return Err(BoundViolation(format!("{failures} hard-instance rows failed")).into());
    }
    Ok(())
}

fn verify_file(global: &Global, path: &PathBuf) -> Result<()> {
    let open = || File::open(path).with_context(|| format!("opening {}", path.display()));
    let meta = BufReader::new(open()?)
        .lines()
        .map_while(|l| l.ok())
        .find(|l| l.starts_with("# hard"))
        .ok_or_else(|| uniqcov::Error::Domain(format!("{} has no `# hard` metadata line", path.display())))?;
    let (spec, i_star) = parse_metadata_line(&meta)?;
    let sys = read_instance(BufReader::new(open()?)).with_context(|| format!("reading {}", path.display()))?;
    let inst = HardInstance::generate(spec)?;
    let regenerated = inst.to_set_system()?;
    let sets_match = regenerated == sys && inst.inputs.i_star == i_star;
    let stream = inst.emit_stream()?;
    let mut groups: BTreeMap<usize, FrequencyCounter> = BTreeMap::new();
    for s in &stream {
        groups.entry(s.index).or_insert_with(|| FrequencyCounter::new(sys.n())).add(&s.elements);
    }
    let best_group = groups.values().map(|c| c.unique_coverage() as u64).max().unwrap_or(0);
    if let Some(i) = inst.inputs.i_star {
        verify_identical_family(&inst.layers, i)?;
    }
    let threshold = distinguisher_threshold(spec.k, spec.a);
    let separable = identical_family_bound(spec.k, spec.a) > distinct_family_bound(spec.k, spec.a);
    let classified = match (separable, best_group as f64 >= threshold) {
        (false, _) => "undecided",
        (true, true) => "yes",
        (true, false) => "no",
    };
    write_table(
        global,
        &[],
        &[
            "answer", "i_star", "n", "stream_sets", "sets_match", "best_index_group_value", "yes_bound", "no_bound",
            "threshold", "classified",
        ],
        &[vec![
            spec.answer.as_str().to_string(),
            i_star.map_or_else(|| "-".to_string(), |i| i.to_string()),
            sys.n().to_string(),
            sys.m().to_string(),
            sets_match.to_string(),
            best_group.to_string(),
            format!("{:.3}", identical_family_bound(spec.k, spec.a)),
            format!("{:.3}", distinct_family_bound(spec.k, spec.a)),
            format!("{threshold:.3}"),
            classified.to_string(),
        ]],
    )?;
    if !sets_match {
        return Err(BoundViolation(format!("{} does not match its metadata", path.display())).into());
    }
    Ok(())
}
