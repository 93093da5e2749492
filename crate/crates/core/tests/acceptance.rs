//! Acceptance criteria. Runs as a plain binary and prints one PASS/FAIL
//! line per criterion; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uniqcov::algorithms::{
    phi_bound, ugf_ratio, ugs_ratio, unique_greedy, unique_greedy_freq_detailed, unique_greedy_size, RatioBoundConfig,
};
use uniqcov::gen::{random_instance, RandomSpec};
use uniqcov::hardgen::{
    default_a, distinct_family_bound, identical_family_bound, sample_distinct_family_value, verify_identical_family,
    DisjAnswer, HardInstance, HardInstanceSpec, LayeredUniverse,
};
use uniqcov::kernel::{build_kernel, solve_in_kernel, KernelBuffer};
use uniqcov::oracle::exact_max_unique_coverage;
use uniqcov::setsys::harmonic;
use uniqcov::streaming::{
    spawn_subsample_instances, stream_unique_coverage_pipeline, stream_unique_top_sets, StreamParams,
};
use uniqcov::SetSystem;

const SLACK: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn from_masks(n: u32, masks: &[u32], k: usize) -> SetSystem {
    let sets = masks.iter().map(|&mask| (1..=n).filter(|x| mask >> (x - 1) & 1 == 1).collect()).collect();
    SetSystem::new(n, sets, k).unwrap()
}

/// Every non-decreasing sequence of `m` masks below `2^n`, i.e. every
/// multiset of `m` subsets of `[n]` (the empty set included).
fn for_each_multiset(n: u32, m: usize, mut f: impl FnMut(&[u32])) {
    let top = 1u32 << n;
    let mut masks = vec![0u32; m];
    loop {
        f(&masks);
        let mut pos = m;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if masks[pos] + 1 < top {
                let v = masks[pos] + 1;
                for slot in &mut masks[pos..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

fn random_sets(r: &mut ChaCha8Rng, n: u32, m: usize, density: f64) -> Vec<Vec<u32>> {
    (0..m).map(|_| (1..=n).filter(|_| r.random_bool(density)).collect()).collect()
}

fn ug_holds(s: &SetSystem) -> bool {
    let c = s.all();
    let b = unique_greedy(&c).unwrap();
    b.unique_coverage() as f64 * harmonic(c.len() as u64) >= c.coverage_size() as f64 * (1.0 - SLACK)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (mut runs, mut fails) = (0usize, 0usize);
    let mut r = rng(1);
    for _ in 0..1000 {
        let n = r.random_range(1..=40u32);
        let m = r.random_range(1..=12usize);
        let density = r.random_range(0.05..0.6);
        let s = SetSystem::unconstrained(n, random_sets(&mut r, n, m, density)).unwrap();
        runs += 1;
        fails += usize::from(!ug_holds(&s));
    }
    let mut exhaustive = 0usize;
    for m in 1..=4 {
        for_each_multiset(6, m, |masks| {
            exhaustive += 1;
            fails += usize::from(!ug_holds(&from_masks(6, masks, m)));
        });
    }
    runs += exhaustive;
    let elapsed = start.elapsed();
    outcome(
        fails == 0 && elapsed < Duration::from_secs(5),
        format!("{runs} instances ({exhaustive} exhaustive), {fails} violations, {elapsed:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let (mut instances, mut fails, mut overlap_fails) = (0usize, 0usize, 0usize);
    while instances < 500 {
        let r_cap = r.random_range(2..=5usize);
        let spec = RandomSpec {
            n: r.random_range(8..=40),
            m: r.random_range(3..=12),
            k: 1,
            r_max: Some(r_cap),
            d_max: Some(r.random_range(2..=10)),
            seed: r.random(),
        };
        let s = random_instance(&spec).unwrap();
        let c = s.all();
        let measured = c.max_frequency();
        if !(2..=5).contains(&measured) {
            continue;
        }
        instances += 1;
        let psi = c.coverage_size() as f64;
        for eps in [0.1, 0.25, 0.5] {
            let out = unique_greedy_freq_detailed(&c, None, eps).unwrap();
            if (out.solution.unique_coverage() as f64) < ugf_ratio(measured, eps) * psi - SLACK {
                fails += 1;
            }
            if out.overlap_sum as f64 > eps * psi + SLACK {
                overlap_fails += 1;
            }
        }
    }
    outcome(
        fails == 0 && overlap_fails == 0,
        format!("{instances} instances x 3 eps, {fails} ratio violations, {overlap_fails} overlap-sum violations"),
    )
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let (mut instances, mut fails) = (0usize, 0usize);
    while instances < 500 {
        let spec = RandomSpec {
            n: r.random_range(6..=40),
            m: r.random_range(2..=12),
            k: 1,
            r_max: None,
            d_max: Some(r.random_range(2..=6)),
            seed: r.random(),
        };
        let s = random_instance(&spec).unwrap();
        let c = s.all();
        let d = c.max_set_size();
        if !(2..=6).contains(&d) {
            continue;
        }
        instances += 1;
        let psi = c.coverage_size() as f64;
        let tuned = RatioBoundConfig::tuned(s.m(), c.max_frequency().max(1), d).unwrap();
        for (eps_d, eps_hat) in [(0.5, 0.5), (0.25, 0.1), (tuned.eps_d, tuned.eps_hat_d)] {
            let b = unique_greedy_size(&c, eps_d, eps_hat).unwrap();
            if (b.unique_coverage() as f64) < ugs_ratio(d, eps_d, eps_hat) * psi - SLACK {
                fails += 1;
            }
        }
    }
    outcome(fails == 0, format!("{instances} instances x 3 parameter pairs, {fails} violations"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    let (mut runs, mut fails, mut proper) = (0usize, 0usize, 0usize);
    for _ in 0..200 {
        let m = r.random_range(4..=14usize);
        let k = r.random_range(1..=3usize);
        let spec = RandomSpec {
            n: r.random_range(14..=40),
            m,
            k,
            r_max: Some(r.random_range(1..=3)),
            d_max: Some(r.random_range(2..=12)),
            seed: r.random(),
        };
        let s = random_instance(&spec).unwrap();
        let opt = exact_max_unique_coverage(&s).unwrap().unique_coverage() as f64;
        let phi = phi_bound(k, s.max_frequency().max(1), s.max_set_size().max(1)).unwrap();
        for eps in [0.3, 0.5] {
            let buf = build_kernel(&s, eps, phi).unwrap();
            proper += usize::from(buf.len() < s.m());
            let got = solve_in_kernel(&buf, k).unwrap().unique_coverage as f64;
            runs += 1;
            if got < (1.0 - eps) * opt - SLACK {
                fails += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        fails == 0 && elapsed < Duration::from_secs(60),
        format!("{runs} runs ({proper} with a proper kernel), {fails} violations, {elapsed:.2?}"),
    )
}

fn phi_sound(s: &SetSystem, fails: &mut usize) {
    for k in 1..=3usize.min(s.m()) {
        let sk = s.with_k(k).unwrap();
        let o = exact_max_unique_coverage(&sk).unwrap();
        let (u, psi) = (o.unique_coverage() as f64, o.coverage_size() as f64);
        let global = phi_bound(k, s.max_frequency().max(1), s.max_set_size().max(1)).unwrap();
        let local = phi_bound(k, o.max_frequency().max(1), o.max_set_size().max(1)).unwrap();
        if global * u < psi * (1.0 - SLACK) || local * u < psi * (1.0 - SLACK) {
            *fails += 1;
        }
    }
}

fn criterion_5() -> Outcome {
    let (mut instances, mut fails) = (0usize, 0usize);
    for (n, max_m) in [(6u32, 3usize), (5, 4), (4, 5)] {
        for m in 1..=max_m {
            for_each_multiset(n, m, |masks| {
                instances += 1;
                phi_sound(&from_masks(n, masks, 1), &mut fails);
            });
        }
    }
    let mut r = rng(5);
    for _ in 0..2000 {
        let masks: Vec<u32> = (0..5).map(|_| r.random_range(0..64)).collect();
        instances += 1;
        phi_sound(&from_masks(6, &masks, 1), &mut fails);
    }
    outcome(fails == 0, format!("{instances} instances, all k <= 3, {fails} violations"))
}

fn criterion_6() -> Outcome {
    let (mut checks, mut fails) = (0usize, 0usize);
    let mut k3a2 = Vec::new();
    for k in 2..=6usize {
        for a in 1..=4u64 {
            for seed in 0..10u64 {
                let layers = LayeredUniverse::new(&HardInstanceSpec::new(k, a, 8, DisjAnswer::No, seed).unwrap()).unwrap();
                for i in 0..8 {
                    for j in 0..k {
                        let profile = layers.layer_profile(&layers.player_set(i, j).unwrap());
                        for t in 1..=k {
                            checks += 1;
                            if profile[t - 1] * k != t * layers.layer_size(t) {
                                fails += 1;
                            }
                        }
                    }
                    checks += 1;
                    match verify_identical_family(&layers, i) {
                        Ok(v) if v as f64 >= identical_family_bound(k, a) * (1.0 - SLACK) => {
                            if (k, a) == (3, 2) {
                                k3a2.push(v);
                            }
                        }
                        _ => fails += 1,
                    }
                }
            }
        }
    }
    let k3a2_ok = !k3a2.is_empty() && k3a2.iter().all(|&v| v == 15);
    outcome(
        fails == 0 && k3a2_ok,
        format!("{checks} layer/family checks, {fails} failures, k=3 a=2 values all 15: {k3a2_ok}"),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let (k, m) = (13usize, 64usize);
    let a = default_a(k, m);
    let spec = HardInstanceSpec::new(k, a, m, DisjAnswer::Yes, 7).unwrap();
    let inst = HardInstance::generate(spec).unwrap();
    let i_star = inst.inputs.i_star.unwrap();
    let yes_bound = identical_family_bound(k, a);
    let identical = verify_identical_family(&inst.layers, i_star);
    let identical_ok = matches!(identical, Ok(v) if v as f64 >= yes_bound);
    let no_bound = distinct_family_bound(k, a);
    let (mut samples, mut violations, mut max) = (0usize, 0usize, 0usize);
    let per_ell = 200usize.div_ceil(k);
    for ell in 1..=k {
        let stats = sample_distinct_family_value(&inst.layers, ell, per_ell, 1000 + ell as u64).unwrap();
        samples += stats.trials;
        violations += stats.violations;
        max = max.max(stats.total_max);
    }
    let elapsed = start.elapsed();
    let allowed = samples as f64 * 0.05;
    outcome(
        identical_ok && violations as f64 <= allowed && elapsed < Duration::from_secs(300),
        format!(
            "a={a}, n={}, identical family {:?} vs {yes_bound:.1}; {samples} distinct samples, max {max} vs {no_bound:.1}, {violations} at or above; {elapsed:.2?}",
            inst.layers.n(),
            identical.ok()
        ),
    )
}

fn criterion_8() -> Outcome {
    let eps = 0.3;
    let (mut trials, mut holds, mut subsampled) = (0usize, 0usize, 0usize);
    for seed in 0..200u64 {
        let mut r = rng(8_000 + seed);
        let n = 6000u32;
        let m = r.random_range(3..=6usize);
        let k = r.random_range(1..=2usize);
        let sets = (0..m)
            .map(|_| {
                let size = r.random_range(500..=3000usize);
                let mut all: Vec<u32> = (1..=n).collect();
                all.shuffle(&mut r);
                all.truncate(size);
                all
            })
            .collect();
        let s = SetSystem::new(n, sets, k).unwrap();
        let opt = exact_max_unique_coverage(&s).unwrap().unique_coverage() as f64;
        let insts = spawn_subsample_instances(n, m, k, eps, 4.0, seed).unwrap();
        let Some(inst) = insts.iter().rev().find(|i| i.guess_v as f64 <= opt) else {
            continue;
        };
        trials += 1;
        subsampled += usize::from(inst.p < 1.0);
        let sub = SetSystem::new(n, s.sets().iter().map(|set| inst.subsample(set)).collect(), k).unwrap();
        let opt_sub = exact_max_unique_coverage(&sub).unwrap().unique_coverage() as f64;
        let scaled = inst.p * opt;
        if opt_sub >= scaled * (1.0 - eps) && opt_sub <= scaled * (1.0 + eps) {
            holds += 1;
        }
    }
    let rate = holds as f64 / trials.max(1) as f64;
    outcome(
        trials == 200 && subsampled == trials && rate >= 0.90,
        format!("{holds}/{trials} trials within (1±ε)·p·OPT ({subsampled} with p < 1), rate {rate:.3}"),
    )
}

fn criterion_9() -> Outcome {
    // Part one: p forced to 1.
    let mut r = rng(9);
    let (mut runs, mut fails, mut p_one) = (0usize, 0usize, true);
    for _ in 0..120 {
        let n = r.random_range(4..=20u32);
        let m = r.random_range(2..=10usize);
        let k = r.random_range(1..=3usize.min(m));
        let density = r.random_range(0.1..0.5);
        let s = SetSystem::new(n, random_sets(&mut r, n, m, density), k).unwrap();
        let opt = exact_max_unique_coverage(&s).unwrap().unique_coverage() as f64;
        let phi = phi_bound(k, s.max_frequency().max(1), s.max_set_size().max(1)).unwrap();
        for eps in [0.05, 0.1] {
            let params = StreamParams::new(k, eps, 1e9, r.random()).unwrap();
            let rep = stream_unique_coverage_pipeline(&s, &params, None).unwrap();
            p_one &= rep.instances.iter().all(|i| i.p == 1.0);
            runs += 1;
            let v = rep.value as f64;
            if v < (1.0 / (2.0 * phi) - 3.0 * eps) * opt - SLACK || v > opt {
                fails += 1;
            }
        }
    }
    // Part two: streaming top sets with subsampling active.
    let eps = 0.2;
    let (mut ts_runs, mut ts_ok, mut active) = (0usize, 0usize, 0usize);
    for seed in 0..100u64 {
        let mut r = rng(9_000 + seed);
        let n = 4000u32;
        let m = r.random_range(6..=12usize);
        let k = r.random_range(1..=2usize);
        let sets = (0..m)
            .map(|_| {
                let size = r.random_range(300..=2000usize);
                let mut all: Vec<u32> = (1..=n).collect();
                all.shuffle(&mut r);
                all.truncate(size);
                all
            })
            .collect();
        let s = SetSystem::new(n, sets, k).unwrap();
        let opt = exact_max_unique_coverage(&s).unwrap().unique_coverage() as f64;
        let params = StreamParams::new(k, eps, 1.0, seed).unwrap();
        let rep = stream_unique_top_sets(&s, s.max_frequency().max(2), &params).unwrap();
        ts_runs += 1;
        active += usize::from(rep.p < 1.0);
        let full = s.collection(rep.solution.clone()).unwrap().unique_coverage() as f64;
        if full >= (1.0 - 3.0 * eps) * opt - SLACK {
            ts_ok += 1;
        }
    }
    let rate = ts_ok as f64 / ts_runs as f64;
    outcome(
        fails == 0 && p_one && active == ts_runs && rate >= 0.95,
        format!(
            "pipeline: {runs} runs at p = 1, {fails} violations; top sets: {ts_ok}/{ts_runs} within (1−3ε)·OPT, {active} with p < 1"
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let (mut pairs, mut fails) = (0usize, 0usize);
    while pairs < 10_000 {
        let n = r.random_range(1..=20u32);
        let m = r.random_range(1..=10usize);
        let density = r.random_range(0.05..0.7);
        let s = SetSystem::unconstrained(n, random_sets(&mut r, n, m, density)).unwrap();
        let ids: Vec<usize> = (0..m).filter(|_| r.random_bool(0.6)).collect();
        if ids.is_empty() {
            continue;
        }
        let c = s.collection(ids.clone()).unwrap();
        let t = ids[r.random_range(0..ids.len())];
        pairs += 1;
        let p = c.coverage_profile();
        let mut union: Vec<u32> = p.unique.iter().chain(&p.non_unique).copied().collect();
        union.sort_unstable();
        let disjoint = p.unique.iter().all(|x| p.non_unique.binary_search(x).is_err());
        let mut expected: Vec<u32> = p.non_unique.clone();
        expected.extend(p.unique.iter().filter(|x| s.set(t).binary_search(x).is_err()));
        expected.sort_unstable();
        if !disjoint || union != p.covered || c.without(t).coverage() != expected.as_slice() {
            fails += 1;
        }
    }
    let mut perm_fails = 0usize;
    let spec = RandomSpec { n: 30, m: 20, k: 1, r_max: None, d_max: Some(6), seed: 10 };
    let s = random_instance(&spec).unwrap();
    let mut reference = KernelBuffer::new(7, s.n());
    for id in 0..s.m() {
        reference.insert_streamed(id, s.set(id).to_vec());
    }
    let mut order: Vec<usize> = (0..s.m()).collect();
    for _ in 0..100 {
        order.shuffle(&mut r);
        let mut buf = KernelBuffer::new(7, s.n());
        for &id in &order {
            buf.insert_streamed(id, s.set(id).to_vec());
        }
        if buf.ids() != reference.ids() {
            perm_fails += 1;
        }
    }
    outcome(
        fails == 0 && perm_fails == 0,
        format!("{pairs} (collection, T) pairs, {fails} failures; 100 permutations of a 20-set stream, {perm_fails} mismatches"),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("1 UniqueGreedy ratio", criterion_1),
        ("2 UniqueGreedyFreq ratio", criterion_2),
        ("3 UniqueGreedySize ratio", criterion_3),
        ("4 kernel approximation", criterion_4),
        ("5 phi soundness", criterion_5),
        ("6 hard-instance identities", criterion_6),
        ("7 hard-instance separation at k = 13", criterion_7),
        ("8 subsampling two-sided bound", criterion_8),
        ("9 streaming pipeline and top sets", criterion_9),
        ("10 structural identities", criterion_10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        println!(
            "{} criterion {name}: {} [{:.2?}]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed()
        );
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
