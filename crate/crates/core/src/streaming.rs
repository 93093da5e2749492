//! Set-streaming engine.
//!
//! The universe is subsampled once per guess `v = 2^i` of the optimum:
//! element `x` survives with probability `p = min(1, c·k·log2(m)/(ε²v))`.
//! Each guess wraps its own per-instance algorithm (a kernel buffer or a
//! threshold greedy), and an instance is terminated as soon as one
//! subsampled set grows beyond `(2c·k·log2(m)/ε²)(1+ε)`. After the pass the
//! smallest surviving guess is selected.

use std::collections::HashSet;

use rand::Rng;

use crate::algorithms::{best_unique_subcollection, phi_bound, RatioBoundConfig};
use crate::error::{domain, Error, Result};
use crate::kernel::{kernel_capacity, solve_in_kernel_with_budget, KernelBuffer};
use crate::oracle::DEFAULT_ORACLE_BUDGET;
use crate::setsys::{ElementId, SetId, SetSystem, SubCollection};
use crate::util::derived_rng;

const MERSENNE_61: u64 = (1 << 61) - 1;

/// Highest independence degree used by [`KeepHash`].
pub const MAX_HASH_INDEPENDENCE: usize = 32;

/// Default constant in the sampling probability.
pub const DEFAULT_C: f64 = 4.0;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MERSENNE_61 as u128) as u64
}

/// Keep/drop decision per element: a random polynomial of degree `t − 1`
/// over `GF(2^61 − 1)`, which is a `t`-wise independent family. Element `x`
/// is kept iff `h(x) < p·(2^61 − 1)`.
#[derive(Clone, Debug)]
pub struct KeepHash {
    coeffs: Vec<u64>,
    threshold: u64,
    keep_all: bool,
}

impl KeepHash {
    pub fn new(p: f64, independence: usize, seed: u64, stream: u64) -> Self {
        let mut rng = derived_rng(seed, stream);
        let coeffs = (0..independence.max(1)).map(|_| rng.random_range(0..MERSENNE_61)).collect();
        let keep_all = p >= 1.0;
        let threshold = if keep_all { MERSENNE_61 } else { (p * MERSENNE_61 as f64) as u64 };
        Self { coeffs, threshold, keep_all }
    }

    pub fn independence(&self) -> usize {
        self.coeffs.len()
    }

    fn eval(&self, x: ElementId) -> u64 {
        let x = x as u64;
        self.coeffs.iter().fold(0, |acc, &c| (mul_mod(acc, x) + c) % MERSENNE_61)
    }

    pub fn keeps(&self, x: ElementId) -> bool {
        self.keep_all || self.eval(x) < self.threshold
    }
}

/// Shared parameters of a subsampled stream.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StreamParams {
    pub k: usize,
    pub eps: f64,
    pub c: f64,
    pub seed: u64,
}

impl StreamParams {
    pub fn new(k: usize, eps: f64, c: f64, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(domain("k must be >= 1"));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(domain(format!("eps must lie in (0, 1), got {eps}")));
        }
        if !c.is_finite() || c <= 0.0 {
            return Err(domain(format!("c must be a positive number, got {c}")));
        }
        Ok(Self { k, eps, c, seed })
    }
}

/// `log2 m`, taken at `m = 2` for a single-set stream so that the sampling
/// rate stays positive.
fn log2_m(m: usize) -> f64 {
    (m.max(2) as f64).log2()
}

/// One guess of the optimum together with its subsampled universe.
#[derive(Clone, Debug)]
pub struct SubsampleInstance {
    pub guess_v: u64,
    pub p: f64,
    pub size_cap: f64,
    pub terminated: bool,
    hash: KeepHash,
}

impl SubsampleInstance {
    /// The kept part of `set`.
    pub fn subsample(&self, set: &[ElementId]) -> Vec<ElementId> {
        if self.hash.keep_all {
            set.to_vec()
        } else {
            set.iter().copied().filter(|&x| self.hash.keeps(x)).collect()
        }
    }

    pub fn keeps(&self, x: ElementId) -> bool {
        self.hash.keeps(x)
    }

    pub fn hash(&self) -> &KeepHash {
        &self.hash
    }
}

/// One instance per guess `v = 2^i`, `i = 1..=⌈log2 n⌉` (a single guess
/// `v = 2` when `n = 1`), each with an independently seeded hash.
pub fn spawn_subsample_instances(n: u32, m: usize, k: usize, eps: f64, c: f64, seed: u64) -> Result<Vec<SubsampleInstance>> {
    if n < 1 {
        return Err(domain("universe size must be >= 1"));
    }
    let params = StreamParams::new(k, eps, c, seed)?;
    Ok(spawn(n, m, &params))
}

fn spawn(n: u32, m: usize, params: &StreamParams) -> Vec<SubsampleInstance> {
    let guesses = (n as f64).log2().ceil().max(1.0) as u32;
    let base = params.c * params.k as f64 * log2_m(m) / (params.eps * params.eps);
    let independence = ((params.k as f64 * log2_m(m) / (params.eps * params.eps)).ceil() as usize)
        .clamp(1, MAX_HASH_INDEPENDENCE);
    (1..=guesses)
        .map(|i| {
            let v = 1u64 << i;
            let p = (base / v as f64).min(1.0);
            SubsampleInstance {
                guess_v: v,
                p,
                size_cap: 2.0 * base * (1.0 + params.eps),
                terminated: false,
                hash: KeepHash::new(p, independence, params.seed, i as u64),
            }
        })
        .collect()
}

/// Per-instance algorithm fed with subsampled sets.
pub trait StreamAlgorithm {
    fn accept(&mut self, id: SetId, set: Vec<ElementId>);
    /// Number of sets currently held.
    fn stored_sets(&self) -> usize;
}

impl StreamAlgorithm for KernelBuffer {
    fn accept(&mut self, id: SetId, set: Vec<ElementId>) {
        self.insert_streamed(id, set);
    }

    fn stored_sets(&self) -> usize {
        self.len()
    }
}

/// What [`SubsampledRun::ingest`] did with a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IngestOutcome {
    Forwarded,
    /// The subsampled set exceeded the size cap; the instance is now dead.
    Terminated,
    /// The instance was already terminated.
    Ignored,
}

/// A subsample instance and the algorithm state it feeds.
#[derive(Clone, Debug)]
pub struct SubsampledRun<A> {
    pub instance: SubsampleInstance,
    state: Option<A>,
}

impl<A: StreamAlgorithm> SubsampledRun<A> {
    pub fn new(instance: SubsampleInstance, state: A) -> Self {
        Self { instance, state: Some(state) }
    }

    pub fn ingest(&mut self, id: SetId, set: &[ElementId]) -> IngestOutcome {
        if self.instance.terminated {
            return IngestOutcome::Ignored;
        }
        let sub = self.instance.subsample(set);
        if sub.len() as f64 > self.instance.size_cap {
            self.instance.terminated = true;
            self.state = None;
            return IngestOutcome::Terminated;
        }
        self.state.as_mut().expect("live instance has state").accept(id, sub);
        IngestOutcome::Forwarded
    }

    pub fn state(&self) -> Option<&A> {
        self.state.as_ref()
    }

    pub fn stored_sets(&self) -> usize {
        self.state.as_ref().map_or(0, A::stored_sets)
    }
}

/// Fans every streamed set out to all subsample instances.
#[derive(Clone, Debug)]
pub struct SubsampledStream<A> {
    n: u32,
    runs: Vec<SubsampledRun<A>>,
    seen: usize,
}

impl<A: StreamAlgorithm> SubsampledStream<A> {
    /// `m` is the announced stream length; it only enters through `log2 m`.
    pub fn new(n: u32, m: usize, params: &StreamParams, mut make: impl FnMut(&SubsampleInstance) -> A) -> Result<Self> {
        if n < 1 {
            return Err(domain("universe size must be >= 1"));
        }
        let runs = spawn(n, m, params)
            .into_iter()
            .map(|inst| {
                let state = make(&inst);
                SubsampledRun::new(inst, state)
            })
            .collect();
        Ok(Self { n, runs, seen: 0 })
    }

    /// Ingests the next set; its ID is its position in the stream. The set
    /// must be sorted and duplicate-free.
    pub fn push(&mut self, set: &[ElementId]) -> Result<()> {
        if let Some(&x) = set.iter().find(|&&x| x == 0 || x > self.n) {
            return Err(Error::ElementOutOfRange { set: self.seen, element: x, n: self.n });
        }
        let id = self.seen;
        self.seen += 1;
        for run in &mut self.runs {
            run.ingest(id, set);
        }
        Ok(())
    }

    pub fn sets_seen(&self) -> usize {
        self.seen
    }

    pub fn runs(&self) -> &[SubsampledRun<A>] {
        &self.runs
    }

    /// Index of the smallest non-terminated guess.
    pub fn selected_index(&self) -> Result<usize> {
        if self.seen == 0 {
            return Err(Error::EmptyStream);
        }
        self.runs.iter().position(|r| !r.instance.terminated).ok_or(Error::AllInstancesTerminated)
    }
}

/// Per-guess solution state for [`ThresholdGreedy`].
#[derive(Clone, Debug)]
struct GuessState {
    threshold: f64,
    covered: HashSet<ElementId>,
    picks: Vec<(SetId, Vec<ElementId>)>,
}

/// Single-pass Max Coverage: for each guess `g = (1+ε)^j` of the optimum,
/// a set is added while fewer than `k` are held and its marginal coverage
/// is at least `g/(2k)`. The best-coverage guess wins.
#[derive(Clone, Debug)]
pub struct ThresholdGreedy {
    k: usize,
    guesses: Vec<GuessState>,
}

impl ThresholdGreedy {
    /// Guesses run from 1 up to the first power of `1+ε` that reaches
    /// `max_value`.
    pub fn new(k: usize, eps: f64, max_value: u32) -> Self {
        let mut guesses = Vec::new();
        let mut g = 1.0f64;
        loop {
            guesses.push(GuessState { threshold: g / (2.0 * k as f64), covered: HashSet::new(), picks: Vec::new() });
            if g >= max_value as f64 {
                break;
            }
            g *= 1.0 + eps;
        }
        Self { k, guesses }
    }

    pub fn guess_count(&self) -> usize {
        self.guesses.len()
    }

    /// Sets held by the best guess, with their coverage. Ties go to the
    /// smallest guess.
    pub fn best(&self) -> (Vec<(SetId, &[ElementId])>, usize) {
        let best = self
            .guesses
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.covered.len().cmp(&b.1.covered.len()).then(b.0.cmp(&a.0)))
            .map(|(_, g)| g)
            .expect("at least one guess");
        (best.picks.iter().map(|(id, s)| (*id, s.as_slice())).collect(), best.covered.len())
    }
}

impl StreamAlgorithm for ThresholdGreedy {
    fn accept(&mut self, id: SetId, set: Vec<ElementId>) {
        for guess in &mut self.guesses {
            if guess.picks.len() >= self.k {
                continue;
            }
            let gain = set.iter().filter(|x| !guess.covered.contains(x)).count();
            if gain > 0 && gain as f64 >= guess.threshold {
                guess.covered.extend(set.iter().copied());
                guess.picks.push((id, set.clone()));
            }
        }
    }

    fn stored_sets(&self) -> usize {
        self.guesses.iter().map(|g| g.picks.len()).sum()
    }
}

/// Offline run of [`ThresholdGreedy`] over the sets of `sys` in ID order,
/// with `k = sys.k()`.
pub fn threshold_greedy_max_coverage(sys: &SetSystem, eps: f64) -> Result<SubCollection<'_>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    let mut tg = ThresholdGreedy::new(sys.k(), eps, sys.n());
    for (id, set) in sys.sets().iter().enumerate() {
        tg.accept(id, set.clone());
    }
    let ids: Vec<SetId> = tg.best().0.into_iter().map(|(id, _)| id).collect();
    sys.collection(ids)
}

/// Outcome of one subsample instance after the pass.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSummary {
    pub guess_v: u64,
    pub p: f64,
    pub terminated: bool,
    pub stored_sets: usize,
    /// Original set IDs of this instance's solution (empty if terminated).
    pub solution: Vec<SetId>,
    /// Unique coverage of the solution on the subsampled universe.
    pub value: usize,
}

/// Result of a streaming run.
#[derive(Clone, Debug, PartialEq)]
pub struct StreamReport {
    pub chosen_guess: u64,
    pub p: f64,
    pub solution: Vec<SetId>,
    /// Unique coverage of `solution` on the selected subsampled universe.
    pub value: usize,
    /// `value / p`; the exact full-universe unique coverage when `p = 1`.
    pub est_value: f64,
    pub exact: bool,
    pub selected: usize,
    pub instances: Vec<InstanceSummary>,
}

fn report(
    runs_meta: Vec<(u64, f64, bool, usize)>,
    solutions: Vec<Option<(Vec<SetId>, usize)>>,
    selected: usize,
) -> StreamReport {
    let instances: Vec<InstanceSummary> = runs_meta
        .into_iter()
        .zip(solutions)
        .map(|((guess_v, p, terminated, stored_sets), sol)| {
            let (solution, value) = sol.unwrap_or_default();
            InstanceSummary { guess_v, p, terminated, stored_sets, solution, value }
        })
        .collect();
    let chosen = &instances[selected];
    StreamReport {
        chosen_guess: chosen.guess_v,
        p: chosen.p,
        solution: chosen.solution.clone(),
        value: chosen.value,
        est_value: chosen.value as f64 / chosen.p,
        exact: chosen.p >= 1.0,
        selected,
        instances,
    }
}

fn meta<A: StreamAlgorithm>(runs: &[SubsampledRun<A>]) -> Vec<(u64, f64, bool, usize)> {
    runs.iter().map(|r| (r.instance.guess_v, r.instance.p, r.instance.terminated, r.stored_sets())).collect()
}

/// Streaming UniqueTopSets: a kernel buffer per subsample instance, sized
/// for frequency bound `r_bound` and `φ = phi_bound(k, r_bound, n)`.
#[derive(Clone, Debug)]
pub struct TopSetsStream {
    k: usize,
    budget: u64,
    inner: SubsampledStream<KernelBuffer>,
}

impl TopSetsStream {
    pub fn new(n: u32, m: usize, r_bound: usize, params: &StreamParams) -> Result<Self> {
        let r = r_bound.max(2);
        let phi = phi_bound(params.k, r, n.max(1) as usize)?;
        let capacity = kernel_capacity(params.k, r, params.eps, phi)?;
        let inner = SubsampledStream::new(n, m, params, |_| KernelBuffer::new(capacity, n))?;
        Ok(Self { k: params.k, budget: DEFAULT_ORACLE_BUDGET, inner })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn push(&mut self, set: &[ElementId]) -> Result<()> {
        self.inner.push(set)
    }

    pub fn runs(&self) -> &[SubsampledRun<KernelBuffer>] {
        self.inner.runs()
    }

    pub fn finish(self) -> Result<StreamReport> {
        let selected = self.inner.selected_index()?;
        let solutions = self
            .inner
            .runs()
            .iter()
            .map(|run| {
                run.state()
                    .map(|buf| solve_in_kernel_with_budget(buf, self.k, self.budget).map(|s| (s.ids, s.unique_coverage)))
                    .transpose()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(report(meta(self.inner.runs()), solutions, selected))
    }
}

/// Streaming polynomial-time pipeline: threshold greedy per subsample
/// instance, then the best of the three offline algorithms on the stored
/// collection.
#[derive(Clone, Debug)]
pub struct PipelineStream {
    n: u32,
    cfg: Option<RatioBoundConfig>,
    inner: SubsampledStream<ThresholdGreedy>,
}

impl PipelineStream {
    /// With `cfg = None` the error parameters are tuned per instance to the
    /// measured `(|C|, r, d)` of the stored collection.
    pub fn new(n: u32, m: usize, params: &StreamParams, cfg: Option<RatioBoundConfig>) -> Result<Self> {
        let (k, eps) = (params.k, params.eps);
        let inner = SubsampledStream::new(n, m, params, |_| ThresholdGreedy::new(k, eps, n))?;
        Ok(Self { n, cfg, inner })
    }

    pub fn push(&mut self, set: &[ElementId]) -> Result<()> {
        self.inner.push(set)
    }

    pub fn runs(&self) -> &[SubsampledRun<ThresholdGreedy>] {
        self.inner.runs()
    }

    fn solve(&self, tg: &ThresholdGreedy) -> Result<(Vec<SetId>, usize)> {
        let (picks, _) = tg.best();
        if picks.is_empty() {
            return Ok((Vec::new(), 0));
        }
        let local = SetSystem::unconstrained(self.n, picks.iter().map(|(_, s)| s.to_vec()).collect())?;
        let all = local.all();
        let cfg = match self.cfg {
            Some(cfg) => cfg,
            None => RatioBoundConfig::tuned(local.m(), all.max_frequency().max(1), all.max_set_size().max(1))?,
        };
        let best = best_unique_subcollection(&all, &cfg)?;
        let value = best.unique_coverage();
        Ok((best.ids().iter().map(|&i| picks[i].0).collect(), value))
    }

    pub fn finish(self) -> Result<StreamReport> {
        let selected = self.inner.selected_index()?;
        let solutions = self
            .inner
            .runs()
            .iter()
            .map(|run| run.state().map(|tg| self.solve(tg)).transpose())
            .collect::<Result<Vec<_>>>()?;
        Ok(report(meta(self.inner.runs()), solutions, selected))
    }
}

/// Streams the sets of `sys` through [`TopSetsStream`] with `k = params.k`.
pub fn stream_unique_top_sets(sys: &SetSystem, r_bound: usize, params: &StreamParams) -> Result<StreamReport> {
    let mut s = TopSetsStream::new(sys.n(), sys.m(), r_bound, params)?;
    for set in sys.sets() {
        s.push(set)?;
    }
    s.finish()
}

/// Streams the sets of `sys` through [`PipelineStream`].
pub fn stream_unique_coverage_pipeline(
    sys: &SetSystem,
    params: &StreamParams,
    cfg: Option<RatioBoundConfig>,
) -> Result<StreamReport> {
    let mut s = PipelineStream::new(sys.n(), sys.m(), params, cfg)?;
    for set in sys.sets() {
        s.push(set)?;
    }
    s.finish()
}
