//! Layered sunflower instances from the streaming lower bound.
//!
//! The universe is split into layers `U_1..U_k` with
//! `|U_t| = k(k−1)⌈a/t⌉`. For every index `i` and layer `t` a random
//! `q_t = (k−t)/(k−1)` fraction `Ũ_t^i` of `U_t` is cut into `k` equal parts;
//! player `j`'s set `S_j^i` takes part `j` of every `Ũ_t^i` plus the shared
//! remainder `U_t \ Ũ_t^i`. Players stream `S_j^i` for `i ∈ D_j`, where the
//! `D_j` form a k-player disjointness input.
//!
//! Indices `i` and players `j` are 0-based; layers `t` run over `1..=k`.

use std::sync::OnceLock;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::setsys::{harmonic, ElementId, FrequencyCounter, SetSystem};
use crate::util::derived_rng;

/// Answer of the disjointness instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisjAnswer {
    /// Pairwise-disjoint inputs.
    No,
    /// Exactly one index common to every input.
    Yes,
}

impl DisjAnswer {
    pub fn as_str(self) -> &'static str {
        match self {
            DisjAnswer::No => "no",
            DisjAnswer::Yes => "yes",
        }
    }
}

impl std::str::FromStr for DisjAnswer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "no" => Ok(DisjAnswer::No),
            "yes" => Ok(DisjAnswer::Yes),
            other => Err(domain(format!("answer must be `no` or `yes`, got `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HardInstanceSpec {
    pub k: usize,
    pub a: u64,
    pub m: usize,
    pub answer: DisjAnswer,
    pub seed: u64,
}

impl HardInstanceSpec {
    pub fn new(k: usize, a: u64, m: usize, answer: DisjAnswer, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(domain(format!("hard instances need k >= 2, got {k}")));
        }
        if a < 1 {
            return Err(domain("hard instances need a >= 1"));
        }
        if m < 1 {
            return Err(domain("hard instances need m >= 1"));
        }
        Ok(Self { k, a, m, answer, seed })
    }
}

/// `⌈k·log2 m + log2(k/0.05)⌉`.
pub fn default_a(k: usize, m: usize) -> u64 {
    let k = k as f64;
    (k * (m as f64).log2() + (k / 0.05).log2()).ceil().max(1.0) as u64
}

fn ceil_div(a: u64, t: u64) -> u64 {
    a.div_ceil(t)
}

/// `a·k²·(H_k − 1)`, the guaranteed unique coverage of a same-index family.
pub fn identical_family_bound(k: usize, a: u64) -> f64 {
    a as f64 * (k * k) as f64 * (harmonic(k as u64) - 1.0)
}

/// `a·k²·(3/2 + 3/√(2k))`, the bound on player-distinct collections.
pub fn distinct_family_bound(k: usize, a: u64) -> f64 {
    let kf = k as f64;
    a as f64 * kf * kf * (1.5 + 3.0 / (2.0 * kf).sqrt())
}

/// `k(a+t)·ℓ·(1 − t/k)^{ℓ−1}`, the expected per-layer unique coverage bound.
pub fn layer_expectation_bound(k: usize, a: u64, t: usize, ell: usize) -> f64 {
    let kf = k as f64;
    kf * (a as f64 + t as f64) * ell as f64 * (1.0 - t as f64 / kf).powi(ell as i32 - 1)
}

/// Geometric mean of the two bounds; collections scoring above it are
/// classified as coming from a YES instance.
pub fn distinguisher_threshold(k: usize, a: u64) -> f64 {
    (identical_family_bound(k, a) * distinct_family_bound(k, a)).sqrt()
}

/// Layer geometry plus lazily drawn per-`(i, t)` permutations.
#[derive(Debug)]
pub struct LayeredUniverse {
    k: usize,
    a: u64,
    m: usize,
    seed: u64,
    /// `offsets[t−1]..offsets[t]` are the 0-based positions of layer `t`.
    offsets: Vec<u64>,
    perms: Vec<OnceLock<Vec<u32>>>,
}

impl LayeredUniverse {
    pub fn new(spec: &HardInstanceSpec) -> Result<Self> {
        let k = spec.k;
        let mut offsets = Vec::with_capacity(k + 1);
        let mut total: u64 = 0;
        offsets.push(0);
        for t in 1..=k as u64 {
            let size = (k as u64)
                .checked_mul(k as u64 - 1)
                .and_then(|x| x.checked_mul(ceil_div(spec.a, t)))
                .ok_or_else(|| Error::Capacity("layer size overflows".into()))?;
            total = total.checked_add(size).ok_or_else(|| Error::Capacity("universe size overflows".into()))?;
            offsets.push(total);
        }
        if total > u32::MAX as u64 {
            return Err(Error::Capacity(format!("universe size {total} exceeds the element ID range")));
        }
        let cells = spec.m.checked_mul(k).ok_or_else(|| Error::Capacity("too many indices".into()))?;
        Ok(Self {
            k,
            a: spec.a,
            m: spec.m,
            seed: spec.seed,
            offsets,
            perms: (0..cells).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.offsets[self.k] as u32
    }

    /// `|U_t|`.
    pub fn layer_size(&self, t: usize) -> usize {
        (self.offsets[t] - self.offsets[t - 1]) as usize
    }

    /// Element IDs of `U_t`.
    pub fn layer_elements(&self, t: usize) -> std::ops::RangeInclusive<ElementId> {
        (self.offsets[t - 1] as u32 + 1)..=(self.offsets[t] as u32)
    }

    /// Layer containing element `x`.
    pub fn layer_of(&self, x: ElementId) -> usize {
        self.offsets.partition_point(|&o| o < x as u64)
    }

    /// `q_t = (k−t)/(k−1)`.
    pub fn q(&self, t: usize) -> f64 {
        (self.k - t) as f64 / (self.k - 1) as f64
    }

    /// `|P^i_{t,j}| = (k−t)⌈a/t⌉`.
    pub fn part_size(&self, t: usize) -> usize {
        (self.k - t) * ceil_div(self.a, t as u64) as usize
    }

    /// `|Ũ_t^i| = k(k−t)⌈a/t⌉`.
    pub fn petal_size(&self, t: usize) -> usize {
        self.k * self.part_size(t)
    }

    /// `Σ_t q_t·|U_t|`, computed in integers as `Σ_t k(k−t)⌈a/t⌉`.
    pub fn identical_family_value(&self) -> u64 {
        (1..=self.k).map(|t| self.petal_size(t) as u64).sum()
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.m {
            return Err(domain(format!("index {i} out of range (m = {})", self.m)));
        }
        if j >= self.k {
            return Err(domain(format!("player {j} out of range (k = {})", self.k)));
        }
        Ok(())
    }

    /// Layer-local positions of `U_t` in the public random order for index
    /// `i`: the first `k·part_size` entries are `Ũ_t^i`, cut into parts in
    /// player order.
    fn order(&self, i: usize, t: usize) -> &[u32] {
        self.perms[i * self.k + (t - 1)].get_or_init(|| {
            let mut perm: Vec<u32> = (0..self.layer_size(t) as u32).collect();
            if self.part_size(t) > 0 {
                let mut rng = derived_rng(self.seed, 1 + (i * self.k + t - 1) as u64);
                perm.shuffle(&mut rng);
            }
            perm
        })
    }

    /// `P^i_{t,j}` as sorted element IDs.
    pub fn part(&self, i: usize, t: usize, j: usize) -> Result<Vec<ElementId>> {
        self.check(i, j)?;
        if t < 1 || t > self.k {
            return Err(domain(format!("layer {t} out of range [1, {}]", self.k)));
        }
        let ps = self.part_size(t);
        let base = self.offsets[t - 1] as u32 + 1;
        let mut v: Vec<ElementId> = self.order(i, t)[j * ps..(j + 1) * ps].iter().map(|&p| base + p).collect();
        v.sort_unstable();
        Ok(v)
    }

    /// `S_j^i = ∪_t [P^i_{t,j} ∪ (U_t \ Ũ_t^i)]`, sorted.
    pub fn player_set(&self, i: usize, j: usize) -> Result<Vec<ElementId>> {
        self.check(i, j)?;
        let mut out = Vec::new();
        for t in 1..=self.k {
            let ps = self.part_size(t);
            let base = self.offsets[t - 1] as u32 + 1;
            let order = self.order(i, t);
            let start = out.len();
            out.extend(order[j * ps..(j + 1) * ps].iter().map(|&p| base + p));
            out.extend(order[self.k * ps..].iter().map(|&p| base + p));
            out[start..].sort_unstable();
        }
        Ok(out)
    }

    /// `|S_j^i ∩ U_t|` for `t = 1..=k`.
    pub fn layer_profile(&self, set: &[ElementId]) -> Vec<usize> {
        let mut counts = vec![0; self.k];
        for &x in set {
            counts[self.layer_of(x) - 1] += 1;
        }
        counts
    }
}

/// Unique coverage of the same-index family `{S_1^i..S_k^i}`, checked
/// against `Σ_t q_t|U_t|` and `a·k²(H_k − 1)`.
pub fn verify_identical_family(layers: &LayeredUniverse, i: usize) -> Result<u64> {
    let mut counter = FrequencyCounter::new(layers.n());
    for j in 0..layers.k() {
        counter.add(&layers.player_set(i, j)?);
    }
    let value = counter.unique_coverage() as u64;
    let expected = layers.identical_family_value();
    if value != expected {
        return Err(Error::Construction(format!(
            "index {i}: identical family covers {value} uniquely, expected {expected}"
        )));
    }
    let bound = identical_family_bound(layers.k(), layers.a());
    if (value as f64) < bound * (1.0 - 1e-12) {
        return Err(Error::Construction(format!("index {i}: identical family value {value} is below {bound}")));
    }
    Ok(value)
}

/// Sampled unique coverage of player-distinct collections of `ℓ` sets.
#[derive(Clone, Debug, PartialEq)]
pub struct DistinctFamilyStats {
    pub ell: usize,
    pub trials: usize,
    pub layer_mean: Vec<f64>,
    pub layer_max: Vec<usize>,
    pub layer_bound: Vec<f64>,
    pub total_mean: f64,
    pub total_max: usize,
    pub total_bound: f64,
    /// Samples with total unique coverage at or above `total_bound`.
    pub violations: usize,
}

/// Draws `trials` collections of `ℓ` sets with distinct indices and random
/// players and records their unique coverage per layer and in total.
pub fn sample_distinct_family_value(
    layers: &LayeredUniverse,
    ell: usize,
    trials: usize,
    seed: u64,
) -> Result<DistinctFamilyStats> {
    let k = layers.k();
    if ell < 1 || ell > k {
        return Err(domain(format!("collection size {ell} must lie in [1, {k}]")));
    }
    if ell > layers.m() {
        return Err(domain(format!("cannot pick {ell} distinct indices out of m = {}", layers.m())));
    }
    if trials < 1 {
        return Err(domain("need at least one trial"));
    }
    let mut rng = derived_rng(seed, ell as u64);
    let mut counter = FrequencyCounter::new(layers.n());
    let mut layer_sum = vec![0usize; k];
    let mut layer_max = vec![0usize; k];
    let mut total_sum = 0usize;
    let mut total_max = 0usize;
    let mut violations = 0usize;
    let total_bound = distinct_family_bound(k, layers.a());
    for _ in 0..trials {
        let picks = sample(&mut rng, layers.m(), ell).into_vec();
        let sets: Vec<Vec<ElementId>> = picks
            .into_iter()
            .map(|i| layers.player_set(i, rng.random_range(0..k)))
            .collect::<Result<_>>()?;
        for s in &sets {
            counter.add(s);
        }
        let mut per_layer = vec![0usize; k];
        for s in &sets {
            for &x in s {
                if counter.count(x) == 1 {
                    per_layer[layers.layer_of(x) - 1] += 1;
                }
            }
        }
        for s in &sets {
            counter.remove(s);
        }
        let total: usize = per_layer.iter().sum();
        for t in 0..k {
            layer_sum[t] += per_layer[t];
            layer_max[t] = layer_max[t].max(per_layer[t]);
        }
        total_sum += total;
        total_max = total_max.max(total);
        if total as f64 >= total_bound {
            violations += 1;
        }
    }
    Ok(DistinctFamilyStats {
        ell,
        trials,
        layer_mean: layer_sum.iter().map(|&s| s as f64 / trials as f64).collect(),
        layer_max,
        layer_bound: (1..=k).map(|t| layer_expectation_bound(k, layers.a(), t, ell)).collect(),
        total_mean: total_sum as f64 / trials as f64,
        total_max,
        total_bound,
        violations,
    })
}

/// Disjointness inputs `D_1..D_k` (0-based indices, sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjInputs {
    pub sets: Vec<Vec<usize>>,
    pub i_star: Option<usize>,
}

/// Random inputs whose union has `⌈m/4⌉` indices, each player holding at
/// least one. A YES instance then moves one index of the union into every
/// player's input.
pub fn gen_disj_inputs(spec: &HardInstanceSpec) -> Result<DisjInputs> {
    let (k, m) = (spec.k, spec.m);
    if m < 4 * k {
        return Err(domain(format!("need m >= 4k for padded inputs (m = {m}, k = {k})")));
    }
    let mut rng = derived_rng(spec.seed, 0);
    let union = m.div_ceil(4);
    let mut pool: Vec<usize> = (0..m).collect();
    pool.shuffle(&mut rng);
    pool.truncate(union);
    let mut owner: Vec<usize> = (0..union).map(|pos| if pos < k { pos } else { rng.random_range(0..k) }).collect();
    let i_star = match spec.answer {
        DisjAnswer::No => None,
        DisjAnswer::Yes => {
            let pos = rng.random_range(0..union);
            owner[pos] = usize::MAX;
            Some(pool[pos])
        }
    };
    let mut sets = vec![Vec::new(); k];
    for (pos, &i) in pool.iter().enumerate() {
        if owner[pos] != usize::MAX {
            sets[owner[pos]].push(i);
        }
    }
    for d in &mut sets {
        d.extend(i_star);
        d.sort_unstable();
    }
    Ok(DisjInputs { sets, i_star })
}

/// A streamed set: index `i`, player `j` and the elements of `S_j^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamedSet {
    pub index: usize,
    pub player: usize,
    pub elements: Vec<ElementId>,
}

/// Layers plus disjointness inputs for one spec.
#[derive(Debug)]
pub struct HardInstance {
    pub spec: HardInstanceSpec,
    pub layers: LayeredUniverse,
    pub inputs: DisjInputs,
}

impl HardInstance {
    pub fn generate(spec: HardInstanceSpec) -> Result<Self> {
        let inputs = gen_disj_inputs(&spec)?;
        let layers = LayeredUniverse::new(&spec)?;
        Ok(Self { spec, layers, inputs })
    }

    /// Sets in player order, each player's indices ascending.
    pub fn emit_stream(&self) -> Result<Vec<StreamedSet>> {
        let mut out = Vec::new();
        for (j, d) in self.inputs.sets.iter().enumerate() {
            for &i in d {
                out.push(StreamedSet { index: i, player: j, elements: self.layers.player_set(i, j)? });
            }
        }
        Ok(out)
    }

    /// The stream as an instance with cardinality constraint `k`.
    pub fn to_set_system(&self) -> Result<SetSystem> {
        let sets = self.emit_stream()?.into_iter().map(|s| s.elements).collect();
        SetSystem::new(self.layers.n(), sets, self.spec.k)
    }

    /// `# hard k a m answer i* seed`, with `-` for a missing `i*`.
    pub fn metadata_line(&self) -> String {
        let i_star = self.inputs.i_star.map_or_else(|| "-".to_string(), |i| i.to_string());
        format!(
            "# hard {} {} {} {} {} {}",
            self.spec.k,
            self.spec.a,
            self.spec.m,
            self.spec.answer.as_str(),
            i_star,
            self.spec.seed
        )
    }
}

/// Parses a metadata line written by [`HardInstance::metadata_line`].
pub fn parse_metadata_line(line: &str) -> Result<(HardInstanceSpec, Option<usize>)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 8 || fields[0] != "#" || fields[1] != "hard" {
        return Err(domain(format!("not a hard-instance metadata line: `{line}`")));
    }
    let bad = |what: &str| domain(format!("bad {what} in metadata line `{line}`"));
    let k = fields[2].parse().map_err(|_| bad("k"))?;
    let a = fields[3].parse().map_err(|_| bad("a"))?;
    let m = fields[4].parse().map_err(|_| bad("m"))?;
    let answer = fields[5].parse()?;
    let i_star = match fields[6] {
        "-" => None,
        s => Some(s.parse().map_err(|_| bad("i*"))?),
    };
    let seed = fields[7].parse().map_err(|_| bad("seed"))?;
    Ok((HardInstanceSpec::new(k, a, m, answer, seed)?, i_star))
}
