//! Seeded random instances with optional frequency and set-size caps.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{domain, Result};
use crate::setsys::{ElementId, SetSystem};
use crate::util::derived_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: u32,
    pub m: usize,
    pub k: usize,
    /// Cap on the frequency of every element.
    pub r_max: Option<usize>,
    /// Cap on every set's size.
    pub d_max: Option<usize>,
    pub seed: u64,
}

/// Draws `m` nonempty sets. Each set picks a size uniformly in
/// `[1, d_max]`, then that many distinct elements among those still below
/// the frequency cap. Sizes are trimmed when the cap leaves too few slots
/// for the remaining sets.
pub fn random_instance(spec: &RandomSpec) -> Result<SetSystem> {
    let RandomSpec { n, m, k, r_max, d_max, seed } = *spec;
    if n < 1 || m < 1 {
        return Err(domain("need n >= 1 and m >= 1"));
    }
    let r = r_max.unwrap_or(m);
    let d = d_max.unwrap_or(n as usize).min(n as usize);
    if r < 1 || d < 1 {
        return Err(domain("frequency and size caps must be >= 1"));
    }
    if (m as u128) > r as u128 * n as u128 {
        return Err(domain(format!("{m} nonempty sets cannot fit with frequency cap {r} over {n} elements")));
    }
    let mut rng = derived_rng(seed, 0);
    let mut freq = vec![0usize; n as usize];
    let mut slots = r as u128 * n as u128;
    let mut sets = Vec::with_capacity(m);
    for idx in 0..m {
        let open: Vec<ElementId> = (1..=n).filter(|&x| freq[x as usize - 1] < r).collect();
        let later = (m - idx - 1) as u128;
        let room = (slots - later).min(open.len() as u128) as usize;
        let size = rng.random_range(1..=d).min(room);
        let mut set: Vec<ElementId> = sample(&mut rng, open.len(), size).into_iter().map(|p| open[p]).collect();
        set.sort_unstable();
        for &x in &set {
            freq[x as usize - 1] += 1;
        }
        slots -= size as u128;
        sets.push(set);
    }
    SetSystem::new(n, sets, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: u32, m: usize, r: Option<usize>, d: Option<usize>, seed: u64) -> RandomSpec {
        RandomSpec { n, m, k: 1, r_max: r, d_max: d, seed }
    }

    #[test]
    fn caps_are_honoured() {
        for seed in 0..20 {
            let s = random_instance(&spec(30, 12, Some(3), Some(6), seed)).unwrap();
            assert!(s.max_frequency() <= 3);
            assert!(s.max_set_size() <= 6);
            assert!(s.sets().iter().all(|x| !x.is_empty()));
        }
        let s = random_instance(&spec(30, 10, Some(1), None, 4)).unwrap();
        assert!(s.max_frequency() <= 1);
        let s = random_instance(&spec(30, 10, None, Some(1), 4)).unwrap();
        assert_eq!(s.max_set_size(), 1);
    }

    #[test]
    fn tight_frequency_cap_still_fills_every_set() {
        let s = random_instance(&spec(5, 10, Some(2), Some(5), 1)).unwrap();
        assert!(s.max_frequency() <= 2);
        assert!(s.sets().iter().all(|x| !x.is_empty()));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = random_instance(&spec(20, 8, Some(3), None, 9)).unwrap();
        let b = random_instance(&spec(20, 8, Some(3), None, 9)).unwrap();
        let c = random_instance(&spec(20, 8, Some(3), None, 10)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn infeasible_caps() {
        assert!(random_instance(&spec(3, 7, Some(2), None, 0)).is_err());
        assert!(random_instance(&spec(3, 2, Some(0), None, 0)).is_err());
        assert!(random_instance(&spec(0, 2, None, None, 0)).is_err());
        assert!(random_instance(&RandomSpec { k: 5, ..spec(10, 3, None, None, 0) }).is_err());
    }
}
