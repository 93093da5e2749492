//! Offline unique-coverage algorithms.
//!
//! Given a collection `C`, each algorithm returns `B ⊆ C` whose unique
//! coverage is within a logarithmic factor of `|ψ(C)|`:
//!
//! * [`unique_greedy`]: ratio `H_ℓ` for `ℓ = |C|`.
//! * [`unique_greedy_freq`]: ratio `1 / (1/H_ℓ̂ − ε_r)` with `ℓ̂ = ⌈r(r−1)/ε_r⌉`
//!   groups, `r` the maximum frequency.
//! * [`unique_greedy_size`]: ratio `1 / min(ε_d, (1−ε_d)·β(d, ε̂_d))`, `d` the
//!   maximum set size.
//!
//! [`phi_bound`] combines the three into an upper bound `φ` on the unique
//! coverage ratio of any collection of at most `k` sets.
//!
//! Ties are broken towards the lowest set ID (argmin over sets) and the lowest
//! group index (group allocation), so every result is deterministic.

use crate::error::{domain, Error, Result};
use crate::setsys::{harmonic, harmonic_of_ceil, ElementId, FrequencyCounter, SetId, SetSystem, SubCollection};
use crate::util::ceil_tolerant;

/// Constant multiplying `ln r` in the tuned frequency error.
pub const TUNED_C1: f64 = 9.28;
/// Additive constant in the tuned frequency error.
pub const TUNED_C2: f64 = 5.61;

/// Relative slack on the float side of `|ũ| · H_ℓ ≥ |ψ|`.
const RATIO_SLACK: f64 = 1e-12;

/// Error parameters for the three algorithms, plus the `(k, r, d)` they are
/// tuned for.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioBoundConfig {
    pub k: usize,
    pub r: usize,
    pub d: usize,
    pub eps_r: f64,
    pub eps_d: f64,
    pub eps_hat_d: f64,
}

impl RatioBoundConfig {
    pub fn new(k: usize, r: usize, d: usize, eps_r: f64, eps_d: f64, eps_hat_d: f64) -> Result<Self> {
        if k == 0 || r == 0 || d == 0 {
            return Err(domain(format!("k, r, d must be >= 1 (got k={k}, r={r}, d={d})")));
        }
        for (name, eps) in [("eps_r", eps_r), ("eps_d", eps_d), ("eps_hat_d", eps_hat_d)] {
            check_open_unit(name, eps)?;
        }
        Ok(Self { k, r, d, eps_r, eps_d, eps_hat_d })
    }

    /// Epsilons set from the closed forms: `ε_r = ε*(r)`, `ε̂_d = ε*(d)` and
    /// `ε_d = (1/β(d, ε̂_d) + 1)^{-1}`. Degenerate `r` or `d` (below 2) fall
    /// back to 1/2 since the corresponding algorithm short-circuits.
    pub fn tuned(k: usize, r: usize, d: usize) -> Result<Self> {
        let eps_r = if r >= 2 { tuned_error(r) } else { 0.5 };
        let eps_hat_d = if d >= 2 { tuned_error(d) } else { 0.5 };
        let eps_d = if d >= 2 {
            let b = beta(d, eps_hat_d);
            if b > 0.0 {
                1.0 / (1.0 / b + 1.0)
            } else {
                0.5
            }
        } else {
            0.5
        };
        Self::new(k, r, d, eps_r, eps_d, eps_hat_d)
    }

    pub fn phi(&self) -> f64 {
        phi_components(self.k, self.r, self.d).min()
    }
}

fn check_open_unit(name: &str, eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must lie in (0, 1), got {eps}")))
    }
}

/// `ε*(x) = (C1 ln x)^{-1} (2 ln x + 2 ln ln x + C2)^{-1}` for `x ≥ 2`.
pub fn tuned_error(x: usize) -> f64 {
    assert!(x >= 2, "tuned error needs x >= 2");
    let l = (x as f64).ln();
    1.0 / (TUNED_C1 * l * (2.0 * l + 2.0 * l.ln() + TUNED_C2))
}

/// `ℓ̂ = ⌈r(r−1)/ε⌉`, as a float so that tiny `ε` cannot overflow.
pub fn group_count(r: usize, eps: f64) -> f64 {
    let r = r as f64;
    ceil_tolerant(r * (r - 1.0) / eps)
}

/// Guaranteed fraction of `|ψ(C)|` kept by [`unique_greedy_freq`]:
/// `1/H_{⌈r(r−1)/ε⌉} − ε`.
pub fn ugf_ratio(r: usize, eps: f64) -> f64 {
    1.0 / harmonic_of_ceil(group_count(r, eps)) - eps
}

/// `β(d, ε̂)`, the fraction guaranteed by [`unique_greedy_freq`] when run
/// with frequency bound `d`.
pub fn beta(d: usize, eps_hat: f64) -> f64 {
    ugf_ratio(d, eps_hat)
}

/// Guaranteed fraction of `|ψ(C)|` kept by [`unique_greedy_size`]:
/// `min(ε_d, (1−ε_d)·β(d, ε̂_d))`.
pub fn ugs_ratio(d: usize, eps_d: f64, eps_hat_d: f64) -> f64 {
    if d <= 1 {
        return eps_d.min(1.0);
    }
    eps_d.min((1.0 - eps_d) * beta(d, eps_hat_d))
}

/// The three candidate bounds on the unique coverage ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiComponents {
    pub by_k: f64,
    pub by_r: f64,
    pub by_d: f64,
}

impl PhiComponents {
    pub fn min(&self) -> f64 {
        self.by_k.min(self.by_r).min(self.by_d)
    }
}

fn phi_components(k: usize, r: usize, d: usize) -> PhiComponents {
    let by_r = if r <= 1 {
        1.0
    } else {
        let l = (r as f64).ln();
        (2.0 * l + 2.0 * l.ln() + TUNED_C2) / (1.0 - 1.0 / (TUNED_C1 * l))
    };
    let by_d = if d <= 1 {
        1.0
    } else {
        let b = beta(d, tuned_error(d));
        if b > 0.0 {
            1.0 / b + 1.0
        } else {
            f64::INFINITY
        }
    };
    PhiComponents { by_k: harmonic(k as u64), by_r, by_d }
}

/// Upper bound `φ = min(H_k, φ_r, φ_d)` on the unique coverage ratio of any
/// collection of at most `k` sets with maximum frequency `r` and maximum set
/// size `d`. Always at least 1.
pub fn phi_bound(k: usize, r: usize, d: usize) -> Result<f64> {
    phi_components_checked(k, r, d).map(|c| c.min())
}

pub fn phi_components_checked(k: usize, r: usize, d: usize) -> Result<PhiComponents> {
    if k == 0 || r == 0 || d == 0 {
        return Err(domain(format!("phi_bound needs k, r, d >= 1 (got k={k}, r={r}, d={d})")));
    }
    Ok(phi_components(k, r, d))
}

fn meets_harmonic_ratio(unique: usize, covered: usize, h: f64) -> bool {
    unique as f64 * h >= covered as f64 * (1.0 - RATIO_SLACK)
}

/// Core loop of the greedy. `implicit_empty` extra empty sets are appended
/// after `sets` (highest IDs); they only enter through `ℓ`. Returns the
/// indices into `sets` that survive.
fn greedy_core(n: u32, sets: &[&[ElementId]], implicit_empty: u64) -> Vec<usize> {
    let mut alive: Vec<usize> = (0..sets.len()).collect();
    let mut empties = implicit_empty;
    let mut counter = FrequencyCounter::new(n);
    for s in sets {
        counter.add(s);
    }
    loop {
        let ell = alive.len() as u64 + empties;
        if ell <= 1
            || meets_harmonic_ratio(counter.unique_coverage(), counter.coverage(), harmonic(ell))
        {
            return alive;
        }
        let (pos, contribution) = alive
            .iter()
            .enumerate()
            .map(|(pos, &i)| (pos, counter.unique_contribution(sets[i])))
            .min_by_key(|&(pos, c)| (c, pos))
            .expect("ell >= 2 with no explicit sets is handled by the empty branch");
        if contribution > 0 && empties > 0 {
            // Dropping empties keeps ũ and ψ but shrinks H_ℓ, so the check
            // keeps failing until the last of them is gone.
            empties = 0;
            continue;
        }
        counter.remove(sets[alive[pos]]);
        alive.remove(pos);
    }
}

/// UniqueGreedy: while `|ũ(C)| < |ψ(C)|/H_{|C|}`, discard the set with the
/// smallest unique contribution. The result satisfies
/// `|ũ(B)| · H_ℓ ≥ |ψ(C)|`.
pub fn unique_greedy<'a>(c: &SubCollection<'a>) -> Result<SubCollection<'a>> {
    if c.is_empty() {
        return Err(domain("unique_greedy needs a non-empty collection"));
    }
    let parent = c.parent();
    let sets: Vec<&[ElementId]> = c.sets().collect();
    let keep = greedy_core(parent.n(), &sets, 0);
    SubCollection::new(parent, keep.into_iter().map(|i| c.ids()[i]))
}

/// Result of [`unique_greedy_freq_detailed`]: the solution plus the group
/// allocation it was assembled from.
#[derive(Clone, Debug)]
pub struct UgfOutcome<'a> {
    pub solution: SubCollection<'a>,
    /// Non-empty groups in index order; later groups are all empty.
    pub groups: Vec<Vec<SetId>>,
    /// `ℓ̂`; zero when the `r < 2` shortcut was taken.
    pub group_count: f64,
    /// Frequency bound the allocation was sized for.
    pub r_bound: usize,
    /// `Σ_i |Cov≥2(G_i)|`, accumulated while allocating.
    pub overlap_sum: usize,
}

/// UniqueGreedyFreq with the frequency measured from `c`.
pub fn unique_greedy_freq<'a>(c: &SubCollection<'a>, eps_r: f64) -> Result<SubCollection<'a>> {
    unique_greedy_freq_detailed(c, None, eps_r).map(|o| o.solution)
}

/// UniqueGreedyFreq. Sets are allocated, in input order, to the group whose
/// unique cover they intersect least; UniqueGreedy then picks among the
/// group covers, and the chosen groups are merged.
///
/// `r_bound` overrides the measured maximum frequency (it must not be
/// smaller). With `r < 2` the sets are pairwise disjoint and `c` is returned
/// whole.
pub fn unique_greedy_freq_detailed<'a>(
    c: &SubCollection<'a>,
    r_bound: Option<usize>,
    eps_r: f64,
) -> Result<UgfOutcome<'a>> {
    check_open_unit("eps_r", eps_r)?;
    let measured = c.max_frequency();
    let r = match r_bound {
        Some(r) if r < measured => {
            return Err(domain(format!("frequency bound {r} is below the measured frequency {measured}")));
        }
        Some(r) => r,
        None => measured,
    };
    if r < 2 {
        return Ok(UgfOutcome {
            solution: c.clone(),
            groups: c.ids().iter().map(|&id| vec![id]).collect(),
            group_count: 0.0,
            r_bound: r,
            overlap_sum: 0,
        });
    }
    let ell_hat = group_count(r, eps_r);
    if ell_hat.is_nan() || ell_hat >= u64::MAX as f64 {
        return Err(Error::Capacity(format!("{ell_hat} groups do not fit in 64 bits")));
    }
    let ell_hat = ell_hat as u64;

    let parent = c.parent();
    let n = parent.n() as usize;
    // For each element, the groups holding it and how often.
    let mut holders: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n + 1];
    let mut groups: Vec<Vec<SetId>> = Vec::new();
    let mut overlap_sum = 0usize;
    let mut touched: Vec<usize> = Vec::new();

    for &id in c.ids() {
        let set = parent.set(id);
        touched.clear();
        for &x in set {
            touched.extend(holders[x as usize].iter().filter(|&&(_, cnt)| cnt == 1).map(|&(g, _)| g));
        }
        touched.sort_unstable();
        // Lowest group index whose unique cover misses the set entirely.
        let mut free = 0usize;
        for &g in &touched {
            if g == free {
                free += 1;
            } else if g > free {
                break;
            }
        }
        let (group, overlap) = if (free as u64) < ell_hat {
            (free, 0)
        } else {
            let mut best = (usize::MAX, usize::MAX);
            let mut i = 0;
            while i < touched.len() {
                let g = touched[i];
                let mut j = i;
                while j < touched.len() && touched[j] == g {
                    j += 1;
                }
                if j - i < best.1 {
                    best = (g, j - i);
                }
                i = j;
            }
            best
        };
        overlap_sum += overlap;
        if group == groups.len() {
            groups.push(Vec::new());
        }
        groups[group].push(id);
        for &x in set {
            let h = &mut holders[x as usize];
            match h.iter_mut().find(|(g, _)| *g == group) {
                Some((_, cnt)) => *cnt += 1,
                None => h.push((group, 1)),
            }
        }
    }

    debug_assert!(
        overlap_sum as f64 <= eps_r * c.coverage_size() as f64 + 1e-9,
        "group overlap {overlap_sum} exceeds eps_r * |psi(C)|"
    );

    let covers: Vec<Vec<ElementId>> = groups
        .iter()
        .map(|g| {
            let mut cover: Vec<ElementId> = g.iter().flat_map(|&id| parent.set(id).iter().copied()).collect();
            cover.sort_unstable();
            cover.dedup();
            cover
        })
        .collect();
    let cover_refs: Vec<&[ElementId]> = covers.iter().map(Vec::as_slice).collect();
    let implicit_empty = ell_hat - groups.len() as u64;
    let chosen = greedy_core(parent.n(), &cover_refs, implicit_empty);
    let solution = SubCollection::new(parent, chosen.iter().flat_map(|&g| groups[g].iter().copied()))?;
    Ok(UgfOutcome { solution, groups, group_count: ell_hat as f64, r_bound: r, overlap_sum })
}

/// UniqueGreedySize.
///
/// Discards sets with no unique contribution until the collection is
/// minimal. If it still has at least `ε_d·|ψ(C)|` sets it is returned;
/// otherwise UniqueGreedyFreq (frequency bound `d`, error `ε̂_d`) runs on
/// the sets restricted to elements of frequency at most `d`, and the chosen
/// restricted sets are lifted back to the originals.
pub fn unique_greedy_size<'a>(c: &SubCollection<'a>, eps_d: f64, eps_hat_d: f64) -> Result<SubCollection<'a>> {
    check_open_unit("eps_d", eps_d)?;
    check_open_unit("eps_hat_d", eps_hat_d)?;
    let parent = c.parent();
    let d = c.max_set_size();

    let mut ids = c.ids().to_vec();
    let mut counter = FrequencyCounter::new(parent.n());
    for &id in &ids {
        counter.add(parent.set(id));
    }
    loop {
        let smallest = ids
            .iter()
            .enumerate()
            .map(|(pos, &id)| (counter.unique_contribution(parent.set(id)), pos))
            .min();
        match smallest {
            Some((0, pos)) => {
                counter.remove(parent.set(ids[pos]));
                ids.remove(pos);
            }
            _ => break,
        }
    }
    let minimal = SubCollection::new(parent, ids)?;
    if minimal.len() as f64 >= eps_d * minimal.coverage_size() as f64 || d < 2 {
        return Ok(minimal);
    }

    let restricted: Vec<Vec<ElementId>> = minimal
        .sets()
        .map(|s| s.iter().copied().filter(|&x| counter.count(x) as usize <= d).collect())
        .collect();
    let hat = SetSystem::unconstrained(parent.n(), restricted)?;
    let outcome = unique_greedy_freq_detailed(&hat.all(), Some(d), eps_hat_d)?;
    SubCollection::new(parent, outcome.solution.ids().iter().map(|&i| minimal.ids()[i]))
}

/// Runs all three algorithms and keeps the result with the largest unique
/// coverage (earlier algorithm on ties: UG, then UGF, then UGS).
pub fn best_unique_subcollection<'a>(c: &SubCollection<'a>, cfg: &RatioBoundConfig) -> Result<SubCollection<'a>> {
    let mut best = unique_greedy(c)?;
    for candidate in [
        unique_greedy_freq(c, cfg.eps_r)?,
        unique_greedy_size(c, cfg.eps_d, cfg.eps_hat_d)?,
    ] {
        if candidate.unique_coverage() > best.unique_coverage() {
            best = candidate;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: u32, sets: &[&[u32]]) -> SetSystem {
        SetSystem::unconstrained(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn ug_hand_traces() {
        let s = sys(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(unique_greedy(&s.all()).unwrap().ids(), &[0, 1]);

        // Both contribute nothing; the lower ID goes first.
        let s = sys(3, &[&[1, 2, 3], &[1, 2, 3]]);
        let b = unique_greedy(&s.all()).unwrap();
        assert_eq!(b.ids(), &[1]);
        assert_eq!(b.unique_coverage(), 3);

        let s = sys(1, &[&[1]]);
        assert_eq!(unique_greedy(&s.all()).unwrap().ids(), &[0]);
    }

    #[test]
    fn ug_rejects_empty() {
        let s = sys(1, &[&[1]]);
        assert!(matches!(unique_greedy(&SubCollection::empty(&s)), Err(Error::Domain(_))));
    }

    #[test]
    fn ug_all_empty_sets() {
        let s = sys(3, &[&[], &[]]);
        assert_eq!(unique_greedy(&s.all()).unwrap().len(), 2);
    }

    #[test]
    fn ug_implicit_empties_match_explicit_ones() {
        // Same collection with trailing empty sets made explicit.
        let sets: [&[u32]; 4] = [&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[1, 5]];
        let explicit: Vec<Vec<u32>> =
            sets.iter().map(|s| s.to_vec()).chain(std::iter::repeat_n(Vec::new(), 5)).collect();
        let s = SetSystem::unconstrained(5, explicit).unwrap();
        let full = unique_greedy(&s.all()).unwrap();
        let refs: Vec<&[u32]> = sets.to_vec();
        let kept = greedy_core(5, &refs, 5);
        let explicit_kept: Vec<usize> = full.ids().iter().copied().filter(|&i| i < 4).collect();
        assert_eq!(kept, explicit_kept);
    }

    #[test]
    fn ugf_hand_trace() {
        let s = sys(3, &[&[1, 2], &[2, 3]]);
        let o = unique_greedy_freq_detailed(&s.all(), None, 0.5).unwrap();
        assert_eq!(o.group_count, 4.0);
        assert_eq!(o.groups, vec![vec![0], vec![1]]);
        assert_eq!(o.solution.ids(), &[0, 1]);
        assert_eq!(o.solution.unique_coverage(), 2);
        assert_eq!(o.overlap_sum, 0);
    }

    #[test]
    fn ugf_disjoint_shortcut() {
        let s = sys(4, &[&[1], &[2, 3], &[4]]);
        let o = unique_greedy_freq_detailed(&s.all(), None, 0.3).unwrap();
        assert_eq!(o.group_count, 0.0);
        assert_eq!(o.solution.ids(), &[0, 1, 2]);
    }

    #[test]
    fn ugf_errors() {
        let s = sys(3, &[&[1, 2], &[2, 3]]);
        assert!(unique_greedy_freq(&s.all(), 0.0).is_err());
        assert!(unique_greedy_freq(&s.all(), 1.0).is_err());
        assert!(unique_greedy_freq_detailed(&s.all(), Some(1), 0.5).is_err());
    }

    #[test]
    fn ugf_overlap_sum_matches_group_non_unique_covers() {
        let s = sys(6, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[1, 5, 6], &[2, 6], &[1, 3, 5]]);
        // Few groups force sharing.
        let o = unique_greedy_freq_detailed(&s.all(), None, 0.9).unwrap();
        let direct: usize = o
            .groups
            .iter()
            .map(|g| s.collection(g.iter().copied()).unwrap().non_unique_cover().len())
            .sum();
        assert_eq!(o.overlap_sum, direct);
    }

    #[test]
    fn ugs_hand_traces() {
        let s = sys(3, &[&[1], &[2], &[3]]);
        assert_eq!(unique_greedy_size(&s.all(), 0.5, 0.5).unwrap().ids(), &[0, 1, 2]);

        let s = sys(2, &[&[1, 2], &[1, 2]]);
        let b = unique_greedy_size(&s.all(), 0.5, 0.5).unwrap();
        assert_eq!(b.ids(), &[1]);
        assert_eq!(b.unique_coverage(), 2);
    }

    #[test]
    fn ugs_takes_the_freq_branch() {
        // Minimal, few sets, large cover: |C| = 3 < 0.5 * 9.
        let s = sys(9, &[&[1, 2, 3, 4], &[4, 5, 6, 7], &[7, 8, 9, 1]]);
        let b = unique_greedy_size(&s.all(), 0.5, 0.25).unwrap();
        let bound = ugs_ratio(4, 0.5, 0.25) * 9.0;
        assert!(b.unique_coverage() as f64 >= bound - 1e-9);
        assert!(!b.is_empty());
    }

    #[test]
    fn best_takes_the_max() {
        let s = sys(2, &[&[1], &[2]]);
        let cfg = RatioBoundConfig::tuned(2, 1, 1).unwrap();
        assert_eq!(best_unique_subcollection(&s.all(), &cfg).unwrap().ids(), &[0, 1]);

        let s = sys(3, &[&[1, 2], &[2, 3]]);
        let cfg = RatioBoundConfig::tuned(2, 2, 2).unwrap();
        assert_eq!(best_unique_subcollection(&s.all(), &cfg).unwrap().unique_coverage(), 2);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_bound(1, 1, 1).unwrap(), 1.0);
        assert_eq!(phi_bound(1, 5, 7).unwrap(), 1.0);

        let c = phi_components_checked(8, 3, 4).unwrap();
        assert!((c.by_k - 2.717_857_142_857_143).abs() < 1e-12);
        // (2 ln 3 + 2 ln ln 3 + 5.61) / (1 - 1/(9.28 ln 3))
        let l3 = 3f64.ln();
        let expected_r = (2.0 * l3 + 2.0 * l3.ln() + 5.61) / (1.0 - 1.0 / (9.28 * l3));
        assert!((c.by_r - expected_r).abs() < 1e-12);
        assert!((c.by_r - 8.865).abs() < 1e-3);
        assert!((phi_bound(8, 3, 4).unwrap() - c.by_k).abs() < 1e-15);

        let c = phi_components_checked(1_000_000, 2, 1_000_000).unwrap();
        assert!((c.by_k - 14.392_726_722_865).abs() < 1e-9);
        assert!((c.by_r - 7.416).abs() < 1e-3);
        assert_eq!(phi_bound(1_000_000, 2, 1_000_000).unwrap(), c.by_r);

        assert!(phi_bound(0, 1, 1).is_err());
        assert!(phi_bound(1, 0, 1).is_err());
        assert!(phi_bound(1, 1, 0).is_err());
    }

    #[test]
    fn phi_d_matches_balanced_ugs_ratio() {
        for d in [2usize, 3, 4, 6, 10, 50] {
            let cfg = RatioBoundConfig::tuned(d, d, d).unwrap();
            let ratio = ugs_ratio(d, cfg.eps_d, cfg.eps_hat_d);
            let phi_d = phi_components_checked(1, 1, d).unwrap().by_d;
            assert!((1.0 / ratio - phi_d).abs() < 1e-9 * phi_d, "d = {d}");
        }
    }

    #[test]
    fn tuned_error_simplified_bound_holds() {
        // 1/H_{ℓ̂} − ε ≥ (1 − 1/(C1 ln r)) / (2 ln r + 2 ln ln r + C2)
        for r in 2..200usize {
            let eps = tuned_error(r);
            let l = (r as f64).ln();
            let simple = (1.0 - 1.0 / (TUNED_C1 * l)) / (2.0 * l + 2.0 * l.ln() + TUNED_C2);
            assert!(ugf_ratio(r, eps) >= simple - 1e-12, "r = {r}");
        }
    }

    #[test]
    fn config_validation() {
        assert!(RatioBoundConfig::new(1, 1, 1, 0.5, 0.5, 0.5).is_ok());
        assert!(RatioBoundConfig::new(0, 1, 1, 0.5, 0.5, 0.5).is_err());
        assert!(RatioBoundConfig::new(1, 1, 1, 1.0, 0.5, 0.5).is_err());
        assert!(RatioBoundConfig::new(1, 1, 1, 0.5, 0.0, 0.5).is_err());
        let cfg = RatioBoundConfig::tuned(4, 3, 5).unwrap();
        assert!(cfg.eps_r > 0.0 && cfg.eps_r < 1.0);
        assert!(cfg.eps_d > 0.0 && cfg.eps_d < 1.0);
        assert!(cfg.phi() >= 1.0);
    }
}
