//! Exact brute-force solvers used as ground truth, plus the classic offline
//! greedy for Max Coverage.
//!
//! Enumeration visits every ID list of size `1..=k` in lexicographic order
//! (depth-first over combinations), maintaining frequencies incrementally.
//! Only strict improvements replace the incumbent, so ties resolve to the
//! lexicographically smallest ID list.

use crate::error::{Error, Result};
use crate::setsys::{ElementId, FrequencyCounter, SetId, SetSystem, SubCollection};

/// Default ceiling on the number of candidate sub-collections an exact
/// search may visit.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// Number of sub-collections of size `1..=k` drawn from `m` sets, saturating.
pub fn candidate_count(m: usize, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut binom: u64 = 1;
    for ell in 1..=k.min(m) {
        // C(m, ell) = C(m, ell-1) * (m - ell + 1) / ell, exact at each step.
        binom = match (binom as u128 * (m - ell + 1) as u128 / ell as u128).try_into() {
            Ok(b) => b,
            Err(_) => return u64::MAX,
        };
        total = total.saturating_add(binom);
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Objective {
    Unique,
    Coverage,
}

/// Best ID list and its objective value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub ids: Vec<SetId>,
    pub value: usize,
}

struct Search<'s> {
    sets: Vec<&'s [ElementId]>,
    k: usize,
    objective: Objective,
    counter: FrequencyCounter,
    stack: Vec<usize>,
    best: (usize, Vec<usize>),
}

impl Search<'_> {
    fn score(&self) -> usize {
        match self.objective {
            Objective::Unique => self.counter.unique_coverage(),
            Objective::Coverage => self.counter.coverage(),
        }
    }

    fn descend(&mut self, start: usize) {
        for i in start..self.sets.len() {
            self.counter.add(self.sets[i]);
            self.stack.push(i);
            let score = self.score();
            if score > self.best.0 || self.best.1.is_empty() {
                self.best = (score, self.stack.clone());
            }
            if self.stack.len() < self.k {
                self.descend(i + 1);
            }
            self.stack.pop();
            self.counter.remove(self.sets[i]);
        }
    }
}

fn exact_search(
    n: u32,
    sets: Vec<&[ElementId]>,
    k: usize,
    objective: Objective,
    budget: u64,
) -> Result<(usize, Vec<usize>)> {
    let candidates = candidate_count(sets.len(), k);
    if candidates > budget {
        return Err(Error::Capacity(format!(
            "exact search over {} sets with k = {k} needs {candidates} candidates (budget {budget})",
            sets.len()
        )));
    }
    let mut search = Search {
        counter: FrequencyCounter::new(n),
        sets,
        k,
        objective,
        stack: Vec::with_capacity(k),
        best: (0, Vec::new()),
    };
    search.descend(0);
    Ok(search.best)
}

/// Exact optimum of Max Unique Coverage over the candidate IDs `among`
/// (which must be sorted ascending), searching every size from 1 to `k`.
pub fn exact_max_unique_coverage_among(
    sys: &SetSystem,
    among: &[SetId],
    k: usize,
    budget: u64,
) -> Result<ExactSolution> {
    let sets = among.iter().map(|&id| sys.set(id)).collect();
    let (value, picks) = exact_search(sys.n(), sets, k, Objective::Unique, budget)?;
    Ok(ExactSolution { ids: picks.into_iter().map(|i| among[i]).collect(), value })
}

/// Optimal Max Unique Coverage solution with at most `sys.k()` sets. The
/// optimum may use fewer than `k` sets.
pub fn exact_max_unique_coverage(sys: &SetSystem) -> Result<SubCollection<'_>> {
    exact_max_unique_coverage_with_budget(sys, DEFAULT_ORACLE_BUDGET)
}

pub fn exact_max_unique_coverage_with_budget(sys: &SetSystem, budget: u64) -> Result<SubCollection<'_>> {
    let all: Vec<SetId> = (0..sys.m()).collect();
    let sol = exact_max_unique_coverage_among(sys, &all, sys.k(), budget)?;
    sys.collection(sol.ids)
}

/// Optimal Max Coverage solution with at most `sys.k()` sets.
pub fn exact_max_coverage(sys: &SetSystem) -> Result<SubCollection<'_>> {
    exact_max_coverage_with_budget(sys, DEFAULT_ORACLE_BUDGET)
}

pub fn exact_max_coverage_with_budget(sys: &SetSystem, budget: u64) -> Result<SubCollection<'_>> {
    let sets = sys.sets().iter().map(Vec::as_slice).collect();
    let (_, picks) = exact_search(sys.n(), sets, sys.k(), Objective::Coverage, budget)?;
    sys.collection(picks)
}

/// Classic greedy for Max Coverage: up to `k` rounds of largest marginal
/// coverage (lowest ID on ties), stopping once no set adds anything.
pub fn greedy_max_coverage(sys: &SetSystem) -> SubCollection<'_> {
    let mut counter = FrequencyCounter::new(sys.n());
    let mut picked: Vec<SetId> = Vec::new();
    let mut used = vec![false; sys.m()];
    for _ in 0..sys.k() {
        let best = (0..sys.m())
            .filter(|&id| !used[id])
            .map(|id| (counter.marginal_coverage(sys.set(id)), id))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match best {
            Some((gain, id)) if gain > 0 => {
                used[id] = true;
                counter.add(sys.set(id));
                picked.push(id);
            }
            _ => break,
        }
    }
    sys.collection(picked).expect("greedy picks distinct valid ids")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: u32, sets: &[&[u32]], k: usize) -> SetSystem {
        SetSystem::new(n, sets.iter().map(|s| s.to_vec()).collect(), k).unwrap()
    }

    #[test]
    fn unique_examples() {
        let s = sys(4, &[&[1, 2], &[2, 3], &[3, 4]], 2);
        let o = exact_max_unique_coverage(&s).unwrap();
        assert_eq!(o.ids(), &[0, 2]);
        assert_eq!(o.unique_coverage(), 4);

        let s = sys(3, &[&[1, 2, 3], &[1, 2, 3]], 2);
        let o = exact_max_unique_coverage(&s).unwrap();
        assert_eq!(o.ids(), &[0]);
        assert_eq!(o.unique_coverage(), 3);

        let s = sys(1, &[&[1]], 1);
        assert_eq!(exact_max_unique_coverage(&s).unwrap().ids(), &[0]);
    }

    #[test]
    fn coverage_examples() {
        let s = sys(4, &[&[1, 2], &[2, 3], &[3, 4]], 2);
        let o = exact_max_coverage(&s).unwrap();
        assert_eq!(o.coverage_size(), 4);
        assert_eq!(o.ids(), &[0, 2]);

        let s = sys(4, &[&[1, 2], &[2, 3], &[3, 4]], 3);
        assert_eq!(exact_max_coverage(&s).unwrap().coverage_size(), s.all().coverage_size());

        let s = sys(1, &[&[1], &[1]], 1);
        assert_eq!(exact_max_coverage(&s).unwrap().coverage_size(), 1);
    }

    #[test]
    fn greedy_examples() {
        let s = sys(5, &[&[1, 2, 3], &[3, 4], &[4, 5]], 2);
        let g = greedy_max_coverage(&s);
        assert_eq!(g.ids(), &[0, 2]);
        assert_eq!(g.coverage_size(), 5);

        let s = sys(9, &[&[1], &[2, 3, 4], &[5, 6], &[7, 8, 9]], 2);
        assert_eq!(greedy_max_coverage(&s).ids(), &[1, 3]);

        let s = sys(3, &[&[1, 2], &[1, 2], &[1, 2]], 3);
        let g = greedy_max_coverage(&s);
        assert_eq!(g.ids(), &[0]);
        assert_eq!(g.coverage_size(), 2);
    }

    #[test]
    fn budget_guard() {
        let sets: Vec<Vec<u32>> = (1..=30).map(|x| vec![x]).collect();
        let s = SetSystem::new(30, sets, 10).unwrap();
        assert!(matches!(exact_max_unique_coverage(&s), Err(Error::Capacity(_))));
        assert!(matches!(exact_max_coverage_with_budget(&s, 100), Err(Error::Capacity(_))));
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_count(4, 2), 4 + 6);
        assert_eq!(candidate_count(3, 5), 7);
        assert_eq!(candidate_count(0, 3), 0);
        assert_eq!(candidate_count(100_000, 50), u64::MAX);
    }

    #[test]
    fn restricted_search_maps_ids_back() {
        let s = sys(4, &[&[1, 2], &[2, 3], &[3, 4], &[1]], 2);
        let sol = exact_max_unique_coverage_among(&s, &[1, 3], 2, 100).unwrap();
        assert_eq!(sol.ids, vec![1, 3]);
        assert_eq!(sol.value, 3);
    }
}
