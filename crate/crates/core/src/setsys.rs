//! Set systems, sub-collections and the coverage primitives everything else
//! is built from.
//!
//! Elements are dense integers `1..=n`. Every cover of a collection reduces
//! to per-element frequency counts, so all primitives here make a single
//! counting pass over the member sets.

use std::sync::OnceLock;

use crate::error::{domain, Error, Result};

pub type ElementId = u32;
pub type SetId = usize;

/// An instance `(U, V, k)`: universe `1..=n`, an ordered list of `m` sets
/// with stable IDs `0..m`, and a cardinality constraint `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    n: u32,
    sets: Vec<Vec<ElementId>>,
    k: usize,
}

impl SetSystem {
    /// Builds a set system. Each set is sorted and de-duplicated; elements
    /// outside `[1, n]` and a `k` outside `[1, m]` are rejected.
    pub fn new(n: u32, sets: Vec<Vec<ElementId>>, k: usize) -> Result<Self> {
        let mut sets = sets;
        for (id, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if let Some(&bad) = set.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::ElementOutOfRange { set: id, element: bad, n });
            }
        }
        if k == 0 || k > sets.len() {
            return Err(Error::InvalidK { k, m: sets.len() });
        }
        Ok(Self { n, sets, k })
    }

    /// Same as [`SetSystem::new`] with `k = m`, for collections where the
    /// cardinality constraint is irrelevant.
    pub fn unconstrained(n: u32, sets: Vec<Vec<ElementId>>) -> Result<Self> {
        let m = sets.len();
        Self::new(n, sets, m)
    }

    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(self.n, self.sets.clone(), k)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set(&self, id: SetId) -> &[ElementId] {
        &self.sets[id]
    }

    pub fn sets(&self) -> &[Vec<ElementId>] {
        &self.sets
    }

    /// The sub-collection holding every set.
    pub fn all(&self) -> SubCollection<'_> {
        SubCollection {
            parent: self,
            ids: (0..self.m()).collect(),
            profile: OnceLock::new(),
        }
    }

    pub fn collection<I>(&self, ids: I) -> Result<SubCollection<'_>>
    where
        I: IntoIterator<Item = SetId>,
    {
        SubCollection::new(self, ids)
    }

    pub fn max_frequency(&self) -> usize {
        self.all().max_frequency()
    }

    pub fn max_set_size(&self) -> usize {
        self.all().max_set_size()
    }
}

/// A duplicate-free selection of set IDs from a parent [`SetSystem`].
///
/// IDs are kept in ascending order; the coverage profile is computed on first
/// use and cached.
#[derive(Clone, Debug)]
pub struct SubCollection<'a> {
    parent: &'a SetSystem,
    ids: Vec<SetId>,
    profile: OnceLock<CoverageProfile>,
}

impl PartialEq for SubCollection<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.ids == other.ids
    }
}

impl Eq for SubCollection<'_> {}

impl<'a> SubCollection<'a> {
    pub fn new<I>(parent: &'a SetSystem, ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = SetId>,
    {
        let mut ids: Vec<SetId> = ids.into_iter().collect();
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateSetId(w[0]));
            }
        }
        if let Some(&last) = ids.last() {
            if last >= parent.m() {
                return Err(Error::InvalidSetId { id: last, m: parent.m() });
            }
        }
        Ok(Self { parent, ids, profile: OnceLock::new() })
    }

    pub fn empty(parent: &'a SetSystem) -> Self {
        Self { parent, ids: Vec::new(), profile: OnceLock::new() }
    }

    pub fn parent(&self) -> &'a SetSystem {
        self.parent
    }

    pub fn ids(&self) -> &[SetId] {
        &self.ids
    }

    pub fn into_ids(self) -> Vec<SetId> {
        self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: SetId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    /// Member sets in ascending ID order.
    pub fn sets(&self) -> impl Iterator<Item = &'a [ElementId]> + '_ {
        let parent = self.parent;
        self.ids.iter().map(move |&id| parent.set(id))
    }

    /// The collection with `id` removed (no-op if absent).
    pub fn without(&self, id: SetId) -> Self {
        Self {
            parent: self.parent,
            ids: self.ids.iter().copied().filter(|&x| x != id).collect(),
            profile: OnceLock::new(),
        }
    }

    pub fn coverage_profile(&self) -> &CoverageProfile {
        self.profile
            .get_or_init(|| CoverageProfile::from_sets(self.parent.n(), self.sets()))
    }

    /// `ψ(C)`: union of the member sets.
    pub fn coverage(&self) -> &[ElementId] {
        &self.coverage_profile().covered
    }

    /// `ũ(C)`: elements contained in exactly one member set.
    pub fn unique_cover(&self) -> &[ElementId] {
        &self.coverage_profile().unique
    }

    /// `Cov≥2(C)`: elements contained in at least two member sets.
    pub fn non_unique_cover(&self) -> &[ElementId] {
        &self.coverage_profile().non_unique
    }

    pub fn coverage_size(&self) -> usize {
        self.coverage().len()
    }

    pub fn unique_coverage(&self) -> usize {
        self.unique_cover().len()
    }

    /// Largest number of member sets sharing one element; 0 when nothing is covered.
    pub fn max_frequency(&self) -> usize {
        let mut counts = vec![0u32; self.parent.n() as usize + 1];
        let mut best = 0;
        for set in self.sets() {
            for &x in set {
                let c = &mut counts[x as usize];
                *c += 1;
                best = best.max(*c);
            }
        }
        best as usize
    }

    /// Largest member-set cardinality; 0 for the empty collection.
    pub fn max_set_size(&self) -> usize {
        self.sets().map(<[ElementId]>::len).max().unwrap_or(0)
    }
}

/// The three covers of a collection. `unique` and `non_unique` partition
/// `covered`. All lists are sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverageProfile {
    pub covered: Vec<ElementId>,
    pub unique: Vec<ElementId>,
    pub non_unique: Vec<ElementId>,
}

impl CoverageProfile {
    pub fn from_sets<'s, I>(n: u32, sets: I) -> Self
    where
        I: IntoIterator<Item = &'s [ElementId]>,
    {
        let mut counts = vec![0u32; n as usize + 1];
        for set in sets {
            for &x in set {
                counts[x as usize] += 1;
            }
        }
        let mut profile = Self::default();
        for (x, &c) in counts.iter().enumerate().skip(1) {
            match c {
                0 => {}
                1 => {
                    profile.covered.push(x as ElementId);
                    profile.unique.push(x as ElementId);
                }
                _ => {
                    profile.covered.push(x as ElementId);
                    profile.non_unique.push(x as ElementId);
                }
            }
        }
        profile
    }
}

/// Incrementally maintained element frequencies with running coverage and
/// unique-coverage totals. Used wherever sets are added and removed one at
/// a time (enumeration, greedy loops).
#[derive(Clone, Debug)]
pub struct FrequencyCounter {
    counts: Vec<u32>,
    covered: usize,
    unique: usize,
}

impl FrequencyCounter {
    pub fn new(n: u32) -> Self {
        Self { counts: vec![0; n as usize + 1], covered: 0, unique: 0 }
    }

    pub fn add(&mut self, set: &[ElementId]) {
        for &x in set {
            let c = &mut self.counts[x as usize];
            *c += 1;
            match *c {
                1 => {
                    self.covered += 1;
                    self.unique += 1;
                }
                2 => self.unique -= 1,
                _ => {}
            }
        }
    }

    pub fn remove(&mut self, set: &[ElementId]) {
        for &x in set {
            let c = &mut self.counts[x as usize];
            debug_assert!(*c > 0, "removing element {x} that is not counted");
            match *c {
                1 => {
                    self.covered -= 1;
                    self.unique -= 1;
                }
                2 => self.unique += 1,
                _ => {}
            }
            *c -= 1;
        }
    }

    pub fn count(&self, x: ElementId) -> u32 {
        self.counts[x as usize]
    }

    pub fn coverage(&self) -> usize {
        self.covered
    }

    pub fn unique_coverage(&self) -> usize {
        self.unique
    }

    /// `|S ∩ ũ(C)|` for the counted collection `C`.
    pub fn unique_contribution(&self, set: &[ElementId]) -> usize {
        set.iter().filter(|&&x| self.counts[x as usize] == 1).count()
    }

    /// Number of elements of `set` not yet covered.
    pub fn marginal_coverage(&self, set: &[ElementId]) -> usize {
        set.iter().filter(|&&x| self.counts[x as usize] == 0).count()
    }
}

const HARMONIC_SUMMATION_LIMIT: u64 = 1 << 20;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `H_t = Σ_{s=1}^{t} 1/s`, with `H_0 = 0`.
///
/// Summed smallest-term-first with Neumaier compensation up to 2^20 terms;
/// beyond that the asymptotic expansion is accurate to well below 1e-15.
pub fn harmonic(t: u64) -> f64 {
    if t <= HARMONIC_SUMMATION_LIMIT {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for s in (1..=t).rev() {
            let term = 1.0 / s as f64;
            let next = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - next) + term;
            } else {
                comp += (term - next) + sum;
            }
            sum = next;
        }
        sum + comp
    } else {
        harmonic_asymptotic(t as f64)
    }
}

/// Harmonic number of a (possibly astronomically large) integer given as a
/// float, used where the index is a ceiling of a real expression.
pub fn harmonic_of_ceil(x: f64) -> f64 {
    let t = x.ceil();
    if t <= HARMONIC_SUMMATION_LIMIT as f64 {
        harmonic(t.max(0.0) as u64)
    } else {
        harmonic_asymptotic(t)
    }
}

fn harmonic_asymptotic(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    t.ln() + EULER_GAMMA + 0.5 * inv - inv2 / 12.0 + inv2 * inv2 / 120.0
}

/// [`harmonic`] for signed input; negative `t` is a domain error.
pub fn try_harmonic(t: i64) -> Result<f64> {
    if t < 0 {
        return Err(domain(format!("harmonic number of negative index {t}")));
    }
    Ok(harmonic(t as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: u32, sets: &[&[u32]]) -> SetSystem {
        SetSystem::unconstrained(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn coverage_examples() {
        let s = sys(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        assert_eq!(s.collection([0, 1]).unwrap().coverage(), &[1, 2, 3]);
        assert!(s.collection([]).unwrap().coverage().is_empty());
        assert_eq!(s.all().coverage(), &[1, 2, 3, 4]);
    }

    #[test]
    fn unique_cover_examples() {
        let s = sys(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(s.all().unique_cover(), &[1, 3]);
        let s = sys(3, &[&[1, 2, 3], &[1, 2, 3]]);
        assert!(s.all().unique_cover().is_empty());
        let s = sys(2, &[&[1], &[2]]);
        assert_eq!(s.all().unique_cover(), &[1, 2]);
    }

    #[test]
    fn profile_examples() {
        let s = sys(3, &[&[1, 2], &[2, 3]]);
        let p = s.all().coverage_profile().clone();
        assert_eq!(p.covered, vec![1, 2, 3]);
        assert_eq!(p.unique, vec![1, 3]);
        assert_eq!(p.non_unique, vec![2]);

        let empty = SubCollection::empty(&s);
        assert_eq!(empty.coverage_profile(), &CoverageProfile::default());

        let s = sys(3, &[&[1, 2], &[1, 2], &[3]]);
        let p = s.all().coverage_profile().clone();
        assert_eq!(p.covered, vec![1, 2, 3]);
        assert_eq!(p.unique, vec![3]);
        assert_eq!(p.non_unique, vec![1, 2]);
    }

    #[test]
    fn frequency_and_size() {
        assert_eq!(sys(3, &[&[1, 2], &[2, 3]]).all().max_frequency(), 2);
        assert_eq!(sys(2, &[&[1], &[2]]).all().max_frequency(), 1);
        let s = sys(2, &[&[1]]);
        assert_eq!(SubCollection::empty(&s).max_frequency(), 0);

        assert_eq!(sys(4, &[&[1, 2], &[2, 3, 4]]).all().max_set_size(), 3);
        assert_eq!(sys(1, &[&[]]).all().max_set_size(), 0);
        assert_eq!(sys(3, &[&[1], &[1, 2], &[1, 2, 3]]).all().max_set_size(), 3);
        assert_eq!(SubCollection::empty(&s).max_set_size(), 0);
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), 0.0);
        assert_eq!(harmonic(1), 1.0);
        assert_eq!(harmonic(2), 1.5);
        // 761/280
        assert!((harmonic(8) - 761.0 / 280.0).abs() < 1e-15);
        assert!(try_harmonic(-1).is_err());
        assert_eq!(try_harmonic(2).unwrap(), 1.5);
    }

    #[test]
    fn harmonic_branches_agree_at_the_switch() {
        let t = HARMONIC_SUMMATION_LIMIT;
        assert!((harmonic(t) - harmonic_asymptotic(t as f64)).abs() < 1e-12);
        assert!((harmonic_of_ceil(7.2) - harmonic(8)).abs() < 1e-15);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            SetSystem::new(3, vec![vec![1, 4]], 1),
            Err(Error::ElementOutOfRange { element: 4, .. })
        ));
        assert!(matches!(SetSystem::new(3, vec![vec![0]], 1), Err(Error::ElementOutOfRange { .. })));
        assert!(matches!(SetSystem::new(3, vec![vec![1]], 2), Err(Error::InvalidK { .. })));
        assert!(matches!(SetSystem::new(3, vec![vec![1]], 0), Err(Error::InvalidK { .. })));
        let s = sys(3, &[&[1], &[2]]);
        assert!(matches!(s.collection([0, 2]), Err(Error::InvalidSetId { id: 2, .. })));
        assert!(matches!(s.collection([1, 1]), Err(Error::DuplicateSetId(1))));
    }

    #[test]
    fn sets_are_normalised() {
        let s = SetSystem::new(5, vec![vec![3, 1, 3, 2]], 1).unwrap();
        assert_eq!(s.set(0), &[1, 2, 3]);
    }

    #[test]
    fn counter_tracks_profile() {
        let s = sys(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 2, 3, 4]]);
        let mut counter = FrequencyCounter::new(4);
        for id in [0, 1, 3] {
            counter.add(s.set(id));
        }
        let c = s.collection([0, 1, 3]).unwrap();
        assert_eq!(counter.coverage(), c.coverage_size());
        assert_eq!(counter.unique_coverage(), c.unique_coverage());
        counter.remove(s.set(3));
        let c = s.collection([0, 1]).unwrap();
        assert_eq!(counter.coverage(), c.coverage_size());
        assert_eq!(counter.unique_coverage(), c.unique_coverage());
    }
}
