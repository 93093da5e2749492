//! UniqueTopSets: keep the `⌈k·r·(φ+1)/ε⌉` largest sets, then brute-force
//! inside that kernel. Any `(1−ε)`-approximate solution survives in the
//! kernel as long as `φ` bounds the unique coverage ratio.
//!
//! The buffer ranks sets by size descending, then ID ascending. That is a
//! total order, so the retained contents do not depend on arrival order.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Result};
use crate::oracle::{exact_max_unique_coverage_among, DEFAULT_ORACLE_BUDGET};
use crate::setsys::{ElementId, SetId, SetSystem, SubCollection};
use crate::util::ceil_tolerant;

/// `⌈k·r·(φ+1)/ε⌉`.
pub fn kernel_capacity(k: usize, r: usize, eps: f64, phi: f64) -> Result<usize> {
    if k == 0 {
        return Err(domain("kernel capacity needs k >= 1"));
    }
    if r < 2 {
        return Err(domain(format!("kernel capacity needs r >= 2, got {r}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    if !phi.is_finite() || phi < 1.0 {
        return Err(domain(format!("phi must be a finite value >= 1, got {phi}")));
    }
    let cap = ceil_tolerant(k as f64 * r as f64 * (phi + 1.0) / eps);
    if cap >= usize::MAX as f64 {
        return Err(crate::Error::Capacity(format!("kernel capacity {cap} does not fit in memory")));
    }
    Ok(cap as usize)
}

/// A retained set. `Ord` puts the entry that should be evicted first at the
/// top of a max-heap: smaller size, then larger ID.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry {
    id: SetId,
    set: Vec<ElementId>,
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.set.len().cmp(&self.set.len()).then(self.id.cmp(&other.id))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Fixed-capacity buffer of the largest sets seen so far.
#[derive(Clone, Debug)]
pub struct KernelBuffer {
    capacity: usize,
    n: u32,
    heap: BinaryHeap<Entry>,
}

impl KernelBuffer {
    /// Empty buffer over the universe `1..=n`. A zero capacity is raised to 1.
    pub fn new(capacity: usize, n: u32) -> Self {
        Self { capacity: capacity.max(1), n, heap: BinaryHeap::new() }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn universe_size(&self) -> u32 {
        self.n
    }

    /// Offers one streamed set. Returns whether it is retained; when the
    /// buffer is full the lowest-ranked set (possibly the new one) is dropped.
    pub fn insert_streamed(&mut self, id: SetId, set: Vec<ElementId>) -> bool {
        let entry = Entry { id, set };
        if self.heap.len() < self.capacity {
            self.heap.push(entry);
            return true;
        }
        let mut worst = self.heap.peek_mut().expect("capacity >= 1");
        if entry < *worst {
            *worst = entry;
            true
        } else {
            false
        }
    }

    /// Retained `(id, set)` pairs, ranked by size descending then ID ascending.
    pub fn entries(&self) -> Vec<(SetId, &[ElementId])> {
        let mut v: Vec<&Entry> = self.heap.iter().collect();
        v.sort();
        v.into_iter().map(|e| (e.id, e.set.as_slice())).collect()
    }

    /// Retained IDs in ascending order.
    pub fn ids(&self) -> Vec<SetId> {
        let mut ids: Vec<SetId> = self.heap.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids
    }

    /// Size of the lowest-ranked retained set.
    pub fn min_retained_size(&self) -> Option<usize> {
        self.heap.peek().map(|e| e.set.len())
    }
}

/// Kernel for an offline instance. The frequency used for sizing is the
/// measured one, raised to 2 when the sets are pairwise disjoint.
pub fn build_kernel(sys: &SetSystem, eps: f64, phi: f64) -> Result<KernelBuffer> {
    build_kernel_with_r(sys, sys.max_frequency().max(2), eps, phi)
}

/// Kernel sized for a caller-supplied frequency bound.
pub fn build_kernel_with_r(sys: &SetSystem, r_bound: usize, eps: f64, phi: f64) -> Result<KernelBuffer> {
    let measured = sys.max_frequency();
    if r_bound < measured {
        return Err(domain(format!("frequency bound {r_bound} is below the measured frequency {measured}")));
    }
    let capacity = kernel_capacity(sys.k(), r_bound, eps, phi)?;
    let mut buf = KernelBuffer::new(capacity, sys.n());
    for (id, set) in sys.sets().iter().enumerate() {
        buf.insert_streamed(id, set.clone());
    }
    Ok(buf)
}

/// Solution found inside a kernel, with IDs of the original instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSolution {
    pub ids: Vec<SetId>,
    pub unique_coverage: usize,
}

/// Exact Max Unique Coverage restricted to the buffered sets, with at most
/// `k` sets.
pub fn solve_in_kernel(buf: &KernelBuffer, k: usize) -> Result<KernelSolution> {
    solve_in_kernel_with_budget(buf, k, DEFAULT_ORACLE_BUDGET)
}

pub fn solve_in_kernel_with_budget(buf: &KernelBuffer, k: usize, budget: u64) -> Result<KernelSolution> {
    if k == 0 {
        return Err(domain("k must be >= 1"));
    }
    if buf.is_empty() {
        return Ok(KernelSolution { ids: Vec::new(), unique_coverage: 0 });
    }
    // Ascending original IDs keep the oracle's lexicographic tie-break
    // meaningful in terms of the original instance.
    let mut entries: Vec<&Entry> = buf.heap.iter().collect();
    entries.sort_by_key(|e| e.id);
    let local = SetSystem::unconstrained(buf.n, entries.iter().map(|e| e.set.clone()).collect())?;
    let all: Vec<usize> = (0..local.m()).collect();
    let sol = exact_max_unique_coverage_among(&local, &all, k, budget)?;
    Ok(KernelSolution {
        ids: sol.ids.into_iter().map(|i| entries[i].id).collect(),
        unique_coverage: sol.value,
    })
}

/// Offline UniqueTopSets: kernel plus brute force.
pub fn unique_top_sets(sys: &SetSystem, eps: f64, phi: f64) -> Result<SubCollection<'_>> {
    let buf = build_kernel(sys, eps, phi)?;
    let sol = solve_in_kernel(&buf, sys.k())?;
    sys.collection(sol.ids)
}
