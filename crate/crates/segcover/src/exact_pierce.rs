//! Exhaustive minimum piercing of hippodrome sets.
//!
//! This is the inner solver of both PTAS variants and the desk-scale
//! ground-truth oracle for every other algorithm in the crate. The finite
//! candidate set is the pairwise boundary intersections of the capsules
//! plus one interior witness (the segment midpoint) per capsule, so a lone
//! capsule is always pierceable. Search proceeds by increasing solution
//! size, so the first feasible size is the minimum over the candidate set.

use crate::error::{Error, Result};
use crate::geom::{dedup_points, tolerance, Hippodrome, Point, Rect};

/// Default number of search nodes before [`min_pierce`] gives up.
pub const DEFAULT_WORK_LIMIT: u64 = 100_000_000;

/// Where piercing candidates come from.
#[derive(Debug, Clone)]
pub enum CandidateSet {
    /// Boundary intersections plus witnesses (the default).
    Generated,
    /// Generated candidates plus caller-supplied extra points, e.g. the
    /// embedding vertices of a hardness instance.
    Augmented(Vec<Point>),
    /// Exactly these points and nothing else.
    Explicit(Vec<Point>),
}

/// A minimum-piercing search over a set of capsules.
#[derive(Debug, Clone)]
pub struct PierceProblem {
    pub hippodromes: Vec<Hippodrome>,
    pub region: Rect,
    /// Largest solution size to search for.
    pub candidate_cap: usize,
    pub work_limit: u64,
    pub candidates: CandidateSet,
}

impl PierceProblem {
    pub fn new(hippodromes: Vec<Hippodrome>, region: Rect) -> Self {
        let cap = hippodromes.len();
        PierceProblem {
            hippodromes,
            region,
            candidate_cap: cap,
            work_limit: DEFAULT_WORK_LIMIT,
            candidates: CandidateSet::Generated,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.candidate_cap = cap;
        self
    }

    pub fn with_work_limit(mut self, limit: u64) -> Self {
        self.work_limit = limit;
        self
    }

    pub fn with_candidates(mut self, candidates: CandidateSet) -> Self {
        self.candidates = candidates;
        self
    }
}

/// The canonical finite candidate set: all pairwise boundary intersection
/// points clipped to the region, plus each capsule's segment midpoint as an
/// interior witness. Deduplicated and sorted by `(x, y)`.
pub fn candidate_points(hippodromes: &[Hippodrome], region: &Rect) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::new();
    for h in hippodromes {
        pts.push(h.seg.midpoint());
    }
    for i in 0..hippodromes.len() {
        for j in (i + 1)..hippodromes.len() {
            for p in hippodromes[i].boundary_intersections(&hippodromes[j]) {
                if region.contains(p) {
                    pts.push(p);
                }
            }
        }
    }
    dedup_points(&mut pts, tolerance());
    pts
}

/// Finds a smallest subset of the candidates that pierces every hippodrome,
/// or `None` if no subset of size `<= candidate_cap` works.
///
/// Feasibility is decided by branch-and-bound: at each node the uncovered
/// hippodrome with the fewest remaining candidates is picked and each of its
/// candidates tried in `(x, y)` order, which keeps the output deterministic.
/// Candidates whose coverage is a subset of another's are dropped up front;
/// this cannot change the minimum size. Every search node counts against
/// `work_limit`; exceeding it aborts with a resource-limit error.
pub fn min_pierce(prob: &PierceProblem) -> Result<Option<Vec<Point>>> {
    let k = prob.hippodromes.len();
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if k > 128 {
        return Err(Error::resource_limit(format!(
            "exact piercing supports at most 128 hippodromes, got {k}"
        )));
    }

    let raw_points: Vec<Point> = match &prob.candidates {
        CandidateSet::Generated => candidate_points(&prob.hippodromes, &prob.region),
        CandidateSet::Augmented(extra) => {
            let mut pts = candidate_points(&prob.hippodromes, &prob.region);
            pts.extend(extra.iter().copied().filter(|p| prob.region.contains(*p)));
            dedup_points(&mut pts, tolerance());
            pts
        }
        CandidateSet::Explicit(pts) => {
            let mut pts: Vec<Point> =
                pts.iter().copied().filter(|p| prob.region.contains(*p)).collect();
            dedup_points(&mut pts, tolerance());
            pts
        }
    };

    let full: u128 = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    let mut cands: Vec<(Point, u128)> = raw_points
        .into_iter()
        .filter_map(|p| {
            let mut mask = 0u128;
            for (i, h) in prob.hippodromes.iter().enumerate() {
                if h.contains(p) {
                    mask |= 1 << i;
                }
            }
            (mask != 0).then_some((p, mask))
        })
        .collect();

    // Dominance pruning: keep one representative per maximal coverage mask.
    // Points are already in (x, y) order, so ties keep the smallest point.
    let mut kept: Vec<(Point, u128)> = Vec::with_capacity(cands.len());
    'outer: for &(p, mask) in cands.iter() {
        let mut i = 0;
        while i < kept.len() {
            let (_, km) = kept[i];
            if mask & !km == 0 {
                continue 'outer; // dominated (or equal): drop
            }
            if km & !mask == 0 {
                kept.remove(i); // strictly dominates an earlier candidate
            } else {
                i += 1;
            }
        }
        kept.push((p, mask));
    }
    cands = kept;

    // Per-hippodrome candidate lists, in candidate order.
    let mut covers: Vec<Vec<u32>> = vec![Vec::new(); k];
    for (ci, &(_, mask)) in cands.iter().enumerate() {
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            covers[i].push(ci as u32);
            m &= m - 1;
        }
    }
    if covers.iter().any(|c| c.is_empty()) {
        // Some hippodrome contains no candidate at all; with generated
        // candidates this cannot happen (the witness is inside).
        return Ok(None);
    }

    let max_gain = cands.iter().map(|(_, m)| m.count_ones()).max().unwrap_or(0);
    let mut work = 0u64;
    let cap = prob.candidate_cap.min(128);
    for size in 0..=cap {
        let mut chosen: Vec<u32> = Vec::with_capacity(size);
        if let Some(sol) = search(
            &cands,
            &covers,
            full,
            0,
            size,
            max_gain,
            &mut chosen,
            &mut work,
            prob.work_limit,
        )? {
            return Ok(Some(sol.iter().map(|&ci| cands[ci as usize].0).collect()));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn search(
    cands: &[(Point, u128)],
    covers: &[Vec<u32>],
    full: u128,
    covered: u128,
    size: usize,
    max_gain: u32,
    chosen: &mut Vec<u32>,
    work: &mut u64,
    work_limit: u64,
) -> Result<Option<Vec<u32>>> {
    *work += 1;
    if *work > work_limit {
        return Err(Error::resource_limit(format!(
            "piercing search exceeded the work limit of {work_limit} nodes"
        )));
    }
    if covered == full {
        return Ok(Some(chosen.clone()));
    }
    let remaining = (full & !covered).count_ones();
    let slots = (size - chosen.len()) as u32;
    if slots == 0 || remaining > slots * max_gain {
        return Ok(None);
    }
    // Branch on the uncovered hippodrome with the fewest usable candidates.
    let mut best_h = usize::MAX;
    let mut best_count = u32::MAX;
    let mut m = full & !covered;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        let count = covers[i].len() as u32;
        if count < best_count {
            best_count = count;
            best_h = i;
        }
        m &= m - 1;
    }
    for &ci in &covers[best_h] {
        let (_, mask) = cands[ci as usize];
        chosen.push(ci);
        let res = search(
            cands,
            covers,
            full,
            covered | mask,
            size,
            max_gain,
            chosen,
            work,
            work_limit,
        )?;
        chosen.pop();
        if res.is_some() {
            return Ok(res);
        }
    }
    Ok(None)
}
