//! Shifted-grid PTAS for arbitrarily oriented segments of bounded length.
//!
//! With every segment no longer than `c * rho`, vertical strips of width
//! `2 rho` placed with period `2 rho (c + 2)` can meet each segment at most
//! once, and the strips split into `k` shift classes. Segments meeting a
//! class's strips form groups whose hippodromes are pairwise disjoint
//! across classes, so the cheapest class costs at most `OPT / k`. Removing
//! it leaves slabs separated by emptied strips; each slab is solved
//! exactly and the slab optima sum to at most `OPT`, giving the
//! `(1 + 1/k)` guarantee.

use crate::error::{Error, Result};
use crate::exact_pierce::{min_pierce, PierceProblem};
use crate::geom::{self, dedup_points, Hippodrome, Point};
use crate::instance::{Instance, Placement};

/// The shifted strip/block grid of one run.
#[derive(Debug, Clone)]
pub struct GridLayout {
    /// Segment length bound factor: every segment has length `<= c * rho`.
    pub c: f64,
    /// Number of shift classes.
    pub k: usize,
    /// Distance between consecutive strip left edges: `2 rho (c + 2)`.
    pub period: f64,
    /// Strip width `2 rho`.
    pub strip_width: f64,
    /// Vertical strip intervals `[lo, lo + 2 rho)`, left to right.
    pub vstrips: Vec<(f64, f64)>,
    /// Horizontal strip intervals, bottom to top (used for the budget caps).
    pub hstrips: Vec<(f64, f64)>,
    /// Rows of blocks: `ceil(h / period)`.
    pub rows: usize,
    /// Columns of blocks: `ceil(w / period)`.
    pub cols: usize,
}

impl GridLayout {
    /// Largest exact-solve size ever needed for segments meeting one full
    /// vertical strip: `M` pieces of length `2 rho (c + 2)`, each coverable
    /// by `ceil((4 / sqrt(3)) (c + 2))` sensors.
    pub fn strip_budget(&self) -> usize {
        let per_piece = (4.0 / 3.0f64.sqrt() * (self.c + 2.0)).ceil() as usize;
        self.rows.max(1) * per_piece
    }

    /// Largest exact-solve size ever needed inside one slab of at most `k`
    /// block columns: blocks cost `2 (c + 1)^2` each, interior strip pieces
    /// `(4 / sqrt(3)) (c + 2)` each.
    pub fn slab_budget(&self) -> usize {
        let m = self.rows.max(1);
        let k = self.k;
        let per_block = (2.0 * (self.c + 1.0) * (self.c + 1.0)).ceil() as usize;
        let per_piece = (4.0 / 3.0f64.sqrt() * (self.c + 2.0)).ceil() as usize;
        let pieces = (2 * m * k).saturating_sub(m + k);
        m * k * per_block + pieces * per_piece
    }
}

/// Builds the grid, validating the segment length bound.
pub fn build_grid(inst: &Instance, c: f64, k: usize) -> Result<GridLayout> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::validation("c", "length bound factor must be positive"));
    }
    if k < 1 {
        return Err(Error::validation("k", "shift class count must be at least 1"));
    }
    let tol = geom::tolerance();
    let bound = c * inst.rho;
    for (i, s) in inst.segments.iter().enumerate() {
        if s.length() > bound + tol {
            return Err(Error::validation(
                format!("segments[{i}]"),
                format!("length {:.6} exceeds the bound c * rho = {:.6}", s.length(), bound),
            ));
        }
    }
    let period = 2.0 * inst.rho * (c + 2.0);
    let strip_width = 2.0 * inst.rho;
    let cols = ((inst.width() / period).ceil() as usize).max(1);
    let rows = ((inst.height() / period).ceil() as usize).max(1);
    let vstrips = (0..cols)
        .map(|j| (j as f64 * period, j as f64 * period + strip_width))
        .collect();
    let hstrips = (0..rows)
        .map(|j| (j as f64 * period, j as f64 * period + strip_width))
        .collect();
    Ok(GridLayout { c, k, period, strip_width, vstrips, hstrips, rows, cols })
}

/// Segment membership in strips and shift classes.
#[derive(Debug, Clone)]
pub struct SubgroupPartition {
    /// `VST_i`: vertical strip indices of shift class `i`.
    pub strip_classes: Vec<Vec<usize>>,
    /// `LS_i`: indices of segments meeting a strip of class `i`.
    pub class_segments: Vec<Vec<usize>>,
    /// Strip met by each segment (`None` for interior segments).
    pub segment_strip: Vec<Option<usize>>,
    /// Segments meeting no vertical strip.
    pub interior: Vec<usize>,
}

/// Does the segment's x-extent enter the strip's open interior (by more
/// than the tolerance)? Boundary tangency counts as disjoint, which is what
/// keeps cross-class hippodromes separated.
fn meets_strip(s: &crate::geom::Segment, strip: (f64, f64)) -> bool {
    let tol = geom::tolerance();
    s.min_x() < strip.1 - tol && s.max_x() > strip.0 + tol
}

/// Assigns each segment to the (unique) vertical strip it meets, grouped
/// by shift class `strip_index mod k`.
pub fn partition_subgroups(layout: &GridLayout, inst: &Instance) -> SubgroupPartition {
    let k = layout.k;
    let mut strip_classes: Vec<Vec<usize>> = vec![Vec::new(); k];
    for j in 0..layout.vstrips.len() {
        strip_classes[j % k].push(j);
    }
    let mut class_segments: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut segment_strip: Vec<Option<usize>> = vec![None; inst.segments.len()];
    let mut interior = Vec::new();
    for (i, s) in inst.segments.iter().enumerate() {
        let hits: Vec<usize> = layout
            .vstrips
            .iter()
            .enumerate()
            .filter(|(_, st)| meets_strip(s, **st))
            .map(|(j, _)| j)
            .collect();
        // Length <= c * rho < block width 2 rho (c + 1): one strip at most.
        assert!(hits.len() <= 1, "segment {i} meets {} strips; this is a bug", hits.len());
        match hits.first() {
            Some(&j) => {
                segment_strip[i] = Some(j);
                class_segments[j % k].push(i);
            }
            None => interior.push(i),
        }
    }
    SubgroupPartition { strip_classes, class_segments, segment_strip, interior }
}

/// Outcome of one PTAS run, with per-class and per-slab sizes kept for the
/// guarantee checks.
#[derive(Debug, Clone)]
pub struct PtasArbResult {
    pub placement: Placement,
    pub layout: GridLayout,
    pub chosen_class: usize,
    /// `|OPT_i|` per shift class.
    pub class_sizes: Vec<usize>,
    /// Exact solution size per slab, in slab order.
    pub slab_sizes: Vec<usize>,
}

fn resource_advice(e: Error) -> Error {
    match e {
        Error::ResourceLimit(msg) => Error::ResourceLimit(format!(
            "{msg}; an exact subproblem is too large — try a larger k or a smaller instance"
        )),
        other => other,
    }
}

/// Exact solve with the analytic budget as the size cap. The budgets are
/// area quotients without integer-rounding slack, so on adversarial
/// geometry the capped search may come back empty; the uncapped retry
/// (cap = n, feasible via witnesses) keeps the result exact.
fn solve_capped(
    hips: Vec<Hippodrome>,
    region: crate::geom::Rect,
    budget: usize,
) -> Result<Vec<Point>> {
    let n = hips.len();
    let prob = PierceProblem::new(hips, region).with_cap(n.min(budget));
    if let Some(points) = min_pierce(&prob).map_err(resource_advice)? {
        return Ok(points);
    }
    let prob = prob.with_cap(n);
    Ok(min_pierce(&prob)
        .map_err(resource_advice)?
        .expect("cap = n is feasible: every witness pierces its own hippodrome"))
}

/// The `(1 + 1/k)`-approximation for bounded-length arbitrary segments.
pub fn cover_ptas_arbitrary(inst: &Instance, c: f64, k: usize) -> Result<PtasArbResult> {
    let layout = build_grid(inst, c, k)?;
    let partition = partition_subgroups(&layout, inst);
    let hippodromes = inst.hippodromes();
    let tol = geom::tolerance();

    // Cross-class disjointness: the groups the class choice relies on never
    // share hippodrome area. Membership keeps a 2 tol margin, so the plain
    // closed intersection test must come out false.
    for i in 0..k {
        for j in (i + 1)..k {
            for &a in &partition.class_segments[i] {
                for &b in &partition.class_segments[j] {
                    assert!(
                        !hippodromes[a].intersects(&hippodromes[b]),
                        "hippodromes of segments {a} and {b} in different shift classes intersect; this is a bug"
                    );
                }
            }
        }
    }

    // Optimal cover of each class: strips of one class are far apart, so
    // per-strip exact solves compose into the class optimum.
    let mut class_sizes = vec![0usize; k];
    let mut class_points: Vec<Vec<Point>> = vec![Vec::new(); k];
    for class in 0..k {
        let mut by_strip: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for &si in &partition.class_segments[class] {
            by_strip.entry(partition.segment_strip[si].unwrap()).or_default().push(si);
        }
        for (_, segs) in by_strip {
            let hips: Vec<Hippodrome> = segs.iter().map(|&i| hippodromes[i]).collect();
            let sol = solve_capped(hips, inst.region, layout.strip_budget())?;
            class_sizes[class] += sol.len();
            class_points[class].extend(sol);
        }
    }

    // Cheapest class wins; ties go to the smallest index.
    let chosen_class = (0..k).min_by_key(|&i| (class_sizes[i], i)).unwrap_or(0);

    // Slabs between the chosen class's strips.
    let mut boundaries: Vec<(f64, f64)> = partition.strip_classes[chosen_class]
        .iter()
        .map(|&j| layout.vstrips[j])
        .collect();
    boundaries.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut slabs: Vec<(f64, f64)> = Vec::new();
    let mut x = 0.0;
    for &(lo, hi) in &boundaries {
        if lo > x {
            slabs.push((x, lo));
        }
        x = hi;
    }
    if x < inst.width() {
        slabs.push((x, inst.width()));
    }

    // Remaining segments (everything not in the chosen class) live inside
    // exactly one slab, up to a tolerance fringe at the emptied strips.
    let mut slab_members: Vec<Vec<usize>> = vec![Vec::new(); slabs.len()];
    for i in 0..inst.segments.len() {
        if partition.segment_strip[i].map(|j| j % k) == Some(chosen_class) {
            continue;
        }
        let s = &inst.segments[i];
        let idx = slabs
            .iter()
            .position(|&(lo, hi)| s.min_x() >= lo - 2.0 * tol && s.max_x() <= hi + 2.0 * tol)
            .expect("remaining segment fits no slab; this is a bug");
        slab_members[idx].push(i);
    }

    // Slab independence: hippodromes in different slabs are separated by an
    // emptied 2 rho strip; they may touch within tolerance but never
    // overlap beyond it.
    for a in 0..slabs.len() {
        for b in (a + 1)..slabs.len() {
            for &i in &slab_members[a] {
                for &j in &slab_members[b] {
                    let d = geom::segment_segment_distance(&inst.segments[i], &inst.segments[j]);
                    assert!(
                        d >= 2.0 * inst.rho - 4.0 * tol,
                        "segments {i} and {j} in different slabs are too close; this is a bug"
                    );
                }
            }
        }
    }

    let mut sensors: Vec<Point> = class_points[chosen_class].clone();
    let mut slab_sizes = Vec::with_capacity(slabs.len());
    for members in &slab_members {
        if members.is_empty() {
            slab_sizes.push(0);
            continue;
        }
        let hips: Vec<Hippodrome> = members.iter().map(|&i| hippodromes[i]).collect();
        let sol = solve_capped(hips, inst.region, layout.slab_budget())?;
        slab_sizes.push(sol.len());
        sensors.extend(sol);
    }

    dedup_points(&mut sensors, tol);
    let placement = Placement::new("ptas-arb", sensors);
    Ok(PtasArbResult { placement, layout, chosen_class, class_sizes, slab_sizes })
}
