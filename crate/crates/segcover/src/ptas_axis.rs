//! PTAS for axis-parallel segments.
//!
//! The sweep walks the event x-coordinates (bounding-box corners of the
//! hippodromes plus the region edges). Hippodromes strictly between the
//! last cut and the current line accumulate until their strip-cover lower
//! bound reaches the threshold `T = ceil(2t / eps)`; then the line is
//! committed: hippodromes crossing it are pierced by at most `2t` column
//! points (two per horizontal strip) and the accumulated interior is solved
//! exactly. Cuts being `T` apart in lower-bound terms caps the number of
//! column covers at roughly `OPT / T`, which yields the `(1 + eps)` factor.

use crate::error::{Error, Result};
use crate::exact_pierce::{min_pierce, PierceProblem};
use crate::geom::{self, dedup_points, pt, Hippodrome, Point};
use crate::instance::{Instance, Placement};
use crate::strip_cover::{self, half_rect_centers, Axis, SQRT3};

/// Parameters derived from the accuracy target.
#[derive(Debug, Clone, Copy)]
pub struct PtasConfig {
    pub eps: f64,
    /// Number of horizontal strips of width `sqrt(3) * rho` in the region.
    pub strips: usize,
    /// Commit threshold `T = ceil(2t / eps)`.
    pub threshold: usize,
}

impl PtasConfig {
    pub fn for_instance(inst: &Instance, eps: f64) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::validation("eps", "must be positive"));
        }
        let strips = ((inst.height() / (SQRT3 * inst.rho)).ceil() as usize).max(1);
        let threshold = ((2.0 * strips as f64 / eps).ceil() as usize).max(1);
        Ok(PtasConfig { eps, strips, threshold })
    }
}

/// Sorted, deduplicated event x-coordinates: the region edges plus each
/// hippodrome's bounding-box x-extent clipped to the region.
pub fn event_coordinates(inst: &Instance) -> Vec<f64> {
    let w = inst.width();
    let mut xs = vec![0.0, w];
    for h in inst.hippodromes() {
        let bb = h.bbox();
        xs.push(bb.xmin.clamp(0.0, w));
        xs.push(bb.xmax.clamp(0.0, w));
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let tol = geom::tolerance();
    let mut events: Vec<f64> = Vec::with_capacity(xs.len());
    for x in xs {
        if events.last().is_none_or(|&last| x - last > tol) {
            events.push(x);
        }
    }
    // Dedup keeps the first of a near-tie; the right region edge must stay,
    // even for regions narrower than the tolerance.
    if events.len() == 1 {
        events.push(w);
    } else if let Some(last) = events.last_mut() {
        if *last < w {
            *last = w;
        }
    }
    events
}

/// Two piercing points per horizontal strip, centered on the vertical line
/// `x` and clamped into the region: `2t` points that pierce every
/// hippodrome the line crosses.
pub fn column_cover(x: f64, inst: &Instance) -> Vec<Point> {
    let rho = inst.rho;
    let width = SQRT3 * rho;
    let t = ((inst.height() / width).ceil() as usize).max(1);
    let mut points = Vec::with_capacity(2 * t);
    for j in 0..t {
        let lo = j as f64 * width;
        let hi = ((j + 1) as f64 * width).min(inst.height());
        let (c1, c2) = half_rect_centers(x - rho, x + rho, lo, hi);
        points.push(inst.region.clamp(c1));
        points.push(inst.region.clamp(c2));
    }
    points
}

/// Outcome of the sweep, with the bookkeeping the guarantee rests on.
#[derive(Debug, Clone)]
pub struct PtasAxisResult {
    pub placement: Placement,
    /// Sum of the exact interior solutions: a lower bound on OPT.
    pub opt_lower: usize,
    /// `|placement|`: the upper side of the optimum interval.
    pub opt_upper: usize,
    pub config: PtasConfig,
    /// Committed cut indices into the event list.
    pub cuts: Vec<usize>,
    /// Lower-bound value at each committed cut.
    pub committed_bounds: Vec<f64>,
    pub column_point_count: usize,
    pub exact_point_count: usize,
}

/// Strip-cover lower bound (the larger orientation of `sum(Z_j) / 3`) for
/// an arbitrary set of axis-parallel segments.
fn strip_lower_bound(inst: &Instance, segments: &[crate::geom::Segment]) -> f64 {
    if segments.is_empty() {
        return 0.0;
    }
    let sub = Instance {
        region: inst.region,
        rho: inst.rho,
        segments: segments.to_vec(),
    };
    let h = strip_cover::cover_one_orientation(&sub, Axis::Horizontal);
    let v = strip_cover::cover_one_orientation(&sub, Axis::Vertical);
    h.iterations.max(v.iterations) as f64 / 3.0
}

/// The sweep PTAS. Produces a placement of size at most
/// `(1 + eps) * OPT + 2t` (the slack covers the forced final cut).
pub fn cover_ptas_axis(inst: &Instance, eps: f64) -> Result<PtasAxisResult> {
    for (i, s) in inst.segments.iter().enumerate() {
        if strip_cover::orientation_of(s).is_none() {
            return Err(Error::validation(
                format!("segments[{i}]"),
                "not axis-parallel; ptas-axis requires horizontal or vertical segments",
            ));
        }
    }
    let config = PtasConfig::for_instance(inst, eps)?;
    let hippodromes = inst.hippodromes();
    let n = hippodromes.len();
    let events = event_coordinates(inst);
    let w = inst.width();
    let width = SQRT3 * inst.rho;

    // Clipped x-extents; these reuse the exact arithmetic of the event
    // computation, so sweep comparisons below are exact, not tolerance
    // based: the trichotomy (solved / pierced / still ahead) is complete.
    let extents: Vec<(f64, f64)> = hippodromes
        .iter()
        .map(|h| {
            let bb = h.bbox();
            (bb.xmin.clamp(0.0, w), bb.xmax.clamp(0.0, w))
        })
        .collect();

    let mut alive: Vec<bool> = vec![true; n];
    let mut sensors: Vec<Point> = Vec::new();
    let mut cuts = Vec::new();
    let mut committed_bounds = Vec::new();
    let mut opt_lower = 0usize;
    let mut column_point_count = 0usize;
    let mut exact_point_count = 0usize;

    let last = events.len() - 1;
    for (i, &xi) in events.iter().enumerate().skip(1) {
        let interior: Vec<usize> =
            (0..n).filter(|&j| alive[j] && extents[j].1 < xi).collect();
        let interior_segs: Vec<crate::geom::Segment> =
            interior.iter().map(|&j| inst.segments[j]).collect();
        let bound = strip_lower_bound(inst, &interior_segs);
        if bound >= config.threshold as f64 || i == last {
            let crossing: Vec<usize> = (0..n)
                .filter(|&j| alive[j] && extents[j].0 <= xi && extents[j].1 >= xi)
                .collect();

            // Column cover, emitted only for strips that a crossing
            // hippodrome actually needs (empty strips emit nothing).
            let t = config.strips;
            let mut needed = vec![false; t];
            for &j in &crossing {
                let s = &inst.segments[j];
                // Point of the segment nearest the line in x; it lies
                // within rho of the line, so its strip's pair pierces.
                let q = nearest_point_in_x(s, xi);
                let strip = ((q.y / width).floor() as usize).min(t - 1);
                needed[strip] = true;
            }
            let mut column_points = Vec::new();
            for (j, need) in needed.iter().enumerate() {
                if !need {
                    continue;
                }
                let lo = j as f64 * width;
                let hi = ((j + 1) as f64 * width).min(inst.height());
                let (c1, c2) = half_rect_centers(xi - inst.rho, xi + inst.rho, lo, hi);
                column_points.push(inst.region.clamp(c1));
                column_points.push(inst.region.clamp(c2));
            }
            column_point_count += column_points.len();
            sensors.extend(column_points);

            // Exact solve of the accumulated interior.
            let interior_hips: Vec<Hippodrome> =
                interior.iter().map(|&j| hippodromes[j]).collect();
            let prob = PierceProblem::new(interior_hips, inst.region);
            let solved = min_pierce(&prob).map_err(|e| match e {
                Error::ResourceLimit(msg) => Error::ResourceLimit(format!(
                    "{msg}; the exact subproblem between cuts is too large — try a larger eps"
                )),
                other => other,
            })?;
            let points = solved.expect("interior subproblem is always feasible via witnesses");
            opt_lower += points.len();
            exact_point_count += points.len();
            sensors.extend(points);

            for &j in interior.iter().chain(crossing.iter()) {
                alive[j] = false;
            }
            cuts.push(i);
            committed_bounds.push(bound);
        }
    }
    // Partition check: every hippodrome was either solved in a strip or
    // pierced at a committed cut.
    assert!(
        alive.iter().all(|a| !*a),
        "sweep left a hippodrome unassigned; this is a bug"
    );

    dedup_points(&mut sensors, geom::tolerance());
    let opt_upper = sensors.len();
    let placement =
        Placement::new("ptas-axis", sensors).with_lower_bound(opt_lower as f64);
    Ok(PtasAxisResult {
        placement,
        opt_lower,
        opt_upper,
        config,
        cuts,
        committed_bounds,
        column_point_count,
        exact_point_count,
    })
}

/// The point of `s` whose x-coordinate is nearest to `x`.
fn nearest_point_in_x(s: &crate::geom::Segment, x: f64) -> Point {
    let (lo, hi) = (s.min_x(), s.max_x());
    if hi - lo == 0.0 {
        return s.a;
    }
    let cx = x.clamp(lo, hi);
    let t = (cx - s.a.x) / (s.b.x - s.a.x);
    pt(cx, s.a.y + t.clamp(0.0, 1.0) * (s.b.y - s.a.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::seg;
    use crate::instance::{random_instance, verify_cover, GenParams, OrientationMode};

    fn inst(w: f64, h: f64, rho: f64, segments: Vec<crate::geom::Segment>) -> Instance {
        Instance::new(w, h, rho, segments).unwrap()
    }

    #[test]
    fn events_for_one_segment() {
        let i = inst(10.0, 10.0, 1.0, vec![seg(2.0, 5.0, 4.0, 5.0)]);
        assert_eq!(event_coordinates(&i), vec![0.0, 1.0, 5.0, 10.0]);
    }

    #[test]
    fn events_empty_instance() {
        let i = inst(10.0, 10.0, 1.0, vec![]);
        assert_eq!(event_coordinates(&i), vec![0.0, 10.0]);
    }

    #[test]
    fn events_dedup_shared_corners() {
        let i = inst(
            10.0,
            10.0,
            1.0,
            vec![seg(2.0, 5.0, 4.0, 5.0), seg(2.0, 8.0, 4.0, 8.0)],
        );
        assert_eq!(event_coordinates(&i), vec![0.0, 1.0, 5.0, 10.0]);
    }

    #[test]
    fn column_cover_single_strip() {
        let i = inst(10.0, SQRT3, 1.0, vec![]);
        let pts = column_cover(5.0, &i);
        let mid = SQRT3 / 2.0;
        assert_eq!(pts.len(), 2);
        assert!(pts[0].dist(pt(4.5, mid)) < 1e-12);
        assert!(pts[1].dist(pt(5.5, mid)) < 1e-12);
    }

    #[test]
    fn column_cover_clamps_at_edges() {
        let i = inst(10.0, SQRT3, 1.0, vec![]);
        for p in column_cover(0.0, &i) {
            assert!(i.region.contains(p));
        }
    }

    #[test]
    fn column_cover_pierces_crossing_hippodromes() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let height = 5.0; // t = ceil(5 / sqrt(3)) = 3 strips
        let i = inst(40.0, height, 1.0, vec![]);
        for _ in 0..200 {
            let x = rng.gen_range(0.0..40.0);
            let pts = column_cover(x, &i);
            assert!(pts.len() <= 2 * 3);
            // Random hippodromes crossing the line contain one of them.
            for _ in 0..20 {
                let a = pt(rng.gen_range(0.0..40.0), rng.gen_range(0.0..height));
                let horizontal = rng.gen_bool(0.5);
                let len = rng.gen_range(0.0..8.0);
                let b = if horizontal {
                    pt((a.x + len).min(40.0), a.y)
                } else {
                    pt(a.x, (a.y + len).min(height))
                };
                let h = Hippodrome { seg: crate::geom::Segment::new(a, b), rho: 1.0 };
                let bb = h.bbox();
                if bb.xmin <= x && x <= bb.xmax {
                    assert!(
                        pts.iter().any(|p| h.contains(*p)),
                        "crossing hippodrome missed at x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn single_segment_costs_one_sensor() {
        let i = inst(10.0, 10.0, 1.0, vec![seg(2.0, 5.0, 4.0, 5.0)]);
        for eps in [0.5, 1.0, 2.0] {
            let res = cover_ptas_axis(&i, eps).unwrap();
            // The only cut is the forced one at the right edge; nothing
            // crosses it, so the exact part contributes the single sensor.
            assert_eq!(res.placement.sensors.len(), 1);
            assert_eq!(res.column_point_count, 0);
            assert_eq!(res.exact_point_count, 1);
            assert!(verify_cover(&i, &res.placement).all_covered);
        }
    }

    #[test]
    fn empty_instance_empty_placement() {
        let i = inst(10.0, 10.0, 1.0, vec![]);
        let res = cover_ptas_axis(&i, 1.0).unwrap();
        assert!(res.placement.sensors.is_empty());
    }

    #[test]
    fn rejects_diagonal_segments() {
        let i = inst(10.0, 10.0, 1.0, vec![seg(0.0, 0.0, 3.0, 3.0)]);
        assert!(matches!(cover_ptas_axis(&i, 1.0), Err(Error::Validation { .. })));
    }

    #[test]
    fn rejects_bad_eps() {
        let i = inst(10.0, 10.0, 1.0, vec![]);
        assert!(cover_ptas_axis(&i, 0.0).is_err());
        assert!(cover_ptas_axis(&i, -1.0).is_err());
    }

    #[test]
    fn single_strip_instances_stay_within_twice_optimum() {
        // t = 1 and eps = 1: the (1 + eps) * OPT target without slack,
        // checked against the exact oracle.
        use crate::exact_pierce::{min_pierce, PierceProblem};
        for seed in 0..40 {
            let i = random_instance(&GenParams {
                width: 30.0,
                height: 5.0,
                rho: 3.0,
                n: 8,
                orientation: OrientationMode::AxisParallel,
                max_len: 5.0,
                seed,
            })
            .unwrap();
            let opt = min_pierce(&PierceProblem::new(i.hippodromes(), i.region))
                .unwrap()
                .unwrap()
                .len();
            let res = cover_ptas_axis(&i, 1.0).unwrap();
            assert_eq!(res.config.strips, 1);
            assert!(
                res.placement.sensors.len() <= 2 * opt,
                "seed {seed}: {} > 2 * {opt}",
                res.placement.sensors.len()
            );
        }
    }

    #[test]
    fn sweep_accounting_and_soundness() {
        for s in 0..30 {
            let i = random_instance(&GenParams {
                width: 60.0,
                height: 2.0 * SQRT3 * 2.0, // t = 2 with rho = 2
                rho: 2.0,
                n: 8,
                orientation: OrientationMode::AxisParallel,
                max_len: 6.0,
                seed: s,
            })
            .unwrap();
            let res = cover_ptas_axis(&i, 1.0).unwrap();
            assert!(verify_cover(&i, &res.placement).all_covered, "seed {s}");
            // Committed bound values reach the threshold except possibly the
            // final forced cut.
            for bound in &res.committed_bounds[..res.committed_bounds.len().saturating_sub(1)] {
                assert!(*bound >= res.config.threshold as f64, "seed {s}");
            }
            // |P| <= sum of exact strip solutions + 2t per committed cut.
            let bound = res.exact_point_count + 2 * res.config.strips * res.cuts.len();
            assert!(res.placement.sensors.len() <= bound, "seed {s}");
            assert!(res.opt_lower <= res.opt_upper, "seed {s}");
        }
    }
}
