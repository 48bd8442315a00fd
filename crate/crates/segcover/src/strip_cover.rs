//! Constant-factor approximation for axis-parallel segments.
//!
//! The region is tiled into strips of width `sqrt(3) * rho`, one tiling per
//! orientation. Within a strip the segments are processed greedily in order
//! of increasing right endpoint: the batch of segments whose hippodromes
//! meet the current seed's hippodrome all cross a `2rho x sqrt(3) rho`
//! rectangle, which two disks of radius `rho` cover completely. Each batch
//! therefore costs two sensors and certifies one unit of the lower bound.
//! The union over both orientations is within a factor 12 of optimal; the
//! total iteration count of each orientation, divided by three, is a
//! certified lower bound on the optimum.

use crate::error::{Error, Result};
use crate::geom::{self, dedup_points, pt, Point, Rect, Segment};
use crate::instance::{Instance, Placement};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Strip tiling orientation. `Horizontal` strips stack along y and hold
/// horizontal segments; `Vertical` is the transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// Orientation class of a segment. Zero-length segments count as
/// horizontal so that each axis-parallel segment lands in exactly one
/// orientation class.
pub fn orientation_of(s: &Segment) -> Option<Axis> {
    let tol = geom::tolerance();
    if (s.a.y - s.b.y).abs() <= tol {
        Some(Axis::Horizontal)
    } else if (s.a.x - s.b.x).abs() <= tol {
        Some(Axis::Vertical)
    } else {
        None
    }
}

/// One strip of the tiling and the indices of the segments assigned to it.
#[derive(Debug, Clone)]
pub struct Strip {
    pub index: usize,
    pub orientation: Axis,
    pub lo: f64,
    pub hi: f64,
    pub members: Vec<usize>,
}

/// Sensors and iteration count produced by one strip's greedy pass.
#[derive(Debug, Clone)]
pub struct StripResult {
    pub sensors: Vec<Point>,
    pub iterations: usize,
}

/// Tiles the region into strips of width `sqrt(3) * rho` along the given
/// axis and assigns each segment of that orientation to its strip.
///
/// Assignment is half-open: a segment exactly on a strip boundary belongs
/// to the upper strip, except at the far region edge where it clamps into
/// the last strip.
pub fn assign_strips(inst: &Instance, axis: Axis) -> Vec<Strip> {
    let width = SQRT3 * inst.rho;
    let extent = match axis {
        Axis::Horizontal => inst.height(),
        Axis::Vertical => inst.width(),
    };
    let t = ((extent / width).ceil() as usize).max(1);
    let mut strips: Vec<Strip> = (0..t)
        .map(|i| Strip {
            index: i,
            orientation: axis,
            lo: i as f64 * width,
            hi: ((i + 1) as f64 * width).min(extent),
            members: Vec::new(),
        })
        .collect();
    for (idx, s) in inst.segments.iter().enumerate() {
        if orientation_of(s) != Some(axis) {
            continue;
        }
        let coord = match axis {
            Axis::Horizontal => s.a.y,
            Axis::Vertical => s.a.x,
        };
        let j = ((coord / width).floor() as usize).min(t - 1);
        strips[j].members.push(idx);
    }
    strips
}

/// Centers of the two halves of the rectangle `[xlo, xhi] x [ylo, yhi]`.
///
/// For a `2rho x sqrt(3) rho` rectangle each half has diagonal `2rho`, so
/// disks of radius `rho` at these centers cover the whole rectangle.
pub fn half_rect_centers(xlo: f64, xhi: f64, ylo: f64, yhi: f64) -> (Point, Point) {
    let mid = (ylo + yhi) / 2.0;
    let quarter = (xhi - xlo) / 4.0;
    (pt(xlo + quarter, mid), pt(xhi - quarter, mid))
}

/// Greedy cover of the (horizontal-orientation) segments of one strip.
///
/// Repeatedly takes the unprocessed segment with the smallest right
/// endpoint (ties by y, then input index), removes every unprocessed
/// segment whose hippodrome meets the seed's, and places two sensors on
/// the batch rectangle anchored at the seed's right endpoint, clamped into
/// the region. For vertical strips the computation runs transposed.
pub fn cover_strip(segs: &[Segment], rho: f64, strip: &Strip, region: &Rect) -> StripResult {
    match strip.orientation {
        Axis::Horizontal => cover_strip_horizontal(segs, rho, strip.lo, strip.hi, region),
        Axis::Vertical => {
            let tsegs: Vec<Segment> = segs.iter().map(Segment::transpose).collect();
            let treg = region.transpose();
            let mut res = cover_strip_horizontal(&tsegs, rho, strip.lo, strip.hi, &treg);
            for p in &mut res.sensors {
                *p = p.transpose();
            }
            res
        }
    }
}

fn cover_strip_horizontal(
    segs: &[Segment],
    rho: f64,
    strip_lo: f64,
    strip_hi: f64,
    region: &Rect,
) -> StripResult {
    let tol = geom::tolerance();
    let mut order: Vec<(f64, f64, usize)> =
        segs.iter().enumerate().map(|(i, s)| (s.max_x(), s.a.y, i)).collect();
    order.sort_unstable_by(|a, b| {
        a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2))
    });
    let mut by_left: Vec<(f64, usize)> =
        segs.iter().enumerate().map(|(i, s)| (s.min_x(), i)).collect();
    by_left.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut alive = vec![true; segs.len()];
    let mut pool: Vec<usize> = Vec::new();
    let mut admitted = 0usize;
    let mut sensors = Vec::new();
    let mut iterations = 0usize;
    let threshold = 2.0 * rho + tol;

    // Bounding-box gap never exceeds the true segment distance, and for
    // exactly horizontal segments equals it; near-horizontal segments can
    // tilt the truth by at most 2 tol, so only a thin borderline band
    // needs the full predicate.
    let batch_hit = |a: &Segment, b: &Segment| -> bool {
        let gx = (b.min_x() - a.max_x()).max(a.min_x() - b.max_x()).max(0.0);
        let gy = (b.min_y() - a.max_y()).max(a.min_y() - b.max_y()).max(0.0);
        let box_dist = (gx * gx + gy * gy).sqrt();
        if box_dist > threshold + 4.0 * tol {
            return false;
        }
        if box_dist <= threshold - 4.0 * tol {
            return true;
        }
        geom::segment_segment_distance(a, b) <= threshold
    };

    for &(v1x, _, seed) in &order {
        if !alive[seed] {
            continue;
        }
        // Every batch member has a point within 2rho of the seed's
        // hippodrome, hence a left endpoint at most v1x + 2rho; the pool
        // admits exactly those, so the quadratic scan stays local.
        while admitted < by_left.len() && by_left[admitted].0 <= v1x + 2.0 * rho + tol {
            pool.push(by_left[admitted].1);
            admitted += 1;
        }
        let mut j = 0;
        while j < pool.len() {
            let cand = pool[j];
            if !alive[cand] {
                pool.swap_remove(j);
                continue;
            }
            if batch_hit(&segs[seed], &segs[cand]) {
                alive[cand] = false;
                pool.swap_remove(j);
            } else {
                j += 1;
            }
        }
        alive[seed] = false;
        let (c1, c2) = half_rect_centers(v1x, v1x + 2.0 * rho, strip_lo, strip_hi);
        sensors.push(region.clamp(c1));
        sensors.push(region.clamp(c2));
        iterations += 1;
    }
    StripResult { sensors, iterations }
}

/// Sensors and total iteration count for one orientation.
#[derive(Debug, Clone)]
pub struct OrientationCover {
    pub sensors: Vec<Point>,
    pub iterations: usize,
}

/// Runs the per-strip greedy over every strip of one orientation, in strip
/// index order.
pub fn cover_one_orientation(inst: &Instance, axis: Axis) -> OrientationCover {
    let strips = assign_strips(inst, axis);
    let mut sensors = Vec::new();
    let mut iterations = 0;
    for strip in &strips {
        let segs: Vec<Segment> = strip.members.iter().map(|&i| inst.segments[i]).collect();
        let res = cover_strip(&segs, inst.rho, strip, &inst.region);
        sensors.extend(res.sensors);
        iterations += res.iterations;
    }
    OrientationCover { sensors, iterations }
}

/// Result of the 12-factor approximation.
#[derive(Debug, Clone)]
pub struct ApproxCover {
    pub placement: Placement,
    pub lower_bound: f64,
    pub horizontal: OrientationCover,
    pub vertical: OrientationCover,
}

/// The 12-factor approximation: both orientations covered independently,
/// sensor sets merged and deduplicated.
///
/// The reported lower bound is the larger of the two per-orientation
/// bounds (total iterations over three); each is valid on its own
/// orientation, so the max is a valid bound on the full optimum.
pub fn cover_axis_parallel(inst: &Instance) -> Result<ApproxCover> {
    for (i, s) in inst.segments.iter().enumerate() {
        if orientation_of(s).is_none() {
            return Err(Error::validation(
                format!("segments[{i}]"),
                "not axis-parallel; approx12 requires horizontal or vertical segments",
            ));
        }
    }
    let horizontal = cover_one_orientation(inst, Axis::Horizontal);
    let vertical = cover_one_orientation(inst, Axis::Vertical);
    let mut sensors: Vec<Point> =
        horizontal.sensors.iter().chain(vertical.sensors.iter()).copied().collect();
    dedup_points(&mut sensors, geom::tolerance());
    let lower_bound = (horizontal.iterations.max(vertical.iterations) as f64) / 3.0;
    let placement = Placement::new("approx12", sensors).with_lower_bound(lower_bound);
    Ok(ApproxCover { placement, lower_bound, horizontal, vertical })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{seg, Hippodrome};
    use crate::instance::{verify_cover, GenParams, OrientationMode};

    fn inst(w: f64, h: f64, rho: f64, segments: Vec<Segment>) -> Instance {
        Instance::new(w, h, rho, segments).unwrap()
    }

    #[test]
    fn strip_count_single() {
        let i = inst(10.0, SQRT3, 1.0, vec![]);
        assert_eq!(assign_strips(&i, Axis::Horizontal).len(), 1);
    }

    #[test]
    fn strip_count_ceil() {
        // 10 / sqrt(3) ~ 5.77, so six strips.
        let i = inst(10.0, 10.0, 1.0, vec![]);
        assert_eq!(assign_strips(&i, Axis::Horizontal).len(), 6);
    }

    #[test]
    fn boundary_segment_goes_to_upper_strip() {
        let w = SQRT3;
        let i = inst(10.0, 4.0 * w, 1.0, vec![seg(0.0, w, 1.0, w)]);
        let strips = assign_strips(&i, Axis::Horizontal);
        assert!(strips[0].members.is_empty());
        assert_eq!(strips[1].members, vec![0]);
    }

    #[test]
    fn top_edge_segment_clamps_into_last_strip() {
        let i = inst(10.0, 10.0, 1.0, vec![seg(0.0, 10.0, 1.0, 10.0)]);
        let strips = assign_strips(&i, Axis::Horizontal);
        assert_eq!(strips.last().unwrap().members, vec![0]);
    }

    #[test]
    fn cover_strip_single_segment() {
        let region = Rect::new(0.0, 0.0, 10.0, SQRT3);
        let strip = Strip {
            index: 0,
            orientation: Axis::Horizontal,
            lo: 0.0,
            hi: SQRT3,
            members: vec![0],
        };
        let segs = vec![seg(0.0, 1.0, 1.0, 1.0)];
        let res = cover_strip(&segs, 1.0, &strip, &region);
        assert_eq!(res.iterations, 1);
        assert_eq!(res.sensors.len(), 2);
        // Batch rectangle is [1, 3] x [0, sqrt(3)]: centers at x = 1.5, 2.5.
        let mid = SQRT3 / 2.0;
        assert!(res.sensors[0].dist(pt(1.5, mid)) < 1e-12);
        assert!(res.sensors[1].dist(pt(2.5, mid)) < 1e-12);
        // Both disks cover the segment.
        let i = inst(10.0, SQRT3, 1.0, segs);
        assert!(verify_cover(&i, &Placement::new("t", res.sensors)).all_covered);
    }

    #[test]
    fn cover_strip_two_far_batches() {
        let region = Rect::new(0.0, 0.0, 20.0, SQRT3);
        let strip = Strip {
            index: 0,
            orientation: Axis::Horizontal,
            lo: 0.0,
            hi: SQRT3,
            members: vec![0, 1],
        };
        // Hippodrome gap is 7 > 2 rho, so two iterations.
        let segs = vec![seg(0.0, 1.0, 1.0, 1.0), seg(8.0, 1.0, 9.0, 1.0)];
        let res = cover_strip(&segs, 1.0, &strip, &region);
        assert_eq!(res.iterations, 2);
        assert_eq!(res.sensors.len(), 4);
    }

    #[test]
    fn cover_strip_empty() {
        let region = Rect::new(0.0, 0.0, 10.0, SQRT3);
        let strip = Strip {
            index: 0,
            orientation: Axis::Horizontal,
            lo: 0.0,
            hi: SQRT3,
            members: vec![],
        };
        let res = cover_strip(&[], 1.0, &strip, &region);
        assert_eq!(res.iterations, 0);
        assert!(res.sensors.is_empty());
    }

    #[test]
    fn batch_members_cross_the_batch_rectangle() {
        // A later segment (right endpoint >= the seed's) whose hippodrome
        // meets the seed's hippodrome always crosses [v1x, v1x + 2 rho].
        let rho = 1.0;
        let seed = seg(0.0, 1.0, 2.0, 1.0);
        let v1x = seed.max_x();
        let h1 = Hippodrome { seg: seed, rho };
        for other in [
            seg(2.5, 0.5, 5.0, 0.5),
            seg(3.9, 1.0, 6.0, 1.0),
            seg(2.0, 1.5, 2.2, 1.5),
            seg(4.5, 1.0, 7.0, 1.0), // too far: not a batch member
        ] {
            assert!(other.max_x() >= v1x);
            let h2 = Hippodrome { seg: other, rho };
            if h2.intersects(&h1) {
                assert!(other.min_x() <= v1x + 2.0 * rho + 1e-9);
                assert!(other.max_x() >= v1x - 1e-9);
            }
        }
    }

    #[test]
    fn half_rect_centers_cover_their_halves() {
        let rho = 2.0;
        let (c1, c2) = half_rect_centers(0.0, 2.0 * rho, 0.0, SQRT3 * rho);
        assert_eq!(c1, pt(rho / 2.0, SQRT3 * rho / 2.0));
        assert_eq!(c2, pt(1.5 * rho, SQRT3 * rho / 2.0));
        // Corner of each half is at distance exactly rho from its center.
        assert!((c1.dist(pt(0.0, 0.0)) - rho).abs() < 1e-12);
        assert!((c2.dist(pt(2.0 * rho, SQRT3 * rho)) - rho).abs() < 1e-12);
    }

    #[test]
    fn approx_empty_instance() {
        let res = cover_axis_parallel(&inst(10.0, 10.0, 1.0, vec![])).unwrap();
        assert!(res.placement.sensors.is_empty());
        assert_eq!(res.lower_bound, 0.0);
    }

    #[test]
    fn approx_one_segment() {
        let i = inst(10.0, 10.0, 1.0, vec![seg(1.0, 5.0, 4.0, 5.0)]);
        let res = cover_axis_parallel(&i).unwrap();
        assert!(res.placement.sensors.len() <= 2);
        assert!(res.lower_bound >= 1.0 / 3.0);
        assert!(verify_cover(&i, &res.placement).all_covered);
    }

    #[test]
    fn approx_rejects_diagonal_segments() {
        let i = inst(10.0, 10.0, 1.0, vec![seg(0.0, 0.0, 3.0, 3.0)]);
        assert!(matches!(cover_axis_parallel(&i), Err(Error::Validation { .. })));
    }

    #[test]
    fn approx_sound_on_random_instances() {
        for s in 0..20 {
            let i = crate::instance::random_instance(&GenParams {
                width: 700.0,
                height: 700.0,
                rho: 20.0,
                n: 30,
                orientation: OrientationMode::AxisParallel,
                max_len: 700.0,
                seed: s,
            })
            .unwrap();
            let res = cover_axis_parallel(&i).unwrap();
            let rep = verify_cover(&i, &res.placement);
            assert!(rep.all_covered, "seed {s}: uncovered {:?}", rep.uncovered_indices);
            for p in &res.placement.sensors {
                assert!(i.region.contains(*p), "seed {s}: sensor outside region");
            }
        }
    }

    #[test]
    fn clamped_batch_near_right_edge_still_covers() {
        // Seed right endpoint within 2 rho of the region edge forces
        // clamping; the clamped pair must still cover the batch.
        let i = inst(10.0, SQRT3, 1.0, vec![seg(8.5, 1.0, 9.9, 1.0), seg(9.0, 0.3, 9.8, 0.3)]);
        let res = cover_axis_parallel(&i).unwrap();
        assert!(verify_cover(&i, &res.placement).all_covered);
        for p in &res.placement.sensors {
            assert!(i.region.contains(*p));
        }
    }

    #[test]
    fn point_segments_count_as_horizontal() {
        let i = inst(10.0, 10.0, 1.0, vec![seg(5.0, 5.0, 5.0, 5.0)]);
        assert_eq!(orientation_of(&i.segments[0]), Some(Axis::Horizontal));
        let res = cover_axis_parallel(&i).unwrap();
        assert!(verify_cover(&i, &res.placement).all_covered);
        assert_eq!(res.vertical.iterations, 0);
    }
}
