//! Planar primitives: points, segments, capsules (hippodromes) and the
//! distance predicates the solvers are built on.
//!
//! All comparisons are tolerance-aware: sets are closed, and `<=` in a
//! coverage predicate means `<= + tol`. The tolerance defaults to 1e-9 and
//! can be overridden globally (see [`set_tolerance`]).

use std::sync::atomic::{AtomicU64, Ordering};

const DEFAULT_TOL: f64 = 1e-9;

static TOL_BITS: AtomicU64 = AtomicU64::new(0);

/// Current global comparison tolerance.
pub fn tolerance() -> f64 {
    let bits = TOL_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        DEFAULT_TOL
    } else {
        f64::from_bits(bits)
    }
}

/// Overrides the global comparison tolerance. Must be positive and finite.
pub fn set_tolerance(tol: f64) {
    assert!(tol.is_finite() && tol > 0.0, "tolerance must be positive");
    TOL_BITS.store(tol.to_bits(), Ordering::Relaxed);
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Coordinate swap, used to share one code path between the horizontal
    /// and vertical variants of the strip algorithms.
    pub fn transpose(&self) -> Point {
        Point { x: self.y, y: self.x }
    }
}

/// Shorthand constructor, mirrors the test helpers used across the crate.
pub fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

/// A line segment between two endpoints. Zero length (`a == b`) is allowed
/// and treated as a point; its hippodrome is a disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn is_point(&self) -> bool {
        self.a.x == self.b.x && self.a.y == self.b.y
    }

    pub fn midpoint(&self) -> Point {
        pt((self.a.x + self.b.x) / 2.0, (self.a.y + self.b.y) / 2.0)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }

    pub fn min_x(&self) -> f64 {
        self.a.x.min(self.b.x)
    }

    pub fn max_x(&self) -> f64 {
        self.a.x.max(self.b.x)
    }

    pub fn min_y(&self) -> f64 {
        self.a.y.min(self.b.y)
    }

    pub fn max_y(&self) -> f64 {
        self.a.y.max(self.b.y)
    }

    pub fn transpose(&self) -> Segment {
        Segment::new(self.a.transpose(), self.b.transpose())
    }
}

pub fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
    Segment::new(pt(ax, ay), pt(bx, by))
}

/// Axis-aligned rectangle `[xmin, xmax] x [ymin, ymax]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl Rect {
    pub fn new(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Self {
        debug_assert!(xmin <= xmax && ymin <= ymax);
        Rect { xmin, ymin, xmax, ymax }
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    /// Closed containment with tolerance slack.
    pub fn contains(&self, p: Point) -> bool {
        let tol = tolerance();
        p.x >= self.xmin - tol
            && p.x <= self.xmax + tol
            && p.y >= self.ymin - tol
            && p.y <= self.ymax + tol
    }

    /// Nearest point of the rectangle to `p`.
    pub fn clamp(&self, p: Point) -> Point {
        pt(p.x.clamp(self.xmin, self.xmax), p.y.clamp(self.ymin, self.ymax))
    }

    pub fn transpose(&self) -> Rect {
        Rect::new(self.ymin, self.xmin, self.ymax, self.xmax)
    }
}

/// The set of points within distance `rho` of a segment: a capsule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hippodrome {
    pub seg: Segment,
    pub rho: f64,
}

impl Hippodrome {
    /// `rho` must be positive and finite.
    pub fn new(seg: Segment, rho: f64) -> Result<Self, crate::Error> {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(crate::Error::validation("rho", "sensing range must be positive"));
        }
        Ok(Hippodrome { seg, rho })
    }

    /// Closed membership test (boundary counts, with tolerance).
    pub fn contains(&self, p: Point) -> bool {
        point_segment_distance(p, &self.seg) <= self.rho + tolerance()
    }

    /// True iff the two capsules share at least one point.
    pub fn intersects(&self, other: &Hippodrome) -> bool {
        segment_segment_distance(&self.seg, &other.seg) <= self.rho + other.rho + tolerance()
    }

    /// Tight axis-aligned bounding box.
    pub fn bbox(&self) -> Rect {
        Rect::new(
            self.seg.min_x() - self.rho,
            self.seg.min_y() - self.rho,
            self.seg.max_x() + self.rho,
            self.seg.max_y() + self.rho,
        )
    }

    /// Intersection points of the two capsule boundaries.
    ///
    /// Each boundary decomposes into endpoint circles and two offset sides;
    /// candidates come from pairwise curve intersections and are kept only
    /// if they lie on both boundaries. Degenerate overlaps (coincident
    /// circles, collinear overlapping sides) contribute finitely many
    /// representative points instead of the full shared arc.
    pub fn boundary_intersections(&self, other: &Hippodrome) -> Vec<Point> {
        let tol = tolerance();
        let mut raw = Vec::new();
        for c1 in boundary_curves(self) {
            for c2 in boundary_curves(other) {
                curve_intersections(&c1, &c2, &mut raw);
            }
        }
        let on_both = |p: &Point| {
            (point_segment_distance(*p, &self.seg) - self.rho).abs() <= 5.0 * tol
                && (point_segment_distance(*p, &other.seg) - other.rho).abs() <= 5.0 * tol
        };
        let mut kept: Vec<Point> = raw.into_iter().filter(|p| p.is_finite() && on_both(p)).collect();
        dedup_points(&mut kept, 10.0 * tol);
        kept
    }

    pub fn transpose(&self) -> Hippodrome {
        Hippodrome { seg: self.seg.transpose(), rho: self.rho }
    }
}

/// Minimum distance from `p` to any point of `s`. For a zero-length segment
/// this is the distance to the (coincident) endpoints.
pub fn point_segment_distance(p: Point, s: &Segment) -> f64 {
    let dx = s.b.x - s.a.x;
    let dy = s.b.y - s.a.y;
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.dist(s.a);
    }
    let t = (((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2).clamp(0.0, 1.0);
    p.dist(pt(s.a.x + t * dx, s.a.y + t * dy))
}

/// Orientation of the triple (a, b, c): positive for a left turn, negative
/// for a right turn, zero for collinear.
fn cross(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn segments_properly_intersect(s1: &Segment, s2: &Segment) -> bool {
    let d1 = cross(s2.a, s2.b, s1.a);
    let d2 = cross(s2.a, s2.b, s1.b);
    let d3 = cross(s1.a, s1.b, s2.a);
    let d4 = cross(s1.a, s1.b, s2.b);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Minimum distance between two segments; zero when they intersect.
pub fn segment_segment_distance(s1: &Segment, s2: &Segment) -> f64 {
    if segments_properly_intersect(s1, s2) {
        return 0.0;
    }
    point_segment_distance(s1.a, s2)
        .min(point_segment_distance(s1.b, s2))
        .min(point_segment_distance(s2.a, s1))
        .min(point_segment_distance(s2.b, s1))
}

/// Coverage predicate: true iff some point of `s` is within `rho` of
/// `center` (closed, tolerance-slack). Fails on a non-positive range.
pub fn segment_covered_by(s: &Segment, center: Point, rho: f64) -> Result<bool, crate::Error> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(crate::Error::validation("rho", "sensing range must be positive"));
    }
    Ok(point_segment_distance(center, s) <= rho + tolerance())
}

/// Removes near-duplicate points (closer than `radius`), keeping the first
/// occurrence in `(x, y)` order. Points are left sorted by `(x, y)`.
pub fn dedup_points(points: &mut Vec<Point>, radius: f64) {
    points.sort_by(|p, q| (p.x, p.y).partial_cmp(&(q.x, q.y)).unwrap());
    let mut kept: Vec<Point> = Vec::with_capacity(points.len());
    'outer: for &p in points.iter() {
        for q in kept.iter().rev() {
            if p.x - q.x > radius {
                break;
            }
            if p.dist(*q) < radius {
                continue 'outer;
            }
        }
        kept.push(p);
    }
    *points = kept;
}

enum Curve {
    Circle { center: Point, r: f64 },
    Side(Segment),
}

fn boundary_curves(h: &Hippodrome) -> Vec<Curve> {
    if h.seg.is_point() {
        return vec![Curve::Circle { center: h.seg.a, r: h.rho }];
    }
    let dx = h.seg.b.x - h.seg.a.x;
    let dy = h.seg.b.y - h.seg.a.y;
    let len = (dx * dx + dy * dy).sqrt();
    let nx = -dy / len * h.rho;
    let ny = dx / len * h.rho;
    vec![
        Curve::Circle { center: h.seg.a, r: h.rho },
        Curve::Circle { center: h.seg.b, r: h.rho },
        Curve::Side(Segment::new(
            pt(h.seg.a.x + nx, h.seg.a.y + ny),
            pt(h.seg.b.x + nx, h.seg.b.y + ny),
        )),
        Curve::Side(Segment::new(
            pt(h.seg.a.x - nx, h.seg.a.y - ny),
            pt(h.seg.b.x - nx, h.seg.b.y - ny),
        )),
    ]
}

fn curve_intersections(c1: &Curve, c2: &Curve, out: &mut Vec<Point>) {
    match (c1, c2) {
        (Curve::Circle { center: a, r: ra }, Curve::Circle { center: b, r: rb }) => {
            circle_circle(*a, *ra, *b, *rb, out)
        }
        (Curve::Circle { center, r }, Curve::Side(s)) | (Curve::Side(s), Curve::Circle { center, r }) => {
            circle_segment(*center, *r, s, out)
        }
        (Curve::Side(s1), Curve::Side(s2)) => segment_segment_points(s1, s2, out),
    }
}

fn circle_circle(a: Point, ra: f64, b: Point, rb: f64, out: &mut Vec<Point>) {
    let tol = tolerance();
    let d = a.dist(b);
    if d < tol && (ra - rb).abs() < tol {
        // Coincident circles: stand in for the shared arc with the four
        // cardinal points; the boundary filter keeps the valid ones.
        out.push(pt(a.x + ra, a.y));
        out.push(pt(a.x - ra, a.y));
        out.push(pt(a.x, a.y + ra));
        out.push(pt(a.x, a.y - ra));
        return;
    }
    if d > ra + rb + tol || d < (ra - rb).abs() - tol || d == 0.0 {
        return;
    }
    let along = (d * d + ra * ra - rb * rb) / (2.0 * d);
    let h2 = ra * ra - along * along;
    let h = if h2 > 0.0 { h2.sqrt() } else { 0.0 };
    let ux = (b.x - a.x) / d;
    let uy = (b.y - a.y) / d;
    let mx = a.x + along * ux;
    let my = a.y + along * uy;
    out.push(pt(mx + h * -uy, my + h * ux));
    out.push(pt(mx - h * -uy, my - h * ux));
}

fn circle_segment(c: Point, r: f64, s: &Segment, out: &mut Vec<Point>) {
    let dx = s.b.x - s.a.x;
    let dy = s.b.y - s.a.y;
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return;
    }
    let fx = s.a.x - c.x;
    let fy = s.a.y - c.y;
    // |f + t d|^2 = r^2
    let qa = len2;
    let qb = 2.0 * (fx * dx + fy * dy);
    let qc = fx * fx + fy * fy - r * r;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        // Near-tangency: treat a slightly negative discriminant as zero.
        if disc > -4.0 * qa * tolerance() * (r.abs() + 1.0) {
            let t = -qb / (2.0 * qa);
            if (-1e-12..=1.0 + 1e-12).contains(&t) {
                out.push(pt(s.a.x + t * dx, s.a.y + t * dy));
            }
        }
        return;
    }
    let sq = disc.sqrt();
    for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
        if (-1e-12..=1.0 + 1e-12).contains(&t) {
            out.push(pt(s.a.x + t * dx, s.a.y + t * dy));
        }
    }
}

fn segment_segment_points(s1: &Segment, s2: &Segment, out: &mut Vec<Point>) {
    let d1x = s1.b.x - s1.a.x;
    let d1y = s1.b.y - s1.a.y;
    let d2x = s2.b.x - s2.a.x;
    let d2y = s2.b.y - s2.a.y;
    let denom = d1x * d2y - d1y * d2x;
    let scale = (d1x.abs() + d1y.abs()) * (d2x.abs() + d2y.abs());
    if denom.abs() <= 1e-12 * scale.max(1.0) {
        // Parallel. Collinear overlapping sides share a whole interval;
        // report the overlap endpoints so degenerate inputs stay finite.
        if point_segment_distance(s2.a, s1) <= tolerance() {
            out.push(s2.a);
        }
        if point_segment_distance(s2.b, s1) <= tolerance() {
            out.push(s2.b);
        }
        if point_segment_distance(s1.a, s2) <= tolerance() {
            out.push(s1.a);
        }
        if point_segment_distance(s1.b, s2) <= tolerance() {
            out.push(s1.b);
        }
        return;
    }
    let t = ((s2.a.x - s1.a.x) * d2y - (s2.a.y - s1.a.y) * d2x) / denom;
    let u = ((s2.a.x - s1.a.x) * d1y - (s2.a.y - s1.a.y) * d1x) / denom;
    if (-1e-12..=1.0 + 1e-12).contains(&t) && (-1e-12..=1.0 + 1e-12).contains(&u) {
        out.push(pt(s1.a.x + t * d1x, s1.a.y + t * d1y));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hip(s: Segment, rho: f64) -> Hippodrome {
        Hippodrome::new(s, rho).unwrap()
    }

    #[test]
    fn point_segment_distance_cases() {
        // Nearest endpoint.
        assert_eq!(point_segment_distance(pt(0.0, 0.0), &seg(2.0, 0.0, 3.0, 0.0)), 2.0);
        // Perpendicular foot interior.
        assert_eq!(point_segment_distance(pt(1.0, 1.0), &seg(0.0, 0.0, 2.0, 0.0)), 1.0);
        // Degenerate segment, coincident point.
        assert_eq!(point_segment_distance(pt(5.0, 5.0), &seg(5.0, 5.0, 5.0, 5.0)), 0.0);
    }

    #[test]
    fn segment_covered_by_cases() {
        assert!(segment_covered_by(&seg(0.5, 0.0, 3.0, 0.0), pt(0.0, 0.0), 1.0).unwrap());
        assert!(!segment_covered_by(&seg(2.0, 0.0, 3.0, 0.0), pt(0.0, 0.0), 1.0).unwrap());
        // Boundary touch counts as covered.
        assert!(segment_covered_by(&seg(3.0, 0.0, 4.0, 0.0), pt(0.0, 0.0), 3.0).unwrap());
        assert!(segment_covered_by(&seg(0.0, 0.0, 1.0, 0.0), pt(0.0, 0.0), 0.0).is_err());
        assert!(segment_covered_by(&seg(0.0, 0.0, 1.0, 0.0), pt(0.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn hippodrome_contains_cases() {
        let h = hip(seg(0.0, 0.0, 2.0, 0.0), 1.0);
        assert!(h.contains(pt(3.0, 0.0))); // boundary point
        assert!(h.contains(pt(1.0, 0.5)));
        assert!(!h.contains(pt(3.01, 0.0)));
    }

    #[test]
    fn hippodromes_intersect_cases() {
        let h1 = hip(seg(0.0, 0.0, 1.0, 0.0), 1.0);
        let tangent = hip(seg(3.0, 0.0, 4.0, 0.0), 1.0);
        let far = hip(seg(8.0, 0.0, 9.0, 0.0), 1.0);
        assert!(h1.intersects(&tangent)); // gap 2 = rho1 + rho2
        assert!(!h1.intersects(&far));
        assert!(h1.intersects(&h1));
    }

    #[test]
    fn bbox_cases() {
        let h = hip(seg(0.0, 0.0, 2.0, 0.0), 1.0);
        assert_eq!(h.bbox(), Rect::new(-1.0, -1.0, 3.0, 1.0));
        let disk = hip(seg(5.0, 5.0, 5.0, 5.0), 2.0);
        assert_eq!(disk.bbox(), Rect::new(3.0, 3.0, 7.0, 7.0));
        let v = hip(seg(0.0, 0.0, 0.0, 3.0), 0.5);
        assert_eq!(v.bbox(), Rect::new(-0.5, -0.5, 0.5, 3.5));
    }

    #[test]
    fn boundary_intersections_tangent_disks() {
        let d1 = hip(seg(0.0, 0.0, 0.0, 0.0), 1.0);
        let d2 = hip(seg(2.0, 0.0, 2.0, 0.0), 1.0);
        let pts = d1.boundary_intersections(&d2);
        assert_eq!(pts.len(), 1);
        assert!(pts[0].dist(pt(1.0, 0.0)) < 1e-6);
    }

    #[test]
    fn boundary_intersections_two_disks() {
        let d1 = hip(seg(0.0, 0.0, 0.0, 0.0), 1.0);
        let d2 = hip(seg(1.0, 0.0, 1.0, 0.0), 1.0);
        let pts = d1.boundary_intersections(&d2);
        assert_eq!(pts.len(), 2);
        let root3over2 = 3.0f64.sqrt() / 2.0;
        assert!(pts.iter().any(|p| p.dist(pt(0.5, root3over2)) < 1e-9));
        assert!(pts.iter().any(|p| p.dist(pt(0.5, -root3over2)) < 1e-9));
    }

    #[test]
    fn boundary_intersections_disjoint() {
        let h1 = hip(seg(0.0, 0.0, 1.0, 0.0), 1.0);
        let h2 = hip(seg(8.0, 0.0, 9.0, 0.0), 1.0);
        assert!(h1.boundary_intersections(&h2).is_empty());
    }

    #[test]
    fn boundary_intersections_identical_capsules_stay_finite() {
        let h = hip(seg(0.0, 0.0, 2.0, 0.0), 1.0);
        let pts = h.boundary_intersections(&h);
        assert!(!pts.is_empty());
        assert!(pts.len() <= 8);
        for p in &pts {
            assert!((point_segment_distance(*p, &h.seg) - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn boundary_intersections_capsule_pair() {
        // Perpendicular capsules overlapping around (1, 1).
        let h1 = hip(seg(0.0, 0.0, 2.0, 0.0), 1.0);
        let h2 = hip(seg(1.0, 1.0, 1.0, 3.0), 1.0);
        let pts = h1.boundary_intersections(&h2);
        assert!(!pts.is_empty());
        for p in &pts {
            assert!((point_segment_distance(*p, &h1.seg) - 1.0).abs() <= 1e-8);
            assert!((point_segment_distance(*p, &h2.seg) - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn rect_clamp_and_contains() {
        let r = Rect::new(0.0, 0.0, 10.0, 5.0);
        assert!(r.contains(pt(0.0, 5.0)));
        assert!(!r.contains(pt(-0.1, 0.0)));
        assert_eq!(r.clamp(pt(-3.0, 7.0)), pt(0.0, 5.0));
    }

    fn arb_point(range: f64) -> impl Strategy<Value = Point> {
        (-range..range, -range..range).prop_map(|(x, y)| pt(x, y))
    }

    fn arb_capsule() -> impl Strategy<Value = Hippodrome> {
        (arb_point(10.0), arb_point(10.0), 0.1f64..3.0)
            .prop_map(|(a, b, rho)| hip(Segment::new(a, b), rho))
    }

    proptest! {
        #[test]
        fn intersect_is_symmetric(h1 in arb_capsule(), h2 in arb_capsule()) {
            prop_assert_eq!(h1.intersects(&h2), h2.intersects(&h1));
        }

        #[test]
        fn membership_matches_coverage(h in arb_capsule(), p in arb_point(12.0)) {
            prop_assert_eq!(
                h.contains(p),
                segment_covered_by(&h.seg, p, h.rho).unwrap()
            );
        }

        #[test]
        fn boundary_points_lie_on_boundaries(h1 in arb_capsule(), h2 in arb_capsule()) {
            let tol = tolerance();
            for p in h1.boundary_intersections(&h2) {
                prop_assert!((point_segment_distance(p, &h1.seg) - h1.rho).abs() <= 10.0 * tol);
                prop_assert!((point_segment_distance(p, &h2.seg) - h2.rho).abs() <= 10.0 * tol);
            }
        }

        #[test]
        fn zero_distance_iff_on_segment(s in (arb_point(5.0), arb_point(5.0)).prop_map(|(a, b)| Segment::new(a, b)), t in 0.0f64..1.0) {
            let on = pt(s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y));
            prop_assert!(point_segment_distance(on, &s) <= tolerance());
        }

        // Cross-check of the capsule intersection predicate against a dense
        // sampling overlap test: 10^4 grid points of h1, intersect iff any
        // lies in h2. When the capsules overlap with margin s the overlap
        // contains a disk of radius s/2, so a grid finer than s/sqrt(2)
        // cannot miss it; margin cases are skipped.
        #[test]
        fn intersect_agrees_with_dense_sampling(
            a in arb_point(5.0), b in arb_point(5.0), rho1 in 0.5f64..2.0,
            c in arb_point(5.0), d in arb_point(5.0), rho2 in 0.5f64..2.0,
        ) {
            let h1 = hip(Segment::new(a, b), rho1);
            let h2 = hip(Segment::new(c, d), rho2);
            let gap = segment_segment_distance(&h1.seg, &h2.seg);
            prop_assume!((gap - (h1.rho + h2.rho)).abs() > 0.5);
            let bb = h1.bbox();
            let n = 100;
            let mut sampled_hit = false;
            'outer: for i in 0..n {
                for j in 0..n {
                    let p = pt(
                        bb.xmin + bb.width() * (i as f64 + 0.5) / n as f64,
                        bb.ymin + bb.height() * (j as f64 + 0.5) / n as f64,
                    );
                    if h1.contains(p) && h2.contains(p) {
                        sampled_hit = true;
                        break 'outer;
                    }
                }
            }
            prop_assert_eq!(h1.intersects(&h2), sampled_hit);
        }
    }
}
