//! Vertex-cover-to-line-covering reduction instances.
//!
//! A cubic planar graph is drawn orthogonally: vertices on a baseline,
//! edges routed as axis-parallel staples above or below it (a two-page
//! layout found by backtracking; the layout exists for the planar
//! max-degree-3 graphs this generator targets, and the search degrades
//! into a validation error otherwise). Bends become white vertices and
//! every edge path is padded to a common odd segment count
//! `path_len = 2m + 1 >= 5`. With the sensing range below half the
//! shortest segment, hippodromes of segments that share no embedding
//! vertex are disjoint, and the minimum sensor count equals
//! `tau + m * |E|` where `tau` is the minimum vertex cover. The checker
//! verifies that identity end to end with the exact solver.

use crate::error::{Error, Result};
use crate::exact_pierce::{min_pierce, CandidateSet, PierceProblem};
use crate::geom::{pt, Point, Segment};
use crate::instance::Instance;

/// Horizontal spacing between consecutive baseline positions, in grid
/// units, before scaling. Leaves room for the one-unit port jogs.
const SPACING: f64 = 4.0;

/// Search nodes allowed when looking for a two-page layout.
const LAYOUT_SEARCH_LIMIT: u64 = 2_000_000;

/// A simple connected graph with maximum degree three.
#[derive(Debug, Clone)]
pub struct CubicPlanarGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CubicPlanarGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("n", "graph must have at least one vertex"));
        }
        if edges.is_empty() {
            return Err(Error::validation("edges", "graph must have at least one edge"));
        }
        let mut seen = std::collections::HashSet::new();
        let mut degree = vec![0usize; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::validation(
                    format!("edges[{i}]"),
                    format!("vertex index out of range (n = {n})"),
                ));
            }
            if u == v {
                return Err(Error::validation(format!("edges[{i}]"), "self loops are not allowed"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::validation(format!("edges[{i}]"), "duplicate edge"));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d > 3) {
            return Err(Error::validation(
                "edges",
                format!("vertex {v} has degree {} > 3", degree[v]),
            ));
        }
        let g = CubicPlanarGraph { n, edges };
        if !g.is_connected() {
            return Err(Error::validation("edges", "graph must be connected"));
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parses `{"n": <int>, "edges": [[u, v], ...]}` with 0-based vertices.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Doc {
            n: usize,
            edges: Vec<[usize; 2]>,
        }
        let doc: Doc =
            serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        CubicPlanarGraph::new(doc.n, doc.edges.iter().map(|e| (e[0], e[1])).collect())
    }
}

/// Ready-made graphs for tests and benchmarks.
pub mod corpus {
    use super::CubicPlanarGraph;

    pub fn k2() -> CubicPlanarGraph {
        CubicPlanarGraph::new(2, vec![(0, 1)]).unwrap()
    }

    pub fn p3() -> CubicPlanarGraph {
        CubicPlanarGraph::new(3, vec![(0, 1), (1, 2)]).unwrap()
    }

    pub fn k3() -> CubicPlanarGraph {
        CubicPlanarGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    pub fn c4() -> CubicPlanarGraph {
        CubicPlanarGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    pub fn k4() -> CubicPlanarGraph {
        CubicPlanarGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }
}

/// One original edge drawn as an axis-parallel path.
#[derive(Debug, Clone)]
pub struct EdgePath {
    /// Graph endpoints `(u, v)`; the path runs from `u`'s point to `v`'s.
    pub ends: (usize, usize),
    pub segments: Vec<Segment>,
}

/// An orthogonal drawing with per-edge paths of uniform odd length.
#[derive(Debug, Clone)]
pub struct AugmentedEmbedding {
    /// Original ("black") vertex positions.
    pub black: Vec<Point>,
    /// Added ("white") vertices: bends and padding subdivisions.
    pub white: Vec<Point>,
    pub paths: Vec<EdgePath>,
    /// Segments per edge path: odd, at least five, identical across edges.
    pub path_len: usize,
    /// Length of the shortest drawn segment (`d`).
    pub shortest_segment: f64,
    /// Smallest distance between two segments that share no embedding
    /// vertex; the sensing range must stay below half of both.
    pub min_separation: f64,
}

struct TwoPageLayout {
    /// Vertex -> baseline position index.
    pos: Vec<usize>,
    /// Edge -> drawn above (true) or below (false) the baseline.
    up: Vec<bool>,
}

fn interleave(p1: (usize, usize), p2: (usize, usize)) -> bool {
    let (a1, b1) = (p1.0.min(p1.1), p1.0.max(p1.1));
    let (a2, b2) = (p2.0.min(p2.1), p2.0.max(p2.1));
    (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1)
}

/// Edges that pairwise interleave must go on different pages: the conflict
/// graph has to be bipartite. Returns the page 2-coloring if it is.
fn color_pages(g: &CubicPlanarGraph, pos: &[usize], placed: usize) -> Option<Vec<bool>> {
    let m = g.edges.len();
    let ready: Vec<usize> = (0..m)
        .filter(|&e| pos[g.edges[e].0] < placed && pos[g.edges[e].1] < placed)
        .collect();
    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &e) in ready.iter().enumerate() {
        for &f in &ready[i + 1..] {
            let pe = (pos[g.edges[e].0], pos[g.edges[e].1]);
            let pf = (pos[g.edges[f].0], pos[g.edges[f].1]);
            if interleave(pe, pf) {
                conflicts[e].push(f);
                conflicts[f].push(e);
            }
        }
    }
    let mut page: Vec<Option<bool>> = vec![None; m];
    for &root in &ready {
        if page[root].is_some() {
            continue;
        }
        page[root] = Some(true);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(e) = queue.pop_front() {
            let pe = page[e].unwrap();
            for &f in &conflicts[e] {
                match page[f] {
                    None => {
                        page[f] = Some(!pe);
                        queue.push_back(f);
                    }
                    Some(pf) if pf == pe => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(page.into_iter().map(|p| p.unwrap_or(true)).collect())
}

fn find_two_page_layout(g: &CubicPlanarGraph) -> Result<TwoPageLayout> {
    const UNPLACED: usize = usize::MAX;
    fn go(
        g: &CubicPlanarGraph,
        pos: &mut Vec<usize>,
        order: &mut Vec<usize>,
        nodes: &mut u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > LAYOUT_SEARCH_LIMIT {
            return Err(Error::resource_limit(
                "two-page layout search exceeded its node limit; the graph is too large",
            ));
        }
        let placed = order.len();
        if color_pages(g, pos, placed).is_none() {
            return Ok(false);
        }
        if placed == g.n {
            return Ok(true);
        }
        for v in 0..g.n {
            if pos[v] != UNPLACED {
                continue;
            }
            pos[v] = placed;
            order.push(v);
            if go(g, pos, order, nodes)? {
                return Ok(true);
            }
            order.pop();
            pos[v] = UNPLACED;
        }
        Ok(false)
    }

    let mut pos = vec![UNPLACED; g.n];
    let mut order = Vec::with_capacity(g.n);
    let mut nodes = 0u64;
    if !go(g, &mut pos, &mut order, &mut nodes)? {
        return Err(Error::validation(
            "edges",
            "graph admits no two-page layout (is it planar with degree <= 3?)",
        ));
    }
    let up = color_pages(g, &pos, g.n).expect("final layout passed the incremental check");
    Ok(TwoPageLayout { pos, up })
}

/// Stem x-offsets at each endpoint: -1, 0 or +1 around the vertex. A
/// nonzero offset adds a one-unit baseline jog to the path.
fn assign_stems(g: &CubicPlanarGraph, layout: &TwoPageLayout) -> Vec<(f64, f64)> {
    let m = g.edges.len();
    let mut stems = vec![(f64::NAN, f64::NAN); m];
    for v in 0..g.n {
        for page in [true, false] {
            // Edges of this vertex on this page, split by direction.
            let mut left: Vec<usize> = Vec::new();
            let mut right: Vec<usize> = Vec::new();
            for (e, &(a, b)) in g.edges.iter().enumerate() {
                if layout.up[e] != page || (a != v && b != v) {
                    continue;
                }
                let other = if a == v { b } else { a };
                if layout.pos[other] < layout.pos[v] {
                    left.push(e);
                } else {
                    right.push(e);
                }
            }
            // Farther targets first. Left-going edges take the lower
            // offsets so every left stem sits left of every right stem;
            // within a direction the farther edge takes the outer offset,
            // which nests the stem intervals instead of crossing them.
            left.sort_by_key(|&e| {
                let (a, b) = g.edges[e];
                layout.pos[if a == v { b } else { a }]
            });
            right.sort_by_key(|&e| {
                let (a, b) = g.edges[e];
                std::cmp::Reverse(layout.pos[if a == v { b } else { a }])
            });
            let offsets: Vec<(usize, f64)> = match (left.len(), right.len()) {
                (0, 0) => vec![],
                (1, 0) => vec![(left[0], 0.0)],
                (0, 1) => vec![(right[0], 0.0)],
                (2, 0) => vec![(left[0], 0.0), (left[1], -1.0)],
                (0, 2) => vec![(right[0], 0.0), (right[1], 1.0)],
                (1, 1) => vec![(left[0], -1.0), (right[0], 0.0)],
                (3, 0) => vec![(left[0], 1.0), (left[1], 0.0), (left[2], -1.0)],
                (0, 3) => vec![(right[0], -1.0), (right[1], 0.0), (right[2], 1.0)],
                (2, 1) => vec![(left[0], 0.0), (left[1], -1.0), (right[0], 1.0)],
                (1, 2) => vec![(left[0], -1.0), (right[0], 0.0), (right[1], 1.0)],
                other => unreachable!("degree above three at one page: {other:?}"),
            };
            for (e, off) in offsets {
                let x = layout.pos[v] as f64 * SPACING + off;
                if g.edges[e].0 == v {
                    stems[e].0 = x;
                } else {
                    stems[e].1 = x;
                }
            }
        }
    }
    stems
}

/// Track heights per page: an edge sits one unit above the tallest edge
/// nested strictly inside its stem interval.
fn assign_heights(g: &CubicPlanarGraph, layout: &TwoPageLayout, stems: &[(f64, f64)]) -> Vec<f64> {
    let m = g.edges.len();
    let mut heights = vec![0.0f64; m];
    for page in [true, false] {
        let mut edges: Vec<usize> = (0..m).filter(|&e| layout.up[e] == page).collect();
        let span = |e: usize| {
            let (s, t) = stems[e];
            (s.min(t), s.max(t))
        };
        edges.sort_by(|&a, &b| {
            let la = span(a).1 - span(a).0;
            let lb = span(b).1 - span(b).0;
            la.partial_cmp(&lb).unwrap()
        });
        for (i, &e) in edges.iter().enumerate() {
            let (lo, hi) = span(e);
            let mut h = 1.0f64;
            for &f in &edges[..i] {
                let (flo, fhi) = span(f);
                if lo < flo && fhi < hi {
                    h = h.max(heights[f] + 1.0);
                }
            }
            heights[e] = h;
        }
    }
    heights
}

/// Draws the graph and pads every edge path to a common odd segment count.
pub fn embed_cubic_planar(g: &CubicPlanarGraph) -> Result<AugmentedEmbedding> {
    let layout = find_two_page_layout(g)?;
    let stems = assign_stems(g, &layout);
    let heights = assign_heights(g, &layout, &stems);

    // Staple polylines on the unit grid.
    let mut polylines: Vec<Vec<Point>> = Vec::with_capacity(g.edges.len());
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        let xu = layout.pos[u] as f64 * SPACING;
        let xv = layout.pos[v] as f64 * SPACING;
        let (su, sv) = stems[e];
        let h = if layout.up[e] { heights[e] } else { -heights[e] };
        let mut pts = vec![pt(xu, 0.0)];
        if su != xu {
            pts.push(pt(su, 0.0));
        }
        pts.push(pt(su, h));
        pts.push(pt(sv, h));
        if sv != xv {
            pts.push(pt(sv, 0.0));
        }
        pts.push(pt(xv, 0.0));
        polylines.push(pts);
    }

    let max_alpha = polylines.iter().map(|p| p.len() - 1).max().unwrap_or(0);
    let mut path_len = max_alpha.max(5);
    if path_len % 2 == 0 {
        path_len += 1;
    }

    // Scale so the longest segment of every path can absorb the padding
    // subdivisions in whole grid units.
    let scale = path_len as f64;
    for pts in &mut polylines {
        for p in pts.iter_mut() {
            *p = pt(p.x * scale, p.y * scale);
        }
    }

    for pts in &mut polylines {
        let need = path_len - (pts.len() - 1);
        if need == 0 {
            continue;
        }
        let longest = (0..pts.len() - 1)
            .max_by(|&i, &j| {
                pts[i].dist(pts[i + 1]).partial_cmp(&pts[j].dist(pts[j + 1])).unwrap()
            })
            .unwrap();
        let p = pts[longest];
        let q = pts[longest + 1];
        let ux = if q.x != p.x { (q.x - p.x).signum() } else { 0.0 };
        let uy = if q.y != p.y { (q.y - p.y).signum() } else { 0.0 };
        let inserted: Vec<Point> =
            (1..=need).map(|j| pt(p.x + ux * j as f64, p.y + uy * j as f64)).collect();
        pts.splice(longest + 1..longest + 1, inserted);
    }

    let black: Vec<Point> =
        (0..g.n).map(|v| pt(layout.pos[v] as f64 * SPACING * scale, 0.0)).collect();
    let mut white = Vec::new();
    let mut paths = Vec::with_capacity(g.edges.len());
    for (e, pts) in polylines.iter().enumerate() {
        white.extend(pts[1..pts.len() - 1].iter().copied());
        let segments: Vec<Segment> =
            pts.windows(2).map(|w| Segment::new(w[0], w[1])).collect();
        paths.push(EdgePath { ends: g.edges[e], segments });
    }

    let mut emb = AugmentedEmbedding {
        black,
        white,
        paths,
        path_len,
        shortest_segment: 0.0,
        min_separation: 0.0,
    };
    emb.compute_metrics();
    emb.validate()?;
    Ok(emb)
}

/// Segments that are allowed to touch: consecutive on one path, or
/// terminal segments of two paths at a common black vertex.
fn contact_allowed(
    paths: &[EdgePath],
    path_len: usize,
    a: (usize, usize),
    b: (usize, usize),
) -> bool {
    if a.0 == b.0 {
        return a.1.abs_diff(b.1) == 1;
    }
    let terminal = |(e, i): (usize, usize)| -> Vec<usize> {
        let mut at = Vec::new();
        if i == 0 {
            at.push(paths[e].ends.0);
        }
        if i == path_len - 1 {
            at.push(paths[e].ends.1);
        }
        at
    };
    let ta = terminal(a);
    let tb = terminal(b);
    ta.iter().any(|v| tb.contains(v))
}

impl AugmentedEmbedding {
    fn all_segments(&self) -> Vec<((usize, usize), Segment)> {
        self.paths
            .iter()
            .enumerate()
            .flat_map(|(e, p)| {
                p.segments.iter().enumerate().map(move |(i, s)| ((e, i), *s))
            })
            .collect()
    }

    fn compute_metrics(&mut self) {
        let segs = self.all_segments();
        self.shortest_segment = segs
            .iter()
            .map(|(_, s)| s.length())
            .fold(f64::INFINITY, f64::min);
        let mut sep = f64::INFINITY;
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                if contact_allowed(&self.paths, self.path_len, segs[i].0, segs[j].0) {
                    continue;
                }
                sep = sep.min(crate::geom::segment_segment_distance(&segs[i].1, &segs[j].1));
            }
        }
        self.min_separation = sep;
    }

    fn validate(&self) -> Result<()> {
        let internal = |msg: String| Error::validation("embedding", msg);
        for (e, p) in self.paths.iter().enumerate() {
            if p.segments.len() != self.path_len {
                return Err(internal(format!(
                    "path {e} has {} segments, expected {}",
                    p.segments.len(),
                    self.path_len
                )));
            }
            for (i, s) in p.segments.iter().enumerate() {
                let axis_parallel = s.a.x == s.b.x || s.a.y == s.b.y;
                let integral = [s.a.x, s.a.y, s.b.x, s.b.y].iter().all(|c| c.fract() == 0.0);
                if !axis_parallel || !integral || s.is_point() {
                    return Err(internal(format!("segment {i} of path {e} is malformed")));
                }
            }
        }
        if self.path_len.is_multiple_of(2) || self.path_len < 5 {
            return Err(internal(format!("path_len {} is not an odd count >= 5", self.path_len)));
        }
        if self.shortest_segment < 1.0 {
            return Err(internal("a segment is shorter than one grid unit".into()));
        }
        if self.min_separation < 1.0 {
            return Err(internal(format!(
                "non-adjacent segments come within {} of each other",
                self.min_separation
            )));
        }
        Ok(())
    }
}

/// Minimum vertex cover size by exhaustive search, smallest subsets first.
/// Guarded to 16 vertices.
pub fn min_vertex_cover(g: &CubicPlanarGraph) -> Result<usize> {
    if g.n > 16 {
        return Err(Error::resource_limit(format!(
            "vertex cover search is limited to 16 vertices, got {}",
            g.n
        )));
    }
    for size in 0..=g.n {
        let mut subset: Vec<usize> = Vec::with_capacity(size);
        if covers_with(g, 0, size, &mut subset) {
            return Ok(size);
        }
    }
    unreachable!("the full vertex set always covers");
}

fn covers_with(g: &CubicPlanarGraph, start: usize, left: usize, subset: &mut Vec<usize>) -> bool {
    if left == 0 {
        return g
            .edges
            .iter()
            .all(|&(u, v)| subset.contains(&u) || subset.contains(&v));
    }
    for v in start..g.n {
        subset.push(v);
        if covers_with(g, v + 1, left - 1, subset) {
            subset.pop();
            return true;
        }
        subset.pop();
    }
    false
}

/// How embedding elements map into the generated instance.
#[derive(Debug, Clone)]
pub struct ReductionMapping {
    /// Instance-coordinate position of each graph vertex.
    pub black: Vec<Point>,
    /// Instance-coordinate positions of the white vertices.
    pub white: Vec<Point>,
    /// `(edge index, position along the path)` per instance segment.
    pub segment_owner: Vec<(usize, usize)>,
    pub path_len: usize,
    pub rho: f64,
}

/// Draws the graph and converts it into a coverage instance with
/// `rho = min(d, separation) / 4`, strictly below `d / 2`.
pub fn reduce_to_instance(g: &CubicPlanarGraph) -> Result<(Instance, ReductionMapping)> {
    let emb = embed_cubic_planar(g)?;
    let rho = emb.shortest_segment.min(emb.min_separation) / 4.0;

    let mut xmin = f64::INFINITY;
    let mut ymin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for (_, s) in emb.all_segments() {
        xmin = xmin.min(s.min_x());
        xmax = xmax.max(s.max_x());
        ymin = ymin.min(s.min_y());
        ymax = ymax.max(s.max_y());
    }
    let shift = |p: Point| pt(p.x - xmin + rho, p.y - ymin + rho);
    let width = xmax - xmin + 2.0 * rho;
    let height = ymax - ymin + 2.0 * rho;

    let mut segments = Vec::new();
    let mut segment_owner = Vec::new();
    for (e, path) in emb.paths.iter().enumerate() {
        for (i, s) in path.segments.iter().enumerate() {
            segments.push(Segment::new(shift(s.a), shift(s.b)));
            segment_owner.push((e, i));
        }
    }
    let inst = Instance::new(width, height, rho, segments)?;
    let mapping = ReductionMapping {
        black: emb.black.iter().map(|&p| shift(p)).collect(),
        white: emb.white.iter().map(|&p| shift(p)).collect(),
        segment_owner,
        path_len: emb.path_len,
        rho,
    };
    Ok((inst, mapping))
}

/// End-to-end reduction check: the minimum piercing count of the generated
/// instance must equal `tau + m * |E|` with `m = (path_len - 1) / 2`.
///
/// The exact solve adds the embedding vertices as candidate points (a
/// sensor covering several incident segments can always be moved onto
/// their shared vertex).
pub fn check_reduction(g: &CubicPlanarGraph) -> Result<bool> {
    let tau = min_vertex_cover(g)?;
    let (inst, mapping) = reduce_to_instance(g)?;
    let m = (mapping.path_len - 1) / 2;
    let expected = tau + m * g.edges.len();
    let vertex_candidates: Vec<Point> =
        mapping.black.iter().chain(mapping.white.iter()).copied().collect();
    let prob = PierceProblem::new(inst.hippodromes(), inst.region)
        .with_cap(expected)
        .with_candidates(CandidateSet::Augmented(vertex_candidates));
    let sol = min_pierce(&prob)?;
    Ok(match sol {
        Some(points) => points.len() == expected,
        None => false, // even `expected` sensors do not suffice
    })
}
