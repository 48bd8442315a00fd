//! Problem instances: validation, JSON round-tripping, coverage
//! verification and reproducible random generation.
//!
//! Wire formats (all numbers decimal, writers emit at least 17 significant
//! digits so coordinates round-trip bit-for-bit):
//!
//! ```text
//! instance:  {"region":{"w":W,"h":H}, "rho":R, "segments":[[x1,y1,x2,y2],...]}
//! placement: {"algorithm":NAME, "sensors":[[x,y],...], "lower_bound":LB|null}
//! report:    {"all_covered":BOOL, "uncovered":[i,...]}
//! ```
//!
//! The region is anchored at the origin: it spans `[0,w] x [0,h]`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geom::{self, pt, Point, Rect, Segment};

/// A coverage problem: a region, a sensing range and the segments to cover.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub region: Rect,
    pub rho: f64,
    pub segments: Vec<Segment>,
}

impl Instance {
    /// Builds a validated instance on the origin-anchored region `[0,w] x [0,h]`.
    pub fn new(width: f64, height: f64, rho: f64, segments: Vec<Segment>) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::validation("region.w", "width must be positive"));
        }
        if !(height.is_finite() && height > 0.0) {
            return Err(Error::validation("region.h", "height must be positive"));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::validation("rho", "sensing range must be positive"));
        }
        let region = Rect::new(0.0, 0.0, width, height);
        for (i, s) in segments.iter().enumerate() {
            if !s.is_finite() {
                return Err(Error::validation(
                    format!("segments[{i}]"),
                    "coordinates must be finite",
                ));
            }
            if !(region.contains(s.a) && region.contains(s.b)) {
                return Err(Error::validation(
                    format!("segments[{i}]"),
                    "segment endpoints must lie inside the region",
                ));
            }
        }
        Ok(Instance { region, rho, segments })
    }

    pub fn width(&self) -> f64 {
        self.region.width()
    }

    pub fn height(&self) -> f64 {
        self.region.height()
    }

    /// Hippodromes of all segments, in input order.
    pub fn hippodromes(&self) -> Vec<crate::Hippodrome> {
        self.segments
            .iter()
            .map(|s| crate::Hippodrome { seg: *s, rho: self.rho })
            .collect()
    }

    /// Swap x and y everywhere. Used by the strip algorithms to reuse the
    /// horizontal code path for vertical strips.
    pub fn transpose(&self) -> Instance {
        Instance {
            region: self.region.transpose(),
            rho: self.rho,
            segments: self.segments.iter().map(Segment::transpose).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        parse_instance(text)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"region\":{\"w\":");
        out.push_str(&fmt_number(self.width()));
        out.push_str(",\"h\":");
        out.push_str(&fmt_number(self.height()));
        out.push_str("},\"rho\":");
        out.push_str(&fmt_number(self.rho));
        out.push_str(",\"segments\":[");
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!(
                "[{},{},{},{}]",
                fmt_number(s.a.x),
                fmt_number(s.a.y),
                fmt_number(s.b.x),
                fmt_number(s.b.y)
            ));
        }
        out.push_str("]}");
        out
    }
}

/// A sensor placement produced by one of the solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub algorithm: String,
    pub sensors: Vec<Point>,
    pub lower_bound: Option<f64>,
}

impl Placement {
    pub fn new(algorithm: impl Into<String>, sensors: Vec<Point>) -> Self {
        Placement { algorithm: algorithm.into(), sensors, lower_bound: None }
    }

    pub fn with_lower_bound(mut self, lb: f64) -> Self {
        self.lower_bound = Some(lb);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            algorithm: String,
            sensors: Vec<[f64; 2]>,
            #[serde(default)]
            lower_bound: Option<f64>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        let sensors: Vec<Point> = doc.sensors.iter().map(|s| pt(s[0], s[1])).collect();
        for (i, p) in sensors.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::validation(
                    format!("sensors[{i}]"),
                    "coordinates must be finite",
                ));
            }
        }
        if let Some(lb) = doc.lower_bound {
            if !(lb.is_finite() && lb >= 0.0) {
                return Err(Error::validation("lower_bound", "must be a nonnegative number"));
            }
        }
        Ok(Placement { algorithm: doc.algorithm, sensors, lower_bound: doc.lower_bound })
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"algorithm\":");
        out.push_str(&serde_json::to_string(&self.algorithm).expect("string encodes"));
        out.push_str(",\"sensors\":[");
        for (i, p) in self.sensors.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("[{},{}]", fmt_number(p.x), fmt_number(p.y)));
        }
        out.push_str("],\"lower_bound\":");
        match self.lower_bound {
            Some(lb) => out.push_str(&fmt_number(lb)),
            None => out.push_str("null"),
        }
        out.push('}');
        out
    }
}

/// Per-segment coverage verdicts for an (instance, placement) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub covered: Vec<bool>,
    pub all_covered: bool,
    pub uncovered_indices: Vec<usize>,
}

impl CoverageReport {
    pub fn to_json(&self) -> String {
        let idx: Vec<String> = self.uncovered_indices.iter().map(|i| i.to_string()).collect();
        format!(
            "{{\"all_covered\":{},\"uncovered\":[{}]}}",
            self.all_covered,
            idx.join(",")
        )
    }
}

/// Checks every segment against every sensor; `O(n * |sensors|)`.
pub fn verify_cover(inst: &Instance, placement: &Placement) -> CoverageReport {
    let tol = geom::tolerance();
    let covered: Vec<bool> = inst
        .segments
        .iter()
        .map(|s| {
            placement
                .sensors
                .iter()
                .any(|c| geom::point_segment_distance(*c, s) <= inst.rho + tol)
        })
        .collect();
    let uncovered_indices: Vec<usize> =
        covered.iter().enumerate().filter(|(_, c)| !**c).map(|(i, _)| i).collect();
    CoverageReport { all_covered: uncovered_indices.is_empty(), covered, uncovered_indices }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    #[derive(Deserialize)]
    struct RegionDoc {
        w: f64,
        h: f64,
    }
    #[derive(Deserialize)]
    struct Doc {
        region: RegionDoc,
        rho: f64,
        segments: Vec<[f64; 4]>,
    }
    let doc: Doc = serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
    let segments = doc
        .segments
        .iter()
        .map(|s| Segment::new(pt(s[0], s[1]), pt(s[2], s[3])))
        .collect();
    Instance::new(doc.region.w, doc.region.h, doc.rho, segments)
}

/// Segment orientation mode for the random generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationMode {
    AxisParallel,
    Arbitrary,
}

impl std::str::FromStr for OrientationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "axis-parallel" => Ok(OrientationMode::AxisParallel),
            "arbitrary" => Ok(OrientationMode::Arbitrary),
            other => Err(Error::validation(
                "orientation",
                format!("unknown orientation '{other}' (expected axis-parallel or arbitrary)"),
            )),
        }
    }
}

/// Parameters for [`random_instance`].
#[derive(Debug, Clone)]
pub struct GenParams {
    pub width: f64,
    pub height: f64,
    pub rho: f64,
    pub n: usize,
    pub orientation: OrientationMode,
    pub max_len: f64,
    pub seed: u64,
}

/// Generates a random instance, deterministic for a fixed seed.
///
/// Randomness comes from a ChaCha8 stream keyed by the seed, so instances
/// reproduce bit-for-bit across platforms. Axis-parallel mode flips a fair
/// coin per segment between horizontal and vertical; arbitrary mode draws
/// a uniform direction. Lengths are uniform in `[0, max_len]` and both
/// endpoints always land inside the region.
pub fn random_instance(params: &GenParams) -> Result<Instance> {
    if !(params.max_len >= 0.0 && params.max_len <= params.width.min(params.height)) {
        return Err(Error::validation(
            "max_len",
            "must satisfy 0 <= max_len <= min(width, height)",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut segments = Vec::with_capacity(params.n);
    for _ in 0..params.n {
        let len = rng.gen_range(0.0..=params.max_len);
        let (dx, dy) = match params.orientation {
            OrientationMode::AxisParallel => {
                if rng.gen_bool(0.5) {
                    (len, 0.0)
                } else {
                    (0.0, len)
                }
            }
            OrientationMode::Arbitrary => {
                let angle = rng.gen_range(0.0..std::f64::consts::TAU);
                (len * angle.cos(), len * angle.sin())
            }
        };
        let x0 = rng.gen_range(0.0..=(params.width - dx.abs()));
        let y0 = rng.gen_range(0.0..=(params.height - dy.abs()));
        let a = pt(x0 + if dx < 0.0 { -dx } else { 0.0 }, y0 + if dy < 0.0 { -dy } else { 0.0 });
        let b = pt(a.x + dx, a.y + dy);
        segments.push(Segment::new(a, b));
    }
    Instance::new(params.width, params.height, params.rho, segments)
}

/// Formats a number with enough digits to round-trip exactly: at least 17
/// significant decimal digits.
pub fn fmt_number(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".to_string() } else { "0".to_string() };
    }
    if x.abs() >= 1.0 && x.abs() < 1e17 {
        format!("{x:.17}")
    } else {
        format!("{x:.16e}")
    }
}
