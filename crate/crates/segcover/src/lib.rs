//! Sensor placement for covering line segments in a rectangle.
//!
//! A segment is covered by a sensor of range `rho` iff it meets the sensor's
//! disk, equivalently iff the sensor sits inside the segment's hippodrome
//! (capsule). The crate bundles the algorithms built on that equivalence:
//!
//! * [`exact_pierce`] — exhaustive minimum piercing of capsule sets, the
//!   ground-truth oracle and the inner solver of both PTAS variants;
//! * [`strip_cover`] — the 12-factor strip approximation for axis-parallel
//!   segments, with its per-orientation lower bound;
//! * [`ptas_axis`] — the sweep/strip PTAS for axis-parallel segments;
//! * [`ptas_arbitrary`] — the shifted-grid PTAS for arbitrarily oriented
//!   segments of bounded length;
//! * [`hardness`] — a vertex-cover-to-coverage reduction generator with an
//!   end-to-end equivalence checker;
//! * [`instance`] — the problem model, JSON formats, verification and
//!   random generation;
//! * [`render`] — SVG output of instances and placements.

pub mod error;
pub mod exact_pierce;
pub mod geom;
pub mod hardness;
pub mod instance;
pub mod ptas_arbitrary;
pub mod ptas_axis;
pub mod render;
pub mod strip_cover;

pub use error::{Error, Result};
pub use geom::{Hippodrome, Point, Rect, Segment};
pub use instance::{CoverageReport, Instance, Placement};
