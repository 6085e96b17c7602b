//! Race-track geometry: an arc-length-parameterized piecewise-linear
//! centerline with constant half-width.
//!
//! The centerline provides the two quantities the game is built on: the
//! progress `r` of an agent (arc length of its closest centerline point,
//! measured from the start line) and the boundary value `h` (distance to the
//! centerline minus the half-width, feasible iff `<= 0`).
//!
//! Projection minimizes over all segments, which is exact but nonsmooth at
//! Voronoi boundaries between segments. The optimizer therefore works with a
//! [`FrozenSegment`]: the segment assignment is frozen at the current iterate
//! and refreshed once per outer solver iteration, which makes progress affine
//! and the lateral distance smooth during inner iterations.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dynamics::AgentState;
use crate::{Error, Result};

/// Minimum allowed segment length when validating waypoints.
const MIN_SEGMENT_LEN: f64 = 1e-9;

/// On-disk representation of a track.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrackFile {
    pub waypoints: Vec<[f64; 2]>,
    pub half_width: f64,
    pub start_s: f64,
    pub finish_s: f64,
    #[serde(default)]
    pub closed: bool,
}

/// Arc-length-parameterized centerline with half-width and start/finish lines.
#[derive(Debug, Clone)]
pub struct Track {
    waypoints: Vec<[f64; 2]>,
    half_width: f64,
    /// Arc length at each waypoint; `cumulative[0] == 0`.
    cumulative: Vec<f64>,
    total_length: f64,
    start_s: f64,
    finish_s: f64,
    closed: bool,
}

/// Result of projecting a point onto the centerline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    /// Arc length of the closest centerline point.
    pub s: f64,
    /// Unsigned distance from the query point to the centerline.
    pub lateral: f64,
    /// Index of the segment holding the closest point.
    pub segment_index: usize,
}

/// A segment assignment captured at one iterate, giving smooth progress and
/// lateral functions for use inside an optimization.
#[derive(Debug, Clone, Copy)]
pub struct FrozenSegment {
    pub index: usize,
    origin: [f64; 2],
    tangent: [f64; 2],
    s0: f64,
    len: f64,
}

impl Track {
    pub fn new(
        waypoints: Vec<[f64; 2]>,
        half_width: f64,
        start_s: f64,
        finish_s: f64,
        closed: bool,
    ) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::Config("track needs at least 2 waypoints".into()));
        }
        for p in &waypoints {
            if !p[0].is_finite() || !p[1].is_finite() {
                return Err(Error::Config("non-finite waypoint".into()));
            }
        }
        let mut cumulative = Vec::with_capacity(waypoints.len());
        cumulative.push(0.0);
        for w in waypoints.windows(2) {
            let len = dist(w[0], w[1]);
            if len <= MIN_SEGMENT_LEN {
                return Err(Error::Config(format!(
                    "degenerate segment of length {len} between consecutive waypoints"
                )));
            }
            cumulative.push(cumulative.last().unwrap() + len);
        }
        let mut total_length = *cumulative.last().unwrap();
        if closed {
            let closing = dist(*waypoints.last().unwrap(), waypoints[0]);
            if closing <= MIN_SEGMENT_LEN {
                return Err(Error::Config(
                    "closed track: last waypoint coincides with the first".into(),
                ));
            }
            total_length += closing;
        }
        if !(half_width > 0.0) {
            return Err(Error::Config(format!("half_width must be positive, got {half_width}")));
        }
        if !(0.0 <= start_s && start_s < finish_s && finish_s <= total_length) {
            return Err(Error::Config(format!(
                "need 0 <= start_s < finish_s <= total length ({total_length}), got start_s={start_s}, finish_s={finish_s}"
            )));
        }
        Ok(Track {
            waypoints,
            half_width,
            cumulative,
            total_length,
            start_s,
            finish_s,
            closed,
        })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Arc<Track>> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| {
            Error::Config(format!("cannot read track {}: {e}", path.as_ref().display()))
        })?;
        let file: TrackFile = serde_json::from_str(&text)?;
        Ok(Arc::new(Track::new(
            file.waypoints,
            file.half_width,
            file.start_s,
            file.finish_s,
            file.closed,
        )?))
    }

    pub fn to_file_struct(&self) -> TrackFile {
        TrackFile {
            waypoints: self.waypoints.clone(),
            half_width: self.half_width,
            start_s: self.start_s,
            finish_s: self.finish_s,
            closed: self.closed,
        }
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    pub fn start_s(&self) -> f64 {
        self.start_s
    }

    pub fn finish_s(&self) -> f64 {
        self.finish_s
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    /// Progress an agent must accumulate to finish.
    pub fn race_length(&self) -> f64 {
        self.finish_s - self.start_s
    }

    fn num_segments(&self) -> usize {
        if self.closed {
            self.waypoints.len()
        } else {
            self.waypoints.len() - 1
        }
    }

    /// Segment endpoints, base arc length, length, and unit tangent.
    fn segment(&self, i: usize) -> ([f64; 2], f64, f64, [f64; 2]) {
        let a = self.waypoints[i];
        let b = if i + 1 < self.waypoints.len() {
            self.waypoints[i + 1]
        } else {
            self.waypoints[0] // closing segment of a loop
        };
        let len = dist(a, b);
        let tangent = [(b[0] - a[0]) / len, (b[1] - a[1]) / len];
        (a, self.cumulative[i], len, tangent)
    }

    /// Closest-point projection over all segments. Ties across segments are
    /// broken toward the lowest segment index.
    pub fn project(&self, point: [f64; 2]) -> Projection {
        let mut best = Projection {
            s: 0.0,
            lateral: f64::INFINITY,
            segment_index: 0,
        };
        for i in 0..self.num_segments() {
            let (a, s0, len, tangent) = self.segment(i);
            let rel = [point[0] - a[0], point[1] - a[1]];
            let t = (rel[0] * tangent[0] + rel[1] * tangent[1]).clamp(0.0, len);
            let foot = [a[0] + t * tangent[0], a[1] + t * tangent[1]];
            let lateral = dist(point, foot);
            if lateral < best.lateral {
                best = Projection {
                    s: s0 + t,
                    lateral,
                    segment_index: i,
                };
            }
        }
        best
    }

    /// Path covered along the track from the start line.
    pub fn progress(&self, state: &AgentState) -> f64 {
        self.progress_xy(state.position_xy())
    }

    pub fn progress_xy(&self, point: [f64; 2]) -> f64 {
        let s = self.project(point).s;
        if self.closed {
            (s - self.start_s).rem_euclid(self.total_length)
        } else {
            s - self.start_s
        }
    }

    /// Boundary constraint value: `<= 0` iff the agent is on the track.
    pub fn boundary_value(&self, state: &AgentState) -> f64 {
        self.boundary_value_xy(state.position_xy())
    }

    pub fn boundary_value_xy(&self, point: [f64; 2]) -> f64 {
        self.project(point).lateral - self.half_width
    }

    /// Gradient of the arc-length coordinate with respect to position, with
    /// the segment assignment frozen at the current projection: the unit
    /// tangent of the assigned segment.
    pub fn smooth_progress_gradient(&self, point: [f64; 2]) -> [f64; 2] {
        let proj = self.project(point);
        let (_, _, _, tangent) = self.segment(proj.segment_index);
        tangent
    }

    /// Captures the segment assignment at `point` for smooth re-evaluation.
    pub fn freeze(&self, point: [f64; 2]) -> FrozenSegment {
        let proj = self.project(point);
        let (a, s0, len, tangent) = self.segment(proj.segment_index);
        FrozenSegment {
            index: proj.segment_index,
            origin: a,
            tangent,
            s0,
            len,
        }
    }

    /// Centerline point at arc length `s` (clamped to the track for open
    /// tracks, wrapped for closed ones).
    pub fn point_at(&self, s: f64) -> [f64; 2] {
        let (a, s0, _, tangent) = self.segment(self.segment_index_at(s));
        let s = self.clamp_or_wrap(s);
        [
            a[0] + (s - s0) * tangent[0],
            a[1] + (s - s0) * tangent[1],
        ]
    }

    /// Unit tangent of the segment containing arc length `s`.
    pub fn tangent_at(&self, s: f64) -> [f64; 2] {
        let (_, _, _, tangent) = self.segment(self.segment_index_at(s));
        tangent
    }

    fn clamp_or_wrap(&self, s: f64) -> f64 {
        if self.closed {
            s.rem_euclid(self.total_length)
        } else {
            s.clamp(0.0, self.total_length)
        }
    }

    fn segment_index_at(&self, s: f64) -> usize {
        let s = self.clamp_or_wrap(s);
        let n = self.num_segments();
        for i in (0..n).rev() {
            if s >= self.cumulative[i] {
                return i;
            }
        }
        0
    }
}

impl FrozenSegment {
    /// Affine extension of the arc-length coordinate on the frozen segment:
    /// exact whenever the point projects to the segment interior, smooth
    /// everywhere.
    pub fn progress_affine(&self, point: [f64; 2]) -> f64 {
        self.s0
            + self.tangent[0] * (point[0] - self.origin[0])
            + self.tangent[1] * (point[1] - self.origin[1])
    }

    /// Gradient of [`Self::progress_affine`] (constant).
    pub fn progress_gradient(&self) -> [f64; 2] {
        self.tangent
    }

    /// Distance to the frozen segment and its gradient with respect to the
    /// query point. The gradient is the unit vector from the clamped foot
    /// point to the query point; zero exactly on the segment.
    pub fn lateral(&self, point: [f64; 2]) -> (f64, [f64; 2]) {
        let rel = [point[0] - self.origin[0], point[1] - self.origin[1]];
        let t = (rel[0] * self.tangent[0] + rel[1] * self.tangent[1]).clamp(0.0, self.len);
        let foot = [
            self.origin[0] + t * self.tangent[0],
            self.origin[1] + t * self.tangent[1],
        ];
        let d = dist(point, foot);
        if d <= 1e-12 {
            (d, [0.0, 0.0])
        } else {
            (d, [(point[0] - foot[0]) / d, (point[1] - foot[1]) / d])
        }
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Straight test course along +x.
pub fn straight_track(length: f64, half_width: f64, start_s: f64, finish_s: f64) -> Arc<Track> {
    Arc::new(
        Track::new(
            vec![[0.0, 0.0], [length, 0.0]],
            half_width,
            start_s,
            finish_s,
            false,
        )
        .expect("valid straight track"),
    )
}

/// U-shaped test course: two straights joined by a sampled semicircular arc
/// of radius `arc_radius`. Geometric length is roughly
/// `leg_in + pi * arc_radius + leg_out`.
pub fn u_course(
    leg_in: f64,
    leg_out: f64,
    arc_radius: f64,
    half_width: f64,
    start_s: f64,
    finish_s: f64,
) -> Arc<Track> {
    let mut waypoints = vec![[0.0, 0.0], [leg_in, 0.0]];
    let center = [leg_in, arc_radius];
    let samples = 24;
    for k in 1..=samples {
        let ang = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * k as f64 / samples as f64;
        waypoints.push([
            center[0] + arc_radius * ang.cos(),
            center[1] + arc_radius * ang.sin(),
        ]);
    }
    waypoints.push([leg_in - leg_out, 2.0 * arc_radius]);
    Arc::new(
        Track::new(waypoints, half_width, start_s, finish_s, false).expect("valid u course"),
    )
}
