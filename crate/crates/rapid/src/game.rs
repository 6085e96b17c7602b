//! The racing game: per-agent costs, the potential function, the stacked
//! inequality constraints, and executable equilibrium checks.
//!
//! Agent `i` minimizes
//! `J_i = -r(x_i_T) + alpha * sum_{t=0}^{T-1} sum_{j != i} d(x_i_t, x_j_t)^2`,
//! the negative terminal progress plus a proximity term that rewards staying
//! close to opponents (blocking when ahead, catching up when behind). The
//! game admits the potential
//! `P = -sum_i r(x_i_T) + alpha * sum_t sum_{i<j} d^2`, whose change under a
//! unilateral deviation equals the deviating agent's cost change exactly;
//! [`check_potential_identity`] verifies that identity on concrete trajectory
//! pairs, and [`nash_deviation_gap`] probes solutions for improving feasible
//! unilateral deviations.

use std::path::Path;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{agent_distance_sq, rollout, ControlInput, ModelId, Trajectory};
use crate::track::Track;
use crate::{Error, Result};

/// Margin realizing the strict collision inequality `d > d_min` as the closed
/// constraint `d_min^2 - d^2 + COLLISION_MARGIN <= 0` (meters squared).
pub const COLLISION_MARGIN: f64 = 1e-4;

/// Feasibility tolerance used when classifying trajectories (matches the
/// solver's default `eps_feas`).
pub const FEAS_EPS: f64 = 1e-4;

/// Parameters of one racing game instance.
#[derive(Debug, Clone)]
pub struct GameConfig {
    pub n: usize,
    pub t: usize,
    pub dt: f64,
    pub alpha: f64,
    pub d_min: f64,
    /// Per-control-dimension lower bounds, shared by all agents.
    pub u_min: Vec<f64>,
    pub u_max: Vec<f64>,
    /// Per-agent speed caps.
    pub v_max: Vec<f64>,
    pub track: Arc<Track>,
    pub model: ModelId,
}

/// Serialized form of [`GameConfig`]; `track` is a path to a track file,
/// resolved against the config file's directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameConfigFile {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub dt: f64,
    pub alpha: f64,
    pub d_min: f64,
    pub u_min: Vec<f64>,
    pub u_max: Vec<f64>,
    pub v_max: Vec<f64>,
    pub track: String,
    pub model: ModelId,
}

impl GameConfig {
    /// Stock racing setup: Dubins cars, 5-step horizon at 0.1 s, gentle
    /// proximity weight, 0.3 m minimum separation, symmetric control bounds.
    pub fn new(track: Arc<Track>, n: usize) -> Self {
        GameConfig {
            n,
            t: 5,
            dt: 0.1,
            alpha: 0.05,
            d_min: 0.3,
            u_min: vec![-1.5, -1.5],
            u_max: vec![1.5, 1.5],
            v_max: vec![2.5; n],
            track,
            model: ModelId::Dubins,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_horizon(mut self, t: usize, dt: f64) -> Self {
        self.t = t;
        self.dt = dt;
        self
    }

    pub fn with_v_max(mut self, v_max: Vec<f64>) -> Self {
        self.v_max = v_max;
        self
    }

    pub fn with_bounds(mut self, u_min: Vec<f64>, u_max: Vec<f64>) -> Self {
        self.u_min = u_min;
        self.u_max = u_max;
        self
    }

    pub fn with_d_min(mut self, d_min: f64) -> Self {
        self.d_min = d_min;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Config("N must be >= 1".into()));
        }
        if self.t < 1 {
            return Err(Error::Config("T must be >= 1".into()));
        }
        if !(self.dt > 0.0) {
            return Err(Error::Config("dt must be positive".into()));
        }
        if !(self.d_min > 0.0) {
            return Err(Error::Config("d_min must be positive".into()));
        }
        if !(self.alpha >= 0.0) {
            return Err(Error::Config("alpha must be nonnegative".into()));
        }
        let m = self.model.control_dim();
        if self.u_min.len() != m || self.u_max.len() != m {
            return Err(Error::Config(format!(
                "control bounds must have {m} entries for model {:?}",
                self.model
            )));
        }
        for (lo, hi) in self.u_min.iter().zip(&self.u_max) {
            if !(lo < hi) {
                return Err(Error::Config(format!(
                    "need u_min < u_max elementwise, got [{lo}, {hi}]"
                )));
            }
        }
        if self.v_max.len() != self.n {
            return Err(Error::Config(format!(
                "v_max needs one entry per agent ({} given, N = {})",
                self.v_max.len(),
                self.n
            )));
        }
        if self.v_max.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::Config("v_max entries must be positive".into()));
        }
        Ok(())
    }

    /// Loads a config file, resolving the track path against `base_dir`.
    pub fn load(file: &GameConfigFile, base_dir: &Path) -> Result<Self> {
        let track_path = base_dir.join(&file.track);
        let track = Track::from_file(track_path)?;
        let cfg = GameConfig {
            n: file.n,
            t: file.t,
            dt: file.dt,
            alpha: file.alpha,
            d_min: file.d_min,
            u_min: file.u_min.clone(),
            u_max: file.u_max.clone(),
            v_max: file.v_max.clone(),
            track,
            model: file.model,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Shape check used as a precondition by cost and constraint evaluation.
    pub fn check_trajectory(&self, traj: &Trajectory) -> Result<()> {
        if traj.horizon() != self.t || traj.states.len() != self.t + 1 {
            return Err(Error::Precondition(format!(
                "trajectory horizon {} does not match T = {}",
                traj.horizon(),
                self.t
            )));
        }
        if traj.dt != self.dt {
            return Err(Error::Precondition(format!(
                "trajectory dt {} does not match config dt {}",
                traj.dt, self.dt
            )));
        }
        for (t, s) in traj.states.iter().enumerate() {
            if s.len() != self.n {
                return Err(Error::Precondition(format!(
                    "state at step {t} has {} agents, config has {}",
                    s.len(),
                    self.n
                )));
            }
        }
        Ok(())
    }
}

/// What a constraint entry measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    ControlLo,
    ControlHi,
    Speed,
    /// Reverse-motion bound `-v <= 0`; emitted only by the optimizer's
    /// problem assembly, never by [`constraints`].
    SpeedLo,
    Track,
    Collision,
}

/// Maps one constraint entry back to the quantity it constrains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintKey {
    pub kind: ConstraintKind,
    /// Control step for bound/speed entries, state step for track/collision.
    pub time: usize,
    pub agent: usize,
    /// Second agent of a collision pair.
    pub agent2: Option<usize>,
    /// Control dimension for bound entries.
    pub dim: Option<usize>,
}

/// Stacked inequality constraints; feasible iff every entry is `<= 0`.
#[derive(Debug, Clone)]
pub struct ConstraintVector {
    pub values: Vec<f64>,
    pub layout: Vec<ConstraintKey>,
}

impl ConstraintVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_violation(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, &v| m.max(v))
    }
}

/// Closed-form entry count of [`constraints`]: per control step, `2 m`
/// bounds plus one speed entry per agent; per post-initial state, one track
/// entry per agent and one collision entry per unordered pair.
pub fn expected_constraint_count(cfg: &GameConfig) -> usize {
    let m = cfg.model.control_dim();
    let pairs = cfg.n * (cfg.n - 1) / 2;
    cfg.t * (cfg.n * 2 * m + cfg.n) + cfg.t * (cfg.n + pairs)
}

/// Per-agent racing cost: negative terminal progress plus the weighted
/// proximity sum over steps `0..T-1`.
pub fn agent_cost(cfg: &GameConfig, traj: &Trajectory, i: usize) -> Result<f64> {
    cfg.check_trajectory(traj)?;
    if i >= cfg.n {
        return Err(Error::Precondition(format!(
            "agent index {i} out of range for N = {}",
            cfg.n
        )));
    }
    let terminal = &traj.states[cfg.t][i];
    let mut cost = -cfg.track.progress(terminal);
    if cfg.alpha != 0.0 {
        let mut proximity = 0.0;
        for t in 0..cfg.t {
            let state = &traj.states[t];
            for j in 0..cfg.n {
                if j != i {
                    proximity += agent_distance_sq(&state[i], &state[j]);
                }
            }
        }
        cost += cfg.alpha * proximity;
    }
    Ok(cost)
}

/// Potential of the game: negative total progress plus the weighted
/// proximity sum with each unordered pair counted once.
pub fn potential(cfg: &GameConfig, traj: &Trajectory) -> Result<f64> {
    cfg.check_trajectory(traj)?;
    let mut value = 0.0;
    for i in 0..cfg.n {
        value -= cfg.track.progress(&traj.states[cfg.t][i]);
    }
    if cfg.alpha != 0.0 {
        let mut proximity = 0.0;
        for t in 0..cfg.t {
            let state = &traj.states[t];
            for i in 0..cfg.n {
                for j in (i + 1)..cfg.n {
                    proximity += agent_distance_sq(&state[i], &state[j]);
                }
            }
        }
        value += cfg.alpha * proximity;
    }
    Ok(value)
}

/// Evaluates the stacked constraints of a trajectory.
///
/// Layout, in order: for each control step `t` in `0..T`, per agent the
/// control bounds `u_min - u <= 0` and `u - u_max <= 0` per dimension
/// followed by the agent's speed entry; then for each state step `t` in
/// `1..=T`, per agent the track entry `lateral - half_width`, followed by the
/// collision entries `d_min^2 - d^2 + margin` per unordered pair.
///
/// The speed entry at control step `t` caps the speed the step produces: for
/// the Dubins model it is `v_{t+1} - v_max`; for the velocity-controlled 3D
/// model it is `|u_lin|^2 - v_max^2` on the commanded linear velocity.
pub fn constraints(cfg: &GameConfig, traj: &Trajectory) -> Result<ConstraintVector> {
    cfg.check_trajectory(traj)?;
    let m = cfg.model.control_dim();
    let count = expected_constraint_count(cfg);
    let mut values = Vec::with_capacity(count);
    let mut layout = Vec::with_capacity(count);

    for t in 0..cfg.t {
        for i in 0..cfg.n {
            let u = traj.controls[t][i].to_vec();
            for k in 0..m {
                values.push(cfg.u_min[k] - u[k]);
                layout.push(ConstraintKey {
                    kind: ConstraintKind::ControlLo,
                    time: t,
                    agent: i,
                    agent2: None,
                    dim: Some(k),
                });
                values.push(u[k] - cfg.u_max[k]);
                layout.push(ConstraintKey {
                    kind: ConstraintKind::ControlHi,
                    time: t,
                    agent: i,
                    agent2: None,
                    dim: Some(k),
                });
            }
            values.push(speed_entry(cfg, traj, t, i));
            layout.push(ConstraintKey {
                kind: ConstraintKind::Speed,
                time: t,
                agent: i,
                agent2: None,
                dim: None,
            });
        }
    }

    for t in 1..=cfg.t {
        let state = &traj.states[t];
        for i in 0..cfg.n {
            values.push(cfg.track.boundary_value(&state[i]));
            layout.push(ConstraintKey {
                kind: ConstraintKind::Track,
                time: t,
                agent: i,
                agent2: None,
                dim: None,
            });
        }
        for i in 0..cfg.n {
            for j in (i + 1)..cfg.n {
                let d_sq = agent_distance_sq(&state[i], &state[j]);
                values.push(cfg.d_min * cfg.d_min - d_sq + COLLISION_MARGIN);
                layout.push(ConstraintKey {
                    kind: ConstraintKind::Collision,
                    time: t,
                    agent: i,
                    agent2: Some(j),
                    dim: None,
                });
            }
        }
    }

    debug_assert_eq!(values.len(), count);
    Ok(ConstraintVector { values, layout })
}

fn speed_entry(cfg: &GameConfig, traj: &Trajectory, t: usize, i: usize) -> f64 {
    match cfg.model {
        ModelId::Dubins => {
            let v = traj.states[t + 1][i].speed().expect("dubins state");
            v - cfg.v_max[i]
        }
        ModelId::Integrator3d => {
            let u = traj.controls[t][i].to_vec();
            u[0] * u[0] + u[1] * u[1] + u[2] * u[2] - cfg.v_max[i] * cfg.v_max[i]
        }
    }
}

/// Verifies the potential identity on a unilateral deviation: returns
/// `|dJ_i - dP| / max(1, |dJ_i|)`, which is zero up to rounding for any pair
/// of trajectories that differ only in agent `i`'s controls.
pub fn check_potential_identity(
    cfg: &GameConfig,
    base: &Trajectory,
    deviated: &Trajectory,
    i: usize,
) -> Result<f64> {
    cfg.check_trajectory(base)?;
    cfg.check_trajectory(deviated)?;
    if base.states[0] != deviated.states[0] {
        return Err(Error::Precondition(
            "base and deviated trajectories must share the initial state".into(),
        ));
    }
    for t in 0..cfg.t {
        for j in 0..cfg.n {
            if j != i && base.controls[t][j] != deviated.controls[t][j] {
                return Err(Error::Precondition(format!(
                    "deviation is not unilateral: control of agent {j} differs at step {t}"
                )));
            }
        }
    }
    let dj = agent_cost(cfg, base, i)? - agent_cost(cfg, deviated, i)?;
    let dp = potential(cfg, base)? - potential(cfg, deviated)?;
    Ok((dj - dp).abs() / dj.abs().max(1.0))
}

/// Samples random feasible unilateral control deviations of agent `i` around
/// a candidate solution and returns the best cost improvement found
/// (positive means the solution is not a local equilibrium for agent `i`).
/// Returns `-inf` when every sampled deviation is infeasible.
pub fn nash_deviation_gap(
    cfg: &GameConfig,
    solution: &Trajectory,
    i: usize,
    n_samples: usize,
    radius: f64,
    seed: u64,
) -> Result<f64> {
    cfg.check_trajectory(solution)?;
    let base_cost = agent_cost(cfg, solution, i)?;
    let m = cfg.model.control_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gap = f64::NEG_INFINITY;
    for _ in 0..n_samples {
        let mut controls = solution.controls.clone();
        for step in controls.iter_mut() {
            let mut u = step[i].to_vec();
            for k in 0..m {
                let delta = if radius > 0.0 {
                    rng.gen_range(-radius..=radius)
                } else {
                    0.0
                };
                u[k] = (u[k] + delta).clamp(cfg.u_min[k], cfg.u_max[k]);
            }
            step[i] = ControlInput::from_slice(cfg.model, &u)?;
        }
        let candidate = rollout(&solution.states[0], &controls, cfg.dt)?;
        if constraints(cfg, &candidate)?.max_violation() > FEAS_EPS {
            continue;
        }
        let improvement = base_cost - agent_cost(cfg, &candidate, i)?;
        gap = gap.max(improvement);
    }
    Ok(gap)
}
