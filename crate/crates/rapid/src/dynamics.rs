//! Per-agent dynamics models, joint-state propagation, trajectory rollout,
//! and analytic step Jacobians.
//!
//! Two discrete-time models are provided:
//!
//! - `dubins`: planar kinematic car with state `[px, py, v, theta]` and
//!   controls `[a, omega]`, advanced with the explicit Euler map
//!   `px += v cos(theta) dt`, `py += v sin(theta) dt`, `v += a dt`,
//!   `theta += omega dt`;
//! - `integrator3d`: velocity-controlled rigid body with state
//!   `[px, py, pz, phi, theta, psi]` and a 6-vector of commanded linear and
//!   angular velocities, advanced with `x += u dt`.
//!
//! Headings are stored unwrapped so rollouts stay smooth over a horizon;
//! [`normalize_angle`] maps to `(-pi, pi]` for display.

use serde::{Deserialize, Serialize};

use crate::math::Mat;
use crate::{Error, Result};

/// Identifies which dynamics model an agent uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelId {
    Dubins,
    Integrator3d,
}

impl ModelId {
    pub fn state_dim(self) -> usize {
        match self {
            ModelId::Dubins => 4,
            ModelId::Integrator3d => 6,
        }
    }

    pub fn control_dim(self) -> usize {
        match self {
            ModelId::Dubins => 2,
            ModelId::Integrator3d => 6,
        }
    }
}

/// Kinematic state of a single agent.
///
/// Variant order matters for serde: the six-field variant is tried first so
/// an untagged four-field document cannot be mistaken for it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AgentState {
    Integrator3d {
        px: f64,
        py: f64,
        pz: f64,
        phi: f64,
        theta: f64,
        psi: f64,
    },
    Dubins {
        px: f64,
        py: f64,
        v: f64,
        theta: f64,
    },
}

impl AgentState {
    pub fn dubins(px: f64, py: f64, v: f64, theta: f64) -> Self {
        AgentState::Dubins { px, py, v, theta }
    }

    pub fn model(&self) -> ModelId {
        match self {
            AgentState::Dubins { .. } => ModelId::Dubins,
            AgentState::Integrator3d { .. } => ModelId::Integrator3d,
        }
    }

    /// Position with `pz = 0` for planar models, so inter-agent distances can
    /// be computed uniformly.
    pub fn position(&self) -> [f64; 3] {
        match *self {
            AgentState::Dubins { px, py, .. } => [px, py, 0.0],
            AgentState::Integrator3d { px, py, pz, .. } => [px, py, pz],
        }
    }

    /// Planar position used by track queries.
    pub fn position_xy(&self) -> [f64; 2] {
        let p = self.position();
        [p[0], p[1]]
    }

    /// Forward speed for models that carry one as a state.
    pub fn speed(&self) -> Option<f64> {
        match *self {
            AgentState::Dubins { v, .. } => Some(v),
            AgentState::Integrator3d { .. } => None,
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        match *self {
            AgentState::Dubins { px, py, v, theta } => vec![px, py, v, theta],
            AgentState::Integrator3d {
                px,
                py,
                pz,
                phi,
                theta,
                psi,
            } => vec![px, py, pz, phi, theta, psi],
        }
    }

    pub fn from_slice(model: ModelId, x: &[f64]) -> Result<Self> {
        if x.len() != model.state_dim() {
            return Err(Error::Config(format!(
                "state slice has {} entries, model {:?} needs {}",
                x.len(),
                model,
                model.state_dim()
            )));
        }
        Ok(match model {
            ModelId::Dubins => AgentState::Dubins {
                px: x[0],
                py: x[1],
                v: x[2],
                theta: x[3],
            },
            ModelId::Integrator3d => AgentState::Integrator3d {
                px: x[0],
                py: x[1],
                pz: x[2],
                phi: x[3],
                theta: x[4],
                psi: x[5],
            },
        })
    }

    fn check_finite(&self) -> Result<()> {
        let (names, values): (&[&'static str], Vec<f64>) = match *self {
            AgentState::Dubins { .. } => (&["px", "py", "v", "theta"], self.to_vec()),
            AgentState::Integrator3d { .. } => {
                (&["px", "py", "pz", "phi", "theta", "psi"], self.to_vec())
            }
        };
        for (name, value) in names.iter().zip(values) {
            if !value.is_finite() {
                return Err(Error::NonFinite { field: name, value });
            }
        }
        Ok(())
    }
}

/// Control action of a single agent over one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ControlInput {
    Dubins { a: f64, omega: f64 },
    Integrator3d { u: [f64; 6] },
}

impl ControlInput {
    pub fn dubins(a: f64, omega: f64) -> Self {
        ControlInput::Dubins { a, omega }
    }

    pub fn zero(model: ModelId) -> Self {
        match model {
            ModelId::Dubins => ControlInput::Dubins { a: 0.0, omega: 0.0 },
            ModelId::Integrator3d => ControlInput::Integrator3d { u: [0.0; 6] },
        }
    }

    pub fn model(&self) -> ModelId {
        match self {
            ControlInput::Dubins { .. } => ModelId::Dubins,
            ControlInput::Integrator3d { .. } => ModelId::Integrator3d,
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        match *self {
            ControlInput::Dubins { a, omega } => vec![a, omega],
            ControlInput::Integrator3d { u } => u.to_vec(),
        }
    }

    pub fn from_slice(model: ModelId, u: &[f64]) -> Result<Self> {
        if u.len() != model.control_dim() {
            return Err(Error::Config(format!(
                "control slice has {} entries, model {:?} needs {}",
                u.len(),
                model,
                model.control_dim()
            )));
        }
        Ok(match model {
            ModelId::Dubins => ControlInput::Dubins {
                a: u[0],
                omega: u[1],
            },
            ModelId::Integrator3d => {
                let mut arr = [0.0; 6];
                arr.copy_from_slice(u);
                ControlInput::Integrator3d { u: arr }
            }
        })
    }

    fn check_finite(&self) -> Result<()> {
        match *self {
            ControlInput::Dubins { a, omega } => {
                if !a.is_finite() {
                    return Err(Error::NonFinite {
                        field: "a",
                        value: a,
                    });
                }
                if !omega.is_finite() {
                    return Err(Error::NonFinite {
                        field: "omega",
                        value: omega,
                    });
                }
            }
            ControlInput::Integrator3d { u } => {
                for value in u {
                    if !value.is_finite() {
                        return Err(Error::NonFinite { field: "u", value });
                    }
                }
            }
        }
        Ok(())
    }
}

/// States of all agents at one time step, agent order fixed for a whole race.
pub type JointState = Vec<AgentState>;
/// Controls of all agents at one time step.
pub type JointControl = Vec<ControlInput>;

/// A rolled-out joint trajectory: `states.len() == controls.len() + 1` and
/// `states[t + 1] == step_joint(&states[t], &controls[t], dt)` exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub states: Vec<JointState>,
    pub controls: Vec<JointControl>,
    pub dt: f64,
}

impl Trajectory {
    /// Number of control steps `T`.
    pub fn horizon(&self) -> usize {
        self.controls.len()
    }

    pub fn num_agents(&self) -> usize {
        self.states.first().map_or(0, |s| s.len())
    }
}

/// Advances one agent by one step of the chosen model's Euler update map.
pub fn step_agent(
    state: &AgentState,
    control: &ControlInput,
    dt: f64,
    model: ModelId,
) -> Result<AgentState> {
    if !(dt > 0.0) {
        return Err(Error::Precondition(format!("dt must be positive, got {dt}")));
    }
    state.check_finite()?;
    control.check_finite()?;
    match (model, state, control) {
        (ModelId::Dubins, AgentState::Dubins { px, py, v, theta }, ControlInput::Dubins { a, omega }) => {
            Ok(AgentState::Dubins {
                px: px + v * theta.cos() * dt,
                py: py + v * theta.sin() * dt,
                v: v + a * dt,
                theta: theta + omega * dt,
            })
        }
        (
            ModelId::Integrator3d,
            AgentState::Integrator3d {
                px,
                py,
                pz,
                phi,
                theta,
                psi,
            },
            ControlInput::Integrator3d { u },
        ) => Ok(AgentState::Integrator3d {
            px: px + u[0] * dt,
            py: py + u[1] * dt,
            pz: pz + u[2] * dt,
            phi: phi + u[3] * dt,
            theta: theta + u[4] * dt,
            psi: psi + u[5] * dt,
        }),
        _ => Err(Error::Config(format!(
            "state/control variants do not match model {model:?}"
        ))),
    }
}

/// Advances all agents one step; the joint dynamics are separable, so this is
/// a component-wise [`step_agent`].
pub fn step_joint(state: &JointState, control: &JointControl, dt: f64) -> Result<JointState> {
    if state.len() != control.len() {
        return Err(Error::Config(format!(
            "joint state has {} agents but joint control has {}",
            state.len(),
            control.len()
        )));
    }
    state
        .iter()
        .zip(control)
        .map(|(x, u)| step_agent(x, u, dt, x.model()))
        .collect()
}

/// Rolls a control sequence out from `x0`, returning the full trajectory.
pub fn rollout(x0: &JointState, controls: &[JointControl], dt: f64) -> Result<Trajectory> {
    if controls.is_empty() {
        return Err(Error::Precondition(
            "rollout needs at least one control step".into(),
        ));
    }
    let mut states = Vec::with_capacity(controls.len() + 1);
    states.push(x0.clone());
    for (t, u) in controls.iter().enumerate() {
        let next = step_joint(states.last().unwrap(), u, dt)
            .map_err(|e| Error::Config(format!("rollout failed at step {t}: {e}")))?;
        states.push(next);
    }
    Ok(Trajectory {
        states,
        controls: controls.to_vec(),
        dt,
    })
}

/// Analytic Jacobians of the one-step map: `A = d(next)/d(state)`,
/// `B = d(next)/d(control)`.
pub fn step_jacobians(
    state: &AgentState,
    control: &ControlInput,
    dt: f64,
    model: ModelId,
) -> Result<(Mat, Mat)> {
    if !(dt > 0.0) {
        return Err(Error::Precondition(format!("dt must be positive, got {dt}")));
    }
    state.check_finite()?;
    control.check_finite()?;
    match (model, state) {
        (ModelId::Dubins, AgentState::Dubins { v, theta, .. }) => {
            let mut a = Mat::identity(4);
            a.set(0, 2, theta.cos() * dt);
            a.set(0, 3, -v * theta.sin() * dt);
            a.set(1, 2, theta.sin() * dt);
            a.set(1, 3, v * theta.cos() * dt);
            let mut b = Mat::zeros(4, 2);
            b.set(2, 0, dt);
            b.set(3, 1, dt);
            Ok((a, b))
        }
        (ModelId::Integrator3d, AgentState::Integrator3d { .. }) => {
            let a = Mat::identity(6);
            let mut b = Mat::zeros(6, 6);
            for i in 0..6 {
                b.set(i, i, dt);
            }
            Ok((a, b))
        }
        _ => Err(Error::Config(format!(
            "state variant does not match model {model:?}"
        ))),
    }
}

/// Maps an unwrapped angle into `(-pi, pi]`. Display helper only; internal
/// state keeps angles unwrapped.
pub fn normalize_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let r = theta.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r - two_pi
    } else {
        r
    }
}

/// Euclidean distance between two agents' positions (planar for `dubins`,
/// spatial for `integrator3d`).
pub fn agent_distance(a: &AgentState, b: &AgentState) -> f64 {
    let pa = a.position();
    let pb = b.position();
    ((pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2) + (pa[2] - pb[2]).powi(2)).sqrt()
}

/// Squared Euclidean distance between two agents' positions.
pub fn agent_distance_sq(a: &AgentState, b: &AgentState) -> f64 {
    let pa = a.position();
    let pb = b.position();
    (pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2) + (pa[2] - pb[2]).powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn dubins_step_straight() {
        let x = AgentState::dubins(0.0, 0.0, 1.0, 0.0);
        let u = ControlInput::dubins(1.0, 0.0);
        let next = step_agent(&x, &u, 0.1, ModelId::Dubins).unwrap();
        assert_eq!(next, AgentState::dubins(0.1, 0.0, 1.1, 0.0));
    }

    #[test]
    fn dubins_rest_is_fixed_point() {
        let x = AgentState::dubins(2.0, 3.0, 0.0, FRAC_PI_4);
        let u = ControlInput::dubins(0.0, 0.0);
        let next = step_agent(&x, &u, 0.1, ModelId::Dubins).unwrap();
        assert_eq!(next, x);
    }

    #[test]
    fn dubins_step_turning() {
        let x = AgentState::dubins(0.0, 0.0, 2.0, FRAC_PI_2);
        let u = ControlInput::dubins(0.0, 0.5);
        let next = step_agent(&x, &u, 0.1, ModelId::Dubins).unwrap();
        match next {
            AgentState::Dubins { px, py, v, theta } => {
                assert_close(px, 0.0, 1e-15);
                assert_close(py, 0.2, 1e-15);
                assert_close(v, 2.0, 1e-15);
                assert_close(theta, FRAC_PI_2 + 0.05, 1e-15);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn integrator_step() {
        let x = AgentState::Integrator3d {
            px: 1.0,
            py: 2.0,
            pz: 3.0,
            phi: 0.0,
            theta: 0.0,
            psi: 0.0,
        };
        let u = ControlInput::Integrator3d {
            u: [1.0, -1.0, 0.5, 0.0, 0.0, 2.0],
        };
        let next = step_agent(&x, &u, 0.1, ModelId::Integrator3d).unwrap();
        match next {
            AgentState::Integrator3d { px, py, pz, psi, .. } => {
                assert_close(px, 1.1, 1e-15);
                assert_close(py, 1.9, 1e-15);
                assert_close(pz, 3.05, 1e-15);
                assert_close(psi, 0.2, 1e-15);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn nonfinite_state_rejected() {
        let x = AgentState::dubins(0.0, f64::NAN, 1.0, 0.0);
        let u = ControlInput::dubins(0.0, 0.0);
        let err = step_agent(&x, &u, 0.1, ModelId::Dubins).unwrap_err();
        match err {
            Error::NonFinite { field, .. } => assert_eq!(field, "py"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn joint_step_matches_per_agent() {
        let x = AgentState::dubins(0.0, 0.0, 1.0, 0.0);
        let u = ControlInput::dubins(1.0, 0.0);
        let single = step_joint(&vec![x], &vec![u], 0.1).unwrap();
        assert_eq!(single[0], step_agent(&x, &u, 0.1, ModelId::Dubins).unwrap());

        let joint = step_joint(&vec![x, x], &vec![u, u], 0.1).unwrap();
        assert_eq!(joint[0], joint[1]);
        assert_eq!(joint[0], single[0]);
    }

    #[test]
    fn joint_step_permutation_equivariant() {
        let a = AgentState::dubins(0.0, 0.0, 1.0, 0.0);
        let b = AgentState::dubins(5.0, 1.0, 2.0, FRAC_PI_4);
        let ua = ControlInput::dubins(1.0, 0.0);
        let ub = ControlInput::dubins(-0.5, 0.3);
        let fwd = step_joint(&vec![a, b], &vec![ua, ub], 0.1).unwrap();
        let rev = step_joint(&vec![b, a], &vec![ub, ua], 0.1).unwrap();
        assert_eq!(fwd[0], rev[1]);
        assert_eq!(fwd[1], rev[0]);
    }

    #[test]
    fn joint_step_length_mismatch() {
        let x = AgentState::dubins(0.0, 0.0, 1.0, 0.0);
        let u = ControlInput::dubins(1.0, 0.0);
        assert!(step_joint(&vec![x, x], &vec![u], 0.1).is_err());
    }

    #[test]
    fn rollout_hand_values() {
        let x0 = vec![AgentState::dubins(0.0, 0.0, 1.0, 0.0)];
        let u = vec![ControlInput::dubins(1.0, 0.0)];
        let traj = rollout(&x0, &[u.clone(), u], 0.1).unwrap();
        let px: Vec<f64> = traj
            .states
            .iter()
            .map(|s| s[0].position()[0])
            .collect();
        let v: Vec<f64> = traj.states.iter().map(|s| s[0].speed().unwrap()).collect();
        for (got, want) in px.iter().zip([0.0, 0.1, 0.21]) {
            assert_close(*got, want, 1e-15);
        }
        for (got, want) in v.iter().zip([1.0, 1.1, 1.2]) {
            assert_close(*got, want, 1e-15);
        }
    }

    #[test]
    fn rollout_empty_controls_rejected() {
        let x0 = vec![AgentState::dubins(0.0, 0.0, 1.0, 0.0)];
        assert!(rollout(&x0, &[], 0.1).is_err());
    }

    #[test]
    fn rollout_single_step_is_step_joint() {
        let x0 = vec![AgentState::dubins(0.0, 0.0, 1.5, 0.2)];
        let u = vec![ControlInput::dubins(0.4, -0.1)];
        let traj = rollout(&x0, &[u.clone()], 0.1).unwrap();
        assert_eq!(traj.states[1], step_joint(&x0, &u, 0.1).unwrap());
    }

    #[test]
    fn rollout_consistency_exact() {
        let x0 = vec![
            AgentState::dubins(0.0, 0.0, 1.0, 0.1),
            AgentState::dubins(1.0, -0.5, 2.0, -0.4),
        ];
        let controls: Vec<JointControl> = (0..5)
            .map(|t| {
                vec![
                    ControlInput::dubins(0.1 * t as f64, 0.05),
                    ControlInput::dubins(-0.2, 0.3),
                ]
            })
            .collect();
        let traj = rollout(&x0, &controls, 0.1).unwrap();
        for t in 0..traj.horizon() {
            let re = step_joint(&traj.states[t], &traj.controls[t], traj.dt).unwrap();
            assert_eq!(re, traj.states[t + 1]);
        }
    }

    #[test]
    fn separability_exact() {
        let x0 = vec![
            AgentState::dubins(0.0, 0.0, 1.0, 0.1),
            AgentState::dubins(1.0, -0.5, 2.0, -0.4),
        ];
        let controls: Vec<JointControl> = (0..4)
            .map(|_| {
                vec![
                    ControlInput::dubins(0.3, 0.05),
                    ControlInput::dubins(-0.2, 0.3),
                ]
            })
            .collect();
        let zeroed: Vec<JointControl> = controls
            .iter()
            .map(|c| vec![c[0], ControlInput::dubins(0.0, 0.0)])
            .collect();
        let full = rollout(&x0, &controls, 0.1).unwrap();
        let part = rollout(&x0, &zeroed, 0.1).unwrap();
        for t in 0..=4 {
            assert_eq!(full.states[t][0], part.states[t][0]);
        }
    }

    #[test]
    fn dubins_jacobian_entries() {
        let x = AgentState::dubins(0.0, 0.0, 1.0, 0.0);
        let u = ControlInput::dubins(0.0, 0.0);
        let (a, b) = step_jacobians(&x, &u, 0.1, ModelId::Dubins).unwrap();
        assert_close(a.get(0, 2), 0.1, 1e-15); // d px / d v
        assert_close(a.get(1, 2), 0.0, 1e-15); // d py / d v at theta = 0
        assert_close(b.get(2, 0), 0.1, 1e-15); // d v / d a
        assert_close(b.get(3, 1), 0.1, 1e-15); // d theta / d omega
        let mut b_sum = 0.0;
        for r in 0..4 {
            for c in 0..2 {
                b_sum += b.get(r, c).abs();
            }
        }
        assert_close(b_sum, 0.2, 1e-15); // all other B entries are zero
    }

    #[test]
    fn integrator_jacobians() {
        let x = AgentState::Integrator3d {
            px: 0.0,
            py: 0.0,
            pz: 0.0,
            phi: 0.0,
            theta: 0.0,
            psi: 0.0,
        };
        let u = ControlInput::Integrator3d { u: [0.0; 6] };
        let (a, b) = step_jacobians(&x, &u, 0.1, ModelId::Integrator3d).unwrap();
        assert_eq!(a, Mat::identity(6));
        for i in 0..6 {
            assert_close(b.get(i, i), 0.1, 1e-15);
        }
    }

    /// Central finite differences of the step map at random points.
    #[test]
    fn jacobians_match_finite_differences() {
        let h = 1e-6;
        for model in [ModelId::Dubins, ModelId::Integrator3d] {
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            let n = model.state_dim();
            let m = model.control_dim();
            for _ in 0..100 {
                let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let us: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.5..1.5)).collect();
                let x = AgentState::from_slice(model, &xs).unwrap();
                let u = ControlInput::from_slice(model, &us).unwrap();
                let (a, b) = step_jacobians(&x, &u, 0.1, model).unwrap();
                for j in 0..n {
                    let mut lo = xs.clone();
                    let mut hi = xs.clone();
                    lo[j] -= h;
                    hi[j] += h;
                    let f_lo = step_agent(
                        &AgentState::from_slice(model, &lo).unwrap(),
                        &u,
                        0.1,
                        model,
                    )
                    .unwrap()
                    .to_vec();
                    let f_hi = step_agent(
                        &AgentState::from_slice(model, &hi).unwrap(),
                        &u,
                        0.1,
                        model,
                    )
                    .unwrap()
                    .to_vec();
                    for i in 0..n {
                        let fd = (f_hi[i] - f_lo[i]) / (2.0 * h);
                        let rel = (a.get(i, j) - fd).abs() / fd.abs().max(1.0);
                        assert!(rel <= 1e-5, "A[{i}][{j}] {} vs fd {fd}", a.get(i, j));
                    }
                }
                for j in 0..m {
                    let mut lo = us.clone();
                    let mut hi = us.clone();
                    lo[j] -= h;
                    hi[j] += h;
                    let f_lo = step_agent(
                        &x,
                        &ControlInput::from_slice(model, &lo).unwrap(),
                        0.1,
                        model,
                    )
                    .unwrap()
                    .to_vec();
                    let f_hi = step_agent(
                        &x,
                        &ControlInput::from_slice(model, &hi).unwrap(),
                        0.1,
                        model,
                    )
                    .unwrap()
                    .to_vec();
                    for i in 0..n {
                        let fd = (f_hi[i] - f_lo[i]) / (2.0 * h);
                        let rel = (b.get(i, j) - fd).abs() / fd.abs().max(1.0);
                        assert!(rel <= 1e-5, "B[{i}][{j}] {} vs fd {fd}", b.get(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn angle_normalization() {
        assert_close(normalize_angle(3.0 * PI), PI, 1e-12);
        assert_close(normalize_angle(-PI), PI, 1e-12);
        assert_close(normalize_angle(0.5), 0.5, 1e-15);
        assert!(normalize_angle(7.0) <= PI && normalize_angle(7.0) > -PI);
    }

    #[test]
    fn state_serde_roundtrip() {
        let x = AgentState::dubins(1.0, 2.0, 0.5, 0.25);
        let json = serde_json::to_string(&x).unwrap();
        assert!(json.contains("\"px\""));
        let back: AgentState = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);

        let q = AgentState::Integrator3d {
            px: 1.0,
            py: 2.0,
            pz: 3.0,
            phi: 0.1,
            theta: 0.2,
            psi: 0.3,
        };
        let json = serde_json::to_string(&q).unwrap();
        let back: AgentState = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }
}
