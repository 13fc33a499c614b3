//! Fixed-step RK4 propagation of the linear and nonlinear deviation systems
//! under a supplied control law, with trajectory recording.

use crate::dynamics::rhs;
use crate::error::{Error, Result};
use crate::linearize::LinearModel;
use crate::model::{ControlVec, PhysicalParams, StateVec, ThrusterConfig};

/// Which right-hand side produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    Linear,
    Nonlinear,
}

/// Recorded trajectory: one row per grid node, first row at `t0`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVec>,
    pub kind: SystemKind,
    pub config: ThrusterConfig,
    pub params: PhysicalParams,
    pub steps: usize,
}

impl Trajectory {
    pub fn final_state(&self) -> StateVec {
        *self.states.last().expect("trajectory has at least the initial row")
    }
}

fn check_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidArgument("need at least one integration step".into()));
    }
    Ok(())
}

/// Classical RK4 over a fixed grid; the derivative closure is queried at the
/// substage times t, t + h/2, t + h.
fn rk4<F>(mut f: F, x0: StateVec, t0: f64, t1: f64, steps: usize) -> Result<(Vec<f64>, Vec<StateVec>)>
where
    F: FnMut(f64, &StateVec, usize) -> Result<StateVec>,
{
    let h = (t1 - t0) / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = x0;
    times.push(t0);
    states.push(x);
    for i in 0..steps {
        let t = t0 + i as f64 * h;
        let k1 = f(t, &x, i)?;
        let k2 = f(t + 0.5 * h, &(x + k1 * (0.5 * h)), i)?;
        let k3 = f(t + 0.5 * h, &(x + k2 * (0.5 * h)), i)?;
        let k4 = f(t + h, &(x + k3 * h), i)?;
        x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence { step: i, reason: "non-finite state".into() });
        }
        times.push(if i + 1 == steps { t1 } else { t0 + (i + 1) as f64 * h });
        states.push(x);
    }
    Ok((times, states))
}

/// Integrate the linear model under a control law.
pub fn integrate_linear<U>(
    model: &LinearModel,
    control: U,
    x0: StateVec,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<Trajectory>
where
    U: Fn(f64) -> ControlVec,
{
    check_steps(steps)?;
    let (times, states) = rk4(
        |t, x, _| {
            let u = control(t);
            if u.len() != model.b.ncols() {
                return Err(Error::InvalidArgument(format!(
                    "control law returned {} channels, expected {}",
                    u.len(),
                    model.b.ncols()
                )));
            }
            Ok(model.a * x + &model.b * u)
        },
        x0,
        t0,
        t1,
        steps,
    )?;
    Ok(Trajectory {
        times,
        states,
        kind: SystemKind::Linear,
        config: model.config,
        params: model.params,
        steps,
    })
}

/// Integrate the nonlinear deviation dynamics under a control law.
/// Aborts with a divergence error if the trajectory reaches the
/// cylindrical coordinate singularity.
pub fn integrate_nonlinear<U>(
    p: &PhysicalParams,
    c: ThrusterConfig,
    control: U,
    x0: StateVec,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<Trajectory>
where
    U: Fn(f64) -> ControlVec,
{
    check_steps(steps)?;
    let (times, states) = rk4(
        |t, x, step| {
            rhs(x, &control(t), c, p).map_err(|e| match e {
                Error::CoordinateSingularity(msg) => Error::Divergence { step, reason: msg },
                other => other,
            })
        },
        x0,
        t0,
        t1,
        steps,
    )?;
    Ok(Trajectory {
        times,
        states,
        kind: SystemKind::Nonlinear,
        config: c,
        params: *p,
        steps,
    })
}

/// Estimate the observed convergence order from endpoint states computed at
/// successively doubled step counts (at least three).
pub fn rk4_convergence_probe<F>(endpoint: F, step_counts: &[usize]) -> Result<f64>
where
    F: Fn(usize) -> Result<StateVec>,
{
    if step_counts.len() < 3 {
        return Err(Error::InvalidArgument("need at least three step counts".into()));
    }
    for w in step_counts.windows(2) {
        if w[1] != 2 * w[0] {
            return Err(Error::InvalidArgument(format!(
                "step counts must double: {} then {}",
                w[0], w[1]
            )));
        }
    }
    let endpoints: Vec<StateVec> =
        step_counts.iter().map(|&n| endpoint(n)).collect::<Result<_>>()?;
    let mut orders = Vec::new();
    for w in endpoints.windows(3) {
        let e1 = (w[0] - w[1]).norm();
        let e2 = (w[1] - w[2]).norm();
        if e2 == 0.0 {
            continue; // already at roundoff, no information
        }
        orders.push((e1 / e2).log2());
    }
    if orders.is_empty() {
        return Err(Error::InvalidArgument(
            "endpoint differences vanished; cannot estimate an order".into(),
        ));
    }
    Ok(orders.iter().sum::<f64>() / orders.len() as f64)
}
