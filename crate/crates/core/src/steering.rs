//! Minimum-energy open-loop steering of the linear model between two
//! deviation states over a finite horizon.

use crate::controllability::{gramian, rank_verdict, Gramian};
use crate::error::{Error, Result};
use crate::linearize::LinearModel;
use crate::model::{ControlVec, StateVec};
use crate::numkit::{expm6, spd_solve};
use nalgebra::{DMatrix, DVector, Matrix6, Vector6};

/// Steering task: drive `x0` at `t0` to `x1` at `t1` under the model.
#[derive(Debug, Clone)]
pub struct SteeringProblem {
    pub model: LinearModel,
    pub x0: StateVec,
    pub x1: StateVec,
    pub t0: f64,
    pub t1: f64,
}

/// Synthesized minimum-energy control, u(t) = B' exp(A'(t1-t)) eta with
/// eta = W^{-1} (x1 - Phi(t1,t0) x0).
#[derive(Debug, Clone)]
pub struct SteeringSolution {
    pub eta: Vector6<f64>,
    pub gramian: Gramian,
    /// Transition matrix over the full horizon, Phi(t1, t0).
    pub phi_t: Matrix6<f64>,
    /// Control energy, the L2 norm squared of u over the horizon.
    pub energy: f64,
    pub model: LinearModel,
    pub t0: f64,
    pub t1: f64,
}

/// Solve the steering problem for a controllable configuration.
pub fn synthesize(prob: &SteeringProblem) -> Result<SteeringSolution> {
    if prob.t1 <= prob.t0 {
        return Err(Error::InvalidArgument(format!(
            "empty horizon: t1 = {} <= t0 = {}",
            prob.t1, prob.t0
        )));
    }
    let (rank, controllable) = rank_verdict(&prob.model);
    if !controllable {
        return Err(Error::Uncontrollable { config: prob.model.config, rank });
    }
    let g = gramian(&prob.model, prob.t0, prob.t1)?;
    let phi_t = expm6(&(prob.model.a * (prob.t1 - prob.t0)))?;
    let residual = prob.x1 - phi_t * prob.x0;

    let w_dyn = DMatrix::from_iterator(6, 6, g.w.iter().copied());
    let eta_dyn = spd_solve(&w_dyn, &DVector::from_iterator(6, residual.iter().copied()))?;
    let eta = Vector6::from_iterator(eta_dyn.iter().copied());
    let energy = eta.dot(&(g.w * eta));

    Ok(SteeringSolution {
        eta,
        gramian: g,
        phi_t,
        energy,
        model: prob.model.clone(),
        t0: prob.t0,
        t1: prob.t1,
    })
}

impl SteeringSolution {
    /// Evaluate the control at time `t`, exactly via the matrix exponential.
    pub fn control_at(&self, t: f64) -> Result<ControlVec> {
        if t < self.t0 || t > self.t1 {
            return Err(Error::InvalidArgument(format!(
                "t = {t} outside horizon [{}, {}]",
                self.t0, self.t1
            )));
        }
        let phi_t_t = expm6(&(self.model.a.transpose() * (self.t1 - t)))?;
        Ok(self.model.b.transpose() * (phi_t_t * self.eta))
    }

    /// Sample the control on a uniform grid of `steps` subintervals,
    /// endpoints included.
    pub fn sample_control(&self, steps: usize) -> Result<Vec<(f64, ControlVec)>> {
        if steps < 2 {
            return Err(Error::InvalidArgument(format!("need steps >= 2, got {steps}")));
        }
        let h = (self.t1 - self.t0) / steps as f64;
        (0..=steps)
            .map(|i| {
                let t = if i == steps { self.t1 } else { self.t0 + i as f64 * h };
                Ok((t, self.control_at(t)?))
            })
            .collect()
    }
}
