//! Linearization of the deviation dynamics about the origin: the analytic
//! Jacobian, a finite-difference cross-check, and the (A, B) model pair.

use crate::dynamics::rhs;
use crate::error::Result;
use crate::model::{input_matrix, PhysicalParams, StateVec, ThrusterConfig};
use nalgebra::{DMatrix, Matrix6};

/// Linear model (A, B) of a thruster configuration about the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    /// 6x6 state Jacobian at the origin.
    pub a: Matrix6<f64>,
    /// 6xm input matrix, one unit column per active thruster.
    pub b: DMatrix<f64>,
    pub config: ThrusterConfig,
    pub params: PhysicalParams,
}

/// Jacobian of the deviation dynamics at the origin, in closed form.
///
/// Nonzero entries: A(1,2) = A(3,4) = A(5,6) = 1 (kinematics),
/// A(2,1) = omega^2 + 2 mu/sigma^3 + 6 mu R^2 J2 / sigma^5,
/// A(2,4) = 2 omega, A(4,2) = -2 omega,
/// A(6,5) = -mu/sigma^3 - (9/2) mu R^2 J2 / sigma^5.
pub fn analytic_jacobian(p: &PhysicalParams) -> Matrix6<f64> {
    let s3 = p.sigma.powi(3);
    let s5 = p.sigma.powi(5);
    let j2c = p.mu * p.r_eq * p.r_eq * p.j2;
    let mut a = Matrix6::zeros();
    a[(0, 1)] = 1.0;
    a[(1, 0)] = p.omega * p.omega + 2.0 * p.mu / s3 + 6.0 * j2c / s5;
    a[(1, 3)] = 2.0 * p.omega;
    a[(2, 3)] = 1.0;
    a[(3, 1)] = -2.0 * p.omega;
    a[(4, 5)] = 1.0;
    a[(5, 4)] = -p.mu / s3 - 4.5 * j2c / s5;
    a
}

/// Default central-difference step, scaled for km-sized states.
pub fn default_fd_step(p: &PhysicalParams) -> f64 {
    1e-6 * p.sigma.max(1.0)
}

/// Central-difference Jacobian of the deviation dynamics at the origin.
/// Exists as an independent cross-check of [`analytic_jacobian`].
pub fn fd_jacobian(p: &PhysicalParams, h: f64) -> Result<Matrix6<f64>> {
    let c = ThrusterConfig::R;
    let u = c.zero_control();
    let mut a = Matrix6::zeros();
    for i in 0..6 {
        let mut fwd = StateVec::zeros();
        let mut bwd = StateVec::zeros();
        fwd[i] = h;
        bwd[i] = -h;
        let col = (rhs(&fwd, &u, c, p)? - rhs(&bwd, &u, c, p)?) / (2.0 * h);
        a.set_column(i, &col);
    }
    Ok(a)
}

/// Pair the analytic Jacobian with the configuration's input matrix.
pub fn build_model(p: &PhysicalParams, c: ThrusterConfig) -> LinearModel {
    LinearModel {
        a: analytic_jacobian(p),
        b: input_matrix(c),
        config: c,
        params: *p,
    }
}
