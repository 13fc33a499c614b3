//! Nonlinear J2 equations of motion, in physical cylindrical coordinates and
//! in deviation coordinates, with thruster accelerations injected per
//! configuration.

use crate::error::{Error, Result};
use crate::model::{ControlVec, Direction, PhysicalParams, PhysicalState, StateVec, ThrusterConfig};
use nalgebra::Vector6;

fn check_control(u: &ControlVec, c: ThrusterConfig) -> Result<()> {
    if u.len() != c.dim() {
        return Err(Error::InvalidArgument(format!(
            "control has {} channels but configuration {} expects {}",
            u.len(),
            c,
            c.dim()
        )));
    }
    Ok(())
}

/// Control component for a direction, zero when the thruster is absent.
fn channel(u: &ControlVec, c: ThrusterConfig, d: Direction) -> f64 {
    c.directions().iter().position(|&x| x == d).map_or(0.0, |j| u[j])
}

/// J2 gravity accelerations (radial, axial) at cylindrical (r, z).
fn gravity(r: f64, z: f64, p: &PhysicalParams) -> (f64, f64) {
    let rho2 = r * r + z * z;
    let rho3 = rho2.powf(1.5);
    let rho7 = rho2.powf(3.5);
    let j2c = 1.5 * p.r_eq * p.r_eq * p.j2;
    let a_r = -p.mu * r * (1.0 / rho3 + j2c * (r * r - 4.0 * z * z) / rho7);
    let a_z = -p.mu * z * (1.0 / rho3 + j2c * (3.0 * r * r - 2.0 * z * z) / rho7);
    (a_r, a_z)
}

/// Time derivative of the deviation state under the J2 dynamics.
///
/// Returns (f1..f6) with the thruster accelerations of the active
/// directions added to f2, f4, f6.
pub fn rhs(
    x: &StateVec,
    u: &ControlVec,
    c: ThrusterConfig,
    p: &PhysicalParams,
) -> Result<StateVec> {
    check_control(u, c)?;
    let r = x[0] + p.sigma;
    if r <= 0.0 {
        return Err(Error::CoordinateSingularity(format!("x1 = {} <= -sigma", x[0])));
    }
    let z = x[4];
    let theta_dot = x[3] / p.sigma + p.omega;
    let (g_r, g_z) = gravity(r, z, p);

    let f2 = r * theta_dot * theta_dot + g_r + channel(u, c, Direction::R);
    // sigma * theta_ddot from r*theta_ddot + 2*r_dot*theta_dot = u_theta
    let f4 = -2.0 * x[1] * p.sigma * theta_dot / r + channel(u, c, Direction::Theta);
    let f6 = g_z + channel(u, c, Direction::Z);

    Ok(Vector6::new(x[1], f2, x[3], f4, x[5], f6))
}

/// Time derivative of the physical state (r, theta, z, r_dot, theta_dot,
/// z_dot), in that component order.
pub fn physical_rhs(
    s: &PhysicalState,
    u: &ControlVec,
    c: ThrusterConfig,
    p: &PhysicalParams,
) -> Result<Vector6<f64>> {
    check_control(u, c)?;
    if s.r <= 0.0 {
        return Err(Error::CoordinateSingularity(format!("r = {}", s.r)));
    }
    let (g_r, g_z) = gravity(s.r, s.z, p);
    let r_ddot = s.r * s.theta_dot * s.theta_dot + g_r + channel(u, c, Direction::R);
    let theta_ddot =
        (-2.0 * s.r_dot * s.theta_dot + channel(u, c, Direction::Theta)) / s.r;
    let z_ddot = g_z + channel(u, c, Direction::Z);
    Ok(Vector6::new(s.r_dot, s.theta_dot, s.z_dot, r_ddot, theta_ddot, z_ddot))
}
