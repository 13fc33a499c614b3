//! Physical parameters, states, thruster configurations and the deviation
//! coordinate change about the circular reference orbit.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector, Vector6};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Six-dimensional deviation state (X1..X6) from the reference orbit.
///
/// X1 = r - sigma, X2 = dr/dt, X3 = sigma*(theta - omega*t),
/// X4 = sigma*(dtheta/dt - omega), X5 = z, X6 = dz/dt.
pub type StateVec = Vector6<f64>;

/// Thruster accelerations for the active directions, ordered (r, theta, z)
/// restricted to the configuration.
pub type ControlVec = DVector<f64>;

/// Gravitational and geometric constants plus the circular reference orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Gravitational parameter mu = GM [km^3/s^2].
    pub mu: f64,
    /// Earth equatorial radius [km].
    #[serde(rename = "R")]
    pub r_eq: f64,
    /// Dimensionless second zonal harmonic coefficient.
    #[serde(rename = "J2")]
    pub j2: f64,
    /// Reference circular-orbit cylindrical radius [km].
    pub sigma: f64,
    /// Reference angular rate [rad/s].
    pub omega: f64,
}

impl PhysicalParams {
    pub fn new(mu: f64, r_eq: f64, j2: f64, sigma: f64, omega: f64) -> Result<Self> {
        let p = Self { mu, r_eq, j2, sigma, omega };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0) {
            return Err(Error::InvalidParams(format!("mu must be positive, got {}", self.mu)));
        }
        if !(self.r_eq > 0.0) {
            return Err(Error::InvalidParams(format!("R must be positive, got {}", self.r_eq)));
        }
        if !(self.j2 >= 0.0) {
            return Err(Error::InvalidParams(format!("J2 must be nonnegative, got {}", self.j2)));
        }
        if !(self.sigma >= self.r_eq) {
            return Err(Error::InvalidParams(format!(
                "sigma must be at least R ({} < {})",
                self.sigma, self.r_eq
            )));
        }
        if !(self.omega > 0.0) {
            return Err(Error::InvalidParams(format!("omega must be positive, got {}", self.omega)));
        }
        Ok(())
    }

    /// Reference parameter set reproducing the published Jacobian entries:
    /// WGS-84 gravity, a 6800 km circular orbit and omega = 1 rad/s.
    pub fn paper() -> Self {
        Self {
            mu: 398600.4418,
            r_eq: 6378.137,
            j2: 1.08262668e-3,
            sigma: 6800.0,
            omega: 1.0,
        }
    }

    /// Normalized set (mu = sigma = omega = 1, J2 = 0) for clean unit tests;
    /// the Jacobian entries become small integers.
    pub fn unit() -> Self {
        Self { mu: 1.0, r_eq: 1.0, j2: 0.0, sigma: 1.0, omega: 1.0 }
    }

    /// Same constants but with omega replaced by the circular-orbit mean
    /// motion sqrt(mu/sigma^3), so the origin is a true equilibrium when
    /// J2 = 0.
    pub fn with_physical_omega(mut self) -> Self {
        self.omega = (self.mu / self.sigma.powi(3)).sqrt();
        self
    }

    /// Parse parameters from JSON with keys `mu`, `R`, `J2`, `sigma`,
    /// `omega`; missing keys default to the paper set.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Partial {
            mu: Option<f64>,
            #[serde(rename = "R")]
            r_eq: Option<f64>,
            #[serde(rename = "J2")]
            j2: Option<f64>,
            sigma: Option<f64>,
            omega: Option<f64>,
        }
        let partial: Partial =
            serde_json::from_str(text).map_err(|e| Error::InvalidParams(e.to_string()))?;
        let d = Self::paper();
        let p = Self {
            mu: partial.mu.unwrap_or(d.mu),
            r_eq: partial.r_eq.unwrap_or(d.r_eq),
            j2: partial.j2.unwrap_or(d.j2),
            sigma: partial.sigma.unwrap_or(d.sigma),
            omega: partial.omega.unwrap_or(d.omega),
        };
        p.validate()?;
        Ok(p)
    }
}

/// Satellite state in cylindrical coordinates (r, theta, z) with rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalState {
    pub r: f64,
    pub theta: f64,
    pub z: f64,
    pub r_dot: f64,
    pub theta_dot: f64,
    pub z_dot: f64,
}

impl PhysicalState {
    pub fn new(r: f64, theta: f64, z: f64, r_dot: f64, theta_dot: f64, z_dot: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::CoordinateSingularity(format!("r = {r}")));
        }
        Ok(Self { r, theta, z, r_dot, theta_dot, z_dot })
    }
}

/// Thruster placement direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    R,
    Theta,
    Z,
}

impl Direction {
    /// Row of the velocity component this thruster drives (0-based).
    pub fn row(self) -> usize {
        match self {
            Direction::R => 1,
            Direction::Theta => 3,
            Direction::Z => 5,
        }
    }
}

/// One of the seven nonempty subsets of {r, theta, z} thruster directions,
/// in the order they are analyzed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ThrusterConfig {
    R,
    Theta,
    Z,
    RTheta,
    RZ,
    ThetaZ,
    RThetaZ,
}

impl ThrusterConfig {
    /// All seven configurations, single thrusters first.
    pub const ALL: [ThrusterConfig; 7] = [
        ThrusterConfig::R,
        ThrusterConfig::Theta,
        ThrusterConfig::Z,
        ThrusterConfig::RTheta,
        ThrusterConfig::RZ,
        ThrusterConfig::ThetaZ,
        ThrusterConfig::RThetaZ,
    ];

    /// Active directions, ordered (r, theta, z).
    pub fn directions(self) -> &'static [Direction] {
        use Direction::*;
        match self {
            ThrusterConfig::R => &[R],
            ThrusterConfig::Theta => &[Theta],
            ThrusterConfig::Z => &[Z],
            ThrusterConfig::RTheta => &[R, Theta],
            ThrusterConfig::RZ => &[R, Z],
            ThrusterConfig::ThetaZ => &[Theta, Z],
            ThrusterConfig::RThetaZ => &[R, Theta, Z],
        }
    }

    /// Number of independent control channels.
    pub fn dim(self) -> usize {
        self.directions().len()
    }

    pub fn contains(self, d: Direction) -> bool {
        self.directions().contains(&d)
    }

    /// Zero control vector of the matching length.
    pub fn zero_control(self) -> ControlVec {
        ControlVec::zeros(self.dim())
    }
}

impl fmt::Display for ThrusterConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ThrusterConfig::R => "r",
            ThrusterConfig::Theta => "theta",
            ThrusterConfig::Z => "z",
            ThrusterConfig::RTheta => "r-theta",
            ThrusterConfig::RZ => "r-z",
            ThrusterConfig::ThetaZ => "theta-z",
            ThrusterConfig::RThetaZ => "r-theta-z",
        };
        f.write_str(s)
    }
}

impl FromStr for ThrusterConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(ThrusterConfig::R),
            "theta" => Ok(ThrusterConfig::Theta),
            "z" => Ok(ThrusterConfig::Z),
            "r-theta" => Ok(ThrusterConfig::RTheta),
            "r-z" => Ok(ThrusterConfig::RZ),
            "theta-z" => Ok(ThrusterConfig::ThetaZ),
            "r-theta-z" => Ok(ThrusterConfig::RThetaZ),
            other => Err(Error::InvalidArgument(format!(
                "unknown thruster configuration {other:?} \
                 (expected one of r, theta, z, r-theta, r-z, theta-z, r-theta-z)"
            ))),
        }
    }
}

impl TryFrom<String> for ThrusterConfig {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ThrusterConfig> for String {
    fn from(c: ThrusterConfig) -> String {
        c.to_string()
    }
}

/// Map a physical state to the deviation coordinates at time `t`.
pub fn to_deviation(s: &PhysicalState, t: f64, p: &PhysicalParams) -> Result<StateVec> {
    if !(s.r > 0.0) {
        return Err(Error::CoordinateSingularity(format!("r = {}", s.r)));
    }
    Ok(StateVec::new(
        s.r - p.sigma,
        s.r_dot,
        p.sigma * (s.theta - p.omega * t),
        p.sigma * (s.theta_dot - p.omega),
        s.z,
        s.z_dot,
    ))
}

/// Exact inverse of [`to_deviation`].
pub fn from_deviation(x: &StateVec, t: f64, p: &PhysicalParams) -> Result<PhysicalState> {
    if x[0] <= -p.sigma {
        return Err(Error::CoordinateSingularity(format!(
            "x1 = {} <= -sigma = {}",
            x[0], -p.sigma
        )));
    }
    Ok(PhysicalState {
        r: x[0] + p.sigma,
        r_dot: x[1],
        theta: x[2] / p.sigma + p.omega * t,
        theta_dot: x[3] / p.sigma + p.omega,
        z: x[4],
        z_dot: x[5],
    })
}

/// Input matrix of a thruster configuration: one unit column per active
/// direction (e2 for r, e4 for theta, e6 for z), ordered (r, theta, z).
pub fn input_matrix(c: ThrusterConfig) -> DMatrix<f64> {
    let dirs = c.directions();
    let mut b = DMatrix::zeros(6, dirs.len());
    for (j, d) in dirs.iter().enumerate() {
        b[(d.row(), j)] = 1.0;
    }
    b
}
