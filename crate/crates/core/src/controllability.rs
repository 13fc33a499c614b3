//! Kalman controllability matrix, rank verdicts for the seven thruster
//! configurations, and the controllability Gramian.

use crate::error::{Error, Result};
use crate::linearize::{build_model, LinearModel};
use crate::model::{PhysicalParams, ThrusterConfig};
use crate::numkit::{expm, numerical_rank, simpson_matrix, RankPolicy};
use nalgebra::{DMatrix, Matrix6};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Kalman controllability matrix Q = [B AB A^2B ... A^5B].
#[derive(Debug, Clone, PartialEq)]
pub struct KalmanMatrix {
    pub q: DMatrix<f64>,
    pub config: ThrusterConfig,
}

impl KalmanMatrix {
    /// Build Q from raw (A, B); each block is A times the previous one.
    pub fn from_parts(a: &Matrix6<f64>, b: &DMatrix<f64>, config: ThrusterConfig) -> Self {
        let m = b.ncols();
        let mut q = DMatrix::zeros(6, 6 * m);
        let a_dyn = DMatrix::from_iterator(6, 6, a.iter().copied());
        let mut block = b.clone();
        for k in 0..6 {
            q.view_mut((0, k * m), (6, m)).copy_from(&block);
            block = &a_dyn * &block;
        }
        Self { q, config }
    }

    pub fn from_model(model: &LinearModel) -> Self {
        Self::from_parts(&model.a, &model.b, model.config)
    }
}

/// Controllability Gramian W(t0, t1) of a linear model.
#[derive(Debug, Clone, PartialEq)]
pub struct Gramian {
    pub w: Matrix6<f64>,
    pub t0: f64,
    pub t1: f64,
    pub config: ThrusterConfig,
}

impl Gramian {
    pub fn singular_values(&self) -> [f64; 6] {
        let d = DMatrix::from_iterator(6, 6, self.w.iter().copied());
        let sv = d.singular_values();
        let mut out = [0.0; 6];
        for (o, s) in out.iter_mut().zip(sv.iter()) {
            *o = *s;
        }
        out
    }

    pub fn min_singular_value(&self) -> f64 {
        self.singular_values()[5]
    }

    pub fn max_singular_value(&self) -> f64 {
        self.singular_values()[0]
    }

    pub fn rank(&self) -> usize {
        let d = DMatrix::from_iterator(6, 6, self.w.iter().copied());
        numerical_rank(&d, RankPolicy::Raw)
    }

    /// 2-norm condition number; `None` when numerically singular.
    pub fn condition_number(&self) -> Option<f64> {
        let sv = self.singular_values();
        if self.rank() == 6 && sv[5] > 0.0 {
            Some(sv[0] / sv[5])
        } else {
            None
        }
    }
}

/// One row of the seven-configuration rank table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankEntry {
    pub config: ThrusterConfig,
    pub rank: usize,
    pub controllable: bool,
    /// Smallest singular value of W over the reference horizon.
    pub w_min_singular: f64,
    /// Largest singular value of W over the reference horizon.
    pub w_max_singular: f64,
    /// 2-norm condition number of W; `None` when numerically singular.
    pub w_condition: Option<f64>,
}

/// Rank verdicts for all seven thruster configurations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankReport {
    pub entries: Vec<RankEntry>,
    /// Gramian reference horizon [t0, t1].
    pub horizon: (f64, f64),
}

impl RankReport {
    pub fn ranks(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.rank).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rank report serializes")
    }
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<12} {:>4} {:>12} {:>16} {:>12}",
            "config", "rank", "controllable", "min-sv(W)", "cond(W)"
        )?;
        for e in &self.entries {
            let cond = match e.w_condition {
                Some(c) => format!("{c:.4e}"),
                None => "singular".to_string(),
            };
            writeln!(
                f,
                "{:<12} {:>4} {:>12} {:>16.6e} {:>12}",
                e.config.to_string(),
                e.rank,
                if e.controllable { "yes" } else { "no" },
                e.w_min_singular,
                cond,
            )?;
        }
        Ok(())
    }
}

/// Kalman matrix of a linear model.
pub fn kalman_matrix(model: &LinearModel) -> KalmanMatrix {
    KalmanMatrix::from_model(model)
}

/// Numerical rank of the Kalman matrix (column-equilibrated) and the
/// controllability verdict.
pub fn rank_verdict(model: &LinearModel) -> (usize, bool) {
    let k = kalman_matrix(model);
    let rank = numerical_rank(&k.q, RankPolicy::ColumnEquilibrated);
    (rank, rank == 6)
}

/// Rank table over all seven configurations, with Gramian diagnostics at
/// the reference horizon [0, 10].
pub fn rank_table(p: &PhysicalParams) -> RankReport {
    let horizon = (0.0, 10.0);
    let entries = ThrusterConfig::ALL
        .iter()
        .map(|&c| {
            let model = build_model(p, c);
            let (rank, controllable) = rank_verdict(&model);
            let g = gramian(&model, horizon.0, horizon.1)
                .expect("nonempty reference horizon");
            RankEntry {
                config: c,
                rank,
                controllable,
                w_min_singular: g.min_singular_value(),
                w_max_singular: g.max_singular_value(),
                w_condition: g.condition_number(),
            }
        })
        .collect();
    RankReport { entries, horizon }
}

/// Controllability Gramian by the block-exponential method: exponentiate
/// [[-A, BB'], [0, A']] over the horizon and recover W from the off-diagonal
/// block. No quadrature error; the result is symmetrized before return.
pub fn gramian(model: &LinearModel, t0: f64, t1: f64) -> Result<Gramian> {
    if t1 <= t0 {
        return Err(Error::InvalidArgument(format!("empty horizon: t1 = {t1} <= t0 = {t0}")));
    }
    let a = &model.a;
    let bbt = &model.b * model.b.transpose();
    let mut block = DMatrix::zeros(12, 12);
    for i in 0..6 {
        for j in 0..6 {
            block[(i, j)] = -a[(i, j)];
            block[(i, j + 6)] = bbt[(i, j)];
            block[(i + 6, j + 6)] = a[(j, i)];
        }
    }
    let f = expm(&(block * (t1 - t0)))?;
    // top-right block G satisfies W = exp(A'T)' * G
    let g = f.view((0, 6), (6, 6)).into_owned();
    let e_at = f.view((6, 6), (6, 6)).transpose();
    let w_raw = e_at * g;
    let mut w = Matrix6::zeros();
    for i in 0..6 {
        for j in 0..6 {
            w[(i, j)] = 0.5 * (w_raw[(i, j)] + w_raw[(j, i)]);
        }
    }
    Ok(Gramian { w, t0, t1, config: model.config })
}

/// Gramian by composite Simpson quadrature of the defining integral.
/// Retained as an independent oracle for [`gramian`].
pub fn gramian_quadrature(
    model: &LinearModel,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<Gramian> {
    if t1 <= t0 {
        return Err(Error::InvalidArgument(format!("empty horizon: t1 = {t1} <= t0 = {t0}")));
    }
    let a = DMatrix::from_iterator(6, 6, model.a.iter().copied());
    let b = model.b.clone();
    let integrand = |s: f64| {
        let phi = expm(&(&a * (t1 - s))).expect("finite Jacobian exponentiates");
        let pb = &phi * &b;
        &pb * pb.transpose()
    };
    let w_dyn = simpson_matrix(integrand, t0, t1, steps)?;
    let mut w = Matrix6::zeros();
    for i in 0..6 {
        for j in 0..6 {
            w[(i, j)] = w_dyn[(i, j)];
        }
    }
    Ok(Gramian { w, t0, t1, config: model.config })
}

/// Integer-normalized Jacobian implied by the published controllability
/// matrices: the tiny J2 entries rounded away and the O(1) entries kept.
/// Regression fixture only; the analytic Jacobian is the source of truth.
pub fn normalized_jacobian() -> Matrix6<f64> {
    let mut a = Matrix6::zeros();
    a[(0, 1)] = 1.0;
    a[(1, 0)] = 1.0;
    a[(1, 3)] = 2.0;
    a[(2, 3)] = 1.0;
    a[(3, 1)] = -2.0;
    a[(4, 5)] = 1.0;
    a
}
