//! Small dense numerical kernel: matrix exponential, numerical rank,
//! symmetric positive definite solve and matrix-valued Simpson quadrature.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector, Matrix6};

/// Tolerance policy for [`numerical_rank`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankPolicy {
    /// SVD threshold max(rows, cols) * eps * sigma_max on the raw matrix.
    Raw,
    /// Scale every nonzero column to unit norm before the decomposition.
    /// Keeps badly scaled Kalman matrices (entries of order 1 next to
    /// entries of order 1e-6) from being misclassified.
    ColumnEquilibrated,
}

/// Matrix exponential by scaling and squaring with a truncated-series core.
///
/// The input is scaled by a power of two until its 1-norm is at most 0.5,
/// the series is summed to well below double precision, then the result is
/// repeatedly squared.
pub fn expm(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidArgument(format!(
            "expm needs a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("expm input has non-finite entries".into()));
    }
    let n = m.nrows();
    let norm = one_norm(m);
    let squarings = if norm <= 0.5 { 0 } else { (norm / 0.5).log2().ceil() as u32 };
    let scaled = m / 2f64.powi(squarings as i32);

    // ||scaled||_1 <= 0.5: 24 terms push the truncation error far below eps
    let mut result = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..=24u32 {
        term = (&term * &scaled) / f64::from(k);
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// [`expm`] specialized to the 6x6 matrices used throughout.
pub fn expm6(m: &Matrix6<f64>) -> Result<Matrix6<f64>> {
    let d = DMatrix::from_iterator(6, 6, m.iter().copied());
    let e = expm(&d)?;
    Ok(Matrix6::from_iterator(e.iter().copied()))
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Count of singular values above the tolerance implied by `policy`.
pub fn numerical_rank(m: &DMatrix<f64>, policy: RankPolicy) -> usize {
    if m.is_empty() {
        return 0;
    }
    let work = match policy {
        RankPolicy::Raw => m.clone(),
        RankPolicy::ColumnEquilibrated => {
            let mut w = m.clone();
            for j in 0..w.ncols() {
                let norm = w.column(j).norm();
                if norm > 0.0 {
                    w.column_mut(j).scale_mut(1.0 / norm);
                }
            }
            w
        }
    };
    let sv = work.singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    let tol = m.nrows().max(m.ncols()) as f64 * f64::EPSILON * smax;
    sv.iter().filter(|&&s| s > tol).count()
}

/// Solve S x = y for symmetric positive definite S via an unpivoted
/// Cholesky factorization.
pub fn spd_solve(s: &DMatrix<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
    let n = s.nrows();
    if s.ncols() != n || y.len() != n {
        return Err(Error::InvalidArgument(format!(
            "spd_solve shape mismatch: S is {}x{}, y has length {}",
            s.nrows(),
            s.ncols(),
            y.len()
        )));
    }
    let scale = s.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let asym = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(0.0f64, |a, (i, j)| a.max((s[(i, j)] - s[(j, i)]).abs()));
    if asym > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::InvalidArgument(format!(
            "matrix is not symmetric: max |S - S'| = {asym:e}"
        )));
    }

    // lower-triangular factor, breakdown reports the failing pivot
    let mut l = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let mut d = s[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d <= 0.0 {
            return Err(Error::SingularGramian { pivot: j });
        }
        l[(j, j)] = d.sqrt();
        for i in (j + 1)..n {
            let mut v = s[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = v / l[(j, j)];
        }
    }

    // forward then backward substitution
    let mut x = y.clone();
    for i in 0..n {
        for k in 0..i {
            let t = l[(i, k)] * x[k];
            x[i] -= t;
        }
        x[i] /= l[(i, i)];
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            let t = l[(k, i)] * x[k];
            x[i] -= t;
        }
        x[i] /= l[(i, i)];
    }
    Ok(x)
}

/// Composite Simpson rule applied entrywise to a matrix-valued integrand.
/// `steps` is the number of subintervals and must be even.
pub fn simpson_matrix<F>(f: F, t0: f64, t1: f64, steps: usize) -> Result<DMatrix<f64>>
where
    F: Fn(f64) -> DMatrix<f64>,
{
    if steps < 2 || steps % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "Simpson rule needs an even step count >= 2, got {steps}"
        )));
    }
    let h = (t1 - t0) / steps as f64;
    let mut acc = f(t0) + f(t1);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(t0 + i as f64 * h) * w;
    }
    Ok(acc * (h / 3.0))
}
