//! Cyclic Jacobi eigenvalue iteration for symmetric matrices.
//!
//! This is the independent cross-check for the main symmetric solver and
//! must stay self-contained: it reads the input entries and nothing else
//! from the crate.

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

pub const MAX_JACOBI_ORDER: usize = 300;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted in
/// descending order. Iterates until the off-diagonal Frobenius norm falls
/// below `1e−12·‖m‖_F`.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigen(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = m.order();
    if n > MAX_JACOBI_ORDER {
        return Err(Error::Size {
            order: n,
            limit: MAX_JACOBI_ORDER,
        });
    }
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
    if a.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("matrix has non-finite entries".into()));
    }

    let total: f64 = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let target = 1e-12 * total;
    let off = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let residual = off(&a);
        if residual <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numeric(format!(
                "Jacobi iteration did not converge after {MAX_SWEEPS} sweeps (off-diagonal norm {residual:e})"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                // Rotation angle from theta = (a_qq - a_pp) / (2 a_pq), taking
                // the smaller root for t = tan(angle).
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p];
                    let arq = a[r][q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r][p] = new_rp;
                    a[p][r] = new_rp;
                    a[r][q] = new_rq;
                    a[q][r] = new_rq;
                }
            }
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}
