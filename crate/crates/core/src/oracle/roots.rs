use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::poly::RationalPolynomial;
use crate::error::{Error, Result};
use crate::exact::rational_to_f64;

/// A real root with its multiplicity; `exact` is set when the root is
/// rational and was read off a linear square-free factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: f64,
    pub multiplicity: usize,
    pub exact: Option<BigRational>,
}

/// All roots of a polynomial that is known to split over the reals,
/// grouped by multiplicity via square-free factorization.
///
/// Each square-free factor is solved on its own, so repeated roots are
/// found as simple roots of a lower-degree factor. Linear factors give exact
/// rational roots; higher-degree factors go through the companion-matrix
/// eigenvalues, polished by Newton steps. Errors if a root has a
/// non-negligible imaginary part.
pub fn real_roots(p: &RationalPolynomial) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::Parameter("the zero polynomial has no finite root set".into()));
    }
    let mut out = Vec::new();
    for (factor, multiplicity) in p.square_free_factors() {
        match factor.degree() {
            1 => {
                let r = -factor.coeff(0) / factor.coeff(1);
                out.push(Root {
                    value: rational_to_f64(&r),
                    multiplicity,
                    exact: Some(r),
                });
            }
            _ => {
                for value in simple_real_roots(&factor)? {
                    let exact = snap_rational(&factor, value);
                    out.push(Root {
                        value: exact.as_ref().map_or(value, rational_to_f64),
                        multiplicity,
                        exact,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| b.value.total_cmp(&a.value));
    Ok(out)
}

/// Roots of a monic square-free polynomial of degree ≥ 2, all assumed real.
fn simple_real_roots(f: &RationalPolynomial) -> Result<Vec<f64>> {
    let k = f.degree();
    let c = f.monic().to_f64_coeffs();
    let companion = DMatrix::from_fn(k, k, |i, j| {
        if i == 0 {
            -c[k - 1 - j]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let scale = c.iter().map(|v| v.abs()).fold(1.0_f64, f64::max);
    let mut roots = Vec::with_capacity(k);
    for z in companion.complex_eigenvalues().iter() {
        if z.im.abs() > 1e-6 * scale.max(z.re.abs()) {
            return Err(Error::Numeric(format!(
                "polynomial {f} has a non-real root {} + {}i",
                z.re, z.im
            )));
        }
        roots.push(newton_polish(f, z.re));
    }
    Ok(roots)
}

/// A rational root `m/a` near `x`, where `a` is the leading coefficient of
/// the integer-cleared factor (which every rational root's denominator
/// divides), confirmed by exact evaluation.
fn snap_rational(f: &RationalPolynomial, x: f64) -> Option<BigRational> {
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lead = (f.leading() * BigRational::from_integer(lcm)).to_integer().abs();
    let lead_f = lead.to_f64()?;
    if lead_f > 1e12 || !x.is_finite() {
        return None;
    }
    let centre = (x * lead_f).round();
    (-1..=1).find_map(|k| {
        let m = BigInt::from_f64(centre + k as f64)?;
        let q = BigRational::new(m, lead.clone());
        let close = (rational_to_f64(&q) - x).abs() <= 1e-6 * x.abs().max(1.0);
        (close && f.eval(&q).is_zero()).then_some(q)
    })
}

fn newton_polish(f: &RationalPolynomial, start: f64) -> f64 {
    let coeffs = f.to_f64_coeffs();
    let deriv = f.derivative().to_f64_coeffs();
    let horner = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, v| acc * x + v);
    let mut x = start;
    let mut best = (horner(&coeffs, x).abs(), x);
    for _ in 0..8 {
        let fx = horner(&coeffs, x);
        let dfx = horner(&deriv, x);
        if dfx == 0.0 || fx == 0.0 {
            break;
        }
        x -= fx / dfx;
        let r = horner(&coeffs, x).abs();
        if r < best.0 {
            best = (r, x);
        } else {
            break;
        }
    }
    best.1
}

/// True when every claimed root satisfies `|p(r)| ≤ tol·Σ|a_i||r|^i` and
/// the claimed roots sum to `−a_{k−1}/a_k` within `tol·max(1, Σ|r|)`.
pub fn verify_root_multiset(p: &RationalPolynomial, roots: &[f64], tol: f64) -> bool {
    if p.is_zero() || p.degree() != roots.len() {
        return false;
    }
    let residuals_ok = roots
        .iter()
        .all(|&r| p.eval_f64(r).abs() <= tol * p.magnitude_at(r).max(f64::MIN_POSITIVE));
    let expected = p.root_sum().map(|s| rational_to_f64(&s)).unwrap_or(0.0);
    let sum: f64 = roots.iter().sum();
    let spread: f64 = roots.iter().map(|r| r.abs()).sum();
    residuals_ok && (sum - expected).abs() <= tol * spread.max(1.0)
}

/// Expand `(value, multiplicity)` roots into a descending list.
pub fn expand_roots(roots: &[Root]) -> Vec<f64> {
    let mut v: Vec<f64> = roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Number of roots counted with multiplicity.
pub fn root_count(roots: &[Root]) -> usize {
    roots.iter().map(|r| r.multiplicity).sum()
}
