use num_rational::BigRational;
use num_traits::Zero;

use super::poly::RationalPolynomial;
use crate::error::{Error, Result};
use crate::exact::rational_to_f64;
use crate::matrix::SquareMatrix;

/// Largest order accepted by [`char_poly_exact`].
pub const MAX_CHAR_POLY_ORDER: usize = 16;

/// Dense square matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![BigRational::zero(); order * order],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::Parameter("matrix rows must all have length equal to the row count".into()));
        }
        Ok(Self {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.order + j] = v;
    }

    pub fn trace(&self) -> BigRational {
        (0..self.order).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn to_f64(&self) -> SquareMatrix {
        let n = self.order;
        SquareMatrix::from_fn(n, |i, j| rational_to_f64(self.get(i, j)))
    }
}

/// `det(xI − m)` by the Faddeev–LeVerrier recurrence over the rationals.
///
/// With `c_n = 1` and `N_0 = 0`, for `k = 1..n`:
/// `N_k = m·N_{k−1} + c_{n−k+1}·I` and `c_{n−k} = −tr(m·N_k)/k`.
pub fn char_poly_exact(m: &RationalMatrix) -> Result<RationalPolynomial> {
    let n = m.order();
    if n > MAX_CHAR_POLY_ORDER {
        return Err(Error::Size {
            order: n,
            limit: MAX_CHAR_POLY_ORDER,
        });
    }
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::from_integer(1.into());
    let mut aux = RationalMatrix::zeros(n);
    for k in 1..=n {
        let mut next = m.mul(&aux);
        for i in 0..n {
            next.entries[i * n + i] += &coeffs[n - k + 1];
        }
        let product = m.mul(&next);
        coeffs[n - k] = -product.trace() / BigRational::from_integer(k.into());
        aux = next;
    }
    Ok(RationalPolynomial::new(coeffs))
}
