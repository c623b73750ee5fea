use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational_to_f64;

/// Univariate polynomial with exact rational coefficients, stored in
/// ascending degree. The zero polynomial has no coefficients; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Sum of the roots counted with multiplicity, `−a_{k−1}/a_k`.
    pub fn root_sum(&self) -> Result<BigRational> {
        if self.degree() == 0 {
            return Err(Error::Parameter("constant polynomial has no roots".into()));
        }
        Ok(-self.coeff(self.degree() - 1) / self.leading())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// Horner evaluation in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `Σ |a_i| |x|^i`, the natural scale for judging `|p(x)|`.
    pub fn magnitude_at(&self, x: f64) -> f64 {
        self.to_f64_coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x.abs() + c.abs())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free factorization (Yun): returns `(factor, multiplicity)`
    /// pairs of monic square-free polynomials of positive degree whose
    /// product, with multiplicities, is `self.monic()`.
    pub fn square_free_factors(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let c = f.gcd(&df);
        let mut w = f.div_rem(&c).0;
        let mut y = df.div_rem(&c).0;
        let mut z = y.sub(&w.derivative());
        let mut i = 1;
        while w.degree() > 0 {
            let g = w.gcd(&z);
            w = w.div_rem(&g).0;
            y = z.div_rem(&g).0;
            z = y.sub(&w.derivative());
            if g.degree() > 0 {
                out.push((g, i));
            }
            i += 1;
        }
        out
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Prints `a_k x^k + … + a_0`, highest degree first, exact fractions,
/// zero terms omitted.
impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let body = fmt_coeff(&mag);
            match k {
                0 => f.write_str(&body)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{body} ")?;
                    }
                    if k == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_integers(c.iter().copied())
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[3, -2, 0, -5]).to_string(), "-5 x^3 - 2 x + 3");
        let half = RationalPolynomial::new(vec![BigRational::new(1.into(), 2.into()), BigRational::one()]);
        assert_eq!(half.to_string(), "x + 1/2");
        assert_eq!(RationalPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // (x-1)(x+1)
        let b = p(&[-1, 1]); // x-1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let c = p(&[2, -3, 1]); // (x-1)(x-2)
        assert_eq!(a.gcd(&c), b);
    }

    #[test]
    fn yun_factorization() {
        // (x-1)^3 (x+2)^2 (x^2-2)
        let lin1 = p(&[-1, 1]);
        let lin2 = p(&[2, 1]);
        let quad = p(&[-2, 0, 1]);
        let f = lin1.mul(&lin1).mul(&lin1).mul(&lin2).mul(&lin2).mul(&quad).scale(&BigRational::from_integer(7.into()));
        let factors = f.square_free_factors();
        assert_eq!(factors, vec![(quad, 1), (lin2, 2), (lin1, 3)]);
    }

    #[test]
    fn root_sum_and_derivative() {
        let f = p(&[6, -5, 1]);
        assert_eq!(f.root_sum().unwrap(), BigRational::from_integer(5.into()));
        assert_eq!(f.derivative(), p(&[-5, 2]));
        assert!(p(&[4]).root_sum().is_err());
    }
}
