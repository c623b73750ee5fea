//! Exact real numbers of the form `c·√r` with rational `c` and `r ≥ 0`.
//!
//! Every catalog weight has a rational square, so every `φ(x, y)` and every
//! rational multiple of it is representable here. That is enough to decide
//! integrality of the regular-family spectra without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact square root of a non-negative rational, if it is rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    // BigRational is kept in lowest terms, so r is a rational square
    // exactly when numerator and denominator are integer squares.
    let num = integer_sqrt(r.numer())?;
    let den = integer_sqrt(r.denom())?;
    Some(BigRational::new(num, den))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `coeff · √radicand`.
///
/// Normalized so that a radicand which is a perfect rational square is
/// folded into the coefficient (leaving radicand 1), and zero is stored as
/// `0·√1`.
#[derive(Clone, Debug)]
pub struct Surd {
    coeff: BigRational,
    radicand: BigRational,
}

impl Surd {
    pub fn rational(r: BigRational) -> Self {
        Self {
            coeff: r,
            radicand: BigRational::one(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    /// `√r` for `r ≥ 0`; `None` for negative input.
    pub fn sqrt_of(r: BigRational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        Some(match rational_sqrt(&r) {
            Some(root) => Self::rational(root),
            None => Self {
                coeff: BigRational::one(),
                radicand: r,
            },
        })
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coeff) * rational_to_f64(&self.radicand).sqrt()
    }

    /// The exact rational value, if the number is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeff.is_zero() {
            return Some(BigRational::zero());
        }
        self.radicand.is_one().then(|| self.coeff.clone())
    }

    pub fn is_integer(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn abs(&self) -> Self {
        Self {
            coeff: self.coeff.abs(),
            radicand: self.radicand.clone(),
        }
    }

    /// Signed square `sign(self)·self²`, an exact rational used for comparison.
    fn signed_square(&self) -> BigRational {
        let sq = &self.coeff * &self.coeff * &self.radicand;
        if self.coeff.is_negative() {
            -sq
        } else {
            sq
        }
    }

    /// Sum of surds that share a radicand; `None` when radicands differ.
    pub fn checked_sum<'a, I>(items: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Surd>,
    {
        let mut coeff = BigRational::zero();
        let mut radicand: Option<BigRational> = None;
        for s in items {
            if s.is_zero() {
                continue;
            }
            match &radicand {
                None => radicand = Some(s.radicand.clone()),
                Some(r) if *r != s.radicand => return None,
                Some(_) => {}
            }
            coeff += &s.coeff;
        }
        let radicand = radicand.unwrap_or_else(BigRational::one);
        Some(if coeff.is_zero() {
            Self::zero()
        } else {
            Self { coeff, radicand }
        })
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.signed_square() == other.signed_square()
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signed_square().cmp(&other.signed_square())
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            coeff: -self.coeff,
            radicand: self.radicand,
        }
    }
}

impl Mul<&BigRational> for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &BigRational) -> Surd {
        if rhs.is_zero() {
            return Surd::zero();
        }
        Surd {
            coeff: &self.coeff * rhs,
            radicand: self.radicand.clone(),
        }
    }
}

impl Mul<i64> for &Surd {
    type Output = Surd;
    fn mul(self, rhs: i64) -> Surd {
        self * &BigRational::from_integer(rhs.into())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(r) => write!(f, "{r}"),
            None if self.coeff.is_one() => write!(f, "sqrt({})", self.radicand),
            None if self.coeff == -BigRational::one() => write!(f, "-sqrt({})", self.radicand),
            None => write!(f, "{}*sqrt({})", self.coeff, self.radicand),
        }
    }
}
