//! The weight catalog: symmetric functions `φ(x, y)` of the end-vertex
//! degrees of an edge.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Surd};

/// A catalog weight function.
///
/// | id  | `φ(x, y)`            | matrix                        |
/// |-----|----------------------|-------------------------------|
/// | ISI | `xy/(x+y)`           | inverse sum indeg             |
/// | A   | `1`                  | adjacency                     |
/// | AG  | `(x+y)/(2√(xy))`     | arithmetic-geometric          |
/// | GA  | `2√(xy)/(x+y)`       | geometric-arithmetic          |
/// | M1  | `x+y`                | first Zagreb                  |
/// | ABC | `√((x+y−2)/(xy))`    | atom-bond connectivity        |
/// | R   | `1/√(xy)`            | Randić                        |
/// | M2  | `xy`                 | second Zagreb                 |
/// | S   | `√(x²+y²)`           | Sombor                        |
/// | MS  | `1/√(x²+y²)`         | modified Sombor               |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeightFunction {
    #[serde(rename = "ISI")]
    Isi,
    #[serde(rename = "A")]
    Adjacency,
    #[serde(rename = "AG")]
    ArithmeticGeometric,
    #[serde(rename = "GA")]
    GeometricArithmetic,
    #[serde(rename = "M1")]
    FirstZagreb,
    #[serde(rename = "ABC")]
    AtomBondConnectivity,
    #[serde(rename = "R")]
    Randic,
    #[serde(rename = "M2")]
    SecondZagreb,
    #[serde(rename = "S")]
    Sombor,
    #[serde(rename = "MS")]
    ModifiedSombor,
}

use WeightFunction::*;

const CATALOG: [WeightFunction; 10] = [
    Isi,
    Adjacency,
    ArithmeticGeometric,
    GeometricArithmetic,
    FirstZagreb,
    AtomBondConnectivity,
    Randic,
    SecondZagreb,
    Sombor,
    ModifiedSombor,
];

/// All ten weights in catalog order.
pub fn catalog() -> &'static [WeightFunction] {
    &CATALOG
}

fn ratio(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl WeightFunction {
    /// Short identifier (`ISI`, `A`, `AG`, ...).
    pub fn id(self) -> &'static str {
        match self {
            Isi => "ISI",
            Adjacency => "A",
            ArithmeticGeometric => "AG",
            GeometricArithmetic => "GA",
            FirstZagreb => "M1",
            AtomBondConnectivity => "ABC",
            Randic => "R",
            SecondZagreb => "M2",
            Sombor => "S",
            ModifiedSombor => "MS",
        }
    }

    /// Command-line selector string.
    pub fn selector(self) -> &'static str {
        match self {
            Isi => "isi",
            Adjacency => "adj",
            ArithmeticGeometric => "ag",
            GeometricArithmetic => "ga",
            FirstZagreb => "m1",
            AtomBondConnectivity => "abc",
            Randic => "randic",
            SecondZagreb => "m2",
            Sombor => "sombor",
            ModifiedSombor => "ms",
        }
    }

    /// Formula in plain text.
    pub fn formula(self) -> &'static str {
        match self {
            Isi => "xy/(x+y)",
            Adjacency => "1",
            ArithmeticGeometric => "(x+y)/(2sqrt(xy))",
            GeometricArithmetic => "2sqrt(xy)/(x+y)",
            FirstZagreb => "x+y",
            AtomBondConnectivity => "sqrt((x+y-2)/(xy))",
            Randic => "1/sqrt(xy)",
            SecondZagreb => "xy",
            Sombor => "sqrt(x^2+y^2)",
            ModifiedSombor => "1/sqrt(x^2+y^2)",
        }
    }

    /// Floating-point value of `φ(x, y)`. Every formula is written
    /// symmetrically, so `eval(x, y) == eval(y, x)` bit for bit.
    pub fn eval(self, x: usize, y: usize) -> f64 {
        let (x, y) = (x as f64, y as f64);
        match self {
            Isi => x * y / (x + y),
            Adjacency => 1.0,
            ArithmeticGeometric => (x + y) / (2.0 * (x * y).sqrt()),
            GeometricArithmetic => 2.0 * (x * y).sqrt() / (x + y),
            FirstZagreb => x + y,
            AtomBondConnectivity => ((x + y - 2.0) / (x * y)).sqrt(),
            Randic => 1.0 / (x * y).sqrt(),
            SecondZagreb => x * y,
            Sombor => (x * x + y * y).sqrt(),
            ModifiedSombor => 1.0 / (x * x + y * y).sqrt(),
        }
    }

    /// `φ(x, y)²` as an exact rational. Defined for every catalog entry.
    pub fn squared(self, x: usize, y: usize) -> BigRational {
        let (x, y) = (x as i128, y as i128);
        let sq = |r: BigRational| &r * &r;
        match self {
            Isi => sq(ratio(x * y, x + y)),
            Adjacency => ratio(1, 1),
            ArithmeticGeometric => ratio((x + y) * (x + y), 4 * x * y),
            GeometricArithmetic => ratio(4 * x * y, (x + y) * (x + y)),
            FirstZagreb => ratio((x + y) * (x + y), 1),
            AtomBondConnectivity => ratio(x + y - 2, x * y),
            Randic => ratio(1, x * y),
            SecondZagreb => ratio(x * x * y * y, 1),
            Sombor => ratio(x * x + y * y, 1),
            ModifiedSombor => ratio(1, x * x + y * y),
        }
    }

    /// Exact value of `φ(x, y)` as `c·√r`. Every catalog weight is
    /// non-negative, so this is the non-negative root of [`Self::squared`].
    pub fn exact(self, x: usize, y: usize) -> Surd {
        match self.rational_eval(x, y) {
            Some(r) => Surd::rational(r),
            None => Surd::sqrt_of(self.squared(x, y)).expect("squares are non-negative"),
        }
    }

    /// Exact rational value for the weights whose formula is rational at
    /// every degree pair (ISI, A, M1, M2).
    pub fn rational_eval(self, x: usize, y: usize) -> Option<BigRational> {
        let (x, y) = (x as i128, y as i128);
        match self {
            Isi => Some(ratio(x * y, x + y)),
            Adjacency => Some(ratio(1, 1)),
            FirstZagreb => Some(ratio(x + y, 1)),
            SecondZagreb => Some(ratio(x * y, 1)),
            _ => None,
        }
    }

    /// Exact rational value at `(x, y)` when the formula yields one there,
    /// decided by perfect-square tests on the radicand. Never returns an
    /// approximation of an irrational value.
    pub fn is_rational_at(self, x: usize, y: usize) -> Option<BigRational> {
        self.exact(x, y).to_rational()
    }

    /// `φ(d, d)`, evaluated through the exact path when it is rational.
    pub fn eval_equal_degree(self, d: usize) -> f64 {
        match self.is_rational_at(d, d) {
            Some(r) => rational_to_f64(&r),
            None => self.eval(d, d),
        }
    }

    /// Whether `φ(x, y) > 0` for all `x, y ≥ 1`. False only for ABC, which
    /// vanishes at `(1, 1)`.
    pub fn is_positive_everywhere(self) -> bool {
        self != AtomBondConnectivity
    }

    pub fn is_positive_at(self, x: usize, y: usize) -> bool {
        match self {
            AtomBondConnectivity => x + y > 2,
            _ => true,
        }
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Accepts the selector strings (`isi`, `adj`, `ag`, `ga`, `m1`, `abc`,
/// `randic`, `m2`, `sombor`, `ms`) and the short ids, case-insensitively.
impl FromStr for WeightFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        CATALOG
            .iter()
            .copied()
            .find(|w| w.selector() == key || w.id().eq_ignore_ascii_case(&key))
            .ok_or_else(|| Error::Parameter(format!("unknown weight `{s}`")))
    }
}
