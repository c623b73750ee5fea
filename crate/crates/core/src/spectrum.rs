//! Numeric eigenvalues, spectra with multiplicities, energy and
//! integrality verdicts.

use nalgebra::DMatrix;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Surd;
use crate::matrix::{SquareMatrix, SymmetricMatrix};

/// Relative tolerance for merging neighbouring eigenvalues into one group.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-7;
/// Distance-to-integer tolerance for numeric integrality verdicts.
pub const DEFAULT_INTEGRALITY_TOL: f64 = 1e-6;

/// All eigenvalues of a symmetric matrix in descending order.
///
/// Householder tridiagonalization followed by implicit symmetric QR
/// (`nalgebra`).
pub fn eigenvalues_sym(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    if !m.is_finite() {
        return Err(Error::Numeric("matrix has non-finite entries".into()));
    }
    let n = m.order();
    if n == 0 {
        return Ok(Vec::new());
    }
    let dm = DMatrix::from_row_slice(n, n, m.as_slice());
    let mut values: Vec<f64> = dm.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Eigenvalues of a general real square matrix whose spectrum is known to
/// be real (e.g. a quotient matrix similar to a symmetric one), by real
/// Schur decomposition. Descending order.
pub fn eigenvalues_general(m: &SquareMatrix) -> Result<Vec<f64>> {
    let n = m.order();
    let dm = DMatrix::from_fn(n, n, |i, j| m.get(i, j));
    if dm.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("matrix has non-finite entries".into()));
    }
    let scale = dm.iter().map(|v| v.abs()).fold(1.0_f64, f64::max);
    let mut values = Vec::with_capacity(n);
    for z in dm.complex_eigenvalues().iter() {
        if z.im.abs() > 1e-8 * scale {
            return Err(Error::Numeric(format!(
                "expected a real spectrum, found {} + {}i",
                z.re, z.im
            )));
        }
        values.push(z.re);
    }
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
}

/// Eigenvalues with multiplicities, in strictly decreasing order of value.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    groups: Vec<EigenGroup>,
}

impl Spectrum {
    pub fn groups(&self) -> &[EigenGroup] {
        &self.groups
    }

    /// Total eigenvalue count including multiplicity.
    pub fn order(&self) -> usize {
        self.groups.iter().map(|g| g.multiplicity).sum()
    }

    /// `Σ mult·|value|`, over the grouped values.
    pub fn energy(&self) -> f64 {
        self.groups.iter().map(|g| g.multiplicity as f64 * g.value.abs()).sum()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.groups.iter().map(|g| g.value.abs()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        self.groups.iter().map(|g| g.multiplicity as f64 * g.value).sum()
    }

    /// The largest eigenvalue `λ_1`.
    pub fn largest(&self) -> f64 {
        self.groups.first().map_or(0.0, |g| g.value)
    }

    /// The smallest eigenvalue `λ_n`.
    pub fn smallest(&self) -> f64 {
        self.groups.last().map_or(0.0, |g| g.value)
    }

    pub fn distinct_count(&self) -> usize {
        self.groups.len()
    }

    /// Expanded eigenvalue list, descending.
    pub fn values(&self) -> Vec<f64> {
        self.groups
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.value, g.multiplicity))
            .collect()
    }

    /// Multiplicity of the group within `tol` of `value`, or 0.
    pub fn multiplicity_near(&self, value: f64, tol: f64) -> usize {
        self.groups
            .iter()
            .filter(|g| (g.value - value).abs() <= tol)
            .map(|g| g.multiplicity)
            .sum()
    }

    /// Group-by-group agreement: same number of groups, equal
    /// multiplicities, values within `tol`.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        self.groups.len() == other.groups.len()
            && self
                .groups
                .iter()
                .zip(&other.groups)
                .all(|(a, b)| a.multiplicity == b.multiplicity && (a.value - b.value).abs() <= tol)
    }

    pub fn regroup(&self, tol: f64) -> Spectrum {
        group(&self.values(), tol)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Spectrum", 3)?;
        st.serialize_field("eigenvalues", &self.groups)?;
        st.serialize_field("energy", &self.energy())?;
        st.serialize_field("spectral_radius", &self.spectral_radius())?;
        st.end()
    }
}

/// Merge neighbouring values lying within `tol·max(1, |v|)` of each other.
/// Each group reports the mean of its members.
pub fn group(values: &[f64], tol: f64) -> Spectrum {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut groups: Vec<EigenGroup> = Vec::new();
    let mut members: Vec<f64> = Vec::new();
    let flush = |members: &mut Vec<f64>, groups: &mut Vec<EigenGroup>| {
        if !members.is_empty() {
            groups.push(EigenGroup {
                value: members.iter().sum::<f64>() / members.len() as f64,
                multiplicity: members.len(),
            });
            members.clear();
        }
    };
    for v in sorted {
        if let Some(&prev) = members.last() {
            if (prev - v).abs() > tol * prev.abs().max(v.abs()).max(1.0) {
                flush(&mut members, &mut groups);
            }
        }
        members.push(v);
    }
    flush(&mut members, &mut groups);
    Spectrum { groups }
}

/// Numeric spectrum of a symmetric matrix.
pub fn spectrum_of(m: &SymmetricMatrix, grouping_tol: f64) -> Result<Spectrum> {
    Ok(group(&eigenvalues_sym(m)?, grouping_tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegralityMethod {
    Exact,
    NumericTol,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralityVerdict {
    pub integral: bool,
    /// For a negative verdict, the eigenvalue farthest from an integer.
    pub witness: Option<f64>,
    pub method: IntegralityMethod,
}

impl IntegralityVerdict {
    /// Numeric verdicts only say that every eigenvalue lies near an
    /// integer; they do not certify integrality.
    pub fn is_heuristic(&self) -> bool {
        self.method == IntegralityMethod::NumericTol
    }
}

fn distance_to_integer(v: f64) -> f64 {
    (v - v.round()).abs()
}

/// Decide whether every eigenvalue is an integer.
///
/// With `exact` values the verdict is exact and `s` is ignored; otherwise
/// every eigenvalue of `s` must lie within `tol` of an integer.
pub fn check_integrality(s: &Spectrum, tol: f64, exact: Option<&[Surd]>) -> IntegralityVerdict {
    let farthest = |vals: &mut dyn Iterator<Item = f64>| {
        vals.fold(None, |best: Option<f64>, v| match best {
            Some(b) if distance_to_integer(b) >= distance_to_integer(v) => Some(b),
            _ => Some(v),
        })
    };
    match exact {
        Some(values) => {
            let mut bad = values.iter().filter(|v| !v.is_integer()).map(Surd::to_f64);
            let witness = farthest(&mut bad);
            IntegralityVerdict {
                integral: witness.is_none(),
                witness,
                method: IntegralityMethod::Exact,
            }
        }
        None => {
            let mut bad = s
                .groups()
                .iter()
                .map(|g| g.value)
                .filter(|v| distance_to_integer(*v) > tol);
            let witness = farthest(&mut bad);
            IntegralityVerdict {
                integral: witness.is_none(),
                witness,
                method: IntegralityMethod::NumericTol,
            }
        }
    }
}
