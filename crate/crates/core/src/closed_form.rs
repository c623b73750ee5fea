//! Closed-form spectra and energies of the special families.
//!
//! Each formula is exposed on its own so it can be checked against the
//! numeric spectrum of the assembled matrix. Values are carried exactly
//! (as [`Surd`]s) whenever the formula makes that possible; the rest are
//! doubles or roots of an exactly-coded residual polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Surd};
use crate::graph::{FamilySpec, Graph};
use crate::matrix::{assemble_rational, multipartite_quotient, multipartite_quotient_exact};
use crate::oracle::roots::{expand_roots, root_count};
use crate::oracle::{char_poly_exact, real_roots, RationalMatrix, RationalPolynomial, Root, MAX_CHAR_POLY_ORDER};
use crate::spectrum::{check_integrality, eigenvalues_general, group, IntegralityMethod, IntegralityVerdict, Spectrum};
use crate::weight::WeightFunction;

/// Where a closed-form eigenvalue group comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Zero from vertices with identical neighbourhoods.
    StructuralZero,
    /// `−φ(d, d)` from a clique of twins.
    CliqueTwins,
    /// Eigenvalue of the part quotient `M` of a complete multipartite graph.
    MultipartiteQuotient,
    /// `±φ(d_1, d_2)√(ab)` of a complete bipartite graph.
    BipartiteQuotient,
    /// `(n−1)φ(d, d)` of a complete graph.
    CompleteGraph,
    /// Eigenvalues of the 2×2 quotient of `K_n − e`.
    CompleteMinusEdgeQuotient,
    /// `λ±` of `K_{p,p,p} − e` from the antisymmetric quotient block.
    AntisymmetricBlock,
    /// Quotient eigenvalues of a crown graph.
    CrownQuotient,
    /// `φ(d, d)` eigenvalues of a crown graph.
    CrownLocal,
    /// The remaining crown eigenvalue, fixed by the zero trace.
    ZeroTrace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedGroup {
    pub value: f64,
    pub exact: Option<Surd>,
    pub multiplicity: usize,
    pub provenance: Provenance,
}

impl ClosedGroup {
    fn exact(value: Surd, multiplicity: usize, provenance: Provenance) -> Self {
        Self {
            value: value.to_f64(),
            exact: Some(value),
            multiplicity,
            provenance,
        }
    }

    fn approx(value: f64, multiplicity: usize, provenance: Provenance) -> Self {
        Self {
            value,
            exact: None,
            multiplicity,
            provenance,
        }
    }
}

/// Polynomial supplying the eigenvalues that have no explicit formula,
/// together with its numerically extracted roots.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub polynomial: RationalPolynomial,
    pub roots: Vec<Root>,
}

impl Residual {
    fn new(polynomial: RationalPolynomial) -> Result<Self> {
        let roots = real_roots(&polynomial)?;
        Ok(Self { polynomial, roots })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormSpectrum {
    pub family: FamilySpec,
    pub weight: WeightFunction,
    pub groups: Vec<ClosedGroup>,
    pub residual: Option<Residual>,
}

impl ClosedFormSpectrum {
    fn new(family: FamilySpec, weight: WeightFunction, groups: Vec<ClosedGroup>) -> Self {
        Self {
            family,
            weight,
            groups: groups.into_iter().filter(|g| g.multiplicity > 0).collect(),
            residual: None,
        }
    }

    /// Explicit multiplicities plus the residual degree.
    pub fn order(&self) -> usize {
        self.groups.iter().map(|g| g.multiplicity).sum::<usize>()
            + self.residual.as_ref().map_or(0, |r| r.polynomial.degree())
    }

    /// Every eigenvalue, descending, residual roots included.
    pub fn values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .groups
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.value, g.multiplicity))
            .collect();
        if let Some(r) = &self.residual {
            v.extend(expand_roots(&r.roots));
        }
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn spectrum(&self, grouping_tol: f64) -> Spectrum {
        group(&self.values(), grouping_tol)
    }

    pub fn energy(&self) -> f64 {
        self.values().iter().map(|v| v.abs()).sum()
    }

    /// Sum of explicit eigenvalues plus the residual root sum `−a_{k−1}/a_k`
    /// taken from the coefficients; zero for a hollow matrix.
    pub fn eigenvalue_sum(&self) -> f64 {
        let explicit: f64 = self.groups.iter().map(|g| g.multiplicity as f64 * g.value).sum();
        let residual = self
            .residual
            .as_ref()
            .and_then(|r| r.polynomial.root_sum().ok())
            .map_or(0.0, |s| rational_to_f64(&s));
        explicit + residual
    }

    /// Exact value of every group, when all are exact and nothing is left to
    /// a residual polynomial.
    pub fn exact_values(&self) -> Option<Vec<Surd>> {
        if self.residual.is_some() {
            return None;
        }
        self.groups.iter().map(|g| g.exact.clone()).collect()
    }

    /// Exact energy, when every value is an exact multiple of one radical.
    pub fn exact_energy(&self) -> Option<Surd> {
        let terms: Vec<Surd> = self
            .exact_values()?
            .iter()
            .zip(&self.groups)
            .map(|(v, g)| &v.abs() * g.multiplicity as i64)
            .collect();
        Surd::checked_sum(terms.iter())
    }

    /// Exact verdict when every value is exact, numeric otherwise.
    pub fn integrality(&self, tol: f64, grouping_tol: f64) -> IntegralityVerdict {
        let exact = self.exact_values();
        check_integrality(&self.spectrum(grouping_tol), tol, exact.as_deref())
    }
}

fn n_over(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn check_parts(parts: &[usize]) -> Result<()> {
    FamilySpec::CompleteMultipartite(parts.to_vec()).validate()
}

/// `K_{p,…,p}` with `t` parts: `{0^{n−t}, (−pφ(d,d))^{t−1}, (t−1)pφ(d,d)}`
/// with `d = p(t−1)`. With `p = 1` this is `K_t`.
pub fn regular_multipartite_spectrum(p: usize, t: usize, w: WeightFunction) -> Result<ClosedFormSpectrum> {
    let family = FamilySpec::RegularMultipartite { p, t };
    family.validate()?;
    let phi = w.exact(p * (t - 1), p * (t - 1));
    let p_phi = &phi * p as i64;
    Ok(ClosedFormSpectrum::new(
        family,
        w,
        vec![
            ClosedGroup::exact(&p_phi * (t - 1) as i64, 1, Provenance::MultipartiteQuotient),
            ClosedGroup::exact(Surd::zero(), p * t - t, Provenance::StructuralZero),
            ClosedGroup::exact(-p_phi, t - 1, Provenance::MultipartiteQuotient),
        ],
    ))
}

/// `K_{a,b}`: `{0^{n−2}, ±φ(d_1,d_2)√(ab)}` with `d_1 = b`, `d_2 = a`.
pub fn complete_bipartite_spectrum(a: usize, b: usize, w: WeightFunction) -> Result<ClosedFormSpectrum> {
    let family = FamilySpec::CompleteBipartite(a, b);
    family.validate()?;
    let radius = Surd::sqrt_of(w.squared(b, a) * n_over(a * b)).expect("non-negative");
    Ok(ClosedFormSpectrum::new(
        family,
        w,
        vec![
            ClosedGroup::exact(radius.clone(), 1, Provenance::BipartiteQuotient),
            ClosedGroup::exact(Surd::zero(), a + b - 2, Provenance::StructuralZero),
            ClosedGroup::exact(-radius, 1, Provenance::BipartiteQuotient),
        ],
    ))
}

/// Eigenvalues of the part quotient `M` of `K_{p_1,…,p_t}`.
///
/// When every entry is rational the exact characteristic polynomial is
/// factored square-free, so repeated eigenvalues keep exact multiplicities
/// and rational ones stay exact. Otherwise `M` goes to the general
/// (non-symmetric) eigensolver.
pub fn multipartite_quotient_eigenvalues(parts: &[usize], w: WeightFunction) -> Result<Vec<ClosedGroup>> {
    check_parts(parts)?;
    if let Some(exact) = multipartite_quotient_exact(parts, w)? {
        if let Ok(poly) = char_poly_exact(&exact) {
            let roots = real_roots(&poly)?;
            return Ok(roots
                .into_iter()
                .map(|r| match r.exact {
                    Some(q) => ClosedGroup::exact(Surd::rational(q), r.multiplicity, Provenance::MultipartiteQuotient),
                    None => ClosedGroup::approx(r.value, r.multiplicity, Provenance::MultipartiteQuotient),
                })
                .collect());
        }
    }
    let values = eigenvalues_general(&multipartite_quotient(parts, w)?)?;
    Ok(group(&values, crate::spectrum::DEFAULT_GROUPING_TOL)
        .groups()
        .iter()
        .map(|g| ClosedGroup::approx(g.value, g.multiplicity, Provenance::MultipartiteQuotient))
        .collect())
}

/// `K_{p_1,…,p_t}`: zero with multiplicity `n − t` plus the eigenvalues of
/// the quotient `M` (`m_ij = p_j·φ(d_i, d_j)`, `d_i = n − p_i`). Equal parts
/// and `t = 2` use their explicit formulas.
pub fn complete_multipartite_spectrum(parts: &[usize], w: WeightFunction) -> Result<ClosedFormSpectrum> {
    check_parts(parts)?;
    let t = parts.len();
    if parts.iter().all(|&p| p == parts[0]) {
        let mut s = regular_multipartite_spectrum(parts[0], t, w)?;
        s.family = FamilySpec::CompleteMultipartite(parts.to_vec());
        return Ok(s);
    }
    if t == 2 {
        let mut s = complete_bipartite_spectrum(parts[0], parts[1], w)?;
        s.family = FamilySpec::CompleteMultipartite(parts.to_vec());
        return Ok(s);
    }
    let n: usize = parts.iter().sum();
    let mut groups = vec![ClosedGroup::exact(Surd::zero(), n - t, Provenance::StructuralZero)];
    groups.extend(multipartite_quotient_eigenvalues(parts, w)?);
    Ok(ClosedFormSpectrum::new(FamilySpec::CompleteMultipartite(parts.to_vec()), w, groups))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistinctEigenvalues {
    pub count: usize,
    /// Whether `t ≥ 3` and `n > t`, the setting in which three distinct
    /// eigenvalues is equivalent to equal parts.
    pub hypotheses_hold: bool,
}

/// Number of distinct eigenvalues of `A_φ(K_{p_1,…,p_t})`.
pub fn distinct_eigenvalue_count_multipartite(
    parts: &[usize],
    w: WeightFunction,
    grouping_tol: f64,
) -> Result<DistinctEigenvalues> {
    let s = complete_multipartite_spectrum(parts, w)?;
    let n: usize = parts.iter().sum();
    Ok(DistinctEigenvalues {
        count: s.spectrum(grouping_tol).distinct_count(),
        hypotheses_hold: parts.len() >= 3 && n > parts.len(),
    })
}

/// `K_n`: `{(n−1)φ(d,d), (−φ(d,d))^{n−1}}` with `d = n − 1`.
pub fn complete_graph_spectrum(n: usize, w: WeightFunction) -> Result<ClosedFormSpectrum> {
    if n < 2 {
        return Err(Error::Parameter(format!("complete graph spectrum needs n >= 2, got {n}")));
    }
    let phi = w.exact(n - 1, n - 1);
    Ok(ClosedFormSpectrum::new(
        FamilySpec::Complete(n),
        w,
        vec![
            ClosedGroup::exact(&phi * (n - 1) as i64, 1, Provenance::CompleteGraph),
            ClosedGroup::exact(-phi, n - 1, Provenance::CliqueTwins),
        ],
    ))
}

/// `(2n − 2)·φ(n−1, n−1)`.
pub fn complete_graph_energy(n: usize, w: WeightFunction) -> f64 {
    (2 * n - 2) as f64 * w.eval_equal_degree(n - 1)
}

/// `(n−3)²φ²(d_n,d_n) + 8(n−2)φ²(d_1,d_n)`, exact.
fn complete_minus_edge_discriminant(n: usize, w: WeightFunction) -> BigRational {
    let (d1, dn) = (n - 2, n - 1);
    n_over((n - 3) * (n - 3)) * w.squared(dn, dn) + n_over(8 * (n - 2)) * w.squared(d1, dn)
}

/// The two eigenvalues of the 2×2 quotient of `K_n − e`,
/// `((n−3)φ(d_n,d_n) ± √((n−3)²φ²(d_n,d_n) + 8(n−2)φ²(d_1,d_n)))/2`.
pub fn complete_minus_edge_quotient_roots(n: usize, w: WeightFunction) -> Result<(f64, f64)> {
    if n < 3 {
        return Err(Error::Parameter(format!("K_n - e needs n >= 3, got {n}")));
    }
    let (d1, dn) = (n - 2, n - 1);
    let root = rational_to_f64(&complete_minus_edge_discriminant(n, w)).sqrt();
    let plus = ((n - 3) as f64 * w.eval(dn, dn) + root) / 2.0;
    // Product of the roots is −2(n−2)φ²(d_1,d_n); avoids cancellation.
    let minus = -2.0 * (n - 2) as f64 * rational_to_f64(&w.squared(d1, dn)) / plus;
    Ok((plus, minus))
}

/// `K_n − e` (the edge `{0, 1}` removed): `−φ(d_n,d_n)` with multiplicity
/// `n − 3`, a simple zero, and the two quotient roots. `d_1 = n − 2`,
/// `d_n = n − 1`.
pub fn complete_minus_edge_spectrum(n: usize, w: WeightFunction) -> Result<ClosedFormSpectrum> {
    let (plus, minus) = complete_minus_edge_quotient_roots(n, w)?;
    let phi = w.exact(n - 1, n - 1);
    Ok(ClosedFormSpectrum::new(
        FamilySpec::Complete(n),
        w,
        vec![
            ClosedGroup::approx(plus, 1, Provenance::CompleteMinusEdgeQuotient),
            ClosedGroup::exact(Surd::zero(), 1, Provenance::StructuralZero),
            ClosedGroup::exact(-phi, n - 3, Provenance::CliqueTwins),
            ClosedGroup::approx(minus, 1, Provenance::CompleteMinusEdgeQuotient),
        ],
    ))
}

/// `(n−3)φ(d_n,d_n) + √((n−3)²φ²(d_n,d_n) + 8(n−2)φ²(d_1,d_n))`.
pub fn complete_minus_edge_energy(n: usize, w: WeightFunction) -> Result<f64> {
    if n < 3 {
        return Err(Error::Parameter(format!("K_n - e needs n >= 3, got {n}")));
    }
    let dn = n - 1;
    Ok((n - 3) as f64 * w.eval(dn, dn) + rational_to_f64(&complete_minus_edge_discriminant(n, w)).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioVerdict {
    /// Energy and spectral radius both decrease when an edge is deleted.
    Decreases,
    /// The sufficient condition fails; nothing follows.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioTest {
    /// `ρ = φ(d_n,d_n)/φ(d_1,d_n)`.
    pub ratio: f64,
    /// `√((n−2)/(n−1))`.
    pub threshold: f64,
    pub verdict: RatioVerdict,
}

/// One-sided sufficient test for `K_n`: deleting an edge lowers both
/// energy and spectral radius when `ρ < √((n−2)/(n−1))`.
///
/// The comparison is made exactly on `ρ²`, which is rational for every
/// catalog weight, so boundary cases such as the Randić weight (where
/// `ρ² = (n−2)/(n−1)` exactly) are not decided by rounding.
pub fn ratio_test(n: usize, w: WeightFunction) -> Result<RatioTest> {
    if n < 3 {
        return Err(Error::Parameter(format!("ratio test needs n >= 3, got {n}")));
    }
    let (d1, dn) = (n - 2, n - 1);
    let num = w.squared(dn, dn);
    let den = w.squared(d1, dn);
    if den.is_zero() {
        return Err(Error::Numeric(format!("{w} vanishes at ({d1}, {dn})")));
    }
    let rho_sq = &num / &den;
    let bound = BigRational::new(BigInt::from(n - 2), BigInt::from(n - 1));
    Ok(RatioTest {
        ratio: rational_to_f64(&rho_sq).sqrt(),
        threshold: rational_to_f64(&bound).sqrt(),
        verdict: if rho_sq < bound {
            RatioVerdict::Decreases
        } else {
            RatioVerdict::Inconclusive
        },
    })
}

/// Closed-form data for the ISI matrix of `K_{p,p,p} − e` (edge between
/// the first vertices of parts 1 and 2).
#[derive(Clone, Debug, PartialEq)]
pub struct TripartiteMinusEdge {
    pub p: usize,
    /// `φ(2p−1, 2p) = 2p(2p−1)/(4p−1)`.
    pub a: BigRational,
    /// `φ(2p, 2p) = p`.
    pub b: BigRational,
    /// 5×5 equitable quotient over `{v11}, {v21}, V1∖{v11}, V2∖{v21}, V3`.
    pub quotient: RationalMatrix,
    /// 3×3 restriction of the quotient to the swap-symmetric subspace.
    pub reduced: RationalMatrix,
    /// `λ² + p(p−1)λ − a²(p−1)`, the antisymmetric block's polynomial.
    pub antisymmetric_quadratic: RationalPolynomial,
    /// The cubic `q_p` with its coefficients coded exactly as printed:
    /// `((−16p²+8p−1)x³ + (16p⁴−24p³+9p²−p)x² + (32p⁶−46p⁴+26p³−4p²)x
    ///  + 32p⁷−64p⁶+40p⁵−8p⁴) / (4p−1)²`.
    pub cubic: RationalPolynomial,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub spectrum: ClosedFormSpectrum,
}

/// The integer polynomial inside `q_p` before division by `(4p−1)²`.
pub fn tripartite_cubic_numerator(p: usize) -> RationalPolynomial {
    let p = BigInt::from(p);
    let pw = |k: u32| p.pow(k);
    RationalPolynomial::from_integers([
        BigInt::from(32) * pw(7) - BigInt::from(64) * pw(6) + BigInt::from(40) * pw(5) - BigInt::from(8) * pw(4),
        BigInt::from(32) * pw(6) - BigInt::from(46) * pw(4) + BigInt::from(26) * pw(3) - BigInt::from(4) * pw(2),
        BigInt::from(16) * pw(4) - BigInt::from(24) * pw(3) + BigInt::from(9) * pw(2) - p.clone(),
        BigInt::from(-16) * pw(2) + BigInt::from(8) * p.clone() - BigInt::from(1),
    ])
}

/// `16p⁴ + 24p³ − 95p² + 70p − 15`.
fn tripartite_discriminant(p: usize) -> f64 {
    let p = p as f64;
    16.0 * p.powi(4) + 24.0 * p.powi(3) - 95.0 * p * p + 70.0 * p - 15.0
}

/// `λ± = p(5p − 1 − 4p² ± √(16p⁴+24p³−95p²+70p−15)) / (2(4p−1))`.
pub fn tripartite_lambda_pm(p: usize) -> (f64, f64) {
    let root = tripartite_discriminant(p).sqrt();
    let pf = p as f64;
    let base = 5.0 * pf - 1.0 - 4.0 * pf * pf;
    let den = 2.0 * (4.0 * pf - 1.0);
    (pf * (base + root) / den, pf * (base - root) / den)
}

pub fn tripartite_minus_edge_spectrum_isi(p: usize) -> Result<TripartiteMinusEdge> {
    if p < 2 {
        return Err(Error::Parameter(format!("K_{{p,p,p}} - e needs p >= 2, got {p}")));
    }
    let int = |k: usize| n_over(k);
    let a = BigRational::new(BigInt::from(2 * p * (2 * p - 1)), BigInt::from(4 * p - 1));
    let b = int(p);
    let pm1 = int(p - 1);
    let zero = BigRational::zero();

    let quotient = RationalMatrix::from_rows(vec![
        vec![zero.clone(), zero.clone(), zero.clone(), &a * &pm1, &a * int(p)],
        vec![zero.clone(), zero.clone(), &a * &pm1, zero.clone(), &a * int(p)],
        vec![zero.clone(), a.clone(), zero.clone(), &b * &pm1, &b * int(p)],
        vec![a.clone(), zero.clone(), &b * &pm1, zero.clone(), &b * int(p)],
        vec![a.clone(), a.clone(), &b * &pm1, &b * &pm1, zero.clone()],
    ])?;
    let reduced = RationalMatrix::from_rows(vec![
        vec![zero.clone(), &a * &pm1, &a * int(p)],
        vec![a.clone(), int(p * (p - 1)), int(p * p)],
        vec![&a * int(2), int(2 * p * (p - 1)), zero.clone()],
    ])?;
    let antisymmetric_quadratic = RationalPolynomial::new(vec![
        -(&a * &a * &pm1),
        int(p * (p - 1)),
        BigRational::one(),
    ]);
    let norm = int((4 * p - 1) * (4 * p - 1));
    let cubic = tripartite_cubic_numerator(p).scale(&(BigRational::one() / norm));

    let (lambda_plus, lambda_minus) = tripartite_lambda_pm(p);
    let mut spectrum = ClosedFormSpectrum::new(
        FamilySpec::RegularMultipartite { p, t: 3 },
        WeightFunction::Isi,
        vec![
            ClosedGroup::approx(lambda_plus, 1, Provenance::AntisymmetricBlock),
            ClosedGroup::exact(Surd::zero(), 3 * p - 5, Provenance::StructuralZero),
            ClosedGroup::approx(lambda_minus, 1, Provenance::AntisymmetricBlock),
        ],
    );
    spectrum.residual = Some(Residual::new(cubic.clone())?);

    Ok(TripartiteMinusEdge {
        p,
        a,
        b,
        quotient,
        reduced,
        antisymmetric_quadratic,
        cubic,
        lambda_plus,
        lambda_minus,
        spectrum,
    })
}

/// ISI energy of `K_{p,p,p} − e` as `p√(16p⁴+24p³−95p²+70p−15)/(4p−1) + E_M`,
/// where `E_M` is the sum of absolute values of the roots of `q_p`.
pub fn tripartite_minus_edge_energy_isi(p: usize) -> Result<f64> {
    let data = tripartite_minus_edge_spectrum_isi(p)?;
    let residual = data.spectrum.residual.as_ref().expect("cubic residual");
    if root_count(&residual.roots) != 3 {
        return Err(Error::Numeric(format!("q_{p} did not yield three real roots")));
    }
    let e_m: f64 = expand_roots(&residual.roots).iter().map(|r| r.abs()).sum();
    let pf = p as f64;
    Ok(pf * tripartite_discriminant(p).sqrt() / (4.0 * pf - 1.0) + e_m)
}

/// Crown graph `C_{p,…,p}` with `t` parts, regular of degree
/// `d = (t−1)(p−1)`: `{((p−1)(t−1)φ)^1, φ^{(t−1)(p−1)}, (−(p−1)φ)^{t−1},
/// (−(t−1)φ)^{p−1}}` with `φ = φ(d, d)`. For `t = 2` this is
/// `{±(p−1)φ, (±φ)^{p−1}}`.
pub fn crown_spectrum(p: usize, t: usize, w: WeightFunction) -> Result<ClosedFormSpectrum> {
    let family = FamilySpec::Crown { p, t };
    family.validate()?;
    let d = (t - 1) * (p - 1);
    let phi = w.exact(d, d);
    Ok(ClosedFormSpectrum::new(
        family,
        w,
        vec![
            ClosedGroup::exact(&phi * d as i64, 1, Provenance::CrownQuotient),
            ClosedGroup::exact(phi.clone(), d, Provenance::CrownLocal),
            ClosedGroup::exact(-(&phi * (p - 1) as i64), t - 1, Provenance::CrownQuotient),
            ClosedGroup::exact(-(&phi * (t - 1) as i64), p - 1, Provenance::ZeroTrace),
        ],
    ))
}

/// `4(p−1)(t−1)·φ(d, d)`.
pub fn crown_energy(p: usize, t: usize, w: WeightFunction) -> f64 {
    let d = (t - 1) * (p - 1);
    (4 * d) as f64 * w.eval_equal_degree(d)
}

/// The value `2(p−1)φ(d, d)` sometimes quoted as the energy of `C_{p,p}`.
/// It is half of `Σ|λ|` for the spectrum `{±(p−1)φ, (±φ)^{p−1}}`; kept only
/// so the discrepancy can be reported.
pub fn crown_bipartite_half_energy(p: usize, w: WeightFunction) -> f64 {
    2.0 * (p - 1) as f64 * w.eval_equal_degree(p - 1)
}

/// `2(n−1)^{3/2}/n`.
pub fn star_isi_energy(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Parameter(format!("star needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    Ok(2.0 * (nf - 1.0).powf(1.5) / nf)
}

/// Closed-form data for the ISI matrix of `S_n⁺` (star plus the leaf edge
/// `{1, 2}`).
#[derive(Clone, Debug, PartialEq)]
pub struct StarPlus {
    pub n: usize,
    /// 3×3 quotient over `{centre}, {1, 2}, remaining leaves`.
    pub reduced: RationalMatrix,
    /// The cubic with coefficients coded exactly as printed:
    /// `((n⁴+2n³+n²)x³ − (n⁴+2n³+n²)x² + (−n⁵−5n⁴+18n³−14n²−n+3)x
    ///  + n⁵−3n⁴−2n³+6n²+n−3) / (n²(n+1)²)`.
    pub cubic: RationalPolynomial,
    pub spectrum: ClosedFormSpectrum,
}

pub fn star_plus_cubic_numerator(n: usize) -> RationalPolynomial {
    let n = BigInt::from(n);
    let pw = |k: u32| n.pow(k);
    let lead = pw(4) + BigInt::from(2) * pw(3) + pw(2);
    RationalPolynomial::from_integers([
        pw(5) - BigInt::from(3) * pw(4) - BigInt::from(2) * pw(3) + BigInt::from(6) * pw(2) + n.clone() - BigInt::from(3),
        -pw(5) - BigInt::from(5) * pw(4) + BigInt::from(18) * pw(3) - BigInt::from(14) * pw(2) - n.clone() + BigInt::from(3),
        -lead.clone(),
        lead,
    ])
}

/// ISI spectrum of `S_n⁺`, `n ≥ 4`: zero with multiplicity `n − 4`, the
/// twin-clique eigenvalue `−φ(2, 2) = −1`, and the three roots of the cubic.
pub fn star_plus_spectrum_isi(n: usize) -> Result<StarPlus> {
    if n < 4 {
        return Err(Error::Parameter(format!("S_n+ closed form needs n >= 4, got {n}")));
    }
    let r = |num: usize, den: usize| BigRational::new(BigInt::from(num), BigInt::from(den));
    let zero = BigRational::zero();
    let reduced = RationalMatrix::from_rows(vec![
        vec![zero.clone(), r(4 * (n - 1), n + 1), r((n - 1) * (n - 3), n)],
        vec![r(2 * (n - 1), n + 1), BigRational::one(), zero.clone()],
        vec![r(n - 1, n), zero.clone(), zero.clone()],
    ])?;
    let norm = BigRational::one() / n_over(n * n * (n + 1) * (n + 1));
    let cubic = star_plus_cubic_numerator(n).scale(&norm);
    let twin = -WeightFunction::Isi.exact(2, 2);
    let mut spectrum = ClosedFormSpectrum::new(
        FamilySpec::StarPlus(n),
        WeightFunction::Isi,
        vec![
            ClosedGroup::exact(Surd::zero(), n - 4, Provenance::StructuralZero),
            ClosedGroup::exact(twin, 1, Provenance::CliqueTwins),
        ],
    );
    spectrum.residual = Some(Residual::new(cubic.clone())?);
    Ok(StarPlus {
        n,
        reduced,
        cubic,
        spectrum,
    })
}

/// Lower bound on the multiplicity of 0: vertices with identical open
/// neighbourhoods (necessarily pairwise non-adjacent) have identical rows,
/// so each class of size `α` contributes `α − 1`.
pub fn structural_zero_multiplicity(g: &Graph) -> usize {
    let mut classes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for v in 0..g.order() {
        *classes.entry(g.neighbors(v).iter().copied().collect()).or_default() += 1;
    }
    classes.values().map(|c| c - 1).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliqueBound {
    pub value: f64,
    pub exact: Surd,
    pub multiplicity_lower_bound: usize,
    pub vertices: Vec<usize>,
}

/// Cliques of twins: vertices with the same closed neighbourhood
/// `N[v] = N(v) ∪ {v}` are pairwise adjacent, share a degree `d`, and give
/// eigenvalue `−φ(d, d)` with multiplicity at least `α − 1`.
pub fn structural_clique_eigenvalues(g: &Graph, w: WeightFunction) -> Vec<CliqueBound> {
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..g.order() {
        let mut closed: Vec<usize> = g.neighbors(v).iter().copied().collect();
        closed.push(v);
        closed.sort_unstable();
        classes.entry(closed).or_default().push(v);
    }
    classes
        .into_values()
        .filter(|c| c.len() >= 2)
        .map(|vertices| {
            let d = g.degree(vertices[0]);
            let exact = -w.exact(d, d);
            CliqueBound {
                value: exact.to_f64(),
                exact,
                multiplicity_lower_bound: vertices.len() - 1,
                vertices,
            }
        })
        .collect()
}

/// Exact integrality of `A_φ(g)` from its characteristic polynomial: the
/// spectrum is integral iff every root is an integer, and only rational
/// roots can be. `None` when an entry is irrational or the order exceeds
/// the exact-arithmetic limit.
pub fn exact_integrality(g: &Graph, w: WeightFunction) -> Result<Option<IntegralityVerdict>> {
    if g.order() > MAX_CHAR_POLY_ORDER {
        return Ok(None);
    }
    let m = match assemble_rational(g, w) {
        Ok(m) => m,
        Err(Error::Unsupported(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let roots = real_roots(&char_poly_exact(&m)?)?;
    let witness = roots
        .iter()
        .find(|r| !r.exact.as_ref().is_some_and(|q| q.is_integer()))
        .map(|r| r.value);
    Ok(Some(IntegralityVerdict {
        integral: witness.is_none(),
        witness,
        method: IntegralityMethod::Exact,
    }))
}

/// The closed form that applies to a family, if any. `S_n⁺` has one only
/// for the ISI weight.
pub fn closed_form_for(family: &FamilySpec, w: WeightFunction) -> Result<Option<ClosedFormSpectrum>> {
    family.validate()?;
    let s = match family {
        FamilySpec::Complete(1) => return Ok(None),
        FamilySpec::Complete(n) => complete_graph_spectrum(*n, w)?,
        FamilySpec::CompleteBipartite(a, b) => complete_bipartite_spectrum(*a, *b, w)?,
        FamilySpec::CompleteMultipartite(parts) => complete_multipartite_spectrum(parts, w)?,
        FamilySpec::RegularMultipartite { p, t } => regular_multipartite_spectrum(*p, *t, w)?,
        FamilySpec::Crown { p, t } => crown_spectrum(*p, *t, w)?,
        FamilySpec::Star(n) => {
            let mut s = complete_multipartite_spectrum(&[1, n - 1], w)?;
            s.family = family.clone();
            s
        }
        FamilySpec::StarPlus(n) if w == WeightFunction::Isi && *n >= 4 => star_plus_spectrum_isi(*n)?.spectrum,
        FamilySpec::StarPlus(_) => return Ok(None),
    };
    Ok(Some(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::assemble;
    use crate::oracle::verify_root_multiset;
    use crate::spectrum::{spectrum_of, DEFAULT_GROUPING_TOL};
    use crate::weight::{catalog, WeightFunction::*};

    fn numeric(family: &FamilySpec, w: WeightFunction) -> Spectrum {
        spectrum_of(&assemble(&family.build().unwrap(), w), DEFAULT_GROUPING_TOL).unwrap()
    }

    fn assert_matches(closed: &ClosedFormSpectrum, family: &FamilySpec) {
        let num = numeric(family, closed.weight);
        let cf = closed.spectrum(DEFAULT_GROUPING_TOL);
        assert!(cf.matches(&num, 1e-8), "{family} {}: {cf:?} vs {num:?}", closed.weight);
    }

    #[test]
    fn regular_multipartite_values() {
        let s = regular_multipartite_spectrum(3, 3, Isi).unwrap();
        // d = 6, φ = 3: {18, 0^6, (−9)^2}
        let vals: Vec<(String, usize)> = s.groups.iter().map(|g| (g.exact.clone().unwrap().to_string(), g.multiplicity)).collect();
        assert_eq!(vals, vec![("18".into(), 1), ("0".into(), 6), ("-9".into(), 2)]);
        assert_eq!(s.exact_energy().unwrap(), Surd::integer(36));
    }

    #[test]
    fn bipartite_remark() {
        let s = complete_bipartite_spectrum(2, 5, Isi).unwrap();
        let expected = Isi.eval(5, 2) * 10f64.sqrt();
        assert!((s.values()[0] - expected).abs() < 1e-12);
        assert_eq!(s.order(), 7);
        assert_matches(&s, &FamilySpec::CompleteBipartite(2, 5));
    }

    #[test]
    fn all_ones_parts_give_complete_graph() {
        let s = complete_multipartite_spectrum(&[1, 1, 1, 1], Sombor).unwrap();
        let k = complete_graph_spectrum(4, Sombor).unwrap();
        assert!(s.spectrum(1e-7).matches(&k.spectrum(1e-7), 1e-12));
        assert_eq!(s.spectrum(1e-7).multiplicity_near(0.0, 1e-9), 0);
    }

    #[test]
    fn unequal_parts_match_numeric_for_every_weight() {
        for &w in catalog() {
            for parts in [vec![4, 2, 2], vec![1, 2, 3], vec![5, 1, 1, 2], vec![3, 3, 1], vec![2, 6, 1, 3, 2]] {
                let s = complete_multipartite_spectrum(&parts, w).unwrap();
                assert_eq!(s.order(), parts.iter().sum::<usize>());
                assert_matches(&s, &FamilySpec::CompleteMultipartite(parts.clone()));
                assert!(s.eigenvalue_sum().abs() < 1e-9 * s.energy().max(1.0));
            }
        }
    }

    #[test]
    fn repeated_quotient_eigenvalues_stay_exact() {
        // Two equal parts of size 3 give −3φ(d,d) exactly.
        let groups = multipartite_quotient_eigenvalues(&[3, 3, 1], Isi).unwrap();
        let phi = Isi.exact(4, 4);
        assert!(groups.iter().any(|g| g.exact.as_ref() == Some(&-(&phi * 3))));
    }

    #[test]
    fn distinct_counts() {
        let c = distinct_eigenvalue_count_multipartite(&[3, 3, 3], Isi, 1e-7).unwrap();
        assert_eq!(c, DistinctEigenvalues { count: 3, hypotheses_hold: true });
        let c = distinct_eigenvalue_count_multipartite(&[4, 2, 2], Isi, 1e-7).unwrap();
        assert!(c.count > 3);
        let c = distinct_eigenvalue_count_multipartite(&[1, 1, 1], Isi, 1e-7).unwrap();
        assert_eq!(c, DistinctEigenvalues { count: 2, hypotheses_hold: false });
    }

    #[test]
    fn complete_graph_values() {
        let s = complete_graph_spectrum(23, Isi).unwrap();
        assert_eq!(s.groups[0].exact, Some(Surd::integer(242)));
        assert_eq!(s.groups[1].exact, Some(Surd::integer(-11)));
        assert_eq!(s.groups[1].multiplicity, 22);
        assert_eq!(s.exact_energy(), Some(Surd::integer(484)));
        let k4 = complete_graph_spectrum(4, Adjacency).unwrap();
        assert_eq!(k4.energy(), 6.0);
        let k25 = complete_graph_spectrum(25, Isi).unwrap();
        assert_eq!(k25.values()[0], 288.0);
        assert_eq!(k25.energy(), 576.0);
        assert_eq!(complete_graph_energy(25, Isi), 576.0);
        assert!(complete_graph_spectrum(1, Isi).is_err());
    }

    #[test]
    fn complete_minus_edge_values() {
        let s = complete_minus_edge_spectrum(23, Isi).unwrap();
        let v = s.values();
        assert!((v[0] - 240.186).abs() < 1e-3);
        assert!((v[22] + 20.1859).abs() < 1e-4);
        assert!((s.energy() - 480.372).abs() < 1e-3);
        assert!((complete_minus_edge_energy(23, Isi).unwrap() - s.energy()).abs() < 1e-10);

        let p3 = complete_minus_edge_spectrum(3, Adjacency).unwrap();
        let r = 2f64.sqrt();
        let v = p3.values();
        assert!((v[0] - r).abs() < 1e-15 && v[1] == 0.0 && (v[2] + r).abs() < 1e-15);

        let k25 = complete_minus_edge_spectrum(25, Isi).unwrap();
        assert!((k25.values()[0] - 286.172).abs() < 1e-3);
        assert!((k25.energy() - 572.345).abs() < 1e-3);
    }

    #[test]
    fn complete_and_minus_edge_match_numeric() {
        for &w in catalog() {
            for n in [3, 4, 7, 12] {
                assert_matches(&complete_graph_spectrum(n, w).unwrap(), &FamilySpec::Complete(n));
                let s = complete_minus_edge_spectrum(n, w).unwrap();
                let g = FamilySpec::Complete(n).build().unwrap().delete_edge(0, 1).unwrap();
                let num = spectrum_of(&assemble(&g, w), DEFAULT_GROUPING_TOL).unwrap();
                assert!(s.spectrum(DEFAULT_GROUPING_TOL).matches(&num, 1e-8), "{w} n={n}");
            }
        }
    }

    #[test]
    fn ratio_test_examples() {
        let r = ratio_test(23, Isi).unwrap();
        assert!((r.ratio - 43.0 / 42.0).abs() < 1e-15);
        assert_eq!(r.verdict, RatioVerdict::Inconclusive);
        assert_eq!(ratio_test(10, Adjacency).unwrap().verdict, RatioVerdict::Inconclusive);
        assert_eq!(ratio_test(10, Adjacency).unwrap().ratio, 1.0);
        // M1 at n = 25: ρ = 48/47.
        let m1 = ratio_test(25, FirstZagreb).unwrap();
        assert!((m1.ratio - 48.0 / 47.0).abs() < 1e-15);
        assert!((m1.threshold - (23.0f64 / 24.0).sqrt()).abs() < 1e-15);
        assert_eq!(m1.verdict, RatioVerdict::Inconclusive);
        // Randić sits exactly on the boundary.
        assert_eq!(ratio_test(25, Randic).unwrap().verdict, RatioVerdict::Inconclusive);
        // Modified Sombor is decreasing in the degrees, so ρ < 1; the squared
        // ratio 2(d−1)²/(... ) still exceeds (n−2)/(n−1).
        assert_eq!(ratio_test(25, ModifiedSombor).unwrap().verdict, RatioVerdict::Inconclusive);
        assert!(ratio_test(2, Isi).is_err());
    }

    #[test]
    fn tripartite_structure() {
        for p in 2..=10 {
            let t = tripartite_minus_edge_spectrum_isi(p).unwrap();
            assert_eq!(t.spectrum.order(), 3 * p);
            assert!(t.spectrum.eigenvalue_sum().abs() < 1e-9 * t.spectrum.energy());
            assert_eq!(t.b, n_over(p));
            assert_eq!(t.a, Isi.is_rational_at(2 * p - 1, 2 * p).unwrap());
        }
        let p2 = tripartite_minus_edge_spectrum_isi(2).unwrap();
        assert!((p2.spectrum.energy() - 15.8166).abs() < 1e-3);
        assert!((tripartite_minus_edge_energy_isi(3).unwrap() - 37.5126).abs() < 1e-3);
        assert!((tripartite_minus_edge_energy_isi(15).unwrap() - 924.671).abs() < 1e-3);
        assert!(tripartite_minus_edge_spectrum_isi(1).is_err());
    }

    #[test]
    fn tripartite_cubic_roots_are_reduced_matrix_eigenvalues() {
        let t = tripartite_minus_edge_spectrum_isi(3).unwrap();
        let mut from_matrix = eigenvalues_general(&t.reduced.to_f64()).unwrap();
        from_matrix.sort_by(|a, b| b.total_cmp(a));
        let from_poly = expand_roots(&t.spectrum.residual.as_ref().unwrap().roots);
        for (a, b) in from_matrix.iter().zip(&from_poly) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
        assert!(verify_root_multiset(&t.cubic, &from_matrix, 1e-8));
    }

    #[test]
    fn tripartite_matches_numeric() {
        for p in 2..=6 {
            let family = FamilySpec::RegularMultipartite { p, t: 3 };
            let g = family.build().unwrap().delete_edge(0, p).unwrap();
            let num = spectrum_of(&assemble(&g, Isi), DEFAULT_GROUPING_TOL).unwrap();
            let t = tripartite_minus_edge_spectrum_isi(p).unwrap();
            assert!(t.spectrum.spectrum(DEFAULT_GROUPING_TOL).matches(&num, 1e-8), "p={p}");
            assert!((tripartite_minus_edge_energy_isi(p).unwrap() - num.energy()).abs() < 1e-6);
        }
    }

    #[test]
    fn crown_examples() {
        let c6 = crown_spectrum(3, 2, Adjacency).unwrap();
        let v = c6.values();
        assert_eq!(v, vec![2.0, 1.0, 1.0, -1.0, -1.0, -2.0]);
        assert_eq!(c6.energy(), 8.0);
        assert_eq!(crown_bipartite_half_energy(3, Adjacency), 4.0);

        let c23 = crown_spectrum(2, 3, Adjacency).unwrap();
        assert_eq!(c23.values(), vec![2.0, 1.0, 1.0, -1.0, -1.0, -2.0]);
        assert_eq!(c23.energy(), 8.0);
        assert_eq!(crown_energy(2, 3, Adjacency), 8.0);

        for &w in catalog() {
            for (p, t) in [(2, 2), (3, 2), (4, 3), (3, 5)] {
                let s = crown_spectrum(p, t, w).unwrap();
                assert_matches(&s, &FamilySpec::Crown { p, t });
                assert!((s.energy() - crown_energy(p, t, w)).abs() < 1e-9 * s.energy().max(1.0));
            }
        }
    }

    #[test]
    fn crown_isi_integrality_follows_degree_parity() {
        for (p, t) in [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3), (4, 3), (5, 4)] {
            let d = (t - 1) * (p - 1);
            let v = crown_spectrum(p, t, Isi).unwrap().integrality(1e-6, 1e-7);
            assert_eq!(v.integral, d % 2 == 0, "p={p} t={t}");
            assert!(!v.is_heuristic());
            if d % 2 == 1 {
                let w = v.witness.unwrap();
                assert_eq!((w - w.floor()), 0.5);
            }
        }
    }

    #[test]
    fn exact_integrality_examples() {
        let k4 = FamilySpec::Complete(4).build().unwrap();
        let v = exact_integrality(&k4, Adjacency).unwrap().unwrap();
        assert!(v.integral && !v.is_heuristic());
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let v = exact_integrality(&p3, Adjacency).unwrap().unwrap();
        assert!(!v.integral);
        assert!((v.witness.unwrap().abs() - 2f64.sqrt()).abs() < 1e-12);
        // K_{1,4} has adjacency spectrum {±2, 0^3}.
        let star = FamilySpec::Star(5).build().unwrap();
        assert!(exact_integrality(&star, Adjacency).unwrap().unwrap().integral);
        assert!(exact_integrality(&star, Sombor).unwrap().is_none());
        assert!(exact_integrality(&FamilySpec::Complete(17).build().unwrap(), Isi).unwrap().is_none());
    }

    #[test]
    fn star_energies() {
        assert!((star_isi_energy(5).unwrap() - 3.2).abs() < 1e-12);
        assert!((star_isi_energy(100).unwrap() - 19.7008).abs() < 1e-4);
        assert!((star_isi_energy(2).unwrap() - 1.0).abs() < 1e-15);
        for n in [2, 3, 5, 17, 40] {
            let num = numeric(&FamilySpec::Star(n), Isi);
            assert!((star_isi_energy(n).unwrap() - num.energy()).abs() < 1e-9);
        }
    }

    #[test]
    fn star_plus_values() {
        let s5 = star_plus_spectrum_isi(5).unwrap();
        assert!((s5.spectrum.energy() - 5.79971).abs() < 1e-4);
        let s11 = star_plus_spectrum_isi(11).unwrap();
        assert!((s11.spectrum.energy() - 8.59528).abs() < 1e-4);
        for n in 4..30 {
            let s = star_plus_spectrum_isi(n).unwrap();
            assert!(s.spectrum.eigenvalue_sum().abs() < 1e-9, "n={n}");
            assert_matches(&s.spectrum, &FamilySpec::StarPlus(n));
        }
        assert!(star_plus_spectrum_isi(3).is_err());
    }

    #[test]
    fn structural_zero_examples() {
        let parts = [3, 1, 4, 2];
        let g = FamilySpec::CompleteMultipartite(parts.to_vec()).build().unwrap();
        assert_eq!(structural_zero_multiplicity(&g), 10 - 4);
        for p in 2..6 {
            let g = FamilySpec::RegularMultipartite { p, t: 3 }.build().unwrap().delete_edge(0, p).unwrap();
            assert_eq!(structural_zero_multiplicity(&g), 3 * p - 5);
        }
        assert_eq!(structural_zero_multiplicity(&FamilySpec::Complete(6).build().unwrap()), 0);
    }

    #[test]
    fn structural_clique_examples() {
        let k = FamilySpec::Complete(7).build().unwrap();
        let c = structural_clique_eigenvalues(&k, Isi);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].exact, -Isi.exact(6, 6));
        assert_eq!(c[0].multiplicity_lower_bound, 6);

        let ke = k.delete_edge(0, 1).unwrap();
        let c = structural_clique_eigenvalues(&ke, Isi);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].multiplicity_lower_bound, 7 - 3);

        let star = FamilySpec::Star(6).build().unwrap();
        assert!(structural_clique_eigenvalues(&star, Isi).is_empty());
    }

    #[test]
    fn structural_bounds_hold_numerically() {
        let graphs = [
            FamilySpec::Complete(6).build().unwrap().delete_edge(0, 1).unwrap(),
            FamilySpec::StarPlus(7).build().unwrap(),
            FamilySpec::CompleteMultipartite(vec![3, 1, 2]).build().unwrap(),
            FamilySpec::RegularMultipartite { p: 3, t: 3 }.build().unwrap().delete_edge(0, 3).unwrap(),
        ];
        for g in &graphs {
            for &w in catalog() {
                let s = spectrum_of(&assemble(g, w), DEFAULT_GROUPING_TOL).unwrap();
                assert!(structural_zero_multiplicity(g) <= s.multiplicity_near(0.0, 1e-8));
                for c in structural_clique_eigenvalues(g, w) {
                    assert!(c.multiplicity_lower_bound <= s.multiplicity_near(c.value, 1e-8), "{w}");
                }
            }
        }
    }
}
