//! Energy and spectral-radius change under a single edge deletion or
//! addition, and the complete-graph sweep across weights and orders.

use std::fmt::Write as _;
use std::hash::Hasher;

use fnv::FnvHasher;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{
    complete_graph_energy, complete_minus_edge_energy, complete_minus_edge_quotient_roots, ratio_test,
    RatioTest, RatioVerdict,
};
use crate::error::{Error, Result};
use crate::graph::{FamilySpec, Graph};
use crate::matrix::assemble;
use crate::spectrum::{spectrum_of, Spectrum, DEFAULT_GROUPING_TOL};
use crate::weight::WeightFunction;

pub const DEFAULT_UNCHANGED_TOL: f64 = 1e-6;
pub const MAX_SWEEP_ORDER: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareOptions {
    pub grouping_tol: f64,
    /// `|ΔE| ≤ unchanged_tol·max(1, E_before)` counts as no change.
    pub unchanged_tol: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            grouping_tol: DEFAULT_GROUPING_TOL,
            unchanged_tol: DEFAULT_UNCHANGED_TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeOperation {
    Deletion,
    Addition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyVerdict {
    Decreased,
    Increased,
    Unchanged,
}

impl EnergyVerdict {
    pub fn classify(before: f64, after: f64, tol: f64) -> Self {
        let delta = after - before;
        if delta.abs() <= tol * before.abs().max(1.0) {
            Self::Unchanged
        } else if delta < 0.0 {
            Self::Decreased
        } else {
            Self::Increased
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Decreased => "decreased",
            Self::Increased => "increased",
            Self::Unchanged => "unchanged",
        }
    }
}

impl RatioVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Decreases => "decreases",
            Self::Inconclusive => "inconclusive",
        }
    }
}

/// Short descriptor for a graph with no family: `edges:` plus the FNV-1a
/// hash of its edge-list text.
pub fn edge_list_label(g: &Graph) -> String {
    let mut h = FnvHasher::default();
    h.write(g.to_edge_list().as_bytes());
    format!("edges:{:016x}", h.finish())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnergyChangeReport {
    pub graph_before: String,
    pub graph_after: String,
    pub order: usize,
    pub weight: WeightFunction,
    pub operation: EdgeOperation,
    pub edge: (usize, usize),
    pub spectrum_before: Spectrum,
    pub spectrum_after: Spectrum,
    pub energy_before: f64,
    pub energy_after: f64,
    pub delta_energy: f64,
    pub lambda1_before: f64,
    pub lambda1_after: f64,
    pub delta_spectral_radius: f64,
    pub ratio_test: Option<RatioTest>,
    pub verdict: EnergyVerdict,
    pub after_connected: bool,
}

impl EnergyChangeReport {
    pub fn row(&self) -> ReportRow {
        ReportRow {
            family: self.graph_before.clone(),
            n: self.order,
            weight: self.weight,
            energy_before: self.energy_before,
            energy_after: self.energy_after,
            delta: self.delta_energy,
            lambda1_before: self.lambda1_before,
            lambda1_after: self.lambda1_after,
            ratio_test: self.ratio_test.map(|r| r.verdict),
            verdict: self.verdict,
        }
    }
}

/// One line of a comparison table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub family: String,
    pub n: usize,
    pub weight: WeightFunction,
    #[serde(rename = "E_before")]
    pub energy_before: f64,
    #[serde(rename = "E_after")]
    pub energy_after: f64,
    pub delta: f64,
    pub lambda1_before: f64,
    pub lambda1_after: f64,
    pub ratio_test: Option<RatioVerdict>,
    pub verdict: EnergyVerdict,
}

pub const CSV_HEADER: &str = "family,n,weight,E_before,E_after,delta,lambda1_before,lambda1_after,ratio_test,verdict";

impl ReportRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{:e},{:e},{:e},{:e},{:e},{},{}",
            csv_field(&self.family),
            self.n,
            self.weight.id(),
            self.energy_before,
            self.energy_after,
            self.delta,
            self.lambda1_before,
            self.lambda1_after,
            self.ratio_test.map_or("", |r| r.as_str()),
            self.verdict.as_str()
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{}", r.to_csv()).expect("write to string");
    }
    out
}

fn compare(
    before: &Graph,
    after: Graph,
    label: Option<&str>,
    w: WeightFunction,
    operation: EdgeOperation,
    edge: (usize, usize),
    opts: CompareOptions,
) -> Result<EnergyChangeReport> {
    let spectrum_before = spectrum_of(&assemble(before, w), opts.grouping_tol)?;
    let spectrum_after = spectrum_of(&assemble(&after, w), opts.grouping_tol)?;
    let energy_before = spectrum_before.energy();
    let energy_after = spectrum_after.energy();
    let ratio = if operation == EdgeOperation::Deletion && before.is_complete() && before.order() >= 3 {
        Some(ratio_test(before.order(), w)?)
    } else {
        None
    };
    let sign = match operation {
        EdgeOperation::Deletion => '-',
        EdgeOperation::Addition => '+',
    };
    let (graph_before, graph_after) = match label {
        Some(l) => (l.to_string(), format!("{l}{sign}{{{},{}}}", edge.0, edge.1)),
        None => (edge_list_label(before), edge_list_label(&after)),
    };
    Ok(EnergyChangeReport {
        graph_before,
        graph_after,
        order: before.order(),
        weight: w,
        operation,
        edge,
        energy_before,
        energy_after,
        delta_energy: energy_after - energy_before,
        lambda1_before: spectrum_before.largest(),
        lambda1_after: spectrum_after.largest(),
        delta_spectral_radius: spectrum_after.spectral_radius() - spectrum_before.spectral_radius(),
        ratio_test: ratio,
        verdict: EnergyVerdict::classify(energy_before, energy_after, opts.unchanged_tol),
        after_connected: after.is_connected(),
        spectrum_before,
        spectrum_after,
    })
}

/// Delete `{u, v}` and compare both numeric spectra. `label` names the
/// graph in the report; without one an edge-list hash is used. Complete
/// graphs also get the ratio-test verdict.
pub fn compare_edge_deletion(
    g: &Graph,
    label: Option<&str>,
    u: usize,
    v: usize,
    w: WeightFunction,
    opts: CompareOptions,
) -> Result<EnergyChangeReport> {
    let after = g.delete_edge(u, v)?;
    compare(g, after, label, w, EdgeOperation::Deletion, (u.min(v), u.max(v)), opts)
}

/// Insert `{u, v}` and compare both numeric spectra.
pub fn compare_edge_addition(
    g: &Graph,
    label: Option<&str>,
    u: usize,
    v: usize,
    w: WeightFunction,
    opts: CompareOptions,
) -> Result<EnergyChangeReport> {
    if g.has_edge(u, v) {
        return Err(Error::Parameter(format!("{{{u}, {v}}} is already an edge")));
    }
    let after = g.add_edge(u, v)?;
    compare(g, after, label, w, EdgeOperation::Addition, (u.min(v), u.max(v)), opts)
}

/// `K_n` against `K_n − e` for every `(n, w)`, from the closed forms, in
/// `(n, weight)` order.
pub fn conjecture_sweep(ns: &[usize], weights: &[WeightFunction], unchanged_tol: f64) -> Result<Vec<ReportRow>> {
    if let Some(&n) = ns.iter().find(|&&n| !(3..=MAX_SWEEP_ORDER).contains(&n)) {
        return Err(Error::Parameter(format!(
            "sweep orders must lie in 3..={MAX_SWEEP_ORDER}, got {n}"
        )));
    }
    let grid: Vec<(usize, WeightFunction)> = ns
        .iter()
        .flat_map(|&n| weights.iter().map(move |&w| (n, w)))
        .collect();
    grid.par_iter()
        .map(|&(n, w)| {
            let before = complete_graph_energy(n, w);
            let after = complete_minus_edge_energy(n, w)?;
            let (lambda_plus, _) = complete_minus_edge_quotient_roots(n, w)?;
            Ok(ReportRow {
                family: FamilySpec::Complete(n).to_string(),
                n,
                weight: w,
                energy_before: before,
                energy_after: after,
                delta: after - before,
                lambda1_before: (n - 1) as f64 * w.eval_equal_degree(n - 1),
                lambda1_after: lambda_plus,
                ratio_test: Some(ratio_test(n, w)?.verdict),
                verdict: EnergyVerdict::classify(before, after, unchanged_tol),
            })
        })
        .collect()
}

/// Whether deleting one edge raises the ISI energy of `K_{p,…,p}` with `t`
/// parts, judged on numeric spectra.
pub fn multipartite_deletion_theorem_check(p: usize, t: usize) -> Result<bool> {
    if t < 3 || p < 2 {
        return Err(Error::Parameter(format!("needs t >= 3 and p >= 2, got p={p}, t={t}")));
    }
    let family = FamilySpec::RegularMultipartite { p, t };
    let (u, v) = family.default_deletion_edge().expect("multipartite edge");
    let label = family.to_string();
    let report = compare_edge_deletion(
        &family.build()?,
        Some(&label),
        u,
        v,
        WeightFunction::Isi,
        CompareOptions::default(),
    )?;
    Ok(report.verdict == EnergyVerdict::Increased)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{catalog, WeightFunction::*};

    fn family_deletion(f: &FamilySpec, w: WeightFunction) -> EnergyChangeReport {
        let (u, v) = f.default_deletion_edge().unwrap();
        compare_edge_deletion(&f.build().unwrap(), Some(&f.to_string()), u, v, w, CompareOptions::default()).unwrap()
    }

    #[test]
    fn k23_deletion() {
        let r = family_deletion(&FamilySpec::Complete(23), Isi);
        assert_eq!(r.verdict, EnergyVerdict::Decreased);
        assert!((r.energy_before - 484.0).abs() < 1e-9);
        assert!((r.delta_energy + 3.628).abs() < 1e-3);
        assert_eq!(r.ratio_test.unwrap().verdict, RatioVerdict::Inconclusive);
        assert!(r.after_connected);
        assert_eq!(r.graph_after, "complete:23-{0,1}");
    }

    #[test]
    fn tripartite_deletions() {
        let r = family_deletion(&FamilySpec::RegularMultipartite { p: 3, t: 3 }, Isi);
        assert_eq!(r.verdict, EnergyVerdict::Increased);
        assert!((r.energy_before - 36.0).abs() < 1e-9);
        assert!((r.energy_after - 37.5126).abs() < 1e-3);
        assert!(r.ratio_test.is_none());

        let r = family_deletion(&FamilySpec::RegularMultipartite { p: 2, t: 3 }, Isi);
        assert_eq!(r.verdict, EnergyVerdict::Decreased);
        assert!((r.energy_after - 15.8166).abs() < 1e-3);
    }

    #[test]
    fn star_additions() {
        let s = FamilySpec::Star(5);
        let r = compare_edge_addition(&s.build().unwrap(), Some("star:5"), 1, 2, Isi, CompareOptions::default()).unwrap();
        assert_eq!(r.verdict, EnergyVerdict::Increased);
        assert!((r.energy_before - 3.2).abs() < 1e-9);
        assert!((r.energy_after - 5.79971).abs() < 1e-4);

        let s = FamilySpec::Star(100).build().unwrap();
        let r = compare_edge_addition(&s, None, 1, 2, Isi, CompareOptions::default()).unwrap();
        assert!((r.energy_before - 19.7008).abs() < 1e-4);
        assert!((r.energy_after - 22.2053).abs() < 1e-4);
        assert!(r.graph_before.starts_with("edges:"));
        assert_ne!(r.graph_before, r.graph_after);
    }

    #[test]
    fn path_to_triangle() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let r = compare_edge_addition(&p3, None, 0, 2, Adjacency, CompareOptions::default()).unwrap();
        assert!((r.energy_before - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((r.energy_after - 4.0).abs() < 1e-12);
        assert_eq!(r.verdict, EnergyVerdict::Increased);
    }

    #[test]
    fn bad_edges_rejected() {
        let k4 = FamilySpec::Complete(4).build().unwrap();
        assert!(matches!(
            compare_edge_addition(&k4, None, 0, 1, Isi, CompareOptions::default()),
            Err(Error::Parameter(_))
        ));
        let s = FamilySpec::Star(4).build().unwrap();
        assert!(matches!(
            compare_edge_deletion(&s, None, 1, 2, Isi, CompareOptions::default()),
            Err(Error::NotAnEdge(1, 2))
        ));
    }

    #[test]
    fn disconnection_is_reported() {
        let r = family_deletion(&FamilySpec::Star(6), Isi);
        assert!(!r.after_connected);
        assert_eq!(r.spectrum_after.order(), 6);
    }

    #[test]
    fn verdict_band() {
        assert_eq!(EnergyVerdict::classify(2.0, 2.0 + 1e-7, 1e-6), EnergyVerdict::Unchanged);
        assert_eq!(EnergyVerdict::classify(2.0, 2.0 - 1e-5, 1e-6), EnergyVerdict::Decreased);
        assert_eq!(EnergyVerdict::classify(0.0, 1e-7, 1e-6), EnergyVerdict::Unchanged);
    }

    #[test]
    fn report_invariants() {
        for &w in catalog() {
            let r = family_deletion(&FamilySpec::CompleteMultipartite(vec![3, 2, 2]), w);
            assert_eq!(r.delta_energy, r.energy_after - r.energy_before);
            assert_eq!(r.verdict, EnergyVerdict::classify(r.energy_before, r.energy_after, 1e-6));
        }
    }

    #[test]
    fn sweep_small_cases() {
        let rows = conjecture_sweep(&[4, 25], catalog(), DEFAULT_UNCHANGED_TOL).unwrap();
        assert_eq!(rows.len(), 20);
        assert_eq!(rows[0].n, 4);
        assert_eq!(rows[0].weight, Isi);
        assert_eq!(rows[10].n, 25);
        let adj4 = rows.iter().find(|r| r.n == 4 && r.weight == Adjacency).unwrap();
        assert_eq!(adj4.energy_before, 6.0);
        assert!((adj4.energy_after - (1.0 + 17f64.sqrt())).abs() < 1e-12);
        let randic = rows.iter().find(|r| r.n == 25 && r.weight == Randic).unwrap();
        assert_eq!(randic.verdict, EnergyVerdict::Unchanged);
        assert!(conjecture_sweep(&[501], &[Isi], 1e-6).is_err());
        assert!(conjecture_sweep(&[2], &[Isi], 1e-6).is_err());
    }

    #[test]
    fn sweep_isi_always_decreases() {
        let ns: Vec<usize> = (3..=100).collect();
        for r in conjecture_sweep(&ns, &[Isi], DEFAULT_UNCHANGED_TOL).unwrap() {
            assert_eq!(r.verdict, EnergyVerdict::Decreased, "n={}", r.n);
        }
    }

    #[test]
    fn sweep_matches_numeric() {
        let ns = [3, 5, 10, 31, 77];
        let rows = conjecture_sweep(&ns, catalog(), DEFAULT_UNCHANGED_TOL).unwrap();
        for r in rows {
            let numeric = family_deletion(&FamilySpec::Complete(r.n), r.weight);
            let scale = r.energy_before.max(1.0);
            assert!((numeric.energy_before - r.energy_before).abs() < 1e-7 * scale);
            assert!((numeric.energy_after - r.energy_after).abs() < 1e-7 * scale, "{} {}", r.n, r.weight);
            assert!((numeric.lambda1_after - r.lambda1_after).abs() < 1e-7 * scale);
        }
    }

    #[test]
    fn multipartite_theorem_examples() {
        assert!(multipartite_deletion_theorem_check(3, 3).unwrap());
        assert!(!multipartite_deletion_theorem_check(2, 3).unwrap());
        assert!(multipartite_deletion_theorem_check(3, 4).unwrap());
        assert!(multipartite_deletion_theorem_check(2, 2).is_err());
    }

    #[test]
    fn csv_rows() {
        let rows = conjecture_sweep(&[23], &[Isi], DEFAULT_UNCHANGED_TOL).unwrap();
        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let line = lines.next().unwrap();
        assert!(line.starts_with("complete:23,23,ISI,4.84e2,"), "{line}");
        assert!(line.ends_with(",inconclusive,decreased"));
        assert_eq!(csv_field("multipartite:1,2"), "\"multipartite:1,2\"");
    }
}
