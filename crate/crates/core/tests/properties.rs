use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use phispec::closed_form::{
    complete_multipartite_spectrum, distinct_eigenvalue_count_multipartite, structural_clique_eigenvalues,
    structural_zero_multiplicity, tripartite_minus_edge_spectrum_isi,
};
use phispec::matrix::{assemble, assemble_rational, is_equitable, quotient, Partition};
use phispec::oracle::{char_poly_exact, jacobi_eigen};
use phispec::oracle::roots::expand_roots;
use phispec::spectrum::{eigenvalues_general, eigenvalues_sym, group, spectrum_of};
use phispec::weight::{catalog, WeightFunction};
use phispec::{FamilySpec, Graph, SymmetricMatrix};

fn weight() -> impl Strategy<Value = WeightFunction> {
    prop::sample::select(catalog().to_vec())
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn symmetric(max_n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| SymmetricMatrix::from_fn(n, |i, j| v[i * n + j]))
    })
}

fn scale_of(values: &[f64]) -> f64 {
    values.iter().fold(1.0_f64, |m, v| m.max(v.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn assembled_matrix_is_hollow_and_symmetric(g in graph(12), w in weight()) {
        let m = assemble(&g, w);
        prop_assert_eq!(m.trace(), 0.0);
        for i in 0..g.order() {
            for j in 0..g.order() {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
                prop_assert_eq!(m.get(i, j) != 0.0, g.has_edge(i, j) && w.is_positive_at(g.degree(i), g.degree(j)));
            }
        }
    }

    #[test]
    fn eigenvalues_sum_to_zero(g in graph(14), w in weight()) {
        let v = eigenvalues_sym(&assemble(&g, w)).unwrap();
        let sum: f64 = v.iter().sum();
        prop_assert!(sum.abs() <= 1e-9 * scale_of(&v) * v.len() as f64);
    }

    #[test]
    fn grouping_is_idempotent(values in prop::collection::vec(-50.0f64..50.0, 1..40), tol in 1e-9f64..1e-3) {
        let s = group(&values, tol);
        prop_assert_eq!(s.order(), values.len());
        prop_assert_eq!(s.regroup(tol), s);
    }

    #[test]
    fn solvers_agree(m in symmetric(25)) {
        let a = eigenvalues_sym(&m).unwrap();
        let b = jacobi_eigen(&m).unwrap();
        let tol = 1e-9 * m.frobenius_norm().max(1.0);
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= tol, "{} vs {}", x, y);
        }
    }

    #[test]
    fn general_solver_agrees_on_symmetric_input(m in symmetric(12)) {
        let general = eigenvalues_general(&phispec::SquareMatrix::from_fn(m.order(), |i, j| m.get(i, j))).unwrap();
        let sym = eigenvalues_sym(&m).unwrap();
        let tol = 1e-8 * m.frobenius_norm().max(1.0);
        for (x, y) in general.iter().zip(&sym) {
            prop_assert!((x - y).abs() <= tol);
        }
    }

    #[test]
    fn perron_root_dominates(g in graph(12), w in weight()) {
        prop_assume!(g.is_connected() && g.size() > 0);
        prop_assume!(g.edges().iter().all(|&(u, v)| w.is_positive_at(g.degree(u), g.degree(v))));
        let v = eigenvalues_sym(&assemble(&g, w)).unwrap();
        let rho = v[0];
        prop_assert!(rho > 0.0);
        prop_assert!(v.iter().all(|x| x.abs() <= rho * (1.0 + 1e-12)));
        prop_assert!(v.len() < 2 || v[1] < rho - 1e-9 * rho);
    }

    #[test]
    fn regular_graphs_isi_is_half_degree_adjacency(r in 1usize..6, extra in 0usize..4) {
        let g = FamilySpec::Crown { p: r + 1, t: 2 + extra % 3 }.build().unwrap();
        let d = g.regular_degree().unwrap();
        let isi = eigenvalues_sym(&assemble(&g, WeightFunction::Isi)).unwrap();
        let adj = eigenvalues_sym(&assemble(&g, WeightFunction::Adjacency)).unwrap();
        for (a, b) in isi.iter().zip(&adj) {
            prop_assert!((a - d as f64 / 2.0 * b).abs() <= 1e-9 * scale_of(&isi));
        }
    }

    #[test]
    fn delete_then_add_is_identity(g in graph(10)) {
        for (u, v) in g.edges() {
            prop_assert_eq!(&g.delete_edge(u, v).unwrap().add_edge(u, v).unwrap(), &g);
        }
    }

    #[test]
    fn spectra_are_relabelling_invariant(g in graph(9), w in weight(), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = eigenvalues_sym(&assemble(&g, w)).unwrap();
        let b = eigenvalues_sym(&assemble(&g.relabel(&perm).unwrap(), w)).unwrap();
        let tol = 1e-9 * scale_of(&a);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= tol);
        }
    }

    #[test]
    fn structural_bounds_hold(g in graph(10), w in weight()) {
        let s = spectrum_of(&assemble(&g, w), 1e-7).unwrap();
        let tol = 1e-8 * scale_of(&s.values());
        prop_assert!(structural_zero_multiplicity(&g) <= s.multiplicity_near(0.0, tol));
        for c in structural_clique_eigenvalues(&g, w) {
            prop_assert!(c.multiplicity_lower_bound <= s.multiplicity_near(c.value, tol));
        }
    }

    #[test]
    fn multipartite_closed_form_matches(parts in prop::collection::vec(1usize..=6, 2..=5), w in weight()) {
        let g = FamilySpec::CompleteMultipartite(parts.clone()).build().unwrap();
        let numeric = eigenvalues_sym(&assemble(&g, w)).unwrap();
        let closed = complete_multipartite_spectrum(&parts, w).unwrap().values();
        let tol = 1e-8 * scale_of(&numeric);
        prop_assert_eq!(closed.len(), numeric.len());
        for (x, y) in closed.iter().zip(&numeric) {
            prop_assert!((x - y).abs() <= tol, "{:?} {}: {} vs {}", parts, w, x, y);
        }
    }

    #[test]
    fn part_partition_is_equitable(parts in prop::collection::vec(1usize..=5, 2..=5), w in weight()) {
        let g = FamilySpec::CompleteMultipartite(parts.clone()).build().unwrap();
        prop_assert!(is_equitable(&assemble(&g, w), &Partition::consecutive(&parts).unwrap(), 1e-9).unwrap());
    }

    #[test]
    fn rational_char_poly_vanishes_at_eigenvalues(g in graph(8), w in prop::sample::select(vec![
        WeightFunction::Isi, WeightFunction::Adjacency, WeightFunction::FirstZagreb, WeightFunction::SecondZagreb,
    ])) {
        let m = assemble(&g, w);
        let chi = char_poly_exact(&assemble_rational(&g, w).unwrap()).unwrap();
        let norm = m.frobenius_norm();
        let bound = 1e-8 * (1.0 + norm).powi(g.order() as i32);
        for v in eigenvalues_sym(&m).unwrap() {
            prop_assert!(chi.eval_f64(v).abs() <= bound, "{} at {}", chi, v);
        }
    }
}

#[test]
fn quotient_eigenvalues_are_eigenvalues() {
    let cases: Vec<(FamilySpec, Vec<usize>)> = vec![
        (FamilySpec::CompleteMultipartite(vec![2, 5, 1]), vec![2, 5, 1]),
        (FamilySpec::CompleteMultipartite(vec![6, 6, 3, 1, 4]), vec![6, 6, 3, 1, 4]),
        (FamilySpec::RegularMultipartite { p: 12, t: 5 }, vec![12; 5]),
    ];
    for (family, parts) in cases {
        let g = family.build().unwrap();
        for &w in catalog() {
            let m = assemble(&g, w);
            let q = quotient(&m, &Partition::consecutive(&parts).unwrap()).unwrap();
            let full = spectrum_of(&m, 1e-7).unwrap();
            let tol = 1e-8 * full.spectral_radius().max(1.0);
            for v in eigenvalues_general(&q).unwrap() {
                assert!(full.multiplicity_near(v, tol) > 0, "{family} {w}: {v}");
            }
        }
    }
}

/// `p_i·p_j·φ²(d_i, d_j)` is the same for every pair of parts, i.e. the
/// symmetrized quotient `√(p_i p_j)·φ(d_i, d_j)` has a constant off-diagonal.
fn constant_symmetrized_offdiagonal(parts: &[usize], w: WeightFunction) -> bool {
    let n: usize = parts.iter().sum();
    let mut values = Vec::new();
    for (i, &a) in parts.iter().enumerate() {
        for &b in &parts[i + 1..] {
            values.push(BigRational::from_integer(BigInt::from(a * b)) * w.squared(n - a, n - b));
        }
    }
    values.windows(2).all(|p| p[0] == p[1])
}

#[test]
fn three_distinct_eigenvalues_characterization() {
    let mut unequal_with_three = Vec::new();
    for t in 3..=4 {
        let mut parts = vec![1; t];
        loop {
            for &w in catalog() {
                let c = distinct_eigenvalue_count_multipartite(&parts, w, 1e-7).unwrap();
                let equal = parts.iter().all(|&p| p == parts[0]);
                if c.hypotheses_hold {
                    if equal {
                        assert_eq!(c.count, 3, "{parts:?} {w}");
                    }
                    assert_eq!(c.count == 3, constant_symmetrized_offdiagonal(&parts, w), "{parts:?} {w}");
                    if c.count == 3 && !equal {
                        unequal_with_three.push((parts.clone(), w));
                    }
                }
            }
            let Some(i) = (0..t).rev().find(|&i| parts[i] < 5) else { break };
            let v = parts[i] + 1;
            parts[i..].iter_mut().for_each(|p| *p = v);
        }
    }
    // Equal parts are sufficient but not necessary.
    assert_eq!(unequal_with_three, vec![(vec![1, 1, 1, 4], WeightFunction::SecondZagreb)]);
}

#[test]
fn unequal_parts_with_three_distinct_eigenvalues() {
    let g = FamilySpec::CompleteMultipartite(vec![1, 1, 1, 4]).build().unwrap();
    let s = spectrum_of(&assemble(&g, WeightFunction::SecondZagreb), 1e-7).unwrap();
    let groups: Vec<(f64, usize)> = s.groups().iter().map(|g| (g.value, g.multiplicity)).collect();
    assert_eq!(groups.len(), 3);
    assert!((groups[0].0 - 108.0).abs() < 1e-9 && groups[0].1 == 1);
    assert!(groups[1].0.abs() < 1e-9 && groups[1].1 == 3);
    assert!((groups[2].0 + 36.0).abs() < 1e-9 && groups[2].1 == 3);
}

#[test]
fn tripartite_quotient_spectrum() {
    for p in 2..=10 {
        let data = tripartite_minus_edge_spectrum_isi(p).unwrap();
        let q = eigenvalues_general(&data.quotient.to_f64()).unwrap();
        let mut expected = expand_roots(&data.spectrum.residual.as_ref().unwrap().roots);
        expected.push(data.lambda_plus);
        expected.push(data.lambda_minus);
        expected.sort_by(|a, b| b.total_cmp(a));
        for (x, y) in q.iter().zip(&expected) {
            assert!((x - y).abs() <= 1e-9 * scale_of(&q), "p={p}: {q:?} vs {expected:?}");
        }

        let family = FamilySpec::RegularMultipartite { p, t: 3 };
        let g = family.build().unwrap().delete_edge(0, p).unwrap();
        let cells = Partition::new(
            vec![
                vec![0],
                vec![p],
                (1..p).collect(),
                (p + 1..2 * p).collect(),
                (2 * p..3 * p).collect(),
            ],
            3 * p,
        )
        .unwrap();
        let m = assemble(&g, WeightFunction::Isi);
        assert!(is_equitable(&m, &cells, 1e-9).unwrap());
        assert!(quotient(&m, &cells).unwrap().max_abs_diff(&data.quotient.to_f64()) < 1e-12);
    }
}

#[test]
fn tripartite_energy_ordering() {
    let energy = |p: usize| -> (f64, f64) {
        let g = FamilySpec::RegularMultipartite { p, t: 3 }.build().unwrap();
        let e = |g: &Graph| eigenvalues_sym(&assemble(g, WeightFunction::Isi)).unwrap().iter().map(|v| v.abs()).sum::<f64>();
        (e(&g), e(&g.delete_edge(0, p).unwrap()))
    };
    let (before, after) = energy(2);
    assert!((before - 16.0).abs() < 1e-9 && after < before);
    for p in 3..=12 {
        let (before, after) = energy(p);
        assert!(after > before, "p={p}");
    }
}

#[test]
fn adjacency_perron_root_drops_on_deletion_in_regular_families() {
    for family in [
        FamilySpec::Complete(8),
        FamilySpec::RegularMultipartite { p: 3, t: 4 },
        FamilySpec::Crown { p: 4, t: 3 },
    ] {
        let g = family.build().unwrap();
        let (u, v) = family.default_deletion_edge().unwrap();
        let before = eigenvalues_sym(&assemble(&g, WeightFunction::Adjacency)).unwrap()[0];
        let after = eigenvalues_sym(&assemble(&g.delete_edge(u, v).unwrap(), WeightFunction::Adjacency)).unwrap()[0];
        assert!(after <= before + 1e-12, "{family}");
    }
}
