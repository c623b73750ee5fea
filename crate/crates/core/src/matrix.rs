//! Assembly of `A_φ(G)`, vertex partitions and quotient matrices.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::RationalMatrix;
use crate::weight::WeightFunction;

/// Absolute tolerance used when checking that a partition is equitable.
pub const DEFAULT_EQUITABLE_TOL: f64 = 1e-9;

/// Dense real symmetric matrix, row-major. Every off-diagonal write is
/// mirrored so symmetry holds exactly as stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![0.0; order * order],
        }
    }

    /// Build from the upper triangle of `f`, mirrored to the lower.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in i..order {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.order + j] = v;
        self.entries[j * self.order + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|v| v.is_finite())
    }

    /// CSV dump, one row per line, 17 significant digits.
    pub fn to_csv(&self) -> String {
        rows_to_csv(self.order, |i, j| self.get(i, j))
    }
}

/// Dense general square matrix (quotient matrices need not be symmetric).
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SquareMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.order, other.order);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        rows_to_csv(self.order, |i, j| self.get(i, j))
    }
}

fn rows_to_csv(order: usize, get: impl Fn(usize, usize) -> f64) -> String {
    let mut out = String::new();
    for i in 0..order {
        let row: Vec<String> = (0..order).map(|j| format!("{:.16e}", get(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Ordered vertex partition `{P_1, …, P_l}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
    order: usize,
}

impl Partition {
    /// Validates that cells are non-empty, disjoint and cover `0..order`.
    pub fn new(cells: Vec<Vec<usize>>, order: usize) -> Result<Self> {
        let mut seen = vec![false; order];
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::Parameter("partition cells must be non-empty".into()));
            }
            for &v in cell {
                if v >= order {
                    return Err(Error::Parameter(format!("vertex {v} out of range for order {order}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Parameter(format!("vertex {v} appears in two cells")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Parameter(format!("vertex {v} is not covered by the partition")));
        }
        Ok(Self { cells, order })
    }

    /// Consecutive cells of the given sizes: `{0..s_1}`, `{s_1..s_1+s_2}`, ...
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        let mut cells = Vec::with_capacity(sizes.len());
        let mut start = 0;
        for &s in sizes {
            cells.push((start..start + s).collect());
            start += s;
        }
        Self::new(cells, start)
    }

    /// The single-cell partition.
    pub fn trivial(order: usize) -> Result<Self> {
        Self::new(vec![(0..order).collect()], order)
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// `A_φ(G)`: entry `(i, j)` is `φ(d_i, d_j)` when `ij` is an edge, else 0.
pub fn assemble(g: &Graph, w: WeightFunction) -> SymmetricMatrix {
    let deg = g.degrees();
    let mut m = SymmetricMatrix::zeros(g.order());
    for (u, v) in g.edges() {
        m.set(u, v, w.eval(deg[u], deg[v]));
    }
    m
}

/// Exact-rational `A_φ(G)`. Fails when some edge weight is irrational.
pub fn assemble_rational(g: &Graph, w: WeightFunction) -> Result<RationalMatrix> {
    let deg = g.degrees();
    let mut m = RationalMatrix::zeros(g.order());
    for (u, v) in g.edges() {
        let value = w.is_rational_at(deg[u], deg[v]).ok_or_else(|| {
            Error::Unsupported(format!(
                "{w} weight at degrees ({}, {}) is irrational",
                deg[u], deg[v]
            ))
        })?;
        m.set(u, v, value.clone());
        m.set(v, u, value);
    }
    Ok(m)
}

fn check_cover(m: &SymmetricMatrix, p: &Partition) -> Result<()> {
    if p.order() != m.order() {
        return Err(Error::Parameter(format!(
            "partition covers {} indices but the matrix has order {}",
            p.order(),
            m.order()
        )));
    }
    Ok(())
}

fn block_row_sum(m: &SymmetricMatrix, row: usize, cell: &[usize]) -> f64 {
    cell.iter().map(|&j| m.get(row, j)).sum()
}

/// True when, within every block `P_i × P_j`, all row sums agree to within
/// `tol`.
pub fn is_equitable(m: &SymmetricMatrix, p: &Partition, tol: f64) -> Result<bool> {
    check_cover(m, p)?;
    for rows in p.cells() {
        for cols in p.cells() {
            let sums: Vec<f64> = rows.iter().map(|&r| block_row_sum(m, r, cols)).collect();
            let (lo, hi) = sums
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| (lo.min(s), hi.max(s)));
            if hi - lo > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Quotient matrix: entry `(i, j)` is the average row sum of block `P_i × P_j`.
pub fn quotient(m: &SymmetricMatrix, p: &Partition) -> Result<SquareMatrix> {
    check_cover(m, p)?;
    let cells = p.cells();
    Ok(SquareMatrix::from_fn(cells.len(), |i, j| {
        let total: f64 = cells[i].iter().map(|&r| block_row_sum(m, r, &cells[j])).sum();
        total / cells[i].len() as f64
    }))
}

fn multipartite_degrees(parts: &[usize]) -> Result<Vec<usize>> {
    if parts.len() < 2 || parts.contains(&0) {
        return Err(Error::Parameter(
            "multipartite quotient needs t >= 2 parts of size >= 1".into(),
        ));
    }
    let n: usize = parts.iter().sum();
    Ok(parts.iter().map(|p| n - p).collect())
}

/// Quotient of `A_φ(K_{p_1,…,p_t})` over its parts, straight from
/// `m_ii = 0`, `m_ij = p_j·φ(d_i, d_j)` with `d_i = n − p_i`.
pub fn multipartite_quotient(parts: &[usize], w: WeightFunction) -> Result<SquareMatrix> {
    let d = multipartite_degrees(parts)?;
    Ok(SquareMatrix::from_fn(parts.len(), |i, j| {
        if i == j {
            0.0
        } else {
            parts[j] as f64 * w.eval(d[i], d[j])
        }
    }))
}

/// Exact-rational form of [`multipartite_quotient`]; `None` when some
/// `φ(d_i, d_j)` is irrational.
pub fn multipartite_quotient_exact(parts: &[usize], w: WeightFunction) -> Result<Option<RationalMatrix>> {
    let d = multipartite_degrees(parts)?;
    let t = parts.len();
    let mut m = RationalMatrix::zeros(t);
    for i in 0..t {
        for j in 0..t {
            if i == j {
                continue;
            }
            match w.is_rational_at(d[i], d[j]) {
                Some(v) => m.set(i, j, v * BigRational::from_integer(parts[j].into())),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(m))
}
