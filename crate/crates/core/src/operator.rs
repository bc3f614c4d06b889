//! Sparse complex operator matrices.
//!
//! Every operator in the vibronic model couples a basis state to at most a
//! handful of others, so matrices are stored row-wise as sorted
//! `(column, value)` lists. At `n_cut = 40` the basis holds 3444 states and a
//! dense complex matrix would take ~190 MB, while the sparse form needs a few
//! hundred kB. Dense views are produced on demand.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};

use crate::C64;

/// Physical unit attached to an operator's entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    MilliElectronVolt,
    Dimensionless,
    Debye,
    Angstrom,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Unit::MilliElectronVolt => "meV",
            Unit::Dimensionless => "1",
            Unit::Debye => "D",
            Unit::Angstrom => "Å",
        };
        f.write_str(s)
    }
}

/// A square complex matrix over a vibronic basis (or any finite space).
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    n_cut: Option<usize>,
    unit: Unit,
    rows: Vec<Vec<(usize, C64)>>,
}

impl OperatorMatrix {
    /// The zero matrix.
    pub fn zeros(dim: usize, n_cut: Option<usize>, unit: Unit) -> Self {
        OperatorMatrix {
            dim,
            n_cut,
            unit,
            rows: vec![Vec::new(); dim],
        }
    }

    /// The identity matrix.
    pub fn identity(dim: usize, n_cut: Option<usize>) -> Self {
        Self::from_entries(
            dim,
            n_cut,
            Unit::Dimensionless,
            (0..dim).map(|i| (i, i, C64::new(1.0, 0.0))),
        )
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicates are summed
    /// and exact zeros dropped.
    pub fn from_entries(
        dim: usize,
        n_cut: Option<usize>,
        unit: Unit,
        entries: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Self {
        let mut rows: Vec<Vec<(usize, C64)>> = vec![Vec::new(); dim];
        for (i, j, v) in entries {
            assert!(i < dim && j < dim, "entry ({i},{j}) outside dimension {dim}");
            rows[i].push((j, v));
        }
        for row in &mut rows {
            compact_row(row);
        }
        OperatorMatrix {
            dim,
            n_cut,
            unit,
            rows,
        }
    }

    /// Converts a dense matrix. Exact zeros are dropped.
    pub fn from_dense(m: &DMatrix<C64>, n_cut: Option<usize>, unit: Unit) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "operator matrices are square");
        let dim = m.nrows();
        Self::from_entries(
            dim,
            n_cut,
            unit,
            (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j, m[(i, j)]))),
        )
    }

    /// Dense copy.
    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Truncation of the vibronic basis this matrix is expressed in, if any.
    pub fn n_cut(&self) -> Option<usize> {
        self.n_cut
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    /// Returns a copy carrying a different unit tag.
    pub fn with_unit(mut self, unit: Unit) -> Self {
        self.unit = unit;
        self
    }

    /// Stored nonzero entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, C64)] {
        &self.rows[i]
    }

    /// Iterates over all stored `(row, col, value)` entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&(j, v)| (i, j, v)))
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Matrix element `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> C64 {
        match self.rows[i].binary_search_by_key(&j, |&(c, _)| c) {
            Ok(k) => self.rows[i][k].1,
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_entries(
            self.dim,
            self.n_cut,
            self.unit,
            self.entries().map(|(i, j, v)| (j, i, v.conj())),
        )
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&(j, v)| (j, v.conj())).collect())
            .collect();
        OperatorMatrix {
            rows,
            ..self.clone_shape()
        }
    }

    /// True when every stored entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries().all(|(_, _, v)| v.im == 0.0)
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries()
            .map(|(_, _, v)| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    /// Relative Hermiticity defect ‖A − A†‖_F / ‖A‖_F (0 for the zero matrix).
    pub fn hermiticity_defect(&self) -> f64 {
        let norm = self.frobenius_norm();
        if norm == 0.0 {
            return 0.0;
        }
        (self - &self.adjoint()).frobenius_norm() / norm
    }

    /// Commutator [A, B] = AB − BA.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Multiplies every entry by a complex scalar.
    pub fn scaled(&self, c: C64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut r: Vec<_> = r.iter().map(|&(j, v)| (j, v * c)).collect();
                r.retain(|&(_, v)| v != C64::new(0.0, 0.0));
                r
            })
            .collect();
        OperatorMatrix {
            rows,
            ..self.clone_shape()
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        DVector::from_iterator(
            self.dim,
            self.rows
                .iter()
                .map(|row| row.iter().map(|&(j, a)| a * v[j]).sum::<C64>()),
        )
    }

    /// ⟨u|A|v⟩.
    pub fn element(&self, u: &DVector<C64>, v: &DVector<C64>) -> C64 {
        assert_eq!(u.len(), self.dim, "vector length mismatch");
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| u[i].conj() * row.iter().map(|&(j, a)| a * v[j]).sum::<C64>())
            .sum()
    }

    /// ⟨v|A|v⟩.
    pub fn expectation(&self, v: &DVector<C64>) -> C64 {
        self.element(v, v)
    }

    /// Relabels basis states: entry (i, j) moves to (perm[i], perm[j]).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim, "permutation length mismatch");
        Self::from_entries(
            self.dim,
            self.n_cut,
            self.unit,
            self.entries().map(|(i, j, v)| (perm[i], perm[j], v)),
        )
    }

    /// Principal submatrix on the given (sorted or unsorted) index set, dense.
    pub fn dense_block(&self, indices: &[usize]) -> DMatrix<C64> {
        let mut local = vec![usize::MAX; self.dim];
        for (k, &i) in indices.iter().enumerate() {
            local[i] = k;
        }
        let b = indices.len();
        let mut m = DMatrix::zeros(b, b);
        for (k, &i) in indices.iter().enumerate() {
            for &(j, v) in &self.rows[i] {
                let l = local[j];
                if l != usize::MAX {
                    m[(k, l)] = v;
                }
            }
        }
        m
    }

    fn clone_shape(&self) -> Self {
        OperatorMatrix {
            dim: self.dim,
            n_cut: self.n_cut,
            unit: self.unit,
            rows: Vec::new(),
        }
    }

    fn check_compatible(&self, other: &Self, op: &str) {
        assert_eq!(
            self.dim, other.dim,
            "cannot {op} operators of dimension {} and {}",
            self.dim, other.dim
        );
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        self.check_compatible(other, "combine");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row: Vec<_> = a.clone();
                row.extend(b.iter().map(|&(j, v)| (j, v * sign)));
                compact_row(&mut row);
                row
            })
            .collect();
        OperatorMatrix {
            rows,
            n_cut: self.n_cut.or(other.n_cut),
            ..self.clone_shape()
        }
    }
}

/// Sorts a row by column, sums duplicates and drops exact zeros.
fn compact_row(row: &mut Vec<(usize, C64)>) {
    row.sort_by_key(|&(j, _)| j);
    let mut out: Vec<(usize, C64)> = Vec::with_capacity(row.len());
    for &(j, v) in row.iter() {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv += v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|&(_, v)| v != C64::new(0.0, 0.0));
    *row = out;
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.combine(rhs, 1.0)
    }
}

impl Add for OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: OperatorMatrix) -> OperatorMatrix {
        self.combine(&rhs, 1.0)
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.combine(rhs, -1.0)
    }
}

impl Sub for OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: OperatorMatrix) -> OperatorMatrix {
        self.combine(&rhs, -1.0)
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        self.scaled(C64::new(-1.0, 0.0))
    }
}

impl Mul<f64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, c: f64) -> OperatorMatrix {
        self.scaled(C64::new(c, 0.0))
    }
}

impl Mul<f64> for OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, c: f64) -> OperatorMatrix {
        self.scaled(C64::new(c, 0.0))
    }
}

impl Mul<C64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, c: C64) -> OperatorMatrix {
        self.scaled(c)
    }
}

impl Mul<C64> for OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, c: C64) -> OperatorMatrix {
        self.scaled(c)
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.check_compatible(rhs, "multiply");
        let mut acc = vec![C64::new(0.0, 0.0); self.dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            for &(k, a) in row {
                for &(j, b) in &rhs.rows[k] {
                    if acc[j] == C64::new(0.0, 0.0) {
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                if acc[j] != C64::new(0.0, 0.0) {
                    out.push((j, acc[j]));
                }
                acc[j] = C64::new(0.0, 0.0);
            }
            touched.clear();
            rows.push(out);
        }
        OperatorMatrix {
            dim: self.dim,
            n_cut: self.n_cut.or(rhs.n_cut),
            unit: self.unit,
            rows,
        }
    }
}

impl Mul for OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: OperatorMatrix) -> OperatorMatrix {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample() -> OperatorMatrix {
        OperatorMatrix::from_entries(
            3,
            None,
            Unit::Dimensionless,
            [
                (0, 0, c(1.0, 0.0)),
                (0, 2, c(0.0, 2.0)),
                (1, 1, c(-3.0, 0.0)),
                (2, 0, c(4.0, 1.0)),
            ],
        )
    }

    #[test]
    fn dense_round_trip() {
        let a = sample();
        assert_eq!(OperatorMatrix::from_dense(&a.to_dense(), None, a.unit()), a);
    }

    #[test]
    fn product_matches_dense() {
        let a = sample();
        let b = a.adjoint();
        let sparse = (&a * &b).to_dense();
        let dense = a.to_dense() * b.to_dense();
        assert!((sparse - dense).norm() < 1e-14);
    }

    #[test]
    fn duplicates_sum_and_zeros_drop() {
        let a = OperatorMatrix::from_entries(
            2,
            None,
            Unit::Dimensionless,
            [(0, 1, c(1.0, 0.0)), (0, 1, c(-1.0, 0.0)), (1, 0, c(2.0, 0.0))],
        );
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(1, 0), c(2.0, 0.0));
    }

    #[test]
    fn hermiticity_defect_detects_asymmetry() {
        let a = sample();
        assert!(a.hermiticity_defect() > 0.1);
        let h = &a + &a.adjoint();
        assert_eq!(h.hermiticity_defect(), 0.0);
    }

    #[test]
    fn element_matches_dense() {
        let a = sample();
        let u = DVector::from_vec(vec![c(1.0, 1.0), c(0.5, 0.0), c(0.0, -2.0)]);
        let v = DVector::from_vec(vec![c(0.0, 1.0), c(2.0, 0.0), c(1.0, 0.0)]);
        let dense = (u.adjoint() * a.to_dense() * &v)[(0, 0)];
        assert!((a.element(&u, &v) - dense).norm() < 1e-14);
    }
}
