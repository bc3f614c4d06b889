//! Hermitian diagonalization, degeneracy pairing and convergence studies.
//!
//! Vibronic Hamiltonians are extremely sparse and usually conserve L_z^vo
//! and/or σ_z, so the matrix splits into independent blocks. The solver
//! finds the connected components of the nonzero pattern and diagonalizes
//! each block densely (real symmetric path when the block is real). This is
//! exact — no approximation is made — and keeps round-off at the level of
//! the individual blocks.
//!
//! Determinism: within a block, degenerate eigenvectors are rotated to
//! eigenvectors of L_z^vo and then σ_z; every vector's largest component is
//! made real and positive; near-degenerate levels across blocks are ordered
//! by (σ_z, L_z^vo) descending.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::VibronicBasis;
use crate::error::{Error, NumericalError};
use crate::hamiltonian::build_h0;
use crate::operator::OperatorMatrix;
use crate::params::ManifoldParams;
use crate::C64;

/// Maximum relative Hermiticity defect accepted by [`diagonalize`].
pub const HERMITICITY_TOLERANCE: f64 = 1e-10;

/// Default relative tolerance for [`pair_degeneracies`].
pub const DEFAULT_PAIRING_TOLERANCE: f64 = 1e-9;

/// Expectation values of the conserved quantities (units of ħ and 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateLabel {
    /// ⟨L_z^vo⟩.
    pub l: f64,
    /// ⟨σ_z⟩.
    pub s: f64,
}

impl StateLabel {
    /// True when ⟨L_z^vo⟩ is a half-integer within `tol` (the state is a sharp
    /// L_z^vo eigenstate).
    pub fn l_is_sharp(&self, tol: f64) -> bool {
        let twice = 2.0 * self.l;
        (twice - twice.round()).abs() < 2.0 * tol && (twice.round() as i64).rem_euclid(2) == 1
    }
}

/// An eigenvector stored on its block's support.
#[derive(Clone, Debug)]
pub struct Eigenstate {
    support: Arc<[usize]>,
    amplitudes: Vec<C64>,
    block: usize,
}

impl Eigenstate {
    /// Basis indices on which the vector may be nonzero.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Index of the block the vector belongs to.
    pub fn block(&self) -> usize {
        self.block
    }

    /// Full-length column vector.
    pub fn to_vector(&self, dim: usize) -> DVector<C64> {
        let mut v = DVector::zeros(dim);
        for (&i, &a) in self.support.iter().zip(&self.amplitudes) {
            v[i] = a;
        }
        v
    }
}

/// Full spectrum of a Hermitian operator.
#[derive(Clone, Debug)]
pub struct EigenSolution {
    energies: Vec<f64>,
    states: Vec<Eigenstate>,
    labels: Option<Vec<StateLabel>>,
    dim: usize,
    n_cut: Option<usize>,
    block_count: usize,
}

impl EigenSolution {
    /// Eigenvalues in ascending order.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cut-off of the basis the solved matrix was expressed in.
    pub fn n_cut(&self) -> Option<usize> {
        self.n_cut
    }

    /// Number of independent blocks found.
    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn state(&self, k: usize) -> &Eigenstate {
        &self.states[k]
    }

    /// Full eigenvector k.
    pub fn vector(&self, k: usize) -> DVector<C64> {
        self.states[k].to_vector(self.dim)
    }

    /// Conserved-quantity labels (available when the matrix is over a vibronic basis).
    pub fn label(&self, k: usize) -> Option<StateLabel> {
        self.labels.as_ref().map(|l| l[k])
    }

    /// All labels.
    pub fn labels(&self) -> Option<&[StateLabel]> {
        self.labels.as_deref()
    }

    /// ⟨k|op|k⟩.
    pub fn expectation(&self, op: &OperatorMatrix, k: usize) -> C64 {
        op.expectation(&self.vector(k))
    }

    /// ‖H v − E v‖ / ‖H‖_F for state k.
    pub fn residual(&self, h: &OperatorMatrix, k: usize) -> f64 {
        let v = self.vector(k);
        let r = h.apply(&v) - &v * C64::new(self.energies[k], 0.0);
        let norm = h.frobenius_norm();
        if norm == 0.0 {
            r.norm()
        } else {
            r.norm() / norm
        }
    }

    /// Indices (ascending energy) of states whose ⟨σ_z⟩ is within 1e-6 of
    /// `sign` (±1). Empty when labels are unavailable.
    pub fn spin_sector(&self, sign: f64) -> Vec<usize> {
        match &self.labels {
            Some(labels) => (0..self.len())
                .filter(|&k| (labels[k].s - sign).abs() < 1e-6)
                .collect(),
            None => Vec::new(),
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the nonzero pattern, each sorted, ordered by
/// smallest index.
fn blocks(h: &OperatorMatrix) -> Vec<Vec<usize>> {
    let n = h.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    for (i, j, _) in h.entries() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    let mut root_to_block = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_to_block[r] == usize::MAX {
            root_to_block[r] = out.len();
            out.push(Vec::new());
        }
        out[root_to_block[r]].push(i);
    }
    out
}

/// Dense Hermitian eigen-decomposition, ascending.
fn dense_eigh(m: DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let n = m.nrows();
    let (values, vectors): (Vec<f64>, DMatrix<C64>) = if m.iter().all(|z| z.im == 0.0) {
        let re = m.map(|z| z.re);
        let sym = (&re + re.transpose()) * 0.5;
        let e = SymmetricEigen::new(sym);
        (e.eigenvalues.iter().copied().collect(), e.eigenvectors.map(|x| C64::new(x, 0.0)))
    } else {
        let herm = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let e = SymmetricEigen::new(herm);
        (e.eigenvalues.iter().copied().collect(), e.eigenvectors)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = DMatrix::from_fn(n, n, |i, c| vectors[(i, order[c])]);
    (sorted_values, sorted_vectors)
}

/// Rotates the columns `cols` of `v` (a degenerate cluster) to diagonalize the
/// diagonal operator `d` within the cluster; returns the in-cluster eigenvalues.
fn rotate_cluster(v: &mut DMatrix<C64>, cols: &[usize], d: &[f64]) -> Vec<f64> {
    let k = cols.len();
    let sub = DMatrix::from_fn(v.nrows(), k, |i, c| v[(i, cols[c])]);
    let m = DMatrix::from_fn(k, k, |a, b| {
        (0..sub.nrows())
            .map(|i| sub[(i, a)].conj() * d[i] * sub[(i, b)])
            .sum::<C64>()
    });
    let (vals, rot) = dense_eigh(m);
    // Order by eigenvalue descending so that +l / +s come first.
    let rotated = &sub * &rot;
    for (c, &col) in cols.iter().enumerate() {
        let src = k - 1 - c;
        for i in 0..v.nrows() {
            v[(i, col)] = rotated[(i, src)];
        }
    }
    vals.into_iter().rev().collect()
}

/// Multiplies a vector by a phase so that its largest component (first one
/// on ties) is real and positive.
fn fix_gauge(v: &mut [C64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = v.iter().position(|z| z.norm() >= max * (1.0 - 1e-9)).unwrap_or(0);
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
}

struct BlockResult {
    energies: Vec<f64>,
    vectors: Vec<Vec<C64>>,
}

fn solve_block(h: &OperatorMatrix, idx: &[usize], l_diag: Option<&[f64]>, s_diag: Option<&[f64]>) -> BlockResult {
    let m = h.dense_block(idx);
    let (energies, mut vecs) = dense_eigh(m);
    let n = idx.len();
    if let (Some(l_all), Some(s_all)) = (l_diag, s_diag) {
        let l: Vec<f64> = idx.iter().map(|&i| l_all[i]).collect();
        let s: Vec<f64> = idx.iter().map(|&i| s_all[i]).collect();
        let scale = energies.iter().fold(1.0f64, |a, e| a.max(e.abs()));
        let tol = 1e-10 * scale;
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && energies[end] - energies[end - 1] <= tol {
                end += 1;
            }
            if end - start > 1 {
                let cols: Vec<usize> = (start..end).collect();
                let lvals = rotate_cluster(&mut vecs, &cols, &l);
                let mut a = 0;
                while a < cols.len() {
                    let mut b = a + 1;
                    while b < cols.len() && (lvals[b] - lvals[a]).abs() <= 1e-9 {
                        b += 1;
                    }
                    if b - a > 1 {
                        rotate_cluster(&mut vecs, &cols[a..b], &s);
                    }
                    a = b;
                }
            }
            start = end;
        }
    }
    let vectors = (0..n)
        .map(|c| {
            let mut col: Vec<C64> = vecs.column(c).iter().copied().collect();
            fix_gauge(&mut col);
            col
        })
        .collect();
    BlockResult { energies, vectors }
}

/// Diagonalizes a Hermitian matrix and returns its full spectrum.
///
/// Rejects inputs whose relative Hermiticity defect exceeds 1e-10.
pub fn diagonalize(h: &OperatorMatrix) -> Result<EigenSolution, NumericalError> {
    let defect = h.hermiticity_defect();
    if defect > HERMITICITY_TOLERANCE {
        return Err(NumericalError::NotHermitian {
            defect,
            tolerance: HERMITICITY_TOLERANCE,
        });
    }
    let dim = h.dim();
    let basis = h
        .n_cut()
        .map(VibronicBasis::new)
        .filter(|b| b.dim() == dim);
    let (l_diag, s_diag): (Option<Vec<f64>>, Option<Vec<f64>>) = match &basis {
        Some(b) => (
            Some(
                b.states()
                    .iter()
                    .map(|s| s.m as f64 + 0.5 * s.orbital.sign() as f64)
                    .collect(),
            ),
            Some(b.states().iter().map(|s| s.spin.sign() as f64).collect()),
        ),
        None => (None, None),
    };
    let blocks = blocks(h);
    let results: Vec<BlockResult> = blocks
        .par_iter()
        .map(|idx| solve_block(h, idx, l_diag.as_deref(), s_diag.as_deref()))
        .collect();

    struct Entry {
        energy: f64,
        block: usize,
        local: usize,
        label: Option<StateLabel>,
    }
    let supports: Vec<Arc<[usize]>> = blocks.iter().map(|b| Arc::from(b.as_slice())).collect();
    let mut entries = Vec::with_capacity(dim);
    for (bi, res) in results.iter().enumerate() {
        for (k, &e) in res.energies.iter().enumerate() {
            let label = match (&l_diag, &s_diag) {
                (Some(l), Some(s)) => {
                    let v = &res.vectors[k];
                    let (mut lv, mut sv) = (0.0, 0.0);
                    for (&i, a) in blocks[bi].iter().zip(v) {
                        let w = a.norm_sqr();
                        lv += w * l[i];
                        sv += w * s[i];
                    }
                    Some(StateLabel { l: lv, s: sv })
                }
                _ => None,
            };
            entries.push(Entry {
                energy: e,
                block: bi,
                local: k,
                label,
            });
        }
    }
    entries.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.block.cmp(&b.block))
            .then(a.local.cmp(&b.local))
    });
    // Canonical order inside near-degenerate groups: σ_z, then L_z^vo, descending.
    let scale = entries.iter().fold(1.0f64, |a, e| a.max(e.energy.abs()));
    let tol = DEFAULT_PAIRING_TOLERANCE * scale;
    let mut start = 0;
    while start < entries.len() {
        let mut end = start + 1;
        while end < entries.len() && entries[end].energy - entries[end - 1].energy <= tol {
            end += 1;
        }
        if end - start > 1 {
            entries[start..end].sort_by(|a, b| match (a.label, b.label) {
                (Some(la), Some(lb)) => lb
                    .s
                    .total_cmp(&la.s)
                    .then(lb.l.total_cmp(&la.l))
                    .then(a.block.cmp(&b.block))
                    .then(a.local.cmp(&b.local)),
                _ => a.block.cmp(&b.block).then(a.local.cmp(&b.local)),
            });
        }
        start = end;
    }

    let mut energies = Vec::with_capacity(dim);
    let mut states = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for e in &entries {
        energies.push(e.energy);
        states.push(Eigenstate {
            support: supports[e.block].clone(),
            amplitudes: results[e.block].vectors[e.local].clone(),
            block: e.block,
        });
        if let Some(l) = e.label {
            labels.push(l);
        }
    }
    Ok(EigenSolution {
        energies,
        states,
        labels: if labels.len() == dim { Some(labels) } else { None },
        dim,
        n_cut: basis.map(|b| b.n_cut()),
        block_count: blocks.len(),
    })
}

/// Groups eigenvalues into degenerate pairs.
///
/// Consecutive eigenvalues within `rel_tol·max|E|` form a degenerate group;
/// inside a group, partners are matched by labels (l, s) ↔ (−l, −s) when
/// available. A group of odd size yields an error naming an orphan state.
pub fn pair_degeneracies(sol: &EigenSolution, rel_tol: f64) -> Result<Vec<(usize, usize)>, NumericalError> {
    let e = sol.energies();
    let scale = e.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let tol = rel_tol * scale.max(f64::MIN_POSITIVE);
    let mut pairs = Vec::with_capacity(e.len() / 2);
    let mut start = 0;
    while start < e.len() {
        let mut end = start + 1;
        while end < e.len() && e[end] - e[end - 1] <= tol {
            end += 1;
        }
        let mut free: Vec<usize> = (start..end).collect();
        while let Some(i) = free.first().copied() {
            free.remove(0);
            if free.is_empty() {
                return Err(NumericalError::UnpairedEigenvalue { index: i, energy: e[i] });
            }
            let pick = match sol.label(i) {
                Some(li) => {
                    let cost = |j: usize| {
                        let lj = sol.label(j).expect("labels present for all states");
                        (li.l + lj.l).abs() + (li.s + lj.s).abs()
                    };
                    let mut best = 0;
                    for k in 1..free.len() {
                        if cost(free[k]) < cost(free[best]) - 1e-12 {
                            best = k;
                        }
                    }
                    best
                }
                None => 0,
            };
            let j = free.remove(pick);
            pairs.push((i, j));
        }
        start = end;
    }
    Ok(pairs)
}

/// One row of a convergence study.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n_cut: usize,
    /// max_k |E_k(n_cut) − E_k(ref)| / |E_k(ref)| over the tracked levels.
    pub eps_energy: f64,
    /// max_k (1 − |⟨ψ_k(n_cut)|ψ_k(ref)⟩|) over the tracked levels.
    pub eps_state: f64,
    /// Per-level relative energy errors.
    pub eps_energy_levels: Vec<f64>,
}

/// Number of lowest eigenpairs tracked by [`convergence_study`].
pub const CONVERGENCE_LEVELS: usize = 10;

/// Compares the lowest ten eigenpairs of H₀ at each cut-off in `n_cut_list`
/// against a reference cut-off.
pub fn convergence_study(
    params: &ManifoldParams,
    n_cut_list: &[usize],
    reference_n_cut: usize,
) -> Result<Vec<ConvergenceRow>, Error> {
    if let Some(&max) = n_cut_list.iter().max() {
        if max > reference_n_cut {
            return Err(crate::error::ValidationError::new(
                "reference_n_cut",
                format!("must be ≥ every studied cut-off (got {reference_n_cut} < {max})"),
            )
            .into());
        }
    }
    let ref_basis = VibronicBasis::new(reference_n_cut);
    let reference = diagonalize(&build_h0(params, &ref_basis)?)?;
    let levels = CONVERGENCE_LEVELS.min(reference.len());
    n_cut_list
        .par_iter()
        .map(|&n_cut| {
            let basis = VibronicBasis::new(n_cut);
            let sol = diagonalize(&build_h0(params, &basis)?)?;
            let count = levels.min(sol.len());
            let mut eps_levels = Vec::with_capacity(count);
            let mut eps_state: f64 = 0.0;
            for k in 0..count {
                let er = reference.energies()[k];
                eps_levels.push((sol.energies()[k] - er).abs() / er.abs());
                // Small basis is a prefix of the reference basis.
                let a = sol.state(k);
                let b = reference.vector(k);
                let overlap: C64 = a
                    .support()
                    .iter()
                    .zip(a.amplitudes())
                    .map(|(&i, z)| z.conj() * b[i])
                    .sum();
                eps_state = eps_state.max((1.0 - overlap.norm()).max(0.0));
            }
            Ok(ConvergenceRow {
                n_cut,
                eps_energy: eps_levels.iter().copied().fold(0.0, f64::max),
                eps_state,
                eps_energy_levels: eps_levels,
            })
        })
        .collect()
}

/// Diagonalizes H₀ for a parameter set at a given cut-off.
pub fn solve_h0(params: &ManifoldParams, n_cut: usize) -> Result<EigenSolution, Error> {
    let basis = VibronicBasis::new(n_cut);
    Ok(diagonalize(&build_h0(params, &basis)?)?)
}
