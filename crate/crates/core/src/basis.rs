//! Truncated vibronic product basis |n, m⟩ ⊗ |orbital⟩ ⊗ |spin⟩ and its
//! elementary operators.
//!
//! The phonon factor is the 2D isotropic oscillator with total quantum number
//! `n ∈ [0, n_cut]` and angular momentum `m ∈ {−n, −n+2, …, n}` (n + 1 states per
//! level). States are ordered by n, then m, then orbital {−, +}, then spin
//! {↓, ↑}. Because of this ordering a basis with a smaller cut-off is a prefix
//! of a basis with a larger one, so vectors embed by zero padding.
//!
//! Phonon operators are built by projecting the infinite-dimensional matrix
//! rules onto the retained states; couplings that would leave the truncated
//! space are dropped in both directions, which keeps Hermitian combinations
//! exactly Hermitian.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::operator::{OperatorMatrix, Unit};
use crate::units;
use crate::C64;

/// Orbital pseudo-spin: eigenstate of τ_z with eigenvalue −1 or +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orbital {
    Minus,
    Plus,
}

impl Orbital {
    /// Eigenvalue of τ_z.
    pub fn sign(self) -> i32 {
        match self {
            Orbital::Minus => -1,
            Orbital::Plus => 1,
        }
    }

    fn index(self) -> usize {
        match self {
            Orbital::Minus => 0,
            Orbital::Plus => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orbital::Minus => Orbital::Plus,
            Orbital::Plus => Orbital::Minus,
        }
    }
}

/// Spin projection: eigenstate of σ_z with eigenvalue −1 (↓) or +1 (↑).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    /// Eigenvalue of σ_z.
    pub fn sign(self) -> i32 {
        match self {
            Spin::Down => -1,
            Spin::Up => 1,
        }
    }

    fn index(self) -> usize {
        match self {
            Spin::Down => 0,
            Spin::Up => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Spin::Down => Spin::Up,
            Spin::Up => Spin::Down,
        }
    }
}

/// One product state |n, m, orbital, spin⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisState {
    pub n: u32,
    pub m: i32,
    pub orbital: Orbital,
    pub spin: Spin,
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = if self.orbital == Orbital::Plus { '+' } else { '-' };
        let s = if self.spin == Spin::Up { '↑' } else { '↓' };
        write!(f, "|{},{},{},{}⟩", self.n, self.m, o, s)
    }
}

/// Ordered, truncated vibronic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VibronicBasis {
    n_cut: usize,
    states: Vec<BasisState>,
}

/// Number of (n, m) oscillator states with n ≤ n_cut.
fn oscillator_count(n_cut: usize) -> usize {
    (n_cut + 1) * (n_cut + 2) / 2
}

impl VibronicBasis {
    /// Builds the basis for phonon numbers `0..=n_cut`.
    pub fn new(n_cut: usize) -> Self {
        let mut states = Vec::with_capacity(4 * oscillator_count(n_cut));
        for n in 0..=n_cut as u32 {
            for m in (-(n as i32)..=n as i32).step_by(2) {
                for orbital in [Orbital::Minus, Orbital::Plus] {
                    for spin in [Spin::Down, Spin::Up] {
                        states.push(BasisState {
                            n,
                            m,
                            orbital,
                            spin,
                        });
                    }
                }
            }
        }
        VibronicBasis { n_cut, states }
    }

    pub fn n_cut(&self) -> usize {
        self.n_cut
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> BasisState {
        self.states[i]
    }

    /// Position of a state in the ordering, or `None` if it is not retained.
    pub fn index_of(&self, s: &BasisState) -> Option<usize> {
        let n = s.n as usize;
        if n > self.n_cut || s.m.unsigned_abs() as usize > n || (s.m + s.n as i32) % 2 != 0 {
            return None;
        }
        let pair = n * (n + 1) / 2 + ((s.m + s.n as i32) / 2) as usize;
        Some(4 * pair + 2 * s.orbital.index() + s.spin.index())
    }

    fn index_parts(&self, n: u32, m: i32, orbital: Orbital, spin: Spin) -> Option<usize> {
        self.index_of(&BasisState {
            n,
            m,
            orbital,
            spin,
        })
    }

    fn zeros(&self, unit: Unit) -> OperatorMatrix {
        OperatorMatrix::zeros(self.dim(), Some(self.n_cut), unit)
    }

    fn build(&self, unit: Unit, entries: Vec<(usize, usize, C64)>) -> OperatorMatrix {
        OperatorMatrix::from_entries(self.dim(), Some(self.n_cut), unit, entries)
    }

    /// Operator acting only on the phonon factor: `rule(n, m)` lists the
    /// images `(n′, m′, amplitude)` of |n, m⟩ in the infinite oscillator space.
    pub fn phonon_operator(
        &self,
        unit: Unit,
        rule: impl Fn(u32, i32) -> Vec<(i64, i64, f64)>,
    ) -> OperatorMatrix {
        let mut entries = Vec::new();
        for (j, s) in self.states.iter().enumerate() {
            for (n2, m2, amp) in rule(s.n, s.m) {
                if n2 < 0 || amp == 0.0 {
                    continue;
                }
                if let Some(i) = self.index_parts(n2 as u32, m2 as i32, s.orbital, s.spin) {
                    entries.push((i, j, C64::new(amp, 0.0)));
                }
            }
        }
        self.build(unit, entries)
    }

    /// Operator `I_phonon ⊗ orbital ⊗ spin` for 2×2 matrices indexed
    /// `[Minus, Plus]` and `[Down, Up]`.
    pub fn local_operator(&self, orbital: [[C64; 2]; 2], spin: [[C64; 2]; 2]) -> OperatorMatrix {
        let mut entries = Vec::new();
        for (j, s) in self.states.iter().enumerate() {
            for o2 in [Orbital::Minus, Orbital::Plus] {
                let a = orbital[o2.index()][s.orbital.index()];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for s2 in [Spin::Down, Spin::Up] {
                    let b = spin[s2.index()][s.spin.index()];
                    if b == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let i = self.index_parts(s.n, s.m, o2, s2).expect("same phonon state");
                    entries.push((i, j, a * b));
                }
            }
        }
        self.build(Unit::Dimensionless, entries)
    }

    /// Identity.
    pub fn identity(&self) -> OperatorMatrix {
        OperatorMatrix::identity(self.dim(), Some(self.n_cut))
    }

    /// Total phonon number n (diagonal).
    pub fn number_operator(&self) -> OperatorMatrix {
        self.diagonal(Unit::Dimensionless, |s| s.n as f64)
    }

    /// Diagonal operator with entries `f(state)`.
    pub fn diagonal(&self, unit: Unit, f: impl Fn(&BasisState) -> f64) -> OperatorMatrix {
        let entries = self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (i, i, C64::new(f(s), 0.0)))
            .collect();
        self.build(unit, entries)
    }

    /// Zero operator over this basis.
    pub fn zero_operator(&self, unit: Unit) -> OperatorMatrix {
        self.zeros(unit)
    }
}

/// Physical length scale √(ħ/2μω) of the oscillator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscillatorScale {
    pub hbar_omega_mev: f64,
    pub mass_da: f64,
}

impl OscillatorScale {
    /// √(ħ/2μω) in Å.
    pub fn length_ang(&self) -> f64 {
        units::oscillator_length_ang(self.hbar_omega_mev, self.mass_da)
    }
}

fn scale_of(scale: Option<OscillatorScale>) -> (f64, Unit) {
    match scale {
        Some(s) => (s.length_ang(), Unit::Angstrom),
        None => (1.0, Unit::Dimensionless),
    }
}

fn sqrt_i(x: i64) -> f64 {
    if x <= 0 {
        0.0
    } else {
        (x as f64).sqrt()
    }
}

/// Raising and lowering displacement operators (Q₊, Q₋).
///
/// Q₊ maps |n, m⟩ to √(n−m)|n−1, m+1⟩ + √(n+m+2)|n+1, m+1⟩ in units of
/// √(ħ/2μω); Q₋ = Q₊†. With a scale the entries are in Å.
pub fn ladder_operators(
    basis: &VibronicBasis,
    scale: Option<OscillatorScale>,
) -> (OperatorMatrix, OperatorMatrix) {
    let (len, unit) = scale_of(scale);
    let q_plus = basis.phonon_operator(unit, |n, m| {
        let (n, m) = (n as i64, m as i64);
        vec![
            (n - 1, m + 1, len * sqrt_i(n - m)),
            (n + 1, m + 1, len * sqrt_i(n + m + 2)),
        ]
    });
    let q_minus = q_plus.adjoint();
    (q_plus, q_minus)
}

/// Cartesian displacements x = (Q₊+Q₋)/2 and y = (Q₊−Q₋)/2i.
pub fn position_operators(
    basis: &VibronicBasis,
    scale: Option<OscillatorScale>,
) -> (OperatorMatrix, OperatorMatrix) {
    let (qp, qm) = ladder_operators(basis, scale);
    let x = &(&qp + &qm) * 0.5;
    let y = &(&qp - &qm) * C64::new(0.0, -0.5);
    (x, y)
}

/// Second-order displacement operators.
#[derive(Clone, Debug)]
pub struct SecondOrderOperators {
    /// x² − y².
    pub x2_minus_y2: OperatorMatrix,
    /// 2xy.
    pub two_xy: OperatorMatrix,
    /// Q₊₊ = Q₊²/√2, raises m by 2.
    pub q_plus_plus: OperatorMatrix,
    /// Q₋₋ = Q₋²/√2 = Q₊₊†, lowers m by 2.
    pub q_minus_minus: OperatorMatrix,
}

/// Builds x² − y², 2xy and Q±± from the exact infinite-space rules
/// (not from products of truncated first-order operators).
///
/// In units of ħ/2μω, Q₊² maps |n, m⟩ to
/// √(n+m+2)√(n+m+4)|n+2, m+2⟩ + 2√(n+m+2)√(n−m)|n, m+2⟩ + √(n−m)√(n−m−2)|n−2, m+2⟩.
/// Then x² − y² = (Q₊² + Q₋²)/2, 2xy = (Q₊² − Q₋²)/2i and Q±± = Q±²/√2.
pub fn second_order_operators(
    basis: &VibronicBasis,
    scale: Option<OscillatorScale>,
) -> SecondOrderOperators {
    let (len, unit) = scale_of(scale);
    let l2 = len * len;
    let q_plus_sq = basis.phonon_operator(unit, |n, m| {
        let (n, m) = (n as i64, m as i64);
        vec![
            (n + 2, m + 2, l2 * sqrt_i(n + m + 2) * sqrt_i(n + m + 4)),
            (n, m + 2, l2 * 2.0 * sqrt_i(n + m + 2) * sqrt_i(n - m)),
            (n - 2, m + 2, l2 * sqrt_i(n - m) * sqrt_i(n - m - 2)),
        ]
    });
    let q_minus_sq = q_plus_sq.adjoint();
    let x2_minus_y2 = &(&q_plus_sq + &q_minus_sq) * 0.5;
    let two_xy = &(&q_plus_sq - &q_minus_sq) * C64::new(0.0, -0.5);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    SecondOrderOperators {
        x2_minus_y2,
        two_xy,
        q_plus_plus: &q_plus_sq * r,
        q_minus_minus: &q_minus_sq * r,
    }
}

/// Pauli operators on the orbital (τ) and spin (σ) factors plus the phonon
/// and vibronic angular momenta (units of ħ).
#[derive(Clone, Debug)]
pub struct OrbitalSpinOperators {
    pub tau_x: OperatorMatrix,
    pub tau_y: OperatorMatrix,
    pub tau_z: OperatorMatrix,
    /// τ₊ = |+⟩⟨−|.
    pub tau_plus: OperatorMatrix,
    /// τ₋ = |−⟩⟨+|.
    pub tau_minus: OperatorMatrix,
    pub sigma_x: OperatorMatrix,
    pub sigma_y: OperatorMatrix,
    pub sigma_z: OperatorMatrix,
    /// Phonon angular momentum m.
    pub lz_v: OperatorMatrix,
    /// Vibronic angular momentum m + τ_z/2.
    pub lz_vo: OperatorMatrix,
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// 2×2 Pauli matrices in the `[lower, upper]` = `[Minus/Down, Plus/Up]` basis,
/// indexed `[row][col]`.
pub(crate) mod pauli {
    use super::*;
    pub const ID: [[C64; 2]; 2] = [[ONE, ZERO], [ZERO, ONE]];
    pub const X: [[C64; 2]; 2] = [[ZERO, ONE], [ONE, ZERO]];
    /// σ_y: ⟨upper|σ_y|lower⟩ = −i.
    pub const Y: [[C64; 2]; 2] = [[ZERO, I], [C64::new(0.0, -1.0), ZERO]];
    pub const Z: [[C64; 2]; 2] = [[C64::new(-1.0, 0.0), ZERO], [ZERO, ONE]];
    /// |upper⟩⟨lower|.
    pub const RAISE: [[C64; 2]; 2] = [[ZERO, ZERO], [ONE, ZERO]];
    /// |lower⟩⟨upper|.
    pub const LOWER: [[C64; 2]; 2] = [[ZERO, ONE], [ZERO, ZERO]];
}

/// Builds τ, σ and angular-momentum operators.
pub fn orbital_spin_operators(basis: &VibronicBasis) -> OrbitalSpinOperators {
    OrbitalSpinOperators {
        tau_x: basis.local_operator(pauli::X, pauli::ID),
        tau_y: basis.local_operator(pauli::Y, pauli::ID),
        tau_z: basis.local_operator(pauli::Z, pauli::ID),
        tau_plus: basis.local_operator(pauli::RAISE, pauli::ID),
        tau_minus: basis.local_operator(pauli::LOWER, pauli::ID),
        sigma_x: basis.local_operator(pauli::ID, pauli::X),
        sigma_y: basis.local_operator(pauli::ID, pauli::Y),
        sigma_z: basis.local_operator(pauli::ID, pauli::Z),
        lz_v: basis.diagonal(Unit::Dimensionless, |s| s.m as f64),
        lz_vo: basis.diagonal(Unit::Dimensionless, |s| {
            s.m as f64 + 0.5 * s.orbital.sign() as f64
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(VibronicBasis::new(0).dim(), 4);
        assert_eq!(VibronicBasis::new(1).dim(), 12);
        assert_eq!(VibronicBasis::new(20).dim(), 924);
        assert_eq!(VibronicBasis::new(40).dim(), 3444);
    }

    #[test]
    fn index_of_inverts_enumeration() {
        let b = VibronicBasis::new(6);
        for (i, s) in b.states().iter().enumerate() {
            assert_eq!(b.index_of(s), Some(i));
        }
    }

    #[test]
    fn smaller_basis_is_prefix() {
        let a = VibronicBasis::new(3);
        let b = VibronicBasis::new(5);
        assert_eq!(a.states(), &b.states()[..a.dim()]);
    }

    #[test]
    fn ladder_elements() {
        let b = VibronicBasis::new(3);
        let (qp, qm) = ladder_operators(&b, None);
        let idx = |n, m| {
            b.index_of(&BasisState {
                n,
                m,
                orbital: Orbital::Plus,
                spin: Spin::Up,
            })
            .unwrap()
        };
        assert!((qp.get(idx(1, 1), idx(0, 0)).re - 2f64.sqrt()).abs() < 1e-15);
        assert!((qp.get(idx(0, 0), idx(1, -1)).re - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(qm, qp.adjoint());
        for (i, j, _) in qp.entries() {
            assert_eq!(b.state(i).m, b.state(j).m + 1);
        }
    }

    #[test]
    fn q_plus_plus_element() {
        let b = VibronicBasis::new(4);
        let ops = second_order_operators(&b, None);
        let idx = |n, m| {
            b.index_of(&BasisState {
                n,
                m,
                orbital: Orbital::Minus,
                spin: Spin::Down,
            })
            .unwrap()
        };
        // ⟨n, m+2|Q₊₊|n, m⟩ = 2√(n+m+2)√(n−m)/√2 in units of ħ/2μω.
        let (n, m) = (3u32, -1i32);
        let expected = 2.0 * ((n as f64 + m as f64 + 2.0) * (n as f64 - m as f64)).sqrt()
            / 2f64.sqrt();
        let got = ops.q_plus_plus.get(idx(n, m + 2), idx(n, m)).re;
        assert!((got - expected).abs() < 1e-14);
        for (i, j, _) in ops.q_plus_plus.entries() {
            assert_eq!(b.state(i).m, b.state(j).m + 2);
        }
    }

    #[test]
    fn vibronic_angular_momentum_labels() {
        let b = VibronicBasis::new(1);
        let ops = orbital_spin_operators(&b);
        let s = |n, m, orbital| {
            b.index_of(&BasisState {
                n,
                m,
                orbital,
                spin: Spin::Up,
            })
            .unwrap()
        };
        let i = s(0, 0, Orbital::Plus);
        assert_eq!(ops.lz_vo.get(i, i).re, 0.5);
        let j = s(1, -1, Orbital::Plus);
        assert_eq!(ops.lz_vo.get(j, j).re, -0.5);
        assert_eq!(ops.tau_z.commutator(&ops.sigma_z).nnz(), 0);
    }

    #[test]
    fn pauli_algebra() {
        let b = VibronicBasis::new(0);
        let o = orbital_spin_operators(&b);
        // τ_x τ_y = i τ_z
        let lhs = &o.tau_x * &o.tau_y;
        let rhs = &o.tau_z * C64::new(0.0, 1.0);
        assert_eq!((&lhs - &rhs).nnz(), 0);
        let lhs = &o.sigma_x * &o.sigma_y;
        let rhs = &o.sigma_z * C64::new(0.0, 1.0);
        assert_eq!((&lhs - &rhs).nnz(), 0);
        // τ_x = τ₊ + τ₋
        assert_eq!((&o.tau_x - &(&o.tau_plus + &o.tau_minus)).nnz(), 0);
    }
}
