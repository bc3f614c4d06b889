//! Hole orbital eigenstates in the basis of the six X–C dangling bonds.
//!
//! Bonds 1–3 belong to the upper (+z) carbons and 4–6 to the lower ones.
//! The `±` label is the parity under z → −z; the `0`, `±1` labels are the
//! threefold angular momentum; `x`/`y` are the spatially polarized
//! combinations used for the vibronic coupling.

use nalgebra::{DMatrix, SVector};

use crate::units::DIAMOND_LATTICE_CONSTANT_ANG;
use crate::C64;

/// A 6-component state in the bond basis.
pub type BondVector = SVector<C64, 6>;

/// The ten named orbital states (six independent ones plus the rotated pairs).
#[derive(Clone, Debug, PartialEq)]
pub struct BondBasisVectors {
    pub plus_0: BondVector,
    pub minus_0: BondVector,
    pub plus_p1: BondVector,
    pub plus_m1: BondVector,
    pub minus_p1: BondVector,
    pub minus_m1: BondVector,
    pub plus_x: BondVector,
    pub plus_y: BondVector,
    pub minus_x: BondVector,
    pub minus_y: BondVector,
}

fn real(v: [f64; 6], norm: f64) -> BondVector {
    BondVector::from_iterator(v.iter().map(|&x| C64::new(x / norm, 0.0)))
}

fn angular(sign: f64, parity: f64) -> BondVector {
    let w = |k: f64| C64::from_polar(1.0, sign * 2.0 * std::f64::consts::PI * k / 3.0);
    let n = 6f64.sqrt();
    BondVector::from_iterator(
        [w(0.0), w(1.0), w(2.0), w(0.0) * parity, w(1.0) * parity, w(2.0) * parity]
            .into_iter()
            .map(|z| z / n),
    )
}

/// Returns the orbital eigenstates exactly as defined by the bond geometry.
pub fn bond_eigenstates() -> BondBasisVectors {
    let s12 = 12f64.sqrt();
    BondBasisVectors {
        plus_0: real([1.0; 6], 6f64.sqrt()),
        minus_0: real([1.0, 1.0, 1.0, -1.0, -1.0, -1.0], 6f64.sqrt()),
        plus_p1: angular(1.0, 1.0),
        plus_m1: angular(-1.0, 1.0),
        minus_p1: angular(1.0, -1.0),
        minus_m1: angular(-1.0, -1.0),
        plus_x: real([2.0, -1.0, -1.0, 2.0, -1.0, -1.0], s12),
        plus_y: real([0.0, 1.0, -1.0, 0.0, 1.0, -1.0], 2.0),
        minus_x: real([2.0, -1.0, -1.0, -2.0, 1.0, 1.0], s12),
        minus_y: real([0.0, 1.0, -1.0, 0.0, -1.0, 1.0], 2.0),
    }
}

impl BondBasisVectors {
    /// The six independent states {+0, −0, +x, +y, −x, −y}.
    pub fn polarized(&self) -> [BondVector; 6] {
        [
            self.plus_0,
            self.minus_0,
            self.plus_x,
            self.plus_y,
            self.minus_x,
            self.minus_y,
        ]
    }

    /// The six independent states {+0, −0, +(+1), +(−1), −(+1), −(−1)}.
    pub fn angular(&self) -> [BondVector; 6] {
        [
            self.plus_0,
            self.minus_0,
            self.plus_p1,
            self.plus_m1,
            self.minus_p1,
            self.minus_m1,
        ]
    }

    /// Gram matrix ⟨a|b⟩ of a list of states.
    pub fn gram(states: &[BondVector]) -> DMatrix<C64> {
        DMatrix::from_fn(states.len(), states.len(), |i, j| states[i].dotc(&states[j]))
    }
}

/// Hole position operators (x, y, z) in the bond basis, in Å: each bond state
/// is located at the middle of its X–C bond.
pub fn bond_position_operators() -> [DMatrix<C64>; 3] {
    let a0 = DIAMOND_LATTICE_CONSTANT_ANG;
    let diag = |scale: f64, d: [f64; 6]| {
        DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            6,
            d.iter().map(|&v| C64::new(scale * v, 0.0)),
        ))
    };
    [
        diag(a0 / (4.0 * 6f64.sqrt()), [2.0, -1.0, -1.0, -2.0, 1.0, 1.0]),
        diag(a0 / (4.0 * 2f64.sqrt()), [0.0, -1.0, 1.0, 0.0, 1.0, -1.0]),
        diag(5.0 * 3f64.sqrt() * a0 / 48.0, [1.0, 1.0, 1.0, -1.0, -1.0, -1.0]),
    ]
}
