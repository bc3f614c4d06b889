//! Hamiltonian assembly and symmetry operators.
//!
//! Everything is expressed in the rotated orbital frame in which the
//! vibronic coupling reads J(x τ_x + y τ_y) = J(Q₊τ₋ + Q₋τ₊), with x, y the
//! dimensionless displacements. In that frame the intrinsic Hamiltonian is
//!
//! H₀ = ħω(n + 1) + J(x τ_x + y τ_y) − (λ/2) τ_z σ_z,
//!
//! with J = √(E_JT·ħω). It conserves L_z^vo = m + τ_z/2 and σ_z.

use serde::{Deserialize, Serialize};

use crate::basis::{ladder_operators, orbital_spin_operators, pauli, VibronicBasis};
use crate::error::{require_finite, ValidationError};
use crate::operator::{OperatorMatrix, Unit};
use crate::params::ManifoldParams;
use crate::units;
use crate::C64;

/// Intrinsic Hamiltonian H₀ in meV.
pub fn build_h0(params: &ManifoldParams, basis: &VibronicBasis) -> Result<OperatorMatrix, ValidationError> {
    params.validate()?;
    let ops = orbital_spin_operators(basis);
    let (qp, qm) = ladder_operators(basis, None);
    let vib = &(&basis.number_operator() + &basis.identity()) * params.hbar_omega_mev;
    let coupling = &(&(&qp * &ops.tau_minus) + &(&qm * &ops.tau_plus)) * params.j_mev();
    let spin_orbit = &(&ops.tau_z * &ops.sigma_z) * (-0.5 * params.lambda_mev);
    Ok((vib + coupling + spin_orbit).with_unit(Unit::MilliElectronVolt))
}

/// Transverse orbital perturbation γ(cos θ₀ τ_x + sin θ₀ τ_y) in meV, the
/// form taken by the E-symmetric strain coupling in the rotated frame.
pub fn build_h_strain(gamma_mev: f64, theta0: f64, basis: &VibronicBasis) -> Result<OperatorMatrix, ValidationError> {
    require_finite("gamma_mev", gamma_mev)?;
    require_finite("theta0", theta0)?;
    Ok(build_h_orbital(
        OrbitalField {
            tau_x: gamma_mev * theta0.cos(),
            tau_y: gamma_mev * theta0.sin(),
            ..Default::default()
        },
        basis,
    ))
}

/// Coefficients (meV) of a general orbital-only perturbation
/// `identity·I + tau_x·τ_x + tau_y·τ_y + tau_z·τ_z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OrbitalField {
    pub identity: f64,
    pub tau_x: f64,
    pub tau_y: f64,
    pub tau_z: f64,
}

/// Orbital-only perturbation, identity on the phonon and spin factors.
pub fn build_h_orbital(field: OrbitalField, basis: &VibronicBasis) -> OperatorMatrix {
    let c = |x: f64| C64::new(x, 0.0);
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    for (coef, p) in [
        (field.identity, pauli::ID),
        (field.tau_x, pauli::X),
        (field.tau_y, pauli::Y),
        (field.tau_z, pauli::Z),
    ] {
        for r in 0..2 {
            for k in 0..2 {
                m[r][k] += c(coef) * p[r][k];
            }
        }
    }
    basis
        .local_operator(m, pauli::ID)
        .with_unit(Unit::MilliElectronVolt)
}

/// g-factors and Bohr magneton used by the Zeeman term.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeemanConfig {
    /// Spin g-factor.
    pub g_s: f64,
    /// Orbital g-factor.
    pub g_l: f64,
    /// Bohr magneton, GHz/T.
    pub mu_b_ghz_per_tesla: f64,
}

impl Default for ZeemanConfig {
    fn default() -> Self {
        ZeemanConfig {
            g_s: 2.0,
            g_l: 1.0,
            mu_b_ghz_per_tesla: units::BOHR_MAGNETON_GHZ_PER_T,
        }
    }
}

impl ZeemanConfig {
    /// μ_B in meV/T.
    pub fn mu_b_mev_per_tesla(&self) -> f64 {
        units::bohr_magneton_mev_per_tesla(self.mu_b_ghz_per_tesla)
    }
}

/// Zeeman Hamiltonian for a field in Tesla with the default g-factors:
/// μ_B[B_x σ_x + B_y σ_y + B_z(σ_z + τ_z/2)].
pub fn build_h_zeeman(b_tesla: [f64; 3], basis: &VibronicBasis) -> Result<OperatorMatrix, ValidationError> {
    build_h_zeeman_with(b_tesla, &ZeemanConfig::default(), basis)
}

/// Zeeman Hamiltonian with explicit g-factors.
pub fn build_h_zeeman_with(
    b_tesla: [f64; 3],
    cfg: &ZeemanConfig,
    basis: &VibronicBasis,
) -> Result<OperatorMatrix, ValidationError> {
    for (k, b) in b_tesla.iter().enumerate() {
        require_finite(&format!("b_tesla[{k}]"), *b)?;
    }
    let mu = cfg.mu_b_mev_per_tesla();
    Ok(zeeman_from_energies(
        [b_tesla[0] * mu, b_tesla[1] * mu, b_tesla[2] * mu],
        cfg,
        basis,
    ))
}

/// Zeeman Hamiltonian for a field given directly as μ_B·B in meV.
pub fn build_h_zeeman_mev(mu_b_b_mev: [f64; 3], basis: &VibronicBasis) -> Result<OperatorMatrix, ValidationError> {
    for (k, b) in mu_b_b_mev.iter().enumerate() {
        require_finite(&format!("mu_b_b_mev[{k}]"), *b)?;
    }
    Ok(zeeman_from_energies(mu_b_b_mev, &ZeemanConfig::default(), basis))
}

fn zeeman_from_energies(e: [f64; 3], cfg: &ZeemanConfig, basis: &VibronicBasis) -> OperatorMatrix {
    let ops = orbital_spin_operators(basis);
    let gs = 0.5 * cfg.g_s;
    let spin = &(&(&ops.sigma_x * (gs * e[0])) + &(&ops.sigma_y * (gs * e[1])))
        + &(&ops.sigma_z * (gs * e[2]));
    let orbital = &ops.tau_z * (0.5 * cfg.g_l * e[2]);
    (spin + orbital).with_unit(Unit::MilliElectronVolt)
}

/// Antiunitary time-reversal operator T = U·K (K: complex conjugation in the
/// product basis).
///
/// U maps |n, m, o, s⟩ to |n, −m, −o, −s⟩ with the spin factor iσ_y
/// (|↑⟩ → −|↓⟩, |↓⟩ → |↑⟩), so U is real and T² = U U* = −1.
#[derive(Clone, Debug)]
pub struct TimeReversal {
    pub unitary: OperatorMatrix,
}

impl TimeReversal {
    /// Applies T to a state vector.
    pub fn apply(&self, v: &nalgebra::DVector<C64>) -> nalgebra::DVector<C64> {
        self.unitary.apply(&v.map(|z| z.conj()))
    }

    /// T A T⁻¹ = U A* U†.
    pub fn transform(&self, op: &OperatorMatrix) -> OperatorMatrix {
        &(&self.unitary * &op.conj()) * &self.unitary.adjoint()
    }

    /// Matrix of T² = U U*.
    pub fn square(&self) -> OperatorMatrix {
        &self.unitary * &self.unitary.conj()
    }
}

/// Builds the time-reversal operator for a basis.
pub fn build_time_reversal(basis: &VibronicBasis) -> TimeReversal {
    let entries = basis.states().iter().enumerate().map(|(j, s)| {
        let image = crate::basis::BasisState {
            n: s.n,
            m: -s.m,
            orbital: s.orbital.flipped(),
            spin: s.spin.flipped(),
        };
        let i = basis.index_of(&image).expect("mirror state is retained");
        let phase = match s.spin {
            crate::basis::Spin::Up => -1.0,
            crate::basis::Spin::Down => 1.0,
        };
        (i, j, C64::new(phase, 0.0))
    });
    TimeReversal {
        unitary: OperatorMatrix::from_entries(basis.dim(), Some(basis.n_cut()), Unit::Dimensionless, entries),
    }
}

/// Joint reflection F^vos = F^v_θ F^o_θ F^s_φ.
///
/// * F^v_θ: |n, m⟩ → e^{2imθ}|n, −m⟩ (reflection of the phonon plane about the
///   axis at angle θ),
/// * F^o_θ = i(cos θ τ_x + sin θ τ_y) (the same reflection on the orbital
///   pseudo-spin in the rotated frame),
/// * F^s_φ = cos φ σ_x + sin φ σ_y (π spin rotation about an in-plane axis).
pub fn build_joint_reflection(theta: f64, phi: f64, basis: &VibronicBasis) -> Result<OperatorMatrix, ValidationError> {
    require_finite("theta", theta)?;
    require_finite("phi", phi)?;
    let i = C64::new(0.0, 1.0);
    let c = |x: f64| C64::new(x, 0.0);
    let orbital = [
        [c(0.0), i * C64::from_polar(1.0, theta)],
        [i * C64::from_polar(1.0, -theta), c(0.0)],
    ];
    let spin = [
        [c(0.0), C64::from_polar(1.0, phi)],
        [C64::from_polar(1.0, -phi), c(0.0)],
    ];
    let local = basis.local_operator(orbital, spin);
    let phonon_entries = basis.states().iter().enumerate().map(|(j, s)| {
        let image = crate::basis::BasisState { m: -s.m, ..*s };
        let k = basis.index_of(&image).expect("mirror state is retained");
        (k, j, C64::from_polar(1.0, 2.0 * s.m as f64 * theta))
    });
    let phonon = OperatorMatrix::from_entries(basis.dim(), Some(basis.n_cut()), Unit::Dimensionless, phonon_entries);
    Ok(&phonon * &local)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Manifold, Species};

    #[test]
    fn bare_oscillator_is_diagonal() {
        let b = VibronicBasis::new(3);
        let p = ManifoldParams::from_e_jt(50.0, 0.0, 0.0).unwrap();
        let h = build_h0(&p, &b).unwrap();
        for (i, j, v) in h.entries() {
            assert_eq!(i, j);
            assert_eq!(v.re, 50.0 * (b.state(i).n as f64 + 1.0));
        }
    }

    #[test]
    fn h0_is_real_and_hermitian() {
        let b = VibronicBasis::new(8);
        let h = build_h0(&ManifoldParams::bundled(Species::SnV, Manifold::Excited), &b).unwrap();
        assert!(h.is_real());
        assert_eq!(h.hermiticity_defect(), 0.0);
    }

    #[test]
    fn zeeman_spin_part_along_z() {
        let b = VibronicBasis::new(0);
        let h = build_h_zeeman([0.0, 0.0, 1.0], &b).unwrap();
        let mu = ZeemanConfig::default().mu_b_mev_per_tesla();
        // Orbital −, spin ↑: μ_B(1 − 1/2).
        let s = crate::basis::BasisState {
            n: 0,
            m: 0,
            orbital: crate::basis::Orbital::Minus,
            spin: crate::basis::Spin::Up,
        };
        let i = b.index_of(&s).unwrap();
        assert!((h.get(i, i).re - 0.5 * mu).abs() < 1e-15);
    }

    #[test]
    fn time_reversal_squares_to_minus_one() {
        let b = VibronicBasis::new(4);
        let t = build_time_reversal(&b);
        let sq = t.square();
        assert_eq!((&sq + &b.identity()).nnz(), 0);
    }

    #[test]
    fn rejects_non_finite_fields() {
        let b = VibronicBasis::new(0);
        assert!(build_h_zeeman([f64::NAN, 0.0, 0.0], &b).is_err());
        assert!(build_h_strain(f64::INFINITY, 0.0, &b).is_err());
    }
}
