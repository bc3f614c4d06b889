//! Quench (Ham) reduction factors and the effective four-level model.
//!
//! Inside the vibronic ground doublet, orbital operators are reduced:
//! τ_z → p τ_z and τ_x,y → q τ_x,y. The original factors (p, q) are taken
//! from the λ = 0 ground doublet; the refined factors (p′, q′) from the two
//! lowest spin-up states of the full H₀ including spin–orbit coupling.

use serde::{Deserialize, Serialize};

use crate::basis::{orbital_spin_operators, pauli, VibronicBasis};
use crate::error::{require_finite, Error, NumericalError, ValidationError};
use crate::hamiltonian::{build_h0, build_h_orbital, OrbitalField};
use crate::operator::{OperatorMatrix, Unit};
use crate::params::ManifoldParams;
use crate::solver::{diagonalize, EigenSolution};
use crate::C64;

/// Default cut-off for quench computations.
pub const QUENCH_N_CUT: usize = 24;

/// Default probe strength (meV) for [`precision_eval`].
pub const DEFAULT_PROBE_MEV: f64 = 1.0;

/// Original and refined quench factors of one manifold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuenchFactors {
    pub p: f64,
    pub q: f64,
    pub p_prime: f64,
    pub q_prime: f64,
    /// Ground splitting of H₀ (meV).
    pub delta0_mev: f64,
    /// Gap between the third and second Kramers doublets of H₀ (meV); the
    /// scale below which the four-level model is valid.
    pub delta54_mev: f64,
}

/// Indices of the two lowest spin-up eigenstates.
fn lowest_spin_up(sol: &EigenSolution) -> Result<(usize, usize), NumericalError> {
    let up = sol.spin_sector(1.0);
    match up.as_slice() {
        [a, b, ..] => Ok((*a, *b)),
        _ => Err(NumericalError::Other(
            "fewer than two spin-up eigenstates (basis too small)".into(),
        )),
    }
}

/// Original factors (p, q) from the ground doublet of H₀ with λ = 0.
///
/// The doublet is resolved into L_z^vo = ±1/2 eigenstates |1⟩, |2⟩;
/// p = |⟨1|τ_z|1⟩| and q = |⟨1|τ_x|2⟩|.
pub fn original_factors(hbar_omega_mev: f64, e_jt_mev: f64, n_cut: usize) -> Result<(f64, f64), Error> {
    let params = ManifoldParams::from_e_jt(hbar_omega_mev, e_jt_mev, 0.0)?;
    let basis = VibronicBasis::new(n_cut);
    let sol = diagonalize(&build_h0(&params, &basis)?)?;
    let ops = orbital_spin_operators(&basis);
    let (a, b) = lowest_spin_up(&sol)?;
    let (va, vb) = (sol.vector(a), sol.vector(b));
    let p = ops.tau_z.expectation(&va).re.abs();
    let q = ops.tau_x.element(&va, &vb).norm();
    Ok((p, q))
}

/// Refined factors and the splittings Δ₀, Δ₅₄ of the full H₀.
///
/// With |1′⟩, |2′⟩ the two lowest spin-up states,
/// p′ = ½|⟨2′|τ_z|2′⟩ − ⟨1′|τ_z|1′⟩| and q′ = |⟨1′|τ_x|2′⟩| (the phase of
/// |2′⟩ is chosen so that the element is real and non-negative).
pub fn refined_factors(params: &ManifoldParams, n_cut: usize) -> Result<QuenchFactors, Error> {
    let basis = VibronicBasis::new(n_cut);
    let sol = diagonalize(&build_h0(params, &basis)?)?;
    let ops = orbital_spin_operators(&basis);
    let (a, b) = lowest_spin_up(&sol)?;
    let (va, vb) = (sol.vector(a), sol.vector(b));
    let p_prime = 0.5 * (ops.tau_z.expectation(&vb).re - ops.tau_z.expectation(&va).re).abs();
    let q_prime = ops.tau_x.element(&va, &vb).norm();
    let e = sol.energies();
    let up = sol.spin_sector(1.0);
    let delta54_mev = if up.len() >= 3 { e[up[2]] - e[up[1]] } else { f64::NAN };
    let (p, q) = original_factors(params.hbar_omega_mev, params.e_jt_mev(), n_cut)?;
    Ok(QuenchFactors {
        p,
        q,
        p_prime,
        q_prime,
        delta0_mev: e[2] - e[0],
        delta54_mev,
    })
}

/// Relative errors of the quench-factor predictions for the ground splitting
/// under small orbital perturbations γ_z τ_z and γ_x τ_x.
///
/// `None` marks an undefined ratio (zero denominator).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuenchPrecision {
    pub eps_z: Option<f64>,
    pub eps_x: Option<f64>,
    pub eps_z_prime: Option<f64>,
    pub eps_x_prime: Option<f64>,
    /// Exact E₂ − E₁ of H₀ + γ_z τ_z (meV).
    pub numerical_z_mev: f64,
    /// Exact E₃ − E₁ of H₀ + γ_x τ_x (meV).
    pub numerical_x_mev: f64,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0 && den.is_finite()).then(|| num / den)
}

/// Compares the quench-factor predictions with full diagonalization.
///
/// * τ_z channel: predicted splitting min(Δ₀, 2pγ_z) against the exact
///   E₂ − E₁; ε_z = (predicted − exact)/exact.
/// * τ_x channel: predicted √(Δ₀² + 4q²γ_x²) against the exact E₃ − E₁;
///   ε_x = (predicted − exact)/(exact − Δ₀), i.e. relative to the
///   perturbation-induced shift.
pub fn precision_eval(
    params: &ManifoldParams,
    factors: &QuenchFactors,
    gamma_z_mev: f64,
    gamma_x_mev: f64,
    n_cut: usize,
) -> Result<QuenchPrecision, Error> {
    require_finite("gamma_z_mev", gamma_z_mev)?;
    require_finite("gamma_x_mev", gamma_x_mev)?;
    let basis = VibronicBasis::new(n_cut);
    let h0 = build_h0(params, &basis)?;
    let hz = &h0
        + &build_h_orbital(
            OrbitalField {
                tau_z: gamma_z_mev,
                ..Default::default()
            },
            &basis,
        );
    let hx = &h0
        + &build_h_orbital(
            OrbitalField {
                tau_x: gamma_x_mev,
                ..Default::default()
            },
            &basis,
        );
    let ez = diagonalize(&hz)?;
    let ex = diagonalize(&hx)?;
    let num_z = ez.energies()[1] - ez.energies()[0];
    let num_x = ex.energies()[2] - ex.energies()[0];
    let d0 = factors.delta0_mev;
    let eps_z = |p: f64| ratio(d0.min(2.0 * p * gamma_z_mev) - num_z, num_z);
    let eps_x = |q: f64| ratio((d0 * d0 + 4.0 * q * q * gamma_x_mev * gamma_x_mev).sqrt() - num_x, num_x - d0);
    Ok(QuenchPrecision {
        eps_z: eps_z(factors.p),
        eps_x: eps_x(factors.q),
        eps_z_prime: eps_z(factors.p_prime),
        eps_x_prime: eps_x(factors.q_prime),
        numerical_z_mev: num_z,
        numerical_x_mev: num_x,
    })
}

/// Full quench report row for one manifold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuenchReport {
    pub label: String,
    pub factors: QuenchFactors,
    pub precision: QuenchPrecision,
}

/// Factors and precisions with the default probe strength and cut-off.
pub fn quench_report(params: &ManifoldParams) -> Result<QuenchReport, Error> {
    let factors = refined_factors(params, QUENCH_N_CUT)?;
    let precision = precision_eval(params, &factors, DEFAULT_PROBE_MEV, DEFAULT_PROBE_MEV, QUENCH_N_CUT)?;
    Ok(QuenchReport {
        label: params.label(),
        factors,
        precision,
    })
}

/// Four-level effective Hamiltonian with an optional validity warning.
#[derive(Clone, Debug)]
pub struct EffectiveHamiltonian {
    /// 4×4 matrix over {1′, 2′} ⊗ {↓, ↑}, index 2·orbital + spin, with the
    /// orbital index 0 for the state with τ_z = −1.
    pub matrix: OperatorMatrix,
    /// Set when the perturbation is not small compared with Δ₅₄.
    pub warning: Option<String>,
}

/// Fraction of Δ₅₄ above which the four-level model is flagged.
pub const EFFECTIVE_MODEL_VALIDITY: f64 = 0.1;

/// H ≈ −(Δ₀/2) τ_z σ_z + p′γ_z τ_z + q′(γ_x τ_x + γ_y τ_y) + identity term,
/// with the orbital perturbation given by `field` (meV).
pub fn effective_hamiltonian(factors: &QuenchFactors, field: OrbitalField) -> Result<EffectiveHamiltonian, ValidationError> {
    for (name, v) in [
        ("identity", field.identity),
        ("tau_x", field.tau_x),
        ("tau_y", field.tau_y),
        ("tau_z", field.tau_z),
    ] {
        require_finite(name, v)?;
    }
    let kron = |a: [[C64; 2]; 2], b: [[C64; 2]; 2]| {
        nalgebra::DMatrix::from_fn(4, 4, |r, c| a[r / 2][c / 2] * b[r % 2][c % 2])
    };
    let c = |x: f64| C64::new(x, 0.0);
    let m = kron(pauli::Z, pauli::Z) * c(-0.5 * factors.delta0_mev)
        + kron(pauli::ID, pauli::ID) * c(field.identity)
        + kron(pauli::Z, pauli::ID) * c(factors.p_prime * field.tau_z)
        + kron(pauli::X, pauli::ID) * c(factors.q_prime * field.tau_x)
        + kron(pauli::Y, pauli::ID) * c(factors.q_prime * field.tau_y);
    let strength = (field.tau_x.powi(2) + field.tau_y.powi(2) + field.tau_z.powi(2)).sqrt();
    let warning = (strength > EFFECTIVE_MODEL_VALIDITY * factors.delta54_mev).then(|| {
        format!(
            "perturbation {strength:.3} meV is not small compared with Δ₅₄ = {:.3} meV; the four-level model may be inaccurate",
            factors.delta54_mev
        )
    });
    Ok(EffectiveHamiltonian {
        matrix: OperatorMatrix::from_dense(&m, None, Unit::MilliElectronVolt),
        warning,
    })
}
