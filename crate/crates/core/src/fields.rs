//! Magnetic-field analyses: level diagrams, spin orientation, optical
//! addressability, and the intrinsic-strain probe.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{orbital_spin_operators, pauli, VibronicBasis};
use crate::error::{require_finite, Error, ValidationError};
use crate::hamiltonian::{build_h0, build_h_zeeman_mev, ZeemanConfig};
use crate::operator::{OperatorMatrix, Unit};
use crate::params::ManifoldParams;
use crate::solver::diagonalize;
use crate::{units, C64};

/// Direction of an applied magnetic field in the color-center frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldAxis {
    X,
    Y,
    Z,
}

impl FieldAxis {
    fn vector(self, magnitude: f64) -> [f64; 3] {
        match self {
            FieldAxis::X => [magnitude, 0.0, 0.0],
            FieldAxis::Y => [0.0, magnitude, 0.0],
            FieldAxis::Z => [0.0, 0.0, magnitude],
        }
    }
}

/// Spectrum at one field value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelPoint {
    pub b_tesla: f64,
    /// Lowest eigenvalues of H₀ + H_B (meV).
    pub energies_mev: Vec<f64>,
}

/// Lowest `n_levels` eigenvalues of H₀ + H_B along a field axis for each
/// value of `b_grid_tesla` (computed in parallel).
pub fn levels_vs_b(
    params: &ManifoldParams,
    axis: FieldAxis,
    b_grid_tesla: &[f64],
    n_cut: usize,
    n_levels: usize,
) -> Result<Vec<LevelPoint>, Error> {
    let basis = VibronicBasis::new(n_cut);
    let h0 = build_h0(params, &basis)?;
    let mu = ZeemanConfig::default().mu_b_mev_per_tesla();
    b_grid_tesla
        .par_iter()
        .map(|&b| {
            require_finite("b_tesla", b)?;
            let h = &h0 + &build_h_zeeman_mev(axis.vector(b * mu), &basis)?;
            let sol = diagonalize(&h)?;
            Ok(LevelPoint {
                b_tesla: b,
                energies_mev: sol.energies().iter().take(n_levels).copied().collect(),
            })
        })
        .collect()
}

/// Spin orientation angle θ = arccos⟨G↓|σ_z|G↓⟩ (radians, in [0, π]) of
/// the lower-spin member of the ground doublet for a transverse field
/// given as μ_B·B_x in meV. At zero field this is π.
pub fn spin_orientation_mev(params: &ManifoldParams, mu_b_bx_mev: f64, n_cut: usize) -> Result<f64, Error> {
    require_finite("mu_b_bx_mev", mu_b_bx_mev)?;
    if mu_b_bx_mev < 0.0 {
        return Err(ValidationError::new("mu_b_bx_mev", "must be ≥ 0").into());
    }
    let basis = VibronicBasis::new(n_cut);
    let h = &build_h0(params, &basis)? + &build_h_zeeman_mev([mu_b_bx_mev, 0.0, 0.0], &basis)?;
    let sol = diagonalize(&h)?;
    let sz = orbital_spin_operators(&basis).sigma_z;
    let s = (0..2)
        .map(|k| sol.expectation(&sz, k).re)
        .fold(f64::INFINITY, f64::min);
    Ok(s.clamp(-1.0, 1.0).acos())
}

/// [`spin_orientation_mev`] for a field in Tesla.
pub fn spin_orientation(params: &ManifoldParams, bx_tesla: f64, n_cut: usize) -> Result<f64, Error> {
    require_finite("bx_tesla", bx_tesla)?;
    spin_orientation_mev(params, bx_tesla * ZeemanConfig::default().mu_b_mev_per_tesla(), n_cut)
}

/// One point of a spin-orientation scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrientationPoint {
    pub mu_b_bx_mev: f64,
    pub theta_ground: f64,
    pub theta_excited: f64,
}

impl OrientationPoint {
    pub fn difference(&self) -> f64 {
        self.theta_excited - self.theta_ground
    }
}

/// Spin orientation of both manifolds over a grid of μ_B·B_x (meV).
pub fn spin_orientation_scan(
    ground: &ManifoldParams,
    excited: &ManifoldParams,
    grid_mev: &[f64],
    n_cut: usize,
) -> Result<Vec<OrientationPoint>, Error> {
    grid_mev
        .par_iter()
        .map(|&b| {
            Ok(OrientationPoint {
                mu_b_bx_mev: b,
                theta_ground: spin_orientation_mev(ground, b, n_cut)?,
                theta_excited: spin_orientation_mev(excited, b, n_cut)?,
            })
        })
        .collect()
}

/// Ground (Δ₁₂) and excited (Δ_AB) spin splittings under a field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Addressability {
    pub delta_12_ghz: f64,
    pub delta_ab_ghz: f64,
}

impl Addressability {
    /// Δ_AB − Δ₁₂: nonzero means the two spin-conserving optical lines are
    /// spectrally distinct.
    pub fn difference_ghz(&self) -> f64 {
        self.delta_ab_ghz - self.delta_12_ghz
    }
}

/// Lowest-doublet splittings of both manifolds in a field (Tesla).
pub fn addressability(
    ground: &ManifoldParams,
    excited: &ManifoldParams,
    b_tesla: [f64; 3],
    n_cut: usize,
) -> Result<Addressability, Error> {
    let basis = VibronicBasis::new(n_cut);
    let mu = ZeemanConfig::default().mu_b_mev_per_tesla();
    let hb = build_h_zeeman_mev(b_tesla.map(|b| b * mu), &basis)?;
    let split = |p: &ManifoldParams| -> Result<f64, Error> {
        let sol = diagonalize(&(&build_h0(p, &basis)? + &hb))?;
        Ok(units::mev_to_ghz(sol.energies()[1] - sol.energies()[0]))
    };
    Ok(Addressability {
        delta_12_ghz: split(ground)?,
        delta_ab_ghz: split(excited)?,
    })
}

/// Four-level model of the ground doublet under transverse strain and a
/// transverse field: H = (Δ₀/2)τ_zσ_z + μ_B B_y σ_y + γτ_x (meV).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeModel {
    pub delta0_mev: f64,
    /// Quenched transverse strain coupling.
    pub gamma_mev: f64,
    /// μ_B·B_y.
    pub mu_b_by_mev: f64,
}

impl ProbeModel {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if !(self.delta0_mev.is_finite() && self.delta0_mev > 0.0) {
            return Err(ValidationError::new("delta0_mev", "must be finite and > 0"));
        }
        require_finite("gamma_mev", self.gamma_mev)?;
        require_finite("mu_b_by_mev", self.mu_b_by_mev)?;
        Ok(())
    }

    /// Explicit 4×4 matrix over {τ−, τ+} ⊗ {↓, ↑}.
    pub fn hamiltonian(&self) -> OperatorMatrix {
        let kron = |a: [[C64; 2]; 2], b: [[C64; 2]; 2]| DMatrix::from_fn(4, 4, |r, c| a[r / 2][c / 2] * b[r % 2][c % 2]);
        let c = |x: f64| C64::new(x, 0.0);
        let m = kron(pauli::Z, pauli::Z) * c(0.5 * self.delta0_mev)
            + kron(pauli::ID, pauli::Y) * c(self.mu_b_by_mev)
            + kron(pauli::X, pauli::ID) * c(self.gamma_mev);
        OperatorMatrix::from_dense(&m, None, Unit::MilliElectronVolt)
    }
}

/// Closed-form spectrum of the probe model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    /// Ascending eigenvalues ±√((Δ₀/2)² + (b ± γ)²).
    pub eigenvalues_mev: [f64; 4],
    /// Zero-field strain splitting √(Δ₀² + 4γ²).
    pub delta_s_mev: f64,
    /// Splitting of the upper doublet, √((Δ₀/2)²+(b+γ)²) − √((Δ₀/2)²+(b−γ)²).
    pub delta_sm_mev: f64,
}

/// Δ_SM(γ) for fixed Δ₀ and b = μ_B·B_y.
pub fn delta_sm(delta0_mev: f64, gamma_mev: f64, mu_b_by_mev: f64) -> f64 {
    let h = 0.5 * delta0_mev;
    (h * h + (mu_b_by_mev + gamma_mev).powi(2)).sqrt() - (h * h + (mu_b_by_mev - gamma_mev).powi(2)).sqrt()
}

/// Evaluates the probe model in closed form.
pub fn probe_splitting(model: &ProbeModel) -> Result<ProbeResult, ValidationError> {
    model.validate()?;
    let h = 0.5 * model.delta0_mev;
    let a = (h * h + (model.mu_b_by_mev + model.gamma_mev).powi(2)).sqrt();
    let b = (h * h + (model.mu_b_by_mev - model.gamma_mev).powi(2)).sqrt();
    let mut e = [-a, -b, b, a];
    e.sort_by(f64::total_cmp);
    Ok(ProbeResult {
        eigenvalues_mev: e,
        delta_s_mev: (model.delta0_mev.powi(2) + 4.0 * model.gamma_mev.powi(2)).sqrt(),
        delta_sm_mev: a - b,
    })
}

/// Recovers the intrinsic strain coupling γ₀ ≥ 0 from a measured Δ_SM by
/// bisection on the exact (strictly increasing) Δ_SM(γ). Valid inputs lie
/// in [0, 2b) for b = μ_B·B_y > 0.
pub fn invert_intrinsic_strain(delta_sm_mev: f64, delta0_mev: f64, mu_b_by_mev: f64) -> Result<f64, ValidationError> {
    require_finite("delta_sm_mev", delta_sm_mev)?;
    if !(delta0_mev.is_finite() && delta0_mev > 0.0) {
        return Err(ValidationError::new("delta0_mev", "must be finite and > 0"));
    }
    require_finite("mu_b_by_mev", mu_b_by_mev)?;
    let b = mu_b_by_mev.abs();
    if delta_sm_mev == 0.0 {
        return Ok(0.0);
    }
    if delta_sm_mev < 0.0 || delta_sm_mev >= 2.0 * b {
        return Err(ValidationError::new(
            "delta_sm_mev",
            format!("must lie in [0, 2μ_B·B_y) = [0, {:.6e}) meV", 2.0 * b),
        ));
    }
    let f = |g: f64| delta_sm(delta0_mev, g, b);
    let mut hi = delta0_mev.max(b).max(1e-12);
    while f(hi) < delta_sm_mev {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(ValidationError::new("delta_sm_mev", "too close to the 2μ_B·B_y limit to invert"));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < delta_sm_mev {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_zero_strain_keeps_degeneracy() {
        let r = probe_splitting(&ProbeModel {
            delta0_mev: 0.2,
            gamma_mev: 0.0,
            mu_b_by_mev: 0.05,
        })
        .unwrap();
        assert_eq!(r.delta_sm_mev, 0.0);
    }

    #[test]
    fn inversion_range() {
        assert_eq!(invert_intrinsic_strain(0.0, 0.2, 0.05).unwrap(), 0.0);
        assert!(invert_intrinsic_strain(0.1, 0.2, 0.05).is_err());
        assert!(invert_intrinsic_strain(0.01, 0.2, 0.0).is_err());
    }

    #[test]
    fn zero_field_orientation_is_spin_down() {
        let p = ManifoldParams::from_e_jt(80.0, 20.0, 8.0).unwrap();
        let t = spin_orientation_mev(&p, 0.0, 6).unwrap();
        assert!((t - std::f64::consts::PI).abs() < 1e-6, "{t}");
    }
}
