//! Bottom-up estimates from bond physics: Morse stiffnesses, local phonon
//! energies and amplitudes, bond-force coupling constants, atomic
//! spin–orbit strengths, and the inverse problem of extracting partition
//! (α) and screening (β) factors from reference Hamiltonian parameters.

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, ValidationError};
use crate::params::{carbon_bond, BondData, ManifoldParams, Species};
use crate::units;

/// Harmonic stiffness k = 2E₀α² (eV/Å²) of a Morse potential with depth E₀
/// (kJ/mol) and range parameter α (1/Å).
pub fn morse_stiffness(e0_kj_per_mol: f64, alpha_per_ang: f64) -> Result<f64, ValidationError> {
    for (n, v) in [("e0_kj_per_mol", e0_kj_per_mol), ("alpha_per_ang", alpha_per_ang)] {
        require_finite(n, v)?;
        if v < 0.0 {
            return Err(ValidationError::new(n, "must be ≥ 0"));
        }
    }
    Ok(2.0 * units::kj_per_mol_to_ev(e0_kj_per_mol) * alpha_per_ang * alpha_per_ang)
}

/// Empirical range parameter of an X–C bond scaled from the C–C bond:
/// α_X = (E0_X·d0_C)/(E0_C·d0_X)·α_C.
pub fn estimate_alpha(bond: &BondData, reference: &BondData) -> f64 {
    bond.e0_kj_per_mol * reference.d0_ang / (reference.e0_kj_per_mol * bond.d0_ang) * reference.alpha_per_ang
}

/// Local phonon energies (meV) and zero-point displacements √(ħ/2μω) (Å).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhononEstimates {
    pub hbar_omega_x_mev: f64,
    pub hbar_omega_c_xy_mev: f64,
    pub hbar_omega_c_z_mev: f64,
    pub delta_d_x_ang: f64,
    pub delta_d_c_xy_ang: f64,
    pub delta_d_c_z_ang: f64,
    /// Stiffnesses K (eV/Å²) in the same order.
    pub stiffness_ev_per_ang2: [f64; 3],
}

impl PhononEstimates {
    /// Largest ΔD·α over the three modes (harmonic validity needs ≪ 1).
    pub fn anharmonicity(&self, alpha_x: f64, alpha_c: f64) -> f64 {
        [
            self.delta_d_x_ang * alpha_x,
            self.delta_d_c_xy_ang * alpha_c,
            self.delta_d_c_z_ang * alpha_c.max(alpha_x),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Local phonon modes of the split-vacancy cluster:
/// K_X = 2k_X (X mass), K_C,xy = 2k_C and K_C,z = k_C + k_X (carbon mass).
pub fn phonon_energies(species: Species) -> PhononEstimates {
    let data = species.data();
    let c = carbon_bond();
    let k_x = morse_stiffness(data.bond.e0_kj_per_mol, data.bond.alpha_per_ang).expect("bundled bond data");
    let k_c = morse_stiffness(c.e0_kj_per_mol, c.alpha_per_ang).expect("bundled bond data");
    let stiffness = [2.0 * k_x, 2.0 * k_c, k_c + k_x];
    let masses = [data.mass_da, units::CARBON_MASS_DA, units::CARBON_MASS_DA];
    let hw: Vec<f64> = stiffness
        .iter()
        .zip(masses)
        .map(|(&k, m)| units::phonon_energy_mev(k, m))
        .collect();
    let dd: Vec<f64> = hw
        .iter()
        .zip(masses)
        .map(|(&w, m)| units::oscillator_length_ang(w, m))
        .collect();
    PhononEstimates {
        hbar_omega_x_mev: hw[0],
        hbar_omega_c_xy_mev: hw[1],
        hbar_omega_c_z_mev: hw[2],
        delta_d_x_ang: dd[0],
        delta_d_c_xy_ang: dd[1],
        delta_d_c_z_ang: dd[2],
        stiffness_ev_per_ang2: stiffness,
    }
}

/// Bond-force coupling constants (F₀, F) in eV/Å for a partition factor
/// α ∈ [0, 1]: F = F_coef·α with the per-species coefficient, F₀ = √2·F.
pub fn coupling_estimates(species: Species, partition_alpha: f64) -> Result<(f64, f64), ValidationError> {
    if !(partition_alpha.is_finite() && (0.0..=1.0).contains(&partition_alpha)) {
        return Err(ValidationError::new("partition_alpha", "must lie in [0, 1]"));
    }
    let f = species.data().force_per_partition_ev_per_ang * partition_alpha;
    Ok((2f64.sqrt() * f, f))
}

/// Unscreened atomic spin–orbit strength (μ₀μ_B²/(40π a_B³))·Z⁴/n³ in meV.
pub fn spin_orbit_prefactor(species: Species) -> f64 {
    let d = species.data();
    let joule = units::VACUUM_PERMEABILITY * units::BOHR_MAGNETON_J_PER_T.powi(2)
        / (40.0 * std::f64::consts::PI * units::BOHR_RADIUS_M.powi(3));
    let z4 = (d.atomic_number as f64).powi(4);
    let n3 = (d.valence_shell as f64).powi(3);
    joule / units::ELEMENTARY_CHARGE_C * 1e3 * z4 / n3
}

/// Screened spin–orbit strength λ = β·prefactor (meV), β ∈ [0, 1].
pub fn spin_orbit_strength(species: Species, screening_beta: f64) -> Result<f64, ValidationError> {
    if !(screening_beta.is_finite() && (0.0..=1.0).contains(&screening_beta)) {
        return Err(ValidationError::new("screening_beta", "must lie in [0, 1]"));
    }
    Ok(screening_beta * spin_orbit_prefactor(species))
}

/// Partition and screening factors implied by one parameter set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractedFactors {
    pub label: String,
    /// α with the oscillator mass taken as the carbon mass (the mass used by
    /// the vibronic Hamiltonian).
    pub alpha: f64,
    /// α with the oscillator mass taken as the X-atom mass, for comparison.
    pub alpha_x_mass: f64,
    pub beta: f64,
    /// Which mass convention `alpha` uses.
    pub mass_convention: String,
}

/// Inverts F(α) and λ(β) for each parameter set: F = √(2μω²E_JT) = J/√(ħ/2μω),
/// α = F/F_coef and β = λ/λ(β = 1).
pub fn extract_factors(params: &[ManifoldParams]) -> Result<Vec<ExtractedFactors>, ValidationError> {
    params
        .iter()
        .map(|p| {
            let species = p
                .species
                .ok_or_else(|| ValidationError::new("species", "parameter set has no species tag"))?;
            let data = species.data();
            let coef = data.force_per_partition_ev_per_ang;
            Ok(ExtractedFactors {
                label: p.label(),
                alpha: p.force_ev_per_ang(units::CARBON_MASS_DA) / coef,
                alpha_x_mass: p.force_ev_per_ang(data.mass_da) / coef,
                beta: p.lambda_mev / spin_orbit_prefactor(species),
                mass_convention: "carbon".into(),
            })
        })
        .collect()
}
