//! Request/response pipelines shared by the command-line tool and the HTTP
//! service, so that both front ends produce identical numbers.

use serde::{Deserialize, Serialize};

use crate::error::{require_finite, Error, ValidationError};
use crate::optics::{pl_ple_spectrum, OpticalSystem, SpectrumLine, SpectrumMode};
use crate::params::{Manifold, ManifoldParams, Species};
use crate::solver::{convergence_study, ConvergenceRow};
use crate::units;

/// Largest cut-off accepted by the pipelines.
pub const MAX_N_CUT: usize = 60;

/// Extra oscillator levels used for the convergence estimate reported with
/// every spectrum.
pub const CONVERGENCE_MARGIN: usize = 8;

fn default_temperature() -> f64 {
    4.0
}

fn default_n_cut() -> usize {
    20
}

fn default_lines() -> usize {
    4
}

/// Inputs of the optical-spectrum pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumRequest {
    pub species: Species,
    #[serde(default = "default_temperature")]
    pub temperature_k: f64,
    /// Magnetic field along the symmetry axis.
    #[serde(default)]
    pub b_z_tesla: f64,
    #[serde(default = "default_n_cut")]
    pub n_cut: usize,
    /// Number of spin-up ground levels (final states in PL).
    #[serde(default = "default_lines")]
    pub n_ground: usize,
    /// Number of spin-up excited levels (initial states in PL).
    #[serde(default = "default_lines")]
    pub n_excited: usize,
    /// Zero-phonon-line wavelength; the species value when absent.
    #[serde(default)]
    pub zpl_nm: Option<f64>,
    /// Custom parameters replacing the bundled ones.
    #[serde(default)]
    pub ground: Option<ManifoldParams>,
    #[serde(default)]
    pub excited: Option<ManifoldParams>,
}

impl SpectrumRequest {
    pub fn new(species: Species) -> Self {
        SpectrumRequest {
            species,
            temperature_k: default_temperature(),
            b_z_tesla: 0.0,
            n_cut: default_n_cut(),
            n_ground: default_lines(),
            n_excited: default_lines(),
            zpl_nm: None,
            ground: None,
            excited: None,
        }
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        if !(self.temperature_k.is_finite() && self.temperature_k >= 0.0) {
            return Err(ValidationError::new("temperature_k", "must be finite and ≥ 0"));
        }
        require_finite("b_z_tesla", self.b_z_tesla)?;
        if self.n_cut < 2 {
            return Err(ValidationError::new(
                "n_cut",
                "must be ≥ 2: smaller bases cannot hold the excited vibronic states",
            ));
        }
        if self.n_cut > MAX_N_CUT {
            return Err(ValidationError::new("n_cut", format!("must be ≤ {MAX_N_CUT}")));
        }
        let available = crate::basis::VibronicBasis::new(self.n_cut).dim() / 2;
        for (name, n) in [("n_ground", self.n_ground), ("n_excited", self.n_excited)] {
            if n == 0 || n > available {
                return Err(ValidationError::new(name, format!("must lie in 1..={available} for n_cut = {}", self.n_cut)));
            }
        }
        if let Some(z) = self.zpl_nm {
            if !(z.is_finite() && z > 0.0) {
                return Err(ValidationError::new("zpl_nm", "must be finite and > 0"));
            }
        }
        for p in [&self.ground, &self.excited].into_iter().flatten() {
            p.validate()?;
        }
        Ok(())
    }

    /// Parameters of one manifold (custom or bundled).
    pub fn params(&self, manifold: Manifold) -> ManifoldParams {
        let custom = match manifold {
            Manifold::Ground => &self.ground,
            Manifold::Excited => &self.excited,
        };
        custom.clone().unwrap_or_else(|| ManifoldParams::bundled(self.species, manifold))
    }

    /// The part of the request that determines the diagonalizations; equal
    /// keys give identical [`PreparedSystem`]s.
    pub fn system_key(&self) -> SystemKey {
        SystemKey {
            ground: self.params(Manifold::Ground),
            excited: self.params(Manifold::Excited),
            n_cut: self.n_cut,
            b_z_tesla: self.b_z_tesla,
        }
    }
}

/// Everything the eigen-decompositions depend on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemKey {
    pub ground: ManifoldParams,
    pub excited: ManifoldParams,
    pub n_cut: usize,
    pub b_z_tesla: f64,
}

/// Solved manifolds plus a convergence estimate of their spectra.
#[derive(Clone, Debug)]
pub struct PreparedSystem {
    pub system: OpticalSystem,
    /// Largest relative error of the lowest levels of either manifold
    /// against a basis [`CONVERGENCE_MARGIN`] levels larger (zero field).
    pub convergence_eps_energy: f64,
}

/// Diagonalizes both manifolds for a key.
pub fn prepare(key: &SystemKey) -> Result<PreparedSystem, Error> {
    let system = OpticalSystem::solve_in_field(&key.ground, &key.excited, key.n_cut, key.b_z_tesla)?;
    let eps = |p: &ManifoldParams| -> Result<f64, Error> {
        Ok(convergence_study(p, &[key.n_cut], key.n_cut + CONVERGENCE_MARGIN)?[0].eps_energy)
    };
    let (a, b) = rayon::join(|| eps(&key.ground), || eps(&key.excited));
    Ok(PreparedSystem {
        system,
        convergence_eps_energy: a?.max(b?),
    })
}

/// Optical spectrum with its level tables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResponse {
    pub species: Species,
    pub n_cut: usize,
    pub temperature_k: f64,
    pub b_z_tesla: f64,
    /// Frequency of the lowest excited → lowest ground line.
    pub zpl_thz: f64,
    /// Spin-up ladder energies relative to its lowest member (meV).
    pub ground_levels_mev: Vec<f64>,
    pub excited_levels_mev: Vec<f64>,
    pub pl: Vec<SpectrumLine>,
    pub ple: Vec<SpectrumLine>,
    pub convergence_eps_energy: f64,
}

/// Spectrum from already prepared manifolds (which must match
/// `req.system_key()`).
pub fn spectrum_from(req: &SpectrumRequest, prepared: &PreparedSystem) -> Result<SpectrumResponse, Error> {
    req.validate()?;
    let n_states = req.n_ground.max(req.n_excited);
    let dipoles = prepared.system.dipoles(Some(n_states))?;
    let zpl_thz = units::nm_to_thz(req.zpl_nm.unwrap_or(req.species.data().zpl_nm));
    let relative = |e: &[f64], n: usize| -> Vec<f64> { e[..n].iter().map(|x| x - e[0]).collect() };
    let pl = pl_ple_spectrum(&dipoles, req.temperature_k, SpectrumMode::Pl, zpl_thz, req.n_ground, req.n_excited)?;
    let ple = pl_ple_spectrum(&dipoles, req.temperature_k, SpectrumMode::Ple, zpl_thz, req.n_ground, req.n_excited)?;
    Ok(SpectrumResponse {
        species: req.species,
        n_cut: req.n_cut,
        temperature_k: req.temperature_k,
        b_z_tesla: req.b_z_tesla,
        zpl_thz,
        ground_levels_mev: relative(&dipoles.ground_energies_mev, req.n_ground),
        excited_levels_mev: relative(&dipoles.excited_energies_mev, req.n_excited),
        pl,
        ple,
        convergence_eps_energy: prepared.convergence_eps_energy,
    })
}

/// Runs the spectrum pipeline end to end.
pub fn spectrum(req: &SpectrumRequest) -> Result<SpectrumResponse, Error> {
    req.validate()?;
    spectrum_from(req, &prepare(&req.system_key())?)
}

/// Convergence study of one manifold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub label: String,
    pub reference_n_cut: usize,
    pub rows: Vec<ConvergenceRow>,
}

/// Convergence tables of both manifolds of a request for cut-offs
/// 2..=`max_n_cut` against `reference_n_cut`.
pub fn convergence_tables(req: &SpectrumRequest, max_n_cut: usize, reference_n_cut: usize) -> Result<Vec<ConvergenceTable>, Error> {
    let cutoffs: Vec<usize> = (2..=max_n_cut).collect();
    Manifold::ALL
        .iter()
        .map(|&m| {
            let p = req.params(m);
            Ok(ConvergenceTable {
                label: p.label(),
                reference_n_cut,
                rows: convergence_study(&p, &cutoffs, reference_n_cut)?,
            })
        })
        .collect()
}
