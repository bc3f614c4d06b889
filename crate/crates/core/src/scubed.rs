//! Stress → strain → spectrum converter.
//!
//! Given a zero-phonon-line wavelength, the zero-stress splittings of the
//! two lowest spin-up states in each manifold, and a load (uniaxial stress
//! or cantilever voltage), this computes the strain in both frames, the
//! deformation of the seven-atom cluster, and — through the quench-factor
//! model — the splittings, the ZPL shift and the four ZPL lines as the load
//! is ramped from zero.
//!
//! Within each manifold the spin-up block of the quenched model reads
//! H = −(Δ₀/2)τ_z + t∥ε_zz + t⊥(ε_xx+ε_yy) + q′(γ_x τ_x + γ_y τ_y), whose
//! levels are the A₁ shift ± ½√(Δ₀² + 4q′²(γ_x²+γ_y²)).

use serde::{Deserialize, Serialize};

use crate::elasticity::{
    cantilever_strain, cantilever_transverse_frame, cluster_displacements, cluster_positions, hooke_cubic,
    strain_to_q, strain_to_xv, susceptibilities_from_params, uniaxial_stress, unit_vector, xv_frame_from_axes,
    CantileverGeometry, CubicElastic, Frame, HookeConvention, Rotation, StrainDisplacements, StrainTensor,
    StressTensor, Susceptibilities, XvOrientation,
};
use crate::error::{require_finite, Error, ValidationError};
use crate::params::{Manifold, ManifoldParams, Species};
use crate::quench::{refined_factors, QuenchFactors, EFFECTIVE_MODEL_VALIDITY, QUENCH_N_CUT};
use crate::units;

/// What deforms the crystal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Load {
    /// Uniaxial stress σ = S·n̂n̂ᵀ (GPa) along a crystal-frame direction
    /// (normalized internally; positive S is tensile).
    Stress { stress_gpa: f64, direction: [f64; 3] },
    /// Electrostatically pulled cantilever (rectangular model) with the
    /// color center in the transverse orientation; the strain
    /// diag(ε_xx, ε_yy, 0) is taken in the color-center frame.
    Cantilever {
        voltage_v: f64,
        #[serde(default)]
        geometry: CantileverGeometry,
    },
}

impl Load {
    fn magnitude(&self) -> f64 {
        match self {
            Load::Stress { stress_gpa, .. } => *stress_gpa,
            Load::Cantilever { voltage_v, .. } => *voltage_v,
        }
    }

    fn unit(&self) -> &'static str {
        match self {
            Load::Stress { .. } => "GPa",
            Load::Cantilever { .. } => "V",
        }
    }

    fn with_magnitude(&self, m: f64) -> Load {
        match self {
            Load::Stress { direction, .. } => Load::Stress {
                stress_gpa: m,
                direction: *direction,
            },
            Load::Cantilever { geometry, .. } => Load::Cantilever {
                voltage_v: m,
                geometry: *geometry,
            },
        }
    }
}

/// Orientation of the color center in the crystal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrientationSpec {
    Preset(XvOrientation),
    /// Explicit z and y axes in crystal coordinates (orthogonal).
    Axes { z_axis: [f64; 3], y_axis: [f64; 3] },
}

impl Default for OrientationSpec {
    fn default() -> Self {
        OrientationSpec::Preset(XvOrientation::Axis111)
    }
}

impl OrientationSpec {
    pub fn rotation(&self) -> Result<Rotation, ValidationError> {
        match self {
            OrientationSpec::Preset(o) => Ok(o.rotation()),
            OrientationSpec::Axes { z_axis, y_axis } => xv_frame_from_axes(*z_axis, *y_axis),
        }
    }
}

fn default_points() -> usize {
    21
}

fn default_n_cut() -> usize {
    QUENCH_N_CUT
}

/// Converter inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScubedRequest {
    /// Species whose bundled parameters supply the susceptibilities and the
    /// quench factors.
    pub species: Species,
    /// Unstrained ZPL wavelength (nm); defaults to the species value.
    #[serde(default)]
    pub zpl_nm: Option<f64>,
    /// Zero-stress splitting of the two lowest spin-up ground states (GHz);
    /// defaults to the value computed from H₀.
    #[serde(default)]
    pub delta_ground_ghz: Option<f64>,
    /// Same for the excited manifold.
    #[serde(default)]
    pub delta_excited_ghz: Option<f64>,
    pub load: Load,
    /// Ignored for the cantilever load (fixed transverse orientation).
    #[serde(default)]
    pub orientation: OrientationSpec,
    #[serde(default)]
    pub hooke: HookeConvention,
    /// Points of the load ramp, including zero and the final load.
    #[serde(default = "default_points")]
    pub n_points: usize,
    /// Basis cut-off used for the quench factors.
    #[serde(default = "default_n_cut")]
    pub n_cut: usize,
    /// Custom ground/excited parameters overriding the bundled ones.
    #[serde(default)]
    pub ground: Option<ManifoldParams>,
    #[serde(default)]
    pub excited: Option<ManifoldParams>,
}

impl ScubedRequest {
    /// Request with defaults for everything but species and load.
    pub fn new(species: Species, load: Load) -> Self {
        ScubedRequest {
            species,
            zpl_nm: None,
            delta_ground_ghz: None,
            delta_excited_ghz: None,
            load,
            orientation: OrientationSpec::default(),
            hooke: HookeConvention::default(),
            n_points: default_points(),
            n_cut: default_n_cut(),
            ground: None,
            excited: None,
        }
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        if let Some(z) = self.zpl_nm {
            if !(z.is_finite() && z > 0.0) {
                return Err(ValidationError::new("zpl_nm", "must be finite and > 0"));
            }
        }
        for (n, v) in [("delta_ground_ghz", self.delta_ground_ghz), ("delta_excited_ghz", self.delta_excited_ghz)] {
            if let Some(v) = v {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(ValidationError::new(n, "must be finite and ≥ 0"));
                }
            }
        }
        if self.n_points < 2 {
            return Err(ValidationError::new("n_points", "must be ≥ 2"));
        }
        if self.n_cut < 2 {
            return Err(ValidationError::new("n_cut", "must be ≥ 2"));
        }
        match &self.load {
            Load::Stress { stress_gpa, direction } => {
                require_finite("load.stress_gpa", *stress_gpa)?;
                unit_vector(*direction, "load.direction")?;
            }
            Load::Cantilever { voltage_v, geometry } => {
                require_finite("load.voltage_v", *voltage_v)?;
                geometry.validate()?;
            }
        }
        self.orientation.rotation()?;
        for p in [&self.ground, &self.excited].into_iter().flatten() {
            p.validate()?;
        }
        Ok(())
    }

    fn params(&self, manifold: Manifold) -> ManifoldParams {
        let custom = match manifold {
            Manifold::Ground => &self.ground,
            Manifold::Excited => &self.excited,
        };
        custom.clone().unwrap_or_else(|| ManifoldParams::bundled(self.species, manifold))
    }
}

/// Strain (and stress, when given) produced by a load.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoadStrain {
    pub stress_diamond: Option<StressTensor>,
    pub strain_diamond: StrainTensor,
    pub strain_xv: StrainTensor,
}

/// Strain tensors for a load in both frames.
pub fn load_strain(load: &Load, orientation: &OrientationSpec, hooke: HookeConvention) -> Result<LoadStrain, ValidationError> {
    let elastic = CubicElastic::default();
    match load {
        Load::Stress { stress_gpa, direction } => {
            let n = unit_vector(*direction, "load.direction")?;
            let stress = uniaxial_stress(*stress_gpa, [n[0], n[1], n[2]], Frame::Diamond)?;
            let strain = hooke_cubic(&stress, &elastic, hooke)?;
            let xv = strain_to_xv(&strain, &orientation.rotation()?)?;
            Ok(LoadStrain {
                stress_diamond: Some(stress),
                strain_diamond: strain,
                strain_xv: xv,
            })
        }
        Load::Cantilever { voltage_v, geometry } => {
            let c = cantilever_strain(*voltage_v, geometry, &elastic, false)?;
            let xv = StrainTensor::new([[c.eps_xx, 0.0, 0.0], [0.0, c.eps_yy, 0.0], [0.0, 0.0, 0.0]], Frame::Xv)?;
            let diamond = xv.rotated(&cantilever_transverse_frame().transpose(), Frame::Diamond);
            Ok(LoadStrain {
                stress_diamond: None,
                strain_diamond: diamond,
                strain_xv: xv,
            })
        }
    }
}

/// Two lowest spin-up levels of one manifold under strain (meV, relative to
/// the unstrained centroid).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifoldLevels {
    pub lower_mev: f64,
    pub upper_mev: f64,
}

impl ManifoldLevels {
    pub fn splitting_mev(&self) -> f64 {
        self.upper_mev - self.lower_mev
    }

    fn centroid(&self) -> f64 {
        0.5 * (self.lower_mev + self.upper_mev)
    }
}

/// Quench-factor model levels for one manifold.
pub fn strained_levels(delta0_mev: f64, q_prime: f64, sus: &Susceptibilities, strain_xv: &StrainTensor) -> Result<ManifoldLevels, ValidationError> {
    let field = sus.orbital_field(strain_xv)?;
    let half = 0.5 * (delta0_mev * delta0_mev + 4.0 * q_prime * q_prime * (field.tau_x.powi(2) + field.tau_y.powi(2))).sqrt();
    Ok(ManifoldLevels {
        lower_mev: field.identity - half,
        upper_mev: field.identity + half,
    })
}

/// One ZPL line (excited → ground).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZplLine {
    pub label: String,
    pub energy_thz: f64,
    pub wavelength_nm: f64,
}

/// Converter outputs at one load value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScubedPoint {
    /// Load in `ScubedResponse::load_unit`.
    pub load: f64,
    /// |ε_xx − ε_yy| in the color-center frame.
    pub strain_anisotropy: f64,
    pub delta_ground_ghz: f64,
    pub delta_excited_ghz: f64,
    pub zpl_shift_ghz: f64,
    pub zpl_nm: f64,
    /// A1, A3, C1, C3.
    pub lines: Vec<ZplLine>,
}

/// Atom positions and displacement vectors of the seven-atom cluster (Å,
/// color-center frame; X atom first, then the upper and lower carbons).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Deformation {
    pub positions_ang: Vec<[f64; 3]>,
    pub displacements_ang: Vec<[f64; 3]>,
    pub amplitudes: StrainDisplacements,
}

/// Full converter result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScubedResponse {
    pub species: Species,
    pub load_unit: String,
    pub strain: LoadStrain,
    pub deformation: Deformation,
    pub susceptibilities_ground: Susceptibilities,
    pub susceptibilities_excited: Susceptibilities,
    pub quench_ground: QuenchFactors,
    pub quench_excited: QuenchFactors,
    pub zpl_nm: f64,
    pub delta_ground_ghz: f64,
    pub delta_excited_ghz: f64,
    /// Ramp from zero to the requested load.
    pub curve: Vec<ScubedPoint>,
    pub warnings: Vec<String>,
}

impl ScubedResponse {
    /// Result at the requested load.
    pub fn final_point(&self) -> &ScubedPoint {
        self.curve.last().expect("curve has ≥ 2 points")
    }
}

/// Runs the converter.
pub fn scubed(req: &ScubedRequest) -> Result<ScubedResponse, Error> {
    req.validate()?;
    let (pg, pe) = (req.params(Manifold::Ground), req.params(Manifold::Excited));
    let (qg, qe) = rayon::join(|| refined_factors(&pg, req.n_cut), || refined_factors(&pe, req.n_cut));
    let (qg, qe) = (qg?, qe?);
    let (sg, se) = (susceptibilities_from_params(&pg), susceptibilities_from_params(&pe));
    let zpl_nm = req.zpl_nm.unwrap_or(req.species.data().zpl_nm);
    let zpl_thz = units::nm_to_thz(zpl_nm);
    let dg = req.delta_ground_ghz.map(units::ghz_to_mev).unwrap_or(qg.delta0_mev);
    let de = req.delta_excited_ghz.map(units::ghz_to_mev).unwrap_or(qe.delta0_mev);

    let full = load_strain(&req.load, &req.orientation, req.hooke)?;
    let a0 = units::DIAMOND_LATTICE_CONSTANT_ANG;
    let deformation = Deformation {
        positions_ang: cluster_positions(a0).to_vec(),
        displacements_ang: cluster_displacements(&full.strain_xv, a0)?.to_vec(),
        amplitudes: strain_to_q(&full.strain_xv, a0)?,
    };

    let mut warnings = Vec::new();
    let n = req.n_points;
    let mut curve = Vec::with_capacity(n);
    for k in 0..n {
        let load = req.load.magnitude() * k as f64 / (n - 1) as f64;
        let strain = load_strain(&req.load.with_magnitude(load), &req.orientation, req.hooke)?.strain_xv;
        let g = strained_levels(dg, qg.q_prime, &sg, &strain)?;
        let e = strained_levels(de, qe.q_prime, &se, &strain)?;
        let shift_thz = units::mev_to_thz(e.centroid() - g.centroid());
        let line = |label: &str, ee: f64, eg: f64| {
            let f = zpl_thz + units::mev_to_thz(ee - e.centroid() - (eg - g.centroid())) + shift_thz;
            ZplLine {
                label: label.into(),
                energy_thz: f,
                wavelength_nm: units::thz_to_nm(f),
            }
        };
        curve.push(ScubedPoint {
            load,
            strain_anisotropy: (strain.get(0, 0) - strain.get(1, 1)).abs(),
            delta_ground_ghz: units::mev_to_ghz(g.splitting_mev()),
            delta_excited_ghz: units::mev_to_ghz(e.splitting_mev()),
            zpl_shift_ghz: shift_thz * 1e3,
            zpl_nm: units::thz_to_nm(zpl_thz + shift_thz),
            lines: vec![
                line("A1", e.lower_mev, g.lower_mev),
                line("A3", e.lower_mev, g.upper_mev),
                line("C1", e.upper_mev, g.lower_mev),
                line("C3", e.upper_mev, g.upper_mev),
            ],
        });
    }

    for (name, q, s) in [("ground", &qg, &sg), ("excited", &qe, &se)] {
        let f = s.orbital_field(&full.strain_xv)?;
        let coupling = q.q_prime * f.tau_x.hypot(f.tau_y);
        if coupling > EFFECTIVE_MODEL_VALIDITY * q.delta54_mev {
            warnings.push(format!(
                "{name} manifold: quenched strain coupling {coupling:.3} meV is not small compared with the gap to the next doublet ({:.3} meV)",
                q.delta54_mev
            ));
        }
    }

    Ok(ScubedResponse {
        species: req.species,
        load_unit: req.load.unit().into(),
        strain: full,
        deformation,
        susceptibilities_ground: sg,
        susceptibilities_excited: se,
        quench_ground: qg,
        quench_excited: qe,
        zpl_nm,
        delta_ground_ghz: units::mev_to_ghz(dg),
        delta_excited_ghz: units::mev_to_ghz(de),
        curve,
        warnings,
    })
}
