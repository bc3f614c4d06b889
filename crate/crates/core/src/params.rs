//! Species, manifolds and the bundled parameter sets.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::ValidationError;
use crate::units;

/// Group-IV vacancy species.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Species {
    SiV,
    GeV,
    SnV,
    PbV,
}

impl Species {
    pub const ALL: [Species; 4] = [Species::SiV, Species::GeV, Species::SnV, Species::PbV];

    pub fn as_str(self) -> &'static str {
        match self {
            Species::SiV => "SiV",
            Species::GeV => "GeV",
            Species::SnV => "SnV",
            Species::PbV => "PbV",
        }
    }

    /// Bundled atomic and bond data for this species.
    pub fn data(self) -> &'static SpeciesData {
        bundled()
            .species
            .iter()
            .find(|s| s.species == self)
            .expect("every species is bundled")
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Species {
    type Err = ValidationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "siv" | "si" => Ok(Species::SiV),
            "gev" | "ge" => Ok(Species::GeV),
            "snv" | "sn" => Ok(Species::SnV),
            "pbv" | "pb" => Ok(Species::PbV),
            _ => Err(ValidationError::new(
                "species",
                format!("unknown species '{s}' (expected SiV, GeV, SnV or PbV)"),
            )),
        }
    }
}

/// Ground or first-excited orbital manifold of the hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Manifold {
    Ground,
    Excited,
}

impl Manifold {
    pub const ALL: [Manifold; 2] = [Manifold::Ground, Manifold::Excited];

    /// Short suffix used in table row names ("G" / "E").
    pub fn suffix(self) -> &'static str {
        match self {
            Manifold::Ground => "G",
            Manifold::Excited => "E",
        }
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Manifold::Ground => "ground",
            Manifold::Excited => "excited",
        })
    }
}

impl FromStr for Manifold {
    type Err = ValidationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ground" | "g" => Ok(Manifold::Ground),
            "excited" | "e" => Ok(Manifold::Excited),
            _ => Err(ValidationError::new(
                "manifold",
                format!("unknown manifold '{s}' (expected ground or excited)"),
            )),
        }
    }
}

/// Morse parameters of one bond.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BondData {
    pub bond: String,
    pub d0_ang: f64,
    pub e0_kj_per_mol: f64,
    pub alpha_per_ang: f64,
}

/// Per-species atomic data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpeciesData {
    pub species: Species,
    pub atomic_number: u32,
    /// Principal quantum number of the valence shell.
    pub valence_shell: u32,
    pub mass_da: f64,
    pub bond: BondData,
    /// Bond-force coefficient F per unit partition factor, eV/Å.
    pub force_per_partition_ev_per_ang: f64,
    /// Typical zero-phonon-line wavelength, nm (preset for calculators).
    pub zpl_nm: f64,
}

/// Physical inputs of one manifold: phonon energy, Jahn-Teller coupling and
/// spin-orbit strength. The coupling is stored as J/ħω with J = √(E_JT·ħω).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifoldParams {
    pub species: Option<Species>,
    pub manifold: Option<Manifold>,
    pub hbar_omega_mev: f64,
    pub lambda_mev: f64,
    /// Dimensionless J/ħω.
    pub coupling_ratio: f64,
    pub provenance: String,
}

impl ManifoldParams {
    /// Parameters from ħω, E_JT and λ (all meV).
    pub fn from_e_jt(hbar_omega_mev: f64, e_jt_mev: f64, lambda_mev: f64) -> Result<Self, ValidationError> {
        validate(hbar_omega_mev, lambda_mev)?;
        if !(e_jt_mev.is_finite() && e_jt_mev >= 0.0) {
            return Err(ValidationError::new("e_jt_mev", "must be finite and ≥ 0"));
        }
        Ok(ManifoldParams {
            species: None,
            manifold: None,
            hbar_omega_mev,
            lambda_mev,
            coupling_ratio: (e_jt_mev / hbar_omega_mev).sqrt(),
            provenance: "user".into(),
        })
    }

    /// Parameters from ħω and λ (meV) and the coupling J (meV).
    pub fn from_j(hbar_omega_mev: f64, j_mev: f64, lambda_mev: f64) -> Result<Self, ValidationError> {
        validate(hbar_omega_mev, lambda_mev)?;
        if !(j_mev.is_finite() && j_mev >= 0.0) {
            return Err(ValidationError::new("j_mev", "must be finite and ≥ 0"));
        }
        Ok(ManifoldParams {
            species: None,
            manifold: None,
            hbar_omega_mev,
            lambda_mev,
            coupling_ratio: j_mev / hbar_omega_mev,
            provenance: "user".into(),
        })
    }

    /// Parameters from a bond force F (eV/Å) acting on an oscillator of mass
    /// μ (Da): J = F·√(ħ/2μω).
    pub fn from_force(
        hbar_omega_mev: f64,
        force_ev_per_ang: f64,
        mass_da: f64,
        lambda_mev: f64,
    ) -> Result<Self, ValidationError> {
        if !(mass_da.is_finite() && mass_da > 0.0) {
            return Err(ValidationError::new("mass_da", "must be > 0"));
        }
        validate(hbar_omega_mev, lambda_mev)?;
        let j = force_ev_per_ang.abs() * 1e3 * units::oscillator_length_ang(hbar_omega_mev, mass_da);
        Self::from_j(hbar_omega_mev, j, lambda_mev)
    }

    /// Bundled parameter row for a species and manifold.
    pub fn bundled(species: Species, manifold: Manifold) -> Self {
        bundled()
            .manifolds
            .iter()
            .find(|r| r.species == species && r.manifold == manifold)
            .map(ManifoldRow::to_params)
            .expect("all eight rows are bundled")
    }

    /// All eight bundled rows, ground manifolds first.
    pub fn all_bundled() -> Vec<Self> {
        Manifold::ALL
            .iter()
            .flat_map(|&m| Species::ALL.iter().map(move |&s| Self::bundled(s, m)))
            .collect()
    }

    /// Parses a JSON array of rows with keys `species`, `manifold`,
    /// `hbar_omega_mev`, `e_jt_mev`, `lambda_mev` and optional `provenance`.
    pub fn load_json(text: &str) -> Result<Vec<Self>, ValidationError> {
        let rows: Vec<ManifoldRow> = serde_json::from_str(text)
            .map_err(|e| ValidationError::new("parameters", e.to_string()))?;
        rows.iter()
            .map(|r| {
                let mut p = Self::from_e_jt(r.hbar_omega_mev, r.e_jt_mev, r.lambda_mev)?;
                p.species = Some(r.species);
                p.manifold = Some(r.manifold);
                p.provenance = r.provenance.clone();
                Ok(p)
            })
            .collect()
    }

    /// Returns a copy with a different spin-orbit strength.
    pub fn with_lambda(&self, lambda_mev: f64) -> Self {
        ManifoldParams {
            lambda_mev,
            ..self.clone()
        }
    }

    /// Returns a copy with species and manifold tags.
    pub fn tagged(mut self, species: Species, manifold: Manifold) -> Self {
        self.species = Some(species);
        self.manifold = Some(manifold);
        self
    }

    /// Jahn-Teller energy E_JT = J²/ħω in meV.
    pub fn e_jt_mev(&self) -> f64 {
        self.coupling_ratio * self.coupling_ratio * self.hbar_omega_mev
    }

    /// Vibronic coupling J = F·√(ħ/2μω) in meV.
    pub fn j_mev(&self) -> f64 {
        self.coupling_ratio * self.hbar_omega_mev
    }

    /// Bond force F (eV/Å) for an oscillator of mass μ (Da).
    pub fn force_ev_per_ang(&self, mass_da: f64) -> f64 {
        self.j_mev() * 1e-3 / units::oscillator_length_ang(self.hbar_omega_mev, mass_da)
    }

    /// Row label such as "SnV-G" (or "custom").
    pub fn label(&self) -> String {
        match (self.species, self.manifold) {
            (Some(s), Some(m)) => format!("{s}-{}", m.suffix()),
            _ => "custom".into(),
        }
    }

    /// Re-checks the invariants (useful after deserialization).
    pub fn validate(&self) -> Result<(), ValidationError> {
        validate(self.hbar_omega_mev, self.lambda_mev)?;
        if !(self.coupling_ratio.is_finite() && self.coupling_ratio >= 0.0) {
            return Err(ValidationError::new("coupling_ratio", "must be finite and ≥ 0"));
        }
        Ok(())
    }
}

fn validate(hbar_omega_mev: f64, lambda_mev: f64) -> Result<(), ValidationError> {
    if !(hbar_omega_mev.is_finite() && hbar_omega_mev > 0.0) {
        return Err(ValidationError::new("hbar_omega_mev", "must be finite and > 0"));
    }
    if !(lambda_mev.is_finite() && lambda_mev >= 0.0) {
        return Err(ValidationError::new("lambda_mev", "must be finite and ≥ 0"));
    }
    Ok(())
}

#[derive(Clone, Debug, Deserialize, Serialize)]
struct ManifoldRow {
    species: Species,
    manifold: Manifold,
    hbar_omega_mev: f64,
    e_jt_mev: f64,
    lambda_mev: f64,
    #[serde(default)]
    provenance: String,
}

impl ManifoldRow {
    fn to_params(&self) -> ManifoldParams {
        let mut p = ManifoldParams::from_e_jt(self.hbar_omega_mev, self.e_jt_mev, self.lambda_mev)
            .expect("bundled rows are valid");
        p.species = Some(self.species);
        p.manifold = Some(self.manifold);
        p.provenance = self.provenance.clone();
        p
    }
}

#[derive(Debug, Deserialize)]
struct BundledData {
    carbon_bond: BondData,
    species: Vec<SpeciesData>,
    manifolds: Vec<ManifoldRow>,
}

fn bundled() -> &'static BundledData {
    static DATA: OnceLock<BundledData> = OnceLock::new();
    DATA.get_or_init(|| {
        serde_json::from_str(include_str!("../data/parameters.json"))
            .expect("bundled parameter file is valid JSON")
    })
}

/// Morse parameters of the C–C bond.
pub fn carbon_bond() -> &'static BondData {
    &bundled().carbon_bond
}
