//! JSON run configuration. Every physical quantity carries its unit in the
//! key name; command-line flags override values read from the file.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use vibronic::params::{ManifoldParams, Species};

use crate::output::Format;
use crate::CliError;

/// Contents of a `--config` file. All fields are optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub species: Option<Species>,
    pub n_cut: Option<usize>,
    #[serde(rename = "temperature_K")]
    pub temperature_k: Option<f64>,
    #[serde(rename = "B_z_tesla")]
    pub b_z_tesla: Option<f64>,
    pub zpl_nm: Option<f64>,
    #[serde(rename = "delta_ground_GHz")]
    pub delta_ground_ghz: Option<f64>,
    #[serde(rename = "delta_excited_GHz")]
    pub delta_excited_ghz: Option<f64>,
    #[serde(rename = "stress_GPa")]
    pub stress_gpa: Option<f64>,
    pub stress_direction: Option<[f64; 3]>,
    #[serde(rename = "voltage_V")]
    pub voltage_v: Option<f64>,
    pub orientation: Option<String>,
    pub hooke: Option<String>,
    pub n_points: Option<usize>,
    /// Custom parameters replacing the bundled ones.
    pub ground: Option<ManifoldParams>,
    pub excited: Option<ManifoldParams>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// `flag` if given, otherwise the config value.
pub fn pick<T>(flag: Option<T>, config: Option<T>) -> Option<T> {
    flag.or(config)
}
