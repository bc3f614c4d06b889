//! Bundled parameter sets and ready-made request scenarios.

use serde::Serialize;
use vibronic::params::{Manifold, ManifoldParams, Species};
use vibronic::pipeline::SpectrumRequest;
use vibronic::scubed::{Load, ScubedRequest};

#[derive(Clone, Debug, Serialize)]
pub struct SpeciesPreset {
    pub species: Species,
    pub zpl_nm: f64,
    pub ground: ManifoldParams,
    pub excited: ManifoldParams,
}

/// A complete request body for one endpoint.
#[derive(Clone, Debug, Serialize)]
pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub endpoint: &'static str,
    pub request: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Presets {
    pub species: Vec<SpeciesPreset>,
    pub scenarios: Vec<Scenario>,
}

fn body<T: Serialize>(req: &T) -> serde_json::Value {
    serde_json::to_value(req).expect("requests serialize")
}

pub fn presets() -> Presets {
    let species = Species::ALL
        .iter()
        .map(|&s| SpeciesPreset {
            species: s,
            zpl_nm: s.data().zpl_nm,
            ground: ManifoldParams::bundled(s, Manifold::Ground),
            excited: ManifoldParams::bundled(s, Manifold::Excited),
        })
        .collect();

    let mut snv = SpectrumRequest::new(Species::SnV);
    snv.temperature_k = 100.0;
    let stress = ScubedRequest::new(
        Species::SiV,
        Load::Stress {
            stress_gpa: 1.0,
            direction: [0.0, 0.0, 1.0],
        },
    );
    let cantilever = ScubedRequest::new(
        Species::SiV,
        Load::Cantilever {
            voltage_v: 280.0,
            geometry: Default::default(),
        },
    );
    let scenarios = vec![
        Scenario {
            name: "snv-pl-100k",
            description: "SnV photoluminescence and excitation lines at 100 K",
            endpoint: "/api/spectrum",
            request: body(&snv),
        },
        Scenario {
            name: "siv-001-1gpa",
            description: "SiV under 1 GPa tensile stress along [001]",
            endpoint: "/api/scubed",
            request: body(&stress),
        },
        Scenario {
            name: "cantilever-280v",
            description: "SiV in an electrostatically actuated cantilever at 280 V",
            endpoint: "/api/scubed",
            request: body(&cantilever),
        },
    ];
    Presets { species, scenarios }
}
