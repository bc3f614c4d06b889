//! `spectrum`, `scubed`, `quench-report` and `probe`.

use rayon::prelude::*;
use serde::Serialize;
use vibronic::elasticity::{susceptibilities_from_params, HookeConvention, StrainTensor, XvOrientation};
use vibronic::params::{Manifold, ManifoldParams, Species};
use vibronic::pipeline::{self, ConvergenceTable, SpectrumRequest, SpectrumResponse};
use vibronic::quench::{quench_report as quench_row, refined_factors, QuenchReport, QUENCH_N_CUT};
use vibronic::scubed::{Load, OrientationSpec, ScubedRequest, ScubedResponse};
use vibronic::{fields, units};

use crate::config::{pick, RunConfig};
use crate::output::{num, opt, Sink, Table};
use crate::{CliError, OutputArgs, ProbeArgs, QuenchArgs, ScubedArgs, SpectrumArgs};

/// Largest cut-off of the `--check-convergence` table and its reference.
const CONVERGENCE_MAX_N_CUT: usize = 30;
const CONVERGENCE_REFERENCE_N_CUT: usize = 40;

fn sink(out: &OutputArgs, config: &RunConfig) -> Result<Sink, CliError> {
    Sink::new(
        pick(out.out.clone(), config.out_dir.clone()),
        pick(out.format, config.format).unwrap_or_default(),
    )
}

fn require_species(flag: Option<Species>, config: &RunConfig) -> Result<Species, CliError> {
    pick(flag, config.species).ok_or_else(|| CliError::Usage("--species is required (flag or config file)".into()))
}

/// Parses a snake_case enum name the way the JSON interfaces spell it.
fn parse_name<T: serde::de::DeserializeOwned>(field: &str, s: &str) -> Result<T, CliError> {
    serde_json::from_value(serde_json::Value::String(s.into()))
        .map_err(|_| CliError::Validation(format!("{field}: unknown value '{s}'")))
}

#[derive(Serialize)]
struct SpectrumDocument<'a> {
    #[serde(flatten)]
    spectrum: &'a SpectrumResponse,
    #[serde(skip_serializing_if = "Option::is_none")]
    convergence: Option<&'a [ConvergenceTable]>,
}

pub fn spectrum(a: SpectrumArgs) -> Result<(), CliError> {
    let config = RunConfig::load(a.output.config.as_deref())?;
    let mut req = SpectrumRequest::new(require_species(a.species, &config)?);
    if let Some(v) = pick(a.n_cut, config.n_cut) {
        req.n_cut = v;
    }
    if let Some(v) = pick(a.temperature_k, config.temperature_k) {
        req.temperature_k = v;
    }
    if let Some(v) = pick(a.b_z_tesla, config.b_z_tesla) {
        req.b_z_tesla = v;
    }
    req.zpl_nm = config.zpl_nm;
    req.ground = config.ground.clone();
    req.excited = config.excited.clone();
    req.validate()?;

    let sink = sink(&a.output, &config)?;
    let response = pipeline::spectrum(&req)?;
    let convergence = if a.check_convergence {
        let max = req.n_cut.max(CONVERGENCE_MAX_N_CUT);
        let reference = CONVERGENCE_REFERENCE_N_CUT.max(max + pipeline::CONVERGENCE_MARGIN);
        Some(pipeline::convergence_tables(&req, max, reference)?)
    } else {
        None
    };

    let mut tables = vec![line_table("pl", &response.pl), line_table("ple", &response.ple), level_table(&response)];
    if let Some(c) = &convergence {
        tables.push(convergence_table(c));
        for t in c {
            if let Some(r) = t.rows.iter().find(|r| r.n_cut == req.n_cut) {
                eprintln!("{}: ε_E = {:.2e} at n_cut = {} (reference {})", t.label, r.eps_energy, r.n_cut, t.reference_n_cut);
            }
        }
    }
    let doc = SpectrumDocument {
        spectrum: &response,
        convergence: convergence.as_deref(),
    };
    sink.emit("spectrum", &doc, &tables)
}

fn line_table(name: &'static str, lines: &[vibronic::optics::SpectrumLine]) -> Table {
    let mut t = Table::new(
        name,
        &["label", "initial", "final", "energy_thz", "wavelength_nm", "intensity_debye2", "polarization"],
    );
    for l in lines {
        t.push(vec![
            l.label.clone(),
            l.initial.clone(),
            l.final_state.clone(),
            num(l.energy_thz),
            num(units::thz_to_nm(l.energy_thz)),
            num(l.intensity),
            l.polarization.map(|p| p.as_str().to_string()).unwrap_or_default(),
        ]);
    }
    t
}

fn level_table(r: &SpectrumResponse) -> Table {
    let mut t = Table::new("levels", &["manifold", "index", "label", "energy_mev", "energy_ghz"]);
    for (manifold, levels, label) in [
        ("ground", &r.ground_levels_mev, vibronic::optics::ground_ladder_label as fn(usize) -> String),
        ("excited", &r.excited_levels_mev, vibronic::optics::excited_ladder_label),
    ] {
        for (k, e) in levels.iter().enumerate() {
            t.push(vec![manifold.into(), k.to_string(), label(k), num(*e), num(units::mev_to_ghz(*e))]);
        }
    }
    t
}

fn convergence_table(tables: &[ConvergenceTable]) -> Table {
    let mut t = Table::new("convergence", &["manifold", "n_cut", "reference_n_cut", "eps_energy", "eps_state"]);
    for c in tables {
        for r in &c.rows {
            t.push(vec![
                c.label.clone(),
                r.n_cut.to_string(),
                c.reference_n_cut.to_string(),
                num(r.eps_energy),
                num(r.eps_state),
            ]);
        }
    }
    t
}

pub fn scubed(a: ScubedArgs) -> Result<(), CliError> {
    let config = RunConfig::load(a.output.config.as_deref())?;
    let species = require_species(a.species, &config)?;
    // A flag of either load kind overrides both load keys of the file.
    let flag_load = a.stress_gpa.is_some() || a.direction.is_some() || a.voltage_v.is_some();
    let (stress, direction, voltage) = if flag_load {
        (a.stress_gpa, a.direction.clone(), a.voltage_v)
    } else {
        (config.stress_gpa, config.stress_direction.map(|d| d.to_vec()), config.voltage_v)
    };
    let load = match (stress, voltage) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either a stress or a voltage, not both".into())),
        (Some(s), None) => {
            let d = direction.ok_or_else(|| CliError::Usage("--direction is required with a stress".into()))?;
            if d.len() != 3 {
                return Err(CliError::Usage(format!("--direction needs three components, got {}", d.len())));
            }
            Load::Stress {
                stress_gpa: s,
                direction: [d[0], d[1], d[2]],
            }
        }
        (None, Some(v)) => Load::Cantilever {
            voltage_v: v,
            geometry: Default::default(),
        },
        (None, None) => return Err(CliError::Usage("one of --stress-gpa or --voltage-v is required".into())),
    };
    let mut req = ScubedRequest::new(species, load);
    req.zpl_nm = pick(a.zpl_nm, config.zpl_nm);
    req.delta_ground_ghz = pick(a.delta_ground_ghz, config.delta_ground_ghz);
    req.delta_excited_ghz = pick(a.delta_excited_ghz, config.delta_excited_ghz);
    if let Some(o) = pick(a.orientation.clone(), config.orientation.clone()) {
        req.orientation = OrientationSpec::Preset(parse_name::<XvOrientation>("orientation", &o)?);
    }
    if let Some(h) = pick(a.hooke.clone(), config.hooke.clone()) {
        req.hooke = parse_name::<HookeConvention>("hooke", &h)?;
    }
    if let Some(n) = pick(a.n_points, config.n_points) {
        req.n_points = n;
    }
    if let Some(n) = pick(a.n_cut, config.n_cut) {
        req.n_cut = n;
    }
    req.ground = config.ground.clone();
    req.excited = config.excited.clone();
    req.validate()?;

    let sink = sink(&a.output, &config)?;
    let r = vibronic::scubed::scubed(&req)?;
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    let tables = [curve_table(&r), strain_table(&r), spectrum_vs_load_table(&r), deformation_table(&r)];
    sink.emit("scubed", &r, &tables)
}

fn curve_table(r: &ScubedResponse) -> Table {
    let load = format!("load_{}", r.load_unit.to_lowercase());
    let mut t = Table::new(
        "curve",
        &[&load, "strain_anisotropy", "delta_ground_ghz", "delta_excited_ghz", "zpl_shift_ghz", "zpl_nm"],
    );
    for p in &r.curve {
        t.push(
            [p.load, p.strain_anisotropy, p.delta_ground_ghz, p.delta_excited_ghz, p.zpl_shift_ghz, p.zpl_nm]
                .map(num)
                .to_vec(),
        );
    }
    t
}

fn strain_table(r: &ScubedResponse) -> Table {
    let mut t = Table::new("strain", &["quantity", "frame", "i", "j", "value"]);
    let mut push = |quantity: &str, frame: &str, m: [[f64; 3]; 3]| {
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.push(vec![quantity.into(), frame.into(), i.to_string(), j.to_string(), num(*v)]);
            }
        }
    };
    if let Some(s) = &r.strain.stress_diamond {
        push("stress_gpa", "diamond", s.components());
    }
    let components = |s: &StrainTensor| s.components();
    push("strain", "diamond", components(&r.strain.strain_diamond));
    push("strain", "xv", components(&r.strain.strain_xv));
    t
}

fn spectrum_vs_load_table(r: &ScubedResponse) -> Table {
    let load = format!("load_{}", r.load_unit.to_lowercase());
    let mut t = Table::new("spectrum_vs_load", &[&load, "line", "energy_thz", "wavelength_nm"]);
    for p in &r.curve {
        for l in &p.lines {
            t.push(vec![num(p.load), l.label.clone(), num(l.energy_thz), num(l.wavelength_nm)]);
        }
    }
    t
}

fn deformation_table(r: &ScubedResponse) -> Table {
    let mut t = Table::new("deformation", &["atom", "x_ang", "y_ang", "z_ang", "ux_ang", "uy_ang", "uz_ang"]);
    let d = &r.deformation;
    for (k, (p, u)) in d.positions_ang.iter().zip(&d.displacements_ang).enumerate() {
        let atom = if k == 0 { "X".to_string() } else { format!("C{k}") };
        let mut row = vec![atom];
        row.extend(p.iter().chain(u).map(|v| num(*v)));
        t.push(row);
    }
    t
}

pub fn quench_report(a: QuenchArgs) -> Result<(), CliError> {
    let config = RunConfig::load(a.output.config.as_deref())?;
    let sink = sink(&a.output, &config)?;
    let params: Vec<ManifoldParams> = match pick(a.species, config.species) {
        Some(s) => Manifold::ALL.iter().map(|&m| ManifoldParams::bundled(s, m)).collect(),
        None => ManifoldParams::all_bundled(),
    };
    let reports = params.par_iter().map(quench_row).collect::<Result<Vec<QuenchReport>, _>>()?;
    let mut t = Table::new(
        "quench",
        &["manifold", "p", "p_prime", "eps_z", "eps_z_prime", "q", "q_prime", "eps_x", "eps_x_prime", "delta0_mev", "delta54_mev"],
    );
    for r in &reports {
        let (f, e) = (&r.factors, &r.precision);
        let mut row = vec![r.label.clone()];
        row.extend([num(f.p), num(f.p_prime), opt(e.eps_z), opt(e.eps_z_prime), num(f.q), num(f.q_prime)]);
        row.extend([opt(e.eps_x), opt(e.eps_x_prime), num(f.delta0_mev), num(f.delta54_mev)]);
        t.push(row);
    }
    sink.emit("quench", &reports, &[t])
}

#[derive(Serialize)]
struct ProbeReport {
    species: Species,
    delta0_ghz: f64,
    b_y_tesla: f64,
    delta_sm_mhz: f64,
    /// Quenched transverse strain coupling recovered from Δ_SM.
    gamma0_ghz: f64,
    /// Ground-manifold q′ and strain susceptibility d used for the strain.
    q_prime: f64,
    d_ghz_per_strain: f64,
    /// Equivalent |ε_xx − ε_yy| = γ₀/(q′·d).
    equivalent_strain: f64,
}

pub fn probe(a: ProbeArgs) -> Result<(), CliError> {
    let config = RunConfig::load(a.output.config.as_deref())?;
    let sink = sink(&a.output, &config)?;
    if !(a.mu_b_ghz_per_t.is_finite() && a.mu_b_ghz_per_t > 0.0) {
        return Err(CliError::Validation("mu_b_ghz_per_t: must be finite and > 0".into()));
    }
    let b = units::ghz_to_mev(a.mu_b_ghz_per_t * a.b_y_tesla);
    let gamma0 = fields::invert_intrinsic_strain(units::ghz_to_mev(a.delta_sm_mhz * 1e-3), units::ghz_to_mev(a.delta0_ghz), b)?;
    let p = ManifoldParams::bundled(a.species, Manifold::Ground);
    let q_prime = refined_factors(&p, QUENCH_N_CUT)?.q_prime;
    let d = units::mev_to_ghz(susceptibilities_from_params(&p).d_mev);
    let gamma0_ghz = units::mev_to_ghz(gamma0);
    let report = ProbeReport {
        species: a.species,
        delta0_ghz: a.delta0_ghz,
        b_y_tesla: a.b_y_tesla,
        delta_sm_mhz: a.delta_sm_mhz,
        gamma0_ghz,
        q_prime,
        d_ghz_per_strain: d,
        equivalent_strain: gamma0_ghz / (q_prime * d),
    };
    let mut t = Table::new("probe", &["quantity", "value"]);
    for (k, v) in [
        ("gamma0_ghz", report.gamma0_ghz),
        ("q_prime", q_prime),
        ("d_ghz_per_strain", d),
        ("equivalent_strain", report.equivalent_strain),
    ] {
        t.push(vec![k.into(), num(v)]);
    }
    sink.emit("probe", &report, &[t])
}
