//! Stress/voltage → spectrum converter.

use std::sync::OnceLock;

use vibronic::elasticity::{
    hooke_cubic, strain_to_q, uniaxial_stress, CantileverGeometry, CubicElastic, Frame, HookeConvention,
};
use vibronic::params::{Manifold, ManifoldParams, Species};
use vibronic::scubed::{load_strain, scubed, Load, OrientationSpec, ScubedRequest, ScubedResponse};
use vibronic::units;

fn siv_001() -> &'static ScubedResponse {
    static R: OnceLock<ScubedResponse> = OnceLock::new();
    R.get_or_init(|| {
        let mut req = ScubedRequest::new(
            Species::SiV,
            Load::Stress {
                stress_gpa: 1.0,
                direction: [0.0, 0.0, 2.0],
            },
        );
        req.n_points = 5;
        scubed(&req).unwrap()
    })
}

#[test]
fn stress_is_converted_with_hookes_law() {
    let r = siv_001();
    let sigma = uniaxial_stress(1.0, [0.0, 0.0, 1.0], Frame::Diamond).unwrap();
    let expect = hooke_cubic(&sigma, &CubicElastic::default(), HookeConvention::Compliance).unwrap();
    assert_eq!(r.strain.strain_diamond, expect);
    assert_eq!(r.load_unit, "GPa");
    assert_eq!(r.curve.len(), 5);
    assert_eq!(r.curve[0].load, 0.0);
    assert_eq!(r.final_point().load, 1.0);
}

#[test]
fn splittings_follow_the_quenched_two_level_form() {
    let r = siv_001();
    let a0 = units::DIAMOND_LATTICE_CONSTANT_ANG;
    for (m, sus, q, delta_ghz) in [
        (Manifold::Ground, &r.susceptibilities_ground, &r.quench_ground, r.final_point().delta_ground_ghz),
        (Manifold::Excited, &r.susceptibilities_excited, &r.quench_excited, r.final_point().delta_excited_ghz),
    ] {
        // The E-symmetric coupling is the bond force times the projected
        // carbon displacement.
        let modes = strain_to_q(&r.strain.strain_xv, a0).unwrap();
        let force = ManifoldParams::bundled(Species::SiV, m).force_ev_per_ang(units::CARBON_MASS_DA);
        let (gx, gy) = (1e3 * force * modes.qx_ang, 1e3 * force * modes.qy_ang);
        let field = sus.orbital_field(&r.strain.strain_xv).unwrap();
        assert!((field.tau_x - gx).abs() < 1e-9 * gx.abs().max(1e-6));
        assert!((field.tau_y - gy).abs() < 1e-9 * gy.abs().max(1e-6));
        let expect = (q.delta0_mev.powi(2) + 4.0 * q.q_prime.powi(2) * (gx * gx + gy * gy)).sqrt();
        assert!((units::ghz_to_mev(delta_ghz) / expect - 1.0).abs() < 1e-9);
    }
}

#[test]
fn lines_are_consistent_with_splittings() {
    let r = siv_001();
    for p in &r.curve {
        let get = |l: &str| p.lines.iter().find(|x| x.label == l).unwrap().energy_thz;
        assert!(((get("A1") - get("A3")) * 1e3 - p.delta_ground_ghz).abs() < 1e-6);
        assert!(((get("C1") - get("A1")) * 1e3 - p.delta_excited_ghz).abs() < 1e-6);
        for l in &p.lines {
            assert!((units::thz_to_nm(l.energy_thz) - l.wavelength_nm).abs() < 1e-9);
        }
    }
    // Splittings grow monotonically along the load ramp.
    for w in r.curve.windows(2) {
        assert!(w[1].delta_ground_ghz >= w[0].delta_ground_ghz);
    }
}

#[test]
fn zero_load_echoes_measured_inputs() {
    let mut req = ScubedRequest::new(
        Species::SnV,
        Load::Cantilever {
            voltage_v: 0.0,
            geometry: CantileverGeometry::default(),
        },
    );
    req.n_cut = 12;
    req.zpl_nm = Some(619.0);
    req.delta_ground_ghz = Some(850.0);
    req.delta_excited_ghz = Some(3000.0);
    let r = scubed(&req).unwrap();
    let p = r.final_point();
    assert!((p.delta_ground_ghz - 850.0).abs() < 1e-9);
    assert!((p.delta_excited_ghz - 3000.0).abs() < 1e-9);
    assert!((p.zpl_nm - 619.0).abs() < 1e-9);
    assert!(r.warnings.is_empty());
}

#[test]
fn cantilever_load_uses_transverse_strain() {
    let g = CantileverGeometry::default();
    let s = load_strain(
        &Load::Cantilever { voltage_v: 280.0, geometry: g },
        &OrientationSpec::default(),
        HookeConvention::Compliance,
    )
    .unwrap();
    let c = vibronic::elasticity::cantilever_strain(280.0, &g, &CubicElastic::default(), false).unwrap();
    assert_eq!(s.strain_xv.get(0, 0), c.eps_xx);
    assert_eq!(s.strain_xv.get(1, 1), c.eps_yy);
    assert!((s.strain_diamond.trace() - s.strain_xv.trace()).abs() < 1e-18);
    assert!(s.stress_diamond.is_none());
}

#[test]
fn large_load_warns() {
    let mut req = ScubedRequest::new(
        Species::SiV,
        Load::Stress {
            stress_gpa: 40.0,
            direction: [1.0, 1.0, 0.0],
        },
    );
    req.n_cut = 12;
    req.n_points = 2;
    let r = scubed(&req).unwrap();
    assert!(!r.warnings.is_empty());
}

#[test]
fn requests_are_validated() {
    let ok = ScubedRequest::new(Species::GeV, Load::Stress { stress_gpa: 1.0, direction: [1.0, 0.0, 0.0] });
    let mut bad = ok.clone();
    bad.n_points = 1;
    assert!(bad.validate().is_err());
    let mut bad = ok.clone();
    bad.zpl_nm = Some(-3.0);
    assert!(bad.validate().is_err());
    let mut bad = ok.clone();
    bad.orientation = OrientationSpec::Axes { z_axis: [1.0, 1.0, 1.0], y_axis: [1.0, 0.0, 0.0] };
    assert!(bad.validate().is_err());
    let mut bad = ok;
    bad.load = Load::Stress { stress_gpa: f64::NAN, direction: [1.0, 0.0, 0.0] };
    assert!(bad.validate().is_err());
}

#[test]
fn request_json_round_trip() {
    let text = r#"{"species":"SnV","load":{"kind":"stress","stress_gpa":0.5,"direction":[1,1,1]},"orientation":"axis111"}"#;
    let req: ScubedRequest = serde_json::from_str(text).unwrap();
    assert_eq!(req.n_points, 21);
    let back: ScubedRequest = serde_json::from_str(&serde_json::to_string(&req).unwrap()).unwrap();
    assert_eq!(back, req);
    assert!(serde_json::from_str::<ScubedRequest>(r#"{"species":"SnV","load":{"kind":"stress","stress_gpa":1,"direction":[1,0,0]},"bogus":1}"#).is_err());
}
