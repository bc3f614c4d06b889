//! Dipole matrices, populations, PL/PLE line lists, ZPL fractions and the
//! quadratic Stark shift.

use std::sync::OnceLock;

use vibronic::optics::{
    boltzmann_populations, dipole_matrices, pl_ple_spectrum, stark_shift, zpl_fraction, zpl_fractions, DipoleSet,
    OpticalSystem, Polarization, SpectrumMode, StarkTerms, ZPL_FRACTION_FINAL_STATES,
};
use vibronic::params::{ManifoldParams, Species};
use vibronic::{reference, units};

fn snv() -> &'static (OpticalSystem, DipoleSet) {
    static S: OnceLock<(OpticalSystem, DipoleSet)> = OnceLock::new();
    S.get_or_init(|| {
        let sys = OpticalSystem::for_species(Species::SnV, 20).unwrap();
        let d = sys.dipoles(None).unwrap();
        (sys, d)
    })
}

fn pol(s: &str) -> Polarization {
    match s {
        "z" => Polarization::Z,
        "+" => Polarization::Plus,
        _ => Polarization::Minus,
    }
}

#[test]
fn snv_dipole_elements_match_published_magnitudes() {
    let (_, d) = snv();
    for (p, j, i, v) in reference::SNV_DIPOLE_ELEMENTS {
        let ours = d.reduced(pol(p), j, i);
        assert!((ours.abs() - v.abs()).abs() <= 0.02, "{p} ⟨{j}|{i}⟩: {ours} vs {v}");
    }
}

#[test]
fn selection_rule_is_exact() {
    let (_, d) = snv();
    for j in 0..d.n_ground() {
        for i in 0..d.n_excited() {
            let dl = d.ground_l[j] - d.excited_l[i];
            for (p, allowed) in [(Polarization::Z, 0.0), (Polarization::Plus, -1.0), (Polarization::Minus, 1.0)] {
                if (dl - allowed).abs() > 1e-6 {
                    assert_eq!(d.reduced(p, j, i), 0.0, "{p:?} ⟨{j}|{i}⟩ ΔL = {dl}");
                }
            }
        }
    }
}

#[test]
fn dipole_window_is_a_prefix() {
    let (sys, d) = snv();
    let small = dipole_matrices(&sys.ground, &sys.excited, Some(8)).unwrap();
    assert_eq!(small.n_ground(), 8);
    for j in 0..8 {
        for i in 0..8 {
            assert_eq!(small.d_z[(j, i)], d.d_z[(j, i)]);
        }
    }
}

#[test]
fn boltzmann_table_is_reproduced() {
    let (sys, _) = snv();
    let levels = |sol: &vibronic::solver::EigenSolution| -> Vec<f64> {
        let up = sol.spin_sector(1.0);
        up.iter().take(8).map(|&k| sol.energies()[k] - sol.energies()[up[0]]).collect()
    };
    let (eg, ee) = (levels(&sys.ground), levels(&sys.excited));
    for (ours, theirs) in eg.iter().zip(reference::SNV_GROUND_LEVELS_MEV) {
        assert!((ours - theirs).abs() <= 0.01 * theirs.max(1.0) + 0.5, "{ours} vs {theirs}");
    }
    for (ours, theirs) in ee.iter().zip(reference::SNV_EXCITED_LEVELS_MEV) {
        assert!((ours - theirs).abs() <= 0.01 * theirs.max(1.0) + 0.5, "{ours} vs {theirs}");
    }
    for (levels, table) in [(&eg, reference::SNV_GROUND_POPULATIONS), (&ee, reference::SNV_EXCITED_POPULATIONS)] {
        for (t, row) in table {
            let n = boltzmann_populations(levels, t).unwrap();
            for (k, (ours, theirs)) in n.iter().zip(row).enumerate() {
                assert!((ours - theirs).abs() <= 0.01, "T={t} level {k}: {ours} vs {theirs}");
            }
        }
    }
}

#[test]
fn boltzmann_limits() {
    let e = [0.0, 1.0, 5.0];
    assert!(boltzmann_populations(&e, 0.0).is_err());
    assert!(boltzmann_populations(&e, -3.0).is_err());
    let hot = boltzmann_populations(&e, 1e9).unwrap();
    assert!(hot.iter().all(|&n| (n - 1.0).abs() < 1e-6));
    assert_eq!(boltzmann_populations(&e, 4.0).unwrap()[0], 1.0);
}

#[test]
fn snv_pl_ratio_at_100k() {
    let (_, d) = snv();
    let zpl = units::nm_to_thz(Species::SnV.data().zpl_nm);
    let lines = pl_ple_spectrum(d, 100.0, SpectrumMode::Pl, zpl, 4, 4).unwrap();
    assert_eq!(lines.len(), 16);
    let get = |l: &str| lines.iter().find(|x| x.label == l).unwrap();
    let ratio = get("A3").intensity / get("A1").intensity;
    assert!((ratio - reference::SNV_PL_RATIO_100K).abs() <= 0.02, "{ratio}");
    assert!((get("A1").energy_thz - zpl).abs() < 1e-12);
    assert!(lines.iter().all(|l| l.intensity >= 0.0));

    // Two-level estimate (q′·1.75/3.09)² with the refined q′ of the
    // ground manifold (the A3 final state is its upper quenched partner).
    let q = vibronic::quench::refined_factors(
        &ManifoldParams::bundled(Species::SnV, vibronic::params::Manifold::Ground),
        20,
    )
    .unwrap()
    .q_prime;
    let estimate = (q * 1.75 / 3.09).powi(2);
    assert!((estimate - 0.17).abs() < 0.02 && (estimate - ratio).abs() < 0.03);
}

#[test]
fn zero_temperature_emits_only_from_lowest_level() {
    let (_, d) = snv();
    let lines = pl_ple_spectrum(d, 0.0, SpectrumMode::Pl, 484.1, 4, 4).unwrap();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.initial == "A"));
    let ple = pl_ple_spectrum(d, 0.0, SpectrumMode::Ple, 484.1, 4, 4).unwrap();
    assert!(ple.iter().all(|l| l.initial == "1"));
}

#[test]
fn zpl_fractions_at_50k() {
    let f = zpl_fractions(&Species::ALL, 50.0).unwrap();
    for ((s, ours), theirs) in Species::ALL.iter().zip(&f).zip(reference::ZPL_FRACTION_50K) {
        assert!((ours - theirs).abs() <= 0.02, "{s}: {ours} vs {theirs}");
    }
}

#[test]
fn uncoupled_system_has_no_sideband() {
    let g = ManifoldParams::from_e_jt(80.0, 0.0, 8.0).unwrap();
    let e = ManifoldParams::from_e_jt(80.0, 0.0, 90.0).unwrap();
    let sys = OpticalSystem::solve(&g, &e, 8).unwrap();
    let d = sys.dipoles(None).unwrap();
    let f = zpl_fraction(&d, 50.0, ZPL_FRACTION_FINAL_STATES).unwrap();
    // Only thermally excited phonon replicas (population ~e^(−ħω/k_BT)) emit outside the ZPL.
    assert!((f - 1.0).abs() < 1e-7, "{f}");
}

#[test]
fn stark_bracket() {
    let (_, d) = snv();
    let zpl = units::nm_to_thz(Species::SnV.data().zpl_nm);
    let axial = stark_shift(d, 1.0, 0.0, zpl, StarkTerms::NearestTwo).unwrap().delta_spl_ghz;
    let transverse = stark_shift(d, 1.0, std::f64::consts::FRAC_PI_2, zpl, StarkTerms::NearestTwo)
        .unwrap()
        .delta_spl_ghz;
    assert!((axial / reference::SNV_STARK_AXIAL - 1.0).abs() <= 0.15, "{axial}");
    assert!((transverse / reference::SNV_STARK_TRANSVERSE - 1.0).abs() <= 0.15, "{transverse}");
    // Quadratic and even in the field; zero at zero field.
    let s = |e: f64| stark_shift(d, e, 0.3, zpl, StarkTerms::Full).unwrap().delta_spl_ghz;
    assert_eq!(s(0.0), 0.0);
    assert!((s(2e6) / s(1e6) - 4.0).abs() < 1e-12);
    assert!((s(-1e6) - s(1e6)).abs() < 1e-24);
}

#[test]
fn spectrum_intensity_sum_is_gauge_invariant() {
    // Flipping the sign of every excited eigenvector leaves intensities unchanged.
    let (_, d) = snv();
    let mut flipped = d.clone();
    flipped.d_z *= -1.0;
    flipped.d_plus *= -1.0;
    flipped.d_minus *= -1.0;
    let a = pl_ple_spectrum(d, 100.0, SpectrumMode::Pl, 484.1, 8, 8).unwrap();
    let b = pl_ple_spectrum(&flipped, 100.0, SpectrumMode::Pl, 484.1, 8, 8).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.intensity - y.intensity).abs() < 1e-10);
    }
}
