//! Magnetic-field analyses and the intrinsic-strain probe.

use nalgebra::DMatrix;
use proptest::prelude::*;
use vibronic::fields::{
    addressability, delta_sm, invert_intrinsic_strain, levels_vs_b, probe_splitting, spin_orientation_mev,
    spin_orientation_scan, FieldAxis, ProbeModel,
};
use vibronic::params::{Manifold, ManifoldParams, Species};
use vibronic::reference;
use vibronic::solver::diagonalize;

fn snv(m: Manifold) -> ManifoldParams {
    ManifoldParams::bundled(Species::SnV, m)
}

#[test]
fn snv_orientation_difference_peaks_near_four_mev() {
    let grid: Vec<f64> = (1..=32).map(|k| 0.25 * k as f64).collect();
    let scan = spin_orientation_scan(&snv(Manifold::Ground), &snv(Manifold::Excited), &grid, 14).unwrap();
    let best = scan.iter().max_by(|a, b| a.difference().total_cmp(&b.difference())).unwrap();
    let (target, at) = reference::SNV_SPIN_ORIENTATION_MAX;
    let pi = std::f64::consts::PI;
    assert!((best.difference() / pi - target).abs() <= 0.01, "{}π", best.difference() / pi);
    assert!((best.mu_b_bx_mev - at).abs() <= 0.5, "{} meV", best.mu_b_bx_mev);
    // The excited spin follows the field more readily at every point.
    assert!(scan.iter().all(|p| p.difference() >= 0.0));
}

#[test]
fn orientation_limits() {
    let pi = std::f64::consts::PI;
    let g = snv(Manifold::Ground);
    assert!((spin_orientation_mev(&g, 0.0, 10).unwrap() - pi).abs() < 1e-6);
    // A field much larger than λ aligns the spin with x.
    assert!((spin_orientation_mev(&g, 2000.0, 10).unwrap() - pi / 2.0).abs() < 0.02);
    assert!(spin_orientation_mev(&g, -1.0, 10).is_err());
}

#[test]
fn transverse_field_levels_stay_paired_while_axial_split() {
    let p = ManifoldParams::bundled(Species::SiV, Manifold::Ground);
    let grid = [0.0, 1.0, 3.0, 7.0];
    for pt in levels_vs_b(&p, FieldAxis::X, &grid, 10, 8).unwrap() {
        for c in pt.energies_mev.chunks(2) {
            assert!((c[1] - c[0]).abs() <= 1e-9 * c[1].abs(), "B={} {c:?}", pt.b_tesla);
        }
    }
    let z = levels_vs_b(&p, FieldAxis::Z, &grid, 10, 2).unwrap();
    assert_eq!(z[0].energies_mev[1] - z[0].energies_mev[0], 0.0);
    assert!(z[1].energies_mev[1] - z[1].energies_mev[0] > 1e-3);
}

#[test]
fn addressability_needs_a_field() {
    let (g, e) = (snv(Manifold::Ground), snv(Manifold::Excited));
    let zero = addressability(&g, &e, [0.0; 3], 12).unwrap();
    assert!(zero.delta_12_ghz.abs() < 1e-6 && zero.delta_ab_ghz.abs() < 1e-6);
    let tilted = addressability(&g, &e, [1.0, 0.0, 1.0], 12).unwrap();
    assert!(tilted.delta_12_ghz > 0.0 && tilted.delta_ab_ghz > 0.0);
    assert!(tilted.difference_ghz().abs() > 1e-3);
}

fn model() -> impl Strategy<Value = ProbeModel> {
    (0.01..5.0f64, -2.0..2.0f64, -1.0..1.0f64).prop_map(|(delta0_mev, gamma_mev, mu_b_by_mev)| ProbeModel {
        delta0_mev,
        gamma_mev,
        mu_b_by_mev,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_diagonalization(m in model()) {
        let closed = probe_splitting(&m).unwrap();
        let numeric = diagonalize(&m.hamiltonian()).unwrap();
        for (a, b) in closed.eigenvalues_mev.iter().zip(numeric.energies()) {
            prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        let e = numeric.energies();
        prop_assert!((closed.delta_sm_mev.abs() - (e[3] - e[2])).abs() < 1e-12);
    }

    #[test]
    fn intrinsic_strain_round_trip(m in model()) {
        let g = m.gamma_mev.abs();
        let b = m.mu_b_by_mev.abs();
        prop_assume!(b > 1e-3);
        let d = delta_sm(m.delta0_mev, g, b);
        prop_assume!(d < 2.0 * b * (1.0 - 1e-6));
        let back = invert_intrinsic_strain(d, m.delta0_mev, b).unwrap();
        prop_assert!((back - g).abs() <= 1e-8 * g.max(1.0), "{back} vs {g}");
    }

    #[test]
    fn probe_splitting_parity(m in model()) {
        let d = delta_sm(m.delta0_mev, m.gamma_mev, m.mu_b_by_mev);
        prop_assert!((delta_sm(m.delta0_mev, -m.gamma_mev, m.mu_b_by_mev) + d).abs() < 1e-12);
        prop_assert!((delta_sm(m.delta0_mev, m.gamma_mev, -m.mu_b_by_mev) + d).abs() < 1e-12);
        prop_assert!((delta_sm(m.delta0_mev, -m.gamma_mev, -m.mu_b_by_mev) - d).abs() < 1e-12);
    }
}

#[test]
fn probe_limits() {
    let p = probe_splitting(&ProbeModel { delta0_mev: 1.0, gamma_mev: 0.0, mu_b_by_mev: 0.3 }).unwrap();
    assert_eq!(p.delta_sm_mev, 0.0);
    let p = probe_splitting(&ProbeModel { delta0_mev: 1.0, gamma_mev: 0.4, mu_b_by_mev: 0.0 }).unwrap();
    assert!((p.delta_s_mev - (1.0f64 + 4.0 * 0.16).sqrt()).abs() < 1e-15);
    assert_eq!(p.eigenvalues_mev[0], p.eigenvalues_mev[1]);
    assert!(probe_splitting(&ProbeModel { delta0_mev: 0.0, gamma_mev: 0.1, mu_b_by_mev: 0.1 }).is_err());
}

#[test]
fn probe_splitting_grows_with_strain() {
    let mut last = -1.0;
    for k in 0..50 {
        let d = delta_sm(1.0, 0.05 * k as f64, 0.2);
        assert!(d > last);
        last = d;
    }
    assert!(last < 0.4);
}

#[test]
fn inversion_rejects_unphysical_inputs() {
    assert_eq!(invert_intrinsic_strain(0.0, 1.0, 0.2).unwrap(), 0.0);
    assert!(invert_intrinsic_strain(0.4, 1.0, 0.2).is_err());
    assert!(invert_intrinsic_strain(-0.1, 1.0, 0.2).is_err());
    assert!(invert_intrinsic_strain(0.1, 1.0, 0.0).is_err());
    assert!(invert_intrinsic_strain(0.1, -1.0, 0.2).is_err());
}

#[test]
fn probe_matrix_is_hermitian() {
    let m = ProbeModel { delta0_mev: 0.7, gamma_mev: 0.2, mu_b_by_mev: 0.1 }.hamiltonian();
    let d: DMatrix<_> = m.to_dense();
    assert!((&d - d.adjoint()).norm() < 1e-15);
}
