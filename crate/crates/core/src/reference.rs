//! Published reference values used for regression checks and for the
//! side-by-side comparison tables printed by the command-line tool.
//!
//! Rows are ordered SiV-G, GeV-G, SnV-G, PbV-G, SiV-E, GeV-E, SnV-E, PbV-E,
//! matching [`ManifoldParams::all_bundled`](crate::params::ManifoldParams::all_bundled).

/// Row labels in table order.
pub const LABELS: [&str; 8] = ["SiV-G", "GeV-G", "SnV-G", "PbV-G", "SiV-E", "GeV-E", "SnV-E", "PbV-E"];

/// Lowest splitting Δ₀ of H₀ (GHz) computed from the bundled parameters.
pub const LOWEST_SPLITTING_GHZ: [f64; 8] = [61.0, 207.0, 946.0, 4514.0, 215.0, 987.0, 2897.0, 7051.0];

/// Measured lowest splittings (GHz); `None` where no measurement exists.
pub const MEASURED_SPLITTING_GHZ: [Option<f64>; 8] = [
    Some(50.0),
    Some(170.0),
    Some(850.0),
    Some(5700.0),
    Some(260.0),
    Some(1120.0),
    Some(3000.0),
    None,
];

/// One row of the quench-factor table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuenchRow {
    pub p: f64,
    pub p_prime: f64,
    pub eps_z: f64,
    pub eps_z_prime: f64,
    pub q: f64,
    pub q_prime: f64,
    pub eps_x: f64,
    pub eps_x_prime: f64,
}

#[allow(clippy::too_many_arguments)]
const fn qr(p: f64, p_prime: f64, eps_z: f64, eps_z_prime: f64, q: f64, q_prime: f64, eps_x: f64, eps_x_prime: f64) -> QuenchRow {
    QuenchRow {
        p,
        p_prime,
        eps_z,
        eps_z_prime,
        q,
        q_prime,
        eps_x,
        eps_x_prime,
    }
}

/// Quench factors and their prediction errors (probe strength 1 meV).
pub const QUENCH: [QuenchRow; 8] = [
    qr(0.30, 0.30, -0.029, -0.029, 0.65, 0.65, 1.7e-4, 1.5e-4),
    qr(0.38, 0.38, -0.029, -0.029, 0.69, 0.69, 3.7e-4, 2.1e-4),
    qr(0.46, 0.46, -0.089, -0.092, 0.73, 0.73, 4.5e-3, 7.0e-4),
    qr(0.53, 0.49, -0.24, -0.030, 0.77, 0.73, 0.10, 9.8e-3),
    qr(0.12, 0.12, -0.16, -0.15, 0.56, 0.56, 1.1e-3, 5.6e-4),
    qr(0.11, 0.11, -0.50, -0.50, 0.55, 0.55, 1.9e-2, 3.2e-3),
    qr(0.12, 0.12, -0.71, -0.71, 0.56, 0.53, 0.15, 2.4e-2),
    qr(0.11, 0.10, -0.84, -0.85, 0.55, 0.42, 0.99, 0.16),
];

/// Gap between the third and second Kramers doublets (meV).
pub const DELTA54_MEV: [f64; 8] = [52.0, 54.5, 54.1, 41.6, 31.4, 26.7, 23.0, 14.5];

/// Partition (α) and screening (β) factors.
pub const PARTITION_SCREENING: [(f64, f64); 8] = [
    (0.049, 0.016),
    (0.043, 0.0036),
    (0.044, 0.0045),
    (0.039, 0.0045),
    (0.058, 0.13),
    (0.065, 0.060),
    (0.082, 0.053),
    (0.10, 0.032),
];

/// Unscreened spin–orbit strengths (meV) for Si, Ge, Sn, Pb.
pub const SPIN_ORBIT_PREFACTOR_MEV: [f64; 4] = [52.0, 603.0, 1841.0, 7706.0];

/// Local phonon energies (meV) for Si, Ge, Sn, Pb: X atom, carbon in-plane,
/// carbon along the axis.
pub const PHONON_X_MEV: [f64; 4] = [74.7, 28.5, 14.5, 5.8];
pub const PHONON_C_XY_MEV: f64 = 156.0;
pub const PHONON_C_Z_MEV: [f64; 4] = [136.0, 120.0, 114.0, 111.0];

/// Zero-point displacements (Å).
pub const ZERO_POINT_X_ANG: [f64; 4] = [0.032, 0.032, 0.035, 0.042];
pub const ZERO_POINT_C_XY_ANG: f64 = 0.034;
pub const ZERO_POINT_C_Z_ANG: [f64; 4] = [0.036, 0.038, 0.039, 0.040];

/// Strain susceptibilities (d, f) in PHz/strain converted from the bundled
/// parameters: (label, d, f).
pub const SUSCEPTIBILITIES_PHZ: [(&str, f64, f64); 4] = [
    ("SiV-G", 0.30, 1.07),
    ("SiV-E", 0.36, 1.26),
    ("SnV-G", 0.20, 0.71),
    ("SnV-E", 0.38, 1.33),
];

/// Excited-minus-ground differences of t∥ and t⊥ for SiV (PHz/strain).
pub const SIV_T_DIFFERENCES_PHZ: (f64, f64) = (-0.16, -0.11);

/// Cantilever voltage (V) and rectangular-model strain |ε_xx − ε_yy| (×10⁻⁴).
pub const VOLTAGE_STRAIN: [(f64, f64); 13] = [
    (25.0, 0.0154),
    (50.0, 0.0615),
    (75.0, 0.138),
    (100.0, 0.246),
    (125.0, 0.384),
    (150.0, 0.553),
    (175.0, 0.753),
    (200.0, 0.984),
    (220.0, 1.19),
    (240.0, 1.42),
    (260.0, 1.66),
    (270.0, 1.79),
    (280.0, 1.93),
];

/// Finite-element strain |ε_xx − ε_yy| (×10⁻⁴) at the same voltages.
pub const VOLTAGE_STRAIN_FEM: [f64; 13] = [
    0.0200, 0.0500, 0.110, 0.200, 0.300, 0.430, 0.600, 0.790, 0.960, 1.17, 1.38, 1.50, 1.62,
];

/// SnV level energies relative to the lowest state of each manifold (meV),
/// lowest eight spin-up states.
pub const SNV_GROUND_LEVELS_MEV: [f64; 8] = [0.0, 3.82, 57.9, 60.9, 100.0, 101.0, 120.0, 123.0];
pub const SNV_EXCITED_LEVELS_MEV: [f64; 8] = [0.0, 11.6, 34.6, 45.5, 77.6, 84.1, 87.7, 106.8];

/// Unnormalized SnV populations: (temperature K, eight weights).
pub const SNV_GROUND_POPULATIONS: [(f64, [f64; 8]); 3] = [
    (5.0, [1.0, 1e-4, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (50.0, [1.0, 0.412, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (100.0, [1.0, 0.642, 1.2e-3, 9e-4, 0.0, 0.0, 0.0, 0.0]),
];
pub const SNV_EXCITED_POPULATIONS: [(f64, [f64; 8]); 3] = [
    (5.0, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (50.0, [1.0, 0.0676, 3e-4, 0.0, 0.0, 0.0, 0.0, 0.0]),
    (100.0, [1.0, 0.260, 0.0181, 5.1e-3, 1e-4, 1e-4, 0.0, 0.0]),
];

/// Selected SnV reduced dipole elements: (polarization, ground ladder
/// index, excited ladder index, value). Ladder index k is the k-th
/// spin-up state (|1⟩, |3⟩, … and |A⟩, |C⟩, …).
pub const SNV_DIPOLE_ELEMENTS: [(&str, usize, usize, f64); 8] = [
    ("z", 0, 0, 0.958),
    ("z", 0, 5, 0.281),
    ("z", 1, 1, 0.877),
    ("z", 4, 0, -0.250),
    ("+", 1, 0, -0.680),
    ("+", 0, 2, -0.379),
    ("-", 0, 1, -0.488),
    ("-", 2, 0, -0.448),
];

/// SnV PL intensity ratio I(A3)/I(A1) at 100 K.
pub const SNV_PL_RATIO_100K: f64 = 0.16;

/// Fraction of PL in the zero-phonon lines at 50 K for Si, Ge, Sn, Pb.
pub const ZPL_FRACTION_50K: [f64; 4] = [0.84, 0.79, 0.83, 0.85];

/// SnV quadratic Stark coefficient Δ_spl/E² (GHz·m²/V²) for a field along
/// the axis and perpendicular to it.
pub const SNV_STARK_AXIAL: f64 = 9.1e-16;
pub const SNV_STARK_TRANSVERSE: f64 = 1.1e-16;

/// SnV maximal excited-minus-ground spin orientation difference (units of π)
/// and the transverse Zeeman energy μ_B·B_x (meV) where it occurs.
pub const SNV_SPIN_ORIENTATION_MAX: (f64, f64) = (0.18, 4.0);
