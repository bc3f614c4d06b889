//! Optical transitions between the excited and ground manifolds: dipole
//! matrices in the vibronic eigenbasis, Boltzmann populations, PL/PLE line
//! lists, zero-phonon-line fraction and the quadratic Stark shift.
//!
//! The dipole operator acts only on the orbital factor: the transverse
//! components d₊ and d₋ are proportional to τ₋ and τ₊ with the scale
//! e·a₀/(4√6) ≈ 1.75 D, the longitudinal component d_z to the identity with
//! scale 5e·a₀/(16√3) ≈ 3.09 D. Spin is conserved, so only spin-up states
//! are used; spin-down lines mirror them by Kramers degeneracy.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{orbital_spin_operators, VibronicBasis};
use crate::error::{require_finite, Error, NumericalError, ValidationError};
use crate::hamiltonian::{build_h0, build_h_zeeman};
use crate::params::{Manifold, ManifoldParams, Species};
use crate::solver::{diagonalize, EigenSolution};
use crate::units;

/// Transverse dipole scale e·a₀/(4√6) in Debye.
pub fn transverse_dipole_debye() -> f64 {
    units::ELEMENTARY_CHARGE_C * units::DIAMOND_LATTICE_CONSTANT_ANG * 1e-10 / (4.0 * 6f64.sqrt()) / units::DEBYE_CM
}

/// Longitudinal dipole scale 5e·a₀/(16√3) in Debye.
pub fn longitudinal_dipole_debye() -> f64 {
    5.0 * units::ELEMENTARY_CHARGE_C * units::DIAMOND_LATTICE_CONSTANT_ANG * 1e-10 / (16.0 * 3f64.sqrt())
        / units::DEBYE_CM
}

/// Dipole component / photon polarization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    /// Linear along the symmetry axis (d_z).
    Z,
    /// Right circular (d₊).
    Plus,
    /// Left circular (d₋).
    Minus,
}

impl Polarization {
    pub const ALL: [Polarization; 3] = [Polarization::Z, Polarization::Plus, Polarization::Minus];

    pub fn as_str(self) -> &'static str {
        match self {
            Polarization::Z => "z",
            Polarization::Plus => "+",
            Polarization::Minus => "-",
        }
    }
}

/// Label of the k-th (0-based) spin-up ground state: 1, 3, 5, …
pub fn ground_ladder_label(k: usize) -> String {
    (2 * k + 1).to_string()
}

/// Label of the k-th (0-based) spin-up excited state: A, C, E, …
pub fn excited_ladder_label(k: usize) -> String {
    excited_label(2 * k)
}

/// Label of the n-th (0-based) ground state counting both spins: 1, 2, 3, …
pub fn ground_label(n: usize) -> String {
    (n + 1).to_string()
}

/// Label of the n-th (0-based) excited state counting both spins: A, B, …,
/// Z, AA, AB, …
pub fn excited_label(n: usize) -> String {
    let mut n = n + 1;
    let mut s = Vec::new();
    while n > 0 {
        n -= 1;
        s.push(b'A' + (n % 26) as u8);
        n /= 26;
    }
    s.reverse();
    String::from_utf8(s).expect("ASCII letters")
}

/// Dipole matrices between the lowest spin-up states of both manifolds.
///
/// Rows index ground states (j), columns excited states (i); entries are
/// dimensionless reduced elements — multiply by the transverse or
/// longitudinal scale for Debye.
#[derive(Clone, Debug)]
pub struct DipoleSet {
    pub ground_energies_mev: Vec<f64>,
    pub excited_energies_mev: Vec<f64>,
    /// ⟨L_z^vo⟩ of the ground and excited states.
    pub ground_l: Vec<f64>,
    pub excited_l: Vec<f64>,
    /// ⟨j|τ₋|i⟩.
    pub d_plus: DMatrix<f64>,
    /// ⟨j|τ₊|i⟩.
    pub d_minus: DMatrix<f64>,
    /// ⟨j|i⟩.
    pub d_z: DMatrix<f64>,
}

impl DipoleSet {
    pub fn n_ground(&self) -> usize {
        self.ground_energies_mev.len()
    }

    pub fn n_excited(&self) -> usize {
        self.excited_energies_mev.len()
    }

    /// Reduced element ⟨j|d_k|i⟩ (dimensionless).
    pub fn reduced(&self, pol: Polarization, j: usize, i: usize) -> f64 {
        match pol {
            Polarization::Z => self.d_z[(j, i)],
            Polarization::Plus => self.d_plus[(j, i)],
            Polarization::Minus => self.d_minus[(j, i)],
        }
    }

    /// ⟨j|d_k|i⟩ in Debye.
    pub fn debye(&self, pol: Polarization, j: usize, i: usize) -> f64 {
        let scale = match pol {
            Polarization::Z => longitudinal_dipole_debye(),
            _ => transverse_dipole_debye(),
        };
        scale * self.reduced(pol, j, i)
    }

    /// Σ_k |⟨j|d_k|i⟩|² in D².
    pub fn strength(&self, j: usize, i: usize) -> f64 {
        Polarization::ALL.iter().map(|&p| self.debye(p, j, i).powi(2)).sum()
    }
}

fn spin_up_block(sol: &EigenSolution, n_states: Option<usize>) -> Result<(Vec<usize>, DMatrix<f64>), NumericalError> {
    let mut up = sol.spin_sector(1.0);
    if let Some(n) = n_states {
        if up.len() < n {
            return Err(NumericalError::Other(format!(
                "only {} spin-up states available, {n} requested",
                up.len()
            )));
        }
        up.truncate(n);
    }
    let dim = sol.dim();
    let mut m = DMatrix::zeros(dim, up.len());
    let mut residual: f64 = 0.0;
    for (c, &k) in up.iter().enumerate() {
        let st = sol.state(k);
        for (&i, a) in st.support().iter().zip(st.amplitudes()) {
            m[(i, c)] = a.re;
            residual = residual.max(a.im.abs());
        }
    }
    if residual > 1e-8 {
        return Err(NumericalError::GaugeMismatch { residual });
    }
    Ok((up, m))
}

/// Builds the dipole matrices from solved ground and excited manifolds
/// (same cut-off). `n_states = None` keeps every spin-up state.
pub fn dipole_matrices(
    ground: &EigenSolution,
    excited: &EigenSolution,
    n_states: Option<usize>,
) -> Result<DipoleSet, Error> {
    let n_cut = match (ground.n_cut(), excited.n_cut()) {
        (Some(a), Some(b)) if a == b => a,
        _ => {
            return Err(ValidationError::new(
                "n_cut",
                "ground and excited manifolds must be solved in the same vibronic basis",
            )
            .into())
        }
    };
    let basis = VibronicBasis::new(n_cut);
    let ops = orbital_spin_operators(&basis);
    let (gi, g) = spin_up_block(ground, n_states)?;
    let (ei, e) = spin_up_block(excited, n_states)?;
    let real = |m: &crate::operator::OperatorMatrix| m.to_dense().map(|z| z.re);
    let tau_minus = real(&ops.tau_minus);
    let tau_plus = real(&ops.tau_plus);
    let gt = g.transpose();
    let d_z = &gt * &e;
    let d_plus = &gt * (&tau_minus * &e);
    let d_minus = &gt * (&tau_plus * &e);
    let label_l = |sol: &EigenSolution, idx: &[usize]| -> Vec<f64> {
        idx.iter().map(|&k| sol.label(k).map(|l| l.l).unwrap_or(f64::NAN)).collect()
    };
    Ok(DipoleSet {
        ground_energies_mev: gi.iter().map(|&k| ground.energies()[k]).collect(),
        excited_energies_mev: ei.iter().map(|&k| excited.energies()[k]).collect(),
        ground_l: label_l(ground, &gi),
        excited_l: label_l(excited, &ei),
        d_plus,
        d_minus,
        d_z,
    })
}

/// Unnormalized Boltzmann weights n_i = exp(−(E_i − E_min)/k_BT), T > 0.
pub fn boltzmann_populations(energies_mev: &[f64], temperature_k: f64) -> Result<Vec<f64>, ValidationError> {
    if !(temperature_k.is_finite() && temperature_k > 0.0) {
        return Err(ValidationError::new("temperature_k", "must be finite and > 0"));
    }
    thermal_weights(energies_mev, temperature_k)
}

/// Like [`boltzmann_populations`] but also accepts T = 0 as the limit in
/// which only the lowest level (and levels degenerate with it) is occupied.
pub fn thermal_weights(energies_mev: &[f64], temperature_k: f64) -> Result<Vec<f64>, ValidationError> {
    if !(temperature_k.is_finite() && temperature_k >= 0.0) {
        return Err(ValidationError::new("temperature_k", "must be finite and ≥ 0"));
    }
    for (k, e) in energies_mev.iter().enumerate() {
        require_finite(&format!("energies_mev[{k}]"), *e)?;
    }
    let e0 = energies_mev.iter().copied().fold(f64::INFINITY, f64::min);
    let kt = units::BOLTZMANN_MEV_PER_K * temperature_k;
    Ok(energies_mev
        .iter()
        .map(|&e| {
            if kt == 0.0 {
                if (e - e0).abs() <= 1e-9 * e0.abs().max(1.0) {
                    1.0
                } else {
                    0.0
                }
            } else {
                (-(e - e0) / kt).exp()
            }
        })
        .collect())
}

/// Emission (PL) or absorption/excitation (PLE).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMode {
    Pl,
    Ple,
}

/// One transition line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    /// Initial then final state, e.g. "A3" (PL) or "3A" (PLE).
    pub label: String,
    pub initial: String,
    pub final_state: String,
    /// Photon frequency (THz).
    pub energy_thz: f64,
    /// n_i·|⟨j|d_k|i⟩|² in D².
    pub intensity: f64,
    /// The polarization allowed by the L_z^vo selection rule; `None` when
    /// the transition is forbidden in every polarization.
    pub polarization: Option<Polarization>,
}

/// PL or PLE line list over the lowest `n_ground` × `n_excited` spin-up
/// states: one line per (initial, final) pair whose initial state is
/// populated. Photon frequencies are offset so that the lowest excited →
/// lowest ground line sits at `zpl_thz`.
pub fn pl_ple_spectrum(
    dipoles: &DipoleSet,
    temperature_k: f64,
    mode: SpectrumMode,
    zpl_thz: f64,
    n_ground: usize,
    n_excited: usize,
) -> Result<Vec<SpectrumLine>, ValidationError> {
    require_finite("zpl_thz", zpl_thz)?;
    let ng = n_ground.min(dipoles.n_ground());
    let ne = n_excited.min(dipoles.n_excited());
    let eg = &dipoles.ground_energies_mev[..ng];
    let ee = &dipoles.excited_energies_mev[..ne];
    let pops = match mode {
        SpectrumMode::Pl => thermal_weights(ee, temperature_k)?,
        SpectrumMode::Ple => thermal_weights(eg, temperature_k)?,
    };
    let mut lines = Vec::new();
    for i in 0..ne {
        for j in 0..ng {
            let energy_thz = zpl_thz + units::mev_to_thz((ee[i] - ee[0]) - (eg[j] - eg[0]));
            let (lg, le) = (ground_ladder_label(j), excited_ladder_label(i));
            let (initial, final_state, n) = match mode {
                SpectrumMode::Pl => (le, lg, pops[i]),
                SpectrumMode::Ple => (lg, le, pops[j]),
            };
            if n == 0.0 {
                continue;
            }
            let (mut polarization, mut strength) = (None, 0.0);
            for pol in Polarization::ALL {
                let w = dipoles.debye(pol, j, i).powi(2);
                if w > strength {
                    (polarization, strength) = (Some(pol), w);
                }
            }
            lines.push(SpectrumLine {
                label: format!("{initial}{final_state}"),
                initial,
                final_state,
                energy_thz,
                intensity: n * strength,
                polarization,
            });
        }
    }
    Ok(lines)
}

/// Sum of Lorentzians (FWHM `width_thz`) evaluated on a frequency grid — a
/// presentation helper; the physics is in the line list.
pub fn broadened(lines: &[SpectrumLine], grid_thz: &[f64], width_thz: f64) -> Vec<f64> {
    let g = 0.5 * width_thz;
    grid_thz
        .iter()
        .map(|&f| {
            lines
                .iter()
                .map(|l| {
                    if g == 0.0 {
                        if f == l.energy_thz {
                            l.intensity
                        } else {
                            0.0
                        }
                    } else {
                        l.intensity * g * g / ((f - l.energy_thz).powi(2) + g * g)
                    }
                })
                .sum()
        })
        .collect()
}

/// Default number of ground final states in the ZPL-fraction sum.
pub const ZPL_FRACTION_FINAL_STATES: usize = 20;

/// Fraction of emitted PL intensity in the zero-phonon lines A1, A3, C1, C3.
///
/// The total runs over every spin-up excited state (Boltzmann-weighted)
/// and the lowest `final_states` spin-up ground states; ground states
/// above the lowest two are phonon-excited, so those lines form the sideband.
pub fn zpl_fraction(dipoles: &DipoleSet, temperature_k: f64, final_states: usize) -> Result<f64, ValidationError> {
    if final_states < 2 || dipoles.n_excited() < 2 {
        return Err(ValidationError::new("final_states", "need at least two states per manifold"));
    }
    let nf = final_states.min(dipoles.n_ground());
    let pops = boltzmann_populations(&dipoles.excited_energies_mev, temperature_k)?;
    let mut zpl = 0.0;
    let mut total = 0.0;
    for (i, n) in pops.iter().enumerate() {
        for j in 0..nf {
            let w = n * dipoles.strength(j, i);
            total += w;
            if i < 2 && j < 2 {
                zpl += w;
            }
        }
    }
    Ok(zpl / total)
}

/// Which perturbative terms enter the Stark shift of each level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum StarkTerms {
    /// Only the two nearest levels of the other manifold: |1⟩, |3⟩ for the
    /// shift of |A⟩ and |A⟩, |C⟩ for the shift of |1⟩.
    #[default]
    NearestTwo,
    /// Sum over every state in the dipole set.
    Full,
}

/// Second-order Stark shifts (GHz).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarkShift {
    /// ΔE_A (lowest excited state).
    pub shift_excited_ghz: f64,
    /// ΔE_1 (lowest ground state).
    pub shift_ground_ghz: f64,
    /// Δ_spl = ΔE_A − ΔE_1.
    pub delta_spl_ghz: f64,
}

fn perturbative_sum(terms: Vec<f64>, mode: StarkTerms) -> f64 {
    let keep = match mode {
        StarkTerms::NearestTwo => 2,
        StarkTerms::Full => terms.len(),
    };
    terms.iter().take(keep).sum()
}

/// Quadratic Stark shift of the lowest optical transition for a static
/// field of magnitude `field_v_per_m` at angle `theta_z` to the symmetry
/// axis (in the xz plane). Optical gaps are referenced to `zpl_thz`, the
/// lowest excited → lowest ground frequency.
pub fn stark_shift(
    dipoles: &DipoleSet,
    field_v_per_m: f64,
    theta_z: f64,
    zpl_thz: f64,
    mode: StarkTerms,
) -> Result<StarkShift, ValidationError> {
    require_finite("field_v_per_m", field_v_per_m)?;
    require_finite("theta_z", theta_z)?;
    if !(zpl_thz.is_finite() && zpl_thz > 0.0) {
        return Err(ValidationError::new("zpl_thz", "must be finite and > 0"));
    }
    let eg = &dipoles.ground_energies_mev;
    let ee = &dipoles.excited_energies_mev;
    // Coupling ⟨j|d·E|i⟩ in Hz (divided by h).
    let coupling_hz = |j: usize, i: usize| {
        let debye = theta_z.cos() * dipoles.debye(Polarization::Z, j, i)
            + theta_z.sin() * (dipoles.debye(Polarization::Plus, j, i) + dipoles.debye(Polarization::Minus, j, i));
        debye * units::DEBYE_CM * field_v_per_m / units::PLANCK_JS
    };
    let gap_hz = |j: usize, i: usize| (zpl_thz + units::mev_to_thz((ee[i] - ee[0]) - (eg[j] - eg[0]))) * 1e12;
    let excited_terms = (0..eg.len()).map(|j| coupling_hz(j, 0).powi(2) / gap_hz(j, 0)).collect();
    let ground_terms = (0..ee.len()).map(|i| -coupling_hz(0, i).powi(2) / gap_hz(0, i)).collect();
    let a = perturbative_sum(excited_terms, mode) * 1e-9;
    let g = perturbative_sum(ground_terms, mode) * 1e-9;
    Ok(StarkShift {
        shift_excited_ghz: a,
        shift_ground_ghz: g,
        delta_spl_ghz: a - g,
    })
}

/// Mean photon energy ½(E_C + E_A − E_3 − E_1) of the four zero-phonon lines.
pub fn zpl_energy(e_a: f64, e_c: f64, e_1: f64, e_3: f64) -> f64 {
    0.5 * (e_c + e_a - e_3 - e_1)
}

/// Both manifolds of one species solved in a common basis.
#[derive(Clone, Debug)]
pub struct OpticalSystem {
    pub ground_params: ManifoldParams,
    pub excited_params: ManifoldParams,
    pub ground: EigenSolution,
    pub excited: EigenSolution,
    pub n_cut: usize,
}

impl OpticalSystem {
    /// Solves both manifolds (in parallel).
    pub fn solve(ground_params: &ManifoldParams, excited_params: &ManifoldParams, n_cut: usize) -> Result<Self, Error> {
        Self::solve_in_field(ground_params, excited_params, n_cut, 0.0)
    }

    /// Solves both manifolds with a magnetic field along the symmetry axis
    /// (Tesla). An axial field conserves spin, so the spin-up ladder and
    /// its dipole matrices stay well defined.
    pub fn solve_in_field(
        ground_params: &ManifoldParams,
        excited_params: &ManifoldParams,
        n_cut: usize,
        b_z_tesla: f64,
    ) -> Result<Self, Error> {
        require_finite("b_z_tesla", b_z_tesla)?;
        let basis = VibronicBasis::new(n_cut);
        let solve = |p: &ManifoldParams| -> Result<EigenSolution, Error> {
            let h0 = build_h0(p, &basis)?;
            let h = if b_z_tesla == 0.0 { h0 } else { &h0 + &build_h_zeeman([0.0, 0.0, b_z_tesla], &basis)? };
            Ok(diagonalize(&h)?)
        };
        let (g, e) = rayon::join(|| solve(ground_params), || solve(excited_params));
        Ok(OpticalSystem {
            ground_params: ground_params.clone(),
            excited_params: excited_params.clone(),
            ground: g?,
            excited: e?,
            n_cut,
        })
    }

    /// Bundled parameters of a species.
    pub fn for_species(species: Species, n_cut: usize) -> Result<Self, Error> {
        Self::solve(
            &ManifoldParams::bundled(species, Manifold::Ground),
            &ManifoldParams::bundled(species, Manifold::Excited),
            n_cut,
        )
    }

    pub fn dipoles(&self, n_states: Option<usize>) -> Result<DipoleSet, Error> {
        dipole_matrices(&self.ground, &self.excited, n_states)
    }
}

/// ZPL fractions of several species at one temperature (n_cut 20).
pub fn zpl_fractions(species: &[Species], temperature_k: f64) -> Result<Vec<f64>, Error> {
    species
        .par_iter()
        .map(|&s| {
            let sys = OpticalSystem::for_species(s, 20)?;
            Ok(zpl_fraction(&sys.dipoles(None)?, temperature_k, ZPL_FRACTION_FINAL_STATES)?)
        })
        .collect()
}
