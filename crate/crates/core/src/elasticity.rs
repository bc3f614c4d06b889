//! Stress and strain tensors, Hooke's law for cubic diamond, frame rotation,
//! the strain → orbital-coupling projection and the cantilever estimator.
//!
//! Conventions:
//! * tensors are symmetric 3×3 with tensor (not engineering) shear components;
//! * stress in GPa, strain dimensionless;
//! * the color-center ("XV") frame has z along the ⟨111⟩ symmetry axis and x
//!   in the plane of z and one X–C bond.

use nalgebra::{Matrix3, Matrix6, Vector3, Vector6};
use serde::{Deserialize, Serialize};

use crate::error::{require_finite, ValidationError};
use crate::hamiltonian::OrbitalField;
use crate::units;

/// Coordinate frame a tensor is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// Cubic crystal axes.
    #[default]
    Diamond,
    /// Color-center axes.
    Xv,
}

macro_rules! symmetric_tensor {
    ($name:ident, $what:literal) => {
        #[doc = concat!("Symmetric 3×3 ", $what, " tensor with a frame tag.")]
        #[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
        pub struct $name {
            components: [[f64; 3]; 3],
            pub frame: Frame,
        }

        impl $name {
            /// Builds a tensor, rejecting non-finite or asymmetric input
            /// (|a_ij − a_ji| > 1e-12·max|a|).
            pub fn new(m: [[f64; 3]; 3], frame: Frame) -> Result<Self, ValidationError> {
                let scale = m.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs()));
                for i in 0..3 {
                    for j in 0..3 {
                        require_finite(&format!("components[{i}][{j}]"), m[i][j])?;
                        if (m[i][j] - m[j][i]).abs() > 1e-12 * scale {
                            return Err(ValidationError::new(
                                format!("components[{i}][{j}]"),
                                "tensor must be symmetric",
                            ));
                        }
                    }
                }
                Ok(Self::from_matrix(Matrix3::from_fn(|i, j| m[i][j]), frame))
            }

            /// Symmetrizes `m` exactly.
            pub fn from_matrix(m: Matrix3<f64>, frame: Frame) -> Self {
                let s = (m + m.transpose()) * 0.5;
                let mut components = [[0.0; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        components[i][j] = if i <= j { s[(i, j)] } else { s[(j, i)] };
                    }
                }
                $name { components, frame }
            }

            pub fn zero(frame: Frame) -> Self {
                $name {
                    components: [[0.0; 3]; 3],
                    frame,
                }
            }

            pub fn components(&self) -> [[f64; 3]; 3] {
                self.components
            }

            pub fn get(&self, i: usize, j: usize) -> f64 {
                self.components[i][j]
            }

            pub fn matrix(&self) -> Matrix3<f64> {
                Matrix3::from_fn(|i, j| self.components[i][j])
            }

            pub fn trace(&self) -> f64 {
                (0..3).map(|i| self.components[i][i]).sum()
            }

            /// Voigt vector (xx, yy, zz, xy, yz, zx).
            pub fn voigt(&self) -> Vector6<f64> {
                let c = &self.components;
                Vector6::new(c[0][0], c[1][1], c[2][2], c[0][1], c[1][2], c[2][0])
            }

            pub fn from_voigt(v: Vector6<f64>, frame: Frame) -> Self {
                Self::from_matrix(
                    Matrix3::new(v[0], v[3], v[5], v[3], v[1], v[4], v[5], v[4], v[2]),
                    frame,
                )
            }

            /// T′ = R T Rᵀ expressed in `to`.
            pub fn rotated(&self, rotation: &Rotation, to: Frame) -> Self {
                let r = rotation.matrix();
                Self::from_matrix(r * self.matrix() * r.transpose(), to)
            }

            pub fn scaled(&self, a: f64) -> Self {
                Self::from_matrix(self.matrix() * a, self.frame)
            }
        }
    };
}

symmetric_tensor!(StressTensor, "stress (GPa)");
symmetric_tensor!(StrainTensor, "strain (dimensionless)");

/// Proper orthogonal 3×3 rotation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    rows: [[f64; 3]; 3],
}

impl Rotation {
    /// Validates RᵀR = I to 1e-12 and det R = +1.
    pub fn new(rows: [[f64; 3]; 3]) -> Result<Self, ValidationError> {
        let r = Matrix3::from_fn(|i, j| rows[i][j]);
        if !r.iter().all(|x| x.is_finite()) {
            return Err(ValidationError::new("rotation", "entries must be finite"));
        }
        let defect = (r.transpose() * r - Matrix3::identity()).amax();
        if defect > 1e-12 {
            return Err(ValidationError::new(
                "rotation",
                format!("matrix is not orthogonal (‖RᵀR − I‖_max = {defect:.2e})"),
            ));
        }
        if r.determinant() < 0.0 {
            return Err(ValidationError::new("rotation", "matrix is a reflection (det = −1)"));
        }
        Ok(Rotation { rows })
    }

    pub fn identity() -> Self {
        Rotation {
            rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| self.rows[i][j])
    }

    pub fn transpose(&self) -> Self {
        let m = self.matrix().transpose();
        Rotation {
            rows: [
                [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
                [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
                [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
            ],
        }
    }

    /// Rotation by `angle` about a unit axis (Rodrigues).
    pub fn about_axis(axis: [f64; 3], angle: f64) -> Result<Self, ValidationError> {
        let a = unit_vector(axis, "axis")?;
        let k = Matrix3::new(0.0, -a[2], a[1], a[2], 0.0, -a[0], -a[1], a[0], 0.0);
        let m = Matrix3::identity() + k * angle.sin() + k * k * (1.0 - angle.cos());
        Ok(Rotation {
            rows: [
                [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
                [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
                [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
            ],
        })
    }
}

/// Normalizes a direction (e.g. Miller indices), rejecting zero or
/// non-finite vectors.
pub fn unit_vector(v: [f64; 3], field: &str) -> Result<Vector3<f64>, ValidationError> {
    let v = Vector3::from(v);
    let n = v.norm();
    if !n.is_finite() || n == 0.0 {
        return Err(ValidationError::new(field, "direction must be finite and nonzero"));
    }
    Ok(v / n)
}

/// Rotates a tensor: T′ = R T Rᵀ (keeps the frame tag of the input).
pub fn rotate_frame(t: &StressTensor, rotation: &Rotation) -> StressTensor {
    t.rotated(rotation, t.frame)
}

/// Uniaxial stress σ_ij = S α_i α_j along a unit direction α.
pub fn uniaxial_stress(magnitude_gpa: f64, direction: [f64; 3], frame: Frame) -> Result<StressTensor, ValidationError> {
    require_finite("magnitude_gpa", magnitude_gpa)?;
    let a = Vector3::from(direction);
    if !a.iter().all(|x| x.is_finite()) {
        return Err(ValidationError::new("direction", "entries must be finite"));
    }
    if (a.norm() - 1.0).abs() > 1e-12 {
        return Err(ValidationError::new(
            "direction",
            format!("must be a unit vector (|α| = {})", a.norm()),
        ));
    }
    Ok(StressTensor::from_matrix(a * a.transpose() * magnitude_gpa, frame))
}

/// Cubic elastic constants (GPa).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicElastic {
    pub c11: f64,
    pub c12: f64,
    pub c44: f64,
}

impl Default for CubicElastic {
    /// Diamond: 1075, 139, 567 GPa.
    fn default() -> Self {
        let (c11, c12, c44) = units::DIAMOND_STIFFNESS_GPA;
        CubicElastic { c11, c12, c44 }
    }
}

impl CubicElastic {
    /// The 6×6 matrix with C11/C12 normal block and C44 on the shear diagonal.
    pub fn matrix(&self) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = if i == j { self.c11 } else { self.c12 };
            }
            m[(i + 3, i + 3)] = self.c44;
        }
        m
    }

    /// Transverse-to-longitudinal strain ratio under uniaxial normal stress,
    /// −C12/(C11 + C12).
    pub fn poisson_ratio(&self) -> f64 {
        -self.c12 / (self.c11 + self.c12)
    }
}

/// How the 6×6 cubic matrix relates stress to strain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum HookeConvention {
    /// Treat the matrix as a stiffness: σ = C·ε with engineering shear
    /// (σ_ij = 2 C44 ε_ij), i.e. ε = C⁻¹σ. Physically meaningful; strain per GPa.
    #[default]
    Compliance,
    /// Apply the matrix literally, ε_voigt = C·σ_voigt. The numbers carry
    /// units of GPa² and are only meaningful as ratios.
    AsPrinted,
}

/// Generalized Hooke's law for a cubic crystal; σ must be in the crystal frame.
pub fn hooke_cubic(
    stress: &StressTensor,
    elastic: &CubicElastic,
    convention: HookeConvention,
) -> Result<StrainTensor, ValidationError> {
    if stress.frame != Frame::Diamond {
        return Err(ValidationError::new("frame", "Hooke's law needs stress in the diamond frame"));
    }
    for (n, v) in [("c11", elastic.c11), ("c12", elastic.c12), ("c44", elastic.c44)] {
        require_finite(n, v)?;
    }
    let s = stress.voigt();
    let e = match convention {
        HookeConvention::AsPrinted => elastic.matrix() * s,
        HookeConvention::Compliance => {
            let (a, b) = (elastic.c11, elastic.c12);
            let det = (a - b) * (a + 2.0 * b);
            if det.abs() < 1e-300 || elastic.c44 == 0.0 {
                return Err(ValidationError::new("elastic", "stiffness matrix is singular"));
            }
            // Inverse of the normal block [[a,b,b],[b,a,b],[b,b,a]].
            let s11 = (a + b) / det;
            let s12 = -b / det;
            let n = |i: usize| s11 * s[i] + s12 * (s[0] + s[1] + s[2] - s[i]);
            Vector6::new(
                n(0),
                n(1),
                n(2),
                s[3] / (2.0 * elastic.c44),
                s[4] / (2.0 * elastic.c44),
                s[5] / (2.0 * elastic.c44),
            )
        }
    };
    Ok(StrainTensor::from_voigt(e, Frame::Diamond))
}

/// The four ⟨111⟩ orientations of the color-center axis in the crystal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XvOrientation {
    /// z ∥ [111].
    Axis111,
    /// z ∥ [1 −1 −1].
    Axis1M1M1,
    /// z ∥ [−1 1 −1].
    AxisM11M1,
    /// z ∥ [−1 −1 1].
    AxisM1M11,
}

impl XvOrientation {
    pub const ALL: [XvOrientation; 4] = [
        XvOrientation::Axis111,
        XvOrientation::Axis1M1M1,
        XvOrientation::AxisM11M1,
        XvOrientation::AxisM1M11,
    ];

    /// Axis as signed Miller indices.
    pub fn axis(self) -> [f64; 3] {
        match self {
            XvOrientation::Axis111 => [1.0, 1.0, 1.0],
            XvOrientation::Axis1M1M1 => [1.0, -1.0, -1.0],
            XvOrientation::AxisM11M1 => [-1.0, 1.0, -1.0],
            XvOrientation::AxisM1M11 => [-1.0, -1.0, 1.0],
        }
    }

    /// Rotation taking crystal-frame components to color-center-frame
    /// components. Rows are the XV axes in crystal coordinates: z along the
    /// axis (a, b, c), x along the perpendicular part of the bond direction
    /// (a, −b, −c), y = z × x.
    pub fn rotation(self) -> Rotation {
        let [a, b, c] = self.axis();
        let z = Vector3::new(a, b, c).normalize();
        let bond = Vector3::new(a, -b, -c);
        let x = (bond - z * z.dot(&bond)).normalize();
        frame_rotation(x, z)
    }
}

fn frame_rotation(x: Vector3<f64>, z: Vector3<f64>) -> Rotation {
    let y = z.cross(&x);
    Rotation {
        rows: [[x[0], x[1], x[2]], [y[0], y[1], y[2]], [z[0], z[1], z[2]]],
    }
}

/// Color-center frame from explicit z and y axes given in crystal
/// coordinates (need not be normalized; must be orthogonal).
pub fn xv_frame_from_axes(z_axis: [f64; 3], y_axis: [f64; 3]) -> Result<Rotation, ValidationError> {
    let z = unit_vector(z_axis, "z_axis")?;
    let y = unit_vector(y_axis, "y_axis")?;
    if z.dot(&y).abs() > 1e-12 {
        return Err(ValidationError::new("y_axis", "must be perpendicular to z_axis"));
    }
    Ok(frame_rotation(y.cross(&z), z))
}

/// Transverse orientation on a [110]-oriented cantilever: z ∥ [1 −1 1],
/// y ∥ [110] (the cantilever length).
pub fn cantilever_transverse_frame() -> Rotation {
    xv_frame_from_axes([1.0, -1.0, 1.0], [1.0, 1.0, 0.0]).expect("axes are orthogonal")
}

/// Converts a strain tensor from the crystal frame to the color-center frame.
pub fn strain_to_xv(strain: &StrainTensor, rotation: &Rotation) -> Result<StrainTensor, ValidationError> {
    match strain.frame {
        Frame::Diamond => Ok(strain.rotated(rotation, Frame::Xv)),
        Frame::Xv => Ok(*strain),
    }
}

/// Generalized displacement amplitudes (Å) of the carbon cage under strain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrainDisplacements {
    /// Breathing (A₁) amplitude.
    pub q0_ang: f64,
    /// E-symmetric amplitude, x component.
    pub qx_ang: f64,
    /// E-symmetric amplitude, y component.
    pub qy_ang: f64,
}

/// Projects an XV-frame strain onto the symmetry-adapted displacement
/// directions of the six carbons:
///
/// Q₀ = −(25/(4√114)) a₀ ε_zz − (4/√114) a₀ (ε_xx + ε_yy),
/// Q_x = −(2/√57) a₀ (ε_xx − ε_yy) − (10/√114) a₀ ε_xz,
/// Q_y = (4/√57) a₀ ε_xy − (10/√114) a₀ ε_yz.
pub fn strain_to_q(strain: &StrainTensor, a0_ang: f64) -> Result<StrainDisplacements, ValidationError> {
    if strain.frame != Frame::Xv {
        return Err(ValidationError::new("frame", "strain must be in the color-center frame"));
    }
    require_finite("a0_ang", a0_ang)?;
    let e = |i, j| strain.get(i, j);
    let s57 = 57f64.sqrt();
    let s114 = 114f64.sqrt();
    Ok(StrainDisplacements {
        q0_ang: a0_ang * (-25.0 / (4.0 * s114) * e(2, 2) - 4.0 / s114 * (e(0, 0) + e(1, 1))),
        qx_ang: a0_ang * (-2.0 / s57 * (e(0, 0) - e(1, 1)) - 10.0 / s114 * e(0, 2)),
        qy_ang: a0_ang * (4.0 / s57 * e(0, 1) - 10.0 / s114 * e(1, 2)),
    })
}

/// Equilibrium positions (Å) of the split-vacancy cluster in the XV frame:
/// the interstitial X atom at the origin, then the three upper and three
/// lower carbons.
pub fn cluster_positions(a0_ang: f64) -> [[f64; 3]; 7] {
    let (r6, r2, h) = (6f64.sqrt(), 2f64.sqrt(), 5.0 / (8.0 * 3f64.sqrt()));
    let upper = [
        [1.0 / r6, 0.0, h],
        [-0.5 / r6, 0.5 / r2, h],
        [-0.5 / r6, -0.5 / r2, h],
    ];
    let mut out = [[0.0; 3]; 7];
    for (k, p) in upper.iter().enumerate() {
        for i in 0..3 {
            out[1 + k][i] = a0_ang * p[i];
            out[4 + k][i] = -a0_ang * p[i];
        }
    }
    out
}

/// Displacements u = ε·r (Å) of the seven cluster atoms for an XV-frame strain.
pub fn cluster_displacements(strain: &StrainTensor, a0_ang: f64) -> Result<[[f64; 3]; 7], ValidationError> {
    if strain.frame != Frame::Xv {
        return Err(ValidationError::new("frame", "strain must be in the color-center frame"));
    }
    let m = strain.matrix();
    let mut out = [[0.0; 3]; 7];
    for (k, r) in cluster_positions(a0_ang).iter().enumerate() {
        let u = m * Vector3::from(*r);
        out[k] = [u[0], u[1], u[2]];
    }
    Ok(out)
}

/// Strain susceptibilities (meV per unit strain) and the underlying bond
/// forces (eV/Å).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Susceptibilities {
    pub t_par_mev: f64,
    pub t_perp_mev: f64,
    pub d_mev: f64,
    pub f_mev: f64,
    pub f0_ev_per_ang: f64,
    pub f_ev_per_ang: f64,
}

impl Susceptibilities {
    /// (t∥, t⊥, d, f) in PHz per unit strain.
    pub fn phz(&self) -> [f64; 4] {
        [self.t_par_mev, self.t_perp_mev, self.d_mev, self.f_mev].map(|x| x * units::PHZ_PER_MEV)
    }

    /// Orbital perturbation (meV) produced by an XV-frame strain:
    /// identity t∥ε_zz + t⊥(ε_xx+ε_yy), τ_x −[d(ε_xx−ε_yy) + fε_xz],
    /// τ_y 2dε_xy − fε_yz.
    pub fn orbital_field(&self, strain: &StrainTensor) -> Result<OrbitalField, ValidationError> {
        if strain.frame != Frame::Xv {
            return Err(ValidationError::new("frame", "strain must be in the color-center frame"));
        }
        let e = |i, j| strain.get(i, j);
        Ok(OrbitalField {
            identity: self.t_par_mev * e(2, 2) + self.t_perp_mev * (e(0, 0) + e(1, 1)),
            tau_x: -(self.d_mev * (e(0, 0) - e(1, 1)) + self.f_mev * e(0, 2)),
            tau_y: 2.0 * self.d_mev * e(0, 1) - self.f_mev * e(1, 2),
            tau_z: 0.0,
        })
    }
}

/// Susceptibilities from the bond forces F₀ (breathing) and F (E-symmetric):
/// t∥ = −25/(4√114) F₀a₀, t⊥ = −4/√114 F₀a₀, d = 2/√57 Fa₀, f = 10/√114 Fa₀.
pub fn susceptibilities_from_force(f0_ev_per_ang: f64, f_ev_per_ang: f64, a0_ang: f64) -> Result<Susceptibilities, ValidationError> {
    for (n, v) in [("f0", f0_ev_per_ang), ("f", f_ev_per_ang), ("a0_ang", a0_ang)] {
        require_finite(n, v)?;
    }
    if f0_ev_per_ang < 0.0 || f_ev_per_ang < 0.0 {
        return Err(ValidationError::new("f", "bond forces must be ≥ 0"));
    }
    let (s57, s114) = (57f64.sqrt(), 114f64.sqrt());
    let mev = 1e3 * a0_ang;
    Ok(Susceptibilities {
        t_par_mev: -25.0 / (4.0 * s114) * f0_ev_per_ang * mev,
        t_perp_mev: -4.0 / s114 * f0_ev_per_ang * mev,
        d_mev: 2.0 / s57 * f_ev_per_ang * mev,
        f_mev: 10.0 / s114 * f_ev_per_ang * mev,
        f0_ev_per_ang,
        f_ev_per_ang,
    })
}

/// Susceptibilities implied by a manifold's vibronic coupling: F from
/// E_JT = F²/(2μω²) with μ the carbon mass, and F₀ = √2 F.
pub fn susceptibilities_from_params(params: &crate::params::ManifoldParams) -> Susceptibilities {
    let f = params.force_ev_per_ang(units::CARBON_MASS_DA);
    susceptibilities_from_force(2f64.sqrt() * f, f, units::DIAMOND_LATTICE_CONSTANT_ANG)
        .expect("validated parameters give finite forces")
}

/// Cantilever and electrode dimensions (μm).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CantileverGeometry {
    /// Distance from the joint to the far end of the electrode.
    pub x_um: f64,
    /// Distance from the joint to the near end of the electrode.
    pub l_um: f64,
    /// Electrode width.
    pub y_um: f64,
    /// Cantilever thickness.
    pub z_um: f64,
    /// Electrode height above the substrate electrode.
    pub h_um: f64,
}

impl Default for CantileverGeometry {
    /// Triangular-prism device approximated as a rectangular prism.
    fn default() -> Self {
        CantileverGeometry {
            x_um: 29.0,
            l_um: 22.6,
            y_um: 2.0,
            z_um: 1.6,
            h_um: 2.4,
        }
    }
}

impl CantileverGeometry {
    pub fn validate(&self) -> Result<(), ValidationError> {
        for (n, v) in [
            ("x_um", self.x_um),
            ("l_um", self.l_um),
            ("y_um", self.y_um),
            ("z_um", self.z_um),
            ("h_um", self.h_um),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ValidationError::new(n, "must be finite and > 0"));
            }
        }
        if self.x_um <= self.l_um {
            return Err(ValidationError::new("x_um", "electrode must extend beyond l (x > l)"));
        }
        if self.h_um <= self.y_um / 2.0 {
            return Err(ValidationError::new("h_um", "field model requires h > y/2"));
        }
        Ok(())
    }
}

/// Cantilever strain at the joint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CantileverStrain {
    pub voltage_v: f64,
    pub eps_xx: f64,
    /// Transverse response −C12/(C11+C12)·ε_xx.
    pub eps_yy: f64,
    /// |ε_xx − ε_yy|.
    pub anisotropy: f64,
}

/// Voltage → strain for a rectangular cantilever pulled by an electrode:
/// ε_xx = (4ε₀/C11)(x²−l²)/(y²z²[½ + ln(4h/y − 1)/π]²)·V².
///
/// With `bent = true` the electrode height is corrected once to
/// h′ = h − ½ε_xx(l + x).
pub fn cantilever_strain(
    voltage_v: f64,
    geometry: &CantileverGeometry,
    elastic: &CubicElastic,
    bent: bool,
) -> Result<CantileverStrain, ValidationError> {
    require_finite("voltage_v", voltage_v)?;
    geometry.validate()?;
    let eval = |h_um: f64| {
        let um = 1e-6;
        let (x, l, y, z) = (geometry.x_um * um, geometry.l_um * um, geometry.y_um * um, geometry.z_um * um);
        let shape = 0.5 + (4.0 * h_um / geometry.y_um - 1.0).ln() / std::f64::consts::PI;
        4.0 * units::VACUUM_PERMITTIVITY / (elastic.c11 * 1e9) * (x * x - l * l) / (y * y * z * z * shape * shape)
            * voltage_v
            * voltage_v
    };
    let mut eps_xx = eval(geometry.h_um);
    if bent {
        let h = geometry.h_um - 0.5 * eps_xx * (geometry.l_um + geometry.x_um);
        if h <= geometry.y_um / 2.0 {
            return Err(ValidationError::new("voltage_v", "bent electrode violates h > y/2"));
        }
        eps_xx = eval(h);
    }
    let eps_yy = elastic.poisson_ratio() * eps_xx;
    Ok(CantileverStrain {
        voltage_v,
        eps_xx,
        eps_yy,
        anisotropy: (eps_xx - eps_yy).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniaxial_trace_is_magnitude() {
        let r = 0.5f64.sqrt();
        let s = uniaxial_stress(1.0, [r, r, 0.0], Frame::Diamond).unwrap();
        assert!((s.get(0, 1) - 0.5).abs() < 1e-15);
        assert!((s.trace() - 1.0).abs() < 1e-15);
        assert!(uniaxial_stress(1.0, [1.0, 1.0, 0.0], Frame::Diamond).is_err());
    }

    #[test]
    fn compliance_transverse_ratio() {
        let s = uniaxial_stress(1.0, [0.0, 1.0, 0.0], Frame::Diamond).unwrap();
        let e = hooke_cubic(&s, &CubicElastic::default(), HookeConvention::Compliance).unwrap();
        assert!((e.get(0, 0) / e.get(1, 1) - (-139.0 / 1214.0)).abs() < 1e-12);
        // Stiffness round trip.
        let c = CubicElastic::default().matrix();
        let mut eng = e.voigt();
        for k in 3..6 {
            eng[k] *= 2.0;
        }
        assert!((c * eng - s.voigt()).amax() < 1e-12);
    }

    #[test]
    fn orientations_are_proper_rotations() {
        for o in XvOrientation::ALL {
            let r = o.rotation();
            assert!(Rotation::new(r.rows).is_ok());
        }
        let r = cantilever_transverse_frame().matrix();
        let y = r.row(1);
        assert!((y[0] - 0.5f64.sqrt()).abs() < 1e-15 && (y[1] - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_geometry() {
        let g = CantileverGeometry {
            h_um: 0.5,
            ..Default::default()
        };
        assert!(cantilever_strain(10.0, &g, &CubicElastic::default(), false).is_err());
        let g = CantileverGeometry {
            x_um: 10.0,
            ..Default::default()
        };
        assert!(cantilever_strain(10.0, &g, &CubicElastic::default(), false).is_err());
    }
}
