//! Vibronic model of the group-IV vacancy color centers in diamond
//! (SiV⁻, GeV⁻, SnV⁻, PbV⁻).
//!
//! The crate builds the E ⊗ e dynamic Jahn–Teller Hamiltonian with
//! spin–orbit coupling in a truncated two-dimensional oscillator basis,
//! diagonalizes it exactly, and derives quenching factors, strain and
//! electric/magnetic field responses, and optical spectra from the
//! eigenstates.
//!
//! ```
//! use vibronic::{params::{ManifoldParams, Species, Manifold}, solver::solve_h0};
//!
//! let p = ManifoldParams::bundled(Species::SnV, Manifold::Ground);
//! let sol = solve_h0(&p, 20).unwrap();
//! let e = sol.energies();
//! // Lowest two Kramers doublets are split by the quenched spin–orbit gap.
//! let gap = e[2] - e[0];
//! assert!((gap - 3.82).abs() < 0.01);
//! ```

pub mod basis;
pub mod bond;
pub mod elasticity;
pub mod error;
pub mod fields;
pub mod hamiltonian;
pub mod microscopic;
pub mod operator;
pub mod optics;
pub mod params;
pub mod pipeline;
pub mod quench;
pub mod reference;
pub mod scubed;
pub mod solver;
pub mod units;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

pub use error::{Error, NumericalError, Result, ValidationError};

/// The guide in `book/` is compiled and run as part of the doc-tests so
/// that its examples stay in sync with the library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub struct $name;
        };
    }
    chapter!(Introduction, "introduction.md");
    chapter!(Model, "model.md");
    chapter!(Quench, "quench.md");
    chapter!(Strain, "strain.md");
    chapter!(Fields, "fields.md");
    chapter!(Optics, "optics.md");
    chapter!(Cli, "cli.md");
    chapter!(Service, "service.md");
    chapter!(Reference, "reference.md");
}
