//! Band edges of the Lamé and associated Lamé periodic potentials.
//!
//! The analytic side follows the quantum Hamilton-Jacobi route: the logarithmic
//! derivative of a band-edge eigenfunction, written in the variable `t = sn x`,
//! is a rational function whose fixed-pole residues and behaviour at infinity
//! fix the eigenfunction form `cn^α dn^β P_n(sn)`. The unknown polynomial then
//! satisfies a linear ODE that reduces to a small matrix pencil in the energy.
//!
//! Every analytic result can be checked against [`oracle`], a plane-wave
//! (Hill-matrix) Bloch solver that knows nothing about elliptic residues.
//!
//! ```
//! use bandedge::{qhj, Family, PotentialSpec};
//!
//! let spec = PotentialSpec::new(Family::Lame, 2, 0.5).unwrap().with_susy_offset();
//! let spectrum = qhj::full_spectrum(&spec).unwrap();
//! assert_eq!(spectrum.solutions.len(), 5);
//! assert!(spectrum.energies()[0].abs() < 1e-12);
//! ```

pub mod cli;
pub mod elliptic;
pub mod error;
pub mod oracle;
pub mod potentials;
pub mod qhj;

mod poly;

pub use elliptic::{complete_k, jacobi, JacobiValues, Modulus};
pub use error::{Error, Result};
pub use oracle::{EdgePhase, VerificationReport};
pub use potentials::{Family, PotentialSpec, SusyOffset};
pub use qhj::{BandEdgeSolution, BandEdgeSpectrum, SolutionFamily};
