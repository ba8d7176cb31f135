//! Band edges from the quantum Hamilton-Jacobi residue construction.
//!
//! The pipeline is
//! [`fixed_residues`] → [`enumerate_families`] → [`build_pencil`] →
//! [`band_edge_energies`] → [`assemble_solution`], wrapped up by
//! [`full_spectrum`].

mod chi;
mod families;
mod pencil;
mod residues;
mod solution;

pub use chi::ChiExpansion;
pub use families::{enumerate_families, families_for, Parity, SolutionFamily};
pub use pencil::{
    band_edge_energies, build_pencil, eigenpairs, null_vector, MatrixPencil, CANCELLATION_TOL,
    COMPLEX_TOL,
};
pub use residues::{
    fixed_residues, infinity_exponents, residue_quadratic_check, riccati_source, FixedPole,
    Residue, ResidueCandidates,
};
pub use solution::{
    assemble_solution, evaluate_wavefunction, full_spectrum, zero_census, BandEdgeSolution,
    BandEdgeSpectrum, ParityPolynomial, ZeroCensus, ZERO_SCAN_POINTS,
};
