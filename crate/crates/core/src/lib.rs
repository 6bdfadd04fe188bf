//! Non-Hermitian, PT-symmetric transformed harmonic oscillator in a truncated
//! Fock basis.
//!
//! The oscillator `H = [(p + iβx)² + (x + iλp)²] / (2(1 + λβ))` is assembled
//! from ladder matrices ([`fock`]), parameterized and split into diagonal and
//! off-diagonal parts ([`model`]), diagonalized with a dense shifted-QR solver
//! ([`eigen`]), analysed with Rayleigh–Schrödinger sums and series eigenvectors
//! ([`perturbation`]), and evaluated in position space ([`wavefunction`]).
//! The parameter columns of the reference tables live in [`tables`].

pub mod eigen;
pub mod error;
pub mod fock;
pub mod model;
pub mod perturbation;
pub mod tables;
pub mod wavefunction;

pub use num_complex::Complex64 as C64;

pub use eigen::{
    certify, eigenvector_inverse_iteration, hessenberg_reduce, qr_eigenvalues,
    triangular_fast_path, InverseIterator, QrOptions, SolveMethod, SpectralReport,
};
pub use error::{Error, Result};
pub use fock::{
    build_ladder, build_momentum, build_position, commutator, dense_axpy, dense_product,
    FockBasisSpec, OperatorMatrix,
};
pub use model::{
    build_hamiltonian, build_hamiltonian_with, build_transformed_ops, closed_form_spectrum,
    coefficients, omega1, omega2, validate, CoefficientSet, FrequencyChoice, FrequencyMode,
    QuadraticForm, TransformParams, Truncation,
};
pub use perturbation::{
    correction, eigen_residual, hn_element, overlap_identities, perturbation_report,
    series_coefficients, OverlapIdentities, PerturbationReport, SeriesWarning,
    SeriesWavefunction,
};
pub use wavefunction::{
    basis_function, decay_report, evaluate_basis, evaluate_series, hermite, quadrature_overlap,
    DecayReport, EvaluatedWavefunction, RealGrid, WaveKind,
};
