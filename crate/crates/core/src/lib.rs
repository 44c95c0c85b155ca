//! Simultaneous rotation-eigenvector pairs in an abstract 3-space, the unit
//! energy-momenta and chiral bispinors they generate, and path-dependent
//! phase integrals under gauge potentials.
//!
//! The crate is organized as a verification library: every construction
//! comes with residual functions, and [`report::run_verification`] drives
//! the full seeded suite behind the `spinpair verify` command.

pub mod checks;
pub mod dirac;
pub mod eigen;
pub mod error;
pub mod maps;
pub mod pairs;
pub mod pauli;
pub mod phase;
pub mod report;

pub use dirac::{
    dirac_residual_momentum, momentum_dirac_operator, solution_space_dimension, spin_down_partner,
    superpose, Bispinor,
};
pub use eigen::{eigenspinor_minus, eigenspinor_plus, rotation_eigen_residual};
pub use error::{Error, Result};
pub use maps::{fit_plane, loop_phase, phase_map, GridRange, LoopSpec, PhaseMapSpec};
pub use pairs::{
    boost_matrix, general_factor_matrix, pair_factor_residuals, solve_current_spin_constraints,
    CurrentSpinSolution, EigenPair, FactorParams, FourMomentum, PairFactorResiduals, Sign,
};
pub use pauli::{
    axis_dot_sigma, gamma, matrix_exp_series, pauli, rotation_matrix, DiracMatrix, FourSpinor,
    SpinMatrix, TwoSpinor, UnitAxis, DEFAULT_TOLERANCE,
};
pub use phase::{
    dirac_residual_coordinate, dirac_residual_coordinate_bispinor, gradient_theta,
    gradient_theta_implicit, path_phase, phase_derivative_residual, plane_wave_phase,
    CouplingMatrix, DerivativeMode, Event4, GaugeField, GaugeKind, Path4,
};
pub use report::{run_verification, OutputFormat, RunConfig, VerificationReport};

/// Complex scalar used throughout.
pub type Complex64 = num_complex::Complex64;
