//! Graded slices of the log, minor log, foliated, simplicial and Poisson complexes.

pub mod build;
pub mod checks;
pub mod family;
pub mod report;
pub mod simplicial;
pub mod slice;

pub use build::{build_complex, build_complex_with, ModeRequest};
pub use checks::{
    augmented_generators, augmented_level, augmented_minor_log_build, foliated_complex_cohomology, minor_log_homotopy_check,
    theta_log_generator_check, theta_log_generators, AugmentedReport, GeneratorReport, GradedPiece, ThetaGenerator,
};
pub use family::{euler_field, ComplexFamily};
pub use report::{slice_cohomology, stalk_cohomology, CohomologyReport, DegreeTotal, SliceDim};
pub use simplicial::{simplicial_exactness, simplicial_rho, stratum_chart, SimplicialReport, Tuple};
pub use slice::{GradedSliceComplex, GradingMode, SliceComplex, Term, TermSpace};
