//! Poisson bivectors, their log-symplectic data and the operators built from them.

pub mod cokernel;
pub mod fixtures;
pub mod operators;
pub mod rg;
pub mod structure;

pub use cokernel::{CokernelReport, CokernelSlice, Grading, SpanReport};
pub use operators::{square_commutes, Strand};
pub use rg::{hypothesis_star_check, value_at_origin, RgReport, StarReport};
pub use structure::{make_poisson, ConormalData, PoissonStructure};
