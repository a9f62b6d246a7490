//! Exact exterior calculus on Poisson and log-symplectic coordinate charts.

pub mod algebra_core;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod hodge;
pub mod poisson;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/charts.md")]
    mod charts {}
    #[doc = include_str!("../../../book/src/poisson.md")]
    mod poisson {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/hodge.md")]
    mod hodge {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
