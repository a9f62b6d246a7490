//! Exact polynomial arithmetic and the exterior algebra of log forms.

pub mod basis;
pub mod chart;
pub mod forms;
pub mod linalg;
pub mod parser;
pub mod poly;
pub mod random;
pub mod ratfunc;

pub use chart::{Chart, ChartRef};
pub use forms::{LogForm, LogMultiVec, WeightVector};
pub use poly::{q, qi, Mono, Poly, Q};
pub use ratfunc::RatFunc;
