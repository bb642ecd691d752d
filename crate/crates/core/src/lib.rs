//! q-deformed photon-added coherent states of the oscillator algebra
//! `A A† - q² A† A = 1`: state construction, exact normal ordering,
//! closed-form moments with a brute-force oracle, higher-order squeezing
//! (Hillery and Hong–Mandel types) and higher-order photon statistics.

pub mod error;
pub mod golden;
pub mod moments;
pub mod operator_words;
pub mod oracle;
pub mod photon_stats;
pub mod qalgebra;
pub mod qpoly;
pub mod series;
pub mod squeezing;
pub mod states;
pub mod sweep;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qalgebra::DeformationParam;
