//! Exact-arithmetic kernels for the Witten genus and its secondary bordism
//! invariants: truncated q-expansions over arbitrary-precision rationals,
//! level-one modular forms with an integral echelon basis, the obstruction
//! groups receiving the secondary invariants, multiplicative sequences in
//! Pontrjagin variables, characteristic-number evaluation, and the additive
//! structure of the spin bordism groups through degree 127.
//!
//! Everything is computed exactly; no floating point appears anywhere.
//! Values are immutable after construction and all operations are pure, so
//! they can be shared freely across threads. With the default `parallel`
//! feature the data-parallel inner loops (series convolution, table
//! validation, the acceptance runner) are spread over a rayon pool; without
//! it the same code runs sequentially with identical results.

pub mod acceptance;
pub mod error;
mod exec;
pub mod genera;
pub mod invariants;
pub mod modforms;
pub mod partition;
pub mod qseries;
pub mod rat;
pub mod spinbordism;
pub mod tgroup;

pub use error::{Error, Result};
pub use partition::Partition;
pub use qseries::QSeries;
pub use rat::Rat;
pub use tgroup::TClass;
