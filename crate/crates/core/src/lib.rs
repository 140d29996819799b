//! Exact computations in quantized nilradicals of parabolic subalgebras of
//! `sl(n)` and in the quantum coordinate rings they embed into.

pub mod braid;
pub mod coinv;
pub mod error;
pub mod freealg;
pub mod isomaps;
pub mod lin;
pub mod linalg;
pub mod nilrad;
pub mod oracle;
pub mod qcoord;
pub mod report;
pub mod scalars;
pub mod uqtri;
pub mod weyl;

pub use error::{Error, Result};
pub use scalars::{LaurentPoly, RatFunc};
