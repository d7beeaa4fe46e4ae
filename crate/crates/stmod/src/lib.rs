//! Exact computations in the stable module category of the truncated
//! polynomial algebra `kG = k[t_1..t_r]/(t_i^p)` over a prime field.
//!
//! The crate builds finite truncations of the idempotent module attached to
//! a closed point of the support variety, computes syzygies and stable hom
//! spaces, models the graded endomorphism ring of the idempotent, and runs
//! the degree/leading-term, finite-generation, annihilator and realization
//! procedures on top of that machinery.
//!
//! Everything is exact arithmetic over `F_p` (`p` in `{2,3,5,7}` is the
//! supported range for the test corpus), fully deterministic, and pure:
//! values are immutable after construction and all operations are functions
//! of their inputs.

pub mod acceptance;
pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod fp;
pub mod gamma;
pub mod homcalc;
pub mod idempotent;
pub mod io;
pub mod points;
pub mod resolution;
pub mod stable;
pub mod variety;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
