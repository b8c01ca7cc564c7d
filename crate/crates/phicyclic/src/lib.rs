//! Generalized cyclic codes, ideal matrices, q-ary lattices, and a
//! generalized NTRU encryption scheme, all over the quotient rings
//! F_q[x]/<phi(x)> and Z[x]/<phi(x)> for a monic phi with nonzero
//! constant term.
//!
//! Everything on the primary paths is exact: finite-field arithmetic,
//! arbitrary-precision integers, fraction-free elimination. Floating
//! point appears only inside clearly marked numeric cross-checks.

pub mod error;
pub mod field;
pub mod idealmat;
pub mod matrix;
pub mod ntru;
pub mod oracles;
pub mod phicode;
pub mod poly;
pub mod qlattice;
pub mod rng;

pub use error::{Error, Result};
