//! Verification engine for cyclic (q+1)-arcs in PG(3, 2^m).
//!
//! The crate is organised bottom-up:
//!
//! - [`gf`]: the field tower GF(2) ⊂ GF(2^m) ⊂ GF(2^{2m}).
//! - [`proj3`]: points and projectivities of PG(3, K), Casse–Glynn arcs,
//!   cyclic monomial models, the lifted PGL(2, q) action and Singer elements.
//! - [`exponent`]: affine equivalence of exponent multisets modulo n.
//! - [`bch`]: the BCH family C(q, q+1, 3, h), its exact minimum distance and
//!   the census comparing brute force against the congruence criterion.
//! - [`selfcheck`]: every invariant suite for a given m, used by the CLI.

pub mod bch;
pub mod error;
pub mod exponent;
pub mod gf;
pub mod proj3;
pub mod selfcheck;

pub use error::{Error, Result};
