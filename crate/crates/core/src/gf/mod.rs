//! Exact arithmetic in GF(2^m) and its quadratic extension GF(2^{2m}).

mod base;
mod poly;
mod spec;
mod tower;

pub use base::{BaseField, FqElem};
pub use poly::Poly;
pub use spec::{FieldSpec, MAX_DEGREE, MIN_DEGREE};
pub use tower::{Fq2Elem, Tower, UnitRoot};
