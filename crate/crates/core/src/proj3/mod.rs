//! Projective geometry over K = GF(2^{2m}): points of PG(3, K), arcs, the
//! Casse–Glynn arcs `A_e`, cyclic monomial models `M_a`, the lifted
//! PGL(2, q) action, and Singer elements.

mod arcs;
mod linalg;
mod singer;

pub(crate) use arcs::monomial_points;
pub use arcs::{
    casse_glynn, coordinate_permutations, cross_ratio, diagonal_element, diagonal_orbit, is_arc,
    lift, monomial_model, monomial_stabilizer, psi, spectral_exponents, swap_middle, swap_pairs,
    ArcReport, PermutationReport,
};
pub use linalg::{LinePoint, Matrix, Mobius2, Point, PointSet, ProjMatrix, ProjPoint};
pub use singer::{
    descent_witness, find_singer, is_singer, pgl2_base_elements, singer_align,
    singer_align_exhaustive, singer_diagonalize, singer_elements, DescentWitness, SingerAlignment,
    SingerData,
};
