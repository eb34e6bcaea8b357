//! Exact lattice and group-ring arithmetic.

pub mod kernel;
pub mod knot;
pub mod lattice;
pub mod laurent;

pub use kernel::{determinant, integer_kernel, rational_inverse, rational_rank};
pub use knot::{alexander_sub_square, alexander_torus_knot, knot_by_name, FiberedKnot};
pub use lattice::{chain_intersection_matrix, ClassVec, IntLattice};
pub use laurent::LaurentElem;
