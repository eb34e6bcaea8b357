//! Builders and operators acting on manifold records.

pub mod builders;
pub mod expr;
pub mod fiber_sum;
pub mod surgery;

pub use builders::*;
pub use fiber_sum::{fiber_sum, rim_tori_rank, ComplementarityHypothesis, FiberSumOptions, VanishingSpec};
pub use surgery::{knot_surgery, surgery_formula, torus_surgery};
pub use expr::{eval_expr, KnotSpec, ManifoldExpr, ModelParams};
