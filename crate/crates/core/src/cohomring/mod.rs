//! The truncated cohomology ring `Q[P]/(P^{n+1})`, cohomology-valued series
//! with explicit `t` dependence, and differential operators in `ħ d/dt` and
//! `e^t`.

mod diffop;
mod nilpotent;
mod relation;
mod tpoly;

pub use diffop::DiffOp;
pub use nilpotent::NilpotentP;
pub use relation::RelationPoly;
pub use tpoly::{CohomSeries, TPoly};
