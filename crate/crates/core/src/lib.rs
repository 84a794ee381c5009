//! Exact-arithmetic engine for the hypergeometric side of mirror symmetry on
//! projective complete intersections `X ⊂ CP^n` cut out by equations of
//! degrees `(l_1, …, l_r)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: rationals, polynomials and rational functions in `ħ`, and
//!   truncated power series over any coefficient ring.
//! * [`cohomring`]: the nilpotent ring `Q[P]/(P^{n+1})`, cohomology-valued
//!   series with explicit `t` dependence, and differential operators in
//!   `ħ d/dt` and `e^t`.
//! * [`hypergeom`]: the hypergeometric classes, non-equivariant and
//!   equivariant.
//! * [`pfcheck`]: Picard–Fuchs operators, annihilation checks and
//!   quantum-cohomology relations.
//! * [`mirror`]: mirror map, Yukawa coupling and instanton numbers.
//! * [`locrec`]: fixed-point recursions, the polynomiality test, the
//!   coordinate transformations linking the recursion solution to the
//!   hypergeometric series, and a localization count of lines.

pub mod cohomring;
pub mod error;
pub mod exactalg;
pub mod hypergeom;
pub mod locrec;
pub mod mirror;
pub mod pfcheck;

pub use cohomring::{CohomSeries, DiffOp, NilpotentP, TPoly};
pub use error::{Error, Result};
pub use exactalg::{BigRational, HPoly, RatFuncH, Ring, TruncSeries};
pub use hypergeom::{CISpec, EquivContext, Regime, TwistedSeries};
pub use locrec::{InitialCondition, PolynomialityReport, ZSeries};
pub use mirror::{InstantonTable, MirrorFrame};
pub use pfcheck::RelationPoly;
