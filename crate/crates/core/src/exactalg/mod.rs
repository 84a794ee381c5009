//! Exact coefficient rings and truncated power series.

mod hpoly;
mod modgcd;
mod ratfunc;
mod rational;
mod ring;
mod series;

pub use hpoly::HPoly;
pub use ratfunc::RatFuncH;
pub use rational::{factorial, format_rational, harmonic, int, parse_rational, rat};
pub use ring::Ring;
pub use series::TruncSeries;

pub use num_rational::BigRational;
