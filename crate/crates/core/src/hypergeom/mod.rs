//! Hypergeometric classes of complete intersections, non-equivariant and
//! equivariant.

mod classes;
mod equiv;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::factorial;

pub use classes::{build_i, build_i_raw, compute_f_g, with_exponential, FG};
pub use equiv::{build_sprime, hypergeometric_series, twisted_class, EquivContext, TwistedSeries};

/// Position of `Σ l_a` relative to `n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Regime {
    /// `Σ l_a < n`.
    Fano,
    /// `Σ l_a = n`.
    Boundary,
    /// `Σ l_a = n + 1`.
    CalabiYau,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Fano => "fano",
            Regime::Boundary => "boundary",
            Regime::CalabiYau => "calabi-yau",
        })
    }
}

/// Complete intersection of degrees `(l_1, …, l_r)` in `CP^n`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct CISpec {
    n: usize,
    degrees: Vec<u32>,
    regime: Regime,
}

impl CISpec {
    pub fn new(n: usize, degrees: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("ambient dimension must be at least 1".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidSpec("degrees must be positive".into()));
        }
        if degrees.len() > n {
            return Err(Error::InvalidSpec(format!("{} equations in CP^{n} leave nothing", degrees.len())));
        }
        let sum: usize = degrees.iter().map(|&l| l as usize).sum();
        let regime = if sum < n {
            Regime::Fano
        } else if sum == n {
            Regime::Boundary
        } else if sum == n + 1 {
            Regime::CalabiYau
        } else {
            return Err(Error::Unsupported(format!("sum of degrees {sum} exceeds n + 1 = {}", n + 1)));
        };
        Ok(CISpec { n, degrees, regime })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of equations.
    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn degree_sum(&self) -> usize {
        self.degrees.iter().map(|&l| l as usize).sum()
    }

    /// `Π l_a`.
    pub fn degree_product(&self) -> BigRational {
        self.degrees.iter().map(|&l| BigRational::from_integer(BigInt::from(l))).product()
    }

    /// `Π l_a!`.
    pub fn factorial_product(&self) -> BigRational {
        self.degrees.iter().fold(BigRational::one(), |acc, &l| acc * factorial(l as u64))
    }

    /// `Π l_a^{l_a}`.
    pub fn power_product(&self) -> BigRational {
        self.degrees
            .iter()
            .map(|&l| BigRational::from_integer(BigInt::from(l).pow(l)))
            .product()
    }

    /// Dimension `n − r` of the complete intersection.
    pub fn fiber_dim(&self) -> usize {
        self.n - self.r()
    }

    /// Order `n + 1 − r` of the Picard–Fuchs operator.
    pub fn pf_order(&self) -> usize {
        self.n + 1 - self.r()
    }

    /// `n + 1 − Σ l_a`, the degree of `q` when `p` and `ħ` have degree 1.
    pub fn q_weight(&self) -> usize {
        self.n + 1 - self.degree_sum()
    }

    pub fn require(&self, regime: Regime) -> Result<()> {
        if self.regime == regime {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{self} is {}, expected {regime}", self.regime)))
        }
    }
}

impl fmt::Display for CISpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "({};{})", self.n, ds.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn classification() {
        assert_eq!(CISpec::new(4, vec![5]).unwrap().regime(), Regime::CalabiYau);
        assert_eq!(CISpec::new(3, vec![3]).unwrap().regime(), Regime::Boundary);
        assert_eq!(CISpec::new(5, vec![2]).unwrap().regime(), Regime::Fano);
        assert_eq!(CISpec::new(3, vec![]).unwrap().regime(), Regime::Fano);
        assert!(matches!(CISpec::new(3, vec![5]), Err(Error::Unsupported(_))));
        assert!(matches!(CISpec::new(2, vec![1, 1, 1]), Err(Error::InvalidSpec(_))));
        assert!(matches!(CISpec::new(3, vec![0]), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn products() {
        let s = CISpec::new(6, vec![3, 2, 2]).unwrap();
        assert_eq!(s.degree_product(), int(12));
        assert_eq!(s.factorial_product(), int(24));
        assert_eq!(s.power_product(), int(432));
        assert_eq!(s.to_string(), "(6;3,2,2)");
        assert_eq!(s.pf_order(), 4);
    }
}
