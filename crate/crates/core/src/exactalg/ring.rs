use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring with identity, as needed by [`TruncSeries`](super::TruncSeries).
///
/// Constructors take `&self` so that rings carrying shape data (such as the
/// nilpotent ring `Q[P]/(P^{n+1})`) can build compatible constants.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Image of a rational scalar.
    fn scalar_like(&self, c: &BigRational) -> Self;
    fn is_zero_elt(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse, if `self` is a unit.
    fn try_inv(&self) -> Option<Self>;

    fn scale(&self, c: &BigRational) -> Self {
        self.times(&self.scalar_like(c))
    }

    /// `Σ a_k b_k`; rings with expensive normalisation may defer it to the end.
    fn sum_products(&self, pairs: &[(&Self, &Self)]) -> Self {
        pairs.iter().fold(self.zero_like(), |acc, (a, b)| acc.plus(&a.times(b)))
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn scalar_like(&self, c: &BigRational) -> Self {
        c.clone()
    }
    fn is_zero_elt(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }
}
