use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactalg::Ring;

/// Element `Σ_{j=0}^{n} c_j P^j` of `Q[P]/(P^{n+1})`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NilpotentP {
    coeffs: Vec<BigRational>,
}

impl NilpotentP {
    pub fn new(n: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(n + 1, BigRational::zero());
        NilpotentP { coeffs }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Self::new(n, vec![c])
    }

    /// The hyperplane class `P`.
    pub fn p(n: usize) -> Self {
        Self::linear(n, BigRational::zero(), BigRational::one())
    }

    /// `a + b P`.
    pub fn linear(n: usize, a: BigRational, b: BigRational) -> Self {
        Self::new(n, vec![a, b])
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &BigRational {
        &self.coeffs[j]
    }
}

impl Ring for NilpotentP {
    fn zero_like(&self) -> Self {
        Self::constant(self.dim(), BigRational::zero())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.dim(), BigRational::one())
    }
    fn scalar_like(&self, c: &BigRational) -> Self {
        Self::constant(self.dim(), c.clone())
    }
    fn is_zero_elt(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn plus(&self, rhs: &Self) -> Self {
        NilpotentP { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
    fn minus(&self, rhs: &Self) -> Self {
        NilpotentP { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
    fn times(&self, rhs: &Self) -> Self {
        let n = self.dim();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        NilpotentP { coeffs: out }
    }
    fn negate(&self) -> Self {
        NilpotentP { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
    fn try_inv(&self) -> Option<Self> {
        if self.coeffs[0].is_zero() {
            return None;
        }
        let n = self.dim();
        let c0inv = self.coeffs[0].recip();
        let mut out: Vec<BigRational> = vec![c0inv.clone()];
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &c0inv);
        }
        Some(NilpotentP { coeffs: out })
    }
}
