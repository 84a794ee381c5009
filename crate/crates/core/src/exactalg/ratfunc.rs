use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hpoly::HPoly;
use super::ring::Ring;

/// Reduced rational function `num/den` in `ħ`.
///
/// Invariants: `den` is monic and nonzero, `gcd(num, den) = 1`, and zero is
/// stored as `0/1`. Equal fractions therefore have identical representations,
/// and "is a polynomial in ħ" is simply `den == 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncH {
    num: HPoly,
    den: HPoly,
}

impl RatFuncH {
    /// Builds and normalises `num/den`. Panics if `den` is zero.
    pub fn new(num: HPoly, den: HPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lead = den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFuncH { num, den }
    }

    pub fn zero() -> Self {
        RatFuncH { num: HPoly::zero(), den: HPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatFuncH { num: HPoly::constant(c), den: HPoly::one() }
    }

    pub fn from_poly(p: HPoly) -> Self {
        RatFuncH { num: p, den: HPoly::one() }
    }

    pub fn hbar() -> Self {
        Self::from_poly(HPoly::hbar())
    }

    /// `a + b ħ`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::from_poly(HPoly::linear(a, b))
    }

    pub fn num(&self) -> &HPoly {
        &self.num
    }

    pub fn den(&self) -> &HPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&HPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b).add(&rhs.num.mul(&a));
        Self::new(num, self.den.mul(&b))
    }

    /// Sum of many fractions over a running common denominator, reduced once.
    pub fn sum(terms: impl IntoIterator<Item = Self>) -> Self {
        let mut num = HPoly::zero();
        let mut den = HPoly::one();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            if t.den == den {
                num = num.add(&t.num);
                continue;
            }
            let g = den.gcd(&t.den);
            let a = den.div_exact(&g).unwrap();
            let b = t.den.div_exact(&g).unwrap();
            num = num.mul(&b).add(&t.num.mul(&a));
            den = den.mul(&b);
        }
        Self::new(num, den)
    }

    pub fn neg(&self) -> Self {
        RatFuncH { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // cross-reduce before multiplying to keep degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (an, bd) = (self.num.div_exact(&g1).unwrap(), rhs.den.div_exact(&g1).unwrap());
        let (bn, ad) = (rhs.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap());
        let num = an.mul(&bn);
        let den = ad.mul(&bd);
        let lead = den.leading().unwrap().recip();
        RatFuncH { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFuncH { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    pub fn pow(&self, e: usize) -> Self {
        RatFuncH { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Degree of `num` minus degree of `den` (`None` for zero).
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    /// Substitutes `ħ ↦ -ħ`.
    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect())
    }

    /// Coefficients of the expansion at `ħ = ∞` in powers of `1/ħ`:
    /// returns `c_0, …, c_{k-1}` with `self = Σ c_j ħ^{-j} + O(ħ^{-k})`.
    /// `None` when `self` grows at infinity.
    pub fn expand_at_infinity(&self, k: usize) -> Option<Vec<BigRational>> {
        if self.is_zero() {
            return Some(vec![BigRational::zero(); k]);
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        if dn > dd {
            return None;
        }
        // In u = 1/ħ: self = u^{dd-dn} * rev(num)(u) / rev(den)(u).
        let rev = |p: &HPoly, d: usize| -> Vec<BigRational> {
            (0..=d).map(|j| p.coeff(d - j)).collect()
        };
        let rn = rev(&self.num, dn);
        let rd = rev(&self.den, dd);
        let shift = dd - dn;
        let mut quotient = vec![BigRational::zero(); k];
        // power series division rn / rd, rd[0] = 1 (den monic)
        let mut out: Vec<BigRational> = Vec::with_capacity(k);
        for j in 0..k {
            let mut c = rn.get(j).cloned().unwrap_or_else(BigRational::zero);
            for i in 1..=j.min(dd) {
                c -= &rd[i] * &out[j - i];
            }
            out.push(c);
        }
        quotient[shift..k].clone_from_slice(&out[..k - shift]);
        Some(quotient)
    }
}

impl fmt::Debug for RatFuncH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFuncH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Ring for RatFuncH {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn scalar_like(&self, c: &BigRational) -> Self {
        Self::constant(c.clone())
    }
    fn is_zero_elt(&self) -> bool {
        RatFuncH::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn scale(&self, c: &BigRational) -> Self {
        RatFuncH::scale(self, c)
    }
    fn sum_products(&self, pairs: &[(&Self, &Self)]) -> Self {
        RatFuncH::sum(pairs.iter().filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a.mul(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn p(v: &[i64]) -> HPoly {
        HPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn normalisation_is_canonical() {
        // (2h+2)/(4h^2-4) == 1/(2h-2) == (1/2)/(h-1)
        let a = RatFuncH::new(p(&[2, 2]), p(&[-4, 0, 4]));
        let b = RatFuncH::new(p(&[1]), p(&[-2, 2]));
        assert_eq!(a, b);
        assert_eq!(a.den(), &p(&[-1, 1]));
        assert_eq!(a.num(), &HPoly::constant(rat(1, 2)));
        assert_eq!(RatFuncH::new(HPoly::zero(), p(&[3, 1])), RatFuncH::zero());
    }

    #[test]
    fn arithmetic() {
        let h = RatFuncH::hbar();
        let inv = h.inv().unwrap();
        assert_eq!(h.mul(&inv), RatFuncH::one());
        let x = inv.add(&RatFuncH::one()); // (1+h)/h
        assert_eq!(x, RatFuncH::new(p(&[1, 1]), p(&[0, 1])));
        assert!(!x.is_polynomial());
        assert!(x.mul(&h).is_polynomial());
        assert_eq!(x.eval(&int(2)), Some(rat(3, 2)));
        assert_eq!(x.eval(&int(0)), None);
    }

    #[test]
    fn expansion_at_infinity() {
        // (h+1)/(h+2) = 1 - 1/h + 2/h^2 - ...
        let x = RatFuncH::new(p(&[1, 1]), p(&[2, 1]));
        assert_eq!(x.expand_at_infinity(3).unwrap(), vec![int(1), int(-1), int(2)]);
        // 1/h^2
        let y = RatFuncH::new(p(&[1]), p(&[0, 0, 1]));
        assert_eq!(y.expand_at_infinity(3).unwrap(), vec![int(0), int(0), int(1)]);
        assert!(RatFuncH::hbar().expand_at_infinity(2).is_none());
    }
}
