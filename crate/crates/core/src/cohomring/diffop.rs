use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::relation::RelationPoly;
use super::tpoly::{CohomSeries, TPoly};
use crate::error::{Error, Result};
use crate::exactalg::{HPoly, RatFuncH};

/// Differential operator `Σ_{a,k} e^{at} c_{a,k}(ħ) Θ^k` with `Θ = ħ d/dt`,
/// stored in normal order (powers of `e^t` to the left of powers of `Θ`).
///
/// Composition uses `Θ e^t = e^t (Θ + ħ)`. Coefficients are rational in `ħ`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    terms: BTreeMap<(usize, usize), RatFuncH>,
}

fn binomial(n: usize, k: usize) -> BigRational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    BigRational::from_integer(acc)
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(RatFuncH::one())
    }

    pub fn scalar(c: RatFuncH) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::scalar(RatFuncH::constant(c))
    }

    /// `c(ħ) e^{a t} Θ^k`.
    pub fn term(c: RatFuncH, q_pow: usize, theta_pow: usize) -> Self {
        let mut op = Self::zero();
        op.add_term(q_pow, theta_pow, c);
        op
    }

    /// `Θ = ħ d/dt`.
    pub fn theta() -> Self {
        Self::term(RatFuncH::one(), 0, 1)
    }

    /// Multiplication by `e^t`.
    pub fn q() -> Self {
        Self::term(RatFuncH::one(), 1, 0)
    }

    /// Multiplication by `ħ`.
    pub fn hbar() -> Self {
        Self::scalar(RatFuncH::hbar())
    }

    fn add_term(&mut self, a: usize, k: usize, c: RatFuncH) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, k)).or_insert_with(RatFuncH::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&(a, k));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), RatFuncH> {
        &self.terms
    }

    pub fn coeff(&self, q_pow: usize, theta_pow: usize) -> RatFuncH {
        self.terms.get(&(q_pow, theta_pow)).cloned().unwrap_or_else(RatFuncH::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest power of `e^t`.
    pub fn q_degree(&self) -> usize {
        self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0)
    }

    pub fn theta_degree(&self) -> usize {
        self.terms.keys().map(|&(_, k)| k).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, k), c) in &rhs.terms {
            out.add_term(a, k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        DiffOp { terms: self.terms.iter().map(|(&key, c)| (key, c.neg())).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &RatFuncH) -> Self {
        let mut out = Self::zero();
        for (&(a, k), v) in &self.terms {
            out.add_term(a, k, v.mul(c));
        }
        out
    }

    /// Normal form of `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, k), c) in &self.terms {
            for (&(b, m), c2) in &rhs.terms {
                // Θ^k e^{bt} = e^{bt} (Θ + bħ)^k
                let coef = c.mul(c2);
                let shift = BigRational::from_integer(BigInt::from(b));
                for j in 0..=k {
                    let hpow = k - j;
                    let scalar = binomial(k, j) * num_traits::pow(shift.clone(), hpow);
                    if scalar.is_zero() {
                        continue;
                    }
                    let h = RatFuncH::from_poly(HPoly::monomial(scalar, hpow));
                    out.add_term(a + b, j + m, coef.mul(&h));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    /// Applies the operator at `ħ = 1` (so `Θ` acts as `d/dt = ∂_t + q∂_q`
    /// and `e^t` as multiplication by `q`).
    pub fn apply_tpoly(&self, s: &TPoly) -> Result<TPoly> {
        let one = BigRational::one();
        let mut powers = vec![s.clone()];
        for _ in 0..self.theta_degree() {
            let next = powers.last().unwrap().ddt();
            powers.push(next);
        }
        let mut out = TPoly::zero(s.order());
        for (&(a, k), c) in &self.terms {
            let c1 = c
                .eval(&one)
                .ok_or_else(|| Error::Domain("operator coefficient has a pole at ħ = 1".into()))?;
            out = out.add(&powers[k].shift_q(a).scale(&c1));
        }
        Ok(out)
    }

    /// Componentwise application to a cohomology-valued series.
    pub fn apply(&self, s: &CohomSeries) -> Result<CohomSeries> {
        let comps = s.components().iter().map(|c| self.apply_tpoly(c)).collect::<Result<Vec<_>>>()?;
        Ok(CohomSeries::new(comps))
    }

    /// Quasiclassical limit: `Θ ↦ p`, `e^t ↦ q`, then `ħ = 0`.
    pub fn quasiclassical_limit(&self) -> Result<RelationPoly> {
        let zero = BigRational::zero();
        let mut out = RelationPoly::zero();
        for (&(a, k), c) in &self.terms {
            let v = c
                .eval(&zero)
                .ok_or_else(|| Error::Domain("negative powers of ħ in operator".into()))?;
            out.add_term(k, a, v);
        }
        Ok(out)
    }

    /// True if every monomial `e^{at} ħ^j Θ^k` has the same weight
    /// `a * q_weight + j + k`. Coefficients must be polynomial in `ħ`.
    pub fn is_homogeneous(&self, q_weight: i64) -> bool {
        let mut weight: Option<i64> = None;
        for (&(a, k), c) in &self.terms {
            let Some(poly) = c.as_polynomial() else {
                return false;
            };
            for (j, v) in poly.coeffs().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let w = a as i64 * q_weight + j as i64 + k as i64;
                if *weight.get_or_insert(w) != w {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(&(a, k), c)| format!("[{c}] e^{{{a}t}} Θ^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, TruncSeries};

    fn c(v: i64) -> RatFuncH {
        RatFuncH::constant(int(v))
    }

    #[test]
    fn theta_past_exponential() {
        let got = DiffOp::theta().compose(&DiffOp::q());
        let want = DiffOp::term(RatFuncH::one(), 1, 1).add(&DiffOp::term(RatFuncH::hbar(), 1, 0));
        assert_eq!(got, want);
    }

    #[test]
    fn square_of_theta_plus_q() {
        // (Θ + e^t)^2 = Θ^2 + e^t (2Θ + ħ) + e^{2t}
        let x = DiffOp::theta().add(&DiffOp::q());
        let want = DiffOp::term(c(1), 0, 2)
            .add(&DiffOp::term(c(2), 1, 1))
            .add(&DiffOp::term(RatFuncH::hbar(), 1, 0))
            .add(&DiffOp::term(c(1), 2, 0));
        assert_eq!(x.pow(2), want);
        assert_eq!(x.compose(&DiffOp::one()), x);
    }

    #[test]
    fn action_on_monomials() {
        let s = TPoly::from_series(TruncSeries::monomial(int(1), 3, 4));
        let got = DiffOp::theta().apply_tpoly(&s).unwrap();
        assert_eq!(got, TPoly::from_series(TruncSeries::monomial(int(3), 3, 4)));
    }

    #[test]
    fn classical_limit() {
        // Θ^5 - 4 e^t Θ - 2ħ e^t  ->  p^5 - 4 q p
        let op = DiffOp::theta()
            .pow(5)
            .sub(&DiffOp::term(c(4), 1, 1))
            .sub(&DiffOp::term(RatFuncH::hbar().scale(&int(2)), 1, 0));
        let rel = op.quasiclassical_limit().unwrap();
        assert_eq!(rel.display_relation(), "p^5 = 4*q*p");
        let bad = DiffOp::scalar(RatFuncH::hbar().inv().unwrap());
        assert!(bad.quasiclassical_limit().is_err());
        // pure Θ operator keeps its polynomial
        let pure = DiffOp::theta().pow(3).add(&DiffOp::term(c(2), 0, 1));
        assert_eq!(pure.quasiclassical_limit().unwrap().to_string(), "p^3 + 2*p");
    }
}
