use num_bigint::BigInt;
use num_rational::BigRational;

use super::ring::Ring;
use crate::error::{Error, Result};

/// Truncated power series `Σ_{k=0}^{D} c_k q^k + O(q^{D+1})` over a ring `R`.
///
/// Coefficients are stored densely; exactly `D + 1` of them are kept. Binary
/// operations on series of different orders truncate to the smaller order.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<R: Ring> {
    coeffs: Vec<R>,
}

fn inv_int(k: usize) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(k))
}

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl<R: Ring> TruncSeries<R> {
    /// Series of order `order` from the given coefficients (padded with zeros
    /// or truncated). Panics if `coeffs` is empty.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        let zero = coeffs[0].zero_like();
        coeffs.resize(order + 1, zero);
        TruncSeries { coeffs }
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `q`; `proto` fixes the ring.
    pub fn var(proto: &R, order: usize) -> Self {
        Self::monomial(proto.one_like(), 1, order)
    }

    /// `c q^k`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut v = vec![c.zero_like(); order + 1];
        if k <= order {
            v[k] = c;
        }
        TruncSeries { coeffs: v }
    }

    /// Builds the series coefficient by coefficient.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        TruncSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `q^k`. Panics past the truncation order.
    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    fn zero_elt(&self) -> R {
        self.coeffs[0].zero_like()
    }

    pub fn zero_like(&self) -> Self {
        Self::constant(self.zero_elt(), self.order())
    }

    pub fn one_like(&self) -> Self {
        Self::constant(self.coeffs[0].one_like(), self.order())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero_elt)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> TruncSeries<S> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let d = self.order().min(rhs.order());
        Self::from_fn(d, |k| self.coeffs[k].plus(&rhs.coeffs[k]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let d = self.order().min(rhs.order());
        Self::from_fn(d, |k| self.coeffs[k].minus(&rhs.coeffs[k]))
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::negate)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d = self.order().min(rhs.order());
        let proto = &self.coeffs[0];
        let out = (0..=d)
            .map(|k| {
                let pairs: Vec<_> = (0..=k).map(|i| (&self.coeffs[i], &rhs.coeffs[k - i])).collect();
                proto.sum_products(&pairs)
            })
            .collect();
        TruncSeries { coeffs: out }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|a| a.scale(c))
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn mul_elt(&self, c: &R) -> Self {
        self.map(|a| a.times(c))
    }

    /// Multiplication by `q^k` (order is kept).
    pub fn shift(&self, k: usize) -> Self {
        let d = self.order();
        Self::from_fn(d, |i| if i < k { self.zero_elt() } else { self.coeffs[i - k].clone() })
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        let c0inv = self.coeffs[0].try_inv().ok_or(Error::NonInvertible)?;
        let d = self.order();
        let mut out: Vec<R> = Vec::with_capacity(d + 1);
        out.push(c0inv.clone());
        for k in 1..=d {
            let pairs: Vec<_> = (1..=k).map(|j| (&self.coeffs[j], &out[k - j])).collect();
            let acc = c0inv.sum_products(&pairs);
            out.push(acc.times(&c0inv).negate());
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// `exp(s)` for `s(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_elt() {
            return Err(Error::Domain("exp needs a series with zero constant term".into()));
        }
        let d = self.order();
        let mut out: Vec<R> = Vec::with_capacity(d + 1);
        out.push(self.coeffs[0].one_like());
        let weighted: Vec<R> = (0..=d).map(|j| self.coeffs[j].scale(&int(j))).collect();
        for k in 1..=d {
            let pairs: Vec<_> = (1..=k).map(|j| (&weighted[j], &out[k - j])).collect();
            let acc = self.coeffs[0].sum_products(&pairs);
            out.push(acc.scale(&inv_int(k)));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `log(s)` for `s(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != self.coeffs[0].one_like() {
            return Err(Error::Domain("log needs a series with constant term 1".into()));
        }
        let d = self.order();
        let mut out: Vec<R> = Vec::with_capacity(d + 1);
        out.push(self.zero_elt());
        for k in 1..=d {
            let mut acc = self.coeffs[k].scale(&int(k));
            for j in 1..k {
                if !out[j].is_zero_elt() {
                    acc = acc.minus(&out[j].times(&self.coeffs[k - j]).scale(&int(j)));
                }
            }
            out.push(acc.scale(&inv_int(k)));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `self(g(q))` for `g(0) = 0`, by Horner's rule.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero_elt() {
            return Err(Error::Domain("inner series of a composition must vanish at 0".into()));
        }
        let d = self.order().min(g.order());
        let g = g.truncate(d);
        let mut acc = Self::constant(self.coeffs[d].clone(), d);
        for k in (0..d).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].plus(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse of `u = u_1 q + u_2 q^2 + …` with `u_1` a unit,
    /// via Lagrange inversion: `[Q^k] v = (1/k) [q^{k-1}] (q/u)^k`.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_elt() {
            return Err(Error::Domain("reversion needs u(0) = 0".into()));
        }
        let d = self.order();
        if d == 0 {
            return Ok(self.zero_like());
        }
        if self.coeffs[1].try_inv().is_none() {
            return Err(Error::Domain("reversion needs an invertible linear coefficient".into()));
        }
        // u/q, known through q^{d-1}
        let u_over_q = Self::new(self.coeffs[1..].to_vec(), d - 1);
        let w = u_over_q.inv()?;
        let mut out = vec![self.zero_elt(); d + 1];
        let mut wk = w.one_like();
        for k in 1..=d {
            wk = wk.mul(&w);
            out[k] = wk.coeffs[k - 1].scale(&inv_int(k));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `d/dq`; the result is known through `q^{D-1}` (order 0 when `D = 0`).
    pub fn derive(&self) -> Self {
        let d = self.order();
        if d == 0 {
            return self.zero_like();
        }
        Self::from_fn(d - 1, |k| self.coeffs[k + 1].scale(&int(k + 1)))
    }

    /// `q d/dq`, which keeps the order.
    pub fn theta(&self) -> Self {
        Self::from_fn(self.order(), |k| self.coeffs[k].scale(&int(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{factorial, int as qint, rat};

    fn s(v: &[i64], order: usize) -> TruncSeries<BigRational> {
        TruncSeries::new(v.iter().map(|&c| qint(c)).collect(), order)
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(s(&[1, 1], 3).inv().unwrap(), s(&[1, -1, 1, -1], 3));
        assert_eq!(s(&[1], 5).inv().unwrap(), s(&[1], 5));
        // 1/(1 + 120 q + 113400 q^2): q^2 coefficient is 120^2 - 113400 = -99000
        let f = s(&[1, 120, 113400], 2).inv().unwrap();
        assert_eq!(f, s(&[1, -120, -99000], 2));
        assert_eq!(s(&[0, 1], 3).inv(), Err(Error::NonInvertible));
    }

    #[test]
    fn exp_log_examples() {
        let e = s(&[0, 1], 3).exp().unwrap();
        assert_eq!(e.coeffs(), &[qint(1), qint(1), rat(1, 2), rat(1, 6)]);
        assert!(s(&[1], 4).log().unwrap().is_zero());
        assert_eq!(*s(&[0, -120], 4).exp().unwrap().coeff(2), qint(7200));
        assert!(matches!(s(&[1, 1], 3).exp(), Err(Error::Domain(_))));
        assert!(matches!(s(&[2, 1], 3).log(), Err(Error::Domain(_))));
    }

    #[test]
    fn compose_examples() {
        let geo = s(&[1, 1, 1, 1, 1], 4);
        assert_eq!(geo.compose(&s(&[0, 0, 1], 4)).unwrap(), s(&[1, 0, 1, 0, 1], 4));
        let f = s(&[3, -1, 4, 1, -5], 4);
        assert_eq!(f.compose(&s(&[0, 1], 4)).unwrap(), f);
        // exp(log(1+q)) = 1 + q
        let lg = s(&[1, 1], 6).log().unwrap();
        let ex = s(&[0, 1], 6).exp().unwrap();
        assert_eq!(ex.compose(&lg).unwrap(), s(&[1, 1], 6));
        assert!(f.compose(&s(&[1, 1], 4)).is_err());
    }

    /// Independent reversion oracle: fix coefficients one at a time so that
    /// u(v(Q)) = Q holds through each successive order.
    fn reversion_by_iteration(u: &TruncSeries<BigRational>) -> TruncSeries<BigRational> {
        let d = u.order();
        let u1inv = u.coeff(1).recip();
        let mut v = s(&[0, 1], d).scale(&u1inv);
        for k in 2..=d {
            let err = u.compose(&v).unwrap();
            let mut c = v.coeffs.clone();
            c[k] = -err.coeff(k) * &u1inv;
            v = TruncSeries::new(c, d);
        }
        v
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(s(&[0, 1], 5).reversion().unwrap(), s(&[0, 1], 5));
        // q + q^2 reverts to the signed Catalan numbers
        assert_eq!(s(&[0, 1, 1], 4).reversion().unwrap(), s(&[0, 1, -1, 2, -5], 4));
        let qe = s(&[0, 1], 5).exp().unwrap().shift(1);
        let v = qe.reversion().unwrap();
        assert_eq!(v.coeffs()[..4], [qint(0), qint(1), qint(-1), rat(3, 2)]);
        assert_eq!(v, reversion_by_iteration(&qe));
        assert!(s(&[0, 0, 1], 4).reversion().is_err());
        assert!(s(&[1, 1], 4).reversion().is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(s(&[0, 0, 1], 3).derive(), s(&[0, 2], 2));
        assert!(s(&[7], 3).derive().is_zero());
        let e = TruncSeries::from_fn(6, |k| factorial(k as u64).recip());
        assert_eq!(e.derive(), e.truncate(5));
        assert_eq!(s(&[5, 1, 1], 2).theta(), s(&[0, 1, 2], 2));
    }

    #[test]
    fn mismatched_orders_truncate() {
        let a = s(&[1, 2, 3, 4], 3);
        let b = s(&[1, 1], 1);
        assert_eq!(a.add(&b).order(), 1);
        assert_eq!(a.mul(&b), s(&[1, 3], 1));
    }
}
