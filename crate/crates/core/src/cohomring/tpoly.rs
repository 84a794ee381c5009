use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactalg::TruncSeries;

type QSeries = TruncSeries<BigRational>;

/// Polynomial in `t` whose coefficients are `q`-series: `Σ_k t^k a_k(q)`.
///
/// `t` and `q = e^t` are treated as independent symbols, with
/// `d/dt = ∂_t + q ∂_q`. All coefficient series share one truncation order.
#[derive(Clone, PartialEq, Debug)]
pub struct TPoly {
    coeffs: Vec<QSeries>,
}

impl TPoly {
    /// From the `t`-coefficients; trailing zero series are dropped (at least
    /// one coefficient is always kept). Orders are unified to the minimum.
    pub fn new(coeffs: Vec<QSeries>) -> Self {
        assert!(!coeffs.is_empty());
        let order = coeffs.iter().map(TruncSeries::order).min().unwrap();
        let mut coeffs: Vec<QSeries> = coeffs.into_iter().map(|c| c.truncate(order)).collect();
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_series(TruncSeries::constant(BigRational::zero(), order))
    }

    /// A `t`-free series.
    pub fn from_series(s: QSeries) -> Self {
        TPoly { coeffs: vec![s] }
    }

    /// `c t^k`, constant in `q`.
    pub fn t_monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut v = vec![TruncSeries::constant(BigRational::zero(), order); k + 1];
        v[k] = TruncSeries::constant(c, order);
        Self::new(v)
    }

    pub fn order(&self) -> usize {
        self.coeffs[0].order()
    }

    /// Degree in `t` (0 for the zero polynomial).
    pub fn t_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn t_coeff(&self, k: usize) -> QSeries {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| TruncSeries::constant(BigRational::zero(), self.order()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TruncSeries::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.truncate(order)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.t_coeff(k).add(&rhs.t_coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.t_coeff(k).sub(&rhs.t_coeff(k))).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Multiplication by a `t`-free series.
    pub fn mul_series(&self, s: &QSeries) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(s)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![TruncSeries::constant(BigRational::zero(), order); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    /// Multiplication by `q^a`.
    pub fn shift_q(&self, a: usize) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.shift(a)).collect())
    }

    /// `d/dt = ∂_t + q ∂_q`.
    pub fn ddt(&self) -> Self {
        let n = self.coeffs.len();
        let v = (0..n)
            .map(|k| {
                let mut c = self.coeffs[k].theta();
                if k + 1 < n {
                    c = c.add(&self.coeffs[k + 1].scale(&BigRational::from_integer(BigInt::from(k + 1))));
                }
                c
            })
            .collect();
        Self::new(v)
    }

    /// Substitutes `t ↦ t + shift(q)` for a `t`-free series `shift`.
    pub fn shift_t(&self, shift: &QSeries) -> Self {
        // Horner in t: Σ a_k (t + s)^k
        let t_plus_s = Self::new(vec![shift.clone(), TruncSeries::constant(BigRational::one(), shift.order())]);
        let mut acc = Self::from_series(self.coeffs.last().unwrap().clone());
        for a in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(&t_plus_s).add(&Self::from_series(a.clone()));
        }
        acc
    }

    /// Substitutes `q ↦ g(q)` in every coefficient (`g(0) = 0`).
    pub fn compose_q(&self, g: &QSeries) -> Result<Self> {
        Ok(Self::new(self.coeffs.iter().map(|c| c.compose(g)).collect::<Result<Vec<_>>>()?))
    }
}

/// Cohomology-valued series `Σ_{j=0}^{n} P^j I_j(t, q)` in `Q[P]/(P^{n+1})`.
#[derive(Clone, PartialEq, Debug)]
pub struct CohomSeries {
    components: Vec<TPoly>,
}

impl CohomSeries {
    pub fn new(components: Vec<TPoly>) -> Self {
        assert!(!components.is_empty());
        CohomSeries { components }
    }

    pub fn zero(n: usize, order: usize) -> Self {
        Self::new(vec![TPoly::zero(order); n + 1])
    }

    /// Ambient dimension `n` (components are `P^0 … P^n`).
    pub fn dim(&self) -> usize {
        self.components.len() - 1
    }

    pub fn order(&self) -> usize {
        self.components.iter().map(TPoly::order).min().unwrap()
    }

    pub fn components(&self) -> &[TPoly] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &TPoly {
        &self.components[j]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(TPoly::is_zero)
    }

    pub fn map(&self, f: impl FnMut(&TPoly) -> TPoly) -> Self {
        Self::new(self.components.iter().map(f).collect())
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.map(|c| c.truncate(order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn qs(v: &[i64], order: usize) -> QSeries {
        TruncSeries::new(v.iter().map(|&c| int(c)).collect(), order)
    }

    #[test]
    fn ddt_product_rule() {
        // d/dt (t q^2) = q^2 + 2 t q^2
        let x = TPoly::new(vec![qs(&[0], 3), qs(&[0, 0, 1], 3)]);
        let want = TPoly::new(vec![qs(&[0, 0, 1], 3), qs(&[0, 0, 2], 3)]);
        assert_eq!(x.ddt(), want);
        // d/dt q^3 = 3 q^3
        let y = TPoly::from_series(qs(&[0, 0, 0, 1], 3));
        assert_eq!(y.ddt(), TPoly::from_series(qs(&[0, 0, 0, 3], 3)));
    }

    #[test]
    fn shift_t_expands_binomially() {
        // t^2 at t -> t + q gives t^2 + 2 q t + q^2
        let x = TPoly::t_monomial(int(1), 2, 3);
        let got = x.shift_t(&qs(&[0, 1], 3));
        let want = TPoly::new(vec![qs(&[0, 0, 1], 3), qs(&[0, 2], 3), qs(&[1], 3)]);
        assert_eq!(got, want);
    }
}
