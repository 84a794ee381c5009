use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CISpec, Regime};
use crate::cohomring::{CohomSeries, NilpotentP, TPoly};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, harmonic, Ring, TruncSeries};

type QSeries = TruncSeries<BigRational>;

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// `Σ_d q^d Π_a Π_{m=1}^{l_a d}(l_a P + m) / Π_{m=1}^d (P + m)^{n+1}` in
/// `Q[P]/(P^{n+1})`, times `e^{-Π l_a! q}` in the boundary regime.
fn raw_coefficients(spec: &CISpec, order: usize) -> Result<TruncSeries<NilpotentP>> {
    let n = spec.n();
    let p = NilpotentP::p(n);
    let one = NilpotentP::constant(n, BigRational::one());
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = one.clone();
    coeffs.push(term.clone());
    for d in 1..=order {
        for &l in spec.degrees() {
            let l = l as usize;
            for m in l * (d - 1) + 1..=l * d {
                term = term.times(&p.scale(&int(l)).plus(&one.scale(&int(m))));
            }
        }
        let den = p.plus(&one.scale(&int(d)));
        let inv = den.try_inv().ok_or(Error::NonInvertible)?;
        for _ in 0..=n {
            term = term.times(&inv);
        }
        coeffs.push(term.clone());
    }
    let mut series = TruncSeries::new(coeffs, order);
    if spec.regime() == Regime::Boundary {
        let e = TruncSeries::var(&BigRational::one(), order).scale(&-spec.factorial_product()).exp()?;
        series = series.mul(&e.map(|c| NilpotentP::constant(n, c.clone())));
    }
    Ok(series)
}

/// Multiplies a `Q[P]/(P^{n+1})`-valued `q`-series by `e^{Pt}` and splits it
/// into `P`-components.
pub fn with_exponential(series: &TruncSeries<NilpotentP>, n: usize) -> CohomSeries {
    let order = series.order();
    let comps = (0..=n)
        .map(|j| {
            let t_coeffs = (0..=j)
                .map(|k| {
                    let kf = factorial(k as u64);
                    TruncSeries::from_fn(order, |d| series.coeff(d).coeff(j - k) / &kf)
                })
                .collect();
            TPoly::new(t_coeffs)
        })
        .collect();
    CohomSeries::new(comps)
}

/// Hypergeometric class without the `m = 0` factors:
/// `e^{Pt} Σ_d q^d Π_a Π_{m=1}^{l_a d}(l_a P + m) / Π_{m=1}^d (P+m)^{n+1}`,
/// with `e^{-Π l_a! q}` in the boundary regime.
pub fn build_i_raw(spec: &CISpec, order: usize) -> Result<CohomSeries> {
    Ok(with_exponential(&raw_coefficients(spec, order)?, spec.n()))
}

/// Hypergeometric class with the `m = 0` factors retained, i.e. the raw class
/// times `Π_a l_a P`.
pub fn build_i(spec: &CISpec, order: usize) -> Result<CohomSeries> {
    let n = spec.n();
    let mut pre = NilpotentP::constant(n, BigRational::one());
    for &l in spec.degrees() {
        pre = pre.times(&NilpotentP::p(n).scale(&int(l as usize)));
    }
    let series = raw_coefficients(spec, order)?.mul_elt(&pre);
    Ok(with_exponential(&series, n))
}

/// The series `f` and `g_l` of the Calabi–Yau initial condition.
#[derive(Clone, Debug, PartialEq)]
pub struct FG {
    pub f: QSeries,
    /// `g_l` for every distinct degree `l` and for `l = 1`.
    pub g: BTreeMap<u32, QSeries>,
}

impl FG {
    pub fn g(&self, l: u32) -> &QSeries {
        &self.g[&l]
    }
}

/// `f = Σ_d q^d Π_a (l_a d)!/(d!)^{n+1}` and
/// `g_l = Σ_d q^d Π_a (l_a d)!/(d!)^{n+1} · H_{l d}`.
pub fn compute_f_g(spec: &CISpec, order: usize) -> Result<FG> {
    spec.require(Regime::CalabiYau)?;
    let f = TruncSeries::from_fn(order, |d| {
        let num = spec
            .degrees()
            .iter()
            .fold(BigRational::one(), |acc, &l| acc * factorial(l as u64 * d as u64));
        num / num_traits::pow(factorial(d as u64), spec.n() + 1)
    });
    let mut g = BTreeMap::new();
    for l in spec.degrees().iter().copied().chain(std::iter::once(1)) {
        g.entry(l).or_insert_with(|| {
            TruncSeries::from_fn(order, |d| {
                if d == 0 {
                    BigRational::zero()
                } else {
                    f.coeff(d) * harmonic(l as u64 * d as u64)
                }
            })
        });
    }
    Ok(FG { f, g })
}
