use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CISpec, Regime};
use crate::error::{Error, Result};
use crate::exactalg::{RatFuncH, Ring, TruncSeries};

const WEIGHT_RANGE: i64 = 1_000_000;

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Numeric torus weights `λ_0 … λ_n` on `C^{n+1}` and `λ'_1 … λ'_r` on the
/// bundle summands.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivContext {
    lambda: Vec<BigRational>,
    lambda_prime: Vec<BigRational>,
    seed: u64,
}

impl EquivContext {
    /// Fixed weights. Checks shapes, distinctness of `λ` and
    /// `l_a λ_i ≠ λ'_a`; order-dependent genericity is checked by callers.
    pub fn new(spec: &CISpec, lambda: Vec<BigRational>, lambda_prime: Vec<BigRational>) -> Result<Self> {
        if lambda.len() != spec.n() + 1 || lambda_prime.len() != spec.r() {
            return Err(Error::InvalidSpec(format!(
                "{spec} needs {} weights and {} bundle weights",
                spec.n() + 1,
                spec.r()
            )));
        }
        let ctx = EquivContext { lambda, lambda_prime, seed: 0 };
        if !ctx.is_generic(spec, 0) {
            return Err(Error::Genericity("weights are not distinct or hit l_a λ_i = λ'_a".into()));
        }
        Ok(ctx)
    }

    /// Samples integer weights in `[-10^6, 10^6]` from a ChaCha stream seeded
    /// by `seed`, retrying up to `trials` times until generic through `order`.
    pub fn sample(spec: &CISpec, order: usize, seed: u64, trials: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |k: usize| -> Vec<BigRational> {
            (0..k)
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-WEIGHT_RANGE..=WEIGHT_RANGE))))
                .collect()
        };
        for trial in 0..trials {
            let ctx = EquivContext { lambda: draw(spec.n() + 1), lambda_prime: draw(spec.r()), seed };
            if ctx.is_generic(spec, order) {
                log::debug!("weights for {spec} accepted after {} draws", trial + 1);
                return Ok(ctx);
            }
        }
        Err(Error::Genericity(format!("no generic weights for {spec} in {trials} trials (seed {seed})")))
    }

    pub fn lambda(&self) -> &[BigRational] {
        &self.lambda
    }

    pub fn lambda_prime(&self) -> &[BigRational] {
        &self.lambda_prime
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `l_a λ_i − λ'_a`.
    pub fn bundle_weight(&self, spec: &CISpec, i: usize, a: usize) -> BigRational {
        int(spec.degrees()[a] as usize) * &self.lambda[i] - &self.lambda_prime[a]
    }

    /// Distinct `λ`, nonzero bundle weights, and pairwise distinct ratios
    /// `(λ_j − λ_i)/e` over ordered pairs `i ≠ j` and `1 ≤ e ≤ 2·order`.
    pub fn is_generic(&self, spec: &CISpec, order: usize) -> bool {
        let n = self.lambda.len();
        for i in 0..n {
            for j in 0..i {
                if self.lambda[i] == self.lambda[j] {
                    return false;
                }
            }
            for a in 0..spec.r() {
                if self.bundle_weight(spec, i, a).is_zero() {
                    return false;
                }
            }
        }
        let mut seen = HashSet::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for e in 1..=2 * order {
                    if !seen.insert((&self.lambda[j] - &self.lambda[i]) / int(e)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `s_i = e^{λ_i t/ħ} Σ_d q^d c_d(ħ)`; the exponential prefactor is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedSeries {
    fixed_point: usize,
    coeffs: TruncSeries<RatFuncH>,
}

impl TwistedSeries {
    pub fn new(fixed_point: usize, coeffs: TruncSeries<RatFuncH>) -> Self {
        TwistedSeries { fixed_point, coeffs }
    }

    pub fn fixed_point(&self) -> usize {
        self.fixed_point
    }

    pub fn coeffs(&self) -> &TruncSeries<RatFuncH> {
        &self.coeffs
    }
}

/// `Σ_d q^d Π_a Π_{m=1}^{l_a d}(l_a x − y_a + m h) / Π_α Π_{m=1}^d (x − w_α + m h)`
/// over any ring.
///
/// With `x = λ_i`, `h = ħ` this is the fixed-point restriction of the
/// equivariant class; with `x = P`, `h = 1` and zero weights it is the
/// non-equivariant one.
pub fn hypergeometric_series<R: Ring>(
    spec: &CISpec,
    x: &R,
    h: &R,
    weights: &[R],
    bundle_weights: &[R],
    order: usize,
) -> Result<TruncSeries<R>> {
    let mut term = x.one_like();
    let mut coeffs = vec![term.clone()];
    for d in 1..=order {
        for (a, &l) in spec.degrees().iter().enumerate() {
            let l = l as usize;
            let base = x.scale(&int(l)).minus(&bundle_weights[a]);
            for m in l * (d - 1) + 1..=l * d {
                term = term.times(&base.plus(&h.scale(&int(m))));
            }
        }
        for w in weights {
            let f = x.minus(w).plus(&h.scale(&int(d)));
            let inv = f.try_inv().ok_or_else(|| Error::Genericity("vanishing localization denominator".into()))?;
            term = term.times(&inv);
        }
        coeffs.push(term.clone());
    }
    Ok(TruncSeries::new(coeffs, order))
}

/// [`hypergeometric_series`] times `exp(−Π l_a! q / h)` in the boundary
/// regime.
pub fn twisted_class<R: Ring>(
    spec: &CISpec,
    x: &R,
    h: &R,
    weights: &[R],
    bundle_weights: &[R],
    order: usize,
) -> Result<TruncSeries<R>> {
    let series = hypergeometric_series(spec, x, h, weights, bundle_weights, order)?;
    if spec.regime() != Regime::Boundary {
        return Ok(series);
    }
    let hinv = h.try_inv().ok_or(Error::NonInvertible)?;
    let arg = TruncSeries::monomial(hinv.scale(&-spec.factorial_product()), 1, order);
    Ok(series.mul(&arg.exp()?))
}

/// Fixed-point components `s_i` of the equivariant hypergeometric class.
pub fn build_sprime(spec: &CISpec, ctx: &EquivContext, order: usize) -> Result<Vec<TwistedSeries>> {
    let weights: Vec<RatFuncH> = ctx.lambda().iter().map(|l| RatFuncH::constant(l.clone())).collect();
    let bundle: Vec<RatFuncH> = ctx.lambda_prime().iter().map(|l| RatFuncH::constant(l.clone())).collect();
    (0..=spec.n())
        .into_par_iter()
        .map(|i| {
            let s = twisted_class(spec, &weights[i], &RatFuncH::hbar(), &weights, &bundle, order)?;
            Ok(TwistedSeries::new(i, s))
        })
        .collect()
}
