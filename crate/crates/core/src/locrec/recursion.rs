use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{InitialCondition, ZSeries};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, HPoly, RatFuncH, TruncSeries};
use crate::hypergeom::{hypergeometric_series, CISpec, EquivContext, Regime};

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn genericity(what: &str) -> Error {
    Error::Genericity(format!("vanishing {what}; resample the weights"))
}

/// `ħ/((λ_i − λ_j) + dħ)`.
fn pole_factor(ctx: &EquivContext, i: usize, j: usize, d: usize) -> RatFuncH {
    let den = HPoly::linear(&ctx.lambda()[i] - &ctx.lambda()[j], int(d));
    RatFuncH::new(HPoly::hbar(), den)
}

/// `1/((λ_i − λ_j) + dħ)`.
fn simple_pole(ctx: &EquivContext, i: usize, j: usize, d: usize) -> RatFuncH {
    let den = HPoly::linear(&ctx.lambda()[i] - &ctx.lambda()[j], int(d));
    RatFuncH::new(HPoly::one(), den)
}

/// Rational coefficient of the chain term through `j` of multiplicity `d`,
/// evaluated at `h = (λ_j − λ_i)/d`.
fn chain_scalar(spec: &CISpec, ctx: &EquivContext, i: usize, j: usize, d: usize) -> Result<BigRational> {
    let lam = ctx.lambda();
    let h = (&lam[j] - &lam[i]) / int(d);
    if h.is_zero() {
        return Err(genericity("weight difference"));
    }
    let mut num = BigRational::one();
    let mut den = BigRational::one();
    match spec.regime() {
        Regime::CalabiYau => {
            for a in 0..spec.r() {
                let w = ctx.bundle_weight(spec, i, a);
                for m in 1..=spec.degrees()[a] as usize * d {
                    num *= &w + int(m) * &h;
                }
            }
            den *= factorial(d as u64);
            for (alpha, la) in lam.iter().enumerate() {
                if alpha == i {
                    continue;
                }
                for m in 1..=d {
                    if (alpha, m) != (j, d) {
                        den *= &lam[i] - la + int(m) * &h;
                    }
                }
            }
        }
        Regime::Fano | Regime::Boundary => {
            for a in 0..spec.r() {
                let w = ctx.bundle_weight(spec, i, a) / &h;
                for m in 1..=spec.degrees()[a] as usize * d {
                    num *= &w + int(m);
                }
            }
            for (alpha, la) in lam.iter().enumerate() {
                let x = (&lam[i] - la) / &h;
                for m in 1..=d {
                    if (alpha, m) != (j, d) {
                        den *= &x + int(m);
                    }
                }
            }
        }
    }
    if den.is_zero() {
        return Err(genericity("recursion denominator"));
    }
    Ok(num / den)
}

/// Recursion coefficient `Coeff_i^j(d)`.
///
/// Calabi–Yau: the constant
/// `Π_a Π_{m=1}^{l_a d}(l_aλ_i − λ'_a + m h) / (d! Π_{α≠i, m≤d, (α,m)≠(j,d)}(λ_i − λ_α + m h))`
/// with `h = (λ_j − λ_i)/d`.
/// Fano and boundary: the same products rescaled by `h`, times the pole
/// factor `ħ/((λ_i − λ_j) + dħ)`.
pub fn coeff_ij(spec: &CISpec, ctx: &EquivContext, i: usize, j: usize, d: usize) -> Result<RatFuncH> {
    if i == j || d == 0 {
        return Err(Error::Domain("coeff_ij needs i ≠ j and d ≥ 1".into()));
    }
    let c = chain_scalar(spec, ctx, i, j, d)?;
    Ok(match spec.regime() {
        Regime::CalabiYau => RatFuncH::constant(c),
        _ => pole_factor(ctx, i, j, d).scale(&c),
    })
}

/// Hypergeometric solution
/// `C_i(d) = Π_a Π_{m=1}^{l_a d}(l_aλ_i − λ'_a + mħ) / (d! ħ^d Π_{α≠i} Π_{m=1}^d (λ_i − λ_α + mħ))`.
pub fn closed_form_z(spec: &CISpec, ctx: &EquivContext, order: usize) -> Result<ZSeries> {
    let weights: Vec<RatFuncH> = ctx.lambda().iter().map(|l| RatFuncH::constant(l.clone())).collect();
    let bundle: Vec<RatFuncH> = ctx.lambda_prime().iter().map(|l| RatFuncH::constant(l.clone())).collect();
    let per_point = (0..=spec.n())
        .into_par_iter()
        .map(|i| hypergeometric_series(spec, &weights[i], &RatFuncH::hbar(), &weights, &bundle, order))
        .collect::<Result<Vec<_>>>()?;
    Ok(ZSeries::new(per_point))
}

/// `x_i = Π_a (l_aλ_i − λ'_a)^{l_a} / Π_{α≠i}(λ_i − λ_α)`.
fn boundary_exponent(spec: &CISpec, ctx: &EquivContext, i: usize) -> BigRational {
    let lam = ctx.lambda();
    let mut x = BigRational::one();
    for a in 0..spec.r() {
        x *= num_traits::pow(ctx.bundle_weight(spec, i, a), spec.degrees()[a] as usize);
    }
    for (alpha, la) in lam.iter().enumerate() {
        if alpha != i {
            x /= &lam[i] - la;
        }
    }
    x
}

fn exponential_init(spec: &CISpec, ctx: &EquivContext, order: usize, shift: &BigRational) -> Result<InitialCondition> {
    spec.require(Regime::Boundary)?;
    let mut init = InitialCondition::trivial();
    for i in 0..=spec.n() {
        let c = boundary_exponent(spec, ctx, i) - shift;
        let e = TruncSeries::monomial(c, 1, order).exp()?;
        for d in 1..=order {
            init.set(i, d, HPoly::constant(e.coeff(d).clone()));
        }
    }
    Ok(init)
}

/// Coefficients of `exp{Q x_i} exp{−Π l_a! Q}`.
pub fn initial_condition_boundary(spec: &CISpec, ctx: &EquivContext, order: usize) -> Result<InitialCondition> {
    exponential_init(spec, ctx, order, &spec.factorial_product())
}

/// Coefficients of `exp{Q x_i}`, the data of the closed-form solution.
pub fn initial_condition_boundary_closed(spec: &CISpec, ctx: &EquivContext, order: usize) -> Result<InitialCondition> {
    exponential_init(spec, ctx, order, &BigRational::zero())
}

/// `R_{i,d} = d! · (polynomial part of ħ^d C_i(d))` for the closed form.
pub fn initial_condition_cy_closed(spec: &CISpec, ctx: &EquivContext, order: usize) -> Result<InitialCondition> {
    spec.require(Regime::CalabiYau)?;
    let z = closed_form_z(spec, ctx, order)?;
    let mut init = InitialCondition::trivial();
    for i in 0..=spec.n() {
        for d in 1..=order {
            let c = z.coeff(i, d);
            let (quot, _) = c.num().shift(d).div_rem(c.den());
            init.set(i, d, quot.scale(&factorial(d as u64)));
        }
    }
    Ok(init)
}

/// Precomputed chain scalars and the recursion sum over chains.
pub(crate) struct Chains<'a> {
    spec: &'a CISpec,
    ctx: &'a EquivContext,
    // scalars[i][j][d]
    scalars: Vec<Vec<Vec<BigRational>>>,
}

impl<'a> Chains<'a> {
    pub(crate) fn new(spec: &'a CISpec, ctx: &'a EquivContext, order: usize) -> Result<Self> {
        let n1 = spec.n() + 1;
        let scalars = (0..n1)
            .map(|i| {
                (0..n1)
                    .map(|j| {
                        if i == j {
                            return Ok(Vec::new());
                        }
                        (0..=order)
                            .map(|d| if d == 0 { Ok(BigRational::zero()) } else { chain_scalar(spec, ctx, i, j, d) })
                            .collect()
                    })
                    .collect::<Result<Vec<Vec<_>>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Chains { spec, ctx, scalars })
    }

    /// `Σ_{d=1}^{D} Σ_{j≠i}` of the chain terms, given all lower orders in
    /// `table` (`C_j` in the Calabi–Yau case, `z_j` otherwise).
    pub(crate) fn sum(&self, i: usize, big_d: usize, table: &[Vec<RatFuncH>]) -> Result<RatFuncH> {
        let lam = self.ctx.lambda();
        let cy = self.spec.regime() == Regime::CalabiYau;
        let mut acc = RatFuncH::zero();
        for d in 1..=big_d {
            for j in (0..lam.len()).filter(|&j| j != i) {
                let c = &self.scalars[i][j][d];
                if c.is_zero() {
                    continue;
                }
                let h = (&lam[j] - &lam[i]) / int(d);
                let val = table[j][big_d - d].eval(&h).ok_or_else(|| genericity("evaluation point"))?;
                if val.is_zero() {
                    continue;
                }
                let term = if cy {
                    simple_pole(self.ctx, i, j, d).scale(&(c * num_traits::pow(h, big_d - d) * val))
                } else {
                    pole_factor(self.ctx, i, j, d).scale(&(c * val))
                };
                acc = acc.add(&term);
            }
        }
        Ok(acc)
    }
}

/// `ħ^k` as a rational function.
pub(crate) fn hbar_pow(k: usize) -> RatFuncH {
    RatFuncH::from_poly(HPoly::monomial(BigRational::one(), k))
}

/// Solves the regime's fixed-point recursion order by order.
///
/// Calabi–Yau: `ħ^D C_i(D) = R_{i,D}/D! + Σ_{d,j≠i} Coeff_i^j(d) h^{D−d} C_j(D−d)(h) / (λ_i − λ_j + dħ)`.
/// Fano and boundary, in `z_i(Q) = Z_i(ħ^w Q)` with `w = n + 1 − Σ l_a`:
/// `z_i(D) = R_{i,D} + Σ_{d,j≠i} Coeff_i^j(d) z_j(D−d)(h)`.
pub fn solve_recursion(spec: &CISpec, ctx: &EquivContext, init: &InitialCondition, order: usize) -> Result<ZSeries> {
    let n1 = spec.n() + 1;
    let chains = Chains::new(spec, ctx, order)?;
    let cy = spec.regime() == Regime::CalabiYau;
    let mut table: Vec<Vec<RatFuncH>> = vec![vec![RatFuncH::one()]; n1];
    for big_d in 1..=order {
        let row = (0..n1)
            .into_par_iter()
            .map(|i| {
                let acc = chains.sum(i, big_d, &table)?;
                let r = RatFuncH::from_poly(init.get(i, big_d));
                if cy {
                    let r = r.scale(&factorial(big_d as u64).recip());
                    Ok(r.add(&acc).div(&hbar_pow(big_d)).unwrap())
                } else {
                    Ok(r.add(&acc))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, c) in row.into_iter().enumerate() {
            table[i].push(c);
        }
    }
    let w = spec.q_weight();
    let per_point = table
        .into_iter()
        .map(|coeffs| {
            let coeffs = if cy {
                coeffs
            } else {
                coeffs.into_iter().enumerate().map(|(d, c)| c.div(&hbar_pow(w * d)).unwrap()).collect()
            };
            TruncSeries::new(coeffs, order)
        })
        .collect();
    Ok(ZSeries::new(per_point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int as z;

    fn spec(n: usize, l: &[u32]) -> CISpec {
        CISpec::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn quintic_coefficient_by_hand() {
        let s = spec(4, &[5]);
        let ctx = EquivContext::new(&s, (0..5).map(z).collect(), vec![z(13)]).unwrap();
        // Π_{m=1}^5 (−13 + m) / ((−1)(−2)(−3))
        assert_eq!(coeff_ij(&s, &ctx, 0, 1, 1).unwrap(), RatFuncH::constant(z(15840)));
    }

    #[test]
    fn projective_space_has_no_bundle_factor() {
        let s = spec(2, &[]);
        let ctx = EquivContext::new(&s, vec![z(0), z(1), z(3)], vec![]).unwrap();
        // h = 1: α = 0 gives 1, α = 2 gives (−3 + 1) → A = 1/(1·(−2)) = −1/2
        let c = coeff_ij(&s, &ctx, 0, 1, 1).unwrap();
        let want = RatFuncH::new(HPoly::monomial(z(1), 1), HPoly::linear(z(-1), z(1))).scale(&crate::exactalg::rat(-1, 2));
        assert_eq!(c, want);
    }

    #[test]
    fn recursion_reproduces_closed_forms() {
        let cases = [(spec(3, &[2]), 3), (spec(4, &[5]), 3), (spec(2, &[2]), 3)];
        for (s, order) in cases {
            let ctx = EquivContext::sample(&s, order, 3, 20).unwrap();
            let closed = closed_form_z(&s, &ctx, order).unwrap();
            let init = match s.regime() {
                Regime::Fano => InitialCondition::trivial(),
                Regime::Boundary => initial_condition_boundary_closed(&s, &ctx, order).unwrap(),
                Regime::CalabiYau => initial_condition_cy_closed(&s, &ctx, order).unwrap(),
            };
            let solved = solve_recursion(&s, &ctx, &init, order).unwrap();
            assert_eq!(solved, closed, "{s}");
        }
    }

    #[test]
    fn trivial_order() {
        let s = spec(3, &[2]);
        let ctx = EquivContext::sample(&s, 1, 0, 20).unwrap();
        let z0 = solve_recursion(&s, &ctx, &InitialCondition::trivial(), 0).unwrap();
        assert!(z0.per_point().iter().all(|p| p.coeffs() == [RatFuncH::one()]));
    }
}
