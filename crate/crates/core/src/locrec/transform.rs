use num_rational::BigRational;
use num_traits::One;

use super::ZSeries;
use crate::error::Result;
use crate::exactalg::{HPoly, RatFuncH, TruncSeries};
use crate::hypergeom::{compute_f_g, CISpec, EquivContext, Regime};

type QSeries = TruncSeries<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

fn lift(s: &QSeries) -> TruncSeries<RatFuncH> {
    s.map(|c| RatFuncH::constant(c.clone()))
}

/// Series times `1/ħ`, as rational functions.
fn lift_over_hbar(s: &QSeries) -> TruncSeries<RatFuncH> {
    let inv = RatFuncH::new(HPoly::one(), HPoly::hbar());
    s.map(|c| inv.scale(c))
}

/// The three transformations relating the polynomial solution with
/// `Z^{(0)} = 1, Z^{(1)} = 0` to the hypergeometric one:
///
/// 1. `Z_i(Q)` with `Q = q exp{Σ_a l_a (g_{l_a} − g_1)/f}`;
/// 2. times `exp{[Σ_a (l_aλ_i − λ'_a) g_{l_a} − Σ_α(λ_i − λ_α) g_1]/(f ħ)}`;
/// 3. times `f`.
///
/// `Inverse` undoes them in reverse order.
pub fn transform_abc(z: &ZSeries, spec: &CISpec, ctx: &EquivContext, order: usize, direction: Direction) -> Result<ZSeries> {
    spec.require(Regime::CalabiYau)?;
    let fg = compute_f_g(spec, order)?;
    let f_inv = fg.f.inv()?;
    let mut shift = TruncSeries::constant(BigRational::from_integer(0.into()), order);
    for &l in spec.degrees() {
        let diff = fg.g(l).sub(fg.g(1)).scale(&BigRational::from_integer(l.into()));
        shift = shift.add(&diff);
    }
    let big_q = TruncSeries::var(&BigRational::one(), order).mul(&shift.mul(&f_inv).exp()?);
    let lam = ctx.lambda();
    let per_point = z
        .per_point()
        .iter()
        .enumerate()
        .map(|(i, zi)| {
            let zi = zi.truncate(order);
            let mut e = TruncSeries::constant(BigRational::from_integer(0.into()), order);
            for (a, &l) in spec.degrees().iter().enumerate() {
                e = e.add(&fg.g(l).scale(&ctx.bundle_weight(spec, i, a)));
            }
            let spread: BigRational = lam.iter().map(|la| &lam[i] - la).sum();
            e = e.sub(&fg.g(1).scale(&spread)).mul(&f_inv);
            match direction {
                Direction::Forward => {
                    let step1 = zi.compose(&lift(&big_q))?;
                    let step2 = step1.mul(&lift_over_hbar(&e).exp()?);
                    Ok(step2.mul(&lift(&fg.f)))
                }
                Direction::Inverse => {
                    let undo3 = zi.mul(&lift(&f_inv));
                    let undo2 = undo3.mul(&lift_over_hbar(&e.neg()).exp()?);
                    undo2.compose(&lift(&big_q.reversion()?))
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZSeries::new(per_point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locrec::{closed_form_z, solve_class_p};

    #[test]
    fn quintic_polynomial_solution_maps_to_hypergeometric() {
        let spec = CISpec::new(4, vec![5]).unwrap();
        let order = 3;
        let ctx = EquivContext::sample(&spec, order, 2, 20).unwrap();
        let closed = closed_form_z(&spec, &ctx, order).unwrap();
        let p = solve_class_p(&spec, &ctx, order).unwrap();
        let fwd = transform_abc(&p, &spec, &ctx, order, Direction::Forward).unwrap();
        assert_eq!(fwd, closed);
        let back = transform_abc(&closed, &spec, &ctx, order, Direction::Inverse).unwrap();
        assert_eq!(back, p);
        for s in back.per_point() {
            for c in &s.coeffs()[1..] {
                let exp = c.expand_at_infinity(2).unwrap();
                assert!(exp.iter().all(num_traits::Zero::is_zero));
            }
        }
    }
}
