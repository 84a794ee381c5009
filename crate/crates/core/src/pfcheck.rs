//! Picard–Fuchs operators, annihilation checks and quantum-cohomology
//! relations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

pub use crate::cohomring::RelationPoly;
use crate::cohomring::{CohomSeries, DiffOp};
use crate::error::{Error, Result};
use crate::exactalg::{RatFuncH, TruncSeries};
use crate::hypergeom::{build_sprime, CISpec, EquivContext, Regime, TwistedSeries};

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Picard–Fuchs operator of the regime, in `Θ = ħ d/dt` and `e^t`:
/// `X^{n+1−r} − e^t Π l_a Π_a Π_{m=1}^{l_a−1}(l_a X + mħ)` with `X = Θ`, or
/// `X = Θ + Π l_a! e^t` in the boundary regime.
pub fn pf_operator(spec: &CISpec) -> Result<DiffOp> {
    let mut x = DiffOp::theta();
    if spec.regime() == Regime::Boundary {
        x = x.add(&DiffOp::q().scale(&RatFuncH::constant(spec.factorial_product())));
    }
    let mut rhs = DiffOp::q().scale(&RatFuncH::constant(spec.degree_product()));
    for &l in spec.degrees() {
        let l = l as usize;
        for m in 1..l {
            let factor = x.scale(&RatFuncH::constant(int(l))).add(&DiffOp::hbar().scale(&RatFuncH::constant(int(m))));
            rhs = rhs.compose(&factor);
        }
    }
    Ok(x.pow(spec.pf_order()).sub(&rhs))
}

/// `A s` at `ħ = 1`. The result is exact through the order of `s`, since
/// `e^t` only raises `q`-degrees.
pub fn verify_annihilation(op: &DiffOp, s: &CohomSeries, order: usize) -> Result<CohomSeries> {
    let s = s.truncate(order.min(s.order()));
    let comps = s
        .components()
        .par_iter()
        .map(|c| op.apply_tpoly(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomSeries::new(comps))
}

/// Action of `X` on the `q`-coefficients of `s_i`: `(λ_i + dħ) f_d`, plus
/// `L f_{d−1}` when `X = ħ d/dt + L e^t`.
fn twisted_x(f: &TruncSeries<RatFuncH>, lambda_i: &BigRational, shift: &BigRational) -> TruncSeries<RatFuncH> {
    TruncSeries::from_fn(f.order(), |d| {
        let w = RatFuncH::from_poly(crate::exactalg::HPoly::linear(lambda_i.clone(), int(d)));
        let mut v = f.coeff(d).mul(&w);
        if d > 0 && !shift.is_zero() {
            v = v.add(&f.coeff(d - 1).scale(shift));
        }
        v
    })
}

/// Residual of
/// `Π_α (X − λ_α) s_i − e^t Π_a Π_{m=1}^{l_a} (l_a X − λ'_a + mħ) s_i`
/// at each fixed point, with `X = ħ d/dt` (`+ Π l_a! e^t` in the boundary
/// regime).
pub fn equivariant_residuals(spec: &CISpec, ctx: &EquivContext, sprime: &[TwistedSeries]) -> Vec<TruncSeries<RatFuncH>> {
    let shift = if spec.regime() == Regime::Boundary { spec.factorial_product() } else { BigRational::zero() };
    sprime
        .par_iter()
        .map(|s| {
            let li = &ctx.lambda()[s.fixed_point()];
            let x = |f: &TruncSeries<RatFuncH>| twisted_x(f, li, &shift);
            let mut lhs = s.coeffs().clone();
            for la in ctx.lambda() {
                lhs = x(&lhs).sub(&lhs.mul_elt(&RatFuncH::constant(la.clone())));
            }
            let mut rhs = s.coeffs().clone();
            for (a, &l) in spec.degrees().iter().enumerate() {
                let l = l as usize;
                for m in 1..=l {
                    let c = RatFuncH::from_poly(crate::exactalg::HPoly::linear(-ctx.lambda_prime()[a].clone(), int(m)));
                    rhs = x(&rhs).scale(&int(l)).add(&rhs.mul_elt(&c));
                }
            }
            lhs.sub(&rhs.shift(1))
        })
        .collect()
}

/// Builds the equivariant class and returns its residuals.
pub fn equivariant_pf_verify(spec: &CISpec, ctx: &EquivContext, order: usize) -> Result<Vec<TruncSeries<RatFuncH>>> {
    let sprime = build_sprime(spec, ctx, order)?;
    Ok(equivariant_residuals(spec, ctx, &sprime))
}

/// Quantum-cohomology relation: the `ħ → 0` limit of the Picard–Fuchs
/// operator with `Θ ↦ p`, `e^t ↦ q`.
pub fn relation_extract(spec: &CISpec) -> Result<RelationPoly> {
    if spec.regime() == Regime::CalabiYau {
        return Err(Error::Unsupported(format!("{spec}: no relation extraction in the Calabi-Yau regime")));
    }
    let op = pf_operator(spec)?;
    if !op.is_homogeneous(spec.q_weight() as i64) {
        return Err(Error::Structure(format!("{spec}: operator is not homogeneous")));
    }
    op.quasiclassical_limit()
}

/// Closed forms `p^{n+1−r} = Π l_a^{l_a} q p^{Σl−r}` (Fano) and
/// `X^{n+1−r} = Π l_a^{l_a} q X^{n−r}`, `X = p + Π l_a! q` (boundary),
/// written as `lhs − rhs`.
pub fn closed_form_relation(spec: &CISpec) -> Result<RelationPoly> {
    let c = spec.power_product();
    match spec.regime() {
        Regime::Fano => {
            let lhs = RelationPoly::p().pow(spec.pf_order());
            let rhs = RelationPoly::monomial(c, spec.degree_sum() - spec.r(), 1);
            Ok(lhs.sub(&rhs))
        }
        Regime::Boundary => {
            let x = RelationPoly::p().add(&RelationPoly::q().scale(&spec.factorial_product()));
            let lhs = x.pow(spec.pf_order());
            let rhs = RelationPoly::q().scale(&c).mul(&x.pow(spec.fiber_dim()));
            Ok(lhs.sub(&rhs))
        }
        Regime::CalabiYau => Err(Error::Unsupported(format!("{spec}: no closed-form relation"))),
    }
}

/// Classical pairing `∫_X`: only `p^{n−r}` survives, with `∫ p^{n−r} = Π l_a`.
/// Returns the resulting polynomial in `q`.
pub fn classical_integral(spec: &CISpec, poly: &RelationPoly) -> RelationPoly {
    let mut out = RelationPoly::zero();
    for (&(pk, qk), c) in poly.terms() {
        if pk == spec.fiber_dim() {
            out.add_term(0, qk, c * spec.degree_product());
        }
    }
    out
}

/// `∫ p^{n+1−r}` computed in quantum cohomology: rewrite `p^{n+1−r}` through
/// the relation, then integrate classically. For the cubic surface this is
/// `⟨p*p, p⟩ = 27 q`.
pub fn quantum_top_pairing(spec: &CISpec, relation: &RelationPoly) -> Result<RelationPoly> {
    let top = spec.pf_order();
    let lead = relation.coeff(top, 0);
    if relation.p_degree() != Some(top) || !lead.is_one() {
        return Err(Error::Structure("relation is not monic in p^{n+1-r}".into()));
    }
    let rhs = RelationPoly::monomial(BigRational::one(), top, 0).sub(relation);
    Ok(classical_integral(spec, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int as z;
    use crate::hypergeom::build_i;

    fn spec(n: usize, l: &[u32]) -> CISpec {
        CISpec::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn quintic_operator_shape() {
        let op = pf_operator(&spec(4, &[5])).unwrap();
        assert_eq!(op.coeff(0, 4), RatFuncH::one());
        // −5·5^4 Θ^4 e^t term
        assert_eq!(op.coeff(1, 4), RatFuncH::constant(z(-3125)));
        // −5·(1·2·3·4)ħ^4 e^t
        assert_eq!(op.coeff(1, 0), RatFuncH::from_poly(crate::exactalg::HPoly::monomial(z(-120), 4)));
    }

    #[test]
    fn constant_shift_variant_is_not_annihilating() {
        // Π_{m=1}^{l−1}(lΘ + ħ) in place of (lΘ + mħ)
        let s = spec(4, &[5]);
        let mut rhs = DiffOp::q().scale(&RatFuncH::constant(z(5)));
        let factor = DiffOp::theta().scale(&RatFuncH::constant(z(5))).add(&DiffOp::hbar());
        for _ in 1..5 {
            rhs = rhs.compose(&factor);
        }
        let op = DiffOp::theta().pow(4).sub(&rhs);
        let res = verify_annihilation(&op, &build_i(&s, 4).unwrap(), 4).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn projective_space_and_point() {
        let op = pf_operator(&spec(3, &[])).unwrap();
        assert_eq!(op, DiffOp::theta().pow(4).sub(&DiffOp::q()));
        assert_eq!(pf_operator(&spec(1, &[1])).unwrap(), DiffOp::theta());
    }

    #[test]
    fn quintic_annihilated() {
        let s = spec(4, &[5]);
        let res = verify_annihilation(&pf_operator(&s).unwrap(), &build_i(&s, 8).unwrap(), 8).unwrap();
        assert!(res.is_zero());
    }

    #[test]
    fn control_relations() {
        assert_eq!(relation_extract(&spec(5, &[2])).unwrap().display_relation(), "p^5 = 4*q*p");
        assert_eq!(relation_extract(&spec(2, &[2])).unwrap().display_relation(), "p^2 = 4*q^2");
        let cubic = spec(3, &[3]);
        let rel = relation_extract(&cubic).unwrap();
        assert_eq!(rel.display_relation(), "p^3 = 9*q*p^2 + 216*q^2*p + 756*q^3");
        assert_eq!(rel, closed_form_relation(&cubic).unwrap());
        assert_eq!(quantum_top_pairing(&cubic, &rel).unwrap(), RelationPoly::monomial(z(27), 0, 1));
        assert!(relation_extract(&spec(4, &[5])).is_err());
    }

    #[test]
    fn equivariant_quintic() {
        let s = spec(4, &[5]);
        let ctx = EquivContext::sample(&s, 3, 1, 10).unwrap();
        for r in equivariant_pf_verify(&s, &ctx, 3).unwrap() {
            assert!(r.is_zero());
        }
    }
}
