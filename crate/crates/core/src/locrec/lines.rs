use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergeom::{CISpec, EquivContext};

/// Lines on the complete intersection by localization on the Grassmannian of
/// 2-planes: `Σ_{i<j} Π_a Π_{m=0}^{l_a}(mλ_i + (l_a − m)λ_j) / Π_{k≠i,j}(λ_i − λ_k)(λ_j − λ_k)`.
///
/// Only specs with `Σ (l_a + 1) = 2(n − 1)`, where the expected count is
/// finite, are accepted.
pub fn lines_count(spec: &CISpec, ctx: &EquivContext) -> Result<BigRational> {
    let rank: usize = spec.degrees().iter().map(|&l| l as usize + 1).sum();
    if rank != 2 * (spec.n() - 1) {
        return Err(Error::Unsupported(format!("{spec}: lines do not form a finite set")));
    }
    let lam = ctx.lambda();
    let mut total = BigRational::zero();
    for i in 0..lam.len() {
        for j in i + 1..lam.len() {
            let mut num = BigRational::one();
            for &l in spec.degrees() {
                for m in 0..=l {
                    num *= BigRational::from_integer(BigInt::from(m)) * &lam[i]
                        + BigRational::from_integer(BigInt::from(l - m)) * &lam[j];
                }
            }
            let mut den = BigRational::one();
            for (k, lk) in lam.iter().enumerate() {
                if k != i && k != j {
                    den *= (&lam[i] - lk) * (&lam[j] - lk);
                }
            }
            if den.is_zero() {
                return Err(Error::Genericity("coincident weights".into()));
            }
            total += num / den;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn cubic_surface_and_quintic() {
        for (n, l, want) in [(3, 3, 27), (4, 5, 2875)] {
            let spec = CISpec::new(n, vec![l]).unwrap();
            for seed in 0..3 {
                let ctx = EquivContext::sample(&spec, 1, seed, 10).unwrap();
                assert_eq!(lines_count(&spec, &ctx).unwrap(), int(want));
            }
        }
        let plane = CISpec::new(3, vec![1]).unwrap();
        let ctx = EquivContext::sample(&plane, 1, 0, 10).unwrap();
        assert!(lines_count(&plane, &ctx).is_err());
    }
}
