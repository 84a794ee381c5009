//! Mirror transformation: normalization, the coordinate change `T = I_1/I_0`,
//! the Yukawa coupling and instanton numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cohomring::{CohomSeries, TPoly};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, TruncSeries};
use crate::hypergeom::{build_i, CISpec, Regime};

type QSeries = TruncSeries<BigRational>;

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Strips the `Π_a l_a P` prefactor and divides by the `P^0` component.
/// The result has `n − r + 1` components, the first equal to 1.
pub fn normalize(spec: &CISpec, i: &CohomSeries) -> Result<CohomSeries> {
    let (r, top) = (spec.r(), spec.fiber_dim());
    if i.dim() < spec.n() {
        return Err(Error::Structure("series has fewer than n + 1 components".into()));
    }
    let inv_l = spec.degree_product().recip();
    let stripped: Vec<TPoly> = (0..=top).map(|k| i.component(k + r).scale(&inv_l)).collect();
    let i0 = &stripped[0];
    if i0.t_degree() != 0 {
        return Err(Error::Structure("leading component depends on t".into()));
    }
    let inv = i0.t_coeff(0).inv()?;
    Ok(CohomSeries::new(stripped.iter().map(|c| c.mul_series(&inv)).collect()))
}

/// Reads `δ` off `J_1 = t + δ(q)` and inverts `Q = q e^{δ(q)}`.
pub fn mirror_map(j: &CohomSeries) -> Result<(QSeries, QSeries)> {
    if j.dim() < 1 {
        return Err(Error::Structure("no P^1 component".into()));
    }
    let c1 = j.component(1);
    let order = c1.order();
    if c1.t_degree() != 1 || c1.t_coeff(1) != TruncSeries::constant(BigRational::one(), order) {
        return Err(Error::Structure("P^1 component is not t + δ(q)".into()));
    }
    let delta = c1.t_coeff(0);
    if !delta.coeff(0).is_zero() {
        return Err(Error::Structure("δ(0) ≠ 0".into()));
    }
    let big_q = TruncSeries::var(&BigRational::one(), order).mul(&delta.exp()?);
    let q_of_q = big_q.reversion()?;
    Ok((delta, q_of_q))
}

/// Substitutes `t = T − δ(q)` and then `q = q(Q)` in every component.
pub fn change_coords(j: &CohomSeries, delta: &QSeries, q_of_q: &QSeries) -> Result<CohomSeries> {
    let minus = delta.neg();
    let comps = j
        .components()
        .iter()
        .map(|c| c.shift_t(&minus).compose_q(q_of_q))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomSeries::new(comps))
}

/// `K(Q) = Π l_a (d/dT)^2 J_2` for `J_2 = T^2/2 + c(Q)`.
pub fn yukawa(transformed: &CohomSeries, spec: &CISpec) -> Result<QSeries> {
    if spec.regime() != Regime::CalabiYau || spec.fiber_dim() != 3 {
        return Err(Error::Unsupported(format!("{spec}: Yukawa coupling needs a Calabi-Yau threefold")));
    }
    let c2 = transformed.component(2);
    let order = c2.order();
    let half = TruncSeries::constant(BigRational::new(1.into(), 2.into()), order);
    if c2.t_degree() != 2 || c2.t_coeff(2) != half || !c2.t_coeff(1).is_zero() {
        return Err(Error::Structure("P^2 component is not T^2/2 + c(Q)".into()));
    }
    let k = c2.ddt().ddt();
    if k.t_degree() != 0 {
        return Err(Error::Structure("second derivative still depends on T".into()));
    }
    Ok(k.t_coeff(0).scale(&spec.degree_product()))
}

/// Instanton numbers `n_d` read off `K = Π l_a + Σ_d n_d d^3 Q^d/(1 − Q^d)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct InstantonTable {
    counts: BTreeMap<usize, BigRational>,
}

impl InstantonTable {
    pub fn new(counts: BTreeMap<usize, BigRational>) -> Self {
        InstantonTable { counts }
    }

    pub fn get(&self, d: usize) -> Option<&BigRational> {
        self.counts.get(&d)
    }

    pub fn counts(&self) -> &BTreeMap<usize, BigRational> {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn all_integral(&self) -> bool {
        self.counts.values().all(|v| v.is_integer())
    }
}

/// Möbius-type inversion `n_m = (K_m − Σ_{d|m, d<m} n_d d^3)/m^3`.
pub fn extract_instantons(k: &QSeries, spec: &CISpec) -> Result<InstantonTable> {
    if k.coeff(0) != &spec.degree_product() {
        return Err(Error::Structure(format!("K(0) = {} but Π l_a = {}", k.coeff(0), spec.degree_product())));
    }
    let mut counts: BTreeMap<usize, BigRational> = BTreeMap::new();
    for m in 1..=k.order() {
        let mut v = k.coeff(m).clone();
        for d in (1..m).filter(|d| m % d == 0) {
            v -= &counts[&d] * int(d * d * d);
        }
        let n_m = v / int(m * m * m);
        if !n_m.is_integer() {
            log::warn!("{spec}: n_{m} = {n_m} is not an integer");
        }
        counts.insert(m, n_m);
    }
    Ok(InstantonTable { counts })
}

/// Right-hand side `e^{PT} + (P^2/Π l_a) Σ_d n_d d^3 Σ_k e^{(P+kd)T}/(P+kd)^2`
/// modulo `P^4`, in components `P^0 … P^3` with `Q = e^T`.
pub fn theorem_rhs(table: &InstantonTable, spec: &CISpec, order: usize) -> CohomSeries {
    let zero = || TruncSeries::constant(BigRational::zero(), order);
    let (mut quad, mut lin, mut cub) = (zero(), zero(), zero());
    for (&d, n_d) in table.counts() {
        let w = n_d * int(d * d * d) / spec.degree_product();
        let mut kd = d;
        while kd <= order {
            let e = int(kd);
            // e^{(P+e)T}/(P+e)^2 = Q^e e^{PT} (1/e^2 − 2P/e^3 + …)
            let sq = &w / (&e * &e);
            quad = quad.add(&TruncSeries::monomial(sq.clone(), kd, order));
            lin = lin.add(&TruncSeries::monomial(sq, kd, order));
            cub = cub.add(&TruncSeries::monomial(-&w * int(2) / (&e * &e * &e), kd, order));
            kd += d;
        }
    }
    let t_pow = |k: usize| TPoly::t_monomial(factorial(k as u64).recip(), k, order);
    let c2 = t_pow(2).add(&TPoly::from_series(quad));
    let c3 = t_pow(3).add(&TPoly::new(vec![cub, lin]));
    CohomSeries::new(vec![t_pow(0), t_pow(1), c2, c3])
}

/// Residuals of the theorem's two statements.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremResiduals {
    /// `J − RHS`, per component.
    pub components: Vec<TPoly>,
    /// `(d/dT)^2 (1/K) (d/dT)^2 J`, per component.
    pub ode: Vec<TPoly>,
}

impl TheoremResiduals {
    pub fn is_zero(&self) -> bool {
        self.components.iter().chain(&self.ode).all(TPoly::is_zero)
    }

    /// Lowest `Q`-order with a nonzero residual.
    pub fn first_failure(&self) -> Option<usize> {
        self.components
            .iter()
            .chain(&self.ode)
            .flat_map(|c| c.coeffs().iter())
            .filter_map(|s| s.coeffs().iter().position(|v| !v.is_zero()))
            .min()
    }
}

/// Compares the transformed series with the reconstructed right-hand side
/// and applies the fourth-order operator.
pub fn verify_theorem_form(
    table: &InstantonTable,
    transformed: &CohomSeries,
    k: &QSeries,
    spec: &CISpec,
    order: usize,
) -> Result<TheoremResiduals> {
    let j = transformed.truncate(order);
    let rhs = theorem_rhs(table, spec, order);
    let components = j.components().iter().zip(rhs.components()).map(|(a, b)| a.sub(b)).collect();
    let k_inv = k.truncate(order).inv()?;
    let ode = j
        .components()
        .iter()
        .map(|c| c.ddt().ddt().mul_series(&k_inv).ddt().ddt())
        .collect();
    Ok(TheoremResiduals { components, ode })
}

/// Mirror-coordinate data for one complete intersection.
#[derive(Clone, Debug, PartialEq)]
pub struct MirrorFrame {
    /// `δ(q)` with `T = t + δ(q)`.
    pub delta: QSeries,
    /// Inverse series `q(Q)`.
    pub q_of_q: QSeries,
    /// Yukawa coupling, for Calabi–Yau threefolds.
    pub k: Option<QSeries>,
    /// Normalized series in `(T, Q)` coordinates.
    pub normalized_j: CohomSeries,
}

impl MirrorFrame {
    /// Runs build, normalization, mirror map and coordinate change.
    pub fn build(spec: &CISpec, order: usize) -> Result<Self> {
        spec.require(Regime::CalabiYau)?;
        let j = normalize(spec, &build_i(spec, order)?)?;
        let (delta, q_of_q) = mirror_map(&j)?;
        let normalized_j = change_coords(&j, &delta, &q_of_q)?;
        let k = if spec.fiber_dim() == 3 { Some(yukawa(&normalized_j, spec)?) } else { None };
        Ok(MirrorFrame { delta, q_of_q, k, normalized_j })
    }

    pub fn instantons(&self, spec: &CISpec) -> Result<InstantonTable> {
        let k = self
            .k
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{spec}: instanton numbers need a threefold")))?;
        extract_instantons(k, spec)
    }
}
