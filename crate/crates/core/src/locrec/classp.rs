use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::recursion::{hbar_pow, Chains};
use super::ZSeries;
use crate::error::{Error, Result};
use crate::exactalg::{factorial, HPoly, RatFuncH, TruncSeries};
use crate::hypergeom::{CISpec, EquivContext, Regime};

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn binomial(n: usize, k: usize) -> BigRational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    BigRational::from_integer(acc)
}

/// `Π_{j≠i} Π_{m=1}^d (λ_i − λ_j + mħ)`.
fn euler_factor(ctx: &EquivContext, i: usize, d: usize) -> HPoly {
    let lam = ctx.lambda();
    let mut acc = HPoly::one();
    for (j, lj) in lam.iter().enumerate() {
        if j != i {
            for m in 1..=d {
                acc = acc.mul(&HPoly::linear(&lam[i] - lj, int(m)));
            }
        }
    }
    acc
}

/// `Π_a (l_a λ_i − λ'_a)`.
fn bundle_factor(spec: &CISpec, ctx: &EquivContext, i: usize) -> BigRational {
    (0..spec.r()).map(|a| ctx.bundle_weight(spec, i, a)).product()
}

/// `P_d^{(i)} = C_i(d) d! ħ^d Π_{j≠i} Π_{m=1}^d (λ_i − λ_j + mħ)` for
/// `d ≤ order`, indexed `[i][d]`.
pub fn polynomial_parts(ctx: &EquivContext, z: &ZSeries, order: usize) -> Vec<Vec<RatFuncH>> {
    (0..z.per_point().len())
        .map(|i| {
            (0..=order)
                .map(|d| {
                    let scale = HPoly::monomial(factorial(d as u64), d).mul(&euler_factor(ctx, i, d));
                    z.coeff(i, d).mul(&RatFuncH::from_poly(scale))
                })
                .collect()
        })
        .collect()
}

/// `v_{i,d} = Π_a(l_aλ_i − λ'_a) P_d^{(i)}(ħ) P_{D−d}^{(i)}(−ħ)`, the values
/// of `E_D` on the lines `p = λ_i + dħ`.
pub fn node_values(spec: &CISpec, ctx: &EquivContext, parts: &[Vec<HPoly>], big_d: usize) -> Vec<Vec<HPoly>> {
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let w = bundle_factor(spec, ctx, i);
            (0..=big_d).map(|d| p[d].mul(&p[big_d - d].reflect()).scale(&w)).collect()
        })
        .collect()
}

/// Polynomial in `ħ` depending affinely on unknowns `u_k`:
/// `base + Σ_k u_k terms[k]`.
#[derive(Clone)]
struct Affine {
    base: HPoly,
    terms: Vec<HPoly>,
}

impl Affine {
    fn constant(base: HPoly, nu: usize) -> Self {
        Affine { base, terms: vec![HPoly::zero(); nu] }
    }

    /// Row `[coeffs of u…, constant]` of the value at `c`.
    fn eval_row(&self, c: &BigRational) -> Vec<BigRational> {
        let mut row: Vec<_> = self.terms.iter().map(|t| t.eval(c)).collect();
        row.push(self.base.eval(c));
        row
    }

    fn coeff_row(&self, k: usize) -> Vec<BigRational> {
        let mut row: Vec<_> = self.terms.iter().map(|t| t.coeff(k)).collect();
        row.push(self.base.coeff(k));
        row
    }
}

fn row_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Linear conditions for the node values to come from a polynomial `E_D(p, ħ)`:
/// agreement where two lines meet, and at `ħ = 0` the `ħ^k` coefficient along
/// the pencil through `λ_i` is a polynomial of degree `≤ k` in `d`.
fn conditions(ctx: &EquivContext, nodes: &[Vec<Affine>], big_d: usize) -> Vec<Vec<BigRational>> {
    let lam = ctx.lambda();
    let mut rows = Vec::new();
    for i in 0..nodes.len() {
        for j in 0..nodes.len() {
            if i == j {
                continue;
            }
            for d in 1..=big_d {
                for dp in 0..d {
                    let c = (&lam[j] - &lam[i]) / int(d - dp);
                    rows.push(row_sub(&nodes[i][d].eval_row(&c), &nodes[j][dp].eval_row(&c)));
                }
            }
        }
    }
    for pencil in nodes {
        for k in 0..big_d {
            let a: Vec<Vec<BigRational>> = pencil.iter().map(|v| v.coeff_row(k)).collect();
            for d0 in 0..big_d - k {
                let mut row = vec![BigRational::zero(); a[0].len()];
                for t in 0..=k + 1 {
                    let mut c = binomial(k + 1, t);
                    if (k + 1 - t) % 2 == 1 {
                        c = -c;
                    }
                    for (r, x) in row.iter_mut().zip(&a[d0 + t]) {
                        *r += &c * x;
                    }
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Unique solution of `Σ_k row[k] u_k + row[nu] = 0`.
fn solve_linear(mut rows: Vec<Vec<BigRational>>, nu: usize) -> Result<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nu {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[nu].is_zero()) {
        return Err(Error::Structure("polynomiality conditions are inconsistent".into()));
    }
    if pivots.len() < nu {
        return Err(Error::Structure(format!("polynomiality leaves {} unknowns free", nu - pivots.len())));
    }
    Ok(rows[..nu].iter().map(|row| -row[nu].clone()).collect())
}

/// Newton interpolation through `(xs, ys)`; coefficients in increasing degree.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / (&xs[k] - &xs[k - level]);
        }
    }
    let mut poly = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly = poly * (x − xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for (e, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e + 1 < n {
                next[e + 1] += c;
            }
            next[e] -= c * &xs[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    poly
}

/// Reconstructs `E_D(p, ħ)` from its node values: interpolate in `p` at
/// sample values of `ħ`, then in `ħ` using the degree bound
/// `Σl_a·D + r − k` for the `p^k` coefficient. Extra samples must agree.
fn reconstruct(spec: &CISpec, ctx: &EquivContext, nodes: &[Vec<HPoly>], big_d: usize) -> Option<Vec<HPoly>> {
    const EXTRA: usize = 3;
    let lam = ctx.lambda();
    let total = spec.degree_sum() * big_d + spec.r();
    let samples = total + 1 + EXTRA;
    let count = nodes.len() * (big_d + 1);
    let offset = BigRational::new(BigInt::one(), BigInt::from(7919));
    let mut hs = Vec::with_capacity(samples);
    let mut es: Vec<Vec<BigRational>> = Vec::with_capacity(samples);
    let mut t = 0usize;
    while hs.len() < samples {
        let h = int(t) + &offset;
        t += 1;
        let mut xs = Vec::with_capacity(count);
        let mut ys = Vec::with_capacity(count);
        for (i, pencil) in nodes.iter().enumerate() {
            for (d, v) in pencil.iter().enumerate() {
                xs.push(&lam[i] + int(d) * &h);
                ys.push(v.eval(&h));
            }
        }
        let mut sorted = xs.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        es.push(interpolate(&xs, &ys));
        hs.push(h);
    }
    let mut out = Vec::new();
    for k in 0..count {
        let vals: Vec<BigRational> = es.iter().map(|e| e[k].clone()).collect();
        if k > total {
            if vals.iter().any(|v| !v.is_zero()) {
                return None;
            }
            continue;
        }
        let need = total - k + 1;
        let poly = HPoly::new(interpolate(&hs[..need], &vals[..need]));
        if hs[need..].iter().zip(&vals[need..]).any(|(h, v)| &poly.eval(h) != v) {
            return None;
        }
        out.push(poly);
    }
    while out.last().is_some_and(HPoly::is_zero) {
        out.pop();
    }
    Some(out)
}

/// Outcome of the polynomiality test at one order `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderCheck {
    pub order: usize,
    /// Every `P_d^{(i)}`, `d ≤ D`, has trivial `ħ`-denominator.
    pub parts_polynomial: bool,
    /// The exact interpolation conditions on the node values hold.
    pub conditions_hold: bool,
    /// `E_D` as a polynomial in `p` (coefficients in `ħ`), when the sampled
    /// reconstruction is consistent.
    pub e: Option<Vec<HPoly>>,
    /// `deg_p E_D ≤ Σ l_a·D + r`.
    pub degree_ok: bool,
}

impl OrderCheck {
    pub fn passed(&self) -> bool {
        self.parts_polynomial && self.conditions_hold && self.e.is_some() && self.degree_ok
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialityReport {
    pub orders: Vec<OrderCheck>,
}

impl PolynomialityReport {
    pub fn passed(&self) -> bool {
        self.orders.iter().all(OrderCheck::passed)
    }

    /// First order at which the test fails.
    pub fn first_failure(&self) -> Option<usize> {
        self.orders.iter().find(|c| !c.passed()).map(|c| c.order)
    }
}

/// Checks that `P_d^{(i)}` are polynomials and that the node values
/// `E_D(λ_i + dħ)` interpolate a polynomial `E_D(p, ħ)`, for `D ≤ max_order`.
pub fn polynomiality_check(spec: &CISpec, ctx: &EquivContext, z: &ZSeries, max_order: usize) -> Result<PolynomialityReport> {
    if z.order() < max_order {
        return Err(Error::Domain("series shorter than the requested order".into()));
    }
    let parts = polynomial_parts(ctx, z, max_order);
    let poly_parts: Vec<Vec<Option<HPoly>>> =
        parts.iter().map(|row| row.iter().map(|c| c.as_polynomial().cloned()).collect()).collect();
    let orders = (0..=max_order)
        .into_par_iter()
        .map(|big_d| {
            let ok = poly_parts.iter().all(|row| row[..=big_d].iter().all(Option::is_some));
            if !ok {
                return OrderCheck { order: big_d, parts_polynomial: false, conditions_hold: false, e: None, degree_ok: false };
            }
            let p: Vec<Vec<HPoly>> =
                poly_parts.iter().map(|row| row[..=big_d].iter().map(|c| c.clone().unwrap()).collect()).collect();
            let nodes = node_values(spec, ctx, &p, big_d);
            let affine: Vec<Vec<Affine>> =
                nodes.iter().map(|row| row.iter().map(|v| Affine::constant(v.clone(), 0)).collect()).collect();
            let conditions_hold = conditions(ctx, &affine, big_d).iter().all(|r| r[0].is_zero());
            let e = reconstruct(spec, ctx, &nodes, big_d);
            let bound = spec.degree_sum() * big_d + spec.r();
            let degree_ok = e.as_ref().is_some_and(|e| e.len() <= bound + 1);
            OrderCheck { order: big_d, parts_polynomial: true, conditions_hold, e, degree_ok }
        })
        .collect();
    Ok(PolynomialityReport { orders })
}

/// Calabi–Yau solution with `Z_i = 1 + O(1/ħ^2)` whose correlators are
/// polynomial: the recursion data `R_{i,D}` (degree `≤ D − 2`) are the unique
/// solution of the polynomiality conditions at each order.
pub fn solve_class_p(spec: &CISpec, ctx: &EquivContext, order: usize) -> Result<ZSeries> {
    spec.require(Regime::CalabiYau)?;
    let n1 = spec.n() + 1;
    let chains = Chains::new(spec, ctx, order)?;
    let mut table: Vec<Vec<RatFuncH>> = vec![vec![RatFuncH::one()]; n1];
    let mut parts: Vec<Vec<HPoly>> = vec![vec![HPoly::one()]; n1];
    for big_d in 1..=order {
        let sums = (0..n1).into_par_iter().map(|i| chains.sum(i, big_d, &table)).collect::<Result<Vec<_>>>()?;
        let fact = factorial(big_d as u64);
        let free = big_d.saturating_sub(1);
        let nu = n1 * free;
        let mut top = Vec::with_capacity(n1);
        for (i, s) in sums.iter().enumerate() {
            let euler = euler_factor(ctx, i, big_d);
            let base = s.scale(&fact).mul(&RatFuncH::from_poly(euler.clone()));
            let base = base
                .as_polynomial()
                .cloned()
                .ok_or_else(|| Error::Structure("chain sum has unexpected poles".into()))?;
            let mut terms = vec![HPoly::zero(); nu];
            for k in 0..free {
                terms[i * free + k] = euler.shift(k);
            }
            top.push(Affine { base, terms });
        }
        let nodes: Vec<Vec<Affine>> = (0..n1)
            .map(|i| {
                let w = bundle_factor(spec, ctx, i);
                (0..=big_d)
                    .map(|d| {
                        let scaled = |a: &Affine, reflect: bool| {
                            let f = |p: &HPoly| if reflect { p.reflect().scale(&w) } else { p.scale(&w) };
                            Affine { base: f(&a.base), terms: a.terms.iter().map(f).collect() }
                        };
                        if d == 0 {
                            scaled(&top[i], true)
                        } else if d == big_d {
                            scaled(&top[i], false)
                        } else {
                            Affine::constant(parts[i][d].mul(&parts[i][big_d - d].reflect()).scale(&w), nu)
                        }
                    })
                    .collect()
            })
            .collect();
        let sol = solve_linear(conditions(ctx, &nodes, big_d), nu)?;
        for i in 0..n1 {
            let r = HPoly::new(sol[i * free..(i + 1) * free].to_vec());
            let c = RatFuncH::from_poly(r.scale(&fact.recip())).add(&sums[i]).div(&hbar_pow(big_d)).unwrap();
            let p = top[i].terms.iter().zip(&sol).fold(top[i].base.clone(), |acc, (t, u)| acc.add(&t.scale(u)));
            table[i].push(c);
            parts[i].push(p);
        }
    }
    Ok(ZSeries::new(table.into_iter().map(|c| TruncSeries::new(c, order)).collect()))
}
