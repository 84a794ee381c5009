//! Fixed-point recursions and their consequences: the recursion solver and
//! closed forms, the coordinate transformations of the Calabi–Yau case, the
//! polynomiality test and a localization count of lines.

mod classp;
mod lines;
mod recursion;
mod transform;

use std::collections::BTreeMap;

use crate::exactalg::{HPoly, RatFuncH, TruncSeries};

pub use classp::{
    node_values, polynomial_parts, polynomiality_check, solve_class_p, PolynomialityReport,
};
pub use lines::lines_count;
pub use recursion::{
    closed_form_z, coeff_ij, initial_condition_boundary, initial_condition_boundary_closed,
    initial_condition_cy_closed, solve_recursion,
};
pub use transform::{transform_abc, Direction};

/// Per-fixed-point series `Z_i = Σ_d q^d C_i(d)` with `C_i(d)` rational in
/// `ħ`, in the variable `q` for every regime.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSeries {
    per_point: Vec<TruncSeries<RatFuncH>>,
}

impl ZSeries {
    pub fn new(per_point: Vec<TruncSeries<RatFuncH>>) -> Self {
        ZSeries { per_point }
    }

    pub fn per_point(&self) -> &[TruncSeries<RatFuncH>] {
        &self.per_point
    }

    pub fn point(&self, i: usize) -> &TruncSeries<RatFuncH> {
        &self.per_point[i]
    }

    pub fn coeff(&self, i: usize, d: usize) -> &RatFuncH {
        self.per_point[i].coeff(d)
    }

    pub fn order(&self) -> usize {
        self.per_point.iter().map(TruncSeries::order).min().unwrap_or(0)
    }

    pub fn truncate(&self, order: usize) -> Self {
        ZSeries::new(self.per_point.iter().map(|s| s.truncate(order)).collect())
    }

    /// Replaces one coefficient (used for negative controls).
    pub fn with_coeff(&self, i: usize, d: usize, c: RatFuncH) -> Self {
        let mut per_point = self.per_point.clone();
        let mut v = per_point[i].coeffs().to_vec();
        v[d] = c;
        per_point[i] = TruncSeries::new(v, per_point[i].order());
        ZSeries::new(per_point)
    }
}

/// Additive data `R_{i,d}` of the recursion; `R_{i,0} = 1` and missing entries
/// are zero.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct InitialCondition {
    r: BTreeMap<(usize, usize), HPoly>,
}

impl InitialCondition {
    /// All `R_{i,d} = 0` for `d ≥ 1`.
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn set(&mut self, i: usize, d: usize, value: HPoly) {
        if value.is_zero() {
            self.r.remove(&(i, d));
        } else {
            self.r.insert((i, d), value);
        }
    }

    pub fn get(&self, i: usize, d: usize) -> HPoly {
        if d == 0 {
            return HPoly::one();
        }
        self.r.get(&(i, d)).cloned().unwrap_or_else(HPoly::zero)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), HPoly> {
        &self.r
    }
}
