use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative polynomial in `(p, q)` with rational coefficients, keyed by
/// `(power of p, power of q)`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RelationPoly {
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl RelationPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: BigRational, p_pow: usize, q_pow: usize) -> Self {
        let mut r = Self::zero();
        r.add_term(p_pow, q_pow, c);
        r
    }

    pub fn p() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn add_term(&mut self, p_pow: usize, q_pow: usize, c: BigRational) {
        let e = self.terms.entry((p_pow, q_pow)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(p_pow, q_pow));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), BigRational> {
        &self.terms
    }

    pub fn coeff(&self, p_pow: usize, q_pow: usize) -> BigRational {
        self.terms.get(&(p_pow, q_pow)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, v * c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-BigRational::one()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term(a + c, b + d, x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::monomial(BigRational::one(), 0, 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Highest power of `p` present.
    pub fn p_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// Renders `self = 0` solved for its leading pure power of `p`, e.g.
    /// `p^5 = 4*q*p`. Falls back to `… = 0` when the leading `p`-term is not
    /// a bare `p^N`.
    pub fn display_relation(&self) -> String {
        let Some(top) = self.p_degree() else {
            return "0 = 0".into();
        };
        let lead = self.coeff(top, 0);
        let others: Vec<_> = self.terms.keys().filter(|&&(a, _)| a == top).collect();
        if others.len() != 1 || lead.is_zero() {
            return format!("{self} = 0");
        }
        let rhs = self.sub(&Self::monomial(lead.clone(), top, 0)).scale(&(-lead.recip()));
        format!("{} = {}", fmt_monomial(&BigRational::one(), top, 0), rhs)
    }
}

fn fmt_monomial(c: &BigRational, p_pow: usize, q_pow: usize) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !c.is_one() || (p_pow == 0 && q_pow == 0) {
        parts.push(c.to_string());
    }
    match q_pow {
        0 => {}
        1 => parts.push("q".into()),
        k => parts.push(format!("q^{k}")),
    }
    match p_pow {
        0 => {}
        1 => parts.push("p".into()),
        k => parts.push(format!("p^{k}")),
    }
    parts.join("*")
}

impl fmt::Display for RelationPoly {
    /// Terms by descending power of `p`, then ascending power of `q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        for (idx, (a, b)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(a, b)];
            let mag = fmt_monomial(&c.abs(), a, b);
            match (idx, c.is_negative()) {
                (0, false) => write!(f, "{mag}")?,
                (0, true) => write!(f, "-{mag}")?,
                (_, false) => write!(f, " + {mag}")?,
                (_, true) => write!(f, " - {mag}")?,
            }
        }
        Ok(())
    }
}
