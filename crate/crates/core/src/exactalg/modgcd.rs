//! Modular gcd of integer polynomials: gcds modulo word-size primes,
//! combined by CRT until the candidate divides both inputs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    (0..).map(|k| (1u64 << 62) - 1 - 2 * k).filter(|&n| is_prime(n))
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `F_p`; empty for the zero polynomial.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let k = a.len() - 1;
            let c = mul_mod(a[k], inv, p);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    let t = mul_mod(c, bj, p);
                    a[k - db + j] = (a[k - db + j] + p - t) % p;
                }
            }
            a.pop();
        }
        trim(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = pow_mod(l, p - 2, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

/// Exact division in `Z[x]`; `None` if `b` does not divide `a`.
pub(super) fn div_exact_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return a.iter().all(Zero::is_zero).then(Vec::new);
    }
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (db..a.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let (c, rem) = r[k].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] -= &c * bj;
        }
        q[k - db] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Representative of `c mod m` in `(-m/2, m/2]`.
fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let c = c.mod_floor(m);
    if &c > half {
        c - m
    } else {
        c
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    if v.last().is_some_and(|c| c.sign() == Sign::Minus) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Gcd of two nonzero primitive polynomials of positive degree, primitive
/// with positive leading coefficient.
pub(super) fn gcd_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let max_deg = (a.len().min(b.len())) - 1;
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    for p in primes() {
        let g = reduce(&gamma, p);
        if g == 0 || reduce(a.last().unwrap(), p) == 0 || reduce(b.last().unwrap(), p) == 0 {
            continue;
        }
        let am: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bm: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let gm = gcd_mod(am, bm, p);
        let deg = gm.len() - 1;
        if deg == 0 {
            return vec![BigInt::one()];
        }
        if deg > max_deg || deg > best_deg {
            continue;
        }
        let gm: Vec<u64> = gm.iter().map(|&c| mul_mod(c, g, p)).collect();
        let pb = BigInt::from(p);
        if deg < best_deg {
            best_deg = deg;
            let half = &pb / 2;
            acc = gm.iter().map(|&c| symmetric(&BigInt::from(c), &pb, &half)).collect();
            modulus = pb;
        } else {
            // CRT: x ≡ acc (mod modulus), x ≡ gm (mod p)
            let inv = BigInt::from(pow_mod(reduce(&modulus, p), p - 2, p));
            let mut changed = false;
            let next_mod = &modulus * &pb;
            let half = &next_mod / 2;
            for (c, &r) in acc.iter_mut().zip(&gm) {
                let diff = (BigInt::from(r) - reduce(c, p)).mod_floor(&pb);
                let t = (diff * &inv).mod_floor(&pb);
                let next = symmetric(&(&*c + &modulus * t), &next_mod, &half);
                if next != *c {
                    changed = true;
                    *c = next;
                }
            }
            modulus = next_mod;
            if changed {
                continue;
            }
        }
        let cand = primitive(acc.clone());
        if div_exact_int(a, &cand).is_some() && div_exact_int(b, &cand).is_some() {
            return cand;
        }
    }
    unreachable!("prime sequence is infinite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.iter().all(|&p| p < 1 << 62 && p > 1 << 61));
        assert!(!is_prime(561) && is_prime(1_000_000_007));
    }

    #[test]
    fn gcd_of_products() {
        // (2x+3)(x-1) and (2x+3)(x+5)
        let a = v(&[-3, 1, 2]);
        let b = v(&[15, 13, 2]);
        assert_eq!(gcd_int(&a, &b), v(&[3, 2]));
        assert_eq!(gcd_int(&v(&[1, 1]), &v(&[-1, 1])), v(&[1]));
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let big: BigInt = num_traits::pow(BigInt::from(10), 40) + 7;
        let f = vec![big.clone(), BigInt::from(3)];
        let g = vec![BigInt::from(-5), BigInt::from(1), BigInt::from(1)];
        let h = vec![big, BigInt::from(-1), BigInt::from(4)];
        let mul = |x: &[BigInt], y: &[BigInt]| {
            let mut out = vec![BigInt::zero(); x.len() + y.len() - 1];
            for (i, a) in x.iter().enumerate() {
                for (j, b) in y.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            out
        };
        assert_eq!(gcd_int(&mul(&f, &g), &mul(&f, &h)), primitive(f));
        assert!(div_exact_int(&mul(&g, &h), &g).unwrap() == h);
    }
}
