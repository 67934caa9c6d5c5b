//! Dense polynomials over F_p (ascending coefficients, no trailing zeros) and
//! the Cantor-Zassenhaus equal-degree split used to factor Φ_M mod p.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cyclotomic::cyclotomic_polynomial;
use super::primes::{gcd, inv_mod, mul_mod, multiplicative_order, require_prime};
use crate::error::{Error, Result};

pub type FpPoly = Vec<u64>;

pub fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn from_integers(coeffs: &[i64], p: u64) -> FpPoly {
    trim(coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut rem = trim(a.to_vec());
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = mul_mod(rem[dr], lead_inv, p);
        quot[dr - db] = c;
        for (j, &bc) in b[..=db].iter().enumerate() {
            let k = dr - db + j;
            rem[k] = (rem[k] + p - mul_mod(c, bc, p)) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    div_rem(a, b, p).1
}

pub fn make_monic(a: &[u64], p: u64) -> FpPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p);
            a[..=d].iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

/// Monic gcd.
pub fn gcd_poly(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&x, p)
}

pub fn mul_mod_poly(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> FpPoly {
    rem(&mul(a, b, p), modulus, p)
}

pub fn pow_mod_poly(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> FpPoly {
    let mut acc = rem(&[1], modulus, p);
    let base = rem(base, modulus, p);
    for i in (0..exp.bits()).rev() {
        acc = mul_mod_poly(&acc, &acc, modulus, p);
        if exp.bit(i) {
            acc = mul_mod_poly(&acc, &base, modulus, p);
        }
    }
    acc
}

/// Splits a squarefree monic `f` whose irreducible factors all have degree `d`.
/// The factor list is sorted, so the result is independent of the random choices.
pub fn equal_degree_factors(f: &[u64], d: usize, p: u64) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p ^ ((d as u64) << 32));
    let mut out = Vec::new();
    let mut stack = vec![make_monic(f, p)];
    while let Some(g) = stack.pop() {
        let n = degree(&g).unwrap_or(0);
        if n <= d {
            if n > 0 {
                out.push(g);
            }
            continue;
        }
        loop {
            let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
            if degree(&a).is_none_or(|da| da == 0) {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^{2^{d-1}}
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = mul_mod_poly(&t, &t, &g, p);
                    acc = add(&acc, &t, p);
                }
                acc
            } else {
                let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
                sub(&pow_mod_poly(&a, &e, &g, p), &[1], p)
            };
            let h = gcd_poly(&g, &b, p);
            let dh = degree(&h).unwrap_or(0);
            if dh > 0 && dh < n {
                let (q, r) = div_rem(&g, &h, p);
                debug_assert!(r.is_empty());
                stack.push(h);
                stack.push(make_monic(&q, p));
                break;
            }
        }
    }
    out.sort();
    out
}

/// The distinguished irreducible factor of Φ_M mod p: among all irreducible
/// factors (each of degree ord_M(p)) the lexicographically least coefficient
/// vector, read from the constant term upward.
pub fn cyclotomic_factor_mod_p(order: u64, p: u64) -> Result<FpPoly> {
    require_prime(p)?;
    if order == 0 {
        return Err(Error::InvalidArgument("cyclotomic order must be positive".into()));
    }
    if gcd(order, p) != 1 {
        return Err(Error::Ramified { order, p });
    }
    let phi = from_integers(&cyclotomic_polynomial(order), p);
    let d = multiplicative_order(p, order) as usize;
    let factors = equal_degree_factors(&phi, d, p);
    debug_assert!(factors.iter().all(|f| degree(f) == Some(d)));
    Ok(factors.into_iter().next().expect("Φ_M has at least one factor"))
}
