use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always normalized: lowest terms, positive denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical wire form, always `num/den` (the denominator is printed even when it is 1).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// True iff `p` does not divide the denominator.
pub fn is_p_integral(r: &Rational, p: u64) -> bool {
    !(r.denom() % BigInt::from(p)).is_zero()
}

/// Residue of a p-integral rational in F_p; `None` when `p` divides the denominator.
pub fn reduce_rational_mod_p(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = r.numer().mod_floor(&pb);
    let num = u64::try_from(num).expect("residue below p");
    let den = u64::try_from(den).expect("residue below p");
    Some(super::primes::mul_mod(num, super::primes::inv_mod(den, p), p))
}

/// Exponent of `p` in the denominator of `r`.
pub fn denominator_valuation(r: &Rational, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let mut d = r.denom().clone();
    let mut e = 0;
    while (&d % &pb).is_zero() {
        d /= &pb;
        e += 1;
    }
    e
}

pub fn floor_to_u64(r: &Rational) -> Option<u64> {
    if r.is_negative() {
        return None;
    }
    u64::try_from(r.floor().to_integer()).ok()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
