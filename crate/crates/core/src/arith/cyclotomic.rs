//! Integers of the M-th cyclotomic field, stored as residues of Z[x] modulo the
//! M-th cyclotomic polynomial (power basis 1, ζ, ..., ζ^{φ(M)-1}).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::primes::{divisors, euler_phi, gcd};

/// Φ_M over Z, ascending coefficients, monic of degree φ(M).
pub fn cyclotomic_polynomial(order: u64) -> Vec<i64> {
    assert!(order >= 1, "cyclotomic order must be positive");
    // x^M - 1 = prod_{d | M} Φ_d
    let mut poly = vec![0i64; order as usize + 1];
    poly[0] = -1;
    poly[order as usize] = 1;
    for d in divisors(order) {
        if d == order {
            continue;
        }
        poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[i + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Shared context for arithmetic of a fixed order: the modulus Φ_M and the
/// reduced powers ζ^0, ..., ζ^{M-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicRing {
    order: u64,
    modulus: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CyclotomicRing {
    pub fn new(order: u64) -> Arc<Self> {
        let modulus = cyclotomic_polynomial(order);
        let dim = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; dim];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow term
            let top = cur[dim - 1];
            for i in (1..dim).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..dim {
                    cur[i] -= top * modulus[i];
                }
            }
        }
        Arc::new(CyclotomicRing {
            order,
            modulus,
            powers,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn dimension(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// ζ_M^a; depends only on a mod M.
    pub fn root(&self, a: i64) -> CyclotomicInteger {
        let e = a.rem_euclid(self.order as i64) as usize;
        CyclotomicInteger {
            order: self.order,
            coeffs: self.powers[e].iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// Adds `scale * ζ^a` into `acc` without allocating an intermediate element.
    pub fn add_scaled_root(&self, acc: &mut CyclotomicInteger, scale: &BigInt, a: i64) {
        debug_assert_eq!(acc.order, self.order);
        let e = a.rem_euclid(self.order as i64) as usize;
        for (c, &pc) in acc.coeffs.iter_mut().zip(&self.powers[e]) {
            if pc != 0 {
                *c += scale * pc;
            }
        }
    }

    /// Reduces an arbitrary polynomial in ζ (ascending coefficients) to normal form.
    pub fn reduce(&self, poly: &[BigInt]) -> CyclotomicInteger {
        let dim = self.dimension();
        let mut rem = poly.to_vec();
        if rem.len() > dim {
            for i in (dim..rem.len()).rev() {
                let c = std::mem::take(&mut rem[i]);
                if c.is_zero() {
                    continue;
                }
                for (j, &m) in self.modulus[..dim].iter().enumerate() {
                    if m != 0 {
                        rem[i - dim + j] -= &c * m;
                    }
                }
            }
            rem.truncate(dim);
        }
        rem.resize(dim, BigInt::zero());
        CyclotomicInteger {
            order: self.order,
            coeffs: rem,
        }
    }

    pub fn mul(&self, a: &CyclotomicInteger, b: &CyclotomicInteger) -> CyclotomicInteger {
        assert_eq!(a.order, self.order, "cyclotomic order mismatch");
        assert_eq!(b.order, self.order, "cyclotomic order mismatch");
        let mut prod = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(&prod)
    }

    /// Image under the automorphism ζ ↦ ζ^j (gcd(j, M) = 1).
    pub fn conjugate(&self, a: &CyclotomicInteger, j: u64) -> CyclotomicInteger {
        debug_assert_eq!(gcd(j % self.order.max(1), self.order), 1);
        let mut acc = CyclotomicInteger::zero(self.order);
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.add_scaled_root(&mut acc, c, (i as u64 * j % self.order) as i64);
            }
        }
        acc
    }

    /// Product of all conjugates except the identity one; `a * cofactor(a) = norm(a)`.
    pub fn norm_cofactor(&self, a: &CyclotomicInteger) -> CyclotomicInteger {
        let mut acc = CyclotomicInteger::one(self.order);
        for j in 2..self.order.max(2) {
            if gcd(j, self.order) == 1 {
                acc = self.mul(&acc, &self.conjugate(a, j));
            }
        }
        acc
    }

    /// Field norm down to Q, computed as the product of all Galois conjugates.
    pub fn norm(&self, a: &CyclotomicInteger) -> BigInt {
        let n = self.mul(a, &self.norm_cofactor(a));
        n.as_integer()
            .expect("product over the Galois orbit is rational")
    }

    /// `a / b` when the quotient is a cyclotomic integer, else `None`.
    pub fn exact_div(&self, a: &CyclotomicInteger, b: &CyclotomicInteger) -> Option<CyclotomicInteger> {
        if b.is_zero() {
            return None;
        }
        let cof = self.norm_cofactor(b);
        let n = self.mul(b, &cof).as_integer()?;
        let num = self.mul(a, &cof);
        let mut coeffs = Vec::with_capacity(num.coeffs.len());
        for c in num.coeffs {
            let (q, r) = c.div_rem(&n);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(CyclotomicInteger {
            order: self.order,
            coeffs,
        })
    }
}

/// Element of Z[ζ_M] in the power basis of length φ(M).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn from_coeffs(order: u64, coeffs: Vec<BigInt>) -> Option<Self> {
        if order == 0 || coeffs.len() as u64 != euler_phi(order) {
            return None;
        }
        Some(CyclotomicInteger { order, coeffs })
    }

    pub fn from_integer(order: u64, n: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); euler_phi(order) as usize];
        coeffs[0] = n;
        CyclotomicInteger { order, coeffs }
    }

    pub fn zero(order: u64) -> Self {
        Self::from_integer(order, BigInt::zero())
    }

    pub fn one(order: u64) -> Self {
        Self::from_integer(order, BigInt::one())
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if it lies in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        CyclotomicInteger {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }
}

/// ζ_M^a reduced modulo Φ_M.
pub fn root_of_unity(a: i64, order: u64) -> CyclotomicInteger {
    CyclotomicRing::new(order).root(a)
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if !first {
                write!(f, " ")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (z = zeta_{})", self.order)
    }
}

impl AddAssign<&CyclotomicInteger> for CyclotomicInteger {
    fn add_assign(&mut self, rhs: &CyclotomicInteger) {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self + &(-rhs)
    }
}

/// Convenience product; rebuilds the ring context, so hot loops should hold a
/// [`CyclotomicRing`] and call [`CyclotomicRing::mul`] instead.
impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        CyclotomicRing::new(self.order).mul(self, rhs)
    }
}
