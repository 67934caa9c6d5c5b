//! The root-of-unity matrix A = (ζ_N^{(Nβ)·r}) for degree 1.

use crate::arith::primes::require_prime;
use crate::arith::{CyclotomicInteger, CyclotomicRing};
use crate::error::{Error, Result};

fn require_odd_prime(n: u64) -> Result<()> {
    require_prime(n)?;
    if n == 2 {
        return Err(Error::InvalidArgument("N must be an odd prime".into()));
    }
    Ok(())
}

/// Rows r with (1−N)/2 < r ≤ (N−1)/2, columns Nβ = 0..=N−2.
pub fn torsion_matrix(n: u64) -> Result<Vec<Vec<CyclotomicInteger>>> {
    require_odd_prime(n)?;
    let ring = CyclotomicRing::new(n);
    let half = (n as i64 - 1) / 2;
    Ok((-half + 1..=half)
        .map(|r| (0..=n as i64 - 2).map(|b| ring.root(b * r)).collect())
        .collect())
}

/// Exact determinant of [`torsion_matrix`] by fraction-free elimination in Z[ζ_N].
pub fn torsion_matrix_det(n: u64) -> Result<CyclotomicInteger> {
    let mut a = torsion_matrix(n)?;
    let ring = CyclotomicRing::new(n);
    let size = a.len();
    let mut sign = false;
    let mut prev = CyclotomicInteger::one(n);
    for k in 0..size {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(CyclotomicInteger::zero(n)),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &ring.mul(&a[k][k], &a[i][j]) - &ring.mul(&a[i][k], &a[k][j]);
                a[i][j] = ring.exact_div(&num, &prev).expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    Ok(if sign { -&det } else { det })
}
