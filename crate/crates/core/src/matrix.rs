//! Small exact integer matrix helpers (row-major square matrices).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(n: usize, entries: &[BigInt]) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut a = entries.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(i) => {
                    for j in 0..n {
                        a.swap(k * n + j, i * n + j);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[n * n - 1]
}

pub fn det_i64(n: usize, entries: &[i64]) -> BigInt {
    let big: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
    det(n, &big)
}

/// Exact PSD test: every principal minor is nonnegative.
pub fn is_psd(n: usize, entries: &[i64]) -> bool {
    // diagonal first; cheap and catches most rejections
    if (0..n).any(|i| entries[i * n + i] < 0) {
        return false;
    }
    for mask in 1u32..(1u32 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let k = idx.len();
        let mut sub = Vec::with_capacity(k * k);
        for &i in &idx {
            for &j in &idx {
                sub.push(entries[i * n + j]);
            }
        }
        if det_i64(k, &sub).is_negative() {
            return false;
        }
    }
    true
}

pub fn is_symmetric(n: usize, entries: &[i64]) -> bool {
    (0..n).all(|i| (0..i).all(|j| entries[i * n + j] == entries[j * n + i]))
}

pub fn transpose(n: usize, a: &[i64]) -> Vec<i64> {
    let mut t = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = a[i * n + j];
        }
    }
    t
}

pub fn mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

/// Inverse of a unimodular integer matrix (adjugate divided by ±1), or `None`.
pub fn unimodular_inverse(n: usize, a: &[i64]) -> Option<Vec<i64>> {
    let d = det_i64(n, a);
    let sign: i64 = if d.is_one() {
        1
    } else if d == -BigInt::one() {
        -1
    } else {
        return None;
    };
    let mut inv = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            // cofactor C_ij; inverse entry (j, i) = C_ij / det
            let mut minor = Vec::with_capacity((n - 1) * (n - 1));
            for r in (0..n).filter(|&r| r != i) {
                for c in (0..n).filter(|&c| c != j) {
                    minor.push(a[r * n + c]);
                }
            }
            let m = det_i64(n - 1, &minor);
            let m = i64::try_from(m).ok()?;
            let cof = if (i + j) % 2 == 0 { m } else { -m };
            inv[j * n + i] = cof * sign;
        }
    }
    Some(inv)
}
