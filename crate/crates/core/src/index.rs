//! Fourier indices: symmetric PSD matrices T = S / (2d) with S integral.

use std::fmt;

use num_rational::BigRational;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix;

/// An index matrix stored through its integral scaled form S = 2dT, row-major.
/// The scale d lives on the owning expansion; with d = 1 these are the
/// half-integral matrices (S even on the diagonal).
///
/// Ordering is lexicographic on the flattened S.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexMatrix {
    g: usize,
    s: Vec<i64>,
}

impl IndexMatrix {
    pub fn new(g: usize, s: Vec<i64>) -> Result<Self> {
        if s.len() != g * g {
            return Err(Error::InvalidIndex(format!("expected {} entries, got {}", g * g, s.len())));
        }
        if !matrix::is_symmetric(g, &s) {
            return Err(Error::InvalidIndex(format!("{:?} is not symmetric", s)));
        }
        Ok(IndexMatrix { g, s })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let g = rows.len();
        if rows.iter().any(|r| r.len() != g) {
            return Err(Error::InvalidIndex("matrix is not square".into()));
        }
        Self::new(g, rows.concat())
    }

    pub(crate) fn new_unchecked(g: usize, s: Vec<i64>) -> Self {
        debug_assert!(s.len() == g * g && matrix::is_symmetric(g, &s));
        IndexMatrix { g, s }
    }

    pub fn zero(g: usize) -> Self {
        IndexMatrix { g, s: vec![0; g * g] }
    }

    /// Degree-1 index S = [s].
    pub fn scalar(s: i64) -> Self {
        IndexMatrix { g: 1, s: vec![s] }
    }

    pub fn degree(&self) -> usize {
        self.g
    }

    pub fn entries(&self) -> &[i64] {
        &self.s
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.s[i * self.g + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.s.chunks(self.g.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.g).map(move |i| self.s[i * self.g + i])
    }

    pub fn max_diagonal(&self) -> i64 {
        self.diagonal().max().unwrap_or(0)
    }

    /// t_ii = s_ii / (2d) as an exact rational.
    pub fn diagonal_entry(&self, i: usize, denominator: u64) -> BigRational {
        BigRational::new(BigInt::from(self.get(i, i)), BigInt::from(2 * denominator))
    }

    pub fn is_zero(&self) -> bool {
        self.s.iter().all(|&x| x == 0)
    }

    pub fn is_psd(&self) -> bool {
        matrix::is_psd(self.g, &self.s)
    }

    /// Every t_ii ≤ `bound` for the given scale d.
    pub fn within_truncation(&self, bound: u64, denominator: u64) -> bool {
        let limit = 2 * denominator as i128 * bound as i128;
        self.diagonal().all(|x| (x as i128) <= limit)
    }

    /// ᵀU T U for an integer g×g matrix U.
    pub fn congruent(&self, u: &[i64]) -> Self {
        let g = self.g;
        let su = matrix::mul(g, &self.s, u);
        IndexMatrix::new_unchecked(g, matrix::mul(g, &matrix::transpose(g, u), &su))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.g, other.g);
        IndexMatrix {
            g: self.g,
            s: self.s.iter().zip(&other.s).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for IndexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S=[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn psd_check(t: &IndexMatrix) -> bool {
    t.is_psd()
}

/// All half-integral symmetric PSD g×g matrices with diagonal entries in
/// [0, bound], in lexicographic order of S = 2T.
pub fn enumerate_indices(g: usize, bound: u64) -> Vec<IndexMatrix> {
    let mut out = Vec::new();
    let mut diag = vec![0i64; g];
    enumerate_diagonals(g, bound as i64, 0, &mut diag, &mut out);
    out.sort();
    out
}

fn enumerate_diagonals(g: usize, bound: i64, i: usize, diag: &mut Vec<i64>, out: &mut Vec<IndexMatrix>) {
    if i == g {
        let mut s = vec![0i64; g * g];
        for (k, &d) in diag.iter().enumerate() {
            s[k * g + k] = d;
        }
        let pairs: Vec<(usize, usize)> = (0..g).flat_map(|a| (a + 1..g).map(move |b| (a, b))).collect();
        enumerate_off_diagonal(g, &pairs, 0, &mut s, out);
        return;
    }
    for t in 0..=bound {
        diag[i] = 2 * t;
        enumerate_diagonals(g, bound, i + 1, diag, out);
    }
}

fn enumerate_off_diagonal(g: usize, pairs: &[(usize, usize)], k: usize, s: &mut Vec<i64>, out: &mut Vec<IndexMatrix>) {
    if k == pairs.len() {
        if matrix::is_psd(g, s) {
            out.push(IndexMatrix::new_unchecked(g, s.clone()));
        }
        return;
    }
    let (a, b) = pairs[k];
    let cap = s[a * g + a] * s[b * g + b];
    let mut r = 0i64;
    while (r + 1) * (r + 1) <= cap {
        r += 1;
    }
    for x in -r..=r {
        s[a * g + b] = x;
        s[b * g + a] = x;
        enumerate_off_diagonal(g, pairs, k + 1, s, out);
    }
    s[a * g + b] = 0;
    s[b * g + a] = 0;
}
