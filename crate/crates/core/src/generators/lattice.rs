//! Even lattices and exact short-vector enumeration.

use std::path::Path;

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::io::{lattice_fixture_from_str, lattice_fixture_to_string, LatticeFixture};
use crate::matrix;

const CATALOG: &[(&str, &str)] = &[
    ("e8", include_str!("../../fixtures/e8.json")),
    ("e8e8", include_str!("../../fixtures/e8e8.json")),
    ("d16plus", include_str!("../../fixtures/d16plus.json")),
];

/// A positive definite lattice with even Gram diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenLattice {
    name: String,
    rank: usize,
    gram: Vec<i64>,
    unimodular: bool,
}

impl EvenLattice {
    pub fn new(name: impl Into<String>, gram: &[Vec<i64>]) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 || gram.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidLattice("Gram matrix must be square and nonempty".into()));
        }
        let flat = gram.concat();
        if !matrix::is_symmetric(rank, &flat) {
            return Err(Error::InvalidLattice("Gram matrix is not symmetric".into()));
        }
        if (0..rank).any(|i| flat[i * rank + i] % 2 != 0) {
            return Err(Error::InvalidLattice("Gram diagonal is not even".into()));
        }
        for k in 1..=rank {
            let minor: Vec<i64> = (0..k).flat_map(|i| flat[i * rank..i * rank + k].to_vec()).collect();
            if !matrix::det_i64(k, &minor).is_positive() {
                return Err(Error::InvalidLattice("Gram matrix is not positive definite".into()));
            }
        }
        let unimodular = matrix::det_i64(rank, &flat).is_one();
        Ok(EvenLattice {
            name: name.into(),
            rank,
            gram: flat,
            unimodular,
        })
    }

    pub fn from_fixture(fixture: &LatticeFixture) -> Result<Self> {
        if fixture.rank != fixture.gram.len() {
            return Err(Error::InvalidLattice(format!(
                "rank {} does not match a {}-row Gram matrix",
                fixture.rank,
                fixture.gram.len()
            )));
        }
        Self::new(fixture.name.clone(), &fixture.gram)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_fixture(&lattice_fixture_from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Catalog lattices by name: `E8`, `E8+E8` (alias `e8e8`), `D16+` (alias `d16plus`).
    pub fn catalog(name: &str) -> Result<Self> {
        let key: String = name
            .to_ascii_lowercase()
            .replace("+e8", "e8")
            .replace('+', "plus")
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect();
        let key = key.strip_suffix("json").unwrap_or(&key);
        CATALOG
            .iter()
            .find(|(k, _)| *k == key)
            .ok_or_else(|| Error::InvalidLattice(format!("unknown lattice {name:?}")))
            .and_then(|(_, text)| Self::from_json(text))
    }

    pub fn catalog_names() -> Vec<String> {
        CATALOG
            .iter()
            .map(|(_, text)| lattice_fixture_from_str(text).expect("bundled fixture").name)
            .collect()
    }

    pub fn e8() -> Self {
        Self::catalog("e8").expect("bundled fixture")
    }

    pub fn e8_e8() -> Self {
        Self::catalog("e8e8").expect("bundled fixture")
    }

    pub fn d16_plus() -> Self {
        Self::catalog("d16plus").expect("bundled fixture")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[i64] {
        &self.gram
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn to_fixture(&self) -> LatticeFixture {
        LatticeFixture {
            name: self.name.clone(),
            rank: self.rank,
            gram: self.gram.chunks(self.rank).map(<[i64]>::to_vec).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        lattice_fixture_to_string(&self.to_fixture())
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        self.inner(x, x)
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank;
        (0..n)
            .map(|i| x[i] * (0..n).map(|j| self.gram[i * n + j] * y[j]).sum::<i64>())
            .sum()
    }

    /// Gram·x, so that x·y = Σ x_i (Gy)_i.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| self.gram[i * n + j] * x[j]).sum()).collect()
    }
}

/// Fraction-free LDLᵀ: with Bareiss pivots d_i (leading minors, d_{-1} = 1) and
/// eliminated entries n_ij,
///   Q(x) = Σ_i z_i² / (d_i d_{i−1}),   z_i = d_i x_i + Σ_{j>i} n_ij x_j.
/// Scaling by P = lcm(d_i d_{i−1}) makes every bound an integer.
struct Decomposition {
    n: usize,
    pivots: Vec<i128>,
    upper: Vec<i128>,
    weights: Vec<i128>,
    scale: i128,
}

impl Decomposition {
    fn new(l: &EvenLattice) -> Result<Self> {
        let n = l.rank;
        let overflow = || Error::InvalidLattice("Gram entries too large for exact enumeration".into());
        let mut a: Vec<i128> = l.gram.iter().map(|&x| x as i128).collect();
        let mut prev = 1i128;
        for k in 0..n {
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k * n + k]
                        .checked_mul(a[i * n + j])
                        .and_then(|x| x.checked_sub(a[i * n + k].checked_mul(a[k * n + j])?))
                        .ok_or_else(overflow)?;
                    a[i * n + j] = num / prev;
                }
            }
            prev = a[k * n + k];
        }
        let pivots: Vec<i128> = (0..n).map(|i| a[i * n + i]).collect();
        let denoms: Vec<i128> = (0..n)
            .map(|i| pivots[i].checked_mul(if i == 0 { 1 } else { pivots[i - 1] }).ok_or_else(overflow))
            .collect::<Result<_>>()?;
        let mut scale = 1i128;
        for &d in &denoms {
            scale = (scale / gcd(scale, d)).checked_mul(d).ok_or_else(overflow)?;
        }
        Ok(Decomposition {
            n,
            weights: denoms.iter().map(|d| scale / d).collect(),
            upper: a,
            pivots,
            scale,
        })
    }

    /// x_i with w_i (d_i x_i + c)² ≤ budget, each with the remaining budget.
    fn candidates(&self, i: usize, c: i128, budget: i128) -> impl Iterator<Item = (i64, i128)> + '_ {
        let w = self.weights[i];
        let d = self.pivots[i];
        let s = isqrt(budget / w);
        let lo = (-s - c).div_euclid(d) + i128::from((-s - c).rem_euclid(d) != 0);
        let hi = (s - c).div_euclid(d);
        (lo..=hi).map(move |x| {
            let z = d * x + c;
            (x as i64, budget - w * z * z)
        })
    }

    fn offset(&self, i: usize, x: &[i64]) -> i128 {
        (i + 1..self.n).map(|j| self.upper[i * self.n + j] * x[j] as i128).sum()
    }

    fn descend(&self, i: usize, budget: i128, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let c = self.offset(i, x);
        for (y, rest) in self.candidates(i, c, budget) {
            x[i] = y;
            if i == 0 {
                out.push(x.clone());
            } else {
                self.descend(i - 1, rest, x, out);
            }
        }
        x[i] = 0;
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

fn isqrt(v: i128) -> i128 {
    if v <= 0 {
        return 0;
    }
    let mut r = (v as f64).sqrt() as i128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// All x with xᵀGx ≤ `max_norm`, sorted by norm and then lexicographically.
pub fn short_vectors(l: &EvenLattice, max_norm: i64) -> Result<Vec<(Vec<i64>, i64)>> {
    if max_norm < 0 {
        return Err(Error::InvalidArgument(format!("max_norm {max_norm} is negative")));
    }
    let dec = Decomposition::new(l)?;
    let n = l.rank;
    let top = n - 1;
    let budget = (max_norm as i128)
        .checked_mul(dec.scale)
        .ok_or_else(|| Error::InvalidArgument("max_norm too large".into()))?;
    let outer: Vec<(i64, i128)> = dec.candidates(top, 0, budget).collect();
    let mut vectors: Vec<(Vec<i64>, i64)> = outer
        .into_par_iter()
        .flat_map_iter(|(y, rest)| {
            let mut x = vec![0i64; n];
            x[top] = y;
            let mut found = Vec::new();
            if top == 0 {
                found.push(x);
            } else {
                dec.descend(top - 1, rest, &mut x, &mut found);
            }
            found.into_iter().map(|v| {
                let norm = l.norm(&v);
                (v, norm)
            })
        })
        .collect();
    vectors.sort_unstable_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(vectors)
}
