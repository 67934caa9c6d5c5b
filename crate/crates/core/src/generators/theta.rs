//! Degree-g theta series of even unimodular lattices.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::lattice::{short_vectors, EvenLattice};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::expansion::SiegelExpansion;
use crate::index::IndexMatrix;

struct Candidates {
    vectors: Vec<Vec<i64>>,
    images: Vec<Vec<i64>>,
    norms: Vec<i64>,
}

impl Candidates {
    fn dot(&self, a: usize, b: usize) -> i64 {
        self.vectors[a].iter().zip(&self.images[b]).map(|(x, y)| x * y).sum()
    }
}

/// Fourier coefficients c(T) = #{(x_1..x_g) : (x_i·x_j) = 2T} for every T
/// with diagonal ≤ `bound`.
pub fn theta_series(l: &EvenLattice, g: usize, bound: u64) -> Result<SiegelExpansion> {
    if !l.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    if g == 0 {
        return Err(Error::InvalidDegree { min: 1, got: 0 });
    }
    let max_norm = i64::try_from(2 * bound).map_err(|_| Error::InvalidArgument("bound too large".into()))?;
    let vectors: Vec<Vec<i64>> = short_vectors(l, max_norm)?.into_iter().map(|(v, _)| v).collect();
    let cands = Candidates {
        images: vectors.iter().map(|v| l.apply(v)).collect(),
        norms: vectors.iter().map(|v| l.norm(v)).collect(),
        vectors,
    };
    let counts = (0..cands.vectors.len())
        .into_par_iter()
        .fold(HashMap::new, |mut acc, first| {
            let mut chosen = vec![first];
            let mut s = vec![0i64; g * g];
            s[0] = cands.norms[first];
            extend(&cands, g, &mut chosen, &mut s, &mut acc);
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0u64) += v;
            }
            a
        });
    let entries = counts
        .into_iter()
        .map(|(s, c)| (IndexMatrix::new_unchecked(g, s), Rational::from_integer(BigInt::from(c))));
    let weight = (l.rank() / 2) as u64;
    SiegelExpansion::new(SiegelExpansion::rational_header(g, weight, bound), entries)
}

/// Fills row/column k of the Gram matrix `s` for each choice of the next vector.
fn extend(c: &Candidates, g: usize, chosen: &mut Vec<usize>, s: &mut [i64], acc: &mut HashMap<Vec<i64>, u64>) {
    let k = chosen.len();
    if k == g {
        match acc.get_mut(&s[..]) {
            Some(count) => *count += 1,
            None => {
                acc.insert(s.to_vec(), 1);
            }
        }
        return;
    }
    for next in 0..c.vectors.len() {
        s[k * g + k] = c.norms[next];
        for (i, &prev) in chosen.iter().enumerate() {
            let v = c.dot(prev, next);
            s[i * g + k] = v;
            s[k * g + i] = v;
        }
        chosen.push(next);
        extend(c, g, chosen, s, acc);
        chosen.pop();
    }
}
