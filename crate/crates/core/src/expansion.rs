//! Truncated Fourier expansions of scalar-valued Siegel modular forms.
//!
//! An expansion of degree g and truncation D holds coefficients c(T) for
//! PSD indices T whose diagonal entries are all ≤ D. The `complete` flag is a
//! caller assertion that every nonzero coefficient in that range is present;
//! it is never inferred.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::arith::{CyclotomicInteger, Rational};
use crate::error::{Error, Result};
use crate::index::IndexMatrix;
use crate::matrix;

pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn vanishes(&self) -> bool;
    fn accumulate(&mut self, other: &Self);
    fn ring(&self) -> ScalarRing;
}

impl Coefficient for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn ring(&self) -> ScalarRing {
        ScalarRing::Rational
    }
}

impl Coefficient for CyclotomicInteger {
    fn vanishes(&self) -> bool {
        CyclotomicInteger::is_zero(self)
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn ring(&self) -> ScalarRing {
        ScalarRing::Cyclotomic(self.order())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarRing {
    Rational,
    Cyclotomic(u64),
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Rational => write!(f, "rational"),
            ScalarRing::Cyclotomic(m) => write!(f, "cyclotomic({m})"),
        }
    }
}

/// Shape data shared by every expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionHeader {
    pub degree: usize,
    pub weight: u64,
    pub truncation: u64,
    pub complete: bool,
    pub denominator: u64,
    pub ring: ScalarRing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SiegelExpansion<C = Rational> {
    header: ExpansionHeader,
    coeffs: BTreeMap<IndexMatrix, C>,
}

impl<C: Coefficient> SiegelExpansion<C> {
    /// Validates every invariant; zero values are dropped, duplicate indices rejected.
    pub fn new(header: ExpansionHeader, entries: impl IntoIterator<Item = (IndexMatrix, C)>) -> Result<Self> {
        if header.degree == 0 {
            return Err(Error::InvalidDegree { min: 1, got: 0 });
        }
        if header.denominator == 0 {
            return Err(Error::InvalidArgument("index denominator must be positive".into()));
        }
        let mut coeffs = BTreeMap::new();
        for (t, c) in entries {
            validate_index(&header, &t)?;
            if c.ring() != header.ring {
                return Err(Error::ScalarRingMismatch(header.ring.to_string(), c.ring().to_string()));
            }
            if coeffs.contains_key(&t) {
                return Err(Error::InvalidIndex(format!("duplicate index {t}")));
            }
            if !c.vanishes() {
                coeffs.insert(t, c);
            }
        }
        Ok(SiegelExpansion { header, coeffs })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(header: ExpansionHeader, mut coeffs: BTreeMap<IndexMatrix, C>) -> Self {
        coeffs.retain(|_, c| !c.vanishes());
        debug_assert!(coeffs.keys().all(|t| validate_index(&header, t).is_ok()));
        SiegelExpansion { header, coeffs }
    }

    pub fn header(&self) -> &ExpansionHeader {
        &self.header
    }

    pub fn degree(&self) -> usize {
        self.header.degree
    }

    pub fn weight(&self) -> u64 {
        self.header.weight
    }

    pub fn truncation(&self) -> u64 {
        self.header.truncation
    }

    pub fn is_complete(&self) -> bool {
        self.header.complete
    }

    pub fn denominator(&self) -> u64 {
        self.header.denominator
    }

    pub fn ring(&self) -> ScalarRing {
        self.header.ring
    }

    pub fn coefficient(&self, t: &IndexMatrix) -> Option<&C> {
        self.coeffs.get(t)
    }

    /// Stored (nonzero) coefficients in lexicographic index order.
    pub fn iter(&self) -> impl Iterator<Item = (&IndexMatrix, &C)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &BTreeMap<IndexMatrix, C> {
        &self.coeffs
    }

    pub fn with_complete(mut self, complete: bool) -> Self {
        self.header.complete = complete;
        self
    }

    /// Re-indexes by T ↦ c(ᵀU T U). Indices whose preimage leaves the truncation
    /// are dropped and `complete` is cleared unless U is a signed permutation.
    pub fn unimodular_transform(&self, u: &[i64]) -> Result<Self> {
        let g = self.degree();
        if u.len() != g * g {
            return Err(Error::InvalidArgument(format!("U must be {g}x{g}")));
        }
        let v = matrix::unimodular_inverse(g, u).ok_or(Error::NotUnimodular)?;
        let mut out = BTreeMap::new();
        for (t, c) in &self.coeffs {
            // new(T) = old(ᵀU T U), so the stored index T0 moves to ᵀV T0 V
            let moved = t.congruent(&v);
            if moved.within_truncation(self.truncation(), self.denominator()) {
                out.insert(moved, c.clone());
            }
        }
        let mut header = self.header;
        header.complete = self.header.complete && is_signed_permutation(g, u);
        Ok(SiegelExpansion::from_parts(header, out))
    }
}

fn validate_index(header: &ExpansionHeader, t: &IndexMatrix) -> Result<()> {
    if t.degree() != header.degree {
        return Err(Error::DegreeMismatch(header.degree, t.degree()));
    }
    if header.denominator == 1 && t.diagonal().any(|x| x % 2 != 0) {
        return Err(Error::InvalidIndex(format!("{t} has odd diagonal at denominator 1")));
    }
    if !t.is_psd() {
        return Err(Error::NotPsd(t.to_string()));
    }
    if !t.within_truncation(header.truncation, header.denominator) {
        return Err(Error::OutOfTruncation(t.to_string()));
    }
    Ok(())
}

pub fn is_signed_permutation(g: usize, u: &[i64]) -> bool {
    (0..g).all(|i| {
        let row = &u[i * g..(i + 1) * g];
        row.iter().filter(|&&x| x != 0).count() == 1 && row.iter().all(|&x| x.abs() <= 1)
    }) && (0..g).all(|j| (0..g).filter(|&i| u[i * g + j] != 0).count() == 1)
}

impl SiegelExpansion<Rational> {
    pub fn rational_header(degree: usize, weight: u64, truncation: u64) -> ExpansionHeader {
        ExpansionHeader {
            degree,
            weight,
            truncation,
            complete: true,
            denominator: 1,
            ring: ScalarRing::Rational,
        }
    }

    pub fn zero(degree: usize, weight: u64, truncation: u64) -> Self {
        SiegelExpansion::from_parts(Self::rational_header(degree, weight, truncation), BTreeMap::new())
    }

    /// The constant form 1 (weight 0).
    pub fn one(degree: usize, truncation: u64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(IndexMatrix::zero(degree), Rational::from_integer(1.into()));
        SiegelExpansion::from_parts(Self::rational_header(degree, 0, truncation), coeffs)
    }

    /// Degree-1 convenience: coefficients a_0, a_1, ... of q^0, q^1, ...
    pub fn from_q_series(weight: u64, coeffs: &[Rational]) -> Self {
        assert!(!coeffs.is_empty());
        let entries = coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| (IndexMatrix::scalar(2 * n as i64), c.clone()));
        let header = Self::rational_header(1, weight, coeffs.len() as u64 - 1);
        SiegelExpansion::from_parts(header, entries.collect())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|(t, c)| (t.clone(), c * factor)).collect();
        SiegelExpansion::from_parts(self.header, coeffs)
    }
}

/// Exact linear combination Σ a_i F_i. Truncation is the minimum of the inputs,
/// completeness the conjunction.
pub fn linear_combine(terms: &[(Rational, &SiegelExpansion)]) -> Result<SiegelExpansion> {
    let (_, first) = terms
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))?;
    let mut header = first.header;
    for (_, f) in &terms[1..] {
        check_compatible(&header, &f.header)?;
        header.truncation = header.truncation.min(f.truncation());
        header.complete &= f.is_complete();
    }
    let mut acc: BTreeMap<IndexMatrix, Rational> = BTreeMap::new();
    for (a, f) in terms {
        if a.is_zero() {
            continue;
        }
        for (t, c) in f.iter() {
            if t.within_truncation(header.truncation, header.denominator) {
                *acc.entry(t.clone()).or_insert_with(Rational::zero) += a * c;
            }
        }
    }
    Ok(SiegelExpansion::from_parts(header, acc))
}

fn check_compatible(a: &ExpansionHeader, b: &ExpansionHeader) -> Result<()> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch(a.degree, b.degree));
    }
    if a.weight != b.weight {
        return Err(Error::WeightMismatch(a.weight, b.weight));
    }
    if a.denominator != b.denominator {
        return Err(Error::DenominatorMismatch(a.denominator, b.denominator));
    }
    if a.ring != b.ring {
        return Err(Error::ScalarRingMismatch(a.ring.to_string(), b.ring.to_string()));
    }
    Ok(())
}

/// Product of two forms: weights add, truncation is the minimum. An index of
/// the product within that truncation only receives contributions from factor
/// indices within it, since PSD diagonals are nonnegative and additive.
pub fn pointwise_multiply(f: &SiegelExpansion, g: &SiegelExpansion) -> Result<SiegelExpansion> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch(f.degree(), g.degree()));
    }
    if f.denominator() != g.denominator() {
        return Err(Error::DenominatorMismatch(f.denominator(), g.denominator()));
    }
    if !f.is_complete() || !g.is_complete() {
        return Err(Error::IncompleteData);
    }
    let mut header = f.header;
    header.weight = f.weight() + g.weight();
    header.truncation = f.truncation().min(g.truncation());
    let d = header.denominator;
    let mut acc: BTreeMap<IndexMatrix, Rational> = BTreeMap::new();
    for (s, a) in f.iter() {
        if !s.within_truncation(header.truncation, d) {
            continue;
        }
        for (t, b) in g.iter() {
            let sum = s.add(t);
            if sum.within_truncation(header.truncation, d) {
                *acc.entry(sum).or_insert_with(Rational::zero) += a * b;
            }
        }
    }
    Ok(SiegelExpansion::from_parts(header, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn q_series(weight: u64, v: &[i64]) -> SiegelExpansion {
        SiegelExpansion::from_q_series(weight, &v.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn f_minus_f_is_zero() {
        let f = q_series(4, &[1, 240, 2160]);
        let z = linear_combine(&[(int(1), &f), (int(-1), &f)]).unwrap();
        assert!(z.is_empty());
        assert!(z.is_complete());
    }

    #[test]
    fn scaling_a_single_coefficient() {
        let f = q_series(12, &[0, 5]);
        let two_f = linear_combine(&[(int(2), &f)]).unwrap();
        assert_eq!(two_f.coefficient(&IndexMatrix::scalar(2)), Some(&int(10)));
    }

    #[test]
    fn combine_rejects_mismatches() {
        let e4 = q_series(4, &[1, 240]);
        let e6 = q_series(6, &[1, -504]);
        assert_eq!(linear_combine(&[(int(1), &e4), (int(1), &e6)]), Err(Error::WeightMismatch(4, 6)));
        assert!(linear_combine(&[]).is_err());
    }

    #[test]
    fn truncation_and_completeness_propagate() {
        let a = q_series(4, &[1, 240, 2160]);
        let b = q_series(4, &[1, 240]).with_complete(false);
        let c = linear_combine(&[(int(1), &a), (int(1), &b)]).unwrap();
        assert_eq!(c.truncation(), 1);
        assert!(!c.is_complete());
    }

    #[test]
    fn multiply_by_one_and_zero() {
        let e4 = q_series(4, &[1, 240, 2160, 6720, 17520, 30240]);
        let one = SiegelExpansion::one(1, 5);
        assert_eq!(pointwise_multiply(&e4, &one).unwrap().coefficients(), e4.coefficients());
        let zero = SiegelExpansion::zero(1, 0, 5);
        assert!(pointwise_multiply(&e4, &zero).unwrap().is_empty());
        let sq = pointwise_multiply(&e4, &e4).unwrap();
        assert_eq!(sq.weight(), 8);
        assert_eq!(sq.coefficient(&IndexMatrix::scalar(2)), Some(&int(480)));
        assert_eq!(pointwise_multiply(&e4, &e4.clone().with_complete(false)), Err(Error::IncompleteData));
    }

    #[test]
    fn invariants_enforced_on_construction() {
        let header = SiegelExpansion::rational_header(2, 4, 1);
        let bad_psd = IndexMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(SiegelExpansion::new(header, [(bad_psd, int(1))]), Err(Error::NotPsd(_))));
        let too_big = IndexMatrix::from_rows(&[vec![4, 0], vec![0, 0]]).unwrap();
        assert!(matches!(SiegelExpansion::new(header, [(too_big, int(1))]), Err(Error::OutOfTruncation(_))));
        let zero_val = SiegelExpansion::new(header, [(IndexMatrix::zero(2), int(0))]).unwrap();
        assert!(zero_val.is_empty());
    }

    #[test]
    fn swap_relabels_indices() {
        let header = SiegelExpansion::rational_header(2, 4, 2);
        let t = IndexMatrix::from_rows(&[vec![2, 1], vec![1, 4]]).unwrap();
        let f = SiegelExpansion::new(header, [(t, int(7))]).unwrap();
        let swapped = f.unimodular_transform(&[0, 1, 1, 0]).unwrap();
        let expect = IndexMatrix::from_rows(&[vec![4, 1], vec![1, 2]]).unwrap();
        assert_eq!(swapped.coefficient(&expect), Some(&int(7)));
        assert!(swapped.is_complete());
        assert_eq!(f.unimodular_transform(&[1, 0, 0, 1]).unwrap(), f);
        assert_eq!(f.unimodular_transform(&[2, 0, 0, 1]), Err(Error::NotUnimodular));
        let sheared = f.unimodular_transform(&[1, 1, 0, 1]).unwrap();
        assert!(!sheared.is_complete());
    }
}
