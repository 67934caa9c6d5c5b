//! Fourier-Jacobi coefficients, λ-shift reduction and restriction of Jacobi
//! forms to torsion points.
//!
//! A Jacobi form φ of degree g and index m has coefficients c(T, R), with T a
//! half-integral g×g matrix and R ∈ Z^g, supported on 4mT − R ᵀR ≥ 0.
//! Coefficients are invariant under the shift
//!
//! ```text
//! T ↦ T + ½(R λ + ᵀλ ᵀR) + m ᵀλ λ,   R ↦ R + 2m ᵀλ      (λ ∈ Z^g)
//! ```
//!
//! so a complete expansion only needs the pairs with every |r_i| ≤ m. Those are
//! the pairs of smallest diagonal in their shift class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::primes::{lcm, require_prime};
use crate::arith::rational::{is_p_integral, reduce_rational_mod_p};
use crate::arith::{CyclotomicInteger, CyclotomicRing, Rational};
use crate::error::{Error, Result};
use crate::expansion::{ExpansionHeader, ScalarRing, SiegelExpansion};
use crate::index::IndexMatrix;
use crate::matrix;
use crate::sturm::OrderResult;

/// A Jacobi index (T, R). T uses the half-integral storage S = 2T.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JacobiIndexPair {
    pub t: IndexMatrix,
    pub r: Vec<i64>,
}

impl JacobiIndexPair {
    pub fn new(t: IndexMatrix, r: Vec<i64>) -> Result<Self> {
        if r.len() != t.degree() {
            return Err(Error::InvalidIndex(format!("R has length {}, expected {}", r.len(), t.degree())));
        }
        Ok(JacobiIndexPair { t, r })
    }

    /// 4mT − R ᵀR, stored as 2m·S − R ᵀR.
    pub fn discriminant(&self, m: u64) -> Vec<i64> {
        discriminant(&self.t, &self.r, m)
    }

    pub fn satisfies_support(&self, m: u64) -> bool {
        matrix::is_psd(self.t.degree(), &self.discriminant(m))
    }

    pub fn is_reduced(&self, m: u64) -> bool {
        self.r.iter().all(|&x| x.unsigned_abs() <= m)
    }
}

impl std::fmt::Display for JacobiIndexPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, R={:?})", self.t, self.r)
    }
}

/// 4mT − R ᵀR, as the integer matrix 2m·S − R ᵀR (S = 2T).
pub fn discriminant(t: &IndexMatrix, r: &[i64], m: u64) -> Vec<i64> {
    let g = t.degree();
    let m = m as i64;
    let mut out = vec![0i64; g * g];
    for i in 0..g {
        for j in 0..g {
            out[i * g + j] = 2 * m * t.get(i, j) - r[i] * r[j];
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiExpansion {
    degree: usize,
    weight: u64,
    index: u64,
    truncation: u64,
    complete: bool,
    coeffs: BTreeMap<JacobiIndexPair, Rational>,
}

impl JacobiExpansion {
    pub fn new(
        degree: usize,
        weight: u64,
        index: u64,
        truncation: u64,
        complete: bool,
        entries: impl IntoIterator<Item = (JacobiIndexPair, Rational)>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree { min: 1, got: 0 });
        }
        let mut coeffs = BTreeMap::new();
        for (pair, c) in entries {
            if pair.t.degree() != degree {
                return Err(Error::DegreeMismatch(degree, pair.t.degree()));
            }
            if pair.t.diagonal().any(|x| x % 2 != 0) {
                return Err(Error::InvalidIndex(format!("{} is not half-integral", pair.t)));
            }
            if !pair.t.within_truncation(truncation, 1) {
                return Err(Error::OutOfTruncation(pair.to_string()));
            }
            if !pair.satisfies_support(index) {
                return Err(Error::NotPsd(format!("4mT - R R^T at {pair}")));
            }
            if coeffs.contains_key(&pair) {
                return Err(Error::InvalidIndex(format!("duplicate index {pair}")));
            }
            if !c.is_zero() {
                coeffs.insert(pair, c);
            }
        }
        Ok(JacobiExpansion {
            degree,
            weight,
            index,
            truncation,
            complete,
            coeffs,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Every stored R lies in the box [−m, m]^g.
    pub fn is_reduced(&self) -> bool {
        self.coeffs.keys().all(|p| p.is_reduced(self.index))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&JacobiIndexPair, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored coefficient, without applying any shift.
    pub fn stored(&self, pair: &JacobiIndexPair) -> Option<&Rational> {
        self.coeffs.get(pair)
    }

    /// c(T, R) for an arbitrary pair, looked up through its reduced
    /// representative. Zero when the class is absent.
    pub fn coefficient(&self, t: &IndexMatrix, r: &[i64]) -> Result<Rational> {
        if let Some(c) = self.coeffs.get(&JacobiIndexPair { t: t.clone(), r: r.to_vec() }) {
            return Ok(c.clone());
        }
        if self.index == 0 {
            return Ok(Rational::zero());
        }
        let (t2, r2, _) = lambda_reduce(t, r, self.index)?;
        Ok(self
            .coeffs
            .get(&JacobiIndexPair { t: t2, r: r2 })
            .cloned()
            .unwrap_or_else(Rational::zero))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = self.clone();
        out.coeffs = self
            .coeffs
            .iter()
            .map(|(k, c)| (k.clone(), c * factor))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        out
    }
}

/// Block matrix [[T, R/2], [ᵀR/2, m]] in S = 2T storage.
fn split_block(s: &IndexMatrix) -> (IndexMatrix, Vec<i64>, i64) {
    let n = s.degree();
    let g = n - 1;
    let mut t = Vec::with_capacity(g * g);
    for i in 0..g {
        for j in 0..g {
            t.push(s.get(i, j));
        }
    }
    let r = (0..g).map(|i| s.get(i, g)).collect();
    (IndexMatrix::new_unchecked(g, t), r, s.get(g, g))
}

fn check_fj_source(f: &SiegelExpansion, m: u64) -> Result<()> {
    if f.degree() < 2 {
        return Err(Error::InvalidDegree { min: 2, got: f.degree() });
    }
    if f.denominator() != 1 || f.ring() != ScalarRing::Rational {
        return Err(Error::RequiresHalfIntegralRational);
    }
    if m > f.truncation() {
        return Err(Error::IndexOutOfRange { index: m, truncation: f.truncation() });
    }
    Ok(())
}

/// The m-th Fourier-Jacobi coefficient of a degree g+1 expansion, stored in
/// reduced form (|r_i| ≤ m). Every reduced pair with t_ii ≤ D is read from the
/// source, so the result is complete whenever the source is.
pub fn fourier_jacobi(f: &SiegelExpansion, m: u64) -> Result<JacobiExpansion> {
    check_fj_source(f, m)?;
    if !f.is_complete() {
        return Err(Error::IncompleteData);
    }
    let entries = f.iter().filter_map(|(s, c)| {
        let (t, r, corner) = split_block(s);
        (corner == 2 * m as i64 && r.iter().all(|x| x.unsigned_abs() <= m))
            .then(|| (JacobiIndexPair { t, r }, c.clone()))
    });
    JacobiExpansion::new(f.degree() - 1, f.weight(), m, f.truncation(), true, entries)
}

/// All stored pairs of the m-th Fourier-Jacobi coefficient, shifted or not.
/// The result is not in reduced form and is marked incomplete.
pub fn fourier_jacobi_raw(f: &SiegelExpansion, m: u64) -> Result<JacobiExpansion> {
    check_fj_source(f, m)?;
    let entries = f.iter().filter_map(|(s, c)| {
        let (t, r, corner) = split_block(s);
        (corner == 2 * m as i64).then(|| (JacobiIndexPair { t, r }, c.clone()))
    });
    JacobiExpansion::new(f.degree() - 1, f.weight(), m, f.truncation(), false, entries)
}

/// Applies the shift by the integer vector λ.
pub fn lambda_shift(t: &IndexMatrix, r: &[i64], m: u64, lambda: &[i64]) -> (IndexMatrix, Vec<i64>) {
    let g = t.degree();
    let m = m as i64;
    let mut s = t.entries().to_vec();
    for i in 0..g {
        for j in 0..g {
            s[i * g + j] += r[i] * lambda[j] + r[j] * lambda[i] + 2 * m * lambda[i] * lambda[j];
        }
    }
    let r2 = r.iter().zip(lambda).map(|(&ri, &li)| ri + 2 * m * li).collect();
    (IndexMatrix::new_unchecked(g, s), r2)
}

/// Shifts (T, R) so that every r_i lies in (−m, m]. Returns (T', R', λ).
pub fn lambda_reduce(t: &IndexMatrix, r: &[i64], m: u64) -> Result<(IndexMatrix, Vec<i64>, Vec<i64>)> {
    if r.len() != t.degree() {
        return Err(Error::InvalidIndex("R length does not match the degree".into()));
    }
    if m == 0 {
        if r.iter().any(|&x| x != 0) {
            return Err(Error::NoReduction(format!("{r:?}")));
        }
        return Ok((t.clone(), r.to_vec(), vec![0; r.len()]));
    }
    let two_m = 2 * m as i64;
    let lambda: Vec<i64> = r.iter().map(|&ri| Integer::div_floor(&(m as i64 - ri), &two_m)).collect();
    let (t2, r2) = lambda_shift(t, r, m, &lambda);
    Ok((t2, r2, lambda))
}

/// A torsion point (α, β) ∈ ((1/N) Z^g / N Z^g)², stored by numerators over N
/// reduced into [0, N²).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorsionPoint {
    n: u64,
    alpha: Vec<i64>,
    beta: Vec<i64>,
}

impl TorsionPoint {
    pub fn new(n: u64, alpha: Vec<i64>, beta: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTorsionPoint("N must be positive".into()));
        }
        if alpha.len() != beta.len() {
            return Err(Error::InvalidTorsionPoint("alpha and beta differ in length".into()));
        }
        let n2 = (n * n) as i64;
        Ok(TorsionPoint {
            n,
            alpha: alpha.into_iter().map(|a| a.rem_euclid(n2)).collect(),
            beta: beta.into_iter().map(|b| b.rem_euclid(n2)).collect(),
        })
    }

    /// From rational coordinates; each must have denominator dividing N.
    pub fn from_rationals(n: u64, alpha: &[Rational], beta: &[Rational]) -> Result<Self> {
        let to_num = |x: &Rational| -> Result<i64> {
            let scaled = x * Rational::from_integer(BigInt::from(n));
            if !scaled.is_integer() {
                return Err(Error::InvalidTorsionPoint(format!("{x} is not in (1/{n})Z")));
            }
            i64::try_from(scaled.to_integer()).map_err(|_| Error::InvalidTorsionPoint("coordinate too large".into()))
        };
        let alpha = alpha.iter().map(to_num).collect::<Result<_>>()?;
        let beta = beta.iter().map(to_num).collect::<Result<_>>()?;
        Self::new(n, alpha, beta)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[i64] {
        &self.beta
    }
}

/// Cyclotomic order used for restrictions at level N.
pub fn restriction_order(n: u64) -> u64 {
    lcm(n * n, 2 * n)
}

/// Output truncation floor(D − m/4), or `None` when D < m/4.
pub fn restricted_truncation(truncation: u64, m: u64) -> Option<u64> {
    (4 * truncation).checked_sub(m).map(|x| x / 4)
}

/// The (α, β) component of φ[N]: the Fourier expansion in τ of
/// (φ |_{k,m} [I, (α, β), 0])(τ, 0). Exponents have denominator 2N², values lie
/// in the cyclotomic integers of order lcm(N², 2N).
pub fn restrict_torsion(phi: &JacobiExpansion, pt: &TorsionPoint) -> Result<SiegelExpansion<CyclotomicInteger>> {
    restrict_torsion_at(phi, pt.n, &pt.alpha, &pt.beta)
}

/// Same as [`restrict_torsion`] for arbitrary (unreduced) numerator representatives.
pub fn restrict_torsion_at(
    phi: &JacobiExpansion,
    n: u64,
    alpha: &[i64],
    beta: &[i64],
) -> Result<SiegelExpansion<CyclotomicInteger>> {
    let g = phi.degree;
    if n == 0 || alpha.len() != g || beta.len() != g {
        return Err(Error::InvalidTorsionPoint(format!("expected N ≥ 1 and {g} coordinates")));
    }
    let m = phi.index;
    let out_trunc = restricted_truncation(phi.truncation, m).ok_or(Error::TruncationExhausted)?;
    let order = restriction_order(n);
    let ring = CyclotomicRing::new(order);
    let ni = n as i64;
    let mi = m as i64;
    let limit = 4 * ni * ni * out_trunc as i64;
    let ba: i64 = beta.iter().zip(alpha).map(|(b, a)| b * a).sum();
    let base_phase = mi * ba * (order as i64 / (ni * ni));
    let per_r = order as i64 / ni;

    let classes = reduced_classes(phi)?;
    let mut acc: BTreeMap<IndexMatrix, CyclotomicInteger> = BTreeMap::new();
    for (pair, c) in &classes {
        let c = integer_value(c, pair)?;
        let s = pair.t.entries();
        // admissible u_i = a_i + N λ_i per coordinate, by the diagonal bound
        let mut choices: Vec<Vec<i64>> = Vec::with_capacity(g);
        for i in 0..g {
            let (a, r, sii) = (alpha[i], pair.r[i], s[i * g + i]);
            let diag = |u: i64| 2 * ni * ni * sii + 4 * ni * r * u + 4 * mi * u * u;
            let lambdas: Vec<i64> = if m == 0 {
                vec![0]
            } else {
                let center = -a.div_euclid(ni);
                let span = out_trunc as i64 + 3;
                (center - span..=center + span).collect()
            };
            choices.push(lambdas.into_iter().map(|l| a + ni * l).filter(|&u| diag(u) <= limit).collect());
        }
        for u in cartesian(&choices) {
            let mut s2 = vec![0i64; g * g];
            for i in 0..g {
                for j in 0..g {
                    s2[i * g + j] = 2 * ni * ni * s[i * g + j]
                        + 2 * ni * (pair.r[i] * u[j] + pair.r[j] * u[i])
                        + 4 * mi * u[i] * u[j];
                }
            }
            // the shifted pair carries R + 2mλ
            let br: i64 = (0..g)
                .map(|i| beta[i] * (pair.r[i] + 2 * mi * (u[i] - alpha[i]) / ni))
                .sum();
            let phase = base_phase + br * per_r;
            let key = IndexMatrix::new_unchecked(g, s2);
            let slot = acc.entry(key).or_insert_with(|| CyclotomicInteger::zero(order));
            ring.add_scaled_root(slot, &c, phase);
        }
    }
    let header = ExpansionHeader {
        degree: g,
        weight: phi.weight,
        truncation: out_trunc,
        complete: phi.complete && phi.is_reduced(),
        denominator: 2 * n * n,
        ring: ScalarRing::Cyclotomic(order),
    };
    Ok(SiegelExpansion::from_parts(header, acc))
}

/// One representative per shift class, with R in (−m, m]^g.
fn reduced_classes(phi: &JacobiExpansion) -> Result<BTreeMap<JacobiIndexPair, Rational>> {
    let mut out: BTreeMap<JacobiIndexPair, Rational> = BTreeMap::new();
    for (pair, c) in &phi.coeffs {
        let (t, r, _) = lambda_reduce(&pair.t, &pair.r, phi.index)?;
        let key = JacobiIndexPair { t, r };
        match out.get(&key) {
            Some(prev) if prev != c => {
                return Err(Error::InvalidArgument(format!(
                    "coefficients at {pair} and its reduced representative {key} differ"
                )))
            }
            _ => {
                out.insert(key, c.clone());
            }
        }
    }
    Ok(out)
}

fn integer_value(c: &Rational, pair: &JacobiIndexPair) -> Result<BigInt> {
    if !c.is_integer() {
        return Err(Error::NonIntegralCoefficient { index: pair.to_string() });
    }
    Ok(c.to_integer())
}

fn cartesian(choices: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(choices.len())];
    for opts in choices {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for &x in opts {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Mod-p diagonal vanishing order of a Jacobi expansion with p-integral
/// rational coefficients.
pub fn jacobi_vanishing_order(phi: &JacobiExpansion, p: u64) -> Result<OrderResult> {
    require_prime(p)?;
    let mut min_diag: Option<i64> = None;
    for (pair, c) in &phi.coeffs {
        if !is_p_integral(c, p) {
            return Err(Error::NotPIntegral { p, index: pair.to_string() });
        }
        if reduce_rational_mod_p(c, p) != Some(0) {
            let d = pair.t.max_diagonal() / 2;
            min_diag = Some(min_diag.map_or(d, |x| x.min(d)));
        }
    }
    Ok(match min_diag {
        None => OrderResult::AtLeast(phi.truncation),
        Some(0) => OrderResult::NotVanishing,
        Some(d) => OrderResult::Exact(d as u64 - 1),
    })
}

/// True iff the known order strictly exceeds m/4 + k/slope; in that range a
/// genuine Jacobi form must vanish identically mod p.
pub fn jacobi_zero_prediction(phi: &JacobiExpansion, p: u64, slope: &Rational) -> Result<bool> {
    if !slope.is_positive() {
        return Err(Error::InvalidArgument("slope bound must be positive".into()));
    }
    let order = jacobi_vanishing_order(phi, p)?;
    let threshold = Rational::new(BigInt::from(phi.index), BigInt::from(4))
        + Rational::from_integer(BigInt::from(phi.weight)) / slope;
    Ok(match order.known_lower_bound() {
        Some(x) => Rational::from_integer(BigInt::from(x)) > threshold,
        None => false,
    })
}
