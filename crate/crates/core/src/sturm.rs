//! Diagonal slope bounds, Sturm cutoffs, vanishing orders, and the certifying
//! checks for congruences and integrality of Fourier coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::arith::primes::require_prime;
use crate::arith::rational::{denominator_valuation, floor_to_u64, is_integer, reduce_rational_mod_p};
use crate::arith::{is_p_integral, CyclotomicInteger, Rational, ResidueField};
use crate::error::{Error, Result};
use crate::expansion::{Coefficient, ScalarRing, SiegelExpansion};
use crate::index::{enumerate_indices, IndexMatrix};
use crate::io;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimeClass {
    /// Any prime; built from the degree-1 base value 12.
    Generic,
    /// p ≥ 5; built from the degree-2 base value 10.
    AtLeastFive,
}

impl PrimeClass {
    pub fn of(g: usize, p: u64) -> Self {
        if g >= 2 && p >= 5 {
            PrimeClass::AtLeastFive
        } else {
            PrimeClass::Generic
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PrimeClass::Generic => "generic",
            PrimeClass::AtLeastFive => "p_ge_5",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeBound {
    pub degree: usize,
    pub prime_class: PrimeClass,
    pub value: Rational,
}

fn three_quarters_pow(g: usize) -> Rational {
    let e = g as u32;
    Rational::new(BigInt::from(3).pow(e), BigInt::from(4).pow(e))
}

/// 16·(3/4)^g, valid for every prime.
pub fn generic_slope_bound(g: usize) -> Result<SlopeBound> {
    if g == 0 {
        return Err(Error::InvalidDegree { min: 1, got: 0 });
    }
    Ok(SlopeBound {
        degree: g,
        prime_class: PrimeClass::Generic,
        value: Rational::from_integer(16.into()) * three_quarters_pow(g),
    })
}

/// The best available diagonal slope bound: 16·(3/4)^g in general and
/// 160/9·(3/4)^g when g ≥ 2 and p ≥ 5.
pub fn slope_bound(g: usize, p: u64) -> Result<SlopeBound> {
    require_prime(p)?;
    match PrimeClass::of(g, p) {
        PrimeClass::Generic => generic_slope_bound(g),
        PrimeClass::AtLeastFive => Ok(SlopeBound {
            degree: g,
            prime_class: PrimeClass::AtLeastFive,
            value: Rational::new(160.into(), 9.into()) * three_quarters_pow(g),
        }),
    }
}

/// One degree up: the bound scales by exactly 3/4.
pub fn relative_bound_step(prev: &SlopeBound) -> SlopeBound {
    SlopeBound {
        degree: prev.degree + 1,
        prime_class: prev.prime_class,
        value: &prev.value * Rational::new(3.into(), 4.into()),
    }
}

/// k / slope_bound(g, p); the integer cutoff on diagonal entries is its floor.
pub fn sturm_diagonal_bound(g: usize, k: u64, p: u64) -> Result<Rational> {
    let slope = slope_bound(g, p)?;
    Ok(Rational::from_integer(k.into()) / slope.value)
}

/// Mod-p diagonal vanishing order, aware of truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderResult {
    /// The constant term is nonzero mod p.
    NotVanishing,
    /// Largest l with every coefficient of diagonal ≤ l vanishing.
    Exact(u64),
    /// Every stored coefficient vanishes; the order is at least the truncation.
    AtLeast(u64),
}

impl OrderResult {
    /// A certain lower bound on the order, if one is known.
    pub fn known_lower_bound(&self) -> Option<u64> {
        match *self {
            OrderResult::NotVanishing => None,
            OrderResult::Exact(l) | OrderResult::AtLeast(l) => Some(l),
        }
    }

    /// True when this result proves the order is below `bound`. `NotVanishing`
    /// means no l ≥ 0 qualifies, so it refutes every bound ≥ 0; `AtLeast` never
    /// refutes anything.
    pub fn contradicts_lower_bound(&self, bound: &Rational) -> bool {
        match *self {
            OrderResult::NotVanishing => *bound >= Rational::zero(),
            OrderResult::Exact(l) => Rational::from_integer(l.into()) < *bound,
            OrderResult::AtLeast(_) => false,
        }
    }
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::NotVanishing => write!(f, "not_vanishing"),
            OrderResult::Exact(l) => write!(f, "exact({l})"),
            OrderResult::AtLeast(d) => write!(f, "at_least({d})"),
        }
    }
}

/// Coefficients that can be tested for vanishing modulo a prime above p.
pub trait ModPVanishing: Coefficient {
    type Context: Sync;
    fn context(ring: ScalarRing, p: u64) -> Result<Self::Context>;
    /// `None` when the value is not p-integral.
    fn vanishes_mod(&self, ctx: &Self::Context, p: u64) -> Option<bool>;
}

impl ModPVanishing for Rational {
    type Context = ();
    fn context(_: ScalarRing, p: u64) -> Result<()> {
        require_prime(p)
    }
    fn vanishes_mod(&self, _: &(), p: u64) -> Option<bool> {
        reduce_rational_mod_p(self, p).map(|r| r == 0)
    }
}

impl ModPVanishing for CyclotomicInteger {
    type Context = ResidueField;
    fn context(ring: ScalarRing, p: u64) -> Result<ResidueField> {
        match ring {
            ScalarRing::Cyclotomic(m) => ResidueField::new(m, p),
            ScalarRing::Rational => Err(Error::ScalarRingMismatch("cyclotomic".into(), "rational".into())),
        }
    }
    fn vanishes_mod(&self, ctx: &ResidueField, _: u64) -> Option<bool> {
        Some(ctx.reduce(self).is_zero())
    }
}

/// Mod-𝔭 diagonal vanishing order of a complete expansion. For exponent
/// matrices with denominators the order is ceil(x) − 1, where x is the least
/// maximal diagonal entry among coefficients nonzero mod 𝔭.
pub fn diagonal_vanishing_order<C: ModPVanishing>(f: &SiegelExpansion<C>, p: u64) -> Result<OrderResult> {
    require_prime(p)?;
    if !f.is_complete() {
        return Err(Error::IncompleteData);
    }
    let ctx = C::context(f.ring(), p)?;
    let mut min_diag: Option<i64> = None;
    for (t, c) in f.iter() {
        match c.vanishes_mod(&ctx, p) {
            None => return Err(Error::NotPIntegral { p, index: t.to_string() }),
            Some(true) => {}
            Some(false) => {
                let d = t.max_diagonal();
                min_diag = Some(min_diag.map_or(d, |x| x.min(d)));
            }
        }
    }
    let scale = 2 * f.denominator() as i64;
    Ok(match min_diag {
        None => OrderResult::AtLeast(f.truncation()),
        Some(0) => OrderResult::NotVanishing,
        Some(s) => OrderResult::Exact(Integer::div_ceil(&s, &scale) as u64 - 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Congruent,
    NotCongruent,
    Integral,
    NotIntegral,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Congruent => "congruent",
            Verdict::NotCongruent => "not_congruent",
            Verdict::Integral => "integral",
            Verdict::NotIntegral => "not_integral",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Verdict::Congruent,
            Verdict::NotCongruent,
            Verdict::Integral,
            Verdict::NotIntegral,
            Verdict::Inconclusive,
        ]
        .into_iter()
        .find(|v| v.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Diagonal Sturm bound for degree g ≥ 2.
    MainTheorem,
    /// Degree 1, bound k/12.
    ClassicalSturm,
    /// Integrality from integrality below the cutoff.
    Corollary,
    /// p-integrality from p-integrality below the cutoff.
    CorollaryPIntegral,
}

impl Theorem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem::MainTheorem => "MainTheorem",
            Theorem::ClassicalSturm => "ClassicalSturm",
            Theorem::Corollary => "Corollary",
            Theorem::CorollaryPIntegral => "CorollaryPIntegral",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Theorem::MainTheorem,
            Theorem::ClassicalSturm,
            Theorem::Corollary,
            Theorem::CorollaryPIntegral,
        ]
        .into_iter()
        .find(|t| t.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub theorem: Theorem,
    pub prime: Option<u64>,
    pub bound: Rational,
    pub cutoff: u64,
    pub indices_checked: u64,
    pub witness: Option<IndexMatrix>,
    /// SHA-256 digests of the canonical serializations of the inputs.
    pub inputs: Vec<String>,
}

pub fn digest_expansion(f: &SiegelExpansion) -> String {
    let text = io::siegel_to_string(f);
    format!("sha256:{}", hex::encode(Sha256::digest(text.as_bytes())))
}

fn require_certifiable(f: &SiegelExpansion) -> Result<()> {
    if f.ring() != ScalarRing::Rational || f.denominator() != 1 {
        return Err(Error::RequiresHalfIntegralRational);
    }
    if !f.is_complete() {
        return Err(Error::IncompleteData);
    }
    Ok(())
}

fn first_not_p_integral(f: &SiegelExpansion, p: u64) -> Option<&IndexMatrix> {
    f.iter().find(|(_, c)| !is_p_integral(c, p)).map(|(t, _)| t)
}

/// Certifies F ≡ G (mod p) from the coefficients with t_ii ≤ floor(k / ϱ),
/// or refutes it with the lexicographically first differing index.
pub fn check_congruence(f: &SiegelExpansion, g: &SiegelExpansion, p: u64) -> Result<Certificate> {
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch(f.degree(), g.degree()));
    }
    if f.weight() != g.weight() {
        return Err(Error::WeightMismatch(f.weight(), g.weight()));
    }
    require_certifiable(f)?;
    require_certifiable(g)?;
    require_prime(p)?;
    let degree = f.degree();
    let bound = sturm_diagonal_bound(degree, f.weight(), p)?;
    let cutoff = floor_to_u64(&bound).expect("nonnegative bound");
    let have = f.truncation().min(g.truncation());
    if have < cutoff {
        return Err(Error::TruncationInsufficient { needed: cutoff, have });
    }
    for h in [f, g] {
        if let Some(t) = first_not_p_integral(h, p) {
            return Err(Error::NotPIntegral { p, index: t.to_string() });
        }
    }
    let indices = enumerate_indices(degree, cutoff);
    let zero = Rational::zero();
    let witness = indices
        .par_iter()
        .position_first(|t| {
            let a = f.coefficient(t).unwrap_or(&zero);
            let b = g.coefficient(t).unwrap_or(&zero);
            reduce_rational_mod_p(&(a - b), p) != Some(0)
        })
        .map(|i| indices[i].clone());
    Ok(Certificate {
        verdict: if witness.is_some() {
            Verdict::NotCongruent
        } else {
            Verdict::Congruent
        },
        theorem: if degree == 1 {
            Theorem::ClassicalSturm
        } else {
            Theorem::MainTheorem
        },
        prime: Some(p),
        bound,
        cutoff,
        indices_checked: indices.len() as u64,
        witness,
        inputs: vec![digest_expansion(f), digest_expansion(g)],
    })
}

fn distinct_prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let db = BigInt::from(d);
        if (&n % &db).is_zero() {
            out.push(d);
            while (&n % &db).is_zero() {
                n /= &db;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(u64::try_from(&n).expect("denominator prime factor fits in u64"));
    }
    out
}

/// Certifies integrality of all coefficients from those with
/// t_ii ≤ floor(k / (16·(3/4)^g)); degree 1 uses k/12. With `p_integral`
/// set, certifies p-integrality instead.
///
/// Stored coefficients beyond the cutoff are cross-checked: a denominator
/// divisible by q there, with the hypothesis satisfied below the cutoff,
/// would contradict the congruence theorem applied to q^e·F, so such data
/// is rejected as inconsistent.
pub fn certify_integrality(f: &SiegelExpansion, p_integral: Option<u64>) -> Result<Certificate> {
    require_certifiable(f)?;
    if let Some(p) = p_integral {
        require_prime(p)?;
    }
    let degree = f.degree();
    let slope = generic_slope_bound(degree)?;
    let bound = Rational::from_integer(f.weight().into()) / &slope.value;
    let cutoff = floor_to_u64(&bound).expect("nonnegative bound");
    if f.truncation() < cutoff {
        return Err(Error::TruncationInsufficient {
            needed: cutoff,
            have: f.truncation(),
        });
    }
    let theorem = match (degree, p_integral) {
        (1, _) => Theorem::ClassicalSturm,
        (_, None) => Theorem::Corollary,
        (_, Some(_)) => Theorem::CorollaryPIntegral,
    };
    let acceptable = |c: &Rational| match p_integral {
        None => is_integer(c),
        Some(p) => is_p_integral(c, p),
    };
    let indices = enumerate_indices(degree, cutoff);
    let witness = indices
        .iter()
        .find(|t| f.coefficient(t).is_some_and(|c| !acceptable(c)))
        .cloned();
    let cert = Certificate {
        verdict: if witness.is_some() {
            Verdict::NotIntegral
        } else {
            Verdict::Integral
        },
        theorem,
        prime: p_integral,
        bound,
        cutoff,
        indices_checked: indices.len() as u64,
        witness,
        inputs: vec![digest_expansion(f)],
    };
    if cert.witness.is_some() {
        return Ok(cert);
    }

    // tail cross-check
    let mut primes: Vec<u64> = Vec::new();
    for (_, c) in f.iter() {
        for q in distinct_prime_factors(c.denom()) {
            if p_integral.is_none_or(|p| p == q) && !primes.contains(&q) {
                primes.push(q);
            }
        }
    }
    primes.sort_unstable();
    for q in primes {
        let e = f.iter().map(|(_, c)| denominator_valuation(c, q)).max().unwrap_or(0);
        let scaled = f.scale(&Rational::from_integer(BigInt::from(q).pow(e)));
        let zero = SiegelExpansion::zero(degree, f.weight(), f.truncation());
        let hypothesis = check_congruence(&scaled, &zero, q)?;
        if hypothesis.verdict == Verdict::Congruent {
            let witness = scaled
                .iter()
                .find(|(_, c)| reduce_rational_mod_p(c, q) != Some(0))
                .map(|(t, _)| t.to_string())
                .expect("maximal valuation leaves a unit coefficient");
            return Err(Error::InputInconsistent { q, witness });
        }
    }
    Ok(cert)
}
