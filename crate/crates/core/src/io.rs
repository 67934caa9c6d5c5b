//! JSON file formats for expansions, certificates and lattice fixtures.
//!
//! Writers are canonical: coefficients in lexicographic index order, rationals
//! as `num/den`, fixed field order. Re-serializing a parsed file reproduces it
//! byte for byte.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, CyclotomicInteger, Rational};
use crate::error::{Error, Result};
use crate::expansion::{Coefficient, ExpansionHeader, ScalarRing, SiegelExpansion};
use crate::index::IndexMatrix;
use crate::jacobi::{JacobiExpansion, JacobiIndexPair};
use crate::sturm::{Certificate, Theorem, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum WireRing {
    Name(String),
    Cyclotomic { cyclotomic: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireCyclotomic {
    pub order: u64,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireValue {
    Rational(String),
    Cyclotomic(WireCyclotomic),
}

#[derive(Debug, Serialize, Deserialize)]
struct WireCoefficient {
    #[serde(rename = "S")]
    s: Vec<Vec<i64>>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    r: Option<Vec<i64>>,
    value: WireValue,
}

#[derive(Debug, Serialize, Deserialize)]
struct WireExpansion {
    kind: String,
    degree: usize,
    weight: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<u64>,
    truncation: u64,
    complete: bool,
    #[serde(default = "default_denominator")]
    denominator: u64,
    #[serde(default = "default_ring")]
    scalar_ring: WireRing,
    coefficients: Vec<WireCoefficient>,
}

fn default_denominator() -> u64 {
    1
}

fn default_ring() -> WireRing {
    WireRing::Name("rational".into())
}

fn ring_to_wire(ring: ScalarRing) -> WireRing {
    match ring {
        ScalarRing::Rational => WireRing::Name("rational".into()),
        ScalarRing::Cyclotomic(m) => WireRing::Cyclotomic { cyclotomic: m },
    }
}

fn ring_from_wire(w: &WireRing) -> Result<ScalarRing> {
    match w {
        WireRing::Name(s) if s == "rational" => Ok(ScalarRing::Rational),
        WireRing::Name(s) => Err(Error::Parse(format!("unknown scalar ring {s:?}"))),
        WireRing::Cyclotomic { cyclotomic } if *cyclotomic >= 1 => Ok(ScalarRing::Cyclotomic(*cyclotomic)),
        WireRing::Cyclotomic { .. } => Err(Error::Parse("cyclotomic order must be positive".into())),
    }
}

/// Conversion between coefficient values and their wire form.
pub trait WireScalar: Coefficient + Sized {
    fn to_wire(&self) -> WireValue;
    fn from_wire(w: &WireValue, ring: ScalarRing) -> Result<Self>;
}

impl WireScalar for Rational {
    fn to_wire(&self) -> WireValue {
        WireValue::Rational(format_rational(self))
    }
    fn from_wire(w: &WireValue, _: ScalarRing) -> Result<Self> {
        match w {
            WireValue::Rational(s) => parse_rational(s),
            WireValue::Cyclotomic(_) => Err(Error::Parse("expected a rational value".into())),
        }
    }
}

impl WireScalar for CyclotomicInteger {
    fn to_wire(&self) -> WireValue {
        WireValue::Cyclotomic(cyclotomic_to_wire(self))
    }
    fn from_wire(w: &WireValue, ring: ScalarRing) -> Result<Self> {
        match w {
            WireValue::Cyclotomic(c) => {
                let v = cyclotomic_from_wire(c)?;
                if ScalarRing::Cyclotomic(v.order()) != ring {
                    return Err(Error::ScalarRingMismatch(ring.to_string(), v.ring().to_string()));
                }
                Ok(v)
            }
            WireValue::Rational(_) => Err(Error::Parse("expected a cyclotomic value".into())),
        }
    }
}

pub fn cyclotomic_to_wire(c: &CyclotomicInteger) -> WireCyclotomic {
    WireCyclotomic {
        order: c.order(),
        coeffs: c.coeffs().iter().map(BigInt::to_string).collect(),
    }
}

pub fn cyclotomic_from_wire(w: &WireCyclotomic) -> Result<CyclotomicInteger> {
    let coeffs = w
        .coeffs
        .iter()
        .map(|s| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("invalid integer {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    CyclotomicInteger::from_coeffs(w.order, coeffs)
        .ok_or_else(|| Error::Parse(format!("coefficient count does not match order {}", w.order)))
}

/// Header fields one per line, coefficients one compact object per line.
fn expansion_to_string(wire: &WireExpansion) -> String {
    let mut out = String::from("{\n");
    out += &format!("  \"kind\": {},\n", compact(&wire.kind));
    out += &format!("  \"degree\": {},\n", wire.degree);
    out += &format!("  \"weight\": {},\n", wire.weight);
    if let Some(m) = wire.index {
        out += &format!("  \"index\": {m},\n");
    }
    out += &format!("  \"truncation\": {},\n", wire.truncation);
    out += &format!("  \"complete\": {},\n", wire.complete);
    out += &format!("  \"denominator\": {},\n", wire.denominator);
    out += &format!("  \"scalar_ring\": {},\n", compact(&wire.scalar_ring));
    out += "  \"coefficients\": [";
    for (i, c) in wire.coefficients.iter().enumerate() {
        out += if i == 0 { "\n    " } else { ",\n    " };
        out += &compact(c);
    }
    out += if wire.coefficients.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" };
    out
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("wire types serialize")
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("wire types serialize");
    s.push('\n');
    s
}

pub fn siegel_to_string<C: WireScalar>(f: &SiegelExpansion<C>) -> String {
    let h = f.header();
    let wire = WireExpansion {
        kind: "siegel".into(),
        degree: h.degree,
        weight: h.weight,
        index: None,
        truncation: h.truncation,
        complete: h.complete,
        denominator: h.denominator,
        scalar_ring: ring_to_wire(h.ring),
        coefficients: f
            .iter()
            .map(|(t, c)| WireCoefficient {
                s: t.rows(),
                r: None,
                value: c.to_wire(),
            })
            .collect(),
    };
    expansion_to_string(&wire)
}

pub fn jacobi_to_string(phi: &JacobiExpansion) -> String {
    let wire = WireExpansion {
        kind: "jacobi".into(),
        degree: phi.degree(),
        weight: phi.weight(),
        index: Some(phi.index()),
        truncation: phi.truncation(),
        complete: phi.is_complete(),
        denominator: 1,
        scalar_ring: ring_to_wire(ScalarRing::Rational),
        coefficients: phi
            .iter()
            .map(|(pair, c)| WireCoefficient {
                s: pair.t.rows(),
                r: Some(pair.r.clone()),
                value: c.to_wire(),
            })
            .collect(),
    };
    expansion_to_string(&wire)
}

/// Any expansion file.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyExpansion {
    Rational(SiegelExpansion),
    Cyclotomic(SiegelExpansion<CyclotomicInteger>),
    Jacobi(JacobiExpansion),
}

impl AnyExpansion {
    pub fn to_json(&self) -> String {
        match self {
            AnyExpansion::Rational(f) => siegel_to_string(f),
            AnyExpansion::Cyclotomic(f) => siegel_to_string(f),
            AnyExpansion::Jacobi(phi) => jacobi_to_string(phi),
        }
    }
}

fn parse_wire(text: &str) -> Result<WireExpansion> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_expansion(text: &str) -> Result<AnyExpansion> {
    let wire = parse_wire(text)?;
    match wire.kind.as_str() {
        "siegel" => match ring_from_wire(&wire.scalar_ring)? {
            ScalarRing::Rational => Ok(AnyExpansion::Rational(siegel_from_wire(wire)?)),
            ScalarRing::Cyclotomic(_) => Ok(AnyExpansion::Cyclotomic(siegel_from_wire(wire)?)),
        },
        "jacobi" => Ok(AnyExpansion::Jacobi(jacobi_from_wire(wire)?)),
        other => Err(Error::Parse(format!("unknown expansion kind {other:?}"))),
    }
}

pub fn siegel_from_str<C: WireScalar>(text: &str) -> Result<SiegelExpansion<C>> {
    let wire = parse_wire(text)?;
    if wire.kind != "siegel" {
        return Err(Error::Parse(format!("expected a siegel expansion, found {:?}", wire.kind)));
    }
    siegel_from_wire(wire)
}

pub fn jacobi_from_str(text: &str) -> Result<JacobiExpansion> {
    let wire = parse_wire(text)?;
    if wire.kind != "jacobi" {
        return Err(Error::Parse(format!("expected a jacobi expansion, found {:?}", wire.kind)));
    }
    jacobi_from_wire(wire)
}

fn siegel_from_wire<C: WireScalar>(wire: WireExpansion) -> Result<SiegelExpansion<C>> {
    let ring = ring_from_wire(&wire.scalar_ring)?;
    let header = ExpansionHeader {
        degree: wire.degree,
        weight: wire.weight,
        truncation: wire.truncation,
        complete: wire.complete,
        denominator: wire.denominator,
        ring,
    };
    let entries = wire
        .coefficients
        .iter()
        .map(|c| {
            if c.r.is_some() {
                return Err(Error::Parse("siegel coefficients carry no R".into()));
            }
            Ok((IndexMatrix::from_rows(&c.s)?, C::from_wire(&c.value, ring)?))
        })
        .collect::<Result<Vec<_>>>()?;
    SiegelExpansion::new(header, entries)
}

fn jacobi_from_wire(wire: WireExpansion) -> Result<JacobiExpansion> {
    if ring_from_wire(&wire.scalar_ring)? != ScalarRing::Rational || wire.denominator != 1 {
        return Err(Error::RequiresHalfIntegralRational);
    }
    let index = wire.index.ok_or_else(|| Error::Parse("jacobi expansion lacks \"index\"".into()))?;
    let entries = wire
        .coefficients
        .iter()
        .map(|c| {
            let r = c.r.clone().ok_or_else(|| Error::Parse("jacobi coefficient lacks \"R\"".into()))?;
            let pair = JacobiIndexPair::new(IndexMatrix::from_rows(&c.s)?, r)?;
            Ok((pair, Rational::from_wire(&c.value, ScalarRing::Rational)?))
        })
        .collect::<Result<Vec<_>>>()?;
    JacobiExpansion::new(wire.degree, wire.weight, index, wire.truncation, wire.complete, entries)
}

#[derive(Debug, Serialize, Deserialize)]
struct WireCertificate {
    verdict: String,
    theorem: String,
    prime: Option<u64>,
    bound: String,
    cutoff: u64,
    indices_checked: u64,
    witness: Option<Vec<Vec<i64>>>,
    inputs: Vec<String>,
}

pub fn certificate_to_string(c: &Certificate) -> String {
    to_pretty(&WireCertificate {
        verdict: c.verdict.as_str().into(),
        theorem: c.theorem.as_str().into(),
        prime: c.prime,
        bound: format_rational(&c.bound),
        cutoff: c.cutoff,
        indices_checked: c.indices_checked,
        witness: c.witness.as_ref().map(IndexMatrix::rows),
        inputs: c.inputs.clone(),
    })
}

pub fn certificate_from_str(text: &str) -> Result<Certificate> {
    let w: WireCertificate = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Certificate {
        verdict: Verdict::parse(&w.verdict).ok_or_else(|| Error::Parse(format!("unknown verdict {:?}", w.verdict)))?,
        theorem: Theorem::parse(&w.theorem).ok_or_else(|| Error::Parse(format!("unknown theorem {:?}", w.theorem)))?,
        prime: w.prime,
        bound: parse_rational(&w.bound)?,
        cutoff: w.cutoff,
        indices_checked: w.indices_checked,
        witness: w.witness.as_deref().map(IndexMatrix::from_rows).transpose()?,
        inputs: w.inputs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFixture {
    pub name: String,
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
}

pub fn lattice_fixture_from_str(text: &str) -> Result<LatticeFixture> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn lattice_fixture_to_string(l: &LatticeFixture) -> String {
    to_pretty(l)
}
