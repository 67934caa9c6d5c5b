//! Level-one elliptic modular forms as degree-1 expansions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::arith::Rational;
use crate::error::Error;
use crate::expansion::SiegelExpansion;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalForm {
    E4,
    E6,
    Delta,
}

impl ClassicalForm {
    pub fn weight(self) -> u64 {
        match self {
            ClassicalForm::E4 => 4,
            ClassicalForm::E6 => 6,
            ClassicalForm::Delta => 12,
        }
    }
}

impl FromStr for ClassicalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "e4" => Ok(ClassicalForm::E4),
            "e6" => Ok(ClassicalForm::E6),
            "delta" => Ok(ClassicalForm::Delta),
            _ => Err(Error::InvalidArgument(format!("unknown form {s:?}; expected E4, E6 or Delta"))),
        }
    }
}

impl fmt::Display for ClassicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassicalForm::E4 => "E4",
            ClassicalForm::E6 => "E6",
            ClassicalForm::Delta => "Delta",
        })
    }
}

fn sigma(n: u64, k: u32) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(k)).sum()
}

fn eisenstein(scale: i64, k: u32, bound: u64) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(1)];
    c.extend((1..=bound).map(|n| scale * sigma(n, k)));
    c
}

/// q ∏ (1 − qⁿ)²⁴ up to q^bound.
fn delta(bound: u64) -> Vec<BigInt> {
    let len = bound as usize + 1;
    let mut prod = vec![BigInt::from(0); len];
    prod[0] = BigInt::from(1);
    for n in 1..len {
        for _ in 0..24 {
            for i in (n..len).rev() {
                let t = prod[i - n].clone();
                prod[i] -= t;
            }
        }
    }
    let mut out = vec![BigInt::from(0); len];
    out[1..].clone_from_slice(&prod[..len - 1]);
    out
}

pub fn classical_degree1(form: ClassicalForm, bound: u64) -> SiegelExpansion {
    let coeffs = match form {
        ClassicalForm::E4 => eisenstein(240, 3, bound),
        ClassicalForm::E6 => eisenstein(-504, 5, bound),
        ClassicalForm::Delta => delta(bound),
    };
    let coeffs: Vec<Rational> = coeffs.into_iter().map(Rational::from_integer).collect();
    SiegelExpansion::from_q_series(form.weight(), &coeffs)
}
