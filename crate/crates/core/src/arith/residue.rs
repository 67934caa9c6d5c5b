use num_bigint::BigInt;
use num_integer::Integer;

use super::cyclotomic::CyclotomicInteger;
use super::fp_poly::{self, FpPoly};
use crate::error::Result;

/// The residue field O/𝔭 = F_p[x]/(f) for the distinguished factor `f` of Φ_M mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueField {
    p: u64,
    order: u64,
    modulus: FpPoly,
}

/// Image of a cyclotomic integer in a residue field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeIdealResidue {
    pub p: u64,
    pub order: u64,
    pub modulus_poly: FpPoly,
    pub value: FpPoly,
}

impl ResidueField {
    pub fn new(order: u64, p: u64) -> Result<Self> {
        let modulus = fp_poly::cyclotomic_factor_mod_p(order, p)?;
        Ok(ResidueField { p, order, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The residue map; evaluates the representing polynomial at the class of x.
    pub fn reduce(&self, c: &CyclotomicInteger) -> PrimeIdealResidue {
        assert_eq!(c.order(), self.order, "cyclotomic order mismatch");
        let pb = BigInt::from(self.p);
        let poly: FpPoly = c
            .coeffs()
            .iter()
            .map(|x| u64::try_from(x.mod_floor(&pb)).expect("residue below p"))
            .collect();
        self.wrap(fp_poly::rem(&fp_poly::trim(poly), &self.modulus, self.p))
    }

    fn wrap(&self, value: FpPoly) -> PrimeIdealResidue {
        PrimeIdealResidue {
            p: self.p,
            order: self.order,
            modulus_poly: self.modulus.clone(),
            value,
        }
    }

    pub fn add(&self, a: &PrimeIdealResidue, b: &PrimeIdealResidue) -> PrimeIdealResidue {
        self.wrap(fp_poly::add(&a.value, &b.value, self.p))
    }

    pub fn mul(&self, a: &PrimeIdealResidue, b: &PrimeIdealResidue) -> PrimeIdealResidue {
        self.wrap(fp_poly::mul_mod_poly(&a.value, &b.value, &self.modulus, self.p))
    }
}

impl PrimeIdealResidue {
    pub fn is_zero(&self) -> bool {
        self.value.is_empty()
    }
}

/// One-shot residue map; builds the residue field each call.
pub fn reduce_mod_ideal(c: &CyclotomicInteger, p: u64) -> Result<PrimeIdealResidue> {
    Ok(ResidueField::new(c.order(), p)?.reduce(c))
}
