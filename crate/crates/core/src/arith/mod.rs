//! Exact scalars: rationals, cyclotomic integers and their residues modulo
//! unramified prime ideals above p.

pub mod cyclotomic;
pub mod fp_poly;
pub mod primes;
pub mod rational;
pub mod residue;

pub use cyclotomic::{cyclotomic_polynomial, root_of_unity, CyclotomicInteger, CyclotomicRing};
pub use fp_poly::cyclotomic_factor_mod_p;
pub use primes::{is_prime, require_prime};
pub use rational::{format_rational, is_p_integral, parse_rational, Rational};
pub use residue::{reduce_mod_ideal, PrimeIdealResidue, ResidueField};
