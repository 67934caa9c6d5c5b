//! Exact arithmetic for Sturm bounds of Siegel modular forms.
//!
//! Expansions are truncated Fourier series indexed by half-integral (or, with a
//! global denominator, rational) positive semidefinite matrices. The crate
//! computes diagonal slope bounds and Sturm cutoffs, certifies congruences and
//! p-integrality, extracts Fourier–Jacobi coefficients, restricts them to torsion
//! points, and generates test data from lattice theta series.

pub mod arith;
pub mod error;
pub mod expansion;
pub mod generators;
pub mod index;
pub mod io;
pub mod jacobi;
pub mod matrix;
pub mod sturm;

pub use arith::{CyclotomicInteger, CyclotomicRing, PrimeIdealResidue, Rational, ResidueField};
pub use error::{Error, Result};
pub use expansion::{ExpansionHeader, ScalarRing, SiegelExpansion};
pub use generators::{ClassicalForm, EvenLattice};
pub use index::IndexMatrix;
pub use jacobi::{JacobiExpansion, JacobiIndexPair, TorsionPoint};
pub use sturm::{Certificate, OrderResult, SlopeBound, Theorem, Verdict};
