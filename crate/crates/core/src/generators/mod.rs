//! Test-data generators: lattice theta series, classical degree-1 forms, and
//! the torsion matrix.

pub mod classical;
pub mod lattice;
pub mod theta;
pub mod torsion;

pub use classical::{classical_degree1, ClassicalForm};
pub use lattice::{short_vectors, EvenLattice};
pub use theta::theta_series;
pub use torsion::{torsion_matrix, torsion_matrix_det};
