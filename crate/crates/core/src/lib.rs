//! Exact computations for torus-invariant primes of quantum matrices and
//! quantum grassmannians: Le diagrams, Postnikov graphs, quantum tori, PBW
//! normal forms, and the positroid combinatorics of Plücker coordinates.

pub mod error;
pub mod laurent;
pub mod positroid;
pub mod postnikov;
pub mod qmatrix;
pub mod qtorus;
pub mod shapes;
pub mod suites;

pub use error::{Error, Result};
pub use laurent::{Coefficient, Laurent, LaurentI64, LaurentInt};
pub use shapes::{HPrimeKey, IndexSet, LeDiagram, Partition, Square};
