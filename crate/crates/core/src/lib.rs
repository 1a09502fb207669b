//! Exact arithmetic for the exceptional Lie algebra g2 as a subalgebra of
//! so(7), its Samelson complex structure, and the strong Kähler with
//! torsion (SKT) condition on left-invariant Hermitian metrics.

pub mod context;
pub mod error;
pub mod fixtures;
pub mod forms;
pub mod g2;
pub mod hermitian;
pub mod lambda;
pub mod linalg;
pub mod r7;
pub mod roots;
pub mod samelson;
pub mod scalar;
pub mod skt;

pub use error::{Error, Result};
pub use scalar::{FieldElement, Rational, Sign};
