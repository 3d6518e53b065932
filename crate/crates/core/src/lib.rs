//! Hermitian curve codes over GF(q^2): one-point and two-point evaluation codes,
//! their Feng-Rao improvements, coset and distance bounds, and enumeration oracles.

pub mod bounds;
pub mod code;
pub mod curve;
pub mod error;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod riemann_roch;

pub use curve::{CanonicalForm, Curve, Hermitian, TwoPointDivisor};
pub use error::{HermitError, Result};
pub use field::{field_make, FieldSpec};
