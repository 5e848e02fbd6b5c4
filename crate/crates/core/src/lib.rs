//! Quasisymmetric Schubert calculus.
//!
//! Exact arithmetic for the operator calculus on polynomial rings generated by
//! divided differences and variable-zeroing (Bergeron-Sottile) maps, the
//! augmented Thompson monoid of marked nested forests that presents it, forest
//! polynomials and Schubert polynomials, divided symmetrization, and the
//! Gelfand-Tsetlin polytope geometry attached to all of the above.
//!
//! Variables are 1-indexed everywhere. All arithmetic is exact: coefficients
//! are arbitrary-precision integers or integer polynomials in a parameter q,
//! and the geometry modules work over arbitrary-precision rationals.

pub mod poly;
pub mod ops;
pub mod forest;
pub mod rtword;
pub mod perm;
pub mod bases;
pub mod divsym;
pub mod gz;
pub mod verify;

pub(crate) mod linalg;

pub use poly::{MultiPoly, PolyError, RationalFn, Ring, Scalar};
