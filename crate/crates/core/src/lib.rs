//! Certificates bounding the number of negative (or positive) connected
//! components of the complement of a signomial's zero set in the positive
//! orthant.
//!
//! Everything in this crate works on exponent geometry only: signed supports,
//! separating and enclosing hyperplanes, simplices with their negative vertex
//! cones, and the small linear programs that find them. No I/O happens here;
//! the companion `signcert` crate adds file formats, a grid-sampling oracle
//! and the command-line front end.
//!
//! The usual entry point is [`certify::certify`]:
//!
//! ```
//! use signcert_core::{certify::{certify, Bound, CertifyOptions, TargetSign}, Signomial};
//!
//! // p(x) = x1 x2^2 - 3 x1 x2 + x2: one negative point.
//! let f = Signomial::new(2, [(1.0, [1.0, 2.0]), (-3.0, [1.0, 1.0]), (1.0, [0.0, 1.0])]).unwrap();
//! let cert = certify(&f, TargetSign::Negative, None, &CertifyOptions::default()).unwrap();
//! assert_eq!(cert.bound, Bound::One);
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certify;
pub mod descartes;
mod error;
pub mod linalg;
pub mod lp;
pub mod separation;
pub mod signomial;
pub mod simplex;

pub use error::Error;
pub use signomial::{
    AffineMap, NewtonPolytope, Point, SignedSupport, Signomial, Term, UnivariateSignomial,
};

/// Numeric tolerances shared by the geometric routines.
///
/// Every open condition (strict separation, strict containment) is decided
/// against one of these; floats cannot certify open conditions exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    /// Primal feasibility / pivot tolerance of the LP solver.
    pub lp: f64,
    /// Minimum normalized slack for a separation to count as strict.
    pub strict: f64,
    /// Barycentric coordinates at or below this count as non-positive.
    pub cone: f64,
    /// Allowed violation when re-checking closed inequalities by dot products.
    pub check: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            lp: 1e-9,
            strict: 1e-7,
            cone: 1e-9,
            check: 1e-9,
        }
    }
}
