//! Executable polynomial-method machinery over finite fields.
//!
//! - [`field`]: GF(p^k) arithmetic and subfield embeddings.
//! - [`poly`]: sparse polynomials, Hasse derivatives, multiplicities, flats.
//! - [`spread`]: rank certificates for spread point sets and line families.
//! - [`geometry`]: Nikodym, weak Nikodym and Kakeya predicates and search.
//! - [`bounds`]: vanishing orders, monomial-space counts, and an exact
//!   evaluator for the dimension-counting inequality chain.

pub mod bounds;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod poly;
pub mod spread;

pub use field::{Field, FieldElem, FieldError};
pub use linalg::Matrix;
pub use poly::{AffineMap, ExpVec, Flat, Line, MultiPoly, Multiplicity, PolyError};

/// Resource caps shared by the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Caps {
    /// Maximum number of matrix entries built for a rank computation.
    pub matrix_entries: u64,
    /// Maximum number of points q^d an exhaustive geometry routine visits.
    pub points: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            matrix_entries: 4_000_000,
            points: 10_000_000,
        }
    }
}
