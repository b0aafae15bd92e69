//! Exact symbolic computation of local invariants of polynomial mappings
//! over the rationals: local multiplicity, the local Lojasiewicz exponent
//! through elimination polynomials and their Newton data, local dimension
//! and finiteness tests, and effective Bertini hyperplane and subspace
//! families with a symbolic transversality verifier.
//!
//! All arithmetic is exact; nothing here rounds.

pub mod error;
pub mod intpoly;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod resultant;
pub mod vars;

pub mod groebner;
pub mod local;

pub mod linsys;

pub mod bertini;
pub mod invariants;

pub mod files;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Degree, Order, PolyError, Polynomial, Rat};
pub use vars::VarList;
