//! Exact Laurent polynomial algebra for deciding strong irreducibility and
//! strong coprimality, and for the link invariants built on them: elementary
//! ideals, torsion Alexander polynomials, slice-polynomial families, localized
//! PID reduction and Blanchfield self-linking witnesses.

pub mod alexander;
pub mod error;
pub mod families;
pub mod factor;
pub mod groebner;
pub mod localize;
pub mod parse;
pub mod ring;
pub mod strongcheck;
pub mod verdict;

pub use error::{Error, ParseError, Result};
pub use ring::{Domain, HomogPoly, LaurentPoly, Monomial, Ring};
