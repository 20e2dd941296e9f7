//! Exact arithmetic for multivariate ordinary and Laurent polynomials over Z and Q.

mod arith;
mod homog;
mod monomial;
mod poly;

pub use arith::{
    canonical_associate, coeffs_in, content_wrt, div_exact, divides, gcd, gcd_many, integer_content,
    is_sign_unit, is_trivial_gcd,
};
pub use homog::{homogenize, HomogPoly};
pub use monomial::{Monomial, VarStyle};
pub use poly::{Degree, Domain, LaurentPoly, Ring};
