use std::fmt;

use super::monomial::{Monomial, VarStyle};
use super::poly::{Degree, LaurentPoly};
use crate::error::{Error, Result};

/// Homogeneous ordinary polynomial in `z0 .. zn` with its total degree recorded.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomogPoly {
    inner: LaurentPoly,
    total_degree: u32,
}

impl HomogPoly {
    /// Wraps a nonzero homogeneous ordinary polynomial.
    pub fn new(inner: LaurentPoly) -> Result<Self> {
        if inner.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if inner.has_negative_exponents() {
            return Err(Error::NegativeExponent);
        }
        if !inner.is_homogeneous() {
            return Err(Error::NotHomogeneous(inner.render(&VarStyle::Z)));
        }
        let total_degree = inner.degree().finite().unwrap() as u32;
        let inner = inner.to_ring(inner.ring().as_ordinary())?;
        Ok(HomogPoly { inner, total_degree })
    }

    pub fn inner(&self) -> &LaurentPoly {
        &self.inner
    }

    pub fn into_inner(self) -> LaurentPoly {
        self.inner
    }

    pub fn total_degree(&self) -> u32 {
        self.total_degree
    }

    pub fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    /// Sets `z0 = 1` and renames `z_i -> x_i`.
    pub fn dehomogenize(&self) -> LaurentPoly {
        let n = self.nvars() - 1;
        let ring = self.inner.ring().with_nvars(n);
        LaurentPoly::from_terms(
            ring,
            self.inner
                .terms()
                .map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), c.clone())),
        )
        .expect("dehomogenized terms stay in the ordinary ring")
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inner.render(&VarStyle::Z))
    }
}

/// `P(z0, .., zn) = z0^{deg p} · p(z1/z0, .., zn/z0)`.
pub fn homogenize(p: &LaurentPoly) -> Result<HomogPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.has_negative_exponents() {
        return Err(Error::NegativeExponent);
    }
    let d = match p.degree() {
        Degree::Finite(d) => d,
        Degree::NegInfinity => unreachable!(),
    };
    let ring = p.ring().as_ordinary().with_nvars(p.nvars() + 1);
    let inner = LaurentPoly::from_terms(
        ring,
        p.terms().map(|(m, c)| {
            let mut e = Vec::with_capacity(m.nvars() + 1);
            e.push((d - m.total_degree()) as i32);
            e.extend_from_slice(m.exponents());
            (Monomial::new(e), c.clone())
        }),
    )?;
    Ok(HomogPoly { inner, total_degree: d as u32 })
}
