//! The two strongly irreducible linear families and their slice polynomials
//! `p·p̄`.

use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor;
use crate::ring::{LaurentPoly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    F1,
    F2,
}

impl Family {
    /// Number of coefficients for parameter `n`.
    pub fn len(self, n: usize) -> usize {
        match self {
            Family::F1 => 2 * n,
            Family::F2 => 2 * n + 1,
        }
    }

    /// Coefficient of `x_i` (1-based) in the family polynomial.
    fn weight(self, i: usize, k: i64) -> i64 {
        // F1: 1 - sum (-1)^i k_i x_i.  F2: 1 + k_2 x_2 + sum (-1)^i k_i x_i.
        let sign = if i % 2 == 0 { 1 } else { -1 };
        match self {
            Family::F1 => -sign * k,
            Family::F2 if i == 2 => 2 * k,
            Family::F2 => sign * k,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::F1 => "F1",
            Family::F2 => "F2",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "F1" => Ok(Family::F1),
            "F2" => Ok(Family::F2),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub k: Vec<i64>,
}

impl FamilySpec {
    pub fn new(family: Family, k: Vec<i64>) -> Result<Self> {
        let spec = FamilySpec { family, k };
        spec.validate()?;
        Ok(spec)
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.k.len()
    }

    fn constraint_value(&self) -> i64 {
        self.k.iter().enumerate().map(|(i, &k)| self.family.weight(i + 1, k)).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let ok_len = match self.family {
            Family::F1 => self.k.len() >= 2 && self.k.len() % 2 == 0,
            Family::F2 => self.k.len() >= 3 && self.k.len() % 2 == 1,
        };
        if !ok_len {
            return Err(Error::Constraint(format!(
                "{} needs {} coefficients, got {}",
                self.family,
                if self.family == Family::F1 { "an even number (at least 2) of" } else { "an odd number (at least 3) of" },
                self.k.len()
            )));
        }
        if let Some(i) = self.k.iter().position(|&k| k == 0) {
            return Err(Error::Constraint(format!("k{} is zero", i + 1)));
        }
        let c = self.constraint_value();
        if c != 0 {
            return Err(Error::Constraint(format!(
                "{} coefficient equation evaluates to {c}, not 0",
                self.family
            )));
        }
        Ok(())
    }
}

/// The family polynomial of a validated spec, in the Laurent ring.
pub fn build_family_poly(spec: &FamilySpec) -> Result<LaurentPoly> {
    spec.validate()?;
    let ring = Ring::laurent(spec.nvars());
    let mut p = LaurentPoly::one(ring);
    for (i, &k) in spec.k.iter().enumerate() {
        let c = BigRational::from_integer(spec.family.weight(i + 1, k).into());
        p = &p + &LaurentPoly::var(ring, i).scale(&c)?;
    }
    Ok(p)
}

/// Sum of the coefficients.
pub fn eval_at_ones(p: &LaurentPoly) -> BigRational {
    p.eval_at_ones()
}

/// `p · p̄` in the Laurent ring.
pub fn slice_polynomial(p: &LaurentPoly) -> Result<LaurentPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.to_laurent();
    Ok(&p * &p.bar())
}

/// Whether `p` and `p̄` are coprime in the Laurent ring.
pub fn bar_coprime(p: &LaurentPoly) -> Result<bool> {
    let p = p.to_laurent();
    factor::coprime(&p, &p.bar())
}

/// Coefficient vectors satisfying the family equation with entries in
/// `{±1, .., ±coeff_bound}`, in a fixed order (values tried as
/// `1, -1, 2, -2, ..` with the first coefficient varying slowest).
pub fn enumerate_family(family: Family, n: usize, coeff_bound: i64, limit: usize) -> Result<Vec<FamilySpec>> {
    if n == 0 || coeff_bound < 1 {
        return Err(Error::InvalidArgument("family parameter and coefficient bound must be positive".into()));
    }
    let values: Vec<i64> = (1..=coeff_bound).flat_map(|v| [v, -v]).collect();
    Ok((0..family.len(n))
        .map(|_| values.iter().copied())
        .multi_cartesian_product()
        .map(|k| FamilySpec { family, k })
        .filter(|s| s.constraint_value() == 0)
        .take(limit)
        .collect())
}
