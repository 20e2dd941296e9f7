//! Exact division and greatest common divisors in `Z[x_1, .., x_n]` and its
//! Laurent extension.
//!
//! The gcd is computed by content recursion on the highest-index variable with
//! a primitive pseudo-remainder sequence in that variable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::{Domain, LaurentPoly, Ring};
use crate::error::{Error, Result};

fn sub_scaled_shifted(
    acc: &mut BTreeMap<Monomial, BigRational>,
    b: &LaurentPoly,
    c: &BigRational,
    shift: &Monomial,
) {
    for (m, v) in b.term_map() {
        let key = m.mul(shift);
        let delta = v * c;
        match acc.get_mut(&key) {
            Some(x) => {
                *x -= delta;
                if x.is_zero() {
                    acc.remove(&key);
                }
            }
            None => {
                acc.insert(key, -delta);
            }
        }
    }
}

/// Division with no remainder in an ordinary polynomial ring, by repeated
/// cancellation of leading terms. `None` if `b` does not divide `a`.
fn div_exact_ordinary(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(LaurentPoly::zero(a.ring()));
    }
    for v in 0..a.nvars() {
        if b.degree_in(v) > a.degree_in(v) {
            return None;
        }
    }
    let (lm_b, lc_b) = b.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let mut rem = a.term_map().clone();
    let mut quot: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    while let Some((lm_r, lc_r)) = rem.iter().next_back() {
        if !lm_b.divides(lm_r) {
            return None;
        }
        let shift = lm_r.div(&lm_b);
        let c = lc_r / &lc_b;
        sub_scaled_shifted(&mut rem, b, &c, &shift);
        *quot.entry(shift).or_insert_with(BigRational::zero) += c;
    }
    quot.retain(|_, c| !c.is_zero());
    if a.ring().domain == Domain::Integer && quot.values().any(|c| !c.denom().is_one()) {
        return None;
    }
    Some(LaurentPoly::from_map_unchecked(a.ring(), quot))
}

/// Exact quotient `a / b` in the ring of `a` and `b` (which must agree).
/// In a Laurent ring monomials are units and divisibility is tested on the
/// normalized parts.
pub fn div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring(), b.ring()));
    }
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.is_zero() {
        return Ok(Some(a.clone()));
    }
    if !a.ring().laurent {
        return Ok(div_exact_ordinary(a, b));
    }
    let (qa, ua) = a.laurent_normalize()?;
    let (qb, ub) = b.laurent_normalize()?;
    Ok(div_exact_ordinary(&qa, &qb).map(|q| {
        q.to_laurent().mul_monomial(&ua.div(&ub)).expect("Laurent ring admits any monomial")
    }))
}

/// True when `b` divides `a` (rings are joined first).
pub fn divides(b: &LaurentPoly, a: &LaurentPoly) -> Result<bool> {
    let ring = a.ring().join(b.ring());
    Ok(div_exact(&a.to_ring(ring)?, &b.to_ring(ring)?)?.is_some())
}

/// Coefficients of `p` as a polynomial in `x_var`, keyed by exponent.
pub fn coeffs_in(p: &LaurentPoly, var: usize) -> BTreeMap<i32, LaurentPoly> {
    let mut groups: BTreeMap<i32, BTreeMap<Monomial, BigRational>> = BTreeMap::new();
    for (m, c) in p.term_map() {
        let mut e = m.exponents().to_vec();
        let d = e[var];
        e[var] = 0;
        groups.entry(d).or_default().insert(Monomial::new(e), c.clone());
    }
    groups
        .into_iter()
        .map(|(d, t)| (d, LaurentPoly::from_map_unchecked(p.ring(), t)))
        .collect()
}

fn leading_coeff_in(p: &LaurentPoly, var: usize) -> (i32, LaurentPoly) {
    coeffs_in(p, var).into_iter().next_back().expect("nonzero polynomial")
}

fn positive_lead(p: LaurentPoly) -> LaurentPoly {
    if p.leading_coeff().is_negative() {
        -p
    } else {
        p
    }
}

/// Lazy pseudo-remainder of `a` by `b` in `x_var`.
fn prem(a: &LaurentPoly, b: &LaurentPoly, var: usize) -> LaurentPoly {
    let (db, lcb) = leading_coeff_in(b, var);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lcr) = leading_coeff_in(&r, var);
        if dr < db {
            return r;
        }
        let mut shift = vec![0; r.nvars()];
        shift[var] = dr - db;
        let t = (&lcr * b).mul_monomial(&Monomial::new(shift)).expect("ordinary shift");
        r = &(&lcb * &r) - &t;
    }
}

fn int_gcd_const(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let ca = a.constant_value().unwrap_or_else(BigRational::zero).to_integer();
    let cb = b.constant_value().unwrap_or_else(BigRational::zero).to_integer();
    LaurentPoly::constant(a.ring(), BigRational::from_integer(ca.gcd(&cb)))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x_var`.
fn content_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(p.ring());
    for c in coeffs_in(p, var).into_values() {
        acc = gcd_rec(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_in(p: &LaurentPoly, var: usize) -> LaurentPoly {
    let c = content_in(p, var);
    div_exact_ordinary(p, &c).expect("content divides")
}

fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return positive_lead(b.clone());
    }
    if b.is_zero() {
        return positive_lead(a.clone());
    }
    let var = match a.used_vars().into_iter().chain(b.used_vars()).max() {
        None => return int_gcd_const(a, b),
        Some(v) => v,
    };
    if !a.involves(var) {
        return gcd_rec(a, &content_in(b, var));
    }
    if !b.involves(var) {
        return gcd_rec(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd_rec(&ca, &cb);
    let mut f = div_exact_ordinary(a, &ca).expect("content divides");
    let mut g = div_exact_ordinary(b, &cb).expect("content divides");
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = prem(&f, &g, var);
        if r.is_zero() {
            break;
        }
        if !r.involves(var) {
            g = LaurentPoly::one(a.ring());
            break;
        }
        f = g;
        g = primitive_in(&r, var);
    }
    let g = primitive_in(&g, var);
    positive_lead(&c * &g)
}

/// Greatest common divisor over Z, normalized: positive leading coefficient
/// and, in the Laurent case, no monomial factor.
///
/// Over Q the result is the primitive integer representative.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    let ring = a.ring().join(b.ring());
    let a = a.to_ring(ring)?;
    let b = b.to_ring(ring)?;
    if a.is_zero() && b.is_zero() {
        return Ok(a);
    }
    let work = Ring { domain: Domain::Integer, nvars: ring.nvars, laurent: false };
    let prep = |p: &LaurentPoly| -> Result<LaurentPoly> {
        if p.is_zero() {
            return Ok(LaurentPoly::zero(work));
        }
        let q = if ring.laurent { p.laurent_normalize()?.0 } else { p.clone() };
        let q = if ring.domain == Domain::Rational { q.primitive_part() } else { q };
        LaurentPoly::from_terms(work, q.terms().map(|(m, c)| (m.clone(), c.clone())))
    };
    let g = gcd_rec(&prep(&a)?, &prep(&b)?);
    let g = if ring.laurent { g.laurent_normalize()?.0 } else { g };
    let g = if ring.domain == Domain::Rational { g.primitive_part() } else { g };
    g.to_ring(ring)
}

/// The gcd of several polynomials; zero for an empty list.
pub fn gcd_many<'a, I>(polys: I) -> Result<Option<LaurentPoly>>
where
    I: IntoIterator<Item = &'a LaurentPoly>,
{
    let mut acc: Option<LaurentPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => gcd(p, &LaurentPoly::zero(p.ring()))?,
            Some(g) => gcd(&g, p)?,
        });
        if acc.as_ref().map(|g| g.is_one()).unwrap_or(false) {
            break;
        }
    }
    Ok(acc)
}

/// Whether `g` is a unit of its ring after the normalizations `gcd` applies.
pub fn is_trivial_gcd(g: &LaurentPoly) -> bool {
    match g.constant_value() {
        Some(c) => match g.ring().domain {
            Domain::Integer => c.abs().is_one(),
            Domain::Rational => !c.is_zero(),
        },
        None => false,
    }
}

/// Integer content of an integral polynomial (nonnegative).
pub fn integer_content(p: &LaurentPoly) -> BigInt {
    p.term_map().values().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
}

/// Canonical associate up to Laurent units: monomial factor removed and
/// leading coefficient positive. Integer content is kept.
pub fn canonical_associate(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let q = if p.ring().laurent || p.has_negative_exponents() {
        let (q, _) = p.laurent_normalize().expect("nonzero");
        q.to_ring(p.ring()).expect("ordinary part embeds")
    } else {
        p.clone()
    };
    let q = if q.leading_coeff().is_negative() { -q } else { q };
    if p.ring().domain == Domain::Rational {
        q.primitive_part()
    } else {
        q
    }
}

/// `true` when `c` is ±1.
pub fn is_sign_unit(c: &BigRational) -> bool {
    c.abs().is_one()
}

/// Content of an integral ordinary polynomial viewed as a polynomial in
/// `x_var` over the remaining variables.
pub fn content_wrt(p: &LaurentPoly, var: usize) -> Result<LaurentPoly> {
    if p.has_negative_exponents() {
        return Err(Error::NegativeExponent);
    }
    let work = Ring { domain: Domain::Integer, nvars: p.nvars(), laurent: false };
    let c = content_in(&p.to_ring(work)?, var);
    c.to_ring(p.ring())
}
