use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, VarStyle};
use crate::error::{Error, Result};

/// Coefficient domain of a polynomial ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum Domain {
    Integer,
    Rational,
}

/// Ring descriptor: coefficient domain, number of variables, and whether
/// negative exponents are admitted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub struct Ring {
    pub domain: Domain,
    pub nvars: usize,
    pub laurent: bool,
}

impl Ring {
    pub fn integer(nvars: usize) -> Self {
        Ring { domain: Domain::Integer, nvars, laurent: false }
    }

    pub fn laurent(nvars: usize) -> Self {
        Ring { domain: Domain::Integer, nvars, laurent: true }
    }

    pub fn rational(nvars: usize) -> Self {
        Ring { domain: Domain::Rational, nvars, laurent: false }
    }

    pub fn with_nvars(self, nvars: usize) -> Self {
        Ring { nvars, ..self }
    }

    pub fn as_laurent(self) -> Self {
        Ring { laurent: true, ..self }
    }

    pub fn as_ordinary(self) -> Self {
        Ring { laurent: false, ..self }
    }

    pub fn over(self, domain: Domain) -> Self {
        Ring { domain, ..self }
    }

    /// Smallest ring containing both: more variables, Laurent if either is, Q if either is.
    pub fn join(self, other: Ring) -> Ring {
        Ring {
            domain: if self.domain == Domain::Rational || other.domain == Domain::Rational {
                Domain::Rational
            } else {
                Domain::Integer
            },
            nvars: self.nvars.max(other.nvars),
            laurent: self.laurent || other.laurent,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.domain {
            Domain::Integer => "Z",
            Domain::Rational => "Q",
        };
        if self.laurent {
            write!(f, "{base}[x1^±1..x{}^±1]", self.nvars)
        } else {
            write!(f, "{base}[x1..x{}]", self.nvars)
        }
    }
}

/// Degree with the zero polynomial mapped to a distinguished bottom element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

/// Exact multivariate (Laurent) polynomial over Z or Q.
///
/// Terms are kept in a map ordered by the graded-lexicographic monomial order,
/// with no zero coefficients, so equal polynomials are structurally equal and
/// render identically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigRational>,
}

fn is_integral(c: &BigRational) -> bool {
    c.denom().is_one()
}

impl LaurentPoly {
    pub fn zero(ring: Ring) -> Self {
        LaurentPoly { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, BigRational::one())
    }

    /// Constant polynomial. Panics if `c` is not integral and the ring is over Z.
    pub fn constant(ring: Ring, c: BigRational) -> Self {
        Self::from_terms(ring, [(Monomial::one(ring.nvars), c)]).expect("valid constant")
    }

    pub fn from_int(ring: Ring, c: i64) -> Self {
        Self::constant(ring, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(ring: Ring, index: usize) -> Self {
        Self::from_terms(ring, [(Monomial::var(ring.nvars, index), BigRational::one())])
            .expect("valid variable")
    }

    pub fn monomial(ring: Ring, m: Monomial, c: BigRational) -> Result<Self> {
        Self::from_terms(ring, [(m, c)])
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, combining repeats
    /// and validating them against the ring.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != ring.nvars {
                return Err(Error::Arity { expected: ring.nvars, found: m.nvars() });
            }
            if !ring.laurent && !m.is_ordinary() {
                return Err(Error::NegativeExponent);
            }
            if ring.domain == Domain::Integer && !is_integral(&c) {
                return Err(Error::NonIntegerCoefficient);
            }
            if c.is_zero() {
                continue;
            }
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { ring, terms: map })
    }

    /// Integer-coefficient convenience constructor; exponents given per term.
    pub fn from_int_terms(ring: Ring, terms: &[(i64, &[i32])]) -> Result<Self> {
        Self::from_terms(
            ring,
            terms.iter().map(|(c, e)| {
                (Monomial::new(e.to_vec()), BigRational::from_integer(BigInt::from(*c)))
            }),
        )
    }

    pub(crate) fn from_map_unchecked(ring: Ring, terms: BTreeMap<Monomial, BigRational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        LaurentPoly { ring, terms }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, c)| m.is_one() && c.is_one()).unwrap_or(false)
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn term_map(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one(self.nvars())))
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Units: `±monomial` over Z, `c·monomial` over Q, in the Laurent case;
    /// nonzero constants (±1 over Z) otherwise.
    pub fn is_unit(&self) -> bool {
        if self.terms.len() != 1 {
            return false;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let coeff_unit = match self.ring.domain {
            Domain::Integer => c.abs().is_one(),
            Domain::Rational => true,
        };
        coeff_unit && (self.ring.laurent || m.is_one())
    }

    /// Total degree; the zero polynomial has degree `NegInfinity`.
    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .map(Degree::Finite)
            .unwrap_or(Degree::NegInfinity)
    }

    /// Largest exponent of `x_var`, or `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exponents()[var]).max()
    }

    pub fn min_degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exponents()[var]).min()
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] != 0))
            .collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[var] != 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| !m.is_ordinary())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(is_integral)
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            Err(Error::RingMismatch(self.ring, other.ring))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Ok(LaurentPoly { ring: self.ring, terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { ring: self.ring, terms })
    }

    fn neg_ref(&self) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = LaurentPoly::one(self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies every coefficient by `c`. Over Z the scaled coefficients must stay integral.
    pub fn scale(&self, c: &BigRational) -> Result<Self> {
        Self::from_terms(self.ring, self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        let c = BigRational::from_integer(c.clone());
        if c.is_zero() {
            return LaurentPoly::zero(self.ring);
        }
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * &c)).collect(),
        }
    }

    /// Multiplies by a monomial. Fails with `NegativeExponent` if the product leaves an ordinary ring.
    pub fn mul_monomial(&self, u: &Monomial) -> Result<Self> {
        Self::from_terms(self.ring, self.terms.iter().map(|(m, c)| (m.mul(u), c.clone())))
    }

    /// Applies `x_i -> x_i^{-1}` to every variable.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.inverse(), c.clone())).collect(),
        }
    }

    /// Same polynomial viewed in another ring. Variables beyond the current
    /// count are appended; dropping variables requires they be unused.
    pub fn to_ring(&self, ring: Ring) -> Result<Self> {
        if ring.nvars < self.nvars() {
            if let Some(v) = self.used_vars().into_iter().find(|&v| v >= ring.nvars) {
                return Err(Error::DimensionMismatch(format!(
                    "x{} is used but target ring has {} variables",
                    v + 1,
                    ring.nvars
                )));
            }
        }
        Self::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(ring.nvars, 0);
                (Monomial::new(e), c.clone())
            }),
        )
    }

    pub fn to_laurent(&self) -> Self {
        self.to_ring(self.ring.as_laurent()).expect("ordinary polynomials embed in the Laurent ring")
    }

    pub fn to_rational(&self) -> Self {
        LaurentPoly { ring: self.ring.over(Domain::Rational), terms: self.terms.clone() }
    }

    /// Embeds into a ring with `n` variables (padding with unused variables).
    pub fn with_nvars(&self, n: usize) -> Result<Self> {
        self.to_ring(self.ring.with_nvars(n))
    }

    /// Evaluates at a point with nonzero coordinates wherever negative exponents occur.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.nvars()
            )));
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e == 0 {
                    continue;
                }
                if x.is_zero() && e < 0 {
                    return Err(Error::InvalidArgument("negative power of zero".into()));
                }
                v *= num_traits::pow::Pow::pow(x, e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Sum of coefficients, i.e. the value at `(1, ..., 1)`.
    pub fn eval_at_ones(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Partial derivative with respect to `x_var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[var] -= 1;
            terms.insert(Monomial::new(ex), c * BigRational::from_integer(BigInt::from(e)));
        }
        LaurentPoly { ring: self.ring, terms }
    }

    /// Substitutes `x_i -> x_i^{t_i}`. Negative `t_i` require a Laurent ring.
    pub fn power_substitute(&self, t: &[i64]) -> Result<Self> {
        if t.len() != self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "substitution has {} entries, ring has {} variables",
                t.len(),
                self.nvars()
            )));
        }
        if let Some(i) = t.iter().position(|&x| x == 0) {
            return Err(Error::ZeroSubstitution(i + 1));
        }
        if !self.ring.laurent && t.iter().any(|&x| x < 0) {
            return Err(Error::NegativeExponent);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m
                .exponents()
                .iter()
                .zip(t)
                .map(|(&a, &b)| i32::try_from(a as i64 * b).expect("exponent overflow"))
                .collect();
            (Monomial::new(e), c.clone())
        });
        Self::from_terms(self.ring, terms)
    }

    /// Replaces each variable `x_i` by the monomial `images[i]` of a ring with
    /// `images[i].nvars()` variables.
    pub fn monomial_substitute(&self, images: &[Monomial]) -> Result<Self> {
        if images.len() != self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target_n = images.first().map(|m| m.nvars()).unwrap_or(0);
        if images.iter().any(|m| m.nvars() != target_n) {
            return Err(Error::DimensionMismatch("images live in different rings".into()));
        }
        if images.iter().any(|m| m.is_one()) {
            return Err(Error::InvalidArgument("monomial image must be a nonzero vector".into()));
        }
        let laurent = self.ring.laurent || images.iter().any(|m| !m.is_ordinary());
        let ring = Ring { nvars: target_n, laurent, ..self.ring };
        let terms = self.terms.iter().map(|(m, c)| {
            let mut acc = Monomial::one(target_n);
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e != 0 {
                    acc = acc.mul(&img.pow(e));
                }
            }
            (acc, c.clone())
        });
        Self::from_terms(ring, terms)
    }

    /// Factors out the monomial unit: returns `(q, u)` with `q` ordinary,
    /// no variable dividing `q`, and `self = q·u`.
    pub fn laurent_normalize(&self) -> Result<(LaurentPoly, Monomial)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.nvars();
        let mins: Vec<i32> = (0..n).map(|i| self.min_degree_in(i).unwrap()).collect();
        let unit = Monomial::new(mins);
        let inv = unit.inverse();
        let terms: BTreeMap<Monomial, BigRational> =
            self.terms.iter().map(|(m, c)| (m.mul(&inv), c.clone())).collect();
        Ok((LaurentPoly { ring: self.ring.as_ordinary(), terms }, unit))
    }

    /// Gcd of the coefficients as a positive rational (numerator gcd over denominator lcm).
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(num, den)
    }

    /// Integer primitive part with positive leading coefficient, together with
    /// the signed rational factor: `self = factor · primitive`.
    pub fn primitive_split(&self) -> (BigRational, LaurentPoly) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v / &c)).collect();
        (c, LaurentPoly { ring: self.ring, terms })
    }

    pub fn primitive_part(&self) -> LaurentPoly {
        self.primitive_split().1
    }

    /// Integer coefficients of an integral polynomial, in descending term order.
    pub fn int_coeffs(&self) -> Vec<BigInt> {
        self.terms().map(|(_, c)| c.to_integer()).collect()
    }

    /// Canonical text with a chosen variable spelling.
    pub fn render(&self, style: &VarStyle) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else if abs.is_one() {
                out.push_str(&m.render(style));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&m.render(style));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&VarStyle::X))
    }
}

impl<'a> Add for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a> Sub for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> Mul for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
