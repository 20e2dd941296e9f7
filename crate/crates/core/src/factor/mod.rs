//! Irreducibility and factorization over Z and Q.
//!
//! Univariate polynomials are factored by Zassenhaus' method. Multivariate
//! polynomials are first split by contents and square-free parts; irreducible
//! pieces are usually certified by an irreducible univariate specialization,
//! and the rest go through Kronecker substitution with exhaustive recombination.

pub mod dense;
mod lattice;
pub mod zassenhaus;
pub mod zp;

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;

use crate::error::{Error, Result};
use crate::ring::{content_wrt, div_exact, gcd, is_trivial_gcd, Domain, LaurentPoly, Monomial, Ring};
use crate::verdict::{Rule, Verdict, Witness};
use dense::DPoly;

/// Whether monomials count as units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ordinary,
    Laurent,
}

/// Effort limits for multivariate factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    /// Variables allowed in a Kronecker reduction.
    pub max_vars: usize,
    /// Total degree allowed in a Kronecker reduction.
    pub max_total_degree: i64,
    /// Degree allowed for the univariate Kronecker image.
    pub max_image_degree: usize,
    /// Subsets examined during recombination.
    pub max_subsets: usize,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { max_vars: 6, max_total_degree: 12, max_image_degree: 1500, max_subsets: 20_000 }
    }
}

/// `unit * monomial * prod factor^multiplicity`.
///
/// In ordinary mode `monomial` is trivial and variables appear as factors;
/// in Laurent mode it carries the monomial unit removed by normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub ring: Ring,
    pub unit: BigRational,
    pub monomial: Monomial,
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::monomial(self.ring, self.monomial.clone(), self.unit.clone())
            .expect("unit monomial lies in the ring");
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.count() == 1
    }
}

impl serde::Serialize for Factorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Entry<'a> {
            factor: &'a LaurentPoly,
            multiplicity: u32,
        }
        let entries: Vec<Entry> =
            self.factors.iter().map(|(f, e)| Entry { factor: f, multiplicity: *e }).collect();
        let mut st = s.serialize_struct("Factorization", 3)?;
        st.serialize_field("unit", &self.unit.to_string())?;
        st.serialize_field("monomial", &self.monomial)?;
        st.serialize_field("factors", &entries)?;
        st.end()
    }
}

fn work_ring(nvars: usize) -> Ring {
    Ring { domain: Domain::Integer, nvars, laurent: false }
}

/// Splits `p` into `(unit, monomial, f)` with `f` an ordinary primitive integer
/// polynomial with positive leading coefficient in the work ring.
fn prepare(p: &LaurentPoly, mode: Mode) -> Result<(BigRational, Monomial, LaurentPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (q, mono) = match mode {
        Mode::Laurent => p.laurent_normalize()?,
        Mode::Ordinary => {
            if p.has_negative_exponents() {
                return Err(Error::NegativeExponent);
            }
            (p.clone(), Monomial::one(p.nvars()))
        }
    };
    let (c, f) = q.to_rational().primitive_split();
    let (c, f) = if f.leading_coeff().is_negative() { (-c, -f) } else { (c, f) };
    Ok((c, mono, f.to_ring(work_ring(p.nvars()))?))
}

fn to_dense(f: &LaurentPoly, var: usize) -> DPoly {
    let deg = f.degree_in(var).unwrap_or(0).max(0) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in f.terms() {
        out[m.exponents()[var] as usize] += c.to_integer();
    }
    dense::trim(out)
}

fn from_dense(d: &[BigInt], ring: Ring, var: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        ring,
        d.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| {
            let mut ex = vec![0; ring.nvars];
            ex[var] = e as i32;
            (Monomial::new(ex), BigRational::from_integer(c.clone()))
        }),
    )
    .expect("dense image is ordinary")
}

/// Substitutes integers for every variable except `var`.
fn specialize(f: &LaurentPoly, var: usize, point: &BTreeMap<usize, BigInt>) -> DPoly {
    let deg = f.degree_in(var).unwrap_or(0).max(0) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in f.terms() {
        let mut v = c.to_integer();
        for (i, &e) in m.exponents().iter().enumerate() {
            if i != var && e != 0 {
                v *= num_traits::pow(point[&i].clone(), e as usize);
            }
        }
        out[m.exponents()[var] as usize] += v;
    }
    dense::trim(out)
}

fn positive(f: LaurentPoly) -> LaurentPoly {
    if f.leading_coeff().is_negative() {
        -f
    } else {
        f
    }
}

fn monomial_content(f: &LaurentPoly) -> Vec<i32> {
    (0..f.nvars()).map(|v| f.min_degree_in(v).unwrap_or(0)).collect()
}

const POINTS: [i64; 12] = [2, 3, -2, 5, -3, 7, 11, -5, 13, -7, 17, 19];

/// Tries to certify irreducibility of a primitive polynomial, already known
/// to have trivial content in every variable, by specialization.
fn specialization_certificate(f: &LaurentPoly, budget: &FactorBudget) -> Result<bool> {
    let mut vars = f.used_vars();
    vars.sort_by_key(|&v| (f.degree_in(v), v));
    for &v in &vars {
        let others: Vec<usize> = vars.iter().copied().filter(|&u| u != v).collect();
        let deg = f.degree_in(v).unwrap_or(0) as usize;
        for attempt in 0..6 {
            let point: BTreeMap<usize, BigInt> = others
                .iter()
                .enumerate()
                .map(|(j, &u)| (u, BigInt::from(POINTS[(attempt + 5 * j) % POINTS.len()])))
                .collect();
            let image = specialize(f, v, &point);
            if image.len() != deg + 1 {
                continue;
            }
            match zassenhaus::is_irreducible(&image, budget.max_subsets) {
                Ok(true) => return Ok(true),
                Ok(false) => {}
                Err(Error::ResourceExhausted(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(false)
}

/// A nonconstant content of `f` in some variable, if one exists.
fn nontrivial_content(f: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    for v in f.used_vars() {
        let c = content_wrt(f, v)?;
        if !c.is_constant() {
            return Ok(Some(positive(c)));
        }
    }
    Ok(None)
}

/// A nonconstant `gcd(f, df/dx_v)` for some variable, if one exists.
fn repeated_part(f: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    for v in f.used_vars() {
        let g = gcd(f, &f.derivative(v))?;
        if !g.is_constant() {
            return Ok(Some(positive(g)));
        }
    }
    Ok(None)
}

/// Kronecker substitution `x_{u_i} -> y^{w_i}` over the used variables with
/// mixed-radix weights `w_i = prod_{j<i} (deg_{u_j} f + 1)`.
struct Kronecker {
    vars: Vec<usize>,
    radix: Vec<usize>,
    ring: Ring,
}

impl Kronecker {
    fn new(f: &LaurentPoly, budget: &FactorBudget) -> Result<Self> {
        let vars = f.used_vars();
        if vars.len() > budget.max_vars {
            return Err(Error::ResourceExhausted(format!(
                "{} variables exceed the factorization limit {}",
                vars.len(),
                budget.max_vars
            )));
        }
        let total = f.degree().finite().unwrap_or(0);
        if total > budget.max_total_degree {
            return Err(Error::ResourceExhausted(format!(
                "total degree {total} exceeds the factorization limit {}",
                budget.max_total_degree
            )));
        }
        let radix = vars.iter().map(|&v| f.degree_in(v).unwrap() as usize + 1).collect();
        let k = Kronecker { vars, radix, ring: f.ring() };
        let image_degree = f.terms().map(|(m, _)| k.exponent(m)).max().unwrap_or(Some(0));
        match image_degree {
            Some(d) if d <= budget.max_image_degree => Ok(k),
            _ => Err(Error::ResourceExhausted(format!(
                "Kronecker image degree exceeds {}",
                budget.max_image_degree
            ))),
        }
    }

    fn exponent(&self, m: &Monomial) -> Option<usize> {
        let mut e = 0usize;
        let mut w = 1usize;
        for (&v, &r) in self.vars.iter().zip(&self.radix) {
            e = e.checked_add((m.exponents()[v] as usize).checked_mul(w)?)?;
            w = w.checked_mul(r)?;
        }
        Some(e)
    }

    fn image(&self, f: &LaurentPoly) -> DPoly {
        let deg = f.terms().map(|(m, _)| self.exponent(m).unwrap()).max().unwrap_or(0);
        let mut out = vec![BigInt::zero(); deg + 1];
        for (m, c) in f.terms() {
            out[self.exponent(m).unwrap()] += c.to_integer();
        }
        dense::trim(out)
    }

    fn preimage(&self, u: &[BigInt]) -> Option<LaurentPoly> {
        let limit = self.radix.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r))?;
        let mut terms = Vec::new();
        for (e, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e >= limit {
                return None;
            }
            let mut ex = vec![0i32; self.ring.nvars];
            let mut rest = e;
            for (&v, &r) in self.vars.iter().zip(&self.radix) {
                ex[v] = (rest % r) as i32;
                rest /= r;
            }
            terms.push((Monomial::new(ex), BigRational::from_integer(c.clone())));
        }
        LaurentPoly::from_terms(self.ring, terms).ok()
    }
}

/// Irreducible factors (with repetition) of a primitive square-free-or-not
/// polynomial with trivial monomial content, by exhaustive recombination of
/// the factors of its Kronecker image.
fn kronecker_factor(f: &LaurentPoly, budget: &FactorBudget) -> Result<Vec<LaurentPoly>> {
    let k = Kronecker::new(f, budget)?;
    let (_, ufs) = zassenhaus::factor(&k.image(f), budget.max_subsets)?;
    // Powers of y are kept apart: a factor's image is y^j times a product of
    // the remaining items.
    let y = vec![BigInt::zero(), BigInt::one()];
    let mut ypow = 0usize;
    let mut items: Vec<DPoly> = Vec::new();
    for (g, e) in ufs {
        if g == y {
            ypow += e as usize;
        } else {
            items.extend(std::iter::repeat_n(g, e as usize));
        }
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    let mut tests = 0usize;
    'outer: while 2 * s <= items.len() {
        for combo in (0..items.len()).combinations(s) {
            let prod = combo.iter().fold(vec![BigInt::one()], |acc, &i| dense::mul(&acc, &items[i]));
            for j in 0..=ypow {
                tests += 1;
                if tests > budget.max_subsets {
                    return Err(Error::ResourceExhausted(format!(
                        "Kronecker recombination exceeded {} subsets",
                        budget.max_subsets
                    )));
                }
                let mut shifted = vec![BigInt::zero(); j];
                shifted.extend(prod.iter().cloned());
                let Some(g) = k.preimage(&shifted) else { continue };
                if g.is_constant() {
                    continue;
                }
                if let Some(q) = div_exact(&rest, &g)? {
                    out.push(positive(g));
                    rest = q;
                    ypow -= j;
                    for &i in combo.iter().rev() {
                        items.remove(i);
                    }
                    continue 'outer;
                }
            }
        }
        s += 1;
    }
    if !rest.is_constant() {
        out.push(positive(rest));
    }
    Ok(out)
}

/// Irreducible factors (with repetition) of a primitive polynomial with
/// positive leading coefficient and no monomial content.
fn factor_rec(f: &LaurentPoly, budget: &FactorBudget, out: &mut Vec<LaurentPoly>) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let vars = f.used_vars();
    if vars.len() == 1 {
        let v = vars[0];
        let (_, fs) = zassenhaus::factor(&to_dense(f, v), budget.max_subsets)?;
        for (g, e) in fs {
            for _ in 0..e {
                out.push(from_dense(&g, f.ring(), v));
            }
        }
        return Ok(());
    }
    if let Some((comp, small)) = lattice::compress(f) {
        let mut inner = Vec::new();
        factor_rec(&positive(small), budget, &mut inner)?;
        out.extend(inner.iter().map(|g| positive(comp.expand(g, f.ring()))));
        return Ok(());
    }
    if let Some(c) = nontrivial_content(f)? {
        let q = div_exact(f, &c)?.expect("content divides");
        factor_rec(&c, budget, out)?;
        return factor_rec(&positive(q), budget, out);
    }
    if let Some(g) = repeated_part(f)? {
        let q = div_exact(f, &g)?.expect("gcd divides");
        factor_rec(&g, budget, out)?;
        return factor_rec(&positive(q), budget, out);
    }
    if vars.iter().any(|&v| f.degree_in(v) == Some(1)) || specialization_certificate(f, budget)? {
        out.push(f.clone());
        return Ok(());
    }
    out.extend(kronecker_factor(f, budget)?);
    Ok(())
}

/// Complete factorization into irreducibles.
///
/// Integer content is reported in the unit; factors are primitive with
/// positive leading coefficient and sorted canonically.
pub fn factor(p: &LaurentPoly, mode: Mode) -> Result<Factorization> {
    factor_with_budget(p, mode, &FactorBudget::default())
}

pub fn factor_with_budget(p: &LaurentPoly, mode: Mode, budget: &FactorBudget) -> Result<Factorization> {
    let (unit, mono, f) = prepare(p, mode)?;
    let n = p.nvars();
    let mut pieces = Vec::new();
    let mc = monomial_content(&f);
    for (v, &e) in mc.iter().enumerate() {
        for _ in 0..e {
            pieces.push(LaurentPoly::var(f.ring(), v));
        }
    }
    let body = if mc.iter().any(|&e| e != 0) {
        f.mul_monomial(&Monomial::new(mc).inverse())?
    } else {
        f
    };
    factor_rec(&body, budget, &mut pieces)?;
    let mut grouped: BTreeMap<String, (LaurentPoly, u32)> = BTreeMap::new();
    for g in pieces {
        grouped.entry(g.to_string()).or_insert((g, 0)).1 += 1;
    }
    let ring = p.ring();
    let mut factors: Vec<(LaurentPoly, u32)> = grouped
        .into_values()
        .map(|(g, e)| Ok((g.to_ring(ring)?, e)))
        .collect::<Result<_>>()?;
    factors.sort_by(|a, b| {
        a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.terms().cmp(b.0.terms()))
    });
    let monomial = match mode {
        Mode::Laurent => mono,
        Mode::Ordinary => Monomial::one(n),
    };
    let out = Factorization { ring, unit, monomial, factors };
    debug_assert_eq!(out.expand(), *p);
    Ok(out)
}

/// Factorization of a univariate polynomial.
pub fn univariate_factor(p: &LaurentPoly) -> Result<Factorization> {
    if p.used_vars().len() > 1 {
        return Err(Error::InvalidArgument("expected a univariate polynomial".into()));
    }
    factor(p, Mode::Ordinary)
}

/// Rule certifying irreducibility of the prepared polynomial, or `None` when
/// it is reducible.
fn irreducibility_rule(f: &LaurentPoly, budget: &FactorBudget) -> Result<Option<Rule>> {
    if f.degree() == crate::ring::Degree::Finite(1) {
        return Ok(Some(Rule::DegreeOne));
    }
    if monomial_content(f).iter().any(|&e| e != 0) {
        return Ok(None);
    }
    let vars = f.used_vars();
    if vars.len() == 1 {
        let ok = zassenhaus::is_irreducible(&to_dense(f, vars[0]), budget.max_subsets)?;
        return Ok(ok.then_some(Rule::Recombination));
    }
    if let Some((_, small)) = lattice::compress(f) {
        return irreducibility_rule(&positive(small), budget);
    }
    if nontrivial_content(f)?.is_some() {
        return Ok(None);
    }
    if vars.iter().any(|&v| f.degree_in(v) == Some(1)) {
        return Ok(Some(Rule::LinearInVariable));
    }
    if specialization_certificate(f, budget)? {
        return Ok(Some(Rule::Specialization));
    }
    if repeated_part(f)?.is_some() {
        return Ok(None);
    }
    let fs = kronecker_factor(f, budget)?;
    Ok((fs.len() == 1).then_some(Rule::Recombination))
}

/// Decides irreducibility; integer content is treated as a unit.
///
/// In Laurent mode the monomial unit is removed first.
pub fn is_irreducible(p: &LaurentPoly, mode: Mode) -> Result<Verdict> {
    is_irreducible_with_budget(p, mode, &FactorBudget::default())
}

pub fn is_irreducible_with_budget(p: &LaurentPoly, mode: Mode, budget: &FactorBudget) -> Result<Verdict> {
    let (_, _, f) = prepare(p, mode)?;
    if f.is_constant() {
        return Err(Error::UnitInput(p.to_string()));
    }
    match irreducibility_rule(&f, budget) {
        Ok(Some(rule)) => Ok(Verdict::proved(rule, "irreducible")),
        Ok(None) => match factor_with_budget(p, mode, budget) {
            Ok(fz) => Ok(Verdict::refuted(
                Witness::Factorization { substitution: None, polynomial: p.clone(), factorization: fz },
                "reducible",
            )),
            Err(Error::ResourceExhausted(msg)) => Ok(Verdict::resource(msg)),
            Err(e) => Err(e),
        },
        Err(Error::ResourceExhausted(msg)) => Ok(Verdict::resource(msg)),
        Err(e) => Err(e),
    }
}

/// Whether `gcd(p, q)` is a unit of the common ring (in a Laurent ring,
/// monomials are units).
pub fn coprime(p: &LaurentPoly, q: &LaurentPoly) -> Result<bool> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(is_trivial_gcd(&gcd(p, q)?))
}

#[cfg(test)]
mod tests;
