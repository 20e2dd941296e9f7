//! Gröbner bases over Q in graded-lex order, ideal and radical membership,
//! and the projective test "the system has only the trivial solution".
//!
//! Internally polynomials are kept as primitive integer polynomials and
//! reduced fraction-free; the public bases are monic over Q.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Domain, LaurentPoly, Monomial, Ring, VarStyle};

/// Work limits for Buchberger's algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbBudget {
    /// Maximum number of S-pairs reduced.
    pub max_pairs: usize,
    /// Maximum size of the intermediate basis.
    pub max_basis: usize,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget { max_pairs: 20_000, max_basis: 2_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Grlex,
}

/// Generators of an ideal of an ordinary polynomial ring over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ring: Ring,
    gens: Vec<LaurentPoly>,
}

impl IdealBasis {
    /// Zero generators are dropped. Generators must be ordinary polynomials
    /// in a common number of variables.
    pub fn new(nvars: usize, gens: Vec<LaurentPoly>) -> Result<Self> {
        let ring = Ring::rational(nvars);
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if g.nvars() != nvars {
                return Err(Error::Arity { expected: nvars, found: g.nvars() });
            }
            if g.has_negative_exponents() {
                return Err(Error::NegativeExponent);
            }
            if !g.is_zero() {
                out.push(g.to_ring(ring)?);
            }
        }
        Ok(IdealBasis { ring, gens: out })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn generators(&self) -> &[LaurentPoly] {
        &self.gens
    }
}

/// Reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    basis: Vec<LaurentPoly>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[LaurentPoly] {
        &self.basis
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_term().unwrap().0.clone()).collect()
    }

    /// Remainder of `f` on division by the basis, monic-free over Q.
    pub fn normal_form(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if f.nvars() != self.ring.nvars {
            return Err(Error::Arity { expected: self.ring.nvars, found: f.nvars() });
        }
        if f.has_negative_exponents() {
            return Err(Error::NegativeExponent);
        }
        let mut p = f.to_rational().term_map().clone();
        let mut rem = std::collections::BTreeMap::new();
        while let Some((lm, lc)) = p.pop_last() {
            match self.basis.iter().find(|g| g.leading_term().unwrap().0.divides(&lm)) {
                None => {
                    rem.insert(lm, lc);
                }
                Some(g) => {
                    let shift = lm.div(g.leading_term().unwrap().0);
                    for (m, c) in g.terms().skip(1) {
                        let key = m.mul(&shift);
                        let v = p.remove(&key).unwrap_or_else(BigRational::zero) - c * &lc;
                        if !v.is_zero() {
                            p.insert(key, v);
                        }
                    }
                }
            }
        }
        LaurentPoly::from_terms(self.ring, rem)
    }

    pub fn render(&self, style: &VarStyle) -> Vec<String> {
        self.basis.iter().map(|g| g.render(style)).collect()
    }
}

/// Primitive integer polynomial, terms in increasing monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    fn from_poly(p: &LaurentPoly) -> IPoly {
        let den = p
            .term_map()
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = p
            .term_map()
            .iter()
            .map(|(m, c)| (m.clone(), (c * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        let mut out = IPoly { terms };
        out.make_primitive();
        out
    }

    fn to_poly(&self, ring: Ring) -> Result<LaurentPoly> {
        LaurentPoly::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        )
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().unwrap().0
    }

    fn lc(&self) -> &BigInt {
        &self.terms.last().unwrap().1
    }

    fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
    }

    /// `ca * a - cb * shift * b`.
    fn lin_comb(ca: &BigInt, a: &[(Monomial, BigInt)], cb: &BigInt, shift: &Monomial, b: &IPoly) -> Vec<(Monomial, BigInt)> {
        let mut out = Vec::with_capacity(a.len() + b.terms.len());
        let shifted = b.terms.iter().map(|(m, c)| (m.mul(shift), c));
        let mut ia = a.iter().peekable();
        let mut ib = shifted.peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => {
                    let (m, c) = ia.next().unwrap();
                    out.push((m.clone(), ca * c));
                }
                (None, Some(_)) => {
                    let (m, c) = ib.next().unwrap();
                    out.push((m, -(cb * c)));
                }
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Less => {
                        let (m, c) = ia.next().unwrap();
                        out.push((m.clone(), ca * c));
                    }
                    std::cmp::Ordering::Greater => {
                        let (m, c) = ib.next().unwrap();
                        out.push((m, -(cb * c)));
                    }
                    std::cmp::Ordering::Equal => {
                        let (m, c1) = ia.next().unwrap();
                        let (_, c2) = ib.next().unwrap();
                        let v = ca * c1 - cb * c2;
                        if !v.is_zero() {
                            out.push((m.clone(), v));
                        }
                    }
                },
            }
        }
        out
    }
}

/// Fraction-free full reduction of `p` by `basis`; the remainder is a
/// nonzero rational multiple of the remainder over Q.
fn reduce_full(p: IPoly, basis: &[IPoly]) -> IPoly {
    let mut p = p.terms;
    let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
    let mut steps = 0usize;
    while let Some((lm, lc)) = p.last() {
        match basis.iter().find(|g| g.lm().divides(lm)) {
            None => {
                let t = p.pop().unwrap();
                rem.push(t);
            }
            Some(g) => {
                let h = lc.gcd(g.lc());
                let cp = g.lc() / &h;
                let cg = lc / &h;
                let shift = lm.div(g.lm());
                p = IPoly::lin_comb(&cp, &p, &cg, &shift, g);
                if !cp.is_one() {
                    for (_, c) in &mut rem {
                        *c *= &cp;
                    }
                }
                steps += 1;
                if steps % 8 == 0 {
                    let g = p.iter().chain(rem.iter()).fold(BigInt::zero(), |a, (_, c)| a.gcd(c));
                    if !g.is_zero() && !g.is_one() {
                        for (_, c) in p.iter_mut().chain(rem.iter_mut()) {
                            *c = &*c / &g;
                        }
                    }
                }
            }
        }
    }
    rem.reverse();
    IPoly { terms: rem }
}

fn normal_form_primitive(p: IPoly, basis: &[IPoly]) -> IPoly {
    let mut r = reduce_full(p, basis);
    r.make_primitive();
    r
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Buchberger's algorithm with the normal selection strategy and the product
/// and chain criteria.
pub fn buchberger(gens: &IdealBasis) -> Result<GroebnerBasis> {
    buchberger_with_budget(gens, &GbBudget::default())
}

pub fn buchberger_with_budget(gens: &IdealBasis, budget: &GbBudget) -> Result<GroebnerBasis> {
    let ring = gens.ring();
    let mut basis: Vec<IPoly> = Vec::new();
    let mut inputs: Vec<IPoly> = gens.generators().iter().map(IPoly::from_poly).collect();
    inputs.sort_by(|a, b| a.lm().cmp(b.lm()).then_with(|| a.terms.cmp(&b.terms)));
    inputs.dedup();

    let mut pairs: BTreeSet<Pair> = BTreeSet::new();
    let add = |basis: &mut Vec<IPoly>, pairs: &mut BTreeSet<Pair>, g: IPoly| -> Result<()> {
        if basis.len() >= budget.max_basis {
            return Err(Error::ResourceExhausted(format!(
                "Gröbner basis exceeded {} elements",
                budget.max_basis
            )));
        }
        let j = basis.len();
        for (i, f) in basis.iter().enumerate() {
            pairs.insert(Pair { lcm: f.lm().lcm(g.lm()), i, j });
        }
        basis.push(g);
        Ok(())
    };

    for g in inputs {
        let r = normal_form_primitive(g, &basis);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r)?;
        }
    }

    let mut processed = 0usize;
    while let Some(pair) = pairs.pop_first() {
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if fi.lm().is_coprime(fj.lm()) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].lm().divides(&pair.lcm)
                && !pairs.contains(&pair_key(&basis, pair.i, k))
                && !pairs.contains(&pair_key(&basis, pair.j, k))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::ResourceExhausted(format!(
                "Gröbner basis computation exceeded {} S-pairs",
                budget.max_pairs
            )));
        }
        let s = s_poly(fi, fj, &pair.lcm);
        let r = normal_form_primitive(s, &basis);
        if !r.is_zero() {
            if r.lm().is_one() {
                basis = vec![r];
                break;
            }
            add(&mut basis, &mut pairs, r)?;
        }
    }

    let reduced = interreduce(basis);
    let out = GroebnerBasis {
        ring,
        order: MonomialOrder::Grlex,
        basis: reduced.iter().map(|g| monic(g, ring)).collect::<Result<_>>()?,
    };
    for g in gens.generators() {
        if !out.normal_form(g)?.is_zero() {
            return Err(Error::Precondition(
                "Gröbner basis failed to reduce an input generator to zero".into(),
            ));
        }
    }
    Ok(out)
}

fn pair_key(basis: &[IPoly], a: usize, b: usize) -> Pair {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    Pair { lcm: basis[i].lm().lcm(basis[j].lm()), i, j }
}

fn s_poly(f: &IPoly, g: &IPoly, lcm: &Monomial) -> IPoly {
    let h = f.lc().gcd(g.lc());
    let cf = g.lc() / &h;
    let cg = f.lc() / &h;
    let sf = lcm.div(f.lm());
    let sg = lcm.div(g.lm());
    let f_shift: Vec<(Monomial, BigInt)> = f.terms.iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect();
    let mut out = IPoly { terms: IPoly::lin_comb(&cf, &f_shift, &cg, &sg, g) };
    out.make_primitive();
    out
}

fn interreduce(basis: Vec<IPoly>) -> Vec<IPoly> {
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.lm().cmp(b.lm()));
    let mut minimal: Vec<IPoly> = Vec::new();
    for g in sorted {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<IPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, g)| g.clone())
            .collect();
        out.push(normal_form_primitive(minimal[k].clone(), &others));
    }
    out.sort_by(|a, b| a.lm().cmp(b.lm()));
    out
}

fn monic(g: &IPoly, ring: Ring) -> Result<LaurentPoly> {
    let p = g.to_poly(ring)?;
    let lc = p.leading_coeff();
    p.scale(&(BigRational::one() / lc))
}

/// `f ∈ G` by normal form.
pub fn ideal_member(f: &LaurentPoly, g: &GroebnerBasis) -> Result<bool> {
    Ok(g.normal_form(f)?.is_zero())
}

/// `f ∈ rad(I)` via `1 ∈ ⟨I, 1 - y f⟩` with a fresh variable `y`.
pub fn radical_member(f: &LaurentPoly, ideal: &IdealBasis) -> Result<bool> {
    radical_member_with_budget(f, ideal, &GbBudget::default())
}

pub fn radical_member_with_budget(f: &LaurentPoly, ideal: &IdealBasis, budget: &GbBudget) -> Result<bool> {
    let n = ideal.nvars();
    if f.nvars() != n {
        return Err(Error::Arity { expected: n, found: f.nvars() });
    }
    let ext = Ring::rational(n + 1);
    let mut gens: Vec<LaurentPoly> =
        ideal.generators().iter().map(|g| g.to_rational().with_nvars(n + 1)).collect::<Result<_>>()?;
    let y = LaurentPoly::var(ext, n);
    let fy = &f.to_rational().with_nvars(n + 1)? * &y;
    gens.push(&LaurentPoly::one(ext) - &fy);
    let gb = buchberger_with_budget(&IdealBasis::new(n + 1, gens)?, budget)?;
    Ok(gb.is_unit_ideal())
}

fn check_homogeneous(ideal: &IdealBasis) -> Result<()> {
    for g in ideal.generators() {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.render(&VarStyle::Z)));
        }
    }
    Ok(())
}

/// Whether the homogeneous ideal has only the trivial common zero in `C^{n+1}`.
///
/// Decided from the reduced basis: the zero set is `{0}` exactly when the
/// quotient ring is finite-dimensional, that is, when some leading monomial is
/// a pure power of each variable.
pub fn only_trivial_solution(ideal: &IdealBasis) -> Result<bool> {
    only_trivial_solution_with_budget(ideal, &GbBudget::default())
}

pub fn only_trivial_solution_with_budget(ideal: &IdealBasis, budget: &GbBudget) -> Result<bool> {
    check_homogeneous(ideal)?;
    let gb = buchberger_with_budget(ideal, budget)?;
    Ok(has_pure_powers(&gb))
}

/// Reads the finite-dimensionality certificate off a basis.
pub fn has_pure_powers(gb: &GroebnerBasis) -> bool {
    if gb.is_unit_ideal() {
        return true;
    }
    let lms = gb.leading_monomials();
    (0..gb.ring().nvars).all(|v| lms.iter().any(|m| m.pure_power_of() == Some(v)))
}

/// Same question answered by testing `z_i ∈ rad(I)` for every variable.
pub fn only_trivial_solution_by_radical(ideal: &IdealBasis, budget: &GbBudget) -> Result<bool> {
    check_homogeneous(ideal)?;
    for v in 0..ideal.nvars() {
        let z = LaurentPoly::var(Ring { domain: Domain::Rational, nvars: ideal.nvars(), laurent: false }, v);
        if !radical_member_with_budget(&z, ideal, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}
