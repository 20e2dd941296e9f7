//! Strong irreducibility and strong coprimality.
//!
//! Proofs come from the singular-locus criterion on the homogenization (and,
//! for univariate binomials, from the classification of reducible binomials).
//! Refutations come from factoring power substitutions or from monomial
//! images sharing a factor. Everything else is UNDECIDED.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{self, FactorBudget, Mode};
use crate::groebner::{self, GbBudget, IdealBasis};
use crate::ring::{gcd, homogenize, integer_content, is_trivial_gcd, Domain, HomogPoly, LaurentPoly, Monomial, Ring};
use crate::verdict::{Rule, Verdict, Witness};

/// Search limits for the checks in this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrongOptions {
    /// Largest entry of a substitution vector in the refutation box.
    pub max_k: i64,
    /// Largest uniform power tried.
    pub max_uniform: i64,
    /// Most substitutions factored during a refutation search.
    pub max_substitutions: usize,
    /// Largest exponent used for monomial images in coprimality searches.
    pub max_image_power: i64,
    /// Most image pairs tried during a coprimality search.
    pub max_image_pairs: usize,
    pub gb: GbBudget,
    pub factor: FactorBudget,
}

impl Default for StrongOptions {
    fn default() -> Self {
        StrongOptions {
            max_k: 4,
            max_uniform: 6,
            max_substitutions: 4096,
            max_image_power: 3,
            max_image_pairs: 4000,
            gb: GbBudget::default(),
            factor: FactorBudget::default(),
        }
    }
}

/// Nonempty list of polynomials over a common ring.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyVector {
    entries: Vec<LaurentPoly>,
}

impl PolyVector {
    pub fn new(entries: Vec<LaurentPoly>) -> Result<Self> {
        let first = entries.first().ok_or_else(|| Error::InvalidArgument("empty polynomial vector".into()))?;
        let ring = entries.iter().skip(1).fold(first.ring(), |r, p| r.join(p.ring()));
        if entries.iter().any(|p| p.nvars() != ring.nvars) {
            return Err(Error::DimensionMismatch("vector entries live in different rings".into()));
        }
        let entries = entries.iter().map(|p| p.to_ring(ring)).collect::<Result<_>>()?;
        Ok(PolyVector { entries })
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `<z_i dP/dz_i : i = 0..n>`.
pub fn criterion_system(p: &HomogPoly) -> Result<IdealBasis> {
    if p.total_degree() == 0 {
        return Err(Error::ConstantInput);
    }
    let f = p.inner();
    let gens = (0..f.nvars())
        .map(|i| {
            let z = LaurentPoly::var(f.ring(), i);
            &z * &f.derivative(i)
        })
        .collect();
    IdealBasis::new(f.nvars(), gens)
}

/// Whether the criterion system of `p` has only the trivial solution.
pub fn criterion_holds(p: &HomogPoly, budget: &GbBudget) -> Result<bool> {
    groebner::only_trivial_solution_with_budget(&criterion_system(p)?, budget)
}

/// The polynomial in the variables `vars` only (in that order).
fn restrict(p: &LaurentPoly, vars: &[usize]) -> LaurentPoly {
    let ring = Ring { nvars: vars.len().max(1), ..p.ring() };
    LaurentPoly::from_terms(
        ring,
        p.terms().map(|(m, c)| {
            let mut e: Vec<i32> = vars.iter().map(|&v| m.exponents()[v]).collect();
            e.resize(ring.nvars, 0);
            (Monomial::new(e), c.clone())
        }),
    )
    .expect("restriction keeps exponents")
}

/// Ordinary primitive representative with no monomial factor.
fn normalized(p: &LaurentPoly) -> Result<LaurentPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (q, _) = p.laurent_normalize()?;
    let q = q.to_rational().primitive_part();
    if q.is_constant() {
        return Err(Error::UnitInput(p.to_string()));
    }
    q.to_ring(Ring { domain: Domain::Integer, ..q.ring() })
}

/// Whether `c` is a `k`-th power of a rational number.
fn rational_power(c: &BigRational, k: u32) -> bool {
    if c.is_negative() && k % 2 == 0 {
        return false;
    }
    let exact = |n: &BigInt| {
        let a = n.abs();
        a.nth_root(k).pow(k) == a
    };
    exact(c.numer()) && exact(c.denom())
}

fn primes_up_to(n: u32) -> Vec<u32> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// For `a x + b`, the smallest exponent `t` making `a x^t + b` reducible, if
/// any. `a x^t + b` is reducible exactly when `-b/a` is a `p`-th power for a
/// prime `p | t`, or `4 | t` and `-b/a = -4 d^4`.
fn binomial_reducing_power(a: &BigRational, b: &BigRational) -> Option<u32> {
    let c = -b / a;
    let bits = c.numer().bits().max(c.denom().bits()) as u32 + 1;
    for p in primes_up_to(bits.max(3)) {
        if rational_power(&c, p) {
            return Some(p);
        }
    }
    if c.is_negative() && rational_power(&(-&c / BigRational::from_integer(4.into())), 4) {
        return Some(4);
    }
    None
}

/// `p(x_1^{e_1}, .., x_m^{e_m})` with `e_i = -1` on the bits of `mask`,
/// normalized back into the ordinary ring.
fn reflect(p: &LaurentPoly, mask: usize) -> Result<LaurentPoly> {
    let t: Vec<i64> = (0..p.nvars()).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
    let (q, _) = p.to_laurent().power_substitute(&t)?.laurent_normalize()?;
    q.to_ring(p.ring())
}

/// A certificate of strong irreducibility that does not search, if one applies.
///
/// Strong irreducibility is unchanged by inverting variables, so the
/// criterion is tried on every reflection `x_i -> x_i^{-1}`.
fn certify(q: &LaurentPoly, opts: &StrongOptions) -> Result<Option<Verdict>> {
    let vars = q.used_vars();
    let small = restrict(q, &vars);
    if vars.len() >= 2 {
        let mut exhausted = None;
        for mask in 0..1usize << vars.len() {
            let r = reflect(&small, mask)?;
            let h = homogenize(&r)?;
            match criterion_holds(&h, &opts.gb) {
                Ok(true) => {
                    let via = if mask == 0 { String::new() } else { format!(" (after inverting variables {mask:#b})") };
                    return Ok(Some(Verdict::proved(
                        Rule::Criterion,
                        format!("singular-locus system of {h} has only the trivial solution{via}"),
                    )));
                }
                Ok(false) => {}
                Err(Error::ResourceExhausted(msg)) => {
                    exhausted.get_or_insert(msg);
                }
                Err(e) => return Err(e),
            }
        }
        return Ok(exhausted.map(Verdict::resource));
    }
    if small.degree().finite() == Some(1) {
        let a = small.coeff(&Monomial::var(1, 0));
        let b = small.coeff(&Monomial::one(1));
        if binomial_reducing_power(&a, &b).is_none() {
            return Ok(Some(Verdict::proved(
                Rule::Binomial,
                "no power substitution of this binomial is reducible",
            )));
        }
    }
    Ok(None)
}

/// Substitution vectors tried by the refutation search: uniform powers
/// first, then the box `{1..max_k}` on the used variables.
fn substitutions(n: usize, vars: &[usize], opts: &StrongOptions) -> Vec<Vec<i64>> {
    let embed = |t: &[i64]| {
        let mut full = vec![1i64; n];
        for (&v, &k) in vars.iter().zip(t) {
            full[v] = k;
        }
        full
    };
    let mut out: Vec<Vec<i64>> = (1..=opts.max_uniform).map(|k| embed(&vec![k; vars.len()])).collect();
    let mut boxed: Vec<Vec<i64>> = (0..vars.len())
        .map(|_| 1..=opts.max_k)
        .multi_cartesian_product()
        .filter(|t| t.iter().any(|&k| k != t[0]))
        .collect();
    boxed.sort_by_key(|t| (t.iter().copied().max(), t.iter().sum::<i64>()));
    out.extend(boxed.iter().map(|t| embed(t)));
    out.truncate(opts.max_substitutions);
    out
}

fn lcm_all(t: &[i64]) -> i64 {
    t.iter().fold(1i64, |acc, &k| acc.lcm(&k))
}

/// Factors `p(x^t)`; `Some` when it is reducible.
fn refute_at(p: &LaurentPoly, t: &[i64], budget: &FactorBudget) -> Result<Option<Verdict>> {
    let s = p.to_laurent().power_substitute(t)?;
    let v = factor::is_irreducible_with_budget(&s, Mode::Laurent, budget)?;
    if v.resource_exhausted {
        return Err(Error::ResourceExhausted(v.reason));
    }
    if !v.is_refuted() {
        return Ok(None);
    }
    let fz = factor::factor_with_budget(&s, Mode::Laurent, budget)?;
    let reason = if t.iter().all(|&k| k == t[0]) {
        format!("reducible at uniform power k={}", t[0])
    } else {
        format!("reducible at substitution {t:?}")
    };
    Ok(Some(Verdict::refuted(
        Witness::Factorization { substitution: Some(t.to_vec()), polynomial: s, factorization: fz },
        reason,
    )))
}

/// Decides strong irreducibility of a Laurent polynomial where possible.
pub fn check_strongly_irreducible(p: &LaurentPoly) -> Result<Verdict> {
    check_strongly_irreducible_with(p, &StrongOptions::default())
}

pub fn check_strongly_irreducible_with(p: &LaurentPoly, opts: &StrongOptions) -> Result<Verdict> {
    let q = normalized(p)?;
    let mut exhausted = None;
    match certify(&q, opts)? {
        Some(v) if v.resource_exhausted => exhausted = Some(v.reason),
        Some(v) => return Ok(v),
        None => {}
    }
    let vars = q.used_vars();
    if vars.len() == 1 && q.degree().finite() == Some(1) {
        // A binomial with a reducing power: refute there directly.
        let small = restrict(&q, &vars);
        let a = small.coeff(&Monomial::var(1, 0));
        let b = small.coeff(&Monomial::one(1));
        let k = binomial_reducing_power(&a, &b).expect("certify failed");
        let mut t = vec![1i64; p.nvars()];
        t[vars[0]] = k as i64;
        if let Some(v) = refute_at(p, &t, &opts.factor)? {
            return Ok(v);
        }
    }
    for t in substitutions(p.nvars(), &vars, opts) {
        match refute_at(p, &t, &opts.factor) {
            Ok(Some(v)) => return Ok(v),
            Ok(None) => {}
            Err(Error::ResourceExhausted(msg)) => {
                exhausted.get_or_insert(msg);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(match exhausted {
        Some(msg) => Verdict::resource(format!("criterion-failed-no-witness; {msg}")),
        None => Verdict::undecided("criterion-failed-no-witness"),
    })
}

/// Checks that a REFUTED witness of a strong irreducibility check
/// reassembles: the factorization multiplies back to the substituted input.
pub fn verify_refutation(p: &LaurentPoly, v: &Verdict) -> bool {
    match &v.witness {
        Some(Witness::Factorization { substitution: Some(t), polynomial, factorization }) => {
            let Ok(s) = p.to_laurent().power_substitute(t) else { return false };
            s == *polynomial && factorization.expand() == s && !factorization.is_irreducible()
        }
        _ => false,
    }
}

/// Whether `p` is strongly irreducible with content coprime to that of `q`
/// and uses more variables than `q`.
fn fewer_variables_rule(p: &LaurentPoly, q: &LaurentPoly, opts: &StrongOptions) -> Result<Option<Verdict>> {
    let (np, nq) = (p.used_vars().len(), q.used_vars().len());
    if np <= nq {
        return Ok(None);
    }
    if !integer_content(p).gcd(&integer_content(q)).is_one() {
        return Ok(None);
    }
    let Ok(pn) = normalized(p) else { return Ok(None) };
    match certify(&pn, opts)? {
        Some(v) if v.is_proved() => Ok(Some(Verdict::proved(
            Rule::FewerVariables,
            format!("{p} is strongly irreducible ({}) in {np} variables and {q} uses {nq}", v.reason),
        ))),
        _ => Ok(None),
    }
}

/// Evaluates `p` and `q` at monomial images in `Z^N` and returns a witness
/// when the images share a nonunit factor.
fn image_search(p: &LaurentPoly, q: &LaurentPoly, opts: &StrongOptions) -> Result<(Option<Verdict>, bool)> {
    let (pv, qv) = (p.used_vars(), q.used_vars());
    let n = pv.len().max(qv.len()).max(1);
    let ring = Ring { domain: Domain::Integer, nvars: n, laurent: true };
    let images = |vars: &[usize], total: usize, slots: &[usize], k: i64| -> Vec<Monomial> {
        let mut out = vec![Monomial::var(n, 0); total];
        for (&v, &s) in vars.iter().zip(slots) {
            out[v] = Monomial::var(n, s).pow(k as i32);
        }
        out
    };
    let to_int = |f: &LaurentPoly| f.to_ring(Ring { nvars: f.nvars(), ..ring });
    let (pi, qi) = (to_int(p)?, to_int(q)?);
    let mut tried = 0usize;
    let identity: Vec<usize> = (0..pv.len()).collect();
    for kp in 1..=opts.max_image_power {
        for kq in 1..=opts.max_image_power {
            for sign in [1i64, -1] {
                for slots in (0..n).permutations(qv.len()) {
                    tried += 1;
                    if tried > opts.max_image_pairs {
                        return Ok((None, true));
                    }
                    let ip = images(&pv, p.nvars(), &identity, kp);
                    let iq = images(&qv, q.nvars(), &slots, sign * kq);
                    let a = pi.monomial_substitute(&ip)?.to_ring(ring)?;
                    let b = qi.monomial_substitute(&iq)?.to_ring(ring)?;
                    let g = gcd(&a, &b)?;
                    if !is_trivial_gcd(&g) {
                        let reason = format!("images share the factor {g}");
                        let w = Witness::CommonFactor { images_p: ip, images_q: iq, p_image: a, q_image: b, gcd: g };
                        return Ok((Some(Verdict::refuted(w, reason)), false));
                    }
                }
            }
        }
    }
    Ok((None, false))
}

/// Certifies strong coprimality by the fewer-variables rule, or refutes it
/// with a pair of monomial images sharing a factor.
pub fn check_strongly_coprime(p: &LaurentPoly, q: &LaurentPoly) -> Result<Verdict> {
    check_strongly_coprime_with(p, q, &StrongOptions::default())
}

pub fn check_strongly_coprime_with(p: &LaurentPoly, q: &LaurentPoly, opts: &StrongOptions) -> Result<Verdict> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.nvars() != q.nvars() {
        return Err(Error::DimensionMismatch(format!("{} vs {} variables", p.nvars(), q.nvars())));
    }
    if let Some(v) = fewer_variables_rule(p, q, opts)? {
        return Ok(v);
    }
    if let Some(v) = fewer_variables_rule(q, p, opts)? {
        return Ok(v);
    }
    let (found, exhausted) = image_search(p, q, opts)?;
    Ok(match found {
        Some(v) => v,
        None if exhausted => Verdict::resource("no rule applies; image search budget exhausted"),
        None => Verdict::undecided("no rule applies and no common factor found"),
    })
}

/// `P` is strongly coprime to `Q` when some component pair is.
pub fn check_vector_coprime(p: &PolyVector, q: &PolyVector) -> Result<Verdict> {
    check_vector_coprime_with(p, q, &StrongOptions::default())
}

pub fn check_vector_coprime_with(p: &PolyVector, q: &PolyVector, opts: &StrongOptions) -> Result<Verdict> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(format!("vectors of length {} and {}", p.len(), q.len())));
    }
    let verdicts = p
        .entries()
        .iter()
        .zip(q.entries())
        .map(|(a, b)| check_strongly_coprime_with(a, b, opts))
        .collect::<Result<Vec<_>>>()?;
    let witness = Witness::Components { verdicts: verdicts.clone() };
    if let Some(k) = verdicts.iter().position(|v| v.is_proved()) {
        return Ok(Verdict::proved(Rule::Component, format!("component {} is strongly coprime", k + 1))
            .with_witness(witness));
    }
    if verdicts.iter().all(|v| v.is_refuted()) {
        return Ok(Verdict::refuted(witness, "every component pair is isogenous"));
    }
    let exhausted = verdicts.iter().any(|v| v.resource_exhausted);
    let mut v = Verdict::undecided("no component pair is certified strongly coprime").with_witness(witness);
    v.resource_exhausted = exhausted;
    Ok(v)
}

/// Outcome of [`genericity_sample`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericityReport {
    pub n_vars: usize,
    pub degree: u32,
    pub trials: usize,
    pub coeff_box: i64,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub exhausted: usize,
    pub pass_rate: f64,
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    if n == 1 {
        return vec![Monomial::new(vec![d as i32])];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for rest in monomials_of_degree(n - 1, d - first) {
            let mut e = vec![first as i32];
            e.extend_from_slice(rest.exponents());
            out.push(Monomial::new(e));
        }
    }
    out
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (trial as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9)
}

/// Random homogeneous polynomial of degree `degree` in `z0 .. z_{n-1}` with
/// coefficients uniform in `[-coeff_box, coeff_box]`, redrawn if all zero.
pub fn random_homogeneous(n_vars: usize, degree: u32, coeff_box: i64, rng: &mut ChaCha8Rng) -> HomogPoly {
    let monos = monomials_of_degree(n_vars, degree);
    let ring = Ring::integer(n_vars);
    loop {
        let terms: Vec<(Monomial, BigRational)> = monos
            .iter()
            .map(|m| (m.clone(), BigRational::from_integer(rng.random_range(-coeff_box..=coeff_box).into())))
            .collect();
        let p = LaurentPoly::from_terms(ring, terms).expect("ordinary monomials");
        if !p.is_zero() {
            return HomogPoly::new(p).expect("homogeneous by construction");
        }
    }
}

/// Fraction of random homogeneous polynomials passing the criterion.
pub fn genericity_sample(
    n_vars: usize,
    degree: u32,
    trials: usize,
    coeff_box: i64,
    rng_seed: u64,
) -> Result<GenericityReport> {
    if n_vars < 3 {
        return Err(Error::InvalidArgument("genericity needs at least 3 variables".into()));
    }
    if degree < 1 || trials < 1 || coeff_box < 1 {
        return Err(Error::InvalidArgument("degree, trials and coefficient box must be positive".into()));
    }
    let budget = GbBudget::default();
    let outcomes: Vec<Option<bool>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(rng_seed, i));
            let p = random_homogeneous(n_vars, degree, coeff_box, &mut rng);
            criterion_holds(&p, &budget).ok()
        })
        .collect();
    let passed = outcomes.iter().filter(|o| **o == Some(true)).count();
    let failed = outcomes.iter().filter(|o| **o == Some(false)).count();
    let exhausted = trials - passed - failed;
    Ok(GenericityReport {
        n_vars,
        degree,
        trials,
        coeff_box,
        seed: rng_seed,
        passed,
        failed,
        exhausted,
        pass_rate: passed as f64 / trials as f64,
    })
}

/// The power substitutions the refutation search would try, for testing.
pub fn refutation_box(p: &LaurentPoly, opts: &StrongOptions) -> Vec<Vec<i64>> {
    substitutions(p.nvars(), &p.used_vars(), opts)
}

/// `lcm` of a substitution vector: the uniform power equivalent to it.
pub fn uniform_equivalent(t: &[i64]) -> i64 {
    lcm_all(t)
}

#[cfg(test)]
mod tests;
