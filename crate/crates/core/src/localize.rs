//! Divisor-set membership certificates and the reduction of ideals of
//! `S^{-1}Λ` generated by products of powers of fixed irreducibles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{self, Mode};
use crate::ring::{div_exact, LaurentPoly, Monomial, Ring};
use crate::strongcheck::{check_strongly_coprime_with, StrongOptions};
use crate::verdict::{Verdict, Witness};

/// A candidate element `prod q_i(a_i1, .., a_is)` of the divisor set `S_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorSetQuery {
    pub p: LaurentPoly,
    /// Each `q_i` with optional monomial images for its variables.
    pub candidates: Vec<(LaurentPoly, Option<Vec<Monomial>>)>,
}

impl DivisorSetQuery {
    /// The product of the evaluated candidates.
    pub fn element(&self) -> Result<LaurentPoly> {
        let mut acc: Option<LaurentPoly> = None;
        for (q, images) in &self.candidates {
            let v = match images {
                Some(im) => q.to_laurent().monomial_substitute(im)?,
                None => q.to_laurent(),
            };
            acc = Some(match acc {
                None => v,
                Some(a) => {
                    let ring = a.ring().join(v.ring());
                    &a.to_ring(ring)? * &v.to_ring(ring)?
                }
            });
        }
        acc.ok_or_else(|| Error::InvalidArgument("no candidate factors".into()))
    }
}

/// PROVED when every factor is certified strongly coprime to `p` and has
/// nonzero augmentation.
pub fn divisor_set_member(query: &DivisorSetQuery) -> Result<Verdict> {
    divisor_set_member_with(query, &StrongOptions::default())
}

pub fn divisor_set_member_with(query: &DivisorSetQuery, opts: &StrongOptions) -> Result<Verdict> {
    if query.p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if query.candidates.is_empty() {
        return Err(Error::InvalidArgument("no candidate factors".into()));
    }
    let mut verdicts = Vec::new();
    for (q, _) in &query.candidates {
        if num_traits::Zero::is_zero(&q.eval_at_ones()) {
            return Err(Error::Precondition(format!("{q} vanishes at (1, .., 1)")));
        }
        let n = query.p.nvars().max(q.nvars());
        let (p, q) = (query.p.with_nvars(n)?, q.with_nvars(n)?);
        verdicts.push(check_strongly_coprime_with(&p, &q, opts)?);
    }
    let witness = Witness::Components { verdicts: verdicts.clone() };
    Ok(if verdicts.iter().all(|v| v.is_proved()) {
        Verdict { reason: "every factor is strongly coprime to p".into(), ..verdicts[0].clone() }.with_witness(witness)
    } else if let Some(k) = verdicts.iter().position(|v| v.is_refuted()) {
        Verdict::refuted(witness, format!("factor {} is isogenous to p", k + 1))
    } else {
        let mut v = Verdict::undecided("some factor is not certified strongly coprime to p").with_witness(witness);
        v.resource_exhausted = verdicts.iter().any(|v| v.resource_exhausted);
        v
    })
}

/// Ideal of `S^{-1}Λ` generated by `prod p_i^{e_i}` for the listed exponent
/// vectors, over fixed certified irreducible, pairwise coprime `p_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalizedIdeal {
    pub primes: Vec<LaurentPoly>,
    pub generators: Vec<Vec<u32>>,
    /// Irreducibility certificate of each prime.
    pub certificates: Vec<Verdict>,
}

impl LocalizedIdeal {
    /// The two-prime ideal `<p^{s_i} q^{t_i}>`.
    pub fn new(p: &LaurentPoly, q: &LaurentPoly, generators: &[(u32, u32)]) -> Result<Self> {
        Self::with_primes(vec![p.clone(), q.clone()], generators.iter().map(|&(s, t)| vec![s, t]).collect())
    }

    pub fn with_primes(primes: Vec<LaurentPoly>, generators: Vec<Vec<u32>>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidArgument("no primes".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidArgument("empty generator list".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != primes.len()) {
            return Err(Error::DimensionMismatch(format!("exponent vector {g:?} for {} primes", primes.len())));
        }
        let n = primes.iter().map(|p| p.nvars()).max().unwrap();
        let primes: Vec<LaurentPoly> =
            primes.iter().map(|p| p.to_laurent().with_nvars(n)).collect::<Result<_>>()?;
        let mut certificates = Vec::new();
        for p in &primes {
            let v = factor::is_irreducible(p, Mode::Laurent)?;
            if !v.is_proved() {
                return Err(Error::Precondition(format!("{p} is not certified irreducible")));
            }
            certificates.push(v);
        }
        for (i, a) in primes.iter().enumerate() {
            for b in &primes[i + 1..] {
                if !factor::coprime(a, b)? {
                    return Err(Error::Precondition(format!("{a} and {b} are not coprime")));
                }
            }
        }
        Ok(LocalizedIdeal { primes, generators, certificates })
    }

    pub fn ring(&self) -> Ring {
        self.primes[0].ring()
    }

    /// `prod p_i^{e_i}`.
    pub fn expand(&self, e: &[u32]) -> LaurentPoly {
        self.primes.iter().zip(e).fold(LaurentPoly::one(self.ring()), |acc, (p, &k)| &acc * &p.pow(k))
    }
}

/// One pairwise step: `left + right = prod p_i^{result_i} · witness` with the
/// witness coprime to every prime, or a divisibility step without witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionStep {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub result: Vec<u32>,
    /// `prod_{left_i > result_i} p_i^{left_i - result_i} + prod_{right_i > result_i} p_i^{..}`.
    pub witness: Option<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reduction {
    pub generator: Vec<u32>,
    pub steps: Vec<ReductionStep>,
}

fn witness_in_s(ideal: &LocalizedIdeal, w: &LaurentPoly) -> Result<bool> {
    // Each prime is irreducible, so w is coprime to it iff it does not divide w.
    for p in &ideal.primes {
        if div_exact(w, p)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reduces to a single generator by iterated pairwise steps in input order.
pub fn reduce_localized_ideal(ideal: &LocalizedIdeal) -> Result<Reduction> {
    let mut current = ideal.generators[0].clone();
    let mut steps = Vec::new();
    for g in &ideal.generators[1..] {
        let result: Vec<u32> = current.iter().zip(g).map(|(&a, &b)| a.min(b)).collect();
        let witness = if result == current || result == *g {
            None
        } else {
            let part = |e: &[u32]| {
                let d: Vec<u32> = e.iter().zip(&result).map(|(&a, &m)| a - m).collect();
                ideal.expand(&d)
            };
            let w = &part(&current) + &part(g);
            if !witness_in_s(ideal, &w)? {
                return Err(Error::Precondition(format!("witness {w} is not coprime to the primes")));
            }
            Some(w)
        };
        steps.push(ReductionStep { left: current.clone(), right: g.clone(), result: result.clone(), witness });
        current = result;
    }
    Ok(Reduction { generator: current, steps })
}

/// Audits a reduction: every input is a multiple of `prod p_i^{gen_i}`,
/// and replaying the steps from the inputs reaches `gen` using only
/// witnesses certified in `S`.
pub fn verify_principality(ideal: &LocalizedIdeal, gen: &[u32], steps: &[ReductionStep]) -> Result<bool> {
    if gen.len() != ideal.primes.len() {
        return Ok(false);
    }
    let target = ideal.expand(gen);
    for g in &ideal.generators {
        if div_exact(&ideal.expand(g), &target)?.is_none() {
            return Ok(false);
        }
    }
    let mut known: Vec<Vec<u32>> = ideal.generators.clone();
    for s in steps {
        if !known.contains(&s.left) || !known.contains(&s.right) {
            return Ok(false);
        }
        let ok = match &s.witness {
            None => {
                (s.result == s.left || s.result == s.right)
                    && div_exact(&ideal.expand(if s.result == s.left { &s.right } else { &s.left }), &ideal.expand(&s.result))?
                        .is_some()
            }
            Some(w) => {
                let sum = &ideal.expand(&s.left) + &ideal.expand(&s.right);
                sum == &ideal.expand(&s.result) * w && witness_in_s(ideal, w)?
            }
        };
        if !ok {
            return Ok(false);
        }
        known.push(s.result.clone());
    }
    Ok(known.iter().any(|k| k.as_slice() == gen))
}
