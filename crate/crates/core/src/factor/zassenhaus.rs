//! Univariate factorization over Z: content, square-free decomposition,
//! factorization modulo a small prime, Hensel lifting and recombination.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dense::{self, DPoly};
use super::zp::{self, ZpPoly};
use crate::error::{Error, Result};

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..(1 << 20)).step_by(2).filter(|&n| is_prime(n))
}

/// Primes not dividing the leading coefficient for which `f` stays square-free.
fn good_primes(f: &[BigInt]) -> impl Iterator<Item = u64> + '_ {
    let lc = dense::lc(f).clone();
    odd_primes().filter(move |&p| {
        if (&lc % BigInt::from(p)).is_zero() {
            return false;
        }
        zp::is_squarefree(&zp::reduce(f, p), p)
    })
}

/// A prime below 200 certifying that `f` is square-free over Q, if any.
fn small_good_prime(f: &[BigInt]) -> Option<u64> {
    let lc = dense::lc(f).clone();
    odd_primes().take_while(|&p| p < 200).find(|&p| {
        !(&lc % BigInt::from(p)).is_zero() && zp::is_squarefree(&zp::reduce(f, p), p)
    })
}

fn mod_poly(a: &[BigInt], m: &BigInt) -> DPoly {
    dense::trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &[BigInt], m: &BigInt) -> DPoly {
    let half: BigInt = m >> 1;
    dense::trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f ≡ g0 h0 (mod p)` with `g0` monic and `s g0 + t h0 ≡ 1` to a
/// factorization modulo `p^k`.
fn lift_pair(f: &[BigInt], g0: &ZpPoly, h0: &ZpPoly, p: u64, k: u32) -> (DPoly, DPoly) {
    let (_, s, t) = zp::ext_gcd(g0, h0, p);
    let mut g = zp::to_bigint(g0);
    let mut h = zp::to_bigint(h0);
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = dense::sub(f, &dense::mul(&g, &h));
        let e: DPoly = diff.iter().map(|c| c / &pj).collect();
        let e = zp::reduce(&e, p);
        let te = zp::mul(&t, &e, p);
        let (q, dg) = zp::divrem(&te, g0, p);
        let dh = zp::add(&zp::mul(&s, &e, p), &zp::mul(&q, h0, p), p);
        g = dense::add(&g, &dense::scale(&zp::to_bigint(&dg), &pj));
        h = dense::add(&h, &dense::scale(&zp::to_bigint(&dh), &pj));
        pj *= &pb;
    }
    (mod_poly(&g, &pj), mod_poly(&h, &pj))
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Monic lifts modulo `m = p^k` of the modular factors of `f`.
fn multi_lift(f: &[BigInt], factors: &[ZpPoly], p: u64, k: u32, m: &BigInt) -> Vec<DPoly> {
    if factors.len() == 1 {
        let inv = inverse_mod(dense::lc(f), m);
        return vec![mod_poly(&dense::scale(f, &inv), m)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let g0 = left.iter().fold(vec![1u64], |acc, g| zp::mul(&acc, g, p));
    let lcp = (dense::lc(f).mod_floor(&BigInt::from(p))).to_u64().unwrap();
    let h0 = right.iter().fold(vec![lcp], |acc, g| zp::mul(&acc, g, p));
    let (g, h) = lift_pair(f, &g0, &h0, p, k);
    let mut out = multi_lift(&g, left, p, k, m);
    out.extend(multi_lift(&h, right, p, k, m));
    out
}

/// Bound on the coefficients of `lc(f) * g` for any factor `g` of `f`.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let n = f.len() - 1;
    (norm2.sqrt() + 1u32) * (BigInt::one() << n) * dense::lc(f).abs()
}

/// Factors a primitive square-free polynomial of positive degree with
/// positive leading coefficient into irreducibles over Z.
pub fn factor_squarefree(f: &[BigInt], max_subsets: usize) -> Result<Vec<DPoly>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let p = good_primes(f).next().expect("a square-free polynomial has good primes");
    let fp = zp::monic(&zp::reduce(f, p), p);
    let modular = zp::factor_squarefree(&fp, p);
    if modular.len() == 1 {
        return Ok(vec![f.to_vec()]);
    }
    let bound = coefficient_bound(f) * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let mut lifted = multi_lift(&mod_poly(f, &m), &modular, p, k, &m);
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1usize;
    let mut tests = 0usize;
    'outer: while 2 * s <= lifted.len() {
        for combo in (0..lifted.len()).combinations(s) {
            tests += 1;
            if tests > max_subsets {
                return Err(Error::ResourceExhausted(format!(
                    "factor recombination exceeded {max_subsets} subsets"
                )));
            }
            let lcf = dense::lc(&f).clone();
            let g = combo
                .iter()
                .fold(vec![lcf], |acc, &i| mod_poly(&dense::mul(&acc, &lifted[i]), &m));
            let g = dense::primitive(&symmetric(&g, &m));
            if let Some(q) = dense::div_exact(&f, &g) {
                out.push(g);
                f = q;
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        s += 1;
    }
    if dense::degree(&f).unwrap_or(0) > 0 {
        out.push(dense::primitive(&f));
    }
    Ok(out)
}

fn sort_factors(v: &mut [(DPoly, u32)]) {
    v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
}

/// Complete factorization `f = unit * prod g_i^{e_i}` over Z; each `g_i` is
/// primitive with positive leading coefficient.
pub fn factor(f: &[BigInt], max_subsets: usize) -> Result<(BigInt, Vec<(DPoly, u32)>)> {
    let f = dense::trim(f.to_vec());
    if f.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut unit = dense::content(&f);
    if dense::lc(&f).is_negative() {
        unit = -unit;
    }
    let mut f: DPoly = f.iter().map(|c| c / &unit).collect();
    let mut out = Vec::new();
    let shift = f.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        f.drain(..shift);
        out.push((vec![BigInt::zero(), BigInt::one()], shift as u32));
    }
    if f.len() <= 1 {
        return Ok((unit, out));
    }
    let parts = if small_good_prime(&f).is_some() {
        vec![(f.clone(), 1)]
    } else {
        dense::squarefree_decomposition(&f)
    };
    for (part, e) in parts {
        for g in factor_squarefree(&part, max_subsets)? {
            out.push((g, e));
        }
    }
    sort_factors(&mut out);
    Ok((unit, out))
}

/// Irreducibility over Q of a polynomial of positive degree.
pub fn is_irreducible(f: &[BigInt], max_subsets: usize) -> Result<bool> {
    let f = dense::primitive(&dense::trim(f.to_vec()));
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return Err(Error::ConstantInput);
    }
    if n == 1 {
        return Ok(true);
    }
    if f[0].is_zero() {
        return Ok(false);
    }
    let lc = dense::lc(&f).clone();
    let small: Vec<u64> = odd_primes()
        .take_while(|&p| p < 200)
        .filter(|&p| {
            !(&lc % BigInt::from(p)).is_zero() && zp::is_squarefree(&zp::reduce(&f, p), p)
        })
        .take(6)
        .collect();
    for &p in &small {
        if zp::count_factors(&zp::monic(&zp::reduce(&f, p), p), p) == 1 {
            return Ok(true);
        }
    }
    if small.is_empty() {
        // Not square-free modulo any small prime: check over Q.
        let g = dense::gcd(&f, &dense::derivative(&f));
        if g.len() > 1 {
            return Ok(false);
        }
    }
    let (_, fs) = factor(&f, max_subsets)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> DPoly {
        dense::trim(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn expand(unit: &BigInt, fs: &[(DPoly, u32)]) -> DPoly {
        let mut acc = vec![unit.clone()];
        for (g, e) in fs {
            for _ in 0..*e {
                acc = dense::mul(&acc, g);
            }
        }
        acc
    }

    #[test]
    fn small_examples() {
        let (u, fs) = factor(&p(&[-1, 0, 1]), 1000).unwrap();
        assert!(u.is_one());
        assert_eq!(fs, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let (u, fs) = factor(&p(&[1, -1, 1]), 1000).unwrap();
        assert!(u.is_one());
        assert_eq!(fs, vec![(p(&[1, -1, 1]), 1)]);
        let (u, fs) = factor(&p(&[0, 6]), 1000).unwrap();
        assert_eq!(u, BigInt::from(6));
        assert_eq!(fs, vec![(p(&[0, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 + 1 is irreducible over Z but splits modulo every prime.
        let f = p(&[1, 0, 0, 0, 1]);
        assert!(is_irreducible(&f, 1000).unwrap());
        let (_, fs) = factor(&f, 1000).unwrap();
        assert_eq!(fs.len(), 1);
        // (x^4 + 1)(x^4 - 2x^2 + 2)(3x - 5)^2
        let g = dense::mul(&dense::mul(&f, &p(&[2, 0, -2, 0, 1])), &dense::mul(&p(&[-5, 3]), &p(&[-5, 3])));
        let (u, fs) = factor(&g, 1000).unwrap();
        assert_eq!(expand(&u, &fs), g);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 = product of cyclotomic polynomials Phi_d, d | 12
        let mut f = vec![BigInt::zero(); 13];
        f[0] = BigInt::from(-1);
        f[12] = BigInt::one();
        let (u, fs) = factor(&f, 10_000).unwrap();
        assert_eq!(fs.len(), 6);
        assert_eq!(expand(&u, &fs), f);
    }
}
