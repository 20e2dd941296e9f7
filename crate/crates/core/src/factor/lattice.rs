//! Monomial change of coordinates onto the saturated lattice spanned by a
//! polynomial's support.
//!
//! If the exponent differences of `f` span a lattice of rank `r` smaller than
//! the number of variables, then `f = x^{e0} F(x^{q_1}, .., x^{q_r})` where
//! `q_1 .. q_r` extend to a basis of `Z^n`. Factorizations of `F` and `f`
//! correspond up to monomial units.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::ring::{LaurentPoly, Monomial, Ring};

pub struct Compression {
    nvars: usize,
    basis: Vec<Vec<i64>>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Applies the unimodular column operation
/// `(col_c, col_j) <- (x col_c + y col_j, u col_c + v col_j)`.
fn column_op(m: &mut [Vec<i64>], c: usize, j: usize, x: i64, y: i64, u: i64, v: i64) -> Option<()> {
    for row in m.iter_mut() {
        let (a, b) = (row[c], row[j]);
        row[c] = x.checked_mul(a)?.checked_add(y.checked_mul(b)?)?;
        row[j] = u.checked_mul(a)?.checked_add(v.checked_mul(b)?)?;
    }
    Some(())
}

fn invert_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&v| BigRational::from_integer(v.into())).collect();
            r.extend((0..n).map(|j| BigRational::from_integer(BigInt::from((i == j) as i64))));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = BigRational::from_integer(1.into()) / &a[c][c];
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..2 * n {
                    let d = &f * &a[c][k];
                    a[i][k] -= d;
                }
            }
        }
    }
    a.iter()
        .map(|row| row[n..].iter().map(|v| v.to_integer().to_i64()).collect::<Option<Vec<_>>>())
        .collect()
}

/// Rewrites `f` (ordinary, no monomial content) in fewer variables when its
/// support lattice has rank below the number of variables it uses.
pub fn compress(f: &LaurentPoly) -> Option<(Compression, LaurentPoly)> {
    let n = f.nvars();
    let used = f.used_vars().len();
    let support: Vec<&Monomial> = f.terms().map(|(m, _)| m).collect();
    let base = support[0].exponents().to_vec();
    let mut a: Vec<Vec<i64>> = support
        .iter()
        .map(|m| m.exponents().iter().zip(&base).map(|(&e, &b)| (e - b) as i64).collect())
        .collect();
    let mut qinv: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut c = 0;
    for i in 0..a.len() {
        if c == n {
            break;
        }
        for j in c + 1..n {
            if a[i][j] == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(a[i][c], a[i][j]);
            let (ac, aj) = (a[i][c] / g, a[i][j] / g);
            column_op(&mut a, c, j, x, y, -aj, ac)?;
            column_op(&mut qinv, c, j, x, y, -aj, ac)?;
        }
        if a[i][c] != 0 {
            c += 1;
        }
    }
    let r = c;
    if r >= used {
        return None;
    }
    let q = invert_unimodular(&qinv)?;
    let ring = Ring { nvars: r.max(1), ..f.ring().as_laurent() };
    let terms = f.terms().zip(&a).map(|((_, coef), row)| {
        let mut e: Vec<i32> = row[..r].iter().map(|&v| v as i32).collect();
        e.resize(ring.nvars, 0);
        (Monomial::new(e), coef.clone())
    });
    let big = LaurentPoly::from_terms(ring, terms).ok()?;
    let (small, _) = big.laurent_normalize().ok()?;
    let small = small.to_ring(Ring { laurent: false, ..ring }).ok()?;
    Some((Compression { nvars: n, basis: q[..r].to_vec() }, small))
}

impl Compression {
    /// Maps a polynomial in the compressed variables back and removes the
    /// monomial unit.
    pub fn expand(&self, g: &LaurentPoly, ring: Ring) -> LaurentPoly {
        let lring = ring.as_laurent();
        let terms = g.terms().map(|(m, c)| {
            let mut e = vec![0i64; self.nvars];
            for (k, &gk) in m.exponents().iter().enumerate().take(self.basis.len()) {
                for (ei, qi) in e.iter_mut().zip(&self.basis[k]) {
                    *ei += gk as i64 * qi;
                }
            }
            (Monomial::new(e.into_iter().map(|v| v as i32).collect()), c.clone())
        });
        let big = LaurentPoly::from_terms(lring, terms).expect("Laurent ring admits any monomial");
        let (small, _) = big.laurent_normalize().expect("nonzero");
        small.to_ring(ring).expect("normalized polynomial is ordinary")
    }
}
