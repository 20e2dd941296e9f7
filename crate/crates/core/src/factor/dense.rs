//! Dense univariate polynomials over Z, coefficients from low to high degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type DPoly = Vec<BigInt>;

pub fn trim(mut a: DPoly) -> DPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(a: &[BigInt]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn lc(a: &[BigInt]) -> &BigInt {
    a.last().expect("nonzero polynomial")
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> DPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        out.push(x + b.get(i).cloned().unwrap_or_default());
    }
    trim(out)
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> DPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        out.push(x - b.get(i).cloned().unwrap_or_default());
    }
    trim(out)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> DPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &[BigInt], c: &BigInt) -> DPoly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> DPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if lc(a).is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

pub fn derivative(a: &[BigInt]) -> DPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// Exact quotient `a / b` over Z, or `None` when `b` does not divide `a`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<DPoly> {
    let db = degree(b)?;
    let Some(da) = degree(a) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    // Cheap rejection on the constant terms.
    if !b[0].is_zero() && !a[0].is_zero() && !a[0].is_multiple_of(&b[0]) {
        return None;
    }
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    let lb = lc(b).clone();
    for i in (0..=da - db).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(&lb);
        if !r.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= &c * y;
        }
        q[i] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trim(q))
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> DPoly {
    let db = degree(b).expect("nonzero divisor");
    let mut r = a.to_vec();
    let lb = lc(b).clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[dr - db + j] -= &c * y;
        }
        r = trim(r);
    }
    r
}

/// Gcd over Z by the primitive remainder sequence; positive leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> DPoly {
    if a.is_empty() {
        return primitive(b).into_iter().map(|c| c * content(b)).collect();
    }
    if b.is_empty() {
        return primitive(a).into_iter().map(|c| c * content(a)).collect();
    }
    let c = content(a).gcd(&content(b));
    let mut f = primitive(a);
    let mut g = primitive(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = prem(&f, &g);
        f = g;
        g = primitive(&r);
    }
    scale(&primitive(&f), &c)
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub fn is_one(a: &[BigInt]) -> bool {
    a.len() == 1 && a[0].is_one()
}

/// Square-free decomposition of a primitive polynomial with positive leading
/// coefficient: `f = prod a_i^i`, returned as `(a_i, i)` with `deg a_i > 0`.
pub fn squarefree_decomposition(f: &[BigInt]) -> Vec<(DPoly, u32)> {
    let mut out = Vec::new();
    let df = derivative(f);
    let a0 = gcd(f, &df);
    let mut b = div_exact(f, &a0).expect("gcd divides");
    let c = div_exact(&df, &a0).expect("gcd divides");
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1u32;
    while degree(&b).unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        let nb = div_exact(&b, &a).expect("gcd divides");
        let nc = div_exact(&d, &a).expect("gcd divides");
        if degree(&a).unwrap_or(0) > 0 {
            out.push((primitive(&a), i));
        }
        d = sub(&nc, &derivative(&nb));
        b = nb;
        i += 1;
    }
    out
}
