//! Cyclic torsion modules `Z[Z^n]/<p p̄>`: the ribbon presentation
//! certificate and Blanchfield self-linking values.

use serde::Serialize;

use super::{laurent_ring, torsion_alexander_poly, ModulePresentation};
use crate::error::{Error, Result};
use crate::factor::{self, Mode};
use crate::ring::{canonical_associate, div_exact, gcd, is_trivial_gcd, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RibbonCheck {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RibbonReport {
    pub p: LaurentPoly,
    pub p_bar: LaurentPoly,
    /// Torsion of `H_1(X)`, read off `∂α = t·p`.
    pub quotient_piece: LaurentPoly,
    /// `H_2(X, M)`, the conjugate of `H^2(X) = Λ/<p>`.
    pub sub_piece: LaurentPoly,
    /// Generator of `J` with `TH_1 = Λ/J`.
    pub ideal_generator: LaurentPoly,
    pub presentation: ModulePresentation,
    pub checks: Vec<RibbonCheck>,
    pub certified: bool,
}

fn divides(b: &LaurentPoly, a: &LaurentPoly) -> Result<bool> {
    Ok(div_exact(a, b)?.is_some())
}

/// Rebuilds the chain-level data of the ribbon construction for `p` and
/// certifies `TH_1 = Λ/<p·p̄>`.
pub fn verify_ribbon_presentation(p: &LaurentPoly) -> Result<RibbonReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.nvars();
    let ring = laurent_ring(n);
    let p = canonical_associate(&p.to_ring(ring)?);
    let p_bar = canonical_associate(&p.bar());
    if !p.is_unit() && !is_trivial_gcd(&gcd(&p, &p_bar)?) {
        return Err(Error::Precondition(format!("{p} and its conjugate are not coprime")));
    }
    let zero = LaurentPoly::zero(ring);
    // C_2 = <α> -> C_1 = <t, x_1, .., x_n>, ∂α = t·p.
    let mut row = vec![p.clone()];
    row.extend(std::iter::repeat_n(zero.clone(), n));
    let boundary = ModulePresentation::new(n, n + 1, vec![row])?;
    let quotient_piece = torsion_alexander_poly(&boundary)?.delta;
    // Dual map t* -> p α, x_i* -> 0 gives H^2 = Λ/<p>; conjugate it.
    let mut dual = vec![vec![p.clone()]];
    dual.extend(std::iter::repeat_n(vec![zero], n));
    let coboundary = ModulePresentation::new(n, 1, dual)?;
    let sub_piece = canonical_associate(&torsion_alexander_poly(&coboundary)?.delta.bar());

    let f = canonical_associate(&(&p * &p_bar));
    let presentation = ModulePresentation::new(n, 1, vec![vec![f.clone()]])?;
    let delta = torsion_alexander_poly(&presentation)?.delta;
    let checks = vec![
        RibbonCheck { name: "quotient piece is Λ/<p>", passed: quotient_piece == p },
        RibbonCheck { name: "sub piece is Λ/<p̄>", passed: sub_piece == p_bar },
        RibbonCheck { name: "p divides the generator", passed: divides(&quotient_piece, &f)? },
        RibbonCheck { name: "p̄ divides the generator", passed: divides(&sub_piece, &f)? },
        RibbonCheck {
            name: "p and p̄ coprime, so <p> ∩ <p̄> = <p·p̄>",
            passed: is_trivial_gcd(&gcd(&quotient_piece, &sub_piece)?),
        },
        RibbonCheck { name: "p·p̄ lies in J", passed: divides(&f, &(&quotient_piece * &sub_piece))? },
        RibbonCheck { name: "presentation has Δ = p·p̄", passed: delta == f },
    ];
    let certified = checks.iter().all(|c| c.passed);
    Ok(RibbonReport { p, p_bar, quotient_piece, sub_piece, ideal_generator: f, presentation, checks, certified })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Denominator {
    P,
    PBar,
    Delta,
}

/// `numerator / denominator` in `K/Λ` for the cyclic module `Λ/<p p̄>`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlanchfieldValue {
    pub numerator: LaurentPoly,
    pub denominator: Denominator,
    pub p: LaurentPoly,
}

impl BlanchfieldValue {
    pub fn denominator_poly(&self) -> LaurentPoly {
        match self.denominator {
            Denominator::P => self.p.clone(),
            Denominator::PBar => self.p.bar(),
            Denominator::Delta => &self.p * &self.p.bar(),
        }
    }

    /// Zero in `K/Λ` exactly when the denominator divides the numerator.
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero() || divides(&self.denominator_poly(), &self.numerator).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlanchfieldWitness {
    /// `Bl(e1 + e2, e1 + e2) = (f p̄ + f̄ p) / (p p̄)`.
    pub value: BlanchfieldValue,
    /// `p` does not divide `f p̄ + f̄ p`.
    pub nonzero: bool,
}

/// Self-linking of `e1 + e2` when `Bl(e1, e2) = f/p`, with a certificate
/// that it is nonzero.
pub fn blanchfield_self_link_witness(p: &LaurentPoly, f: &LaurentPoly) -> Result<BlanchfieldWitness> {
    let ring = laurent_ring(p.nvars().max(f.nvars()));
    let p = p.to_ring(ring)?;
    let f = f.to_ring(ring)?;
    if p.is_zero() || f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let v = factor::is_irreducible(&p, Mode::Laurent)?;
    if !v.is_proved() {
        return Err(Error::Precondition(format!("{p} is not certified irreducible ({})", v.reason)));
    }
    if !factor::coprime(&p, &p.bar())? {
        return Err(Error::Precondition(format!("{p} and its conjugate are not coprime")));
    }
    if divides(&p, &f)? {
        return Err(Error::Precondition(format!("{p} divides {f}")));
    }
    let numerator = &(&f * &p.bar()) + &(&f.bar() * &p);
    let nonzero = numerator.is_zero().then_some(false).unwrap_or(!divides(&p, &numerator)?);
    Ok(BlanchfieldWitness { value: BlanchfieldValue { numerator, denominator: Denominator::Delta, p }, nonzero })
}
