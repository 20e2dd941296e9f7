//! Module presentations over `Z[x1^±1, .., xn^±1]`: elementary ideals,
//! divisorial hulls, torsion Alexander polynomials, Fox calculus for braid
//! closures, and the cyclic-module checks used for ribbon links.

mod fox;
mod ribbon;

pub use fox::{braid_alexander, braid_to_presentation, fox_derivative, parse_braid, parse_word, Braid, BraidAlexander, FreeWord};
pub use ribbon::{
    blanchfield_self_link_witness, verify_ribbon_presentation, BlanchfieldValue, BlanchfieldWitness, Denominator,
    RibbonReport,
};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::{parse_polynomial, ParseOptions};
use crate::ring::{canonical_associate, div_exact, gcd, Domain, LaurentPoly, Ring, VarStyle};

/// Relations-by-generators matrix presenting `R^rows -> R^cols -> M -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    ring: Ring,
    cols: usize,
    matrix: Vec<Vec<LaurentPoly>>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    vars: usize,
    matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<usize>,
}

pub fn laurent_ring(nvars: usize) -> Ring {
    Ring { domain: Domain::Integer, nvars, laurent: true }
}

/// Spelling used for reports: a lone variable is `t`.
pub fn style_for(ring: Ring) -> VarStyle {
    if ring.nvars == 1 {
        VarStyle::Named(vec!["t".into()])
    } else {
        VarStyle::X
    }
}

impl ModulePresentation {
    /// `cols` is needed only when there are no rows.
    pub fn new(nvars: usize, cols: usize, matrix: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let ring = laurent_ring(nvars.max(1));
        if let Some(r) = matrix.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a matrix with {cols} columns", r.len())));
        }
        let matrix = matrix
            .into_iter()
            .map(|row| row.iter().map(|e| e.to_ring(ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(ModulePresentation { ring, cols, matrix })
    }

    pub fn from_rows(nvars: usize, matrix: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
        Self::new(nvars, cols, matrix)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: PresentationJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("presentation JSON: {e}")))?;
        let opts = ParseOptions { laurent: true, nvars: Some(j.vars.max(1)), rational: false };
        let matrix = j
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| parse_polynomial(e, &opts)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if let Some(p) = matrix.iter().flatten().find(|p| p.nvars() != j.vars.max(1)) {
            return Err(Error::Arity { expected: j.vars, found: p.nvars() });
        }
        let cols = match (j.generators, matrix.first()) {
            (Some(g), _) => g,
            (None, Some(r)) => r.len(),
            (None, None) => return Err(Error::InvalidArgument("empty matrix needs \"generators\"".into())),
        };
        Self::new(j.vars, cols, matrix)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let style = style_for(self.ring);
        let j = PresentationJson {
            vars: self.ring.nvars,
            matrix: self.matrix.iter().map(|r| r.iter().map(|e| e.render(&style)).collect()).collect(),
            generators: self.matrix.is_empty().then_some(self.cols),
        };
        serde_json::to_value(j).expect("plain data")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matrix(&self) -> &[Vec<LaurentPoly>] {
        &self.matrix
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        echelon_rank(self.matrix.clone())
    }
}

impl Serialize for ModulePresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn exact(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    div_exact(a, b).expect("same ring").expect("fraction-free elimination divides exactly")
}

/// Index of the nonzero entry with fewest terms in column `c` at or below `from`.
fn pivot_row(m: &[Vec<LaurentPoly>], c: usize, from: usize) -> Option<usize> {
    (from..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| (m[i][c].nterms(), i))
}

/// Determinant by fraction-free elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<LaurentPoly>>, ring: Ring) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(ring);
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one(ring);
    for k in 0..n - 1 {
        let Some(p) = pivot_row(&m, k, k) else { return LaurentPoly::zero(ring) };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = exact(&v, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn echelon_rank(mut m: Vec<Vec<LaurentPoly>>) -> usize {
    let Some(cols) = m.first().map(|r| r.len()) else { return 0 };
    let ring = m[0].first().map(|e| e.ring()).unwrap_or(laurent_ring(1));
    let mut r = 0;
    let mut prev = LaurentPoly::one(ring);
    for c in 0..cols {
        let Some(p) = pivot_row(&m, c, r) else { continue };
        m.swap(p, r);
        for i in r + 1..m.len() {
            for j in c + 1..cols {
                let v = &(&m[i][j] * &m[r][c]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = exact(&v, &prev);
            }
            m[i][c] = LaurentPoly::zero(ring);
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Ideal of a Laurent polynomial ring by generators; no generators is the
/// zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentIdeal {
    #[serde(skip)]
    pub ring: Ring,
    pub generators: Vec<LaurentPoly>,
}

impl LaurentIdeal {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_unit())
    }
}

/// `E_k(M)`: the ideal of `(cols - k)`-minors. Unit ideal when `cols - k <= 0`,
/// zero ideal when `cols - k` exceeds the number of rows.
pub fn elementary_ideal(m: &ModulePresentation, k: usize) -> LaurentIdeal {
    let ring = m.ring;
    if k >= m.cols {
        return LaurentIdeal { ring, generators: vec![LaurentPoly::one(ring)] };
    }
    let d = m.cols - k;
    let mut gens: Vec<LaurentPoly> = Vec::new();
    if d <= m.rows() {
        for rows in (0..m.rows()).combinations(d) {
            for cols in (0..m.cols).combinations(d) {
                let sub = rows.iter().map(|&i| cols.iter().map(|&j| m.matrix[i][j].clone()).collect()).collect();
                let det = bareiss_determinant(sub, ring);
                if det.is_zero() {
                    continue;
                }
                let det = canonical_associate(&det);
                if !gens.contains(&det) {
                    gens.push(det);
                }
            }
        }
    }
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.terms().cmp(b.terms())));
    LaurentIdeal { ring, generators: gens }
}

/// Generator of the smallest principal ideal containing `ideal`: the gcd of
/// its generators as a canonical associate (integer content kept). The zero
/// ideal gives `0`.
pub fn divisorial_hull(ideal: &LaurentIdeal) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero(ideal.ring);
    for g in &ideal.generators {
        acc = gcd(&acc, g)?;
        if acc.is_one() {
            break;
        }
    }
    Ok(canonical_associate(&acc))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsionAlexander {
    /// Generator of the divisorial hull of `E_r`.
    pub delta: LaurentPoly,
    /// `r = cols - rank`.
    pub free_rank: usize,
    pub rank: usize,
}

/// `hull(E_r(M))` with `r` the rank of the free part of `M`.
pub fn torsion_alexander_poly(m: &ModulePresentation) -> Result<TorsionAlexander> {
    let rank = m.rank();
    let free_rank = m.cols - rank;
    let delta = divisorial_hull(&elementary_ideal(m, free_rank))?;
    Ok(TorsionAlexander { delta, free_rank, rank })
}

#[cfg(test)]
mod tests;
