//! Free-group words, Fox derivatives and braid closures.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{laurent_ring, torsion_alexander_poly, ModulePresentation, TorsionAlexander};
use crate::error::{Error, ParseError, Result};
use crate::ring::{LaurentPoly, Monomial, Ring};

/// Freely reduced word; letters are `(generator index, ±1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<(usize, i32)>);

impl FreeWord {
    pub fn new(letters: impl IntoIterator<Item = (usize, i32)>) -> Self {
        let mut w = FreeWord::default();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.0
    }

    fn push(&mut self, (g, e): (usize, i32)) {
        if self.0.last() == Some(&(g, -e)) {
            self.0.pop();
        } else {
            self.0.push((g, e));
        }
    }

    pub fn generator(g: usize) -> Self {
        FreeWord(vec![(g, 1)])
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    /// Replaces every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut w = FreeWord::default();
        for &(g, e) in &self.0 {
            let img = if e > 0 { images[g].clone() } else { images[g].inverse() };
            for &l in &img.0 {
                w.push(l);
            }
        }
        w
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&(g, _)| g).max()
    }
}

fn perr(column: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError { line: 1, column, message: message.into() })
}

/// Splits on whitespace and `*`, reporting 1-based columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        let sep = ch.is_whitespace() || ch == '*';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter().map(|(s, t)| (text[..s].chars().count() + 1, t)).collect()
}

/// `name N [^ [-] INT]`; returns `(N, exponent)`.
fn letter(col: usize, tok: &str, prefix: char) -> Result<(usize, i32)> {
    let body = tok
        .strip_prefix(prefix)
        .ok_or_else(|| perr(col, format!("expected '{prefix}<index>', found {tok:?}")))?;
    let (idx, exp) = match body.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (body, None),
    };
    if idx.is_empty() || !idx.chars().all(|c| c.is_ascii_digit()) {
        return Err(perr(col + 1, format!("expected an index after '{prefix}'")));
    }
    let n: usize = idx.parse().map_err(|_| perr(col + 1, "index out of range"))?;
    let e: i32 = match exp {
        None => 1,
        Some(e) => e
            .parse()
            .map_err(|_| perr(col + 2 + idx.len(), format!("malformed exponent {e:?}")))?,
    };
    Ok((n, e))
}

/// Parses `x1 x2^-1 x1` (generators `x1 ..` are indices `0 ..`).
pub fn parse_word(text: &str) -> Result<FreeWord> {
    let mut w = FreeWord::default();
    for (col, tok) in tokens(text) {
        let (n, e) = letter(col, tok, 'x')?;
        if n == 0 {
            return Err(perr(col + 1, "generators are numbered from 1"));
        }
        for _ in 0..e.unsigned_abs() {
            w.push((n - 1, e.signum()));
        }
    }
    Ok(w)
}

/// Fox derivative `d word / d x_gen`, pushed to the group ring through
/// `images` (the abelianization of each generator).
pub fn fox_derivative(word: &FreeWord, gen: usize, images: &[Monomial], ring: Ring) -> Result<LaurentPoly> {
    if let Some(g) = word.max_generator().filter(|&g| g >= images.len()) {
        return Err(Error::InvalidArgument(format!("word uses x{} but only {} images were given", g + 1, images.len())));
    }
    let mut prefix = Monomial::one(ring.nvars);
    let mut out = LaurentPoly::zero(ring);
    for &(g, e) in word.letters() {
        if e > 0 {
            if g == gen {
                out = &out + &LaurentPoly::monomial(ring, prefix.clone(), num_traits::One::one())?;
            }
            prefix = prefix.mul(&images[g]);
        } else {
            prefix = prefix.mul(&images[g].inverse());
            if g == gen {
                out = &out - &LaurentPoly::monomial(ring, prefix.clone(), num_traits::One::one())?;
            }
        }
    }
    Ok(out)
}

/// Braid word on `strands` strands; letters are `(i, ±1)` for `σ_i^{±1}`,
/// `1 <= i < strands`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Braid {
    pub strands: usize,
    pub letters: Vec<(usize, i32)>,
}

/// Parses `s1 s1 s1`, `s1^-1 s2` or `s2^3` on the given number of strands.
pub fn parse_braid(text: &str, strands: usize) -> Result<Braid> {
    if strands == 0 {
        return Err(Error::InvalidArgument("a braid needs at least one strand".into()));
    }
    let mut letters = Vec::new();
    for (col, tok) in tokens(text) {
        let (i, e) = letter(col, tok, 's')?;
        if i == 0 || i >= strands {
            return Err(perr(col + 1, format!("generator s{i} needs 1 <= i < {strands}")));
        }
        if e == 0 {
            return Err(perr(col, "zero exponent"));
        }
        letters.extend(std::iter::repeat_n((i, e.signum()), e.unsigned_abs() as usize));
    }
    Ok(Braid { strands, letters })
}

impl Braid {
    /// Component label of each strand: components numbered by their
    /// smallest strand.
    pub fn components(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &(i, _) in &self.letters {
            perm.swap(i - 1, i);
        }
        let mut label = vec![usize::MAX; self.strands];
        let mut next = 0;
        for s in 0..self.strands {
            if label[s] != usize::MAX {
                continue;
            }
            let mut j = s;
            while label[j] == usize::MAX {
                label[j] = next;
                j = perm[j];
            }
            next += 1;
        }
        label
    }

    /// Images of the free generators under the Artin action of the braid.
    pub fn artin_images(&self) -> Vec<FreeWord> {
        let mut images: Vec<FreeWord> = (0..self.strands).map(FreeWord::generator).collect();
        for &(i, e) in &self.letters {
            let (a, b) = (i - 1, i);
            let (xa, xb) = (FreeWord::generator(a), FreeWord::generator(b));
            let mut sigma: Vec<FreeWord> = (0..self.strands).map(FreeWord::generator).collect();
            if e > 0 {
                sigma[a] = xa.concat(&xb).concat(&xa.inverse());
                sigma[b] = xa;
            } else {
                sigma[a] = xb.clone();
                sigma[b] = xb.inverse().concat(&xa).concat(&xb);
            }
            images = images.iter().map(|w| w.substitute(&sigma)).collect();
        }
        images
    }
}

/// Fox-calculus presentation of the Alexander module of the closure: the
/// Jacobian of `β(x_i) x_i^{-1}` with the last relation dropped. With
/// `single_variable` every meridian maps to `t`; otherwise strand `i` maps to
/// the variable of its component.
pub fn braid_to_presentation(braid: &Braid, single_variable: bool) -> Result<ModulePresentation> {
    let comps = braid.components();
    let ncomp = comps.iter().copied().collect::<BTreeSet<_>>().len();
    let nvars = if single_variable { 1 } else { ncomp };
    let ring = laurent_ring(nvars);
    let images: Vec<Monomial> =
        comps.iter().map(|&c| Monomial::var(nvars, if single_variable { 0 } else { c })).collect();
    let beta = braid.artin_images();
    let s = braid.strands;
    let matrix = (0..s - 1)
        .map(|i| {
            let rel = beta[i].concat(&FreeWord::generator(i).inverse());
            (0..s).map(|j| fox_derivative(&rel, j, &images, ring)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ModulePresentation::new(nvars, s, matrix)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BraidAlexander {
    pub presentation: ModulePresentation,
    pub components: usize,
    pub delta: LaurentPoly,
    /// Free rank of the link module: the presentation's free rank less the
    /// one free summand contributed by the base point.
    pub free_rank: usize,
}

/// Torsion Alexander polynomial of a braid closure.
pub fn braid_alexander(braid: &Braid, single_variable: bool) -> Result<BraidAlexander> {
    let presentation = braid_to_presentation(braid, single_variable)?;
    let TorsionAlexander { delta, free_rank, .. } = torsion_alexander_poly(&presentation)?;
    let components = braid.components().into_iter().max().map_or(0, |c| c + 1);
    Ok(BraidAlexander { presentation, components, delta, free_rank: free_rank.saturating_sub(1) })
}
