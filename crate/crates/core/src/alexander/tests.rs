use super::*;
use crate::parse::{parse_polynomial, ParseOptions};
use crate::ring::Monomial;

fn poly(s: &str, n: usize) -> LaurentPoly {
    parse_polynomial(s, &ParseOptions { nvars: Some(n), ..ParseOptions::laurent() }).unwrap()
}

fn render(p: &LaurentPoly) -> String {
    p.render(&style_for(p.ring()))
}

#[test]
fn elementary_ideals_of_small_matrices() {
    let p = poly("1 + x1 - x2", 2);
    let q = poly("x1 + 3", 2);
    let m = ModulePresentation::from_rows(2, vec![vec![p.clone()]]).unwrap();
    assert_eq!(elementary_ideal(&m, 0).generators, [p.clone()]);
    let z = LaurentPoly::zero(laurent_ring(2));
    let d = ModulePresentation::from_rows(2, vec![vec![p.clone(), z.clone()], vec![z.clone(), q.clone()]]).unwrap();
    assert_eq!(elementary_ideal(&d, 0).generators, [canonical_associate(&(&p * &q))]);
    assert_eq!(elementary_ideal(&d, 1).generators, [q.clone(), p.clone()]);
    assert!(elementary_ideal(&d, 2).is_unit());
    let wide = ModulePresentation::from_rows(2, vec![vec![p.clone(), q.clone(), z.clone()]; 2]).unwrap();
    assert!(elementary_ideal(&wide, 0).is_zero());
}

#[test]
fn hulls() {
    let p = poly("1 + x1 - x2", 2);
    let ideal = |gens: Vec<LaurentPoly>| LaurentIdeal { ring: laurent_ring(2), generators: gens };
    assert_eq!(divisorial_hull(&ideal(vec![p.clone()])).unwrap(), p);
    let h = divisorial_hull(&ideal(vec![poly("x1 - 1", 2), poly("x2 - 1", 2)])).unwrap();
    assert!(h.is_one());
    let a = &p * &poly("x1 + 2", 2);
    let b = &p * &poly("x2^-1 - 5", 2);
    assert_eq!(divisorial_hull(&ideal(vec![a, b])).unwrap(), p);
    assert!(divisorial_hull(&ideal(vec![])).unwrap().is_zero());
}

#[test]
fn torsion_polynomials() {
    let p = poly("t^2 - t + 1", 1);
    let m = ModulePresentation::from_rows(1, vec![vec![p.clone()]]).unwrap();
    assert_eq!(torsion_alexander_poly(&m).unwrap().delta, p);
    let free = ModulePresentation::new(1, 1, vec![]).unwrap();
    let t = torsion_alexander_poly(&free).unwrap();
    assert!(t.delta.is_one());
    assert_eq!(t.free_rank, 1);
}

#[test]
fn fox_derivatives_by_hand() {
    let ring = laurent_ring(2);
    let ids = [Monomial::var(2, 0), Monomial::var(2, 1)];
    let x = parse_word("x1").unwrap();
    assert!(fox_derivative(&x, 0, &ids, ring).unwrap().is_one());
    let xi = parse_word("x1^-1").unwrap();
    assert_eq!(fox_derivative(&xi, 0, &ids, ring).unwrap(), poly("-x1^-1", 2));
    let w = parse_word("x1 x2 x1^-1").unwrap();
    assert_eq!(fox_derivative(&w, 0, &ids, ring).unwrap(), poly("1 - x2", 2));
    let knot = [Monomial::var(1, 0), Monomial::var(1, 0)];
    assert_eq!(render(&fox_derivative(&w, 0, &knot, laurent_ring(1)).unwrap()), "-t + 1");
    assert!(parse_word("x1 y2").is_err());
}

#[test]
fn braid_goldens() {
    let trefoil = braid_alexander(&parse_braid("s1 s1 s1", 2).unwrap(), true).unwrap();
    assert_eq!(render(&trefoil.delta), "t^2 - t + 1");
    let eight = braid_alexander(&parse_braid("s1 s2^-1 s1 s2^-1", 3).unwrap(), true).unwrap();
    assert_eq!(render(&eight.delta), "t^2 - 3*t + 1");
    let unknot = braid_alexander(&parse_braid("", 1).unwrap(), true).unwrap();
    assert!(unknot.delta.is_one());
    let unlink = braid_alexander(&parse_braid("", 2).unwrap(), false).unwrap();
    assert!(unlink.delta.is_one());
    assert_eq!(unlink.free_rank, 1);
    assert_eq!(unlink.components, 2);
    let Err(Error::Parse(e)) = parse_braid("s1 s3", 3) else { panic!() };
    assert_eq!(e.column, 5);
}

#[test]
fn ribbon_certificate() {
    let p = poly("1 + x1 - x2", 2);
    let r = verify_ribbon_presentation(&p).unwrap();
    assert!(r.certified, "{:?}", r.checks);
    let t = torsion_alexander_poly(&r.presentation).unwrap();
    assert_eq!(t.delta, canonical_associate(&(&p * &p.bar())));
    let one = verify_ribbon_presentation(&LaurentPoly::one(laurent_ring(2))).unwrap();
    assert!(one.ideal_generator.is_one());
    let sym = poly("x1 + x1^-1 + 1", 1);
    assert!(matches!(verify_ribbon_presentation(&sym), Err(Error::Precondition(_))));
}

#[test]
fn blanchfield_witnesses() {
    let p = poly("1 + x1 - x2", 2);
    for f in ["1", "x1", "1 + x1"] {
        let w = blanchfield_self_link_witness(&p, &poly(f, 2)).unwrap();
        assert!(w.nonzero, "{f}");
        assert!(!w.value.is_zero());
    }
    let g = &p * &poly("x2 + 7", 2);
    assert!(matches!(blanchfield_self_link_witness(&p, &g), Err(Error::Precondition(_))));
}
