use num_rational::BigRational;
use proptest::prelude::*;
use strongpoly_core::alexander::{
    braid_alexander, divisorial_hull, elementary_ideal, laurent_ring, torsion_alexander_poly, Braid,
    ModulePresentation,
};
use strongpoly_core::groebner::{buchberger, ideal_member, IdealBasis};
use strongpoly_core::ring::canonical_associate;
use strongpoly_core::{LaurentPoly, Monomial, Ring};

fn small_entry(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i64..=2, prop::collection::vec(0i32..=1, nvars)), 0..3).prop_map(move |terms| {
        LaurentPoly::from_terms(
            laurent_ring(nvars),
            terms.into_iter().map(|(c, e)| (Monomial::new(e), BigRational::from_integer(c.into()))),
        )
        .unwrap()
    })
}

fn matrix(rows: usize, cols: usize, nvars: usize) -> impl Strategy<Value = Vec<Vec<LaurentPoly>>> {
    prop::collection::vec(prop::collection::vec(small_entry(nvars), cols), rows)
}

/// `f` lies in the Laurent extension of the ideal generated by `gens`:
/// saturate by the product of the variables with an extra variable `y`.
fn laurent_member(f: &LaurentPoly, gens: &[LaurentPoly]) -> bool {
    let n = f.nvars();
    let ring = Ring::rational(n + 1);
    let lift = |p: &LaurentPoly| {
        let (q, _) = p.laurent_normalize().unwrap();
        q.to_ring(Ring::rational(n)).unwrap().with_nvars(n + 1).unwrap()
    };
    let mut all: Vec<LaurentPoly> = gens.iter().map(lift).collect();
    let one = BigRational::from_integer(1.into());
    let sat = LaurentPoly::from_terms(ring, [(Monomial::one(n + 1), one.clone()), (Monomial::new(vec![1; n + 1]), -one)])
        .unwrap();
    all.push(sat);
    let gb = buchberger(&IdealBasis::new(n + 1, all).unwrap()).unwrap();
    ideal_member(&lift(f), &gb).unwrap()
}

fn delta(rows: &[Vec<LaurentPoly>], cols: usize, nvars: usize) -> LaurentPoly {
    let m = ModulePresentation::new(nvars, cols, rows.to_vec()).unwrap();
    torsion_alexander_poly(&m).unwrap().delta
}

fn add_multiple(rows: &mut [Vec<LaurentPoly>], from: usize, to: usize, c: &LaurentPoly) {
    let src = rows[from].clone();
    for (a, b) in rows[to].iter_mut().zip(&src) {
        *a = &*a + &(c * b);
    }
}

fn knot_braids() -> Vec<Braid> {
    let mut out = Vec::new();
    for strands in 2..=4usize {
        for len in 1..=6usize {
            for code in 0..(2 * (strands - 1)).pow(len as u32) {
                let mut c = code;
                let letters: Vec<(usize, i32)> = (0..len)
                    .map(|_| {
                        let d = c % (2 * (strands - 1));
                        c /= 2 * (strands - 1);
                        (d / 2 + 1, if d % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                let b = Braid { strands, letters };
                if b.components().iter().all(|&x| x == 0) {
                    out.push(b);
                }
                if out.len() >= 120 {
                    return out;
                }
            }
        }
    }
    out
}

#[test]
fn knots_satisfy_the_classical_symmetries() {
    let braids = knot_braids();
    assert!(braids.len() >= 50);
    for b in braids {
        let d = braid_alexander(&b, true).unwrap().delta;
        let at_one = d.eval_at_ones();
        assert!(at_one == BigRational::from_integer(1.into()) || at_one == BigRational::from_integer((-1).into()), "{b:?}: {d}");
        assert_eq!(canonical_associate(&d.bar()), d, "{b:?}");
    }
}

#[test]
fn two_component_torus_links() {
    let hopf = braid_alexander(&Braid { strands: 2, letters: vec![(1, 1), (1, 1)] }, false).unwrap();
    assert_eq!(hopf.components, 2);
    assert!(hopf.delta.is_one());
    // The (2,4) torus link has Δ = 1 + x1 x2 up to units.
    let t24 = braid_alexander(&Braid { strands: 2, letters: vec![(1, 1); 4] }, false).unwrap();
    assert_eq!(t24.delta.to_string(), "x1*x2 + 1");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, .. ProptestConfig::default() })]

    #[test]
    fn elementary_ideals_nest(m in matrix(2, 3, 2)) {
        let pres = ModulePresentation::new(2, 3, m).unwrap();
        for k in 0..3 {
            let small = elementary_ideal(&pres, k);
            let big = elementary_ideal(&pres, k + 1);
            for g in &small.generators {
                prop_assert!(laurent_member(g, &big.generators), "E_{} generator {} not in E_{}", k, g, k + 1);
            }
        }
    }

    #[test]
    fn torsion_invariant_under_moves(m in matrix(2, 2, 1), c in small_entry(1), swap in any::<bool>()) {
        let base = delta(&m, 2, 1);
        let mut rows = m.clone();
        add_multiple(&mut rows, 0, 1, &c);
        if swap {
            rows.swap(0, 1);
        }
        prop_assert_eq!(delta(&rows, 2, 1), base.clone());
        // column operation: col1 += c * col0
        let cols: Vec<Vec<LaurentPoly>> = m.iter().map(|r| vec![r[0].clone(), &r[1] + &(&c * &r[0])]).collect();
        prop_assert_eq!(delta(&cols, 2, 1), base.clone());
        // stabilization by a diagonal 1
        let ring = laurent_ring(1);
        let mut stab: Vec<Vec<LaurentPoly>> =
            m.iter().map(|r| { let mut r = r.clone(); r.push(LaurentPoly::zero(ring)); r }).collect();
        stab.push(vec![LaurentPoly::zero(ring), LaurentPoly::zero(ring), LaurentPoly::one(ring)]);
        prop_assert_eq!(delta(&stab, 3, 1), base);
    }

    #[test]
    fn hull_divides_every_generator(m in matrix(2, 2, 2)) {
        let pres = ModulePresentation::new(2, 2, m).unwrap();
        let e = elementary_ideal(&pres, 0);
        let h = divisorial_hull(&e).unwrap();
        for g in &e.generators {
            prop_assert!(strongpoly_core::ring::divides(&h, g).unwrap());
        }
    }
}
