use proptest::prelude::*;

use super::*;
use crate::parse::{parse_polynomial, ParseOptions};
use crate::verdict::Status;

fn poly(s: &str) -> LaurentPoly {
    parse_polynomial(s, &ParseOptions::default()).unwrap()
}

fn lpoly(s: &str) -> LaurentPoly {
    parse_polynomial(s, &ParseOptions::laurent()).unwrap()
}

fn factor_strings(f: &Factorization) -> Vec<(String, u32)> {
    f.factors.iter().map(|(g, e)| (g.to_string(), *e)).collect()
}

#[test]
fn univariate_examples() {
    let f = univariate_factor(&poly("x1^2 - 1")).unwrap();
    assert_eq!(factor_strings(&f), vec![("x1 - 1".into(), 1), ("x1 + 1".into(), 1)]);
    let f = univariate_factor(&poly("x1^2 - x1 + 1")).unwrap();
    assert!(f.is_irreducible());
    let f = univariate_factor(&poly("6x1")).unwrap();
    assert_eq!(f.unit.to_string(), "6");
    assert_eq!(factor_strings(&f), vec![("x1".into(), 1)]);
}

#[test]
fn irreducibility_examples() {
    let v = is_irreducible(&poly("1 + x1 - x2"), Mode::Ordinary).unwrap();
    assert_eq!(v.status, Status::Proved);
    assert_eq!(v.rule, Some(Rule::DegreeOne));

    let p = poly("x1^2 - x2^2");
    let v = is_irreducible(&p, Mode::Ordinary).unwrap();
    assert_eq!(v.status, Status::Refuted);
    let Some(Witness::Factorization { factorization, .. }) = &v.witness else { panic!() };
    assert_eq!(factorization.expand(), p);
    assert_eq!(
        factor_strings(factorization),
        vec![("x1 - x2".into(), 1), ("x1 + x2".into(), 1)]
    );

    assert!(matches!(is_irreducible(&lpoly("x1*x2"), Mode::Laurent), Err(Error::UnitInput(_))));
    let v = is_irreducible(&poly("x1*x2"), Mode::Ordinary).unwrap();
    assert_eq!(v.status, Status::Refuted);
}

#[test]
fn laurent_mode_strips_monomial_units() {
    let p = lpoly("x1^-2*x2 + x1^-1");
    let v = is_irreducible(&p, Mode::Laurent).unwrap();
    assert_eq!(v.status, Status::Proved);
    let f = factor(&p, Mode::Laurent).unwrap();
    assert_eq!(f.monomial, Monomial::new(vec![-2, 0]));
    assert_eq!(f.expand(), p);
}

#[test]
fn coprime_examples() {
    let p = lpoly("1 + x1 - x2");
    assert!(coprime(&p, &p.bar()).unwrap());
    assert!(!coprime(&p, &p).unwrap());
    assert!(coprime(&poly("x1 - 1"), &poly("x2 - 1")).unwrap());
    assert!(!coprime(&poly("2x1 + 2"), &poly("4")).unwrap());
}

#[test]
fn multivariate_factorizations() {
    let cases = [
        ("x1^2*x2^2 - 1", vec!["x1*x2 - 1", "x1*x2 + 1"]),
        ("x1^2*x2^2 - x3^2*x4^2", vec!["x1*x2 - x3*x4", "x1*x2 + x3*x4"]),
        ("x1^4 + 4x2^4", vec!["x1^2 - 2*x1*x2 + 2*x2^2", "x1^2 + 2*x1*x2 + 2*x2^2"]),
        ("x1^3*x2^3 + 1", vec!["x1*x2 + 1", "x1^2*x2^2 - x1*x2 + 1"]),
        ("x1^2 - x2^2*x3^2", vec!["x2*x3 - x1", "x2*x3 + x1"]),
    ];
    for (input, want) in cases {
        let p = poly(input);
        let f = factor(&p, Mode::Ordinary).unwrap();
        assert_eq!(f.expand(), p, "{input}");
        let got: Vec<String> = f.factors.iter().map(|(g, _)| g.to_string()).collect();
        assert_eq!(got, want, "{input}");
    }
}

#[test]
fn repeated_and_content_factors() {
    let p = poly("(x1 - x2)^2 * (x1*x2 + 3) * 4 * x1");
    let f = factor(&p, Mode::Ordinary).unwrap();
    assert_eq!(f.expand(), p);
    assert_eq!(f.unit.to_string(), "4");
    assert_eq!(f.count(), 4);
}

#[test]
fn hard_irreducible_needs_recombination_or_specialization() {
    let v = is_irreducible(&poly("x1^4 + x2^4 + x3^4 + 1"), Mode::Ordinary).unwrap();
    assert_eq!(v.status, Status::Proved);
    let v = is_irreducible(&poly("x1^2 + x2^2"), Mode::Ordinary).unwrap();
    assert_eq!(v.status, Status::Proved);
}

#[test]
fn budget_yields_resource_verdict() {
    let tiny = FactorBudget { max_total_degree: 2, ..FactorBudget::default() };
    let v = is_irreducible_with_budget(&poly("(x1^2 + x2 + x3)*(x1 + x2^2 + x3^2 + 1)"), Mode::Ordinary, &tiny).unwrap();
    assert_eq!(v.status, Status::Undecided);
    assert!(v.resource_exhausted);
}

fn small_irreducible() -> impl Strategy<Value = LaurentPoly> {
    // 1 + a x1^i x2^j + b x3^k: irreducible pieces in three variables
    (1i64..=3, 0i32..=2, 0i32..=2, prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)], 1i32..=2)
        .prop_filter("nonconstant first term", |(_, i, j, _, _)| i + j > 0)
        .prop_map(|(a, i, j, b, k)| {
            LaurentPoly::from_int_terms(
                Ring::integer(3),
                &[(1, &[0, 0, 0]), (a, &[i, j, 0]), (b, &[0, 0, k])],
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kronecker_round_trip(a in small_irreducible(), b in small_irreducible()) {
        prop_assume!(is_irreducible(&a, Mode::Ordinary).unwrap().is_proved());
        prop_assume!(is_irreducible(&b, Mode::Ordinary).unwrap().is_proved());
        let p = &a * &b;
        let f = factor(&p, Mode::Ordinary).unwrap();
        prop_assert_eq!(f.expand(), p.clone());
        prop_assert_eq!(f.count(), 2);
        for g in [&a, &b] {
            prop_assert!(f.factors.iter().any(|(h, _)| h == g || &(-h) == g));
        }
    }

    #[test]
    fn gcd_quotients_are_exact(a in small_irreducible(), b in small_irreducible(), c in small_irreducible()) {
        let x = &a * &c;
        let y = &b * &c;
        let g = gcd(&x, &y).unwrap();
        prop_assert!(div_exact(&x, &g).unwrap().is_some());
        prop_assert!(div_exact(&y, &g).unwrap().is_some());
    }
}
