use super::*;
use crate::parse::{parse_polynomial, ParseOptions};
use crate::verdict::Status;

fn poly(s: &str) -> LaurentPoly {
    parse_polynomial(s, &ParseOptions::laurent()).unwrap()
}

fn homog(s: &str) -> HomogPoly {
    HomogPoly::new(parse_polynomial(s, &ParseOptions::default()).unwrap()).unwrap()
}

fn gens(s: &str) -> Vec<String> {
    criterion_system(&homog(s)).unwrap().generators().iter().map(|g| g.to_string()).collect()
}

#[test]
fn criterion_system_by_hand() {
    assert_eq!(gens("z0 + z1 - z2"), ["x1", "x2", "-x3"]);
    assert_eq!(gens("z1*z2 - z0^2"), ["-2*x1^2", "x2*x3", "x2*x3"]);
    assert_eq!(gens("z0^3"), ["3*x1^3"]);
    let c = HomogPoly::new(LaurentPoly::from_int(Ring::integer(2), 5)).unwrap();
    assert_eq!(criterion_system(&c), Err(Error::ConstantInput));
}

#[test]
fn pure_power_fails_criterion() {
    let p = homog("z0^2 + 0*z1 + 0*z2");
    assert!(!criterion_holds(&p, &GbBudget::default()).unwrap());
}

#[test]
fn family_member_is_proved() {
    let v = check_strongly_irreducible(&poly("1 + x1 - x2 + x3 - x4")).unwrap();
    assert_eq!(v.status, Status::Proved);
    assert_eq!(v.rule, Some(Rule::Criterion));
}

#[test]
fn xy_minus_one_refuted_at_two() {
    let p = poly("x1*x2 - 1");
    let v = check_strongly_irreducible(&p).unwrap();
    assert_eq!(v.status, Status::Refuted);
    let Some(Witness::Factorization { substitution, factorization, .. }) = &v.witness else { panic!() };
    assert_eq!(substitution.as_deref(), Some(&[2i64, 2][..]));
    let fs: Vec<String> = factorization.factors.iter().map(|(g, _)| g.to_string()).collect();
    assert_eq!(fs, ["x1*x2 - 1", "x1*x2 + 1"]);
    assert!(verify_refutation(&p, &v));
}

#[test]
fn units_are_rejected() {
    assert!(matches!(check_strongly_irreducible(&poly("x1")), Err(Error::UnitInput(_))));
    assert!(matches!(check_strongly_irreducible(&poly("-x1^-2*x2")), Err(Error::UnitInput(_))));
    assert_eq!(check_strongly_irreducible(&poly("0")), Err(Error::ZeroPolynomial));
}

#[test]
fn univariate_binomials() {
    // x - 2: 2 is not a perfect power and not -4 d^4.
    let v = check_strongly_irreducible(&poly("x1 - 2")).unwrap();
    assert_eq!(v.rule, Some(Rule::Binomial));
    // x - 1 -> x^2 - 1; x + 1 -> x^3 + 1; x + 4 -> x^4 + 4; x - 8 -> x^3 - 8.
    for (s, t) in [("x1 - 1", 2), ("x1 + 1", 3), ("x1 + 4", 4), ("x1 - 8", 3), ("9*x1 - 4", 2)] {
        let p = poly(s);
        let v = check_strongly_irreducible(&p).unwrap();
        assert_eq!(v.status, Status::Refuted, "{s}");
        let Some(Witness::Factorization { substitution, .. }) = &v.witness else { panic!() };
        assert_eq!(substitution.as_deref(), Some(&[t][..]), "{s}");
        assert!(verify_refutation(&p, &v));
    }
    // Higher degree univariate inputs are never proved.
    let v = check_strongly_irreducible(&poly("x1^2 + x1 + 3")).unwrap();
    assert_ne!(v.status, Status::Proved);
}

#[test]
fn unused_variables_do_not_block_the_criterion() {
    let p = parse_polynomial("1 + x1 - x3", &ParseOptions { nvars: Some(4), ..ParseOptions::laurent() }).unwrap();
    assert!(check_strongly_irreducible(&p).unwrap().is_proved());
}

#[test]
fn coprimality_rules() {
    let p = poly("1 + x1 - x2 + x3 - x4");
    let q = parse_polynomial("x1^2 + x2*x3 - 5", &ParseOptions { nvars: Some(4), ..ParseOptions::laurent() }).unwrap();
    let v = check_strongly_coprime(&p, &q).unwrap();
    assert_eq!(v.rule, Some(Rule::FewerVariables));
    let v = check_strongly_coprime(&q, &p).unwrap();
    assert_eq!(v.rule, Some(Rule::FewerVariables));

    let v = check_strongly_coprime(&p, &p).unwrap();
    assert_eq!(v.status, Status::Refuted);

    let a = poly("1 + x1 - x2");
    let b = poly("1 + x2 - x1");
    let v = check_strongly_coprime(&a, &b).unwrap();
    assert_eq!(v.status, Status::Refuted);
    let Some(Witness::CommonFactor { p_image, q_image, gcd: g, .. }) = &v.witness else { panic!() };
    assert!(crate::ring::divides(g, p_image).unwrap() && crate::ring::divides(g, q_image).unwrap());
}

#[test]
fn shared_integer_content_blocks_the_rule() {
    let p = poly("2 + 2*x1 - 2*x2");
    let q = poly("2");
    let v = check_strongly_coprime(&p.with_nvars(2).unwrap(), &q.with_nvars(2).unwrap()).unwrap();
    assert_eq!(v.status, Status::Refuted);
}

#[test]
fn vector_semantics() {
    let p = poly("1 + x1 - x2 + x3 - x4");
    let q = parse_polynomial("1 + x1 - x2 + x3", &ParseOptions { nvars: Some(4), ..ParseOptions::laurent() }).unwrap();
    let r = poly("x1*x2*x3*x4 - 1");
    let pv = PolyVector::new(vec![p.clone(), r.clone()]).unwrap();
    let qv = PolyVector::new(vec![q.clone(), r.clone()]).unwrap();
    let v = check_vector_coprime(&pv, &qv).unwrap();
    assert_eq!(v.status, Status::Proved);
    assert_eq!(v.rule, Some(Rule::Component));
    let v = check_vector_coprime(&pv, &pv).unwrap();
    assert_eq!(v.status, Status::Refuted);
    let short = PolyVector::new(vec![p]).unwrap();
    assert!(matches!(check_vector_coprime(&short, &pv), Err(Error::DimensionMismatch(_))));
    assert!(PolyVector::new(vec![]).is_err());
}

#[test]
fn genericity_bounds_and_determinism() {
    assert!(genericity_sample(3, 2, 0, 100, 1).is_err());
    assert!(genericity_sample(2, 2, 10, 100, 1).is_err());
    let a = genericity_sample(3, 1, 40, 100, 7).unwrap();
    assert!(a.pass_rate > 0.9);
    let b = genericity_sample(3, 1, 40, 100, 7).unwrap();
    assert_eq!(a, b);
}
