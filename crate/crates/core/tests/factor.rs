use strongpoly_core::factor::{factor, is_irreducible, Mode};
use strongpoly_core::parse::{parse_polynomial, ParseOptions};
use strongpoly_core::verdict::Status;
use strongpoly_core::LaurentPoly;

fn poly(s: &str) -> LaurentPoly {
    parse_polynomial(&s.replace("**", "^"), &ParseOptions { nvars: Some(4), ..Default::default() })
        .unwrap()
}

fn normalized(p: &LaurentPoly) -> String {
    let q = if p.leading_coeff() < num_rational::BigRational::from_integer(0.into()) { -p } else { p.clone() };
    q.to_string()
}

// Factor lists produced by an independent computer algebra system.
const REFERENCE: &[(&str, &[&str])] = &[
    ("x1**6*x2**6 - 1", &["x1*x2 - 1", "x1*x2 + 1", "x1**2*x2**2 - x1*x2 + 1", "x1**2*x2**2 + x1*x2 + 1"]),
    ("(x1*x2)**4 - x3**4", &["x1*x2 - x3", "x1*x2 + x3", "x1**2*x2**2 + x3**2"]),
    ("x1**4*x2**4 + 4", &["x1**2*x2**2 - 2*x1*x2 + 2", "x1**2*x2**2 + 2*x1*x2 + 2"]),
    ("1 - x1**3*x2**3*x3**3", &["x1*x2*x3 - 1", "x1**2*x2**2*x3**2 + x1*x2*x3 + 1"]),
    ("x1**4 - x2**2", &["x1**2 - x2", "x1**2 + x2"]),
    ("x1**6 + x2**6*x3**6", &["x1**2 + x2**2*x3**2", "x1**4 - x1**2*x2**2*x3**2 + x2**4*x3**4"]),
    ("x1**4*x2**2 - x3**2*x4**4", &["x1**2*x2 - x3*x4**2", "x1**2*x2 + x3*x4**2"]),
    ("(1+x1-x2)*(1-x1**2+x2*x3)*(2*x1+3)", &["2*x1 + 3", "x1 - x2 + 1", "x1**2 - x2*x3 - 1"]),
];

#[test]
fn matches_reference_factorizations() {
    for (input, want) in REFERENCE {
        let p = poly(input);
        let f = factor(&p, Mode::Ordinary).unwrap();
        assert_eq!(f.expand(), p, "{input}");
        let mut got: Vec<String> = f.factors.iter().map(|(g, _)| normalized(g)).collect();
        let mut want: Vec<String> = want.iter().map(|w| normalized(&poly(w))).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want, "{input}");
        assert!(f.factors.iter().all(|(_, e)| *e == 1));
        assert_eq!(is_irreducible(&p, Mode::Ordinary).unwrap().status, Status::Refuted);
        for (g, _) in &f.factors {
            assert_eq!(is_irreducible(g, Mode::Ordinary).unwrap().status, Status::Proved, "{g}");
        }
    }
}
