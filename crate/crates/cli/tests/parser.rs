use proptest::prelude::*;
use symtangent::algebra::Monomial;
use symtangent::atlas::{w1_ring, w1_vector_field, Center};
use symtangent::sections::{paper_thetas, PaperCase};
use symtangent::{int, rat, Chart, FnPoint, LaurentPoly, SymTensorField};
use symtangent_cli::parse::{parse_centers, parse_field, parse_field_any, parse_point, parse_points, ParseError};

fn poly(terms: &[(i32, i32, i64, i64)]) -> LaurentPoly {
    let r = w1_ring();
    LaurentPoly::from_terms(&r, terms.iter().map(|&(i, j, a, b)| (Monomial::new(vec![i, j]), rat(a, b))))
}

fn syntax_pos(e: ParseError) -> usize {
    match e {
        ParseError::Syntax { pos, .. } => pos,
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn theta_one_of_the_fn_m1_case() {
    let parsed = parse_field("y*(y-1)*dy", 1).unwrap();
    let (_, theta1) = paper_thetas(PaperCase::FnM1, 2).unwrap().remove(0);
    assert_eq!(parsed.field, theta1);
    assert_eq!(parsed.source, "y*(y-1)*dy");
}

#[test]
fn unit_second_power() {
    let f = parse_field("dx^2", 2).unwrap().field;
    assert_eq!(f.degree(), 2);
    assert_eq!(f.coefficient(2), &LaurentPoly::one(&w1_ring()));
    assert!(f.coefficient(1).is_zero() && f.coefficient(0).is_zero());
}

#[test]
fn basis_degree_mismatch() {
    assert!(matches!(parse_field("x*dx + dy^2", 1), Err(ParseError::DegreeMismatch { expected: 1, found: 2 })));
    assert!(matches!(parse_field("x*dx + dy^2", 2), Err(ParseError::DegreeMismatch { expected: 2, found: 1 })));
    assert!(matches!(parse_field_any("x*dx + dy^2"), Err(ParseError::MixedDegrees(d)) if d == vec![1, 2]));
    // A bare scalar has basis degree 0.
    assert!(matches!(parse_field("x + dy", 1), Err(ParseError::DegreeMismatch { found: 0, .. })));
}

#[test]
fn syntax_errors_carry_positions() {
    assert_eq!(syntax_pos(parse_field("x*(y-1*dy", 1).unwrap_err()), 9);
    assert_eq!(syntax_pos(parse_field("x**dx", 1).unwrap_err()), 2);
    assert_eq!(syntax_pos(parse_field("x*z*dx", 1).unwrap_err()), 2);
    assert_eq!(syntax_pos(parse_field("x dx", 1).unwrap_err()), 2);
    assert_eq!(syntax_pos(parse_field("x^*dx", 1).unwrap_err()), 2);
    assert_eq!(syntax_pos(parse_field("", 1).unwrap_err()), 0);
    assert_eq!(syntax_pos(parse_field("x/y*dx", 1).unwrap_err()), 2);
    assert_eq!(syntax_pos(parse_field("x/0*dx", 1).unwrap_err()), 2);
    assert_eq!(syntax_pos(parse_field("(x+y)^65*dx", 1).unwrap_err()), 6);
}

#[test]
fn decimals_are_rejected() {
    for (text, pos) in [("0.5*dx", 0), ("x*dx + 1.0*dy", 7), ("x^2.5*dx", 3), (".5*dx", 0), ("1e3*dx", 0)] {
        let e = parse_field(text, 1).unwrap_err();
        assert!(e.to_string().contains("decimal"), "{text}: {e}");
        assert_eq!(syntax_pos(e), pos, "{text}");
    }
}

#[test]
fn rationals_powers_and_whitespace() {
    let f = parse_field("  -3/4 * x^2*y^-1 * dx\t+ (x - 1/2)^2*dy ", 1).unwrap().field;
    let a = poly(&[(2, -1, -3, 4)]);
    let b = poly(&[(2, 0, 1, 1), (1, 0, -1, 1), (0, 0, 1, 4)]);
    assert_eq!(f, w1_vector_field(a, b).unwrap());
    // Repeated basis tokens multiply out.
    let g = parse_field("dx*dy*dx", 3).unwrap().field;
    assert_eq!(g.coefficient(2), &LaurentPoly::one(&w1_ring()));
    // Zero needs an explicit degree.
    assert!(parse_field("0", 2).unwrap().field.is_zero());
    assert_eq!(parse_field_any("x*y*dy").unwrap().field.degree(), 1);
}

#[test]
fn negative_basis_powers_are_rejected() {
    assert!(matches!(parse_field("dx^-1*dy^2", 1), Err(ParseError::NegativeBasisPower)));
    assert!(matches!(parse_field("(x+1)^-1*dx", 1), Err(ParseError::Syntax { .. })));
}

#[test]
fn points_in_both_notations() {
    let p = parse_point(2, "1/2,-3").unwrap();
    assert_eq!(p, FnPoint::from_w1(2, rat(1, 2), int(-3)));
    let h = parse_point(2, "[2:1],[4:-12:-3]").unwrap();
    assert!(h.same_point(&p));
    assert!(parse_point(2, "[1:1],[1:2:3]").is_err());
    assert!(parse_point(1, "0.5,1").is_err());
    assert!(parse_point(1, "[1:0],[1:0]").is_err());
    let pts = parse_points(1, "0,1; 1,1 ;[1:-1],[1:-1:1]").unwrap();
    assert_eq!(pts.len(), 3);
    assert_eq!(
        parse_centers(1, "0,1;[1:-1],[1:-1:1]").unwrap(),
        vec![Center::new(int(0), int(1)), Center::new(int(-1), int(-1))]
    );
    // The point at infinity of the base is not a center in W1.
    assert!(parse_centers(1, "[0:1],[1:0:1]").is_err());
}

fn coeff() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i32..=4, -2i32..=4, -9i64..=9, 1i64..=5), 0..4).prop_map(|terms| {
        LaurentPoly::from_terms(
            &w1_ring(),
            terms.into_iter().map(|(i, j, a, b)| (Monomial::new(vec![i, j]), rat(a, b))),
        )
    })
}

fn field() -> impl Strategy<Value = SymTensorField> {
    (0usize..=3)
        .prop_flat_map(|m| prop::collection::vec(coeff(), m + 1))
        .prop_map(|c| SymTensorField::new(Chart::W1.id(), Chart::W1.coords(), c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_render_round_trips(f in field()) {
        let back = parse_field(&f.to_canonical(), f.degree()).unwrap();
        prop_assert_eq!(&back.field, &f);
        // And rendering the parse parses to the same field again.
        prop_assert_eq!(parse_field(&back.render(), f.degree()).unwrap().field, f);
    }

    #[test]
    fn pretty_render_round_trips(f in field()) {
        prop_assert_eq!(parse_field(&f.to_pretty(), f.degree()).unwrap().field, f);
    }

    #[test]
    fn garbage_never_panics(s in "[xyd0-9+*/^() .-]{0,24}") {
        let _ = parse_field_any(&s);
    }
}
