use waring_core::oracle::ExactScalar;
use waring_lab::inline::parse_form;

fn q(re: (i64, i64), im: (i64, i64)) -> ExactScalar {
    ExactScalar::from_fractions(re.0.into(), re.1.into(), im.0.into(), im.1.into()).unwrap()
}

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_integer(n)
}

/// Monomial coefficients, index = power of x.
fn coeffs(src: &str) -> Vec<ExactScalar> {
    parse_form(src)
        .unwrap_or_else(|e| panic!("{src:?} should parse: {e}"))
        .to_monomial_coeffs()
}

#[test]
fn accepts_product_by_juxtaposition() {
    assert_eq!(coeffs("xy"), vec![int(0), int(1), int(0)]);
}

#[test]
fn accepts_explicit_product_and_spaces() {
    assert_eq!(coeffs(" x * y "), coeffs("xy"));
}

#[test]
fn accepts_powers() {
    assert_eq!(coeffs("x^3y^2"), vec![int(0), int(0), int(0), int(1), int(0), int(0)]);
}

#[test]
fn accepts_complex_literals() {
    assert_eq!(
        coeffs("(1+2i)x - 3i y"),
        vec![ExactScalar::from_gaussian(0, -3), ExactScalar::from_gaussian(1, 2)]
    );
}

#[test]
fn accepts_decimal_literals_exactly() {
    assert_eq!(coeffs("0.1x + .25y"), vec![q((1, 4), (0, 1)), q((1, 10), (0, 1))]);
}

#[test]
fn accepts_rational_division() {
    assert_eq!(coeffs("x/3 - y/(2i)"), vec![q((0, 1), (1, 2)), q((1, 3), (0, 1))]);
}

#[test]
fn accepts_expanded_binomial() {
    assert_eq!(coeffs("(x+y)^3"), vec![int(1), int(3), int(3), int(1)]);
}

#[test]
fn accepts_unary_signs() {
    assert_eq!(coeffs("-x^2 + +y^2"), vec![int(1), int(0), int(-1)]);
}

#[test]
fn accepts_i_squared() {
    assert_eq!(coeffs("i^2 x"), vec![int(0), int(-1)]);
}

#[test]
fn accepts_cancellation_to_lower_support() {
    assert_eq!(coeffs("x^2 + xy - x^2"), vec![int(0), int(1), int(0)]);
}

#[test]
fn accepts_constants_as_degree_zero() {
    assert_eq!(coeffs("5/2"), vec![q((5, 2), (0, 1))]);
}

#[test]
fn accepts_nested_parentheses() {
    assert_eq!(coeffs("((x))((y))"), coeffs("xy"));
}

#[test]
fn rejects_empty_input() {
    assert!(parse_form("   ").is_err());
}

#[test]
fn rejects_inhomogeneous() {
    assert!(parse_form("x^2 + y").is_err());
}

#[test]
fn rejects_zero_polynomial() {
    assert!(parse_form("x - x").is_err());
}

#[test]
fn rejects_unknown_variables() {
    assert!(parse_form("x + z").is_err());
    assert!(parse_form("X").is_err());
}

#[test]
fn rejects_dangling_operator() {
    assert!(parse_form("x +").is_err());
    assert!(parse_form("*x").is_err());
}

#[test]
fn rejects_unbalanced_parentheses() {
    assert!(parse_form("(x + y").is_err());
    assert!(parse_form("x + y)").is_err());
}

#[test]
fn rejects_division_by_variables_and_zero() {
    assert!(parse_form("x / y").is_err());
    assert!(parse_form("x / 0").is_err());
    assert!(parse_form("x / (i - i)").is_err());
}

#[test]
fn rejects_bad_exponents() {
    assert!(parse_form("x^-1").is_err());
    assert!(parse_form("x^1.5").is_err());
    assert!(parse_form("x^y").is_err());
    assert!(parse_form("x^2^2").is_err());
    assert!(parse_form("x**2").is_err());
}

#[test]
fn rejects_malformed_numbers() {
    assert!(parse_form("1.2.3x").is_err());
    assert!(parse_form(". x").is_err());
}

#[test]
fn rejects_runaway_degree() {
    assert!(parse_form("x^200 y^100").is_err());
    assert!(parse_form("(x+y)^257").is_err());
}

#[test]
fn reports_offsets() {
    let e = parse_form("xy + 2#").unwrap_err();
    assert_eq!(e.offset, 4);
}
