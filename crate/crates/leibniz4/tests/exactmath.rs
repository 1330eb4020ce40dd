//! Fixed-value checks for the exact arithmetic layer. Every expected value
//! was computed by hand and is frozen here as a literal.

use leibniz4::exactmath::{
    // modules
    gcd::{derivative, gcd, split_constraint, squarefree_part},
    groebner::{groebner, ideal_contains, ideal_is_unit},
    parse::parse_scalar,
    roots::{solve_linear_in_one, univariate_roots},
    GaussianRational,
    GroebnerBudget,
    GroebnerResult,
    GroebnerStatus,
    MonomialOrder,
    MultiPoly,
    PolyIdeal,
    Scalar,
    ScalarMatrix,
};
use std::collections::BTreeMap;

fn s(text: &str) -> Scalar {
    parse_scalar(text, None).unwrap()
}

fn p(text: &str) -> MultiPoly {
    let sc = s(text);
    assert!(sc.is_polynomial(), "not a polynomial: {text}");
    sc.numer().clone()
}

fn g(text: &str) -> GaussianRational {
    s(text).as_gaussian().unwrap()
}

// ---- Gaussian rationals ----

#[test]
fn gaussian_field_arithmetic() {
    let z = g("1+2*i");
    let w = g("3-i");
    assert_eq!(&z + &w, g("4+i"));
    assert_eq!(&z * &w, g("5+5*i"));
    assert_eq!(&z / &w, g("1/10+7/10*i"));
    assert_eq!(z.conj(), g("1-2*i"));
    assert_eq!(&z * &z.inv(), GaussianRational::one());
    assert_eq!(z.norm(), g("5").re);
}

#[test]
fn gaussian_square_roots() {
    assert_eq!(g("-1").sqrt(), Some(g("i")));
    assert_eq!(g("9/4").sqrt(), Some(g("3/2")));
    assert_eq!(g("2*i").sqrt(), Some(g("1+i")));
    assert_eq!(g("-3+4*i").sqrt(), Some(g("1+2*i")));
    assert_eq!(g("-7/4-6*i").sqrt(), Some(g("3/2-2*i")));
    assert_eq!(g("-5/2-6*i").sqrt(), None);
    assert_eq!(g("2").sqrt(), None);
    assert_eq!(g("1+i").sqrt(), None);
    assert_eq!(g("0").sqrt(), Some(GaussianRational::zero()));
}

#[test]
fn gaussian_rendering() {
    assert_eq!(g("0").to_string(), "0");
    assert_eq!(g("-3/2").to_string(), "-3/2");
    assert_eq!(g("i").to_string(), "i");
    assert_eq!(g("-i").to_string(), "-i");
    assert_eq!(g("1/2*i").to_string(), "1/2*i");
    assert_eq!(g("1-2*i").to_string(), "1-2*i");
    assert_eq!(g("-1+1/2*i").to_string(), "-1+1/2*i");
}

// ---- Polynomials ----

#[test]
fn poly_canonical_form_merges_and_sorts() {
    let left = p("a*b + b*a + 1");
    let right = p("2*a*b + 1");
    assert_eq!(left, right);
    let cancel = p("a - a");
    assert!(cancel.is_zero());
    assert!(cancel.vars().is_empty());
}

#[test]
fn poly_rendering() {
    assert_eq!(p("2*a^2*t - 1/2*i*b + 1").to_string(), "2*a^2*t - 1/2*i*b + 1");
    assert_eq!(p("-a + i").to_string(), "-a + i");
    assert_eq!(p("(1+2*i)*a").to_string(), "(1+2*i)*a");
    assert_eq!(p("0").to_string(), "0");
}

#[test]
fn poly_division_with_remainder() {
    let (q, r) = p("a^2-1").div_rem(&p("a-1"));
    assert_eq!(q, p("a+1"));
    assert!(r.is_zero());

    let (q, r) = p("a^2+b").div_rem(&p("a+b"));
    assert_eq!(q, p("a-b"));
    assert_eq!(r, p("b^2+b"));

    assert_eq!(p("a^2-1").div_exact(&p("a+1")), Some(p("a-1")));
    assert_eq!(p("a^2-1").div_exact(&p("a+2")), None);
}

#[test]
fn poly_coefficient_extraction() {
    let q = p("a^2*t + 2*t - a + 3");
    let by_t = q.coeffs_in("t");
    assert_eq!(by_t.len(), 2);
    assert_eq!(by_t[0], p("3-a"));
    assert_eq!(by_t[1], p("a^2+2"));
    assert_eq!(MultiPoly::from_coeffs_in("t", &by_t), q);
}

#[test]
fn poly_substitution_and_evaluation() {
    let q = p("x^2+y");
    let mut bind = BTreeMap::new();
    bind.insert("x".to_string(), p("t+1"));
    assert_eq!(q.substitute(&bind), p("t^2+2*t+y+1"));

    let mut point = BTreeMap::new();
    point.insert("x".to_string(), g("i"));
    point.insert("y".to_string(), g("2"));
    assert_eq!(q.eval(&point), g("1"));
}

#[test]
fn monomial_orders_disagree_on_mixed_terms() {
    // x^3 vs x*y^2*z: grevlex compares total degree first (3 < 4), lex
    // compares the power of x first (3 > 1).
    let grev = MonomialOrder::GrevLex;
    let lex = MonomialOrder::Lex;
    let a = [3, 0, 0];
    let b = [1, 2, 1];
    assert_eq!(grev.cmp(&a, &b), std::cmp::Ordering::Less);
    assert_eq!(lex.cmp(&a, &b), std::cmp::Ordering::Greater);
}

// ---- Gcd and factor splitting ----

#[test]
fn gcd_of_multivariate_polynomials() {
    assert_eq!(gcd(&p("a^2*b-b"), &p("a*b+b")), p("a*b+b"));
    assert_eq!(gcd(&p("a^2-1"), &p("a^2-2*a+1")), p("a-1"));
    assert_eq!(gcd(&p("a*b"), &p("c")), p("1"));
    assert_eq!(gcd(&p("0"), &p("2*a")), p("a"));
}

#[test]
fn squarefree_and_derivative() {
    assert_eq!(derivative(&p("a^3+2*a*b"), "a"), p("3*a^2+2*b"));
    assert_eq!(squarefree_part(&p("a^2-2*a+1")), p("a-1"));
    let cube = p("a-1").mul(&p("a-1")).mul(&p("a-1")).mul(&p("a+1"));
    assert_eq!(squarefree_part(&cube), p("a^2-1"));
}

#[test]
fn constraint_splitting_separates_factors() {
    let factors = split_constraint(&p("2*t^2*a^2 - 2*t^2"));
    assert_eq!(factors, vec![p("t"), p("a^2-1")]);
    assert!(split_constraint(&p("5")).is_empty());
    let single = split_constraint(&p("3*b - 3"));
    assert_eq!(single, vec![p("b-1")]);
}

// ---- Scalars ----

#[test]
fn scalar_fractions_stay_reduced() {
    let r = Scalar::new(p("a^2-1"), p("a+1")).unwrap();
    assert_eq!(r, Scalar::from_poly(p("a-1")));

    let sum = s("1").div(&s("a-1")).unwrap().add(&s("1").div(&s("a+1")).unwrap());
    assert_eq!(sum, Scalar::new(p("2*a"), p("a^2-1")).unwrap());
    assert_eq!(sum.to_string(), "(2*a)/(a^2 - 1)");
}

#[test]
fn scalar_denominators_are_monic() {
    let r = Scalar::new(p("1"), p("2*a+2")).unwrap();
    assert_eq!(r.numer(), &p("1/2"));
    assert_eq!(r.denom(), &p("a+1"));
}

#[test]
fn scalar_substitution_reports_vanishing_denominators() {
    let r = s("1").div(&s("a-1")).unwrap();
    let mut ok = BTreeMap::new();
    ok.insert("a".to_string(), Scalar::from_int(3));
    assert_eq!(r.substitute(&ok).unwrap(), Scalar::from_ratio(1, 2));

    let mut bad = BTreeMap::new();
    bad.insert("a".to_string(), Scalar::from_int(1));
    assert!(r.substitute(&bad).is_err());

    let mut sym = BTreeMap::new();
    sym.insert("a".to_string(), s("b+1"));
    assert_eq!(r.substitute(&sym).unwrap(), s("1").div(&s("b")).unwrap());
}

#[test]
fn scalar_parameter_listing() {
    let r = s("a").div(&s("b-c")).unwrap();
    assert_eq!(r.params(), vec!["a", "b", "c"]);
    assert!(s("1/2+i").params().is_empty());
}

// ---- Parsing ----

#[test]
fn parser_accepts_the_scalar_grammar() {
    assert_eq!(s("(a+1)*(a-1)"), s("a^2-1"));
    assert_eq!(s("-1/t^2"), Scalar::new(p("-1"), p("t^2")).unwrap());
    assert_eq!(s("2*i*a"), Scalar::from_poly(p("i").mul(&p("2*a"))));
    assert_eq!(s("a'^2"), Scalar::from_poly(p("a'").pow(2)));
}

#[test]
fn parser_rejects_malformed_input() {
    assert!(parse_scalar("1 +", None).is_err());
    assert!(parse_scalar("(a", None).is_err());
    assert!(parse_scalar("a b", None).is_err());
    assert!(parse_scalar("1/0", None).is_err());
    let only_t = vec!["t".to_string()];
    assert!(parse_scalar("a+t", Some(&only_t)).is_err());
    assert!(parse_scalar("t^2", Some(&only_t)).is_ok());
}

// ---- Matrices ----

fn mat(rows: &[&[&str]]) -> ScalarMatrix {
    ScalarMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|t| s(t)).collect())
            .collect(),
    )
}

#[test]
fn kernel_of_a_parametric_matrix() {
    let m = mat(&[&["1", "a"], &["0", "0"]]);
    let kernel = m.kernel_basis();
    assert_eq!(kernel.len(), 1);
    assert_eq!(kernel[0], vec![s("-a"), s("1")]);
}

#[test]
fn inverse_of_a_parametric_matrix() {
    let m = mat(&[&["t", "0"], &["1", "t"]]);
    let inv = m.inverse().unwrap();
    assert_eq!(inv.at(0, 0), &s("1/t"));
    assert_eq!(inv.at(0, 1), &s("0"));
    assert_eq!(inv.at(1, 0), &s("-1/t^2"));
    assert_eq!(inv.at(1, 1), &s("1/t"));
    assert!(mat(&[&["1", "1"], &["1", "1"]]).inverse().is_err());
}

#[test]
fn elimination_records_pivot_constraints() {
    let m = mat(&[&["a", "1"], &["1", "a"]]);
    let e = m.eliminate();
    assert_eq!(e.rank, 2);
    assert_eq!(e.exceptional, vec![p("a^2-1")]);
    // At a = 1 the matrix really does drop rank.
    let special = mat(&[&["1", "1"], &["1", "1"]]);
    assert_eq!(special.rank(), 1);
}

#[test]
fn determinant_and_linear_solving() {
    let m = mat(&[&["a", "1"], &["1", "a"]]);
    assert_eq!(m.det(), s("a^2-1"));
    let sol = m.solve(&[s("a+1"), s("a+1")]).unwrap();
    assert_eq!(sol, vec![s("1"), s("1")]);
    // Inconsistent system over the fraction field.
    let bad = mat(&[&["1", "1"], &["1", "1"]]);
    assert!(bad.solve(&[s("0"), s("1")]).is_none());
}

#[test]
fn minors_enumerate_all_square_submatrices() {
    let m = mat(&[&["1", "2", "3"], &["4", "5", "6"]]);
    let minors = m.minors(2);
    assert_eq!(minors.len(), 3);
    let det_12 = minors
        .iter()
        .find(|(r, c, _)| r == &vec![0, 1] && c == &vec![0, 1])
        .unwrap();
    assert_eq!(det_12.2, s("-3"));
}

// ---- Groebner bases ----

fn basis_of(gens: &[&str]) -> GroebnerResult {
    let ideal = PolyIdeal::new(gens.iter().map(|t| p(t)).collect(), MonomialOrder::GrevLex);
    groebner(&ideal, &GroebnerBudget::default())
}

#[test]
fn unit_ideals_reduce_to_one() {
    for gens in [
        vec!["x", "x-1"],
        vec!["x*y-1", "x^2"],
        vec!["x^2+1", "x-y", "y^2-1"],
    ] {
        let result = basis_of(&gens);
        assert_eq!(result.status, GroebnerStatus::Complete);
        assert_eq!(result.basis, vec![p("1")], "gens {gens:?}");
        let unit = ideal_is_unit(&result);
        assert!(unit.value && unit.definitive);
    }
}

#[test]
fn proper_ideals_keep_their_reduced_basis() {
    let result = basis_of(&["x^2+1"]);
    assert_eq!(result.basis, vec![p("x^2+1")]);
    let unit = ideal_is_unit(&result);
    assert!(!unit.value && unit.definitive);
}

#[test]
fn membership_in_a_reduced_basis() {
    let result = basis_of(&["x*y-1", "y^2-1"]);
    assert_eq!(result.status, GroebnerStatus::Complete);
    let inside = ideal_contains(&result, &p("x-y"));
    assert!(inside.value && inside.definitive);
    let outside = ideal_contains(&result, &p("x+y"));
    assert!(!outside.value && outside.definitive);
}

#[test]
fn partial_bases_only_certify_positive_answers() {
    let partial = GroebnerResult {
        basis: vec![p("x")],
        vars: vec!["x".to_string()],
        order: MonomialOrder::GrevLex,
        status: GroebnerStatus::BudgetExceeded,
        reductions: 0,
    };
    let positive = ideal_contains(&partial, &p("x^2"));
    assert!(positive.value && positive.definitive);
    let negative = ideal_contains(&partial, &p("y"));
    assert!(!negative.value && !negative.definitive);
}

#[test]
fn lex_elimination_exposes_univariate_consequences() {
    // x = y^2 and x^2 = 2 force y^4 - 2 = 0.
    let ideal = PolyIdeal::new(vec![p("x-y^2"), p("x^2-2")], MonomialOrder::Lex);
    let result = groebner(&ideal, &GroebnerBudget::default());
    assert_eq!(result.status, GroebnerStatus::Complete);
    assert!(
        result.basis.contains(&p("y^4-2")),
        "basis: {:?}",
        result.basis
    );
}

// ---- Roots ----

#[test]
fn univariate_root_extraction() {
    let quad = univariate_roots(&p("a^2+1")).unwrap();
    assert_eq!(quad.roots, vec![g("i"), g("-i")]);
    assert!(quad.all_roots_found);

    let shifted = univariate_roots(&p("2*b^2-2*b-4")).unwrap();
    assert_eq!(shifted.roots, vec![g("2"), g("-1")]);
    assert!(shifted.all_roots_found);

    let with_zero = univariate_roots(&p("a^3-a")).unwrap();
    assert_eq!(with_zero.roots, vec![g("0"), g("1"), g("-1")]);
    assert!(with_zero.all_roots_found);

    let irrational = univariate_roots(&p("a^2-2")).unwrap();
    assert!(irrational.roots.is_empty());
    assert!(!irrational.all_roots_found);

    let cubic = univariate_roots(&p("a^3-3*a+1")).unwrap();
    assert!(!cubic.all_roots_found);
    assert!(univariate_roots(&p("5")).is_none());
    assert!(univariate_roots(&p("a*b")).is_none());
}

#[test]
fn linear_solving_in_one_variable() {
    // The first variable of degree one is solved for: a*(b-1) = -2.
    let (var, sol, guard) = solve_linear_in_one(&p("a*b - a + 2")).unwrap();
    assert_eq!(var, "a");
    assert_eq!(sol, s("-2/(b-1)"));
    assert_eq!(guard, p("b-1"));

    let (var, sol, guard) = solve_linear_in_one(&p("a^2*b - a + 2")).unwrap();
    assert_eq!(var, "b");
    assert_eq!(sol, s("(a-2)/a^2"));
    assert_eq!(guard, p("a^2"));

    assert!(solve_linear_in_one(&p("a^2*b^2-1")).is_none());
}
