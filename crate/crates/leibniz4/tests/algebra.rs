//! Oracle tests for the structure-constant calculus: identities, the
//! basis-change action, subspaces, annihilators, powers, series, and
//! derivation dimensions, checked against hand-computed values.

use leibniz4::algebra::{
    annihilators, derivation_dim, is_nilpotent, is_solvable, plus_square, square,
    subspace_product, AlgebraStructure, Subspace,
};
use leibniz4::exactmath::parse::parse_scalar;
use leibniz4::exactmath::{MultiPoly, Scalar, ScalarMatrix};

fn s(text: &str) -> Scalar {
    parse_scalar(text, None).expect("test scalar parses")
}

fn p(text: &str) -> MultiPoly {
    s(text).numer().clone()
}

/// Builds an algebra from 1-based product entries `(i, j, k, coefficient)`.
fn alg(label: &str, dim: usize, params: &[&str], products: &[(usize, usize, usize, &str)]) -> AlgebraStructure {
    let mut a = AlgebraStructure::zero(label, dim);
    a.params = params.iter().map(|p| p.to_string()).collect();
    for &(i, j, k, coeff) in products {
        a.set(i - 1, j - 1, k - 1, s(coeff));
    }
    a.validate().expect("test algebra is well formed");
    a
}

fn r1() -> AlgebraStructure {
    alg("R1", 4, &[], &[(3, 1, 3, "1"), (4, 2, 4, "1")])
}

fn r2() -> AlgebraStructure {
    alg(
        "R2",
        4,
        &[],
        &[(1, 2, 2, "1"), (2, 1, 2, "-1"), (3, 4, 4, "1"), (4, 3, 4, "-1")],
    )
}

fn r3() -> AlgebraStructure {
    alg(
        "R3",
        4,
        &[],
        &[(2, 4, 4, "-1"), (3, 1, 3, "1"), (4, 2, 4, "1")],
    )
}

fn l2() -> AlgebraStructure {
    alg(
        "L2",
        4,
        &[],
        &[
            (1, 1, 4, "1"),
            (1, 2, 2, "-1"),
            (1, 3, 3, "1"),
            (2, 1, 2, "1"),
            (2, 3, 4, "1"),
            (3, 1, 3, "-1"),
            (3, 2, 4, "-1"),
        ],
    )
}

fn l7() -> AlgebraStructure {
    alg("L7", 4, &[], &[(3, 1, 3, "1"), (3, 2, 4, "1"), (4, 1, 4, "1")])
}

fn l9(param: &str) -> AlgebraStructure {
    alg(
        "L9",
        4,
        &[param],
        &[
            (1, 2, 2, "-1"),
            (1, 3, 3, &format!("-{param}")),
            (2, 1, 2, "1"),
            (2, 2, 4, "1"),
            (3, 1, 3, param),
            (4, 1, 4, "2"),
        ],
    )
}

fn l44() -> AlgebraStructure {
    alg(
        "L44",
        4,
        &[],
        &[
            (1, 2, 2, "-1"),
            (2, 1, 2, "1"),
            (2, 2, 3, "1"),
            (3, 1, 3, "2"),
            (3, 2, 4, "1"),
            (4, 1, 4, "3"),
        ],
    )
}

fn sl2() -> AlgebraStructure {
    alg(
        "sl2",
        4,
        &[],
        &[
            (1, 2, 2, "1"),
            (2, 1, 2, "-1"),
            (1, 3, 3, "-1"),
            (3, 1, 3, "1"),
            (2, 3, 1, "1"),
            (3, 2, 1, "-1"),
        ],
    )
}

fn g4() -> AlgebraStructure {
    alg(
        "g4",
        4,
        &["a", "b"],
        &[
            (1, 2, 2, "1"),
            (2, 1, 2, "-1"),
            (1, 3, 2, "1"),
            (1, 3, 3, "a"),
            (3, 1, 2, "-1"),
            (3, 1, 3, "-a"),
            (1, 4, 3, "1"),
            (1, 4, 4, "b"),
            (4, 1, 3, "-1"),
            (4, 1, 4, "-b"),
        ],
    )
}

fn g5() -> AlgebraStructure {
    alg(
        "g5",
        4,
        &["a"],
        &[
            (1, 2, 2, "1"),
            (2, 1, 2, "-1"),
            (1, 3, 2, "1"),
            (1, 3, 3, "a"),
            (3, 1, 2, "-1"),
            (3, 1, 3, "-a"),
            (1, 4, 4, "a+1"),
            (4, 1, 4, "-(a+1)"),
            (2, 3, 4, "1"),
            (3, 2, 4, "-1"),
        ],
    )
}

fn nilpotent_l5() -> AlgebraStructure {
    alg(
        "L5n",
        4,
        &[],
        &[(1, 1, 3, "1"), (2, 1, 3, "1"), (2, 2, 4, "1"), (3, 1, 4, "1")],
    )
}

fn nilpotent_l2() -> AlgebraStructure {
    alg("L2n", 4, &[], &[(1, 1, 2, "1"), (2, 1, 3, "1"), (3, 1, 4, "1")])
}

fn coords(axes: &[usize]) -> Subspace {
    Subspace::coordinates(4, &axes.iter().map(|a| a - 1).collect::<Vec<_>>())
}

// ---- Defining identity ----

#[test]
fn catalog_samples_satisfy_the_defining_identity() {
    for a in [r1(), r2(), r3(), l2(), l7(), l44(), sl2(), g4(), g5(), l9("a"), nilpotent_l5()] {
        assert!(a.is_leibniz(), "{} should satisfy the identity", a.label);
    }
}

#[test]
fn one_dimensional_idempotent_fails_the_identity() {
    let a = alg("P", 1, &[], &[(1, 1, 1, "1")]);
    let defects = a.leibniz_defect();
    assert_eq!(defects.len(), 1);
    let (i, j, l, k, d) = defects[0].clone();
    assert_eq!((i, j, l, k), (0, 0, 0, 0));
    assert_eq!(d, s("-1"));
    assert!(!a.is_leibniz());
}

#[test]
fn lie_detection_requires_anticommutativity() {
    assert!(sl2().is_lie());
    assert!(r2().is_lie());
    assert!(g4().is_lie());
    assert!(g5().is_lie());
    assert!(!r1().is_lie());
    assert!(AlgebraStructure::zero("Z", 4).is_lie());
    // The family with e1e2=-e2, e1e3=-a*e3, ..., e4e1=(a+1)e4 turns
    // anticommutative (in fact Lie) exactly at a = -1.
    let l8 = alg(
        "L8",
        4,
        &["a"],
        &[
            (1, 2, 2, "-1"),
            (1, 3, 3, "-a"),
            (2, 1, 2, "1"),
            (2, 3, 4, "a"),
            (3, 1, 3, "a"),
            (3, 2, 4, "1"),
            (4, 1, 4, "a+1"),
        ],
    );
    assert!(l8.is_leibniz());
    assert!(!l8.is_lie());
    let special = l8
        .substitute(&[("a".to_string(), s("-1"))].into_iter().collect())
        .unwrap();
    assert!(special.is_lie());
}

// ---- Basis-change action ----

#[test]
fn identity_action_fixes_every_structure() {
    let id = ScalarMatrix::identity(4);
    for a in [r3(), l44(), g5()] {
        let b = a.act(&id).unwrap();
        assert_eq!(a.constants, b.constants);
    }
}

#[test]
fn swapping_two_basis_vectors_relabels_the_table() {
    // Reading the structure in the order e1, e3, e2, e4.
    let mut swap = ScalarMatrix::identity(4);
    *swap.at_mut(1, 1) = Scalar::zero();
    *swap.at_mut(2, 2) = Scalar::zero();
    *swap.at_mut(1, 2) = Scalar::one();
    *swap.at_mut(2, 1) = Scalar::one();
    let acted = l9("b").act(&swap).unwrap();
    let expected = alg(
        "L9-swapped",
        4,
        &["b"],
        &[
            (1, 2, 2, "-b"),
            (1, 3, 3, "-1"),
            (2, 1, 2, "b"),
            (3, 1, 3, "1"),
            (3, 3, 4, "1"),
            (4, 1, 4, "2"),
        ],
    );
    assert_eq!(acted.constants, expected.constants);
}

#[test]
fn scaling_the_first_basis_vector_divides_the_marked_constants() {
    let mut g = ScalarMatrix::identity(4);
    *g.at_mut(0, 0) = s("d");
    let acted = l44().act(&g).unwrap();
    // The six eigenvalue constants scale by 1/d ...
    assert_eq!(*acted.c(1, 0, 1), s("1/d"));
    assert_eq!(*acted.c(0, 1, 1), s("-1/d"));
    assert_eq!(*acted.c(2, 0, 2), s("2/d"));
    assert_eq!(*acted.c(3, 0, 3), s("3/d"));
    // ... while products inside the complement of e1 are untouched.
    assert_eq!(*acted.c(1, 1, 2), s("1"));
    assert_eq!(*acted.c(2, 1, 3), s("1"));
    assert!(acted.params.contains(&"d".to_string()));
}

#[test]
fn action_preserves_the_defining_identity() {
    let g = ScalarMatrix::from_rows(vec![
        vec![s("1"), s("2"), s("0"), s("0")],
        vec![s("0"), s("1"), s("0"), s("3")],
        vec![s("1"), s("0"), s("1"), s("0")],
        vec![s("0"), s("0"), s("0"), s("2")],
    ]);
    let acted = l44().act(&g).unwrap();
    assert!(acted.is_leibniz());
    assert!(!acted.is_lie());
}

// ---- Subspaces ----

#[test]
fn span_produces_canonical_echelon_bases() {
    let (u, exc) = Subspace::span(
        4,
        &[
            vec![s("2"), s("2"), s("0"), s("0")],
            vec![s("1"), s("1"), s("1"), s("0")],
            vec![s("0"), s("0"), s("1"), s("0")],
        ],
    );
    assert_eq!(u.dim(), 2);
    assert_eq!(u.pivots(), vec![0, 2]);
    assert!(exc.is_empty());
    assert!(u.contains_vector(&[s("3"), s("3"), s("5"), s("0")]));
    assert!(!u.contains_vector(&[s("1"), s("0"), s("0"), s("0")]));
}

#[test]
fn sums_and_intersections_agree_with_hand_computation() {
    let u = coords(&[1, 2]);
    let w = coords(&[2, 3]);
    let (sum, _) = u.sum(&w);
    assert_eq!(sum, coords(&[1, 2, 3]));
    let (cap, _) = u.intersect(&w);
    assert_eq!(cap, coords(&[2]));
    // A skew intersection: <e1+e2, e3> meets <e2, e3> in <e3>.
    let (a, _) = Subspace::span(
        4,
        &[
            vec![s("1"), s("1"), s("0"), s("0")],
            vec![s("0"), s("0"), s("1"), s("0")],
        ],
    );
    let (cap2, _) = a.intersect(&coords(&[2, 3]));
    assert_eq!(cap2, coords(&[3]));
}

#[test]
fn parametric_spans_record_their_degeneration_constraints() {
    let (u, exc) = Subspace::span(4, &[vec![s("a"), s("0"), s("0"), s("0")]]);
    assert_eq!(u.dim(), 1);
    assert_eq!(u, coords(&[1]));
    assert!(exc.contains(&p("a")));
}

// ---- Products of subspaces ----

#[test]
fn whole_times_radical_of_r3_is_the_last_axis() {
    let (prod, _) = subspace_product(&r3(), &Subspace::whole(4), &coords(&[2, 3, 4]));
    assert_eq!(prod, coords(&[4]));
}

#[test]
fn radical_square_of_l7_is_the_last_axis() {
    let d = coords(&[2, 3, 4]);
    let (prod, _) = subspace_product(&l7(), &d, &d);
    assert_eq!(prod, coords(&[4]));
}

#[test]
fn zero_factor_gives_zero_product() {
    let (prod, _) = subspace_product(&l44(), &Subspace::zero(4), &Subspace::whole(4));
    assert!(prod.is_zero());
}

#[test]
fn products_are_monotone_in_both_factors() {
    let a = l44();
    let small = coords(&[2]);
    let big = coords(&[2, 3]);
    let (pp, _) = subspace_product(&a, &small, &small);
    let (qq, _) = subspace_product(&a, &big, &big);
    assert!(qq.contains(&pp));
}

// ---- Annihilators ----

#[test]
fn annihilators_of_the_two_radical_structures() {
    let (ann_l, ann_r, ann, _) = annihilators(&r1());
    assert_eq!(ann_l, coords(&[1, 2]));
    assert_eq!(ann_r, coords(&[3, 4]));
    assert!(ann.is_zero());
    let (ann_l3, _, _, _) = annihilators(&r3());
    assert_eq!(ann_l3, coords(&[1]));
}

#[test]
fn direct_sum_lie_structure_has_no_annihilator() {
    let (_, _, ann, _) = annihilators(&r2());
    assert!(ann.is_zero());
}

#[test]
fn nilpotent_target_has_one_dimensional_left_annihilator() {
    let (ann_l, _, _, _) = annihilators(&nilpotent_l5());
    assert_eq!(ann_l, coords(&[4]));
}

#[test]
fn solvable_lie_family_annihilator_vanishes_off_one_point() {
    let (_, _, ann, exc) = annihilators(&g5());
    assert!(ann.is_zero());
    assert!(exc.contains(&p("a + 1")), "constraints were {exc:?}");
    let special = g5()
        .substitute(&[("a".to_string(), s("-1"))].into_iter().collect())
        .unwrap();
    let (_, _, ann_special, _) = annihilators(&special);
    assert_eq!(ann_special, coords(&[4]));
}

// ---- Squares ----

#[test]
fn squares_of_radical_structures_have_dimension_two() {
    let (sq1, _) = square(&r1());
    assert_eq!(sq1, coords(&[3, 4]));
    let (sq3, _) = square(&r3());
    assert_eq!(sq3, coords(&[3, 4]));
    let (sq0, _) = square(&AlgebraStructure::zero("Z", 4));
    assert!(sq0.is_zero());
    let (sq44, _) = square(&l44());
    assert_eq!(sq44, coords(&[2, 3, 4]));
}

#[test]
fn symmetrized_squares_separate_the_radical_structures() {
    let (ps1, _) = plus_square(&r1());
    assert_eq!(ps1, coords(&[3, 4]));
    let (ps3, _) = plus_square(&r3());
    assert_eq!(ps3, coords(&[3]));
    let (ps_lie, _) = plus_square(&sl2());
    assert!(ps_lie.is_zero());
    let (ps44, _) = plus_square(&l44());
    assert_eq!(ps44, coords(&[3, 4]));
}

// ---- Series ----

#[test]
fn series_classify_nilpotent_solvable_and_simple_samples() {
    let (nil, _) = is_nilpotent(&nilpotent_l2());
    assert!(nil);
    let (nil5, _) = is_nilpotent(&nilpotent_l5());
    assert!(nil5);
    let (solv_sl2, _) = is_solvable(&sl2());
    assert!(!solv_sl2);
    let (nil_sl2, _) = is_nilpotent(&sl2());
    assert!(!nil_sl2);
    let (solv_r1, _) = is_solvable(&r1());
    assert!(solv_r1);
    let (nil_r1, _) = is_nilpotent(&r1());
    assert!(!nil_r1);
}

// ---- Derivations ----

#[test]
fn derivation_dimensions_of_named_structures() {
    assert_eq!(derivation_dim(&nilpotent_l5()).generic_dim, 3);
    assert_eq!(derivation_dim(&AlgebraStructure::zero("Z", 4)).generic_dim, 16);
    assert_eq!(derivation_dim(&r1()).generic_dim, 2);
    assert_eq!(derivation_dim(&l44()).generic_dim, 2);
}

#[test]
fn derivation_dimension_of_a_family_is_generic_plus_exceptions() {
    let report = derivation_dim(&l9("a"));
    assert_eq!(report.generic_dim, 4);
    for e in &report.exceptional {
        assert!(e.resolved, "constraint {} left unresolved", e.constraint);
        for pt in &e.points {
            assert!(pt.dim >= report.generic_dim);
        }
    }
}
