use proptest::prelude::*;

use super::*;
use crate::algebra::{Algebra, Derivation};
use crate::field::FieldSpec;
use crate::separator::{diff_separate, mod_separate};

const Q: FieldSpec = FieldSpec::Rationals;

fn names(ideals: &[MonomialIdeal]) -> Vec<String> {
    ideals.iter().map(ToString::to_string).collect()
}

fn mono(a: &Algebra, gens: &[&str]) -> IdealDescriptor {
    IdealDescriptor::Monomial(MonomialIdeal::parse(a, gens).unwrap())
}

#[test]
fn monomial_enumeration() {
    let qx = Algebra::comm_poly(1, Q).unwrap();
    assert_eq!(names(&enumerate_monomial_ideals(&qx, 3).unwrap()), ["(1)", "(x)", "(x^2)", "(x^3)"]);
    let qxy = Algebra::comm_poly(2, Q).unwrap();
    assert_eq!(names(&enumerate_monomial_ideals(&qxy, 1).unwrap()), ["(1)", "(x)", "(y)", "(x, y)"]);
    let two = names(&enumerate_monomial_ideals(&qxy, 2).unwrap());
    assert!(two.contains(&"(x^2, x*y, y^2)".to_string()));
    assert!(two.contains(&"(x, y^2)".to_string()));
    assert!(!two.iter().any(|s| s == "(x, x*y)"));
    assert!(enumerate_monomial_ideals(&qx, 0).is_err());
    assert!(enumerate_monomial_ideals(&Algebra::jacobson(Q), 2).is_err());
}

#[test]
fn monomial_generators_are_minimized() {
    let qxy = Algebra::comm_poly(2, Q).unwrap();
    let i = MonomialIdeal::parse(&qxy, &["x*y", "x", "y^3", "x^2"]).unwrap();
    assert_eq!(i.to_string(), "(x, y^3)");
    assert!(matches!(MonomialIdeal::parse(&qxy, &["x + y"]), Err(OracleError::NotMonomial(_))));
}

#[test]
fn closure_examples() {
    let qx = Algebra::comm_poly(1, Q).unwrap();
    let euler = [Derivation::euler(&qx, 0).unwrap()];
    let dx = [Derivation::partial(&qx, 0).unwrap()];
    for k in 1..6 {
        let i = MonomialIdeal::new(&qx, vec![qx.words_of_degree(k)[0].clone()]).unwrap();
        assert!(diff_closure_check(&i, &euler).unwrap());
    }
    let x = MonomialIdeal::parse(&qx, &["x"]).unwrap();
    assert!(!diff_closure_check(&x, &dx).unwrap());
    let one = MonomialIdeal::parse(&qx, &["1"]).unwrap();
    assert!(diff_closure_check(&one, &dx).unwrap());
    let (kept, dropped) = differential_monomial_ideals(&qx, &dx, 3).unwrap();
    assert_eq!((names(&kept), dropped), (vec!["(1)".to_string()], 3));
}

#[test]
fn monomial_membership() {
    let qx = Algebra::comm_poly(1, Q).unwrap();
    let sq = mono(&qx, &["x^2"]);
    let span = |lits: &[&str]| Subspace::parse(&qx, lits).unwrap();
    assert!(ideal_meets_subspace(&sq, &span(&["1", "x", "x^2"])).unwrap());
    assert!(!ideal_meets_subspace(&sq, &span(&["1", "x"])).unwrap());
    assert!(!ideal_meets_subspace(&sq, &span(&["1 + x^2"])).unwrap());
    assert!(ideal_contains(&sq, &qx.parse("x^4").unwrap()).unwrap());
    assert!(!ideal_contains(&sq, &qx.parse("x^4 + x").unwrap()).unwrap());
    assert!(ideal_contains(&sq, &qx.zero()).unwrap());
}

#[test]
fn jacobson_membership() {
    let j = Algebra::jacobson(Q);
    let el = |s: &str| j.parse(s).unwrap();
    assert_eq!(laurent_image(&el("y^2*x - 3*x^2 + 1")).unwrap().to_string(), "z + 1 - 3*z^-2");
    let socle = IdealDescriptor::Jacobson(JacobsonIdeal::Socle);
    let space = Subspace::parse(&j, &["1", "y*x"]).unwrap();
    assert!(ideal_meets_subspace(&socle, &space).unwrap());
    assert!(ideal_contains(&socle, &el("y*x^2 - x")).unwrap());
    assert!(!ideal_contains(&socle, &el("1")).unwrap());
    assert!(!ideal_meets_subspace(&socle, &Subspace::parse(&j, &["1", "y"]).unwrap()).unwrap());

    let f = LaurentPoly::from_integers(Q, -1, &[-1, 0, 1]);
    let pre = JacobsonIdeal::preimage(&f).unwrap();
    assert_eq!(pre.to_string(), "Preimage(z^2 - 1)");
    let pre = IdealDescriptor::Jacobson(pre);
    // π(y - x) = z - z⁻¹ = z⁻¹(z² - 1)
    assert!(ideal_contains(&pre, &el("y - x")).unwrap());
    assert!(!ideal_contains(&pre, &el("y - 1")).unwrap());
    assert!(ideal_meets_subspace(&pre, &Subspace::parse(&j, &["y", "x"]).unwrap()).unwrap());
    assert!(!ideal_meets_subspace(&pre, &Subspace::parse(&j, &["y", "1"]).unwrap()).unwrap());
    assert!(!ideal_meets_subspace(&IdealDescriptor::Zero, &space).unwrap());
    assert!(ideal_meets_subspace(&IdealDescriptor::Whole, &space).unwrap());
}

#[test]
fn laurent_grid_contents() {
    let grid: Vec<String> = laurent_grid(Q, &[-1, 0, 1], 3).iter().map(ToString::to_string).collect();
    assert_eq!(grid.len(), 9);
    assert_eq!(grid[0], "1");
    for expected in ["z - 1", "z + 1", "z^2 + 1", "z^2 - z - 1", "z^2 + z + 1"] {
        assert!(grid.contains(&expected.to_string()), "missing {expected}");
    }
    assert_eq!(jacobson_family(Q, &[-1, 0, 1], 3).len(), 10);
}

#[test]
fn truncated_membership() {
    let free = Algebra::free(2, Q).unwrap();
    let t = TruncatedIdeal::new(&free, &[free.parse("x").unwrap()], 3).unwrap();
    let ideal = IdealDescriptor::Truncated(t);
    assert!(ideal_contains(&ideal, &free.parse("y*x").unwrap()).unwrap());
    assert!(!ideal_contains(&ideal, &free.parse("y").unwrap()).unwrap());
    assert!(matches!(
        ideal_contains(&ideal, &free.parse("y^4").unwrap()),
        Err(OracleError::DegreeBoundExceeded { degree: 4, bound: 3 })
    ));
    let span = Subspace::parse(&free, &["y", "y^2 + x*y"]).unwrap();
    assert!(!ideal_meets_subspace(&ideal, &span).unwrap());
    let span = Subspace::parse(&free, &["y", "y^2 + x*y", "y^2"]).unwrap();
    assert!(ideal_meets_subspace(&ideal, &span).unwrap());
    assert!(TruncatedIdeal::new(&free, &[free.parse("x^3").unwrap()], 2).is_err());
}

#[test]
fn verify_examples() {
    let qx = Algebra::comm_poly(1, Q).unwrap();
    let ds = [Derivation::euler(&qx, 0).unwrap()];
    let space = Subspace::parse(&qx, &["1", "x", "x^2"]).unwrap();
    let family: Vec<_> =
        enumerate_monomial_ideals(&qx, 5).unwrap().into_iter().map(IdealDescriptor::Monomial).collect();
    let result = diff_separate(&ds, &space).unwrap();
    let report = verify_separation(&result, &family, &space).unwrap();
    assert!(report.passed());
    assert_eq!(report.ideals_meeting(), 3);
    assert!(check_trace_coverage(&result.trace, &family).unwrap().is_empty());

    let mut wrong = result.clone();
    wrong.elements = vec![qx.parse("x").unwrap()];
    let report = verify_separation(&wrong, &family, &space).unwrap();
    assert!(report.violations.contains(&"(x^2)".to_string()));

    let j = Algebra::jacobson(Q);
    let space = Subspace::parse(&j, &["1", "y*x"]).unwrap();
    let result = mod_separate(&space, 10).unwrap();
    let family = jacobson_family(Q, &[-1, 0, 1], 3);
    let report = verify_separation(&result, &family, &space).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    assert_eq!(report.ideals_meeting(), family.len());
    assert!(check_trace_coverage(&result.trace, &family).unwrap().is_empty());
}

#[test]
fn witness_examples() {
    let qt = FieldSpec::RationalFunctions;
    let free = Algebra::free(2, qt).unwrap();
    let el = |s: &str| free.parse(s).unwrap();
    let w = |gens: &[&str], bound| {
        let gens: Vec<_> = gens.iter().map(|s| el(s)).collect();
        prime_field_witness(&free, &gens, bound).unwrap().map(|e| e.to_string())
    };
    assert_eq!(w(&["t*x"], 1).as_deref(), Some("x"));
    assert_eq!(w(&["x*y - 1"], 2).as_deref(), Some("x*y - 1"));
    assert_eq!(w(&["x + t*y"], 1), None);
    assert_eq!(w(&["x + t*y"], 2).as_deref(), Some("x*y - y*x"));
    assert!(matches!(
        prime_field_witness(&free, &[el("x^3")], 2),
        Err(OracleError::DegreeBoundExceeded { .. })
    ));

    let search = witness_by_deepening(&free, &[el("x + t*y")], 4).unwrap();
    assert_eq!(search.bounds_tried, [1, 2]);
    assert_eq!(search.found.as_ref().map(|(b, e)| (*b, e.to_string())), Some((2, "x*y - y*x".to_string())));

    let fq = Algebra::free(2, Q).unwrap();
    let found = prime_field_witness(&fq, &[fq.parse("2*x + 4*y").unwrap()], 1).unwrap().unwrap();
    assert_eq!(found.to_string(), "x + 2*y");
}

#[test]
fn division_examples() {
    let r = Algebra::comm_poly(2, Q).unwrap();
    let el = |s: &str| r.parse(s).unwrap();
    assert_eq!(exact_quotient(&el("x^2 - y^2"), &el("x + y")).unwrap(), Some(el("x - y")));
    assert_eq!(exact_quotient(&el("x^2 + y"), &el("x")).unwrap(), None);
    assert_eq!(exact_quotient(&el("x^5"), &el("x")).unwrap(), Some(el("x^4")));
    assert_eq!(exact_quotient(&el("0"), &el("x")).unwrap(), Some(r.zero()));
    assert_eq!(exact_quotient(&el("x"), &el("0")).unwrap(), None);
}

fn jacobson_element(bound: u32) -> impl Strategy<Value = AlgebraElement> {
    let j = Algebra::jacobson(Q);
    let words = j.words_up_to_degree(bound);
    let n = words.len();
    prop::collection::vec((0..n, -3i64..4), 0..5).prop_map(move |terms| {
        AlgebraElement::from_terms(&j, terms.into_iter().map(|(i, c)| (words[i].clone(), Q.from_i64(c))))
    })
}

fn poly_element() -> impl Strategy<Value = AlgebraElement> {
    let r = Algebra::comm_poly(2, Q).unwrap();
    let words = r.words_up_to_degree(3);
    let n = words.len();
    prop::collection::vec((0..n, -2i64..3), 0..4).prop_map(move |terms| {
        AlgebraElement::from_terms(&r, terms.into_iter().map(|(i, c)| (words[i].clone(), Q.from_i64(c))))
    })
}

/// `ker π ∩ L_d` from the explicit socle elements `y^i x^j − y^(i+1) x^(j+1)`.
fn socle_slice(d: u32) -> Subspace {
    let j = Algebra::jacobson(Q);
    let mut gens = Vec::new();
    for i in 0..d {
        for k in 0..d {
            if i + k + 2 <= d {
                gens.push(j.parse(&format!("y^{i}*x^{k} - y^{}*x^{}", i + 1, k + 1)).unwrap());
            }
        }
    }
    Subspace::from_elements(&j, &gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laurent_image_is_multiplicative(a in jacobson_element(3), b in jacobson_element(3)) {
        let lhs = laurent_image(&(&a * &b)).unwrap();
        let rhs = laurent_image(&a).unwrap().mul(&laurent_image(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn socle_lies_in_every_preimage(a in jacobson_element(3), b in jacobson_element(2), f_idx in 0usize..9) {
        // π(y·a·x) = π(a), so a − y·a·x lies in the socle
        let j = a.algebra().clone();
        let conj = &(&j.parse("y").unwrap() * &a) * &j.parse("x").unwrap();
        let s = &(&a - &conj) * &b;
        let socle = IdealDescriptor::Jacobson(JacobsonIdeal::Socle);
        prop_assert!(ideal_contains(&socle, &s).unwrap());
        let f = laurent_grid(Q, &[-1, 0, 1], 3)[f_idx].clone();
        let pre = IdealDescriptor::Jacobson(JacobsonIdeal::Preimage(f));
        prop_assert!(ideal_contains(&pre, &s).unwrap());
    }

    #[test]
    fn socle_meets_agrees_with_explicit_slice(a in jacobson_element(3), b in jacobson_element(3)) {
        let j = a.algebra().clone();
        let space = Subspace::from_elements(&j, &[a, b]).unwrap();
        prop_assume!(!space.is_zero());
        let expected = !space.intersect(&socle_slice(3)).unwrap().is_zero();
        let socle = IdealDescriptor::Jacobson(JacobsonIdeal::Socle);
        prop_assert_eq!(ideal_meets_subspace(&socle, &space).unwrap(), expected);
    }

    #[test]
    fn divisibility_agrees_with_spanning_sets(f in poly_element(), ideal_idx in 0usize..40) {
        let r = f.algebra().clone();
        let ideals = enumerate_monomial_ideals(&r, 2).unwrap();
        let ideal = ideals[ideal_idx % ideals.len()].clone();
        let gens: Vec<_> = ideal.generators().iter().map(|w| AlgebraElement::from_word(&r, w.clone())).collect();
        let truncated = TruncatedIdeal::new(&r, &gens, 3).unwrap();
        prop_assert_eq!(ideal.contains(&f).unwrap(), truncated.contains(&f).unwrap());
    }

    #[test]
    fn quotient_recovers_factor(f in poly_element(), g in poly_element()) {
        prop_assume!(!g.is_zero());
        let q = exact_quotient(&(&f * &g), &g).unwrap();
        prop_assert_eq!(q, Some(f));
    }
}

#[test]
fn enumerated_ideals_are_distinct_antichains() {
    let r = Algebra::comm_poly(2, Q).unwrap();
    let ideals = enumerate_monomial_ideals(&r, 4).unwrap();
    for (i, a) in ideals.iter().enumerate() {
        for g in a.generators() {
            for h in a.generators() {
                assert!(g == h || !g.divides(h));
            }
        }
        assert!(ideals[i + 1..].iter().all(|b| b != a));
    }
}
