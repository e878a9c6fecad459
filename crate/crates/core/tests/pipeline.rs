use proptest::prelude::*;

use sepforge_core::algebra::{Algebra, AlgebraElement, Derivation};
use sepforge_core::field::FieldSpec;
use sepforge_core::oracles::{check_trace_coverage, exact_quotient, jacobson_family, verify_separation, IdealDescriptor};
use sepforge_core::separator::{chain, diff_stabilize, mod_separate, Subspace};

const Q: FieldSpec = FieldSpec::Rationals;

fn exponents(a: &AlgebraElement, vars: usize) -> Vec<u32> {
    assert_eq!(a.len(), 1, "{a} is not a monomial");
    a.leading_word().unwrap().exponents(vars)
}

#[test]
fn stabilization_chain_in_two_variables() {
    let alg = Algebra::comm_poly(2, Q).unwrap();
    let ds = [Derivation::euler(&alg, 0).unwrap(), Derivation::euler(&alg, 1).unwrap()];
    let steps = diff_stabilize(&alg, &ds, 3).unwrap();
    let a: Vec<AlgebraElement> = steps.iter().map(|s| s.element().clone()).collect();
    let b = chain(&a).unwrap();
    assert_eq!(b.len(), 3);
    // Cumulative products of monomials: exponent vectors add up.
    let mut running = vec![0u32; 2];
    for (ai, bi) in a.iter().zip(&b) {
        for (r, e) in running.iter_mut().zip(exponents(ai, 2)) {
            *r += e;
        }
        assert_eq!(exponents(bi, 2), running);
    }
    for pair in b.windows(2) {
        let q = exact_quotient(&pair[1], &pair[0]).unwrap().expect("divides");
        assert_eq!(q.checked_mul(&pair[0]).unwrap(), pair[1]);
    }
}

#[test]
fn jacobson_over_a_prime_field() {
    let spec = FieldSpec::prime(5).unwrap();
    let alg = Algebra::jacobson(spec);
    let family = jacobson_family(spec, &[-1, 0, 1], 3);
    let space = Subspace::parse(&alg, &["1", "y*x", "x + 2*y"]).unwrap();
    let result = mod_separate(&space, 20).unwrap();
    assert!(result.structural_violations().is_empty());
    assert!(verify_separation(&result, &family, &space).unwrap().passed());
    assert!(check_trace_coverage(&result.trace, &family).unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrix_separation_returns_at_most_dim_nonzero_elements(
        rows in prop::collection::vec(prop::collection::vec(-2i64..3, 9), 1..5)
    ) {
        let alg = Algebra::matrix(3, Q).unwrap();
        let words = alg.words_up_to_degree(1);
        let elements: Vec<AlgebraElement> = rows
            .iter()
            .map(|r| AlgebraElement::from_terms(&alg, words[1..].iter().cloned().zip(r.iter().map(|&c| Q.from_i64(c)))))
            .collect();
        let space = Subspace::from_elements(&alg, &elements).unwrap();
        prop_assume!(!space.is_zero());
        let result = mod_separate(&space, 64).unwrap();
        prop_assert!(result.elements.len() <= space.dim());
        prop_assert!(result.structural_violations().is_empty());
        let family = [IdealDescriptor::Zero, IdealDescriptor::Whole];
        prop_assert!(verify_separation(&result, &family, &space).unwrap().passed());
    }
}
