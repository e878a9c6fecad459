//! Acceptance suite. Prints one line per criterion and exits nonzero if
//! any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepforge_core::algebra::{Algebra, AlgebraElement, Derivation};
use sepforge_core::field::{FieldElement, FieldSpec};
use sepforge_core::oracles::{
    check_trace_coverage, differential_monomial_ideals, jacobson_family, laurent_image, prime_field_witness,
    verify_separation, witness_by_deepening, IdealDescriptor, MonomialIdeal, TruncatedIdeal,
};
use sepforge_core::separator::{diff_separate, mod_separate, SeparationResult, Subspace};

const Q: FieldSpec = FieldSpec::Rationals;

type Outcome = Result<String, String>;

/// Results of criteria 1 to 4 with the family each was verified against.
#[derive(Default)]
struct Traces(Vec<(String, SeparationResult, Vec<IdealDescriptor>)>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn monomial_family(alg: &Algebra, ds: &[Derivation], bound: u32) -> Vec<IdealDescriptor> {
    let (kept, _) = differential_monomial_ideals(alg, ds, bound).unwrap();
    kept.into_iter().map(IdealDescriptor::Monomial).collect()
}

fn verify(label: &str, result: &SeparationResult, family: &[IdealDescriptor], space: &Subspace) -> Result<(), String> {
    let report = verify_separation(result, family, space).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{label}: ideals missed: {:?}", report.violations))
}

fn random_element(alg: &Algebra, rng: &mut ChaCha8Rng, max_degree: u32, max_terms: usize) -> AlgebraElement {
    let words = alg.words_up_to_degree(max_degree);
    let n = rng.gen_range(0..=max_terms);
    AlgebraElement::from_terms(
        alg,
        (0..n).map(|_| (words.choose(rng).unwrap().clone(), alg.spec().from_i64(rng.gen_range(-4..=4)))),
    )
}

fn criterion_1(traces: &mut Traces) -> Outcome {
    let start = Instant::now();
    let alg = Algebra::comm_poly(1, Q).unwrap();
    let ds = [Derivation::euler(&alg, 0).unwrap()];
    let family = monomial_family(&alg, &ds, 8);
    let powers: Vec<AlgebraElement> = (0..=6).map(|k| alg.generator(0).pow(k)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut ideals_meeting = 0;
    let subsets = 60;
    for _ in 0..subsets {
        let mut chosen: Vec<AlgebraElement> = powers.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if chosen.is_empty() {
            chosen.push(powers.choose(&mut rng).unwrap().clone());
        }
        let space = Subspace::from_elements(&alg, &chosen).unwrap();
        let result = diff_separate(&ds, &space).map_err(|e| format!("{space}: {e}"))?;
        let report = verify_separation(&result, &family, &space).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{space}: ideals missed: {:?}", report.violations))?;
        ideals_meeting += report.ideals_meeting();
        traces.0.push((space.to_string(), result, family.clone()));
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("{subsets} subspaces, {ideals_meeting} ideal checks, 0 violations, {took:.2?}"))
}

fn criterion_2(traces: &mut Traces) -> Outcome {
    let start = Instant::now();
    let alg = Algebra::comm_poly(2, Q).unwrap();
    let ds = [Derivation::euler(&alg, 0).unwrap(), Derivation::euler(&alg, 1).unwrap()];
    let space = Subspace::filtration(&alg, 2);
    ensure(space.dim() == 6, || format!("dim V = {}", space.dim()))?;
    let result = diff_separate(&ds, &space).map_err(|e| e.to_string())?;
    let family = monomial_family(&alg, &ds, 6);
    verify("L_2", &result, &family, &space)?;
    let a = result.elements[0].to_string();
    traces.0.push((space.to_string(), result, family.clone()));
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("a = {a}, {} monomial ideals, {took:.2?}", family.len()))
}

fn criterion_3(traces: &mut Traces) -> Outcome {
    let alg = Algebra::comm_poly(1, Q).unwrap();
    let ds = [Derivation::euler(&alg, 0).unwrap()];
    let mut found = Vec::new();
    for (basis, expected) in [(&["1", "x"][..], "x"), (&["1", "x", "x^2"][..], "x^4")] {
        let space = Subspace::parse(&alg, basis).unwrap();
        let result = diff_separate(&ds, &space).map_err(|e| e.to_string())?;
        let a = result.elements[0].to_string();
        ensure(result.elements.len() == 1 && a == expected, || format!("{space}: got {a}, expected {expected}"))?;
        found.push(format!("{space} -> {a}"));
        traces.0.push((space.to_string(), result, monomial_family(&alg, &ds, space.degree().unwrap().max(1))));
    }
    Ok(found.join(", "))
}

fn criterion_4(traces: &mut Traces) -> Outcome {
    let start = Instant::now();
    let alg = Algebra::jacobson(Q);
    let family = jacobson_family(Q, &[-1, 0, 1], 3);
    let space = Subspace::parse(&alg, &["1", "y*x"]).unwrap();
    let result = mod_separate(&space, 10).map_err(|e| e.to_string())?;
    let shown: Vec<String> = result.elements.iter().map(ToString::to_string).collect();
    ensure(shown == ["1", "y*x^2 - x"], || format!("got {shown:?}"))?;
    verify("span{1, y*x}", &result, &family, &space)?;
    traces.0.push((space.to_string(), result, family.clone()));

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let random = 25;
    for _ in 0..random {
        let target = rng.gen_range(2..=4);
        let mut elements: Vec<AlgebraElement> = Vec::new();
        let space = loop {
            let space = Subspace::from_elements(&alg, &elements).unwrap();
            if space.dim() == target {
                break space;
            }
            elements.push(random_element(&alg, &mut rng, 3, 3));
        };
        let result = mod_separate(&space, 50).map_err(|e| format!("{space}: {e}"))?;
        verify(&space.to_string(), &result, &family, &space)?;
        let coverage = check_trace_coverage(&result.trace, &family).map_err(|e| e.to_string())?;
        ensure(coverage.is_empty(), || format!("{space}: coverage fails for {}", coverage[0].ideal))?;
        traces.0.push((space.to_string(), result, family.clone()));
    }
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!("list {shown:?}, {} ideals, {random} random subspaces, {took:.2?}", family.len()))
}

fn criterion_5(traces: &Traces) -> Outcome {
    ensure(!traces.0.is_empty(), || "no traces recorded by criteria 1-4".into())?;
    let mut splits = 0;
    for (label, result, family) in &traces.0 {
        let structural = result.structural_violations();
        ensure(structural.is_empty(), || format!("{label}: {structural:?}"))?;
        let coverage = check_trace_coverage(&result.trace, family).map_err(|e| e.to_string())?;
        ensure(coverage.is_empty(), || format!("{label}: {} not covered at {}", coverage[0].ideal, coverage[0].subspace))?;
        splits += result.trace.nodes().len() - result.trace.leaves().len();
    }
    Ok(format!("{} traces, {splits} internal nodes, 0 violations", traces.0.len()))
}

fn ratfun_coefficient(rng: &mut ChaCha8Rng) -> FieldElement {
    let spec = FieldSpec::RationalFunctions;
    loop {
        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
        let f = spec.parse(&format!("{}*t^2 + {}*t + {}", c[2], c[1], c[0])).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let spec = FieldSpec::RationalFunctions;
    let alg = Algebra::free(2, spec).unwrap();
    let g = alg.parse("x + t*y").unwrap();
    let (bound, w) = (1..=2)
        .find_map(|d| prime_field_witness(&alg, std::slice::from_ref(&g), d).unwrap().map(|w| (d, w)))
        .ok_or("no witness for x + t*y at bound <= 2")?;
    let commutator = alg.parse("x*y - y*x").unwrap();
    let lead = commutator.leading_word().unwrap();
    let scale = w.coefficient(lead).checked_div(&commutator.coefficient(lead)).unwrap();
    ensure(!scale.is_zero() && w == commutator.scale(&scale), || format!("witness {w} is not a multiple of x*y - y*x"))?;
    let confirmed = TruncatedIdeal::new(&alg, std::slice::from_ref(&g), bound).unwrap().contains(&w).unwrap();
    ensure(confirmed && w.has_prime_field_coefficients(), || format!("{w} not confirmed"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let words = alg.words_up_to_degree(2);
    let (mut found, mut not_found) = (0, 0);
    for _ in 0..10 {
        let terms = rng.gen_range(1..=3);
        let gen = loop {
            let e = AlgebraElement::from_terms(
                &alg,
                (0..terms).map(|_| (words.choose(&mut rng).unwrap().clone(), ratfun_coefficient(&mut rng))),
            );
            if !e.is_zero() {
                break e;
            }
        };
        let search = witness_by_deepening(&alg, std::slice::from_ref(&gen), 4).map_err(|e| format!("{gen}: {e}"))?;
        match search.found {
            Some((d, w)) => {
                let ideal = TruncatedIdeal::new(&alg, std::slice::from_ref(&gen), d).unwrap();
                let ok = !w.is_zero() && w.has_prime_field_coefficients() && ideal.contains(&w).unwrap();
                ensure(ok, || format!("{gen}: witness {w} not confirmed"))?;
                found += 1;
            }
            None => not_found += 1,
        }
    }
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!("{w} at bound {bound}; random: {found} found, {not_found} not found up to 4, {took:.2?}"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 1000;
    let presentations = [
        Algebra::free(2, Q).unwrap(),
        Algebra::jacobson(Q),
        Algebra::weyl(Q).unwrap(),
        Algebra::matrix(2, Q).unwrap(),
        Algebra::comm_poly(2, Q).unwrap(),
    ];
    for alg in &presentations {
        for _ in 0..n {
            let [a, b, c] = [0; 3].map(|_| random_element(alg, &mut rng, 2, 3));
            let left = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
            let right = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
            ensure(left == right, || format!("{}: ({a})({b})({c}) is not associative", alg.kind()))?;
        }
    }
    let poly = Algebra::comm_poly(2, Q).unwrap();
    let derivations = [
        Derivation::euler(&poly, 0).unwrap(),
        Derivation::euler(&poly, 1).unwrap(),
        Derivation::partial(&poly, 0).unwrap(),
        Derivation::partial(&poly, 1).unwrap(),
    ];
    for d in &derivations {
        for _ in 0..n {
            let a = random_element(&poly, &mut rng, 3, 3);
            let b = random_element(&poly, &mut rng, 3, 3);
            let lhs = d.apply(&a.checked_mul(&b).unwrap()).unwrap();
            let rhs = d.apply(&a).unwrap().checked_mul(&b).unwrap().checked_add(&a.checked_mul(&d.apply(&b).unwrap()).unwrap()).unwrap();
            ensure(lhs == rhs, || format!("{d}: Leibniz fails on {a}, {b}"))?;
        }
    }
    let jac = Algebra::jacobson(Q);
    for _ in 0..n {
        let a = random_element(&jac, &mut rng, 3, 3);
        let b = random_element(&jac, &mut rng, 3, 3);
        let lhs = laurent_image(&a.checked_mul(&b).unwrap()).unwrap();
        let rhs = laurent_image(&a).unwrap().mul(&laurent_image(&b).unwrap());
        ensure(lhs == rhs, || format!("pi is not multiplicative on {a}, {b}"))?;
    }
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{n} associativity checks x {} presentations, {n} Leibniz x {} derivations, {n} pi checks, {took:.2?}",
        presentations.len(),
        derivations.len()
    ))
}

fn criterion_8() -> Outcome {
    let alg = Algebra::comm_poly(1, Q).unwrap();
    let ds = [Derivation::euler(&alg, 0).unwrap()];
    let space = Subspace::parse(&alg, &["1", "x", "x^2"]).unwrap();
    let x2 = IdealDescriptor::Monomial(MonomialIdeal::parse(&alg, &["x^2"]).unwrap());
    let family = vec![IdealDescriptor::Whole, x2];
    let mut result = diff_separate(&ds, &space).unwrap();
    verify("honest", &result, &family, &space)?;
    result.elements = vec![alg.parse("x").unwrap()];
    let report = verify_separation(&result, &family, &space).unwrap();
    ensure(report.violations == ["(x^2)"], || format!("violations reported: {:?}", report.violations))?;
    Ok("wrong element x rejected: (x^2) reported".into())
}

fn run(number: usize, title: &str, criterion: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match outcome {
        Ok(detail) => {
            println!("[PASS] criterion {number}: {title}: {detail}");
            true
        }
        Err(detail) => {
            println!("[FAIL] criterion {number}: {title}: {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut traces = Traces::default();
    let results = [
        run(1, "differential separation soundness in Q[x]", || criterion_1(&mut traces)),
        run(2, "two-variable differential case", || criterion_2(&mut traces)),
        run(3, "golden values", || criterion_3(&mut traces)),
        run(4, "Jacobson algebra separation", || criterion_4(&mut traces)),
        run(5, "splitting invariants", || criterion_5(&traces)),
        run(6, "prime-field witness over Q(t)", criterion_6),
        run(7, "algebra arithmetic properties", criterion_7),
        run(8, "adversarial verification", criterion_8),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
