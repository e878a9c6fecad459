//! Elements with prime-field coefficients in an ideal over a larger field.
//!
//! With `B` the canonical basis of the truncated ideal, a vector `c` lies in
//! its span iff `c_j = Σ_i c_{p_i}·B_i[j]` at every non-pivot column `j`.
//! Over ℚ(t) each such equation is multiplied by the least common multiple
//! of its denominators and split by powers of `t`, leaving a linear system
//! over ℚ for rational `c`.

use num::{BigInt, BigRational, Integer, One, Zero};
use serde::Serialize;

use super::{OracleError, TruncatedIdeal};
use crate::algebra::{Algebra, AlgebraElement};
use crate::field::{FieldElement, FieldSpec, RationalPoly};
use crate::linalg::{kernel, Matrix, Vector};

/// A nonzero element with prime-field coefficients in the span of the
/// ideal truncated at `degree_bound`, or `None` if there is none at this
/// bound.
///
/// The answer is the first canonical kernel vector. Over ℚ and ℚ(t) it is
/// scaled to coprime integers; over F_p to leading coefficient 1. In both
/// cases the first term in display order has a positive coefficient.
pub fn prime_field_witness(
    algebra: &Algebra,
    generators: &[AlgebraElement],
    degree_bound: u32,
) -> Result<Option<AlgebraElement>, OracleError> {
    let ideal = TruncatedIdeal::new(algebra, generators, degree_bound)?;
    let spec = algebra.spec();
    let prime = match spec {
        FieldSpec::PrimeField(_) => spec,
        _ => FieldSpec::Rationals,
    };
    let basis = ideal.basis();
    let n = ideal.words().len();
    let mut is_pivot = vec![false; n];
    for &p in basis.pivots() {
        is_pivot[p] = true;
    }
    let mut rows: Vec<Vector> = Vec::new();
    for j in (0..n).filter(|&j| !is_pivot[j]) {
        let mut eq: Vec<(usize, FieldElement)> = vec![(j, spec.one())];
        for (row, &p) in basis.vectors().iter().zip(basis.pivots()) {
            if !row[j].is_zero() {
                eq.push((p, -&row[j]));
            }
        }
        if spec == FieldSpec::RationalFunctions {
            let clear = eq.iter().fold(RationalPoly::one(), |acc, (_, c)| acc.lcm(&c.denominator_in_t()));
            let expanded: Vec<(usize, Vec<BigRational>)> =
                eq.iter().map(|(col, c)| Ok((*col, c.expand_in_t(&clear)?))).collect::<Result<_, OracleError>>()?;
            let powers = expanded.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
            for k in 0..powers {
                let mut row = vec![prime.zero(); n];
                for (col, e) in &expanded {
                    if let Some(q) = e.get(k) {
                        row[*col] = prime.from_rational(q)?;
                    }
                }
                rows.push(row);
            }
        } else {
            let mut row = vec![prime.zero(); n];
            for (col, c) in eq {
                row[col] = c;
            }
            rows.push(row);
        }
    }
    let solutions = if rows.is_empty() {
        kernel(&Matrix::zeros(prime, 1, n))
    } else {
        kernel(&Matrix::from_rows(prime, n, &rows).expect("consistent shape"))
    };
    let Some(first) = solutions.vectors().first() else {
        return Ok(None);
    };
    let scaled = normalize(prime, first);
    let coeffs: Vec<FieldElement> = scaled
        .iter()
        .map(|c| match c.to_rational() {
            Some(q) => spec.from_rational(&q),
            None => Ok(c.clone()),
        })
        .collect::<Result<_, _>>()?;
    let element = AlgebraElement::from_terms(algebra, ideal.words().iter().cloned().zip(coeffs));
    let sign = element.display_leading_coefficient().is_some_and(FieldElement::prints_negative);
    Ok(Some(if sign { -element } else { element }))
}

fn normalize(prime: FieldSpec, v: &[FieldElement]) -> Vec<FieldElement> {
    if prime != FieldSpec::Rationals {
        let lead = v.iter().rev().find(|c| !c.is_zero()).expect("nonzero").inv().expect("nonzero");
        return v.iter().map(|c| c * &lead).collect();
    }
    let qs: Vec<BigRational> = v.iter().map(|c| c.to_rational().expect("rational")).collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, i| acc.gcd(i));
    ints.iter().map(|i| FieldElement::Rational(BigRational::from_integer(i / &gcd))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSearch {
    pub bounds_tried: Vec<u32>,
    /// The first bound with a witness, and the witness.
    pub found: Option<(u32, AlgebraElement)>,
}

/// [`prime_field_witness`] at increasing bounds, starting from the largest
/// generator degree (at least 1), up to `max_bound`.
pub fn witness_by_deepening(
    algebra: &Algebra,
    generators: &[AlgebraElement],
    max_bound: u32,
) -> Result<WitnessSearch, OracleError> {
    let start = generators.iter().filter_map(AlgebraElement::degree).max().unwrap_or(0).max(1);
    if start > max_bound {
        return Err(OracleError::DegreeBoundExceeded { degree: start, bound: max_bound });
    }
    let mut search = WitnessSearch { bounds_tried: Vec::new(), found: None };
    for bound in start..=max_bound {
        search.bounds_tried.push(bound);
        if let Some(w) = prime_field_witness(algebra, generators, bound)? {
            search.found = Some((bound, w));
            break;
        }
    }
    Ok(search)
}
