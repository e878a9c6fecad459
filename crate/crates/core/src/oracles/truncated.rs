use std::fmt;

use super::OracleError;
use crate::algebra::{Algebra, AlgebraElement, Word};
use crate::linalg::{intersect, EchelonBasis, Vector};
use crate::separator::Subspace;

/// The part of a two-sided ideal reachable at bounded degree:
/// the span of `u·g·w` over generators `g` and basis words `u`, `w` with
/// `deg u + deg g + deg w ≤ degree_bound`.
///
/// Membership in this span proves membership in the ideal. Failure only
/// means the element is not reached at this bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedIdeal {
    algebra: Algebra,
    generators: Vec<AlgebraElement>,
    degree_bound: u32,
    /// `L_bound` in ascending word order.
    words: Vec<Word>,
    basis: EchelonBasis,
}

impl TruncatedIdeal {
    pub fn new(algebra: &Algebra, generators: &[AlgebraElement], degree_bound: u32) -> Result<Self, OracleError> {
        let mut words = algebra.words_up_to_degree(degree_bound);
        words.sort();
        let mut rows: Vec<Vector> = Vec::new();
        for g in generators {
            algebra.check_same(g.algebra())?;
            let Some(dg) = g.degree() else { continue };
            if dg > degree_bound {
                return Err(OracleError::DegreeBoundExceeded { degree: dg, bound: degree_bound });
            }
            let left = algebra.words_up_to_degree(degree_bound - dg);
            for u in &left {
                let ug = &AlgebraElement::from_word(algebra, u.clone()) * g;
                for w in algebra.words_up_to_degree(degree_bound - dg - u.degree()) {
                    let p = &ug * &AlgebraElement::from_word(algebra, w);
                    rows.push(coordinates(algebra, &words, &p, degree_bound)?);
                }
            }
        }
        let basis = EchelonBasis::span(algebra.spec(), words.len(), &rows).expect("consistent shape");
        Ok(TruncatedIdeal { algebra: algebra.clone(), generators: generators.to_vec(), degree_bound, words, basis })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[AlgebraElement] {
        &self.generators
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Coordinate words: `L_bound`, ascending.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn basis(&self) -> &EchelonBasis {
        &self.basis
    }

    pub fn contains(&self, a: &AlgebraElement) -> Result<bool, OracleError> {
        self.algebra.check_same(a.algebra())?;
        let v = coordinates(&self.algebra, &self.words, a, self.degree_bound)?;
        Ok(self.basis.contains(&v).expect("consistent shape"))
    }

    pub fn meets(&self, space: &Subspace) -> Result<bool, OracleError> {
        self.algebra.check_same(space.algebra())?;
        let degree = space.degree().unwrap_or(0);
        let dense = space
            .in_filtration_coordinates(self.degree_bound)
            .ok_or(OracleError::DegreeBoundExceeded { degree, bound: self.degree_bound })?;
        Ok(!intersect(&dense, &self.basis).expect("consistent shape").is_zero())
    }
}

fn coordinates(algebra: &Algebra, words: &[Word], a: &AlgebraElement, bound: u32) -> Result<Vector, OracleError> {
    let mut v = vec![algebra.spec().zero(); words.len()];
    for (w, c) in a.terms() {
        let idx = words
            .binary_search(w)
            .map_err(|_| OracleError::DegreeBoundExceeded { degree: w.degree(), bound })?;
        v[idx] = c.clone();
    }
    Ok(v)
}

impl fmt::Display for TruncatedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "<{}> up to degree {}", gens.join(", "), self.degree_bound)
    }
}
