use std::fmt;

use super::OracleError;
use crate::algebra::{Algebra, AlgebraElement, Derivation, Word};
use crate::separator::Subspace;

/// A monomial ideal of a polynomial ring, given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    algebra: Algebra,
    generators: Vec<Word>,
}

impl MonomialIdeal {
    /// The ideal generated by `generators`, reduced to its minimal antichain.
    pub fn new(algebra: &Algebra, generators: Vec<Word>) -> Result<Self, OracleError> {
        algebra.require_comm_poly()?;
        let mut minimal: Vec<Word> = Vec::new();
        let mut sorted = generators;
        sorted.sort();
        sorted.dedup();
        for g in sorted {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        Ok(MonomialIdeal { algebra: algebra.clone(), generators: minimal })
    }

    /// Generators from literals; each must be a single monomial.
    pub fn parse<S: AsRef<str>>(algebra: &Algebra, literals: &[S]) -> Result<Self, OracleError> {
        let mut words = Vec::new();
        for lit in literals {
            let e = algebra.parse(lit.as_ref())?;
            let mut terms = e.terms();
            match (terms.next(), terms.next()) {
                (Some((w, _)), None) => words.push(w.clone()),
                _ => return Err(OracleError::NotMonomial(lit.as_ref().to_string())),
            }
        }
        Self::new(algebra, words)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn contains_monomial(&self, w: &Word) -> bool {
        self.generators.iter().any(|g| g.divides(w))
    }

    /// Every monomial of `f` is divisible by a generator.
    pub fn contains(&self, f: &AlgebraElement) -> Result<bool, OracleError> {
        self.algebra.check_same(f.algebra())?;
        Ok(f.terms().all(|(w, _)| self.contains_monomial(w)))
    }

    /// An element of `space` lies in the ideal iff it is supported on
    /// monomials of the ideal, so intersect with their span.
    pub fn meets(&self, space: &Subspace) -> Result<bool, OracleError> {
        self.algebra.check_same(space.algebra())?;
        let inside: Vec<AlgebraElement> = space
            .words()
            .iter()
            .filter(|w| self.contains_monomial(w))
            .map(|w| AlgebraElement::from_word(&self.algebra, w.clone()))
            .collect();
        if inside.is_empty() {
            return Ok(false);
        }
        let span = Subspace::from_elements(&self.algebra, &inside)?;
        Ok(!space.intersect(&span)?.is_zero())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|w| AlgebraElement::from_word(&self.algebra, w.clone()).to_string())
            .collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// Every nonzero monomial ideal whose minimal generators have degree at
/// most `bound`, ordered by number of generators and then by generator list.
pub fn enumerate_monomial_ideals(algebra: &Algebra, bound: u32) -> Result<Vec<MonomialIdeal>, OracleError> {
    algebra.require_comm_poly()?;
    if bound == 0 {
        return Err(OracleError::InvalidBound);
    }
    let monomials = algebra.words_up_to_degree(bound);
    let mut antichains: Vec<Vec<Word>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    extend_antichains(&monomials, 0, &mut current, &mut antichains);
    antichains.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(antichains
        .into_iter()
        .map(|generators| MonomialIdeal { algebra: algebra.clone(), generators })
        .collect())
}

fn extend_antichains(monomials: &[Word], start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<Word>>) {
    for i in start..monomials.len() {
        let m = &monomials[i];
        if current.iter().any(|&c| monomials[c].divides(m) || m.divides(&monomials[c])) {
            continue;
        }
        current.push(i);
        out.push(current.iter().map(|&c| monomials[c].clone()).collect());
        extend_antichains(monomials, i + 1, current, out);
        current.pop();
    }
}

/// `D(m) ∈ I` for every generator `m` and every `D`. By the Leibniz rule
/// this is equivalent to `D(I) ⊆ I`.
pub fn diff_closure_check(ideal: &MonomialIdeal, ds: &[Derivation]) -> Result<bool, OracleError> {
    for d in ds {
        ideal.algebra.check_same(d.algebra())?;
        for g in &ideal.generators {
            let image = d.apply(&AlgebraElement::from_word(&ideal.algebra, g.clone()))?;
            if !ideal.contains(&image)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The monomial ideals of [`enumerate_monomial_ideals`] that are closed
/// under `ds`, with the number of ideals dropped.
pub fn differential_monomial_ideals(
    algebra: &Algebra,
    ds: &[Derivation],
    bound: u32,
) -> Result<(Vec<MonomialIdeal>, usize), OracleError> {
    let all = enumerate_monomial_ideals(algebra, bound)?;
    let total = all.len();
    let mut kept = Vec::with_capacity(total);
    for ideal in all {
        if diff_closure_check(&ideal, ds)? {
            kept.push(ideal);
        }
    }
    let dropped = total - kept.len();
    Ok((kept, dropped))
}

/// `f / g` in a polynomial ring if `g` divides `f`.
///
/// Division by a single polynomial: if the leading monomial of `g` fails to
/// divide that of the running remainder, that term can never cancel.
pub fn exact_quotient(f: &AlgebraElement, g: &AlgebraElement) -> Result<Option<AlgebraElement>, OracleError> {
    let algebra = f.algebra();
    let variables = algebra.require_comm_poly()?;
    algebra.check_same(g.algebra())?;
    let (Some(lead_g), Some(lc_g)) = (g.leading_word(), g.leading_coefficient()) else {
        return Ok(f.is_zero().then(|| algebra.zero()));
    };
    let lead_exps = lead_g.exponents(variables);
    let mut quotient = algebra.zero();
    let mut rem = f.clone();
    while let (Some(lead_r), Some(lc_r)) = (rem.leading_word(), rem.leading_coefficient()) {
        if !lead_g.divides(lead_r) {
            return Ok(None);
        }
        let monomial = lead_r
            .exponents(variables)
            .iter()
            .zip(&lead_exps)
            .enumerate()
            .fold(algebra.one(), |acc, (j, (a, b))| &acc * &algebra.generator(j).pow(a - b));
        let term = monomial.scale(&(lc_r / lc_g));
        rem = &rem - &(&term * g);
        quotient = &quotient + &term;
    }
    Ok(Some(quotient))
}
