use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeStruct;

use crate::algebra::{Algebra, AlgebraElement, AlgebraError, Word};
use crate::linalg::{self, EchelonBasis, Vector};

/// A finite-dimensional subspace of an algebra.
///
/// Coordinates are the words occurring in the basis, sorted from largest to
/// smallest, so reduced row echelon form pivots on leading words. Columns no
/// basis vector uses are dropped; equal subspaces therefore store identical
/// word lists and bases.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    algebra: Algebra,
    words: Vec<Word>,
    basis: EchelonBasis,
}

fn coordinates(words: &[Word], e: &AlgebraElement) -> Option<Vector> {
    let spec = e.algebra().spec();
    let mut out = vec![spec.zero(); words.len()];
    for (w, c) in e.terms() {
        let idx = words.binary_search_by(|probe| w.cmp(probe)).ok()?;
        out[idx] = c.clone();
    }
    Some(out)
}

fn descending_union<'a>(elements: impl IntoIterator<Item = &'a AlgebraElement>) -> Vec<Word> {
    let words: BTreeSet<Word> = elements.into_iter().flat_map(|e| e.terms().map(|(w, _)| w.clone())).collect();
    words.into_iter().rev().collect()
}

impl Subspace {
    pub fn zero(algebra: &Algebra) -> Self {
        Subspace { algebra: algebra.clone(), words: Vec::new(), basis: EchelonBasis::zero(algebra.spec(), 0) }
    }

    /// The span of `elements`.
    pub fn from_elements(algebra: &Algebra, elements: &[AlgebraElement]) -> Result<Self, AlgebraError> {
        for e in elements {
            algebra.check_same(e.algebra())?;
        }
        let words = descending_union(elements);
        let rows: Vec<Vector> = elements
            .iter()
            .map(|e| coordinates(&words, e).expect("support is in the union"))
            .collect();
        let basis = EchelonBasis::span(algebra.spec(), words.len(), &rows).expect("consistent shape");
        Ok(Self::compress(algebra, words, basis))
    }

    /// Parse each literal and take the span.
    pub fn parse<S: AsRef<str>>(algebra: &Algebra, literals: &[S]) -> Result<Self, AlgebraError> {
        let elements: Vec<_> = literals.iter().map(|s| algebra.parse(s.as_ref())).collect::<Result<_, _>>()?;
        Self::from_elements(algebra, &elements)
    }

    /// `L_d`: all elements of degree at most `d`.
    pub fn filtration(algebra: &Algebra, d: u32) -> Self {
        let elements: Vec<_> = algebra
            .words_up_to_degree(d)
            .into_iter()
            .map(|w| AlgebraElement::from_word(algebra, w))
            .collect();
        Self::from_elements(algebra, &elements).expect("same algebra")
    }

    fn compress(algebra: &Algebra, words: Vec<Word>, basis: EchelonBasis) -> Self {
        let used: Vec<usize> =
            (0..words.len()).filter(|&c| basis.vectors().iter().any(|v| !v[c].is_zero())).collect();
        if used.len() == words.len() {
            return Subspace { algebra: algebra.clone(), words, basis };
        }
        let rows: Vec<Vector> =
            basis.vectors().iter().map(|v| used.iter().map(|&c| v[c].clone()).collect()).collect();
        let words: Vec<Word> = used.iter().map(|&c| words[c].clone()).collect();
        let basis = EchelonBasis::span(algebra.spec(), words.len(), &rows).expect("consistent shape");
        Subspace { algebra: algebra.clone(), words, basis }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero()
    }

    /// Coordinate words, largest first.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// The canonical basis in the local coordinates of [`Subspace::words`].
    pub fn echelon(&self) -> &EchelonBasis {
        &self.basis
    }

    fn element(&self, v: &[crate::field::FieldElement]) -> AlgebraElement {
        AlgebraElement::from_terms(&self.algebra, self.words.iter().cloned().zip(v.iter().cloned()))
    }

    /// Canonical basis, ordered by decreasing leading word. Each element has
    /// leading coefficient 1 and no other basis element uses its leading word.
    pub fn elements(&self) -> Vec<AlgebraElement> {
        self.basis.vectors().iter().map(|v| self.element(v)).collect()
    }

    /// The basis element with the smallest leading word.
    pub fn smallest_leading(&self) -> Option<AlgebraElement> {
        self.basis.vectors().last().map(|v| self.element(v))
    }

    /// Largest degree occurring; `None` for the zero subspace.
    pub fn degree(&self) -> Option<u32> {
        self.words.iter().map(Word::degree).max()
    }

    pub fn contains(&self, e: &AlgebraElement) -> Result<bool, AlgebraError> {
        self.algebra.check_same(e.algebra())?;
        Ok(match coordinates(&self.words, e) {
            Some(v) => self.basis.contains(&v).expect("consistent shape"),
            None => false,
        })
    }

    fn embed(&self, words: &[Word]) -> Vec<Vector> {
        self.elements().iter().map(|e| coordinates(words, e).expect("words cover the support")).collect()
    }

    fn common_words(&self, other: &Self) -> Vec<Word> {
        let all: BTreeSet<Word> = self.words.iter().chain(&other.words).cloned().collect();
        all.into_iter().rev().collect()
    }

    pub fn sum(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.algebra.check_same(&other.algebra)?;
        let mut all = self.elements();
        all.extend(other.elements());
        Self::from_elements(&self.algebra, &all)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.algebra.check_same(&other.algebra)?;
        let words = self.common_words(other);
        let spec = self.algebra.spec();
        let a = EchelonBasis::span(spec, words.len(), &self.embed(&words)).expect("consistent shape");
        let b = EchelonBasis::span(spec, words.len(), &other.embed(&words)).expect("consistent shape");
        let meet = linalg::intersect(&a, &b).expect("consistent shape");
        Ok(Self::compress(&self.algebra, words, meet))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, AlgebraError> {
        for e in self.elements() {
            if !other.contains(&e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same subspace in the dense coordinates of `L_d`, words in
    /// ascending word order. `None` if some basis element has degree above `d`.
    pub fn in_filtration_coordinates(&self, d: u32) -> Option<EchelonBasis> {
        let mut words = self.algebra.words_up_to_degree(d);
        words.sort();
        let spec = self.algebra.spec();
        let mut rows = Vec::with_capacity(self.dim());
        for e in self.elements() {
            let mut v = vec![spec.zero(); words.len()];
            for (w, c) in e.terms() {
                v[words.binary_search(w).ok()?] = c.clone();
            }
            rows.push(v);
        }
        Some(EchelonBasis::span(spec, words.len(), &rows).expect("consistent shape"))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(ToString::to_string).collect();
        write!(f, "span{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({self})")
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Subspace", 2)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("basis", &self.elements())?;
        s.end()
    }
}
