use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Algebra, AlgebraError, AlgebraKind, Word};
use crate::field::FieldElement;

/// A finite linear combination of normal-form words.
///
/// No stored coefficient is zero; the zero element has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: Algebra,
    terms: BTreeMap<Word, FieldElement>,
}

impl AlgebraElement {
    pub fn zero(algebra: &Algebra) -> Self {
        AlgebraElement { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    pub fn from_word(algebra: &Algebra, w: Word) -> Self {
        Self::from_terms(algebra, [(w, algebra.spec().one())])
    }

    /// Sum of `c·w` over the given pairs; repeated words are combined.
    pub fn from_terms(algebra: &Algebra, terms: impl IntoIterator<Item = (Word, FieldElement)>) -> Self {
        let mut out = Self::zero(algebra);
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &FieldElement) {
        assert_eq!(c.spec(), self.algebra.spec(), "coefficient from the wrong field");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &FieldElement)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> FieldElement {
        self.terms.get(w).cloned().unwrap_or_else(|| self.algebra.spec().zero())
    }

    /// Largest word in the support.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.values().next_back()
    }

    /// Maximum word degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.leading_word().map(Word::degree)
    }

    /// `Some(c)` when the element equals `c·1`.
    pub fn as_scalar(&self) -> Option<FieldElement> {
        let spec = self.algebra.spec();
        if self.is_zero() {
            return Some(spec.zero());
        }
        let c = self.terms.values().next().expect("nonempty").clone();
        (self.algebra.scalar(c.clone()) == *self).then_some(c)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.algebra);
        }
        AlgebraElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.algebra.check_same(&other.algebra)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    /// Exact normal-form product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.algebra.check_same(&other.algebra)?;
        let mut acc = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                self.algebra.mul_words_into(wa, wb, &(ca * cb), &mut acc);
            }
        }
        Ok(AlgebraElement { algebra: self.algebra.clone(), terms: acc })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.algebra.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Every coefficient lies in the prime subfield.
    pub fn has_prime_field_coefficients(&self) -> bool {
        self.terms.values().all(FieldElement::is_prime_field_element)
    }

    /// Terms in display order: highest degree first, lexicographic within a
    /// degree.
    pub fn display_terms(&self) -> Vec<(&Word, &FieldElement)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree.cmp(&a.degree).then_with(|| a.letters.cmp(&b.letters)));
        terms
    }

    /// First coefficient in display order.
    pub fn display_leading_coefficient(&self) -> Option<&FieldElement> {
        self.display_terms().first().map(|(_, c)| *c)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let is_matrix = matches!(self.algebra.kind(), AlgebraKind::Matrix { .. });
        for (i, (w, c)) in self.display_terms().into_iter().enumerate() {
            let neg = c.prints_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_unit_word = w.letters.is_empty() && !is_matrix;
            let coeff = if abs.is_atomic() { abs.to_string() } else { format!("({abs})") };
            if is_unit_word {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", self.algebra.format_word(w))?;
            } else {
                write!(f, "{coeff}*{}", self.algebra.format_word(w))?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);
