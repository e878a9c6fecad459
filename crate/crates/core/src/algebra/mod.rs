//! Presented associative algebras with exact normal-form arithmetic.
//!
//! Every supported presentation has a basis of normal-form words, listed in
//! graded order: total degree first, then lexicographic on letters in the
//! declared generator order.
//!
//! | algebra | generators | normal forms |
//! |---|---|---|
//! | free `F_n` | `n` letters | all words |
//! | Jacobson `K<x,y>/(xy - 1)` | `x, y` | `y^i x^j` |
//! | Weyl `K<q,p>/(pq - qp - 1)` | `q, p` | `q^i p^j` |
//! | matrices `M_n(K)` | units `E_kl` | single units |
//! | polynomials `K[x_1..x_m]` | `m` variables | sorted words |

mod derivation;
mod element;
mod module;
mod rewrite;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num::BigInt;
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::literal::ParseError;

pub use derivation::Derivation;
pub use element::AlgebraElement;
pub use module::{ModuleAction, ModuleVector};
pub use rewrite::RewriteStrategy;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("{algebra} requires characteristic 0, got {spec}")]
    CharacteristicUnsupported { algebra: String, spec: FieldSpec },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("{0} is not a commutative polynomial ring")]
    NotCommutative(String),
    #[error("{0} has no shipped faithful module")]
    NoModule(String),
    #[error("a derivation needs {expected} images, got {actual}")]
    DerivationArity { expected: usize, actual: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Free { generators: usize },
    Jacobson,
    Weyl,
    Matrix { size: usize },
    CommPoly { variables: usize },
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Free { generators } => write!(f, "free({generators})"),
            AlgebraKind::Jacobson => write!(f, "jacobson"),
            AlgebraKind::Weyl => write!(f, "weyl"),
            AlgebraKind::Matrix { size } => write!(f, "matrix({size})"),
            AlgebraKind::CommPoly { variables } => write!(f, "commpoly({variables})"),
        }
    }
}

/// A normal-form basis word.
///
/// `letters` are generator indices. The derived order (degree, then
/// letters) is the graded-lex word order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    degree: u32,
    letters: Vec<u32>,
}

impl Word {
    pub fn empty() -> Self {
        Word { degree: 0, letters: Vec::new() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// Exponent of each letter, for commutative monomials.
    pub fn exponents(&self, variables: usize) -> Vec<u32> {
        let mut e = vec![0; variables];
        for &l in &self.letters {
            e[l as usize] += 1;
        }
        e
    }

    /// Monomial divisibility (`self | other`) for sorted commutative words.
    pub fn divides(&self, other: &Word) -> bool {
        let mut it = other.letters.iter().peekable();
        'outer: for l in &self.letters {
            for &o in it.by_ref() {
                if o == *l {
                    continue 'outer;
                }
                if o > *l {
                    return false;
                }
            }
            return false;
        }
        true
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Presentation {
    kind: AlgebraKind,
    spec: FieldSpec,
    names: Vec<String>,
}

/// Shared, immutable descriptor of a presented algebra.
#[derive(Clone)]
pub struct Algebra(Arc<Presentation>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {} <{}>", self.0.kind, self.0.spec, self.0.names.join(","))
    }
}

fn default_names(kind: AlgebraKind) -> Vec<String> {
    const LETTERS: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    let seq = |n: usize| -> Vec<String> {
        if n <= LETTERS.len() {
            LETTERS[..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        }
    };
    match kind {
        AlgebraKind::Free { generators } => seq(generators),
        AlgebraKind::CommPoly { variables } => seq(variables),
        AlgebraKind::Jacobson => vec!["x".into(), "y".into()],
        AlgebraKind::Weyl => vec!["q".into(), "p".into()],
        AlgebraKind::Matrix { size } => {
            let mut out = Vec::with_capacity(size * size);
            for k in 1..=size {
                for l in 1..=size {
                    out.push(if size <= 9 { format!("E{k}{l}") } else { format!("E{k}_{l}") });
                }
            }
            out
        }
    }
}

impl Algebra {
    /// Presentation with the default generator names.
    pub fn new(kind: AlgebraKind, spec: FieldSpec) -> Result<Self, AlgebraError> {
        Self::with_names(kind, spec, default_names(kind))
    }

    pub fn with_names(kind: AlgebraKind, spec: FieldSpec, names: Vec<String>) -> Result<Self, AlgebraError> {
        let invalid = |m: String| Err(AlgebraError::InvalidPresentation(m));
        match kind {
            AlgebraKind::Free { generators: 0 } => return invalid("free algebra needs a generator".into()),
            AlgebraKind::Matrix { size: 0 } => return invalid("matrix size must be positive".into()),
            AlgebraKind::CommPoly { variables: 0 } => {
                return invalid("polynomial ring needs a variable".into())
            }
            AlgebraKind::Weyl if spec.characteristic() != 0 => {
                return Err(AlgebraError::CharacteristicUnsupported { algebra: "weyl".into(), spec })
            }
            _ => {}
        }
        let expected = default_names(kind).len();
        if names.len() != expected {
            return invalid(format!("{kind} needs {expected} generator names, got {}", names.len()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return invalid(format!("generator name {n:?} is not an identifier"));
            }
            if spec == FieldSpec::RationalFunctions && n == "t" {
                return invalid("\"t\" is reserved for the field Q(t)".into());
            }
            if !seen.insert(n) {
                return invalid(format!("duplicate generator name {n:?}"));
            }
        }
        Ok(Algebra(Arc::new(Presentation { kind, spec, names })))
    }

    pub fn free(generators: usize, spec: FieldSpec) -> Result<Self, AlgebraError> {
        Self::new(AlgebraKind::Free { generators }, spec)
    }

    pub fn jacobson(spec: FieldSpec) -> Self {
        Self::new(AlgebraKind::Jacobson, spec).expect("valid in every characteristic")
    }

    pub fn weyl(spec: FieldSpec) -> Result<Self, AlgebraError> {
        Self::new(AlgebraKind::Weyl, spec)
    }

    pub fn matrix(size: usize, spec: FieldSpec) -> Result<Self, AlgebraError> {
        Self::new(AlgebraKind::Matrix { size }, spec)
    }

    pub fn comm_poly(variables: usize, spec: FieldSpec) -> Result<Self, AlgebraError> {
        Self::new(AlgebraKind::CommPoly { variables }, spec)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.0.kind
    }

    pub fn spec(&self) -> FieldSpec {
        self.0.spec
    }

    pub fn generator_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn generator_count(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_commutative(&self) -> bool {
        matches!(self.0.kind, AlgebraKind::CommPoly { .. } | AlgebraKind::Free { generators: 1 })
            || matches!(self.0.kind, AlgebraKind::Matrix { size: 1 })
    }

    pub fn is_finite_dimensional(&self) -> bool {
        matches!(self.0.kind, AlgebraKind::Matrix { .. })
    }

    pub(crate) fn check_same(&self, other: &Algebra) -> Result<(), AlgebraError> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch(self.to_string(), other.to_string()))
        }
    }

    pub(crate) fn require_comm_poly(&self) -> Result<usize, AlgebraError> {
        match self.0.kind {
            AlgebraKind::CommPoly { variables } => Ok(variables),
            _ => Err(AlgebraError::NotCommutative(self.to_string())),
        }
    }

    fn word(&self, letters: Vec<u32>) -> Word {
        let degree = match self.0.kind {
            AlgebraKind::Matrix { .. } => 0,
            _ => letters.len() as u32,
        };
        Word { degree, letters }
    }

    /// Normal-form words of exactly degree `d`, ascending.
    pub fn words_of_degree(&self, d: u32) -> Vec<Word> {
        let d_us = d as usize;
        let mut out: Vec<Word> = match self.0.kind {
            AlgebraKind::Free { generators } => {
                let n = generators as u32;
                let total = (generators as u128).checked_pow(d).expect("word count overflow");
                (0..total)
                    .map(|mut idx| {
                        let mut letters = vec![0u32; d_us];
                        for slot in letters.iter_mut().rev() {
                            *slot = (idx % n as u128) as u32;
                            idx /= n as u128;
                        }
                        self.word(letters)
                    })
                    .collect()
            }
            AlgebraKind::Jacobson | AlgebraKind::Weyl => {
                // Jacobson: y^i x^(d-i) with x=0, y=1; Weyl: q^i p^(d-i) with q=0, p=1.
                let (first, second) = match self.0.kind {
                    AlgebraKind::Jacobson => (1, 0),
                    _ => (0, 1),
                };
                (0..=d_us)
                    .map(|i| {
                        let mut letters = vec![first; i];
                        letters.extend(std::iter::repeat_n(second, d_us - i));
                        self.word(letters)
                    })
                    .collect()
            }
            AlgebraKind::Matrix { size } => {
                if d == 0 {
                    (0..(size * size) as u32).map(|g| self.word(vec![g])).collect()
                } else {
                    Vec::new()
                }
            }
            AlgebraKind::CommPoly { variables } => {
                let mut out = Vec::new();
                let mut current = Vec::with_capacity(d_us);
                fn rec(start: u32, m: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                    if left == 0 {
                        out.push(cur.clone());
                        return;
                    }
                    for l in start..m {
                        cur.push(l);
                        rec(l, m, left - 1, cur, out);
                        cur.pop();
                    }
                }
                rec(0, variables as u32, d_us, &mut current, &mut out);
                out.into_iter().map(|l| self.word(l)).collect()
            }
        };
        out.sort();
        out
    }

    /// Every normal-form word of degree at most `d`, ascending. This is
    /// the coordinate system of the degree filtration `L_d`.
    pub fn words_up_to_degree(&self, d: u32) -> Vec<Word> {
        (0..=d).flat_map(|k| self.words_of_degree(k)).collect()
    }

    /// `dim L_d`.
    pub fn dimension_up_to_degree(&self, d: u32) -> usize {
        self.words_up_to_degree(d).len()
    }

    /// The first `count` normal-form basis words in word order (fewer if
    /// the algebra is finite-dimensional).
    pub fn basis_words(&self, count: usize) -> Vec<Word> {
        let mut out = Vec::with_capacity(count);
        let mut d = 0;
        while out.len() < count {
            let words = self.words_of_degree(d);
            if words.is_empty() && self.is_finite_dimensional() {
                break;
            }
            out.extend(words.into_iter().take(count - out.len()));
            d += 1;
        }
        out
    }

    /// `enumerate_basis`: the first `count` basis words as elements.
    pub fn enumerate_basis(&self, count: usize) -> Vec<AlgebraElement> {
        self.basis_words(count).into_iter().map(|w| AlgebraElement::from_word(self, w)).collect()
    }

    /// Accumulate `coeff · a · b` in normal form.
    pub(crate) fn mul_words_into(
        &self,
        a: &Word,
        b: &Word,
        coeff: &FieldElement,
        acc: &mut std::collections::BTreeMap<Word, FieldElement>,
    ) {
        let mut push = |w: Word, c: FieldElement| {
            if c.is_zero() {
                return;
            }
            match acc.entry(w) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        };
        match self.0.kind {
            AlgebraKind::Free { .. } => {
                let mut letters = a.letters.clone();
                letters.extend_from_slice(&b.letters);
                push(self.word(letters), coeff.clone());
            }
            AlgebraKind::CommPoly { .. } => {
                let mut letters = a.letters.clone();
                letters.extend_from_slice(&b.letters);
                letters.sort_unstable();
                push(self.word(letters), coeff.clone());
            }
            AlgebraKind::Jacobson => {
                let (ya, xa) = split_counts(&a.letters, 1);
                let (yb, xb) = split_counts(&b.letters, 1);
                let (y, x) = if xa >= yb { (ya, xa - yb + xb) } else { (ya + yb - xa, xb) };
                push(self.word(power_word(1, y, 0, x)), coeff.clone());
            }
            AlgebraKind::Weyl => {
                // q^a p^b · q^c p^d = Σ_k k!·C(b,k)·C(c,k) q^(a+c-k) p^(b+d-k)
                let (qa, pa) = split_counts(&a.letters, 0);
                let (qb, pb) = split_counts(&b.letters, 0);
                let mut c = BigInt::from(1);
                for k in 0..=pa.min(qb) {
                    if k > 0 {
                        // k!·C(pa,k)·C(qb,k) from the (k-1) term
                        c = c * BigInt::from((pa - k + 1) * (qb - k + 1)) / BigInt::from(k);
                    }
                    let scalar = self.0.spec.from_integer(&c);
                    push(self.word(power_word(0, qa + qb - k, 1, pa + pb - k)), coeff * &scalar);
                }
            }
            AlgebraKind::Matrix { size } => {
                let (ka, la) = (a.letters[0] as usize / size, a.letters[0] as usize % size);
                let (kb, lb) = (b.letters[0] as usize / size, b.letters[0] as usize % size);
                if la == kb {
                    push(self.word(vec![(ka * size + lb) as u32]), coeff.clone());
                }
            }
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self)
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(self.0.spec.one())
    }

    /// `c · 1`.
    pub fn scalar(&self, c: FieldElement) -> AlgebraElement {
        match self.0.kind {
            AlgebraKind::Matrix { size } => AlgebraElement::from_terms(
                self,
                (0..size).map(|k| (self.word(vec![(k * size + k) as u32]), c.clone())),
            ),
            _ => AlgebraElement::from_terms(self, [(Word::empty(), c)]),
        }
    }

    /// The `i`-th generator (a matrix unit for matrix algebras).
    pub fn generator(&self, i: usize) -> AlgebraElement {
        assert!(i < self.generator_count(), "generator index out of range");
        AlgebraElement::from_word(self, self.word(vec![i as u32]))
    }

    /// Parse an element literal such as `y*x^2 - x` or `(t+1)*x`.
    pub fn parse(&self, input: &str) -> Result<AlgebraElement, AlgebraError> {
        Ok(crate::literal::parse(self, input)?)
    }

    pub(crate) fn format_word(&self, w: &Word) -> String {
        if let AlgebraKind::Matrix { .. } = self.0.kind {
            return self.0.names[w.letters[0] as usize].clone();
        }
        if w.letters.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.letters.len() {
            let l = w.letters[i];
            let mut j = i;
            while j < w.letters.len() && w.letters[j] == l {
                j += 1;
            }
            let name = &self.0.names[l as usize];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }
}

/// Counts `(n_lead, n_rest)` for a word `lead^i rest^j`.
fn split_counts(letters: &[u32], lead: u32) -> (usize, usize) {
    let i = letters.iter().take_while(|&&l| l == lead).count();
    (i, letters.len() - i)
}

fn power_word(a: u32, i: usize, b: u32, j: usize) -> Vec<u32> {
    let mut v = vec![a; i];
    v.extend(std::iter::repeat_n(b, j));
    v
}

impl crate::literal::LiteralContext for Algebra {
    type Value = AlgebraElement;

    fn integer(&self, n: BigInt) -> Result<AlgebraElement, String> {
        Ok(self.scalar(self.0.spec.from_integer(&n)))
    }

    fn symbol(&self, name: &str) -> Result<AlgebraElement, String> {
        if let Some(i) = self.0.names.iter().position(|n| n == name) {
            return Ok(self.generator(i));
        }
        if name == "t" {
            if let Ok(t) = self.0.spec.t() {
                return Ok(self.scalar(t));
            }
        }
        Err(format!("unknown generator {name:?}; declared: {}", self.0.names.join(", ")))
    }

    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, String> {
        Ok(a + b)
    }

    fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, String> {
        Ok(a - b)
    }

    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, String> {
        Ok(a * b)
    }

    fn div(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, String> {
        let c = b.as_scalar().ok_or_else(|| "division by a non-scalar".to_string())?;
        let inv = c.inv().map_err(|e| e.to_string())?;
        Ok(a.scale(&inv))
    }

    fn neg(&self, a: &AlgebraElement) -> Result<AlgebraElement, String> {
        Ok(-a)
    }
}
