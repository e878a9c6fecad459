//! Ideals of the Jacobson algebra `B = K<x,y>/(xy − 1)`.
//!
//! `π: B → K[z, z⁻¹]`, `y ↦ z`, `x ↦ z⁻¹` sends `y^i x^j` to `z^(i−j)`. Its
//! kernel is the socle, spanned by the matrix units `y^i x^j − y^(i+1) x^(j+1)`.
//! Every nonzero ideal contains the socle, so the nonzero ideals are the
//! socle and the preimages `π⁻¹(f)` of principal Laurent ideals.

use std::collections::BTreeMap;
use std::fmt;

use super::OracleError;
use crate::algebra::{AlgebraElement, AlgebraKind};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{rref, Matrix, Vector};
use crate::separator::Subspace;

/// A Laurent polynomial in `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    spec: FieldSpec,
    terms: BTreeMap<i64, FieldElement>,
}

impl LaurentPoly {
    pub fn zero(spec: FieldSpec) -> Self {
        LaurentPoly { spec, terms: BTreeMap::new() }
    }

    pub fn from_terms(spec: FieldSpec, terms: impl IntoIterator<Item = (i64, FieldElement)>) -> Self {
        let mut out = Self::zero(spec);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// `Σ coeffs[i]·z^(lowest + i)`.
    pub fn from_integers(spec: FieldSpec, lowest: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(spec, coeffs.iter().enumerate().map(|(i, &c)| (lowest + i as i64, spec.from_i64(c))))
    }

    fn add_term(&mut self, k: i64, c: FieldElement) {
        let sum = match self.terms.remove(&k) {
            Some(prev) => &prev + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldElement)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.spec);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    /// Generator of the same principal ideal: lowest exponent 0, monic.
    pub fn normalized(&self) -> Option<Self> {
        let (&low, _) = self.terms.iter().next()?;
        let lead = self.terms.values().next_back()?.inv().expect("nonzero");
        Some(Self::from_terms(self.spec, self.terms.iter().map(|(k, c)| (k - low, c * &lead))))
    }

    /// Degree of the normalized generator.
    pub fn width(&self) -> Option<usize> {
        let low = *self.terms.keys().next()?;
        let high = *self.terms.keys().next_back()?;
        Some((high - low) as usize)
    }

    /// Dense coefficients of `z^shift · self`, which must be a polynomial.
    fn shifted(&self, shift: i64) -> Vector {
        let top = self.terms.keys().next_back().map_or(0, |k| k + shift + 1);
        let mut out = vec![self.spec.zero(); top.max(0) as usize];
        for (k, c) in &self.terms {
            out[(k + shift) as usize] = c.clone();
        }
        out
    }

    /// `f | g` in `K[z, z⁻¹]`.
    pub fn divides(&self, g: &Self) -> bool {
        if g.is_zero() {
            return true;
        }
        let Some(f) = self.normalized() else {
            return false;
        };
        let low = *g.terms.keys().next().expect("nonzero");
        remainder(&g.shifted(-low), &f.shifted(0)).iter().all(FieldElement::is_zero)
    }
}

/// `g mod f` for monic `f` of degree `n`, as `n` coefficients.
fn remainder(g: &[FieldElement], f: &[FieldElement]) -> Vector {
    let n = f.len() - 1;
    let mut r = g.to_vec();
    for top in (n..r.len()).rev() {
        let c = r[top].clone();
        if c.is_zero() {
            continue;
        }
        for (i, fi) in f.iter().enumerate() {
            if !fi.is_zero() {
                r[top - n + i] = &r[top - n + i] - &(&c * fi);
            }
        }
    }
    r.resize(n, f[0].spec().zero());
    r
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.prints_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if abs.is_atomic() { abs.to_string() } else { format!("({abs})") };
            let z = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            match (z.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{z}")?,
                (false, false) => write!(f, "{coeff}*{z}")?,
            }
        }
        Ok(())
    }
}

/// `π(a)`.
pub fn laurent_image(a: &AlgebraElement) -> Result<LaurentPoly, OracleError> {
    if a.algebra().kind() != AlgebraKind::Jacobson {
        return Err(OracleError::WrongAlgebra { expected: "the Jacobson algebra", actual: a.algebra().to_string() });
    }
    let spec = a.algebra().spec();
    Ok(LaurentPoly::from_terms(
        spec,
        a.terms().map(|(w, c)| {
            let ys = w.letters().iter().filter(|&&l| l == 1).count() as i64;
            (2 * ys - w.degree() as i64, c.clone())
        }),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobsonIdeal {
    Zero,
    /// `ker π`, the smallest nonzero ideal.
    Socle,
    /// `π⁻¹(f·K[z, z⁻¹])`; `f` is stored normalized.
    Preimage(LaurentPoly),
}

impl JacobsonIdeal {
    pub fn preimage(f: &LaurentPoly) -> Result<Self, OracleError> {
        f.normalized().map(JacobsonIdeal::Preimage).ok_or(OracleError::InvalidBound)
    }

    pub fn contains(&self, a: &AlgebraElement) -> Result<bool, OracleError> {
        let image = laurent_image(a)?;
        Ok(match self {
            JacobsonIdeal::Zero => a.is_zero(),
            JacobsonIdeal::Socle => image.is_zero(),
            JacobsonIdeal::Preimage(f) => f.divides(&image),
        })
    }

    /// Whether some nonzero element of `space` lies in the ideal: the map
    /// `b ↦ z^M·π(b) mod f` on `space` has a nonzero kernel.
    pub fn meets(&self, space: &Subspace) -> Result<bool, OracleError> {
        if space.is_zero() {
            return Ok(false);
        }
        let images: Vec<LaurentPoly> = space.elements().iter().map(laurent_image).collect::<Result<_, _>>()?;
        let spec = space.algebra().spec();
        let low = images.iter().filter_map(|p| p.terms.keys().next().copied()).min().unwrap_or(0);
        let cols: Vec<Vector> = match self {
            JacobsonIdeal::Zero => return Ok(false),
            JacobsonIdeal::Socle => {
                let high = images.iter().filter_map(|p| p.terms.keys().next_back().copied()).max().unwrap_or(0);
                let rows = (high - low + 1).max(0) as usize;
                images
                    .iter()
                    .map(|p| {
                        let mut v = p.shifted(-low);
                        v.resize(rows, spec.zero());
                        v
                    })
                    .collect()
            }
            JacobsonIdeal::Preimage(f) => {
                let f = f.shifted(0);
                images.iter().map(|p| remainder(&p.shifted(-low), &f)).collect()
            }
        };
        let rows = cols[0].len();
        if rows == 0 {
            return Ok(true);
        }
        let (_, rank) = rref(&Matrix::from_columns(spec, rows, &cols).expect("consistent shape"));
        Ok(rank < space.dim())
    }
}

impl fmt::Display for JacobsonIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JacobsonIdeal::Zero => write!(f, "Zero"),
            JacobsonIdeal::Socle => write!(f, "Socle"),
            JacobsonIdeal::Preimage(p) => write!(f, "Preimage({p})"),
        }
    }
}

/// Normalized `f` (monic, nonzero constant term) with coefficients drawn
/// from `coefficients` and at most `max_width` terms, by width and then by
/// coefficient choice in the given order.
pub fn laurent_grid(spec: FieldSpec, coefficients: &[i64], max_width: usize) -> Vec<LaurentPoly> {
    let mut out: Vec<LaurentPoly> = Vec::new();
    for width in 1..=max_width {
        let inner = width.saturating_sub(2);
        let mut choices: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..inner {
            choices = choices
                .into_iter()
                .flat_map(|prefix| {
                    coefficients.iter().map(move |&c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        let constants: Vec<i64> = if width == 1 { vec![1] } else { coefficients.to_vec() };
        for &c0 in &constants {
            for middle in &choices {
                let mut coeffs = vec![c0];
                coeffs.extend(middle);
                if width > 1 {
                    coeffs.push(1);
                }
                let p = LaurentPoly::from_integers(spec, 0, &coeffs);
                let Some(n) = p.normalized() else { continue };
                if n.width() == Some(width - 1) && n == p && !out.contains(&n) {
                    out.push(n);
                }
            }
        }
    }
    out
}
