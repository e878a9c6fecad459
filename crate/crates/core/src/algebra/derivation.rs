use std::fmt;

use super::{Algebra, AlgebraElement, AlgebraError, Word};

/// A derivation of a polynomial ring, determined by the images of the
/// variables and extended by linearity and the Leibniz rule.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    algebra: Algebra,
    images: Vec<AlgebraElement>,
}

impl Derivation {
    pub fn new(algebra: &Algebra, images: Vec<AlgebraElement>) -> Result<Self, AlgebraError> {
        let variables = algebra.require_comm_poly()?;
        if images.len() != variables {
            return Err(AlgebraError::DerivationArity { expected: variables, actual: images.len() });
        }
        for im in &images {
            algebra.check_same(im.algebra())?;
        }
        Ok(Derivation { algebra: algebra.clone(), images })
    }

    /// Parse one image literal per variable, e.g. `["x", "0"]` for `x·∂/∂x`
    /// on `K[x, y]`.
    pub fn parse<S: AsRef<str>>(algebra: &Algebra, images: &[S]) -> Result<Self, AlgebraError> {
        let images = images.iter().map(|s| algebra.parse(s.as_ref())).collect::<Result<_, _>>()?;
        Self::new(algebra, images)
    }

    /// `x_j · ∂/∂x_j`.
    pub fn euler(algebra: &Algebra, var: usize) -> Result<Self, AlgebraError> {
        let variables = algebra.require_comm_poly()?;
        let images = (0..variables)
            .map(|j| if j == var { algebra.generator(j) } else { algebra.zero() })
            .collect();
        Self::new(algebra, images)
    }

    /// `∂/∂x_j`.
    pub fn partial(algebra: &Algebra, var: usize) -> Result<Self, AlgebraError> {
        let variables = algebra.require_comm_poly()?;
        let images = (0..variables)
            .map(|j| if j == var { algebra.one() } else { algebra.zero() })
            .collect();
        Self::new(algebra, images)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn images(&self) -> &[AlgebraElement] {
        &self.images
    }

    /// True when every variable is an eigenvector: `D(x_j) ∈ K·x_j`. Such
    /// derivations send each monomial to a multiple of itself, so every
    /// monomial ideal is closed under them.
    pub fn is_diagonal(&self) -> bool {
        self.images.iter().enumerate().all(|(j, im)| {
            im.terms().all(|(w, _)| w.letters() == [j as u32])
        })
    }

    /// Largest degree of a variable image.
    pub fn image_degree(&self) -> u32 {
        self.images.iter().filter_map(AlgebraElement::degree).max().unwrap_or(0)
    }

    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.algebra.check_same(f.algebra())?;
        let spec = self.algebra.spec();
        let mut out = self.algebra.zero();
        for (w, c) in f.terms() {
            let letters = w.letters();
            let mut i = 0;
            while i < letters.len() {
                let var = letters[i];
                let mut j = i;
                while j < letters.len() && letters[j] == var {
                    j += 1;
                }
                // ∂/∂x_var of the monomial, times D(x_var)
                let exponent = spec.from_i64((j - i) as i64);
                let mut rest = letters.to_vec();
                rest.remove(i);
                let cofactor = AlgebraElement::from_terms(
                    &self.algebra,
                    [(Word { degree: rest.len() as u32, letters: rest }, c * &exponent)],
                );
                out = &out + &(&cofactor * &self.images[var as usize]);
                i = j;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.algebra.generator_names();
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, im)| !im.is_zero())
            .map(|(j, im)| {
                let op = format!("d/d{}", names[j]);
                if im.as_scalar().is_some_and(|c| c.is_one()) {
                    op
                } else if im.len() == 1 {
                    format!("{im}*{op}")
                } else {
                    format!("({im})*{op}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({self})")
    }
}
