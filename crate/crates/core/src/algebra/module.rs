use std::collections::BTreeMap;

use super::{Algebra, AlgebraElement, AlgebraError, AlgebraKind};
use crate::field::FieldElement;

/// Finite-support vector in the module basis `e_0, e_1, …`.
pub type ModuleVector = BTreeMap<usize, FieldElement>;

/// A faithful simple module for the primitive test algebras.
///
/// - Jacobson: the shift module, `y·e_k = e_{k+1}`, `x·e_{k+1} = e_k`,
///   `x·e_0 = 0`.
/// - Weyl: `K[s]` with basis `e_k = s^k`, `q` multiplying by `s` and `p`
///   differentiating.
/// - Matrices: the column space `K^n`.
///
/// Only used for diagnostics; separation never consults it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleAction {
    algebra: Algebra,
}

impl ModuleAction {
    pub fn new(algebra: &Algebra) -> Result<Self, AlgebraError> {
        match algebra.kind() {
            AlgebraKind::Jacobson | AlgebraKind::Weyl | AlgebraKind::Matrix { .. } => {
                Ok(ModuleAction { algebra: algebra.clone() })
            }
            _ => Err(AlgebraError::NoModule(algebra.to_string())),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn basis_vector(&self, k: usize) -> ModuleVector {
        ModuleVector::from([(k, self.algebra.spec().one())])
    }

    /// Number of module basis vectors, if finite.
    pub fn dimension(&self) -> Option<usize> {
        match self.algebra.kind() {
            AlgebraKind::Matrix { size } => Some(size),
            _ => None,
        }
    }

    fn act_letter(&self, letter: u32, v: &ModuleVector) -> ModuleVector {
        let spec = self.algebra.spec();
        let mut out = ModuleVector::new();
        let mut push = |k: usize, c: FieldElement| {
            if c.is_zero() {
                return;
            }
            let sum = match out.get(&k) {
                Some(prev) => prev + &c,
                None => c,
            };
            if sum.is_zero() {
                out.remove(&k);
            } else {
                out.insert(k, sum);
            }
        };
        for (&k, c) in v {
            match (self.algebra.kind(), letter) {
                (AlgebraKind::Jacobson, 0) => {
                    if k > 0 {
                        push(k - 1, c.clone());
                    }
                }
                (AlgebraKind::Jacobson, _) => push(k + 1, c.clone()),
                (AlgebraKind::Weyl, 0) => push(k + 1, c.clone()),
                (AlgebraKind::Weyl, _) => {
                    if k > 0 {
                        push(k - 1, c * &spec.from_i64(k as i64));
                    }
                }
                (AlgebraKind::Matrix { size }, g) => {
                    let (row, col) = (g as usize / size, g as usize % size);
                    if col == k {
                        push(row, c.clone());
                    }
                }
                _ => unreachable!("constructor rejects other algebras"),
            }
        }
        out
    }

    /// `a · v`.
    pub fn act(&self, a: &AlgebraElement, v: &ModuleVector) -> Result<ModuleVector, AlgebraError> {
        self.algebra.check_same(a.algebra())?;
        let mut out = ModuleVector::new();
        for (w, c) in a.terms() {
            let mut cur = v.clone();
            for &l in w.letters().iter().rev() {
                cur = self.act_letter(l, &cur);
            }
            for (k, e) in cur {
                let sum = match out.get(&k) {
                    Some(prev) => prev + &(c * &e),
                    None => c * &e,
                };
                if sum.is_zero() {
                    out.remove(&k);
                } else {
                    out.insert(k, sum);
                }
            }
        }
        Ok(out)
    }

    /// True iff `a` acts nonzero on one of the first `n_probe` basis
    /// vectors. `false` only means the probe window is annihilated.
    pub fn faithfulness_probe(&self, a: &AlgebraElement, n_probe: usize) -> Result<bool, AlgebraError> {
        let n = self.dimension().map_or(n_probe, |d| d.min(n_probe));
        for k in 0..n {
            if !self.act(a, &self.basis_vector(k))?.is_empty() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
