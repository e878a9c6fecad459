//! Independent ideal families for checking separator output.
//!
//! Membership here never reuses the separator's linear algebra where a more
//! direct rule exists: monomial ideals use divisibility, Jacobson ideals use
//! the Laurent quotient. Truncated ideals fall back to spanning sets.

mod jacobson;
mod monomial;
mod truncated;
mod witness;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError};
use crate::field::FieldError;
use crate::separator::{SeparationMode, SeparationResult, Subspace, TraceNode, TraceStep};

pub use jacobson::{laurent_grid, laurent_image, JacobsonIdeal, LaurentPoly};
pub use monomial::{
    diff_closure_check, differential_monomial_ideals, enumerate_monomial_ideals, exact_quotient, MonomialIdeal,
};
pub use truncated::TruncatedIdeal;
pub use witness::{prime_field_witness, witness_by_deepening, WitnessSearch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBoundExceeded { degree: u32, bound: u32 },
    #[error("{0} is not a monomial")]
    NotMonomial(String),
    #[error("expected {expected}, got {actual}")]
    WrongAlgebra { expected: &'static str, actual: String },
    #[error("bounds must be at least 1 and Laurent generators nonzero")]
    InvalidBound,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Any ideal the oracles can test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealDescriptor {
    Zero,
    Whole,
    Monomial(MonomialIdeal),
    Jacobson(JacobsonIdeal),
    Truncated(TruncatedIdeal),
}

impl fmt::Display for IdealDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealDescriptor::Zero => write!(f, "(0)"),
            IdealDescriptor::Whole => write!(f, "(1)"),
            IdealDescriptor::Monomial(i) => write!(f, "{i}"),
            IdealDescriptor::Jacobson(i) => write!(f, "{i}"),
            IdealDescriptor::Truncated(i) => write!(f, "{i}"),
        }
    }
}

impl Serialize for IdealDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `I ∩ V ≠ (0)`.
pub fn ideal_meets_subspace(ideal: &IdealDescriptor, space: &Subspace) -> Result<bool, OracleError> {
    match ideal {
        IdealDescriptor::Zero => Ok(false),
        IdealDescriptor::Whole => Ok(!space.is_zero()),
        IdealDescriptor::Monomial(i) => i.meets(space),
        IdealDescriptor::Jacobson(i) => i.meets(space),
        IdealDescriptor::Truncated(i) => i.meets(space),
    }
}

/// `a ∈ I`.
pub fn ideal_contains(ideal: &IdealDescriptor, a: &AlgebraElement) -> Result<bool, OracleError> {
    match ideal {
        IdealDescriptor::Zero => Ok(a.is_zero()),
        IdealDescriptor::Whole => Ok(true),
        IdealDescriptor::Monomial(i) => i.contains(a),
        IdealDescriptor::Jacobson(i) => i.contains(a),
        IdealDescriptor::Truncated(i) => i.contains(a),
    }
}

/// The Jacobson family `{Socle} ∪ {Preimage(f) : f in the grid}`.
pub fn jacobson_family(spec: crate::field::FieldSpec, coefficients: &[i64], max_width: usize) -> Vec<IdealDescriptor> {
    std::iter::once(IdealDescriptor::Jacobson(JacobsonIdeal::Socle))
        .chain(
            laurent_grid(spec, coefficients, max_width)
                .into_iter()
                .map(|f| IdealDescriptor::Jacobson(JacobsonIdeal::Preimage(f))),
        )
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealCheck {
    pub ideal: IdealDescriptor,
    pub meets_subspace: bool,
    /// An output element lying in the ideal, when the ideal meets V.
    pub witness: Option<AlgebraElement>,
    pub violation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<IdealCheck>,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn ideals_meeting(&self) -> usize {
        self.checks.iter().filter(|c| c.meets_subspace).count()
    }
}

/// Check the separator's conclusion against every ideal of `family` that
/// meets `space`. Ideals are checked in parallel; the report follows the
/// family order.
pub fn verify_separation(
    result: &SeparationResult,
    family: &[IdealDescriptor],
    space: &Subspace,
) -> Result<VerificationReport, OracleError> {
    let checks: Vec<IdealCheck> = family
        .par_iter()
        .map(|ideal| {
            let meets = ideal_meets_subspace(ideal, space)?;
            let mut witness = None;
            if meets {
                let candidates: &[AlgebraElement] = match result.mode {
                    SeparationMode::DiffProduct => &result.elements[..result.elements.len().min(1)],
                    SeparationMode::ModList => &result.elements,
                };
                for a in candidates {
                    if !a.is_zero() && ideal_contains(ideal, a)? {
                        witness = Some(a.clone());
                        break;
                    }
                }
            }
            Ok(IdealCheck { ideal: ideal.clone(), meets_subspace: meets, violation: meets && witness.is_none(), witness })
        })
        .collect::<Result<_, OracleError>>()?;
    let violations = checks.iter().filter(|c| c.violation).map(|c| c.ideal.to_string()).collect();
    Ok(VerificationReport { checks, violations })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageViolation {
    pub ideal: IdealDescriptor,
    pub subspace: Subspace,
}

/// At every split of the trace: each ideal meeting `V` meets `V₁` or `V₂`.
pub fn check_trace_coverage(
    trace: &TraceNode,
    family: &[IdealDescriptor],
) -> Result<Vec<CoverageViolation>, OracleError> {
    let splits: Vec<(&Subspace, &Subspace, &Subspace)> = trace
        .nodes()
        .into_iter()
        .filter_map(|node| match &node.step {
            TraceStep::Split { kernel, image, .. } => Some((&node.subspace, &kernel.subspace, &image.subspace)),
            TraceStep::Leaf { .. } => None,
        })
        .collect();
    let per_ideal: Vec<Vec<CoverageViolation>> = family
        .par_iter()
        .map(|ideal| {
            let mut out = Vec::new();
            for (v, v1, v2) in &splits {
                if ideal_meets_subspace(ideal, v)?
                    && !ideal_meets_subspace(ideal, v1)?
                    && !ideal_meets_subspace(ideal, v2)?
                {
                    out.push(CoverageViolation { ideal: ideal.clone(), subspace: (*v).clone() });
                }
            }
            Ok(out)
        })
        .collect::<Result<_, OracleError>>()?;
    Ok(per_ideal.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests;
