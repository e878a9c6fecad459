//! Separating elements for finite-dimensional subspaces.
//!
//! Both procedures pick a nonzero `v ∈ V` and a linear map on `V` that kills
//! `v`. If the map is nonzero, `V` splits into its kernel `V₁` and its image
//! `V₂`, both nonzero and of total dimension `dim V`, and the procedure recurses.
//!
//! - [`diff_separate`] uses `ψ(w) = w·D(v) − v·D(w)` for a derivation `D` of
//!   a polynomial ring. It multiplies the two answers.
//! - [`mod_separate`] uses `φ(w) = w·x·v − v·x·w` for a multiplier `x`. It
//!   concatenates the two lists.
//!
//! The choice of `v` is always the basis element with the smallest leading
//! word. Multipliers are tried in word order among the first `budget` basis
//! words.

mod result;
mod subspace;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraElement, AlgebraError, Derivation};
use crate::linalg::{self, Matrix};

pub use result::{SeparationMode, SeparationResult, SplitWitness, TraceNode, TraceStep};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatorError {
    #[error("the subspace is zero")]
    EmptySubspace,
    #[error("{v} is zero or not in {subspace}")]
    VNotInSubspace { v: String, subspace: String },
    #[error("no derivation splits {subspace} (is the differential center trivial?)")]
    NoSplittingFound { subspace: String, scanned: usize },
    #[error("none of the first {scanned} basis words splits {subspace}")]
    SearchBudgetExhausted { subspace: String, scanned: usize },
    #[error("budget must be at least 1")]
    InvalidBudget,
    #[error("at least one derivation is required")]
    NoDerivations,
    #[error("degree bound must be at least 1")]
    InvalidDegree,
    #[error("chain input contains zero")]
    ZeroElement,
    #[error("chains need a commutative polynomial ring, got {0}")]
    NonCommutativeAlgebra(String),
    #[error("image of {0} leaves the computed codomain")]
    CodomainOverflow(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn check_v(v: &AlgebraElement, space: &Subspace) -> Result<(), SeparatorError> {
    if v.is_zero() || !space.contains(v)? {
        return Err(SeparatorError::VNotInSubspace { v: v.to_string(), subspace: space.to_string() });
    }
    Ok(())
}

/// Columns are the images of `space`'s basis, rows the words of `L_d` in
/// ascending order.
fn dense_matrix(space: &Subspace, images: &[AlgebraElement], d: u32) -> Result<Matrix, SeparatorError> {
    let algebra = space.algebra();
    let spec = algebra.spec();
    let mut words = algebra.words_up_to_degree(d);
    words.sort();
    let mut m = Matrix::zeros(spec, words.len(), images.len());
    for (j, (im, w)) in images.iter().zip(space.elements()).enumerate() {
        for (word, c) in im.terms() {
            let r = words.binary_search(word).map_err(|_| SeparatorError::CodomainOverflow(w.to_string()))?;
            m.set(r, j, c.clone());
        }
    }
    Ok(m)
}

fn phi_images(x: &AlgebraElement, v: &AlgebraElement, basis: &[AlgebraElement]) -> Vec<AlgebraElement> {
    let xv = x * v;
    let vx = v * x;
    basis.iter().map(|w| &(w * &xv) - &(&vx * w)).collect()
}

fn psi_images(d: &Derivation, v: &AlgebraElement, basis: &[AlgebraElement]) -> Result<Vec<AlgebraElement>, AlgebraError> {
    let dv = d.apply(v)?;
    basis.iter().map(|w| Ok(&(w * &dv) - &(v * &d.apply(w)?))).collect()
}

/// Matrix of `w ↦ w·x·v − v·x·w` on the basis of `space`, with codomain
/// `L_D` for `D = deg V + deg x + deg v`.
pub fn phi_map(x: &AlgebraElement, v: &AlgebraElement, space: &Subspace) -> Result<Matrix, SeparatorError> {
    space.algebra().check_same(x.algebra())?;
    check_v(v, space)?;
    let bound = space.degree().unwrap_or(0) + x.degree().unwrap_or(0) + v.degree().unwrap_or(0);
    dense_matrix(space, &phi_images(x, v, &space.elements()), bound)
}

/// Matrix of `w ↦ w·D(v) − v·D(w)` on the basis of `space`, with codomain
/// `L_E` for `E = deg V + deg D + deg v`, `deg D` the largest image degree.
pub fn psi_map(d: &Derivation, v: &AlgebraElement, space: &Subspace) -> Result<Matrix, SeparatorError> {
    space.algebra().check_same(d.algebra())?;
    check_v(v, space)?;
    let bound = space.degree().unwrap_or(0) + d.image_degree() + v.degree().unwrap_or(0);
    dense_matrix(space, &psi_images(d, v, &space.elements())?, bound)
}

/// Kernel and image of the map sending `basis[j]` to `images[j]`.
fn split(space: &Subspace, basis: &[AlgebraElement], images: &[AlgebraElement]) -> (Subspace, Subspace) {
    let algebra = space.algebra();
    let image = Subspace::from_elements(algebra, images).expect("same algebra");
    let words = image.words();
    let spec = algebra.spec();
    let cols: Vec<_> = images
        .iter()
        .map(|im| {
            let mut col = vec![spec.zero(); words.len()];
            for (w, c) in im.terms() {
                let r = words.binary_search_by(|probe| w.cmp(probe)).expect("image support is covered");
                col[r] = c.clone();
            }
            col
        })
        .collect();
    let rel = linalg::kernel(&Matrix::from_columns(spec, words.len(), &cols).expect("consistent shape"));
    let kernel_elements: Vec<AlgebraElement> = rel
        .vectors()
        .iter()
        .map(|lambda| {
            basis
                .iter()
                .zip(lambda)
                .filter(|(_, c)| !c.is_zero())
                .fold(algebra.zero(), |acc, (b, c)| &acc + &b.scale(c))
        })
        .collect();
    (Subspace::from_elements(algebra, &kernel_elements).expect("same algebra"), image)
}

fn leaf(space: &Subspace) -> TraceNode {
    let element = space.smallest_leading().expect("dimension one");
    TraceNode { subspace: space.clone(), step: TraceStep::Leaf { element } }
}

fn diff_node(ds: &[Derivation], space: &Subspace) -> Result<TraceNode, SeparatorError> {
    if space.dim() == 1 {
        return Ok(leaf(space));
    }
    let v = space.smallest_leading().expect("nonzero");
    let basis = space.elements();
    let mut scanned = 0;
    for (index, d) in ds.iter().enumerate() {
        let dv = d.apply(&v)?;
        for w in &basis {
            scanned += 1;
            if (&(w * &dv) - &(&v * &d.apply(w)?)).is_zero() {
                continue;
            }
            let images = psi_images(d, &v, &basis)?;
            let (kernel, image) = split(space, &basis, &images);
            let kernel = Box::new(diff_node(ds, &kernel)?);
            let image = Box::new(diff_node(ds, &image)?);
            let witness = SplitWitness::Derivation { index, w: w.clone() };
            return Ok(TraceNode {
                subspace: space.clone(),
                step: TraceStep::Split { v, witness, candidates_scanned: scanned, kernel, image },
            });
        }
    }
    Err(SeparatorError::NoSplittingFound { subspace: space.to_string(), scanned })
}

/// A single nonzero `a` lying in every ideal that is closed under all of
/// `ds` and meets `space`.
///
/// Assumes the differential center of the fraction field is trivial; when it
/// is not, some subspace may admit no split and `NoSplittingFound` is returned.
pub fn diff_separate(ds: &[Derivation], space: &Subspace) -> Result<SeparationResult, SeparatorError> {
    if ds.is_empty() {
        return Err(SeparatorError::NoDerivations);
    }
    if space.is_zero() {
        return Err(SeparatorError::EmptySubspace);
    }
    for d in ds {
        space.algebra().check_same(d.algebra())?;
    }
    let trace = diff_node(ds, space)?;
    Ok(SeparationResult { mode: SeparationMode::DiffProduct, elements: vec![trace.product()], trace })
}

fn mod_node(candidates: &[AlgebraElement], space: &Subspace) -> Result<TraceNode, SeparatorError> {
    if space.dim() == 1 {
        return Ok(leaf(space));
    }
    let v = space.smallest_leading().expect("nonzero");
    let basis = space.elements();
    for (n, x) in candidates.iter().enumerate() {
        let images = phi_images(x, &v, &basis);
        if images.iter().all(AlgebraElement::is_zero) {
            continue;
        }
        let (kernel, image) = split(space, &basis, &images);
        let kernel = Box::new(mod_node(candidates, &kernel)?);
        let image = Box::new(mod_node(candidates, &image)?);
        let witness = SplitWitness::Multiplier { x: x.clone() };
        return Ok(TraceNode {
            subspace: space.clone(),
            step: TraceStep::Split { v, witness, candidates_scanned: n + 1, kernel, image },
        });
    }
    Err(SeparatorError::SearchBudgetExhausted { subspace: space.to_string(), scanned: candidates.len() })
}

/// Nonzero `a_1, …, a_k`, `k ≤ dim V`, such that every two-sided ideal
/// meeting `space` contains some `a_i`.
///
/// Assumes the algebra is primitive with a faithful simple module whose
/// endomorphisms are scalars. Multipliers are the first `budget` basis words.
pub fn mod_separate(space: &Subspace, budget: usize) -> Result<SeparationResult, SeparatorError> {
    if budget == 0 {
        return Err(SeparatorError::InvalidBudget);
    }
    if space.is_zero() {
        return Err(SeparatorError::EmptySubspace);
    }
    let candidates = space.algebra().enumerate_basis(budget);
    let trace = mod_node(&candidates, space)?;
    let elements = trace.leaves().into_iter().cloned().collect();
    Ok(SeparationResult { mode: SeparationMode::ModList, elements, trace })
}

/// One exhaustion step: `a_d` for `L_d`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StabilizeStep {
    pub degree: u32,
    pub result: SeparationResult,
}

impl StabilizeStep {
    pub fn element(&self) -> &AlgebraElement {
        &self.result.elements[0]
    }
}

/// `diff_separate` on `L_1, …, L_{d_max}`.
pub fn diff_stabilize(algebra: &Algebra, ds: &[Derivation], d_max: u32) -> Result<Vec<StabilizeStep>, SeparatorError> {
    if d_max == 0 {
        return Err(SeparatorError::InvalidDegree);
    }
    (1..=d_max)
        .map(|degree| {
            let result = diff_separate(ds, &Subspace::filtration(algebra, degree))?;
            Ok(StabilizeStep { degree, result })
        })
        .collect()
}

/// Cumulative products `b_i = a_1⋯a_i` in a polynomial ring, so that
/// `b_{i+1} ∈ A·b_i·A`.
pub fn chain(elements: &[AlgebraElement]) -> Result<Vec<AlgebraElement>, SeparatorError> {
    let Some(first) = elements.first() else {
        return Ok(Vec::new());
    };
    let algebra = first.algebra();
    algebra.require_comm_poly().map_err(|_| SeparatorError::NonCommutativeAlgebra(algebra.to_string()))?;
    let mut out: Vec<AlgebraElement> = Vec::with_capacity(elements.len());
    for a in elements {
        algebra.check_same(a.algebra())?;
        if a.is_zero() {
            return Err(SeparatorError::ZeroElement);
        }
        let next = match out.last() {
            Some(b) => b * a,
            None => a.clone(),
        };
        out.push(next);
    }
    Ok(out)
}
