use serde::Serialize;

use super::Subspace;
use crate::algebra::AlgebraElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeparationMode {
    /// One element lying in every differential ideal that meets V.
    DiffProduct,
    /// A list such that every ideal meeting V contains one of them.
    ModList,
}

/// What made a node split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitWitness {
    /// `w ↦ w·x·v − v·x·w` was nonzero.
    Multiplier { x: AlgebraElement },
    /// `w ↦ w·D_i(v) − v·D_i(w)` was nonzero at `w`.
    Derivation { index: usize, w: AlgebraElement },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    Leaf {
        element: AlgebraElement,
    },
    Split {
        v: AlgebraElement,
        witness: SplitWitness,
        /// Candidates examined up to and including the witness.
        candidates_scanned: usize,
        kernel: Box<TraceNode>,
        image: Box<TraceNode>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    pub subspace: Subspace,
    #[serde(flatten)]
    pub step: TraceStep,
}

impl TraceNode {
    /// All nodes, parents before children, kernel side first.
    pub fn nodes(&self) -> Vec<&TraceNode> {
        let mut out = vec![self];
        if let TraceStep::Split { kernel, image, .. } = &self.step {
            out.extend(kernel.nodes());
            out.extend(image.nodes());
        }
        out
    }

    /// Leaf elements, kernel side first.
    pub fn leaves(&self) -> Vec<&AlgebraElement> {
        match &self.step {
            TraceStep::Leaf { element } => vec![element],
            TraceStep::Split { kernel, image, .. } => {
                let mut out = kernel.leaves();
                out.extend(image.leaves());
                out
            }
        }
    }

    /// Product of the leaves in recursion order: `a(V₁)·a(V₂)` at every split.
    pub fn product(&self) -> AlgebraElement {
        match &self.step {
            TraceStep::Leaf { element } => element.clone(),
            TraceStep::Split { kernel, image, .. } => &kernel.product() * &image.product(),
        }
    }

    pub fn depth(&self) -> usize {
        match &self.step {
            TraceStep::Leaf { .. } => 0,
            TraceStep::Split { kernel, image, .. } => 1 + kernel.depth().max(image.depth()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationResult {
    pub mode: SeparationMode,
    pub elements: Vec<AlgebraElement>,
    pub trace: TraceNode,
}

impl SeparationResult {
    /// Checks that need no ideal family: nonzero outputs, list shape, and
    /// at each split `dim V₁ + dim V₂ = dim V`, `V₁, V₂ ≠ 0`, `v ∈ V₁ ⊆ V`.
    pub fn structural_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.elements.is_empty() {
            out.push("empty element list".to_string());
        }
        if self.elements.iter().any(AlgebraElement::is_zero) {
            out.push("zero element in output".to_string());
        }
        match self.mode {
            SeparationMode::DiffProduct => {
                if self.elements.len() != 1 {
                    out.push(format!("product mode returned {} elements", self.elements.len()));
                } else if self.elements[0] != self.trace.product() {
                    out.push("output differs from the product of the trace leaves".to_string());
                }
            }
            SeparationMode::ModList => {
                if self.elements.len() > self.trace.subspace.dim() {
                    out.push(format!(
                        "list of {} elements exceeds dim V = {}",
                        self.elements.len(),
                        self.trace.subspace.dim()
                    ));
                }
                if self.elements.iter().collect::<Vec<_>>() != self.trace.leaves() {
                    out.push("output differs from the trace leaves".to_string());
                }
            }
        }
        for node in self.trace.nodes() {
            let v_space = &node.subspace;
            match &node.step {
                TraceStep::Leaf { element } => {
                    if v_space.dim() != 1 || !v_space.contains(element).unwrap_or(false) || element.is_zero() {
                        out.push(format!("leaf {element} does not span {v_space}"));
                    }
                }
                TraceStep::Split { v, kernel, image, .. } => {
                    let (d, d1, d2) = (v_space.dim(), kernel.subspace.dim(), image.subspace.dim());
                    if d1 + d2 != d {
                        out.push(format!("at {v_space}: dim V1 + dim V2 = {d1} + {d2} != {d}"));
                    }
                    if d1 == 0 || d2 == 0 {
                        out.push(format!("at {v_space}: trivial split ({d1}, {d2})"));
                    }
                    if !v_space.contains(v).unwrap_or(false) {
                        out.push(format!("at {v_space}: v = {v} not in V"));
                    }
                    if !kernel.subspace.contains(v).unwrap_or(false) {
                        out.push(format!("at {v_space}: v = {v} not in V1"));
                    }
                    if !kernel.subspace.is_subspace_of(v_space).unwrap_or(false) {
                        out.push(format!("at {v_space}: V1 not inside V"));
                    }
                }
            }
        }
        out
    }
}
