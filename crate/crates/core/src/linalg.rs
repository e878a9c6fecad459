//! Dense exact linear algebra over any [`FieldSpec`].
//!
//! Elimination is plain Gauss-Jordan with the pivot taken as the first
//! nonzero entry in column order, so every echelon basis produced here is the
//! unique reduced row echelon form of its row space.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    SpecMismatch(FieldSpec, FieldSpec),
    #[error("expected {expected} entries, got {actual}")]
    Shape { expected: usize, actual: usize },
}

pub type Vector = Vec<FieldElement>;

/// Row-major matrix of exact scalars from one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(
        spec: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape { expected: rows * cols, actual: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|e| e.spec() != spec) {
            return Err(LinalgError::SpecMismatch(spec, bad.spec()));
        }
        Ok(Matrix { spec, rows, cols, entries })
    }

    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { spec, rows, cols, entries: vec![spec.zero(); rows * cols] }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m.set(i, i, spec.one());
        }
        m
    }

    pub fn from_rows(spec: FieldSpec, cols: usize, rows: &[Vector]) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::Shape { expected: cols, actual: r.len() });
            }
            entries.extend(r.iter().cloned());
        }
        Self::new(spec, rows.len(), cols, entries)
    }

    pub fn from_columns(spec: FieldSpec, rows: usize, cols: &[Vector]) -> Result<Self, LinalgError> {
        Ok(Self::from_rows(spec, rows, cols)?.transpose())
    }

    /// Parse a matrix of field literals, e.g. `[["1","2"],["2","4"]]`.
    pub fn parse(spec: FieldSpec, rows: &[&[&str]]) -> Result<Self, crate::field::FieldError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|s| spec.parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { spec, rows: rows.len(), cols, entries })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        assert_eq!(value.spec(), self.spec, "matrix entry from the wrong field");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix { spec: self.spec, rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul_vector(&self, v: &[FieldElement]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::AmbientMismatch(self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.spec.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.spec)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            write!(f, "\n  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `K^n` held in canonical reduced row echelon form.
///
/// Every vector is nonzero, has a 1 in its pivot column and zeros in all
/// other pivot columns; pivots strictly increase. Two values describe the
/// same subspace iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EchelonBasis {
    spec: FieldSpec,
    ambient_dim: usize,
    vectors: Vec<Vector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn zero(spec: FieldSpec, ambient_dim: usize) -> Self {
        EchelonBasis { spec, ambient_dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(spec: FieldSpec, ambient_dim: usize) -> Self {
        rref(&Matrix::identity(spec, ambient_dim)).0
    }

    /// Canonical basis of the span of `vectors`.
    pub fn span(spec: FieldSpec, ambient_dim: usize, vectors: &[Vector]) -> Result<Self, LinalgError> {
        Ok(rref(&Matrix::from_rows(spec, ambient_dim, vectors)?).0)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.spec, self.ambient_dim, &self.vectors).expect("consistent shape")
    }

    pub fn contains(&self, v: &[FieldElement]) -> Result<bool, LinalgError> {
        Ok(solve_in_span(self, v)?.is_some())
    }

    /// `self + other`.
    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_compatible(other)?;
        let all: Vec<Vector> = self.vectors.iter().chain(&other.vectors).cloned().collect();
        Self::span(self.spec, self.ambient_dim, &all)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), LinalgError> {
        if self.spec != other.spec {
            return Err(LinalgError::SpecMismatch(self.spec, other.spec));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination into `rows`, returning pivot columns.
fn eliminate(spec: FieldSpec, cols: usize, rows: &mut Vec<Vector>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for e in rows[next].iter_mut().skip(col) {
                if !e.is_zero() {
                    *e = &*e * &inv;
                }
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, p) in pivot_row.iter().enumerate().skip(col) {
                if !p.is_zero() {
                    row[c] = &row[c] - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    debug_assert!(rows.iter().all(|r| r.iter().all(|e| e.spec() == spec)));
    pivots
}

/// Row space of `m` in canonical form, with its rank.
pub fn rref(m: &Matrix) -> (EchelonBasis, usize) {
    let mut rows: Vec<Vector> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let pivots = eliminate(m.spec, m.cols, &mut rows);
    let rank = pivots.len();
    (EchelonBasis { spec: m.spec, ambient_dim: m.cols, vectors: rows, pivots }, rank)
}

/// Canonical basis of `{v : m·v = 0}`.
pub fn kernel(m: &Matrix) -> EchelonBasis {
    let (basis, _) = rref(m);
    let spec = m.spec;
    let mut is_pivot = vec![false; m.cols];
    for &p in &basis.pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vector> = (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![spec.zero(); m.cols];
            v[free] = spec.one();
            for (row, &p) in basis.vectors.iter().zip(&basis.pivots) {
                v[p] = -&row[free];
            }
            v
        })
        .collect();
    EchelonBasis::span(spec, m.cols, &vectors).expect("consistent shape")
}

/// Canonical basis of the column space of `m`.
pub fn image(m: &Matrix) -> EchelonBasis {
    rref(&m.transpose()).0
}

/// Canonical basis of `a ∩ b`.
pub fn intersect(a: &EchelonBasis, b: &EchelonBasis) -> Result<EchelonBasis, LinalgError> {
    a.check_compatible(b)?;
    let spec = a.spec;
    let n = a.ambient_dim;
    if a.is_zero() || b.is_zero() {
        return Ok(EchelonBasis::zero(spec, n));
    }
    // Columns a_1..a_k, b_1..b_l; a kernel vector (λ, μ) gives Σλ·a ∈ a ∩ b.
    let cols: Vec<Vector> = a.vectors.iter().chain(&b.vectors).cloned().collect();
    let k = a.dim();
    let rel = kernel(&Matrix::from_columns(spec, n, &cols)?);
    let vectors: Vec<Vector> = rel
        .vectors
        .iter()
        .map(|lm| combine(spec, n, &a.vectors, &lm[..k]))
        .collect();
    EchelonBasis::span(spec, n, &vectors)
}

/// Σ coeffs[i]·vectors[i].
pub fn combine(spec: FieldSpec, n: usize, vectors: &[Vector], coeffs: &[FieldElement]) -> Vector {
    let mut out = vec![spec.zero(); n];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(v) {
            if !e.is_zero() {
                *o = &*o + &(c * e);
            }
        }
    }
    out
}

/// Coordinates of `target` in `basis`, or `None` if it is not in the span.
pub fn solve_in_span(basis: &EchelonBasis, target: &[FieldElement]) -> Result<Option<Vector>, LinalgError> {
    if target.len() != basis.ambient_dim {
        return Err(LinalgError::AmbientMismatch(basis.ambient_dim, target.len()));
    }
    if let Some(bad) = target.iter().find(|e| e.spec() != basis.spec) {
        return Err(LinalgError::SpecMismatch(basis.spec, bad.spec()));
    }
    let coords: Vector = basis.pivots.iter().map(|&p| target[p].clone()).collect();
    let rebuilt = combine(basis.spec, basis.ambient_dim, &basis.vectors, &coords);
    Ok((rebuilt.as_slice() == target).then_some(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn q(rows: &[&[&str]]) -> Matrix {
        Matrix::parse(Q, rows).unwrap()
    }

    fn vecq(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let (b, r) = rref(&q(&[&["2", "0"], &["0", "0"]]));
        assert_eq!((b.vectors().to_vec(), r), (vec![vecq(&[1, 0])], 1));
        let (b, r) = rref(&q(&[&["1", "2"], &["2", "4"]]));
        assert_eq!((b.vectors().to_vec(), r), (vec![vecq(&[1, 2])], 1));
        let id = Matrix::identity(Q, 3);
        let (b, r) = rref(&id);
        assert_eq!((b.to_matrix(), r), (id, 3));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&q(&[&["1", "0"], &["0", "0"]])).vectors(), &[vecq(&[0, 1])]);
        assert_eq!(kernel(&Matrix::zeros(Q, 2, 2)).dim(), 2);
        let f5 = FieldSpec::prime(5).unwrap();
        let k = kernel(&Matrix::parse(f5, &[&["1", "1"]]).unwrap());
        assert_eq!(k.vectors(), &[vec![f5.from_i64(1), f5.from_i64(4)]]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(image(&q(&[&["1", "2"], &["2", "4"]])).vectors(), &[vecq(&[1, 2])]);
        assert!(image(&Matrix::zeros(Q, 3, 2)).is_zero());
    }

    #[test]
    fn intersect_examples() {
        let e1 = EchelonBasis::span(Q, 2, &[vecq(&[1, 0])]).unwrap();
        let e2 = EchelonBasis::span(Q, 2, &[vecq(&[0, 1])]).unwrap();
        assert!(intersect(&e1, &e2).unwrap().is_zero());
        assert_eq!(intersect(&e1, &e1).unwrap(), e1);
        let diag = EchelonBasis::span(Q, 2, &[vecq(&[1, 1])]).unwrap();
        assert_eq!(intersect(&EchelonBasis::full(Q, 2), &diag).unwrap(), diag);
        let e3 = EchelonBasis::zero(Q, 3);
        assert_eq!(intersect(&e1, &e3), Err(LinalgError::AmbientMismatch(2, 3)));
    }

    #[test]
    fn solve_examples() {
        let b = EchelonBasis::span(Q, 2, &[vecq(&[1, 2])]).unwrap();
        assert_eq!(solve_in_span(&b, &vecq(&[2, 4])).unwrap(), Some(vecq(&[2])));
        let b = EchelonBasis::span(Q, 2, &[vecq(&[0, 1])]).unwrap();
        assert_eq!(solve_in_span(&b, &vecq(&[1, 0])).unwrap(), None);
        assert!(solve_in_span(&b, &vecq(&[1])).is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(Matrix::new(Q, 2, 2, vec![Q.one()]).is_err());
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(Matrix::new(Q, 1, 1, vec![f5.one()]).is_err());
    }

    fn field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rationals),
            Just(FieldSpec::PrimeField(3)),
            Just(FieldSpec::PrimeField(7)),
            Just(FieldSpec::RationalFunctions),
        ]
    }

    fn entry(spec: FieldSpec) -> BoxedStrategy<FieldElement> {
        match spec {
            FieldSpec::RationalFunctions => (-3i64..4, -2i64..3, 1i64..3)
                .prop_map(|(a, b, d)| {
                    let s = FieldSpec::RationalFunctions;
                    s.parse(&format!("({a} + {b}*t)/{d}")).unwrap()
                })
                .boxed(),
            _ => (-3i64..4).prop_map(move |a| spec.from_i64(a)).boxed(),
        }
    }

    fn matrix() -> impl Strategy<Value = Matrix> {
        (field(), 1usize..5, 1usize..5).prop_flat_map(|(spec, r, c)| {
            prop::collection::vec(entry(spec), r * c)
                .prop_map(move |e| Matrix::new(spec, r, c, e).unwrap())
        })
    }

    fn matrix_pair() -> impl Strategy<Value = (Matrix, Matrix)> {
        (field(), 1usize..4, 1usize..4, 1usize..5).prop_flat_map(|(spec, r1, r2, c)| {
            (
                prop::collection::vec(entry(spec), r1 * c),
                prop::collection::vec(entry(spec), r2 * c),
            )
                .prop_map(move |(a, b)| {
                    (Matrix::new(spec, r1, c, a).unwrap(), Matrix::new(spec, r2, c, b).unwrap())
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn rank_nullity(m in matrix()) {
            prop_assert_eq!(kernel(&m).dim() + image(&m).dim(), m.cols());
            for v in kernel(&m).vectors() {
                prop_assert!(m.mul_vector(v).unwrap().iter().all(|e| e.is_zero()));
            }
        }

        #[test]
        fn rref_is_a_fixed_point(m in matrix()) {
            let (b, _) = rref(&m);
            prop_assert_eq!(rref(&b.to_matrix()).0, b);
        }

        #[test]
        fn intersection_laws((a, b) in matrix_pair()) {
            let (a, b) = (rref(&a).0, rref(&b).0);
            let ab = intersect(&a, &b).unwrap();
            prop_assert_eq!(&ab, &intersect(&b, &a).unwrap());
            prop_assert_eq!(intersect(&a, &a).unwrap(), a.clone());
            prop_assert_eq!(ab.dim() + a.sum(&b).unwrap().dim(), a.dim() + b.dim());
            for v in ab.vectors() {
                prop_assert!(a.contains(v).unwrap() && b.contains(v).unwrap());
            }
        }

        #[test]
        fn span_membership_round_trips(m in matrix(), seed in prop::collection::vec(-3i64..4, 5)) {
            let (b, _) = rref(&m);
            let coeffs: Vector = seed.iter().take(b.dim()).map(|&s| m.spec().from_i64(s)).collect();
            let target = combine(m.spec(), b.ambient_dim(), b.vectors(), &coeffs);
            let found = solve_in_span(&b, &target).unwrap().expect("target is in the span");
            prop_assert_eq!(combine(m.spec(), b.ambient_dim(), b.vectors(), &found), target);
        }
    }
}
