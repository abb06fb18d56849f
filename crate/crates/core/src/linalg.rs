//! Dense exact linear algebra over any [`FieldSpec`]: reduced row echelon
//! form, rank, kernel bases, row-space intersection, and small solvers.
//!
//! Pivoting is deterministic (leftmost nonzero column, first suitable row), so
//! RREF output is bit-stable across runs — magnitude-based pivoting would be
//! meaningless over finite fields anyway.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        ExactMatrix { field, rows, cols, entries }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = ExactMatrix::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<FieldElement>>) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            entries.extend(r);
        }
        ExactMatrix { field, rows: nrows, cols, entries }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn stack_vertical(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.field, other.field);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ExactMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    acc = self.field.add(&acc, &self.field.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    /// Unique reduced row echelon form with deterministic pivoting.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let field = m.field.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            let inv = field.inv(m.get(pivot_row, col)).expect("nonzero pivot");
            m.scale_row(pivot_row, &inv);
            for r2 in 0..m.rows {
                if r2 != pivot_row && !field.is_zero(m.get(r2, col)) {
                    let factor = m.get(r2, col).clone();
                    m.sub_scaled_row(r2, pivot_row, &factor);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let rank = pivot_cols.len();
        Rref { matrix: m, rank, pivot_cols }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space in RREF-canonical form: one vector per
    /// free column, with that free variable set to 1.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let Rref { matrix, pivot_cols, .. } = self.rref();
        let field = matrix.field.clone();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivot_cols.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![field.zero(); self.cols];
            vec[free] = field.one();
            for (r, &c) in pivot_cols.iter().enumerate() {
                vec[c] = field.neg(matrix.get(r, free));
            }
            basis.push(vec);
        }
        basis
    }

    /// Determinant of a square matrix by Gaussian elimination.
    pub fn determinant(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let field = self.field.clone();
        let mut m = self.clone();
        let mut det = field.one();
        for col in 0..m.cols {
            let Some(r) = (col..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
                return Ok(field.zero());
            };
            if r != col {
                m.swap_rows(col, r);
                det = field.neg(&det);
            }
            det = field.mul(&det, m.get(col, col));
            let inv = field.inv(m.get(col, col)).expect("nonzero pivot");
            m.scale_row(col, &inv);
            for r2 in col + 1..m.rows {
                if !field.is_zero(m.get(r2, col)) {
                    let factor = m.get(r2, col).clone();
                    m.sub_scaled_row(r2, col, &factor);
                }
            }
        }
        Ok(det)
    }

    /// One solution of `self * x = b` (free variables set to 0), or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let field = self.field.clone();
        let mut aug = ExactMatrix::zeros(field.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let Rref { matrix, pivot_cols, .. } = aug.rref();
        if pivot_cols.contains(&self.cols) {
            return None;
        }
        let mut x = vec![field.zero(); self.cols];
        for (r, &c) in pivot_cols.iter().enumerate() {
            x[c] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &FieldElement) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(r, j), c);
            self.set(r, j, v);
        }
    }

    fn sub_scaled_row(&mut self, target: usize, source: usize, c: &FieldElement) {
        for j in 0..self.cols {
            let v = self.field.sub(self.get(target, j), &self.field.mul(self.get(source, j), c));
            self.set(target, j, v);
        }
    }
}

/// Reduce `v` against RREF rows in place (subtract pivot rows until every
/// pivot coordinate of `v` is zero).  `v` then lives in the canonical
/// complement of the row space.
pub fn reduce_against_rref(rref: &Rref, v: &mut [FieldElement]) {
    let field = rref.matrix.field().clone();
    for (r, &c) in rref.pivot_cols.iter().enumerate() {
        if field.is_zero(&v[c]) {
            continue;
        }
        let factor = v[c].clone();
        for j in 0..rref.matrix.cols() {
            let s = field.mul(rref.matrix.get(r, j), &factor);
            v[j] = field.sub(&v[j], &s);
        }
    }
}

/// Basis (RREF rows) of rowspace(A) ∩ rowspace(B), computed from the kernel
/// of the stacked system u·A - v·B = 0.
pub fn row_space_intersection(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch("row space intersection across fields".into()));
    }
    if a.cols() != b.cols() {
        return Err(Error::Invalid("row space intersection needs equal widths".into()));
    }
    let field = a.field().clone();
    let n = a.cols();
    // columns: one per row of A, then one per row of B (negated)
    let mut stacked = ExactMatrix::zeros(field.clone(), n, a.rows() + b.rows());
    for i in 0..a.rows() {
        for x in 0..n {
            stacked.set(x, i, a.get(i, x).clone());
        }
    }
    for j in 0..b.rows() {
        for x in 0..n {
            stacked.set(x, a.rows() + j, field.neg(b.get(j, x)));
        }
    }
    let kernel = stacked.kernel_basis();
    let mut vectors = Vec::new();
    for w in kernel {
        let mut v = vec![field.zero(); n];
        for (i, coef) in w.iter().take(a.rows()).enumerate() {
            if field.is_zero(coef) {
                continue;
            }
            for x in 0..n {
                let s = field.mul(a.get(i, x), coef);
                v[x] = field.add(&v[x], &s);
            }
        }
        vectors.push(v);
    }
    let raw = ExactMatrix::from_rows(field.clone(), n, vectors);
    let rref = raw.rref();
    Ok(keep_nonzero_rows(&rref))
}

/// The first `rank` rows of an RREF (the nonzero ones) as a standalone matrix.
pub fn keep_nonzero_rows(rref: &Rref) -> ExactMatrix {
    let m = &rref.matrix;
    let rows = (0..rref.rank).map(|i| m.row(i).to_vec()).collect();
    ExactMatrix::from_rows(m.field().clone(), m.cols(), rows)
}
