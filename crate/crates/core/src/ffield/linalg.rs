//! Dense Gaussian elimination over a [`Field`].

use super::field::{Field, FieldElement, FieldError};

/// Dense matrix; every entry lives in the same field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, columns: &[Vec<FieldElement>]) -> Result<Self, FieldError> {
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(FieldError::Dimension(format!(
                    "column {c} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (r, x) in col.iter().enumerate() {
                if !x.field().same(field) {
                    return Err(FieldError::Mismatch(
                        x.field().params().to_string(),
                        field.params().to_string(),
                    ));
                }
                m.data[r * m.cols + c] = x.raw();
            }
        }
        Ok(m)
    }

    pub(crate) fn from_raw_rows(field: &Field, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            debug_assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.wrap(self.data[r * self.cols + c])
    }

    pub fn set(&mut self, r: usize, c: usize, x: &FieldElement) {
        assert!(x.field().same(&self.field), "field mismatch");
        self.data[r * self.cols + c] = x.raw();
    }

    pub(crate) fn raw(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.raw(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.raw(k, c);
                    if b != 0 {
                        let idx = r * out.cols + c;
                        out.data[idx] = f.raw_add(out.data[idx], f.raw_mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// In-place reduced row echelon form; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.raw(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.raw_inv(self.raw(row, col)).unwrap();
            for c in col..self.cols {
                let idx = row * self.cols + c;
                self.data[idx] = f.raw_mul(self.data[idx], inv);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.raw(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let pv = self.data[row * self.cols + c];
                    if pv != 0 {
                        let idx = r * self.cols + c;
                        self.data[idx] = f.raw_sub(self.data[idx], f.raw_mul(factor, pv));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of { v : M v = 0 }.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.raw_neg(m.raw(r, fc));
                }
                v.into_iter().map(|x| f.wrap(x)).collect()
            })
            .collect()
    }

    /// Some solution of M x = b, if one exists.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>, FieldError> {
        if b.len() != self.rows {
            return Err(FieldError::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.data[r * aug.cols + c] = self.raw(r, c);
            }
            aug.data[r * aug.cols + self.cols] = rhs.raw();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.raw(r, self.cols);
        }
        Ok(Some(x.into_iter().map(|v| f.wrap(v)).collect()))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.raw(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = aug.raw(r, n + c);
            }
        }
        Some(inv)
    }

    /// Basis of ker(M - lambda I).
    pub fn eigenspace(&self, lambda: &FieldElement) -> Result<Vec<Vec<FieldElement>>, FieldError> {
        if self.rows != self.cols {
            return Err(FieldError::Dimension(format!(
                "eigenspace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let f = &self.field;
        let mut shifted = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            shifted.data[idx] = f.raw_sub(shifted.data[idx], lambda.raw());
        }
        Ok(shifted.kernel())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanTask {
    Rank,
    Membership(Vec<FieldElement>),
    Kernel,
    Eigenspace(FieldElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanResult {
    Rank(usize),
    Member(bool),
    Basis(Vec<Vec<FieldElement>>),
}

/// Rank, span membership, kernel, or eigenspace of the matrix whose columns
/// are `vectors`.
pub fn span_solve(field: &Field, vectors: &[Vec<FieldElement>], task: SpanTask) -> Result<SpanResult, FieldError> {
    let m = Matrix::from_columns(field, vectors)?;
    Ok(match task {
        SpanTask::Rank => SpanResult::Rank(m.rank()),
        SpanTask::Membership(target) => SpanResult::Member(m.solve(&target)?.is_some()),
        SpanTask::Kernel => SpanResult::Basis(m.kernel()),
        SpanTask::Eigenspace(lambda) => SpanResult::Basis(m.eigenspace(&lambda)?),
    })
}

/// Incrementally maintained echelon basis of a subspace of F^n, on raw values.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    field: Field,
    len: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(field: &Field, len: usize) -> Self {
        Echelon {
            field: field.clone(),
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after eliminating against the current basis.
    pub(crate) fn reduce(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.len);
        let f = &self.field;
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let factor = r[pc];
            if factor == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(row) {
                if y != 0 {
                    *x = f.raw_sub(*x, f.raw_mul(factor, y));
                }
            }
        }
        r
    }

    pub(crate) fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub(crate) fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.raw_inv(r[pc]).unwrap();
        for x in r.iter_mut() {
            *x = f.raw_mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let factor = row[pc];
            if factor != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    if y != 0 {
                        *x = f.raw_sub(*x, f.raw_mul(factor, y));
                    }
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    pub(crate) fn same_span(&self, other: &Echelon) -> bool {
        self.dim() == other.dim() && other.rows.iter().all(|r| self.contains(r))
    }
}
