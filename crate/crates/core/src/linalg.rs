//! Dense matrices over a finite field with exact Gaussian elimination.

use crate::field::{Field, FieldElem};

#[derive(Clone, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
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

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(field: &Field, rows: &[Vec<FieldElem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.field.wrap(self.data[r * self.cols + c])
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElem) {
        assert_eq!(x.field_id(), self.field.id());
        self.data[r * self.cols + c] = x.index();
    }

    pub fn row(&self, r: usize) -> Vec<FieldElem> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u32;
                for (c, x) in v.iter().enumerate() {
                    let prod = f.mul_raw(self.data[r * self.cols + c], x.index());
                    acc = f.add_raw(acc, prod);
                }
                f.wrap(acc)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// row[target] -= factor * row[source], from column `from` on.
    fn eliminate(&mut self, target: usize, source: usize, factor: u32, from: usize) {
        let f = &self.field;
        let cols = self.cols;
        for c in from..cols {
            let s = self.data[source * cols + c];
            if s == 0 {
                continue;
            }
            let t = &mut self.data[target * cols + c];
            *t = f.sub_raw(*t, f.mul_raw(factor, s));
        }
    }

    /// Row-reduces in place and returns the pivot columns. With `reduced`
    /// the result is the reduced row echelon form (pivots normalised to 1,
    /// cleared above and below); otherwise only below.
    pub fn echelon(&mut self, reduced: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(r) = (prow..self.rows).find(|&r| self.data[r * self.cols + c] != 0) else {
                continue;
            };
            self.swap_rows(prow, r);
            let inv = self.field.inv_raw(self.data[prow * self.cols + c]);
            if reduced {
                for j in c..self.cols {
                    let x = &mut self.data[prow * self.cols + j];
                    *x = self.field.mul_raw(*x, inv);
                }
            }
            for r in 0..self.rows {
                if r == prow || (!reduced && r < prow) {
                    continue;
                }
                let x = self.data[r * self.cols + c];
                if x == 0 {
                    continue;
                }
                let factor = if reduced { x } else { self.field.mul_raw(x, inv) };
                self.eliminate(r, prow, factor, c);
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon(false).len()
    }

    /// Basis of { v : M v = 0 }.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let mut m = self.clone();
        let pivots = m.echelon(true);
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(m.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.data[r * n + c];
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        let pivots = aug.echelon(true);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out.data[r * n + c] = aug.data[r * 2 * n + n + c];
            }
        }
        Some(out)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let o = &mut out.data[i * other.cols + j];
                    *o = f.add_raw(*o, f.mul_raw(a, other.data[k * other.cols + j]));
                }
            }
        }
        out
    }
}
