//! Dense exact linear algebra over the scalar field.
//!
//! All ranks, kernels, and solves are computed by Gaussian elimination with
//! exact rational-function arithmetic; there is no floating point and no
//! tolerance anywhere in this module. Pivots are chosen to minimize the
//! combined numerator/denominator degree of the pivot entry, which keeps
//! intermediate expression growth manageable in practice.

use crate::scalar::FieldElement;
use std::fmt;

/// Dense row-major matrix over Q(nu^(1/D)).
///
/// The Kronecker product convention matches the tensor basis ordering used
/// throughout the crate: basis vector `e_i (x) e_j` of `V (x) W` has flat
/// index `i * dim W + j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    d: u32,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(d: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            d,
            rows,
            cols,
            data: vec![FieldElement::zero(d); rows * cols],
        }
    }

    pub fn identity(d: u32, n: usize) -> Self {
        let mut m = Matrix::zeros(d, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one(d));
        }
        m
    }

    pub fn from_fn(d: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { d, rows, cols, data }
    }

    pub fn from_rows(d: u32, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { d, rows: r, cols: c, data }
    }

    /// Column vector from entries.
    pub fn col_vec(d: u32, entries: Vec<FieldElement>) -> Self {
        let n = entries.len();
        Matrix { d, rows: n, cols: 1, data: entries }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.d, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            d: self.d,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            d: self.d,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            d: self.d,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            d: self.d,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.d, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    let cur = out.get(i, j);
                    out.set(i, j, cur + &t);
                }
            }
        }
        out
    }

    /// Kronecker product; `(A kron B)(v kron w) = Av kron Bw` with the flat
    /// index convention documented on the type.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(
            self.d,
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a.is_zero() {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        let b = other.get(ib, jb);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(ia * other.rows + ib, ja * other.cols + jb, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        let d = parts[0].d;
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(d, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j).clone());
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        let d = parts[0].d;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(d, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.get(i, j).clone());
                }
            }
            off += m.rows;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.d, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Select a subset of columns.
    pub fn columns(&self, cols: &[usize]) -> Matrix {
        let all_rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all_rows, cols)
    }

    /// Reduced row echelon form. Returns the reduced matrix together with the
    /// list of pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // Choose the structurally simplest nonzero pivot in this column.
            let mut best: Option<(usize, usize)> = None;
            for r in row..m.rows {
                let x = m.get(r, col);
                if x.is_zero() {
                    continue;
                }
                let size = x.numerator().degree().unwrap_or(0)
                    + x.denominator().degree().unwrap_or(0);
                match best {
                    Some((_, s)) if s <= size => {}
                    _ => best = Some((r, size)),
                }
            }
            let Some((prow, _)) = best else { continue };
            m.swap_rows(row, prow);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(r, j) - &(m.get(row, j) * &factor);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, as matrix columns. The basis is the
    /// standard one obtained from the RREF free columns, so it is
    /// deterministic.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.d, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, FieldElement::one(self.d));
            for (prow, &pc) in pivots.iter().enumerate() {
                let v = r.get(prow, fc);
                if !v.is_zero() {
                    out.set(pc, k, -v);
                }
            }
        }
        out
    }

    /// Solve `self * X = rhs` for all columns of `rhs` simultaneously.
    /// Returns `None` when the system is inconsistent. When the solution is
    /// not unique the particular solution with free variables set to zero is
    /// returned.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve dimension mismatch");
        let aug = Matrix::hstack(&[self, rhs]);
        let (r, pivots) = aug.rref();
        // Any pivot in the RHS block means inconsistency.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut out = Matrix::zeros(self.d, self.cols, rhs.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                out.set(pc, j, r.get(prow, self.cols + j).clone());
            }
        }
        Some(out)
    }

    /// Solve and additionally require the solution to be unique (trivial
    /// kernel on the used columns).
    pub fn solve_unique(&self, rhs: &Matrix) -> Option<Matrix> {
        let sol = self.solve(rhs)?;
        if self.rank() < self.cols {
            return None;
        }
        Some(sol)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let id = Matrix::identity(self.d, self.rows);
        let aug = Matrix::hstack(&[self, &id]);
        let (r, pivots) = aug.rref();
        if pivots.len() < self.rows || pivots.iter().take(self.rows).enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let cols: Vec<usize> = (self.cols..2 * self.cols).collect();
        let all_rows: Vec<usize> = (0..self.rows).collect();
        Some(r.submatrix(&all_rows, &cols))
    }

    /// Deterministic echelon basis for the column space.
    pub fn column_space_basis(&self) -> Matrix {
        let (r, pivots) = self.transpose().rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let cols: Vec<usize> = (0..r.cols()).collect();
        r.submatrix(&rows, &cols).transpose()
    }

    /// Basis of the intersection of the column spaces of `a` and `b`.
    pub fn intersect_column_spaces(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        if a.cols == 0 || b.cols == 0 {
            return Matrix::zeros(a.d, a.rows, 0);
        }
        let stacked = Matrix::hstack(&[a, &b.neg()]);
        let k = stacked.kernel();
        let top: Vec<usize> = (0..a.cols).collect();
        let all_cols: Vec<usize> = (0..k.cols).collect();
        let coeffs = k.submatrix(&top, &all_cols);
        a.mul(&coeffs).column_space_basis()
    }

    /// Does the column span of `self` contain `v`?
    pub fn span_contains(&self, v: &Matrix) -> bool {
        self.solve(v).is_some()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarContext;

    fn c() -> ScalarContext {
        ScalarContext::new(1)
    }

    fn m_int(rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        let ctx = c();
        Matrix::from_fn(1, rows, cols, |i, j| ctx.int(vals[i * cols + j]))
    }

    #[test]
    fn rank_and_kernel_of_singular_matrix() {
        let m = m_int(3, 3, &[1, 2, 3, 2, 4, 6, 1, 1, 1]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = m_int(2, 2, &[1, 1, 0, 2]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(1, 2));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = m_int(2, 2, &[1, 2, 2, 4]);
        let rhs = m_int(2, 1, &[3, 6]);
        let sol = m.solve(&rhs).unwrap();
        assert_eq!(m.mul(&sol), rhs);
        let bad = m_int(2, 1, &[1, 0]);
        assert!(m.solve(&bad).is_none());
    }

    #[test]
    fn kron_respects_products() {
        let a = m_int(2, 2, &[1, 2, 3, 4]);
        let b = m_int(2, 2, &[0, 1, 1, 0]);
        let left = a.kron(&b).mul(&a.kron(&b));
        let right = a.mul(&a).kron(&b.mul(&b));
        assert_eq!(left, right);
    }

    #[test]
    fn intersection_of_planes() {
        // span{e1, e2} and span{e2, e3} in Q^3 meet in span{e2}.
        let a = m_int(3, 2, &[1, 0, 0, 1, 0, 0]);
        let b = m_int(3, 2, &[0, 0, 1, 0, 0, 1]);
        let i = Matrix::intersect_column_spaces(&a, &b);
        assert_eq!(i.cols(), 1);
        assert!(!i.get(1, 0).is_zero());
        assert!(i.get(0, 0).is_zero() && i.get(2, 0).is_zero());
    }

    #[test]
    fn rational_function_entries_eliminate_exactly(){
        let ctx = c();
        let q = ctx.nu();
        let m = Matrix::from_rows(1, vec![
            vec![q.clone(), ctx.one()],
            vec![ctx.one(), q.inv().unwrap()],
        ]);
        // Rows are proportional, so the rank is 1.
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel().cols(), 1);
    }
}
