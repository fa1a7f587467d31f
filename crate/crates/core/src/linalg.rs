//! Dense exact linear algebra: matrices, reduced row echelon form, kernels,
//! and canonically represented subspaces.
//!
//! Conventions:
//! * Matrices act on column vectors: `A[(i, j)]` is the coefficient of basis
//!   vector `i` in the image of basis vector `j`.
//! * A [`Subspace`] stores its basis as the rows of a matrix in reduced row
//!   echelon form with zero rows dropped, so two `Subspace` values are equal
//!   (bitwise) exactly when they are equal as subspaces.
//! * Applying a group element `g` to a subspace maps each basis row `v` to
//!   `v * g^T` (the row form of the column vector `g * v^T`).

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::field::{Field, FieldElement};
use crate::{Error, Result};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Permutation matrix sending basis vector `j` to basis vector
    /// `perm[j]` (as a map on column vectors).
    pub fn permutation(field: Field, perm: &[usize]) -> Result<Matrix> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut m = Matrix::zero(field, n, n);
        for (j, &i) in perm.iter().enumerate() {
            if i >= n || seen[i] {
                return Err(Error::Shape(format!("invalid permutation {perm:?}")));
            }
            seen[i] = true;
            m[(i, j)] = field.one();
        }
        Ok(m)
    }

    pub fn from_rows(rows_data: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, |r| r.len());
        let field = rows_data
            .first()
            .and_then(|r| r.first())
            .map(|e| e.field())
            .ok_or_else(|| Error::Shape("matrix needs at least one entry".into()))?;
        let mut data = Vec::with_capacity(rows * cols);
        for row in &rows_data {
            if row.len() != cols {
                return Err(Error::Shape("ragged rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::MixedFields(field.name(), e.field().name()));
                }
                data.push(e.clone());
            }
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer literals, mapped into `field`.
    pub fn from_int_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&n| field.integer(n)))
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols: rows.first().map_or(0, |r| r.len()),
            data,
        }
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self[(j, i)].clone()
        })
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "add {}x{} to {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.checked_add(b)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.checked_add(&other.scale(&self.field.integer(-1)))
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a.checked_mul(b)?;
                        out[(i, j)] = out[(i, j)].checked_add(&t)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        let mut out = self.clone();
        for e in out.data.iter_mut() {
            *e = &*e * c;
        }
        out
    }

    /// Kronecker product; entry `((i1*r2+i2),(j1*c2+j2)) = a[i1,j1]*b[i2,j2]`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.rows, other.cols);
        Matrix::from_fn(
            self.field,
            self.rows * r2,
            self.cols * c2,
            |i, j| &self[(i / r2, j / c2)] * &other[(i % r2, j % c2)],
        )
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() && !self[(i, j)].is_zero() {
                    out[i] = out[i].checked_add(&self[(i, j)].checked_mul(x)?)?;
                }
            }
        }
        Ok(out)
    }

    /// In-place Gauss-Jordan elimination; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self[(r, c)].inverse().expect("nonzero pivot");
            for j in c..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)].clone();
                    for j in c..self.cols {
                        let t = &factor * &self[(r, j)];
                        self[(i, j)] = &self[(i, j)] - &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : A v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(self.field, n, n, |i, j| {
            aug[(i, n + j)].clone()
        }))
    }

    /// Determinant by Gaussian elimination with row swaps.
    pub fn determinant(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inverse().expect("nonzero pivot");
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let factor = &m[(i, c)] * &inv;
                    for j in c..n {
                        let t = &factor * &m[(c, j)];
                        m[(i, j)] = &m[(i, j)] - &t;
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn trace(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::Shape("trace of non-square matrix".into()));
        }
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = t.checked_add(&self[(i, i)])?;
        }
        Ok(t)
    }

    /// Solves `A x = b`; returns `None` when inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        if b.len() != self.rows {
            return Err(Error::Shape("solve dimension mismatch".into()));
        }
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None); // pivot in the constant column: inconsistent
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exponentiates a square matrix by repeated squaring.
    pub fn pow(&self, e: u64) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("power of non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            base = base.checked_mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

/// Basis of the space of symmetric matrices `G` with `X^T G + G X = 0` for
/// every `X` in the given family; the invariant symmetric bilinear forms of
/// a Lie algebra action.
pub fn invariant_symmetric_forms(field: &Field, mats: &[Matrix]) -> Vec<Matrix> {
    if mats.is_empty() {
        return Vec::new();
    }
    let n = mats[0].rows();
    let mut unknowns = Vec::new();
    let mut slot = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in i..n {
            slot[i][j] = unknowns.len();
            slot[j][i] = unknowns.len();
            unknowns.push((i, j));
        }
    }
    let n_unknown = unknowns.len();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for x in mats {
        for r in 0..n {
            for c in r..n {
                let mut row = vec![field.zero(); n_unknown];
                for k in 0..n {
                    if !x[(k, r)].is_zero() {
                        let s = slot[k][c];
                        row[s] = &row[s] + &x[(k, r)];
                    }
                    if !x[(k, c)].is_zero() {
                        let s = slot[r][k];
                        row[s] = &row[s] + &x[(k, c)];
                    }
                }
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let constraint = if rows.is_empty() {
        Matrix::zero(*field, 1, n_unknown)
    } else {
        Matrix::from_rows(rows).expect("constraint rows have equal length")
    };
    constraint
        .kernel()
        .into_iter()
        .map(|sol| {
            Matrix::from_fn(*field, n, n, |i, j| sol[slot[i][j]].clone())
        })
        .collect()
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix multiplication")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let entries: Vec<String> =
                (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", entries.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `field^ambient`, stored as an rref basis so that equality
/// of values coincides with equality of subspaces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zero(field, 0, ambient),
        }
    }

    /// Span of the given vectors (rows); reduces to canonical form.
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<FieldElement>]) -> Result<Subspace> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::Shape(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    v.len()
                )));
            }
            for e in v {
                if e.field() != field {
                    return Err(Error::MixedFields(field.name(), e.field().name()));
                }
            }
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, ambient));
        }
        let mut m = Matrix::from_rows(vectors.to_vec())?;
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let basis = Matrix::from_fn(field, rank, ambient, |i, j| m[(i, j)].clone());
        Ok(Subspace { ambient, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn basis_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::Shape("ambient dimension mismatch".into()));
        }
        // Reduce v against the rref basis and check the residue vanishes.
        Ok(self.reduce_vector(v).iter().all(|e| e.is_zero()))
    }

    /// Residue of `v` after subtracting its projection onto the pivot
    /// coordinates of this subspace; zero iff `v` lies in the subspace.
    pub fn reduce_vector(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut w = v.to_vec();
        for i in 0..self.dim() {
            let pivot_col = (0..self.ambient)
                .find(|&j| !self.basis[(i, j)].is_zero())
                .expect("nonzero basis row");
            if !w[pivot_col].is_zero() {
                let factor = w[pivot_col].clone();
                for j in 0..self.ambient {
                    let t = &factor * &self.basis[(i, j)];
                    w[j] = &w[j] - &t;
                }
            }
        }
        w
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        for row in other.basis_rows() {
            if !self.contains_vector(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::Shape("ambient dimension mismatch".into()));
        }
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::span(self.field(), self.ambient, &rows)
    }

    /// Zassenhaus intersection: row reduce `[U | U; W | 0]` and read the
    /// intersection basis off the rows whose left half vanished.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::Shape("ambient dimension mismatch".into()));
        }
        let field = self.field();
        let n = self.ambient;
        let total_rows = self.dim() + other.dim();
        if total_rows == 0 {
            return Ok(Subspace::zero(field, n));
        }
        let mut m = Matrix::zero(field, total_rows, 2 * n);
        for (i, row) in self.basis_rows().iter().enumerate() {
            for j in 0..n {
                m[(i, j)] = row[j].clone();
                m[(i, n + j)] = row[j].clone();
            }
        }
        for (i, row) in other.basis_rows().iter().enumerate() {
            for j in 0..n {
                m[(self.dim() + i, j)] = row[j].clone();
            }
        }
        m.rref_in_place();
        let mut vectors = Vec::new();
        for i in 0..total_rows {
            let left_zero = (0..n).all(|j| m[(i, j)].is_zero());
            let right = (n..2 * n).map(|j| m[(i, j)].clone()).collect::<Vec<_>>();
            if left_zero && right.iter().any(|e| !e.is_zero()) {
                vectors.push(right);
            }
        }
        Subspace::span(field, n, &vectors)
    }

    /// Image under the column-vector action of `g`: each basis row `v`
    /// becomes `v * g^T`.
    pub fn map(&self, g: &Matrix) -> Result<Subspace> {
        if g.cols() != self.ambient || g.rows() != self.ambient {
            return Err(Error::Shape("operator dimension mismatch".into()));
        }
        let mapped: Vec<Vec<FieldElement>> = self
            .basis_rows()
            .iter()
            .map(|v| g.mul_vec(v))
            .collect::<Result<_>>()?;
        Subspace::span(self.field(), self.ambient, &mapped)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::finite(p, 1).unwrap()
    }

    #[test]
    fn rref_canonical_example() {
        let f = gf(5);
        let m = Matrix::from_int_rows(f, &[&[2, 4, 0], &[2, 4, 1], &[0, 0, 3]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 2]);
        let expected = Matrix::from_int_rows(f, &[&[1, 2, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(r, expected);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = gf(7);
        let m = Matrix::from_int_rows(f, &[&[1, 2, 3, 4], &[2, 4, 6, 1]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 4 - m.rank());
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(11);
        let m = Matrix::from_int_rows(f, &[&[1, 2, 0], &[0, 1, 5], &[3, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(f, 3));
        assert_eq!(&inv * &m, Matrix::identity(f, 3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let f = gf(5);
        let m = Matrix::from_int_rows(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(Error::Singular));
        assert!(m.determinant().unwrap().is_zero());
    }

    #[test]
    fn determinant_of_permutation_tracks_sign() {
        let q = Field::rational();
        let p = Matrix::permutation(q, &[1, 0, 2]).unwrap();
        assert_eq!(p.determinant().unwrap(), q.integer(-1));
        let cycle = Matrix::permutation(q, &[1, 2, 0]).unwrap();
        assert_eq!(cycle.determinant().unwrap(), q.one());
    }

    #[test]
    fn permutation_matrix_moves_basis_vectors() {
        let q = Field::rational();
        let p = Matrix::permutation(q, &[2, 0, 1]).unwrap();
        let e0 = vec![q.one(), q.zero(), q.zero()];
        let image = p.mul_vec(&e0).unwrap();
        assert_eq!(image, vec![q.zero(), q.zero(), q.one()]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = gf(7);
        let m = Matrix::from_int_rows(f, &[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&[f.integer(1), f.integer(3)]).unwrap(), None);
        let x = m.solve(&[f.integer(3), f.integer(6)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![f.integer(3), f.integer(6)]);
    }

    #[test]
    fn subspace_equality_is_canonical() {
        let f = gf(5);
        let u = Subspace::span(
            f,
            3,
            &[
                vec![f.integer(1), f.integer(2), f.integer(3)],
                vec![f.integer(0), f.integer(1), f.integer(4)],
            ],
        )
        .unwrap();
        // Same space, different spanning set (scaled and summed).
        let v = Subspace::span(
            f,
            3,
            &[
                vec![f.integer(2), f.integer(4), f.integer(6 % 5)],
                vec![f.integer(1), f.integer(3), f.integer(2)],
            ],
        )
        .unwrap();
        assert_eq!(u, v);
        assert_eq!(u.dim(), 2);
    }

    #[test]
    fn grassmann_identity_example() {
        let f = gf(3);
        let u = Subspace::span(
            f,
            4,
            &[
                vec![f.one(), f.zero(), f.zero(), f.zero()],
                vec![f.zero(), f.one(), f.zero(), f.zero()],
            ],
        )
        .unwrap();
        let w = Subspace::span(
            f,
            4,
            &[
                vec![f.zero(), f.one(), f.zero(), f.zero()],
                vec![f.zero(), f.zero(), f.one(), f.zero()],
            ],
        )
        .unwrap();
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        assert_eq!(i.dim(), 1);
        assert!(u.contains(&i).unwrap() && w.contains(&i).unwrap());
    }

    #[test]
    fn invariant_form_solver_on_small_actions() {
        let f = Field::rational();
        // Raising and lowering operators on the 2-dimensional module admit
        // no symmetric invariant form (the invariant form is alternating).
        let e = Matrix::from_int_rows(f, &[&[0, 1], &[0, 0]]);
        let fm = Matrix::from_int_rows(f, &[&[0, 0], &[1, 0]]);
        assert!(invariant_symmetric_forms(&f, &[e, fm]).is_empty());
        // The zero action constrains nothing: all symmetric matrices.
        let z = Matrix::zero(f, 2, 2);
        let sols = invariant_symmetric_forms(&f, &[z]);
        assert_eq!(sols.len(), 3);
        for g in &sols {
            assert_eq!(g, &g.transpose());
        }
    }

    #[test]
    fn map_by_invertible_preserves_dimension() {
        let f = gf(7);
        let g = Matrix::from_int_rows(f, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(g.rank(), 3);
        let u = Subspace::span(
            f,
            3,
            &[vec![f.one(), f.integer(2), f.integer(3)]],
        )
        .unwrap();
        let image = u.map(&g).unwrap();
        assert_eq!(image.dim(), 1);
        // The image contains exactly g * v.
        let gv = g.mul_vec(&[f.one(), f.integer(2), f.integer(3)]).unwrap();
        assert!(image.contains_vector(&gv).unwrap());
    }

    fn gf7_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0u64..7, rows * cols).prop_map(move |vals| {
            let f = gf(7);
            let mut m = Matrix::zero(f, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = f.integer(vals[i * cols + j] as i64);
                }
            }
            m
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in gf7_matrix(4, 5)) {
            let (r1, p1) = m.rref();
            let (r2, p2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn rank_equals_transpose_rank(m in gf7_matrix(4, 6)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_dimension_complements_rank(m in gf7_matrix(3, 5)) {
            let ker = m.kernel();
            prop_assert_eq!(ker.len(), 5 - m.rank());
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|e| e.is_zero()));
            }
        }

        #[test]
        fn grassmann_identity(
            a in proptest::collection::vec(0u64..7, 2 * 5),
            b in proptest::collection::vec(0u64..7, 2 * 5),
        ) {
            let f = gf(7);
            let mk = |vals: &[u64]| {
                let rows: Vec<Vec<FieldElement>> = vals
                    .chunks(5)
                    .map(|ch| ch.iter().map(|&x| f.integer(x as i64)).collect())
                    .collect();
                Subspace::span(f, 5, &rows).unwrap()
            };
            let u = mk(&a);
            let w = mk(&b);
            let s = u.sum(&w).unwrap();
            let i = u.intersect(&w).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(s.contains(&u).unwrap());
            prop_assert!(u.contains(&i).unwrap());
        }

        #[test]
        fn span_is_scale_invariant(
            vals in proptest::collection::vec(0u64..7, 5),
            c in 1u64..7,
        ) {
            let f = gf(7);
            let v: Vec<FieldElement> = vals.iter().map(|&x| f.integer(x as i64)).collect();
            let scaled: Vec<FieldElement> =
                v.iter().map(|e| e * &f.integer(c as i64)).collect();
            let u = Subspace::span(f, 5, &[v]).unwrap();
            let w = Subspace::span(f, 5, &[scaled]).unwrap();
            prop_assert_eq!(u, w);
        }

        #[test]
        fn matrix_multiplication_is_associative(
            a in gf7_matrix(3, 3),
            b in gf7_matrix(3, 3),
            c in gf7_matrix(3, 3),
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
