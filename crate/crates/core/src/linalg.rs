//! Dense exact linear algebra over a [`Field`]: matrices, reduced row echelon
//! form, nullspaces and coordinate subspaces.

use std::fmt;

use crate::field::{Elem, Field};

pub type Vector = Vec<Elem>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                match &self[(i, j)] {
                    Elem::Fin(x) => write!(f, "{x}")?,
                    Elem::Rat(r) => write!(f, "{r}")?,
                }
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(k: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![k.zero(); rows * cols],
        }
    }

    pub fn identity(k: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(k, n, n);
        for i in 0..n {
            m[(i, i)] = k.one();
        }
        m
    }

    pub fn scalar(k: &Field, n: usize, c: &Elem) -> Matrix {
        let mut m = Matrix::zeros(k, n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Vec<Elem>>) -> Matrix {
        assert_eq!(data.len(), rows, "row count");
        let mut flat = Vec::with_capacity(rows * cols);
        for r in data {
            assert_eq!(r.len(), cols, "ragged matrix");
            flat.extend(r);
        }
        Matrix {
            rows,
            cols,
            data: flat,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_columns(k: &Field, rows: usize, cols: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(k, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Small-integer constructor, handy in tests and fixtures.
    pub fn from_ints(k: &Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_rows(
            r,
            c,
            rows.iter()
                .map(|row| row.iter().map(|&x| k.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self, k: &Field) -> bool {
        self.data.iter().all(|x| k.is_zero(x))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, k: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if k.is_zero(b) {
                        continue;
                    }
                    let t = k.mul(a, b);
                    out[(i, j)] = k.add(&out[(i, j)], &t);
                }
            }
        }
        out
    }

    pub fn apply(&self, k: &Field, v: &[Elem]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| dot(k, self.row(i), v))
            .collect()
    }

    pub fn add(&self, k: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| k.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, k: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| k.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Field, c: &Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| k.mul(a, c)).collect(),
        }
    }

    /// Accumulates `c * other` into `self`.
    pub fn add_scaled(&mut self, k: &Field, c: &Elem, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if k.is_zero(c) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !k.is_zero(b) {
                *a = k.add(a, &k.mul(c, b));
            }
        }
    }

    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn block_diag(k: &Field, a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(k, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m[(a.rows + i, a.cols + j)] = b[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, k: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !k.is_zero(&m[(i, c)])) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = k.inv(&m[(r, c)]).expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = k.mul(&m[(r, j)], &inv);
            }
            for i in 0..m.rows {
                if i == r || k.is_zero(&m[(i, c)]) {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if k.is_zero(&m[(r, j)]) {
                        continue;
                    }
                    let t = k.mul(&f, &m[(r, j)]);
                    m[(i, j)] = k.sub(&m[(i, j)], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, k: &Field) -> usize {
        self.rref(k).1.len()
    }

    pub fn is_invertible(&self, k: &Field) -> bool {
        self.is_square() && self.rank(k) == self.rows
    }

    pub fn inverse(&self, k: &Field) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(k, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = k.one();
        }
        let (r, pivots) = aug.rref(k);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Nullspace basis in echelon-canonical order: one vector per free
    /// column (ascending), with a 1 in that column and 0 in every other free
    /// column.
    pub fn nullspace(&self, k: &Field) -> Subspace {
        let (r, pivots) = self.rref(k);
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![k.zero(); n];
                v[f] = k.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = k.neg(&r[(row, f)]);
                }
                v
            })
            .collect();
        Subspace {
            ambient: n,
            basis,
            positions: free,
        }
    }
}

pub fn dot(k: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    let mut acc = k.zero();
    for (x, y) in a.iter().zip(b) {
        if k.is_zero(x) || k.is_zero(y) {
            continue;
        }
        acc = k.add(&acc, &k.mul(x, y));
    }
    acc
}

pub fn vec_add(k: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| k.add(x, y)).collect()
}

pub fn vec_sub(k: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| k.sub(x, y)).collect()
}

pub fn vec_scale(k: &Field, c: &Elem, a: &[Elem]) -> Vector {
    a.iter().map(|x| k.mul(c, x)).collect()
}

pub fn is_zero_vec(k: &Field, a: &[Elem]) -> bool {
    a.iter().all(|x| k.is_zero(x))
}

/// A subspace of `k^ambient` with a basis in which coordinates can be read
/// off directly: `basis[t][positions[s]] == δ_ts`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    positions: Vec<usize>,
}

impl Subspace {
    /// Span of arbitrary vectors, basis taken from the nonzero rows of the
    /// reduced row echelon form.
    pub fn span(k: &Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: vec![],
                positions: vec![],
            };
        }
        let m = Matrix::from_rows(vectors.len(), ambient, vectors.to_vec());
        let (r, pivots) = m.rref(k);
        Subspace {
            ambient,
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
            positions: pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn combine(&self, k: &Field, coeffs: &[Elem]) -> Vector {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut v = vec![k.zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if k.is_zero(c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !k.is_zero(y) {
                    *x = k.add(x, &k.mul(c, y));
                }
            }
        }
        v
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the span.
    pub fn coords(&self, k: &Field, v: &[Elem]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient);
        let c: Vector = self.positions.iter().map(|&p| v[p].clone()).collect();
        if self.combine(k, &c) == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, k: &Field, v: &[Elem]) -> bool {
        self.coords(k, v).is_some()
    }

    /// Reduces `v` modulo the subspace; the result vanishes on `positions`.
    /// Requires a basis built by [`Subspace::span`].
    pub fn reduce(&self, k: &Field, v: &[Elem]) -> Vector {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.positions) {
            let c = out[p].clone();
            if k.is_zero(&c) {
                continue;
            }
            for (x, y) in out.iter_mut().zip(b) {
                if !k.is_zero(y) {
                    *x = k.sub(x, &k.mul(&c, y));
                }
            }
        }
        out
    }
}

/// Block of unknowns forming a `rows × cols` matrix inside a linear system.
#[derive(Clone, Copy, Debug)]
pub struct VarBlock {
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
    /// Column-reversed layout: index `(cols-1-j)*rows + i`. Used where the
    /// search later wants column 0 to depend only on the last free
    /// variables.
    pub reversed_columns: bool,
}

impl VarBlock {
    pub fn new(offset: usize, rows: usize, cols: usize) -> VarBlock {
        VarBlock {
            offset,
            rows,
            cols,
            reversed_columns: false,
        }
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        if self.reversed_columns {
            self.offset + (self.cols - 1 - j) * self.rows + i
        } else {
            self.offset + i * self.cols + j
        }
    }

    pub fn extract(&self, v: &[Elem]) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| v[self.index(i, j)].clone())
    }

    pub fn write(&self, m: &Matrix, v: &mut [Elem]) {
        for i in 0..self.rows {
            for j in 0..self.cols {
                v[self.index(i, j)] = m[(i, j)].clone();
            }
        }
    }
}

/// One term `coeff · L · X · R` of a linear matrix equation in the unknown `X`.
pub struct Term<'a> {
    pub var: VarBlock,
    pub left: Option<&'a Matrix>,
    pub right: Option<&'a Matrix>,
    pub negate: bool,
}

/// Homogeneous linear system assembled row by row.
pub struct LinearSystem {
    k: Field,
    nvars: usize,
    rows: Vec<Vector>,
}

impl LinearSystem {
    pub fn new(k: &Field, nvars: usize) -> Self {
        LinearSystem {
            k: k.clone(),
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vector) {
        assert_eq!(row.len(), self.nvars);
        if !is_zero_vec(&self.k, &row) {
            self.rows.push(row);
        }
    }

    /// Adds the entrywise equations `Σ terms = 0` for an `out_rows × out_cols`
    /// matrix equation.
    pub fn matrix_equation(&mut self, out_rows: usize, out_cols: usize, terms: &[Term<'_>]) {
        let k = self.k.clone();
        for i in 0..out_rows {
            for j in 0..out_cols {
                let mut row = vec![k.zero(); self.nvars];
                for t in terms {
                    let v = t.var;
                    for a in 0..v.rows {
                        let l = match t.left {
                            Some(m) => m[(i, a)].clone(),
                            None if a == i => k.one(),
                            None => continue,
                        };
                        if k.is_zero(&l) {
                            continue;
                        }
                        for b in 0..v.cols {
                            let r = match t.right {
                                Some(m) => m[(b, j)].clone(),
                                None if b == j => k.one(),
                                None => continue,
                            };
                            if k.is_zero(&r) {
                                continue;
                            }
                            let mut c = k.mul(&l, &r);
                            if t.negate {
                                c = k.neg(&c);
                            }
                            let idx = v.index(a, b);
                            row[idx] = k.add(&row[idx], &c);
                        }
                    }
                }
                self.push(row);
            }
        }
    }

    pub fn solve(&self) -> Subspace {
        let m = Matrix::from_rows(self.rows.len(), self.nvars, self.rows.clone());
        m.nullspace(&self.k)
    }
}
