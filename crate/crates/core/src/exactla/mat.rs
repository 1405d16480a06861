//! Dense matrices over a [`Field`] with exact Gaussian elimination.

use std::fmt;

use super::field::Field;

/// Row-major dense matrix. Every entry lives in the matrix's field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.fmt_elem(x)).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    pub matrix: Mat<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Mat { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Mat { field: field.clone(), rows: r, cols, data }
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows(field, rows, cols)
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(field: &F, len: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), len);
            for (i, x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !f.is_zero(b) {
                        out.data[base + j] = f.add_mul(&out.data[base + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add_mul(&acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Block diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Overwrite the block starting at `(r0, c0)` with `block`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(&self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Self::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = f.mul(a, other.get(k, l));
                        m.data[(i * other.rows + k) * c + j * other.cols + l] = v;
                    }
                }
            }
        }
        m
    }

    pub fn pow(&self, mut e: usize) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Fully reduced row echelon form; pivots are normalized to 1.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { matrix: m, pivots }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(&self.data[i * cols + c])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&self.data[r * cols + c]).expect("nonzero pivot");
            for j in c..cols {
                self.data[r * cols + j] = f.mul(&self.data[r * cols + j], &inv);
            }
            let pivot_row: Vec<F::Elem> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                for j in c..cols {
                    if !f.is_zero(&pivot_row[j]) {
                        self.data[i * cols + j] = f.add_mul(&self.data[i * cols + j], &neg, &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Null space basis, one vector per free column.
    ///
    /// The vector for free column `c` has a 1 at `c`, zeros at the other free
    /// columns, and is determined by the RREF at the pivots, which makes the
    /// basis canonical for a given kernel.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let Rref { matrix, pivots } = self.rref();
        kernel_from_rref(&matrix, &pivots)
    }

    /// `(rank, kernel basis)`.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<F::Elem>>) {
        let Rref { matrix, pivots } = self.rref();
        let k = kernel_from_rref(&matrix, &pivots);
        (pivots.len(), k)
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let bcol = Mat::from_vec(f, self.rows, 1, b.to_vec());
        let aug = self.hstack(&bcol);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Some `X` with `self * X = b` (free variables set to zero).
    pub fn solve_matrix(&self, b: &Mat<F>) -> Option<Mat<F>> {
        assert_eq!(b.rows, self.rows);
        let n = self.cols;
        let Rref { matrix, pivots } = self.hstack(b).rref();
        if pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = Mat::zeros(&self.field, n, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, matrix.get(r, n + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(&self.field, n));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the column space, as the pivot columns of `self`.
    pub fn column_space(&self) -> Vec<Vec<F::Elem>> {
        self.rref().pivots.iter().map(|&c| self.column(c)).collect()
    }
}

pub(crate) fn kernel_from_rref<F: Field>(m: &Mat<F>, pivots: &[usize]) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(m.get(r, free));
        }
        basis.push(v);
    }
    basis
}

/// Incrementally maintained subspace in reduced echelon form.
///
/// Supports membership tests, reduction of vectors modulo the span and
/// coordinates with respect to the original inserted vectors.
#[derive(Debug, Clone)]
pub struct EchelonSpace<F: Field> {
    field: F,
    len: usize,
    /// Echelon rows with pivot entry 1, sorted by insertion.
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    /// For each row, its expression in terms of inserted (accepted) vectors.
    combos: Vec<Vec<F::Elem>>,
    track: bool,
}

impl<F: Field> EchelonSpace<F> {
    pub fn new(field: &F, len: usize) -> Self {
        EchelonSpace { field: field.clone(), len, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new(), track: false }
    }

    /// Same as [`new`](Self::new) but remembers how each row was formed, which
    /// enables [`coordinates`](Self::coordinates).
    pub fn with_coordinates(field: &F, len: usize) -> Self {
        let mut s = Self::new(field, len);
        s.track = true;
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// Reduce `v` against the current rows; returns the residue and the
    /// combination of rows that was subtracted.
    fn reduce_tracked(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut r = v.to_vec();
        let mut used = vec![f.zero(); self.rows.len()];
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = r[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            let neg = f.neg(&c);
            for j in 0..self.len {
                if !f.is_zero(&row[j]) {
                    r[j] = f.add_mul(&r[j], &neg, &row[j]);
                }
            }
            used[k] = c;
        }
        (r, used)
    }

    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Insert `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.len);
        let f = self.field.clone();
        let (mut r, used) = self.reduce_tracked(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).unwrap();
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // combination expressing the new row in inserted vectors
        let n_inserted = self.rows.len() + 1;
        let mut combo = Vec::new();
        if self.track {
            combo = vec![f.zero(); n_inserted];
            combo[n_inserted - 1] = inv.clone();
            for (k, c) in used.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let coeff = f.neg(&f.mul(c, &inv));
                for (t, x) in self.combos[k].iter().enumerate() {
                    combo[t] = f.add_mul(&combo[t], &coeff, x);
                }
            }
            for c in self.combos.iter_mut() {
                c.push(f.zero());
            }
        }
        // keep the rows fully reduced at the new pivot
        for k in 0..self.rows.len() {
            let c = self.rows[k][p].clone();
            if f.is_zero(&c) {
                continue;
            }
            let neg = f.neg(&c);
            for j in 0..self.len {
                if !f.is_zero(&r[j]) {
                    self.rows[k][j] = f.add_mul(&self.rows[k][j], &neg, &r[j]);
                }
            }
            if self.track {
                for t in 0..n_inserted {
                    let add = f.mul(&neg, &combo[t]);
                    self.combos[k][t] = f.add(&self.combos[k][t], &add);
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        if self.track {
            self.combos.push(combo);
        }
        true
    }

    /// Coordinates of `v` in terms of the accepted inserted vectors (in
    /// insertion order), or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert!(self.track, "coordinates need a tracking space");
        let f = &self.field;
        let (r, used) = self.reduce_tracked(v);
        if r.iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        let n = self.rows.len();
        let mut out = vec![f.zero(); n];
        for (k, c) in used.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (t, x) in self.combos[k].iter().enumerate() {
                out[t] = f.add_mul(&out[t], c, x);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{Fp, Rationals};

    #[test]
    fn identity_has_full_rank() {
        let f = Fp::new(5);
        let (r, k) = Mat::identity(&f, 3).rank_kernel();
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let f = Fp::new(5);
        let (r, k) = Mat::zeros(&f, 2, 3).rank_kernel();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn rank_one_kernel_over_f5() {
        let f = Fp::new(5);
        let m = Mat::from_i64(&f, &[vec![1, 2], vec![2, 4]]);
        let (r, k) = m.rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![3, 1]]);
        assert!(m.mul_vec(&k[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn solve_cases() {
        let f = Fp::new(7);
        let id = Mat::identity(&f, 3);
        assert_eq!(id.solve(&[1, 2, 3]), Some(vec![1, 2, 3]));
        assert_eq!(Mat::zeros(&f, 2, 2).solve(&[1, 0]), None);
        let d = Mat::from_i64(&f, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(d.solve(&[1, 1]), Some(vec![4, 5]));
    }

    #[test]
    fn rational_inverse() {
        let q = Rationals;
        let m = Mat::from_i64(&q, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(&q, 2));
        let half = m.solve(&[q.one(), q.zero()]).unwrap();
        assert_eq!(m.mul_vec(&half), vec![q.one(), q.zero()]);
    }

    #[test]
    fn echelon_space_coordinates() {
        let f = Fp::new(3);
        let mut s = EchelonSpace::with_coordinates(&f, 3);
        assert!(s.insert(&[1, 1, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 2, 1]));
        let c = s.coordinates(&[1, 0, 2]).unwrap();
        // 1*(1,1,0) + 2*(0,1,1) = (1,0,2) mod 3
        assert_eq!(c, vec![1, 2]);
        assert!(s.coordinates(&[0, 0, 1]).is_none());
    }

    #[test]
    fn kron_shape() {
        let f = Fp::new(5);
        let a = Mat::from_i64(&f, &[vec![1, 2]]);
        let b = Mat::identity(&f, 2);
        let k = a.kron(&b);
        assert_eq!(k.shape(), (2, 4));
        assert_eq!(*k.get(1, 3), 2);
    }
}
