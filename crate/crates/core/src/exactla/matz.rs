//! Integer matrices, Smith normal form and finitely generated abelian groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Arbitrary-precision integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatZ {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for MatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatZ {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

impl MatZ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatZ { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        MatZ { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &MatZ) -> MatZ {
        assert_eq!(self.cols, other.rows);
        let mut out = MatZ::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

/// Result of [`smith_normal_form`]: `u * m * v = s`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: MatZ,
    pub s: MatZ,
    pub v: MatZ,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivot rule: the entry of smallest nonzero absolute value in the remaining
/// block, ties broken row-major.
pub fn smith_normal_form(m: &MatZ) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = MatZ::identity(r);
    let mut v = MatZ::identity(c);

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = smallest_entry(&s, t) else {
                return finish(u, s, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..r {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                dirty |= !s.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                dirty |= !s.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: every remaining entry must be a multiple of the pivot
            let piv = s.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
    }
    finish(u, s, v)
}

fn smallest_entry(s: &MatZ, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let a = s.get(i, j).abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn finish(mut u: MatZ, mut s: MatZ, v: MatZ) -> Smith {
    for i in 0..s.rows.min(s.cols) {
        if s.get(i, i).is_negative() {
            s.negate_row(i);
            u.negate_row(i);
        }
    }
    Smith { u, s, v }
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/d_i` with the labels
/// of the generators it was presented with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupDescription {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<String>,
}

impl AbelianGroupDescription {
    pub fn trivial() -> Self {
        AbelianGroupDescription { free_rank: 0, invariant_factors: Vec::new(), generators: Vec::new() }
    }

    pub fn cyclic(order: u64, generator: impl Into<String>) -> Self {
        if order == 1 {
            let mut g = Self::trivial();
            g.generators.push(generator.into());
            return g;
        }
        AbelianGroupDescription {
            free_rank: 0,
            invariant_factors: vec![BigInt::from(order)],
            generators: vec![generator.into()],
        }
    }

    /// Same isomorphism type, ignoring generator labels.
    pub fn same_group(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors == other.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    pub fn invariant_factors_u64(&self) -> Vec<u64> {
        self.invariant_factors.iter().map(|d| d.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for AbelianGroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroupDescription {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("AbelianGroupDescription", 3)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        let factors: Vec<serde_json::Value> = self
            .invariant_factors
            .iter()
            .map(|d| match d.to_u64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        st.serialize_field("invariant_factors", &factors)?;
        st.serialize_field("generators", &self.generators)?;
        st.end()
    }
}

/// Cokernel of the relation matrix: rows are relations, columns generators.
pub fn group_from_presentation(generators: &[String], relations: &MatZ) -> AbelianGroupDescription {
    assert_eq!(relations.cols(), generators.len(), "relation columns must index generators");
    let smith = smith_normal_form(relations);
    let diag = smith.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let invariant_factors: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
    AbelianGroupDescription {
        free_rank: generators.len() - nonzero,
        invariant_factors,
        generators: generators.to_vec(),
    }
}
