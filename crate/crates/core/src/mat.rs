//! Dense matrices over a prime field.
//!
//! Row-major `u64` storage with all entries kept reduced. Sizes here are
//! "desk scale" (a few thousand on a side at the very worst), so plain
//! Gaussian elimination is the right tool; the inner loops avoid division
//! and allocate nothing.

use crate::field::PrimeField;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    field: PrimeField,
    data: Vec<u64>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} mod {} [", self.rows, self.cols, self.field.modulus())?;
        for r in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", &self.row(r)[..self.cols.min(16)])?;
        }
        if self.rows > 12 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, field, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            for &x in row {
                data.push(x % field.modulus());
            }
        }
        Mat { rows: r, cols: c, field, data }
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j) % field.modulus());
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.add(*a, b);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.sub(*a, b);
        }
        out
    }

    pub fn scale(&self, s: u64) -> Mat {
        let mut out = self.clone();
        let s = s % self.field.modulus();
        for a in out.data.iter_mut() {
            *a = self.field.mul(*a, s);
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let p = self.field.modulus();
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        // i-k-j order keeps the inner loop streaming over contiguous rows.
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let p = self.field.modulus();
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, &b) in self.row(i).iter().zip(v) {
                    acc = (acc + a * b) % p;
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, field: self.field, data }
    }

    pub fn block_diag(field: PrimeField, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut out = Mat::zeros(self.field, r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                out.set(r - r0, c - c0, self.get(r, c));
            }
        }
        out
    }

    pub fn trace(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let mut t = 0;
        for i in 0..self.rows {
            t = self.field.add(t, self.get(i, i));
        }
        t
    }

    /// In-place reduction to reduced row echelon form. Returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.field.modulus();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // find pivot
            let mut pr = None;
            for i in r..self.rows {
                if self.get(i, c) != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            self.swap_rows(r, pr);
            let inv = self.field.inv(self.get(r, c));
            if inv != 1 {
                let row = &mut self.data[r * self.cols..(r + 1) * self.cols];
                for x in row[c..].iter_mut() {
                    *x = *x * inv % p;
                }
            }
            // eliminate all other rows
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                let (head, tail) = self.data.split_at_mut(std::cmp::max(i, r) * self.cols);
                let (src, dst) = if i > r {
                    (
                        &head[r * self.cols..(r + 1) * self.cols],
                        &mut tail[..self.cols],
                    )
                } else {
                    (
                        &tail[..self.cols],
                        &mut head[i * self.cols..(i + 1) * self.cols],
                    )
                };
                for (d, &s) in dst[c..].iter_mut().zip(&src[c..]) {
                    *d = (*d + neg * s) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * c);
        head[lo * c..(lo + 1) * c].swap_with_slice(&mut tail[..c]);
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right kernel, one row per basis vector.
    pub fn kernel_basis(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.field, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                let v = m.get(r, fc);
                if v != 0 {
                    out.set(k, pc, self.field.neg(v));
                }
            }
        }
        out
    }

    /// One solution of `self * x = b`, if consistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let bm = Mat { rows: self.rows, cols: 1, field: self.field, data: b.to_vec() };
        let sol = self.solve_mat(&bm)?;
        Some(sol.data)
    }

    /// Columnwise solve: find X with `self * X = B`.
    pub fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(b.rows, self.rows);
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place();
        // any pivot in the B-block means inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let mut aug = self.hstack(&Mat::identity(self.field, self.rows));
        let pivots = aug.rref_in_place();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(aug.submatrix(0, self.rows, self.cols, 2 * self.cols))
    }

    /// Row-space basis in RREF, zero rows dropped.
    pub fn row_basis(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        m.submatrix(0, pivots.len(), 0, m.cols)
    }

    /// Does the row space of `self` contain `v`?
    pub fn row_space_contains(&self, v: &[u64]) -> bool {
        // self is assumed already reduced when called in hot paths; do the
        // general thing here.
        let vt = Mat { rows: 1, cols: v.len(), field: self.field, data: v.to_vec() };
        let stacked = self.vstack(&vt);
        stacked.rank() == self.rank()
    }
}

/// Stack many row vectors into a matrix.
pub fn rows_to_mat(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Mat {
    let mut out = Mat::zeros(field, rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.len(), cols);
        for (j, &v) in r.iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn rank_of_dependent_rows_mod_5() {
        // [[2,4],[1,2]] over F_5: second row is 3 * first (3*2=6=1, 3*4=12=2).
        let m = Mat::from_rows(f5(), vec![vec![2, 4], vec![1, 2]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.rows, 1);
        // kernel spanned by (3, 1): 2*3 + 4*1 = 10 = 0 mod 5
        let v = k.row(0);
        assert_eq!(m.mul_vec(v), vec![0, 0]);
    }

    #[test]
    fn rref_identity_and_inverse() {
        let f = PrimeField::new(101).unwrap();
        let m = Mat::from_rows(f, vec![vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv), Mat::identity(f, 3));
        assert_eq!(inv.mul(&m), Mat::identity(f, 3));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = f5();
        let m = Mat::from_rows(f, vec![vec![1, 1], vec![2, 2]]);
        assert!(m.solve(&[1, 2]).is_some());
        assert!(m.solve(&[1, 3]).is_none());
        let x = m.solve(&[1, 2]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 2]);
    }

    #[test]
    fn kernel_dimension_matches_rank_nullity() {
        let f = PrimeField::new(7).unwrap();
        let m = Mat::from_rows(
            f,
            vec![vec![1, 2, 3, 4], vec![2, 4, 6, 1], vec![3, 6, 2, 5]],
        );
        let r = m.rank();
        let k = m.kernel_basis();
        assert_eq!(r + k.rows, m.cols);
        for i in 0..k.rows {
            assert_eq!(m.mul_vec(k.row(i)), vec![0, 0, 0]);
        }
    }

    #[test]
    fn block_and_stack_shapes() {
        let f = f5();
        let a = Mat::identity(f, 2);
        let b = Mat::zeros(f, 1, 3);
        let d = Mat::block_diag(f, &[&a, &b]);
        assert_eq!((d.rows, d.cols), (3, 5));
        assert_eq!(d.get(0, 0), 1);
        assert_eq!(d.get(1, 1), 1);
        let h = a.hstack(&Mat::identity(f, 2));
        assert_eq!((h.rows, h.cols), (2, 4));
        let v = a.vstack(&Mat::identity(f, 2));
        assert_eq!((v.rows, v.cols), (4, 2));
    }

    #[test]
    fn row_space_contains_detects_membership() {
        let f = f5();
        let m = Mat::from_rows(f, vec![vec![1, 0, 2], vec![0, 1, 3]]);
        assert!(m.row_space_contains(&[1, 1, 0])); // 1*r0 + 1*r1 = (1,1,5=0)
        assert!(!m.row_space_contains(&[0, 0, 1]));
    }
}
