//! Dense row-major matrices over a prime field with exact elimination.
//!
//! Sizes in this crate stay below a few thousand rows, so dense Gaussian
//! elimination is both simple and fast enough. Every consumer that needs a
//! rank, kernel, solution, or column basis goes through the one `rref`
//! routine here.

use alloc::{vec, vec::Vec};

use crate::fp::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, cols: usize) -> Self {
        let mut m = Matrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, fp: &PrimeField) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let p = fp.modulus();
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let out_row = out.row_mut(i);
                for j in 0..other.cols {
                    out_row[j] = (out_row[j] + a * orow[j]) % p;
                }
            }
        }
        out
    }

    pub fn row_vec_mul(v: &[u64], m: &Matrix, fp: &PrimeField) -> Vec<u64> {
        assert_eq!(v.len(), m.rows);
        let p = fp.modulus();
        let mut out = vec![0u64; m.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(m.row(k)) {
                *o = (*o + a * x) % p;
            }
        }
        out
    }

    /// Vertical stack; all pieces must share the column count.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let cols = parts[0].cols;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zero(rows, cols);
        let mut at = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            for i in 0..m.rows {
                out.row_mut(at).copy_from_slice(m.row(i));
                at += 1;
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns pivot column indices.
    pub fn rref(&mut self, fp: &PrimeField) -> Vec<usize> {
        let p = fp.modulus();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut sel = None;
            for i in r..self.rows {
                if self[(i, c)] != 0 {
                    sel = Some(i);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            self.swap_rows(r, sel);
            let inv = fp.inv(self[(r, c)]);
            for x in self.row_mut(r).iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let f = self[(i, c)];
                    let (head, tail) = self.data.split_at_mut(i * self.cols);
                    let (ri, rr) = if i > r {
                        (&mut tail[..self.cols], &head[r * self.cols..r * self.cols + self.cols])
                    } else {
                        (
                            &mut head[i * self.cols..i * self.cols + self.cols],
                            &tail[(r - i - 1) * self.cols..(r - i - 1) * self.cols + self.cols],
                        )
                    };
                    for (x, &y) in ri.iter_mut().zip(rr) {
                        *x = (*x + (p - f) * y) % p;
                    }
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
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, fp: &PrimeField) -> usize {
        let mut m = self.clone();
        m.rref(fp).len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per row of the
    /// returned matrix. Satisfies `rank + kernel rows = cols`.
    pub fn kernel(&self, fp: &PrimeField) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref(fp);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zero(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out[(k, fc)] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                out[(k, pc)] = fp.neg(m[(r, fc)]);
            }
        }
        out
    }

    /// Basis of the row space (the nonzero rows of the rref).
    pub fn row_basis(&self, fp: &PrimeField) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref(fp);
        let mut out = Matrix::zero(pivots.len(), self.cols);
        for i in 0..pivots.len() {
            out.row_mut(i).copy_from_slice(m.row(i));
        }
        out
    }

    /// Solve `x M = rhs` for a row vector `x`, if possible.
    pub fn solve_left(&self, rhs: &[u64], fp: &PrimeField) -> Option<Vec<u64>> {
        // Transpose to the usual column-vector problem M^T x^T = rhs^T.
        let t = self.transpose();
        t.solve_right(rhs, fp)
    }

    /// Solve `M x = rhs` for a column vector `x`, if possible.
    pub fn solve_right(&self, rhs: &[u64], fp: &PrimeField) -> Option<Vec<u64>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug[(i, self.cols)] = rhs[i];
        }
        let pivots = aug.rref(fp);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)];
        }
        Some(x)
    }

    /// Row-reduce `basis` once and reuse it to test membership of vectors in
    /// its row span, returning coordinates when inside.
    pub fn span_solver(&self, fp: &PrimeField) -> SpanSolver {
        // Keep an augmented identity to track coordinates.
        let mut aug = Matrix::zero(self.rows, self.cols + self.rows);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug[(i, self.cols + i)] = 1;
        }
        // Eliminate only on the first block.
        let p = fp.modulus();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == aug.rows {
                break;
            }
            let mut sel = None;
            for i in r..aug.rows {
                if aug[(i, c)] != 0 {
                    sel = Some(i);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            aug.swap_rows(r, sel);
            let inv = fp.inv(aug[(r, c)]);
            for x in aug.row_mut(r).iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..aug.rows {
                if i != r && aug[(i, c)] != 0 {
                    let f = p - aug[(i, c)];
                    let row_r = aug.row(r).to_vec();
                    for (x, y) in aug.row_mut(i).iter_mut().zip(row_r) {
                        *x = (*x + f * y) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        SpanSolver {
            aug,
            pivots,
            cols: self.cols,
            nbasis: self.rows,
        }
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = u64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Prepared row-span membership tester; see [`Matrix::span_solver`].
pub struct SpanSolver {
    aug: Matrix,
    pivots: Vec<usize>,
    cols: usize,
    nbasis: usize,
}

impl SpanSolver {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// If `v` lies in the row span, returns coordinates w.r.t. the original rows.
    pub fn coordinates(&self, v: &[u64], fp: &PrimeField) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.cols);
        let p = fp.modulus();
        let mut rem = v.to_vec();
        let mut coords = vec![0u64; self.nbasis];
        for (r, &c) in self.pivots.iter().enumerate() {
            if rem[c] != 0 {
                let f = rem[c];
                for j in 0..self.cols {
                    rem[j] = (rem[j] + (p - f) * self.aug[(r, j)]) % p;
                }
                for k in 0..self.nbasis {
                    coords[k] = (coords[k] + f * self.aug[(r, self.cols + k)]) % p;
                }
            }
        }
        if rem.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[u64], fp: &PrimeField) -> bool {
        self.coordinates(v, fp).is_some()
    }

    /// Residue of `v` modulo the span (zero iff contained).
    pub fn reduce(&self, v: &[u64], fp: &PrimeField) -> Vec<u64> {
        let p = fp.modulus();
        let mut rem = v.to_vec();
        for (r, &c) in self.pivots.iter().enumerate() {
            if rem[c] != 0 {
                let f = rem[c];
                for j in 0..self.cols {
                    rem[j] = (rem[j] + (p - f) * self.aug[(r, j)]) % p;
                }
            }
        }
        rem
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;

    fn fp() -> PrimeField {
        PrimeField::new(32003)
    }

    #[test]
    fn identity_rank() {
        assert_eq!(Matrix::identity(5).rank(&fp()), 5);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(Matrix::zero(3, 7).rank(&fp()), 0);
    }

    #[test]
    fn rank_transpose_and_kernel() {
        let f = fp();
        let mut rng = Stream::new(7, "matrix-test", 0);
        for trial in 0..20 {
            let rows = 3 + (trial % 5);
            let cols = 2 + (trial % 7);
            let mut m = Matrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = rng.field_element(&f);
                }
            }
            let r = m.rank(&f);
            assert_eq!(r, m.transpose().rank(&f));
            let ker = m.kernel(&f);
            assert_eq!(r + ker.rows, cols);
            for k in 0..ker.rows {
                let v = ker.row(k);
                for i in 0..rows {
                    assert_eq!(f.dot(m.row(i), v), 0);
                }
            }
        }
    }

    #[test]
    fn solve_roundtrip() {
        let f = fp();
        let mut rng = Stream::new(3, "matrix-solve", 0);
        let mut m = Matrix::zero(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = rng.field_element(&f);
            }
        }
        let x = [1u64, 2, 3, 4];
        let rhs: Vec<u64> = (0..4).map(|i| f.dot(m.row(i), &x)).collect();
        let sol = m.solve_right(&rhs, &f).unwrap();
        let back: Vec<u64> = (0..4).map(|i| f.dot(m.row(i), &sol)).collect();
        assert_eq!(back, rhs);
    }

    #[test]
    fn span_solver_membership() {
        let f = fp();
        let m = Matrix::from_rows(
            alloc::vec![alloc::vec![1, 2, 3], alloc::vec![0, 1, 1]],
            3,
        );
        let s = m.span_solver(&f);
        let v = [1u64, 4, 5]; // row0 + 2*row1
        let c = s.coordinates(&v, &f).unwrap();
        assert_eq!(c, alloc::vec![1, 2]);
        assert!(!s.contains(&[1, 0, 0], &f));
    }
}
