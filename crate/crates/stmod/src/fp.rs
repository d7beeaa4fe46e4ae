//! Dense exact linear algebra over the prime field `F_p`.
//!
//! Matrices are row-major with entries reduced into `[0, p)`. Elimination
//! uses a fixed pivot rule (leftmost column, smallest row index) so every
//! basis this crate produces is reproducible across runs. The row axpy is
//! dispatched to a const-modulus kernel for the small primes we care about,
//! which lets the compiler turn `% p` into a multiply-shift and vectorize
//! the loop.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Modular inverse by Fermat; `p` prime, `a` nonzero mod `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc: u64 = 1;
    let mut b = (base % p) as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn axpy_const<const P: u32>(dst: &mut [u32], src: &[u32], f: u32) {
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        *d = (*d + f * *s) % P;
    }
}

fn axpy_generic(dst: &mut [u32], src: &[u32], f: u32, p: u32) {
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        *d = (*d + f * *s) % p;
    }
}

/// `dst += f * src` entrywise mod `p`; both slices already reduced.
#[inline]
pub fn axpy(dst: &mut [u32], src: &[u32], f: u32, p: u32) {
    debug_assert_eq!(dst.len(), src.len());
    if f == 0 {
        return;
    }
    match p {
        2 => axpy_const::<2>(dst, src, f),
        3 => axpy_const::<3>(dst, src, f),
        5 => axpy_const::<5>(dst, src, f),
        7 => axpy_const::<7>(dst, src, f),
        _ => axpy_generic(dst, src, f, p),
    }
}

fn scale_row(row: &mut [u32], f: u32, p: u32) {
    if f == 1 {
        return;
    }
    for x in row.iter_mut() {
        *x = *x * f % p;
    }
}

/// Dense matrix over `F_p`, row-major, entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {} [", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Row-reduction summary: pivot (row, col) pairs in order.
#[derive(Debug, Clone)]
pub struct RrefInfo {
    pub pivots: Vec<(usize, usize)>,
}

impl RrefInfo {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(_, c)| c).collect()
    }
}

/// Affine solution set of `A X = B`: one particular solution plus a kernel
/// basis for the homogeneous part.
#[derive(Debug, Clone)]
pub enum Solution {
    Inconsistent,
    Solved {
        particular: FpMatrix,
        kernel: FpMatrix,
    },
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nr * nc);
        for r in &rows {
            if r.len() != nc {
                return Err(Error::ShapeMismatch(format!(
                    "ragged rows: {} vs {}",
                    r.len(),
                    nc
                )));
            }
            data.extend(r.iter().map(|&x| x % p));
        }
        Ok(FpMatrix {
            p,
            rows: nr,
            cols: nc,
            data,
        })
    }

    /// Column vector from entries.
    pub fn col_vec(p: u32, entries: &[u32]) -> Self {
        FpMatrix {
            p,
            rows: entries.len(),
            cols: 1,
            data: entries.iter().map(|&x| x % p).collect(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    fn check_mod(&self, other: &FpMatrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_mod(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_mod(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "sub {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Ok(FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, f: u32) -> FpMatrix {
        let f = f % self.p;
        let data = self.data.iter().map(|&a| a * f % self.p).collect();
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> FpMatrix {
        self.scale(self.p - 1)
    }

    /// Matrix product; accumulates a whole output row in `u32` before
    /// reducing once (safe: entries < p <= 7, inner dimension < 2^25).
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_mod(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        debug_assert!(k < (u32::MAX / (p * p)) as usize);
        let mut out = vec![0u32; n * m];
        for i in 0..n {
            let orow = &mut out[i * m..(i + 1) * m];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[l * m..(l + 1) * m];
                for (o, &b) in orow.iter_mut().zip(brow.iter()) {
                    *o += a * b;
                }
            }
            for o in orow.iter_mut() {
                *o %= p;
            }
        }
        Ok(FpMatrix {
            p,
            rows: n,
            cols: m,
            data: out,
        })
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch(format!(
                "mul_vec {}x{} by {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let p = self.p;
        let mut out = vec![0u32; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let row = self.row(i);
            let mut acc: u64 = 0;
            for (&a, &b) in row.iter().zip(v.iter()) {
                acc += (a * b) as u64;
            }
            *o = (acc % p as u64) as u32;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("pow of non-square".into()));
        }
        let mut acc = FpMatrix::identity(self.p, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_mod(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row mismatch".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_mod(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack col mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Stack a list of matrices with equal column counts.
    pub fn vstack_all(p: u32, cols: usize, parts: &[&FpMatrix]) -> Result<FpMatrix> {
        let mut acc = FpMatrix::zeros(p, 0, cols);
        for part in parts {
            acc = acc.vstack(part)?;
        }
        Ok(acc)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.data[oi * out.cols + oj] = self.get(i, j);
            }
        }
        out
    }

    /// Kronecker product with the first factor major:
    /// `(A (x) B)[(ia*rb + ib), (ja*cb + jb)] = A[ia,ja] * B[ib,jb]`.
    pub fn kronecker(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_mod(other)?;
        let p = self.p;
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (other.rows, other.cols);
        let mut out = FpMatrix::zeros(p, ra * rb, ca * cb);
        for ia in 0..ra {
            for ja in 0..ca {
                let a = self.get(ia, ja);
                if a == 0 {
                    continue;
                }
                for ib in 0..rb {
                    for jb in 0..cb {
                        let v = a * other.get(ib, jb) % p;
                        out.data[(ia * rb + ib) * out.cols + (ja * cb + jb)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// In-place reduced row echelon form. Pivot rule: leftmost column,
    /// smallest row index among remaining rows.
    pub fn rref_in_place(&mut self) -> RrefInfo {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for col in 0..self.cols {
            if next_row >= self.rows {
                break;
            }
            // find pivot
            let mut pr = None;
            for i in next_row..self.rows {
                if self.get(i, col) != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            self.swap_rows(next_row, pr);
            let pval = self.get(next_row, col);
            if pval != 1 {
                let f = inv_mod(pval, p);
                let row = &mut self.data[next_row * self.cols..(next_row + 1) * self.cols];
                scale_row(&mut row[col..], f, p);
            }
            // eliminate everywhere else
            for i in 0..self.rows {
                if i == next_row {
                    continue;
                }
                let f = self.get(i, col);
                if f == 0 {
                    continue;
                }
                let f = p - f;
                let (src, dst) = if i < next_row {
                    let (a, b) = self.data.split_at_mut(next_row * self.cols);
                    (
                        &b[col..self.cols],
                        &mut a[i * self.cols + col..(i + 1) * self.cols],
                    )
                } else {
                    let (a, b) = self.data.split_at_mut(i * self.cols);
                    (
                        &a[next_row * self.cols + col..(next_row + 1) * self.cols],
                        &mut b[col..self.cols],
                    )
                };
                axpy(dst, src, f, p);
            }
            pivots.push((next_row, col));
            next_row += 1;
        }
        RrefInfo { pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.data.swap(a * c + j, b * c + j);
        }
    }

    /// Rank via forward elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let p = m.p;
        let mut rank = 0usize;
        for col in 0..m.cols {
            if rank >= m.rows {
                break;
            }
            let mut pr = None;
            for i in rank..m.rows {
                if m.get(i, col) != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            m.swap_rows(rank, pr);
            let f = inv_mod(m.get(rank, col), p);
            let row = &mut m.data[rank * m.cols..(rank + 1) * m.cols];
            scale_row(&mut row[col..], f, p);
            for i in rank + 1..m.rows {
                let f = m.get(i, col);
                if f == 0 {
                    continue;
                }
                let f = p - f;
                let (a, b) = m.data.split_at_mut(i * m.cols);
                axpy(
                    &mut b[col..m.cols],
                    &a[rank * m.cols + col..(rank + 1) * m.cols],
                    f,
                    p,
                );
            }
            rank += 1;
        }
        rank
    }

    /// Kernel basis as matrix columns, in the standard echelon normal form:
    /// basis vector `j` has entry 1 at free column `free[j]` and zeros at
    /// every other free column.
    pub fn kernel_basis(&self) -> FpMatrix {
        let (cols, free) = self.kernel_basis_sparse();
        let mut out = FpMatrix::zeros(self.p, self.cols, free.len());
        for (j, kv) in cols.iter().enumerate() {
            for &(i, v) in kv {
                out.data[i as usize * out.cols + j] = v;
            }
        }
        out
    }

    /// Sparse kernel basis: each column has at most `rank + 1` nonzeros.
    /// Returns `(columns, free_column_indices)`.
    pub fn kernel_basis_sparse(&self) -> (Vec<Vec<(u32, u32)>>, Vec<usize>) {
        let mut m = self.clone();
        let info = m.rref_in_place();
        let p = self.p;
        let pivot_cols = info.pivot_cols();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut col: Vec<(u32, u32)> = Vec::new();
            for (pi, &(prow, pcol)) in info.pivots.iter().enumerate() {
                let _ = pi;
                let v = m.get(prow, f);
                if v != 0 {
                    col.push((pcol as u32, p - v));
                }
            }
            col.push((f as u32, 1));
            col.sort_unstable_by_key(|&(i, _)| i);
            out.push(col);
        }
        (out, free)
    }

    /// Basis of the column space, as matrix columns in reduced echelon form
    /// (echelon with respect to the row coordinates).
    pub fn image_basis(&self) -> FpMatrix {
        let mut t = self.transpose();
        let info = t.rref_in_place();
        let rank = info.rank();
        let mut out = FpMatrix::zeros(self.p, self.rows, rank);
        for (k, &(row, _)) in info.pivots.iter().enumerate() {
            for i in 0..self.rows {
                out.data[i * rank + k] = t.get(row, i);
            }
        }
        out
    }

    /// Solve `A X = B` for all `X`; `B` has matching row count.
    pub fn solve(&self, b: &FpMatrix) -> Result<Solution> {
        self.check_mod(b)?;
        if self.rows != b.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: {} rows vs rhs {} rows",
                self.rows, b.rows
            )));
        }
        let mut aug = self.hstack(b)?;
        let info = aug.rref_in_place();
        // consistency: no pivot in the rhs block
        for &(_, c) in &info.pivots {
            if c >= self.cols {
                return Ok(Solution::Inconsistent);
            }
        }
        let mut particular = FpMatrix::zeros(self.p, self.cols, b.cols);
        for &(r, c) in &info.pivots {
            for j in 0..b.cols {
                particular.data[c * b.cols + j] = aug.get(r, self.cols + j);
            }
        }
        let kernel = self.kernel_basis();
        Ok(Solution::Solved { particular, kernel })
    }
}

/// Reusable solver for many right-hand sides against a fixed matrix.
///
/// Stores the compacted row transform so each solve is a small product plus
/// one verification multiply against the original matrix.
pub struct RrefSolver {
    a: FpMatrix,
    /// pivot rows of rref(A), rank x cols
    r: FpMatrix,
    /// matching rows of the accumulated transform, rank x rows
    t: FpMatrix,
    pivots: Vec<(usize, usize)>,
}

impl RrefSolver {
    pub fn new(a: FpMatrix) -> RrefSolver {
        let rows = a.rows;
        let aug = a.hstack(&FpMatrix::identity(a.p, rows)).unwrap();
        let mut aug = aug;
        let mut info_pivots = Vec::new();
        {
            let info = aug.rref_in_place();
            // pivots beyond a.cols belong to the identity block; those rows
            // witness row-space relations, not solution data
            for &(r, c) in &info.pivots {
                if c < a.cols {
                    info_pivots.push((r, c));
                }
            }
        }
        let rank = info_pivots.len();
        let mut r = FpMatrix::zeros(a.p, rank, a.cols);
        let mut t = FpMatrix::zeros(a.p, rank, rows);
        for (k, &(row, _)) in info_pivots.iter().enumerate() {
            for j in 0..a.cols {
                r.data[k * a.cols + j] = aug.get(row, j);
            }
            for j in 0..rows {
                t.data[k * rows + j] = aug.get(row, a.cols + j);
            }
        }
        let pivots = info_pivots
            .iter()
            .enumerate()
            .map(|(k, &(_, c))| (k, c))
            .collect();
        RrefSolver { a, r, t, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.a
    }

    /// One particular solution of `A x = b`, or `None` if inconsistent.
    pub fn solve_one(&self, b: &[u32]) -> Option<Vec<u32>> {
        let y = self.t.mul_vec(b).ok()?;
        let mut x = vec![0u32; self.a.cols];
        for &(k, c) in &self.pivots {
            x[c] = y[k];
        }
        // back-substitution is unnecessary (r is fully reduced); verify
        let ax = self.a.mul_vec(&x).ok()?;
        if ax == b {
            Some(x)
        } else {
            None
        }
    }

    /// Membership of `b` in the column space.
    pub fn consistent(&self, b: &[u32]) -> bool {
        self.solve_one(b).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[u32]]) -> FpMatrix {
        FpMatrix::from_rows(p, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn solve_identity() {
        let a = FpMatrix::identity(5, 3);
        let b = FpMatrix::identity(5, 3);
        match a.solve(&b).unwrap() {
            Solution::Solved { particular, kernel } => {
                assert_eq!(particular, FpMatrix::identity(5, 3));
                assert_eq!(kernel.cols, 0);
            }
            _ => panic!("inconsistent"),
        }
    }

    #[test]
    fn solve_zero_map() {
        // X ranges over all 2x2 matrices: kernel dim 2 per rhs column, 4 total
        let a = FpMatrix::zeros(2, 2, 2);
        let b = FpMatrix::zeros(2, 2, 2);
        match a.solve(&b).unwrap() {
            Solution::Solved { kernel, .. } => assert_eq!(kernel.cols * b.cols, 4),
            _ => panic!("inconsistent"),
        }
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(2, &[&[1, 1], &[0, 0]]);
        let b = m(2, &[&[1], &[1]]);
        assert!(matches!(a.solve(&b).unwrap(), Solution::Inconsistent));
    }

    #[test]
    fn kernel_image_identity() {
        let a = FpMatrix::identity(3, 2);
        assert_eq!(a.kernel_basis().cols, 0);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn kernel_image_zero() {
        let a = FpMatrix::zeros(3, 3, 3);
        assert_eq!(a.kernel_basis().cols, 3);
        assert_eq!(a.rank(), 0);
    }

    #[test]
    fn kernel_image_jordan() {
        // J_2(0) over F_2
        let a = m(2, &[&[0, 1], &[0, 0]]);
        assert_eq!(a.kernel_basis().cols, 1);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kron_identity() {
        let a = FpMatrix::identity(5, 2);
        let b = FpMatrix::identity(5, 3);
        assert_eq!(a.kronecker(&b).unwrap(), FpMatrix::identity(5, 6));
    }

    #[test]
    fn kron_zero() {
        let a = m(3, &[&[1, 2], &[0, 1]]);
        let z = FpMatrix::zeros(3, 2, 2);
        assert!(a.kronecker(&z).unwrap().is_zero());
    }

    #[test]
    fn kron_rank_multiplicative() {
        // rank(A (x) B) = rank(A) rank(B); deterministic 3x3 samples mod 3
        let a = m(3, &[&[1, 2, 0], &[2, 1, 1], &[0, 0, 0]]);
        let b = m(3, &[&[1, 0, 1], &[0, 1, 2], &[1, 1, 0]]);
        let k = a.kronecker(&b).unwrap();
        assert_eq!(k.rank(), a.rank() * b.rank());
    }

    #[test]
    fn kron_associative() {
        let a = m(2, &[&[1, 1], &[0, 1]]);
        let b = m(2, &[&[1, 0], &[1, 1]]);
        let c = m(2, &[&[0, 1], &[1, 0]]);
        let left = a.kronecker(&b).unwrap().kronecker(&c).unwrap();
        let right = a.kronecker(&b.kronecker(&c).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn rref_solver_roundtrip() {
        let a = m(5, &[&[1, 2, 3], &[2, 4, 1], &[0, 1, 1], &[3, 1, 0]]);
        let solver = RrefSolver::new(a.clone());
        let x0 = vec![2u32, 3, 4];
        let b = a.mul_vec(&x0).unwrap();
        let x = solver.solve_one(&b).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
        assert!(!solver.consistent(&[1, 0, 0, 0]) || a.rank() == 3);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(7, &[&[1, 2, 3, 4], &[2, 4, 6, 1]]);
        let k = a.kernel_basis();
        let prod = a.mul(&k).unwrap();
        assert!(prod.is_zero());
        assert_eq!(k.cols + a.rank(), a.cols);
    }
}
