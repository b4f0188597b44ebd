//! Prime-field arithmetic and dense exact matrices.
//!
//! Everything downstream (modules, resolutions, Tor) reduces to row reduction
//! over `F_p`, so pivoting here is fully deterministic: the pivot of each
//! column is the first nonzero entry at or below the current row.

use std::fmt;

use crate::error::{Error, Result};

/// A prime field `F_p`. The modulus is stored as `u32`; products are formed in
/// `u64` and reduced immediately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FieldSpec { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = u64::from(a) + u64::from(b);
        let p = u64::from(self.p);
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (u64::from(a) + u64::from(self.p) - u64::from(b)) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (u64::from(a) * u64::from(b) % u64::from(self.p)) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, u64::from(self.p) - 2)
    }

    pub fn from_i64(self, a: i64) -> u32 {
        a.rem_euclid(i64::from(self.p)) as u32
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over F_{}", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting unreduced entries.
    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(pos) = data.iter().position(|&x| x >= field.p) {
            return Err(Error::InvalidModule(format!(
                "entry {} at ({}, {}) is not reduced mod {}",
                data[pos],
                pos / cols.max(1),
                pos % cols.max(1),
                field.p
            )));
        }
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Mat::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Mat::zeros(field, rows, cols);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, &x) in col.iter().enumerate() {
                m.data[r * cols + c] = x;
            }
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c) % field.p);
            }
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// Matrix product. Zero entries of `self` are skipped, which makes products
    /// with sparse action matrices cheap.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        assert_eq!(self.field, other.field, "matrix product over different fields");
        let p = u64::from(self.field.p);
        let n = other.cols;
        let mut out = Mat::zeros(self.field, self.rows, n);
        if n == 0 {
            return out;
        }
        // Accumulate lazily while the running sum cannot overflow.
        let max_terms = if p <= 1 { u64::MAX } else { u64::MAX / ((p - 1) * (p - 1)).max(1) };
        let mut acc = vec![0u64; n];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0u64;
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if pending + 1 >= max_terms {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
                let a = u64::from(a);
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * u64::from(b);
                }
                pending += 1;
            }
            for (dst, &x) in out.data[r * n..(r + 1) * n].iter_mut().zip(&acc) {
                *dst = (x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let p = u64::from(self.field.p);
        (0..self.rows)
            .map(|r| {
                let mut s = 0u64;
                for (&a, &b) in self.row(r).iter().zip(v) {
                    if a != 0 && b != 0 {
                        s = (s + u64::from(a) * u64::from(b)) % p;
                    }
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: u32) -> Mat {
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    /// `self += s * other`.
    pub fn add_scaled_assign(&mut self, s: u32, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let p = u64::from(self.field.p);
        let s = u64::from(s);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = ((u64::from(*a) + s * u64::from(b)) % p) as u32;
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
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

    pub fn hstack(field: FieldSpec, rows: usize, blocks: &[&Mat]) -> Mat {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for r in 0..rows {
                out.data[r * cols + off..r * cols + off + b.cols].copy_from_slice(b.row(r));
            }
            off += b.cols;
        }
        out
    }

    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn block_diag(field: FieldSpec, blocks: &[&Mat]) -> Mat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            out.set_block(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Mat::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Mat {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = u64::from(f.p);
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut pivot_nz: Vec<(usize, u64)> = Vec::new();
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in c..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            pivot_nz.clear();
            for k in c..cols {
                let x = &mut self.data[r * cols + k];
                if *x != 0 {
                    *x = f.mul(*x, inv);
                    pivot_nz.push((k, u64::from(*x)));
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = p - u64::from(factor);
                let row = &mut self.data[i * cols..(i + 1) * cols];
                for &(k, v) in &pivot_nz {
                    row[k] = ((u64::from(row[k]) + neg * v) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row-echelon form with deterministic pivoting.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows form a basis of the right null space `{v : self * v = 0}`, one row
    /// per free column in increasing order.
    pub fn kernel_basis(&self) -> Mat {
        kernel_from_rref(&self.rref(), self.cols)
    }

    /// One solution of `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for a matrix with {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let aug = Mat::hstack(
            f,
            self.rows,
            &[self, &Mat::from_vec(f, self.rows, 1, b.iter().map(|&x| x % f.p).collect())?],
        );
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.matrix.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Mat::hstack(self.field, n, &[self, &Mat::identity(self.field, n)]);
        let red = aug.rref();
        if red.rank < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(red.matrix.block(0, n, n, n))
    }
}

fn kernel_from_rref(red: &Rref, cols: usize) -> Mat {
    let f = red.matrix.field;
    let mut is_pivot = vec![false; cols];
    for &pc in &red.pivots {
        is_pivot[pc] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = Mat::zeros(f, free.len(), cols);
    for (i, &fc) in free.iter().enumerate() {
        k.data[i * cols + fc] = 1 % f.p;
        for (r, &pc) in red.pivots.iter().enumerate() {
            k.data[i * cols + pc] = f.neg(red.matrix.get(r, fc));
        }
    }
    k
}

/// A subspace of `F_p^n` stored as basis rows plus one coordinate column per
/// row, such that `basis[r][coord_cols[s]] = δ(r, s)`.
///
/// Both RREF row spaces (coordinate columns = pivots) and kernel bases
/// (coordinate columns = free columns) have this shape. For a vector `v` in
/// the span, its coordinates are simply `v[coord_cols]`; for any `v`, the
/// residual `v - Σ v[coord_cols[s]] basis[s]` vanishes iff `v` is in the span
/// and is supported on the complementary columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Mat,
    coord_cols: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: Mat::zeros(field, 0, ambient),
            coord_cols: Vec::new(),
        }
    }

    /// Row space of `m`.
    pub fn span_of_rows(m: &Mat) -> Self {
        let red = m.rref();
        let basis = red.matrix.block(0, 0, red.rank, m.cols);
        Subspace {
            basis,
            coord_cols: red.pivots,
        }
    }

    /// Column space of `m`.
    pub fn span_of_columns(m: &Mat) -> Self {
        Subspace::span_of_rows(&m.transpose())
    }

    /// Right null space of `m`.
    pub fn kernel_of(m: &Mat) -> Self {
        let red = m.rref();
        let basis = kernel_from_rref(&red, m.cols);
        let mut is_pivot = vec![false; m.cols];
        for &pc in &red.pivots {
            is_pivot[pc] = true;
        }
        Subspace {
            basis,
            coord_cols: (0..m.cols).filter(|&c| !is_pivot[c]).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    /// Basis vectors as rows.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn coord_cols(&self) -> &[usize] {
        &self.coord_cols
    }

    /// Columns not used as coordinates; the standard basis vectors at these
    /// positions span a complement.
    pub fn complement_cols(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient()];
        for &c in &self.coord_cols {
            used[c] = true;
        }
        (0..self.ambient()).filter(|&c| !used[c]).collect()
    }

    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let f = self.basis.field;
        let p = u64::from(f.p);
        let mut out = v.to_vec();
        for (s, &cc) in self.coord_cols.iter().enumerate() {
            let coef = out[cc];
            if coef == 0 {
                continue;
            }
            let neg = p - u64::from(coef);
            for (x, &b) in out.iter_mut().zip(self.basis.row(s)) {
                if b != 0 {
                    *x = ((u64::from(*x) + neg * u64::from(b)) % p) as u32;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.residual(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        self.coord_cols.iter().map(|&c| v[c]).collect()
    }

    /// True when every row of `other` lies in `self`.
    pub fn contains_all(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::new(5).unwrap()
    }

    fn mat(rows: &[&[u32]]) -> Mat {
        Mat::from_rows(f5(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn field_rejects_composites() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(0).is_err());
        assert_eq!(FieldSpec::new(7).unwrap().p(), 7);
    }

    #[test]
    fn field_inverse() {
        let f = FieldSpec::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rref_identity() {
        let id = Mat::identity(f5(), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_zero() {
        let z = Mat::zeros(f5(), 2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_by_hand() {
        // Row 1 times 2^{-1} = 3 gives [1, 2]; row 2 minus row 1 vanishes.
        let r = mat(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r.matrix, mat(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(Mat::identity(f5(), 4).kernel_basis().rows(), 0);
        let k = Mat::zeros(f5(), 2, 3).kernel_basis();
        assert_eq!(k, Mat::identity(f5(), 3));
    }

    #[test]
    fn kernel_matches_enumeration() {
        let m = mat(&[&[1, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 1);
        // Enumerate F_5^2 for the null space.
        let null: Vec<[u32; 2]> = (0..5)
            .flat_map(|a| (0..5).map(move |b| [a, b]))
            .filter(|v| (v[0] + 2 * v[1]) % 5 == 0)
            .collect();
        assert_eq!(null.len(), 5);
        let v = k.row(0);
        assert!(null.contains(&[v[0], v[1]]));
        // Normalized at the free column: (3, 1).
        assert_eq!(v, &[3, 1]);
    }

    #[test]
    fn solve_cases() {
        let id = Mat::identity(f5(), 3);
        assert_eq!(id.solve(&[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        let z = Mat::zeros(f5(), 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        // 2x = 3 over F_5: enumeration gives x = 4.
        let sols: Vec<u32> = (0..5).filter(|x| (2 * x) % 5 == 3).collect();
        assert_eq!(sols, vec![4]);
        assert_eq!(mat(&[&[2]]).solve(&[3]).unwrap(), Some(vec![4]));
        assert!(matches!(id.solve(&[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(f5(), 2));
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn subspace_coordinates() {
        let m = mat(&[&[1, 2, 0], &[0, 1, 1]]);
        let s = Subspace::span_of_rows(&m);
        let v = vec![1, 3, 1];
        assert!(s.contains(&v));
        let c = s.coords(&v);
        let back = s.basis().transpose().mul_vec(&c);
        assert_eq!(back, v);
        assert!(!s.contains(&[0, 0, 1]));
        let k = Subspace::kernel_of(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(m.mul_vec(k.basis().row(0)), vec![0, 0]);
    }
}
