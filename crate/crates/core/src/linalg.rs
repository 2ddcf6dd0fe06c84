//! Exact dense linear algebra over prime fields `F_p` with `p <= 251`.
//!
//! Scalars are stored as `u8`. Elimination always pivots on the first
//! nonzero entry, so every routine is deterministic.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..=251).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::InvalidField(p));
        }
        Ok(Self { p: p as u8 })
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.p
    }

    /// Reduces an arbitrary integer into `0..p`.
    #[inline]
    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(self.p as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let mut acc = 1u8;
        let mut base = a;
        let mut e = self.p as u32 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[F{}; {}x{}](", self.field.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, ")")
    }
}

/// Wire format: `{"p": 2, "rows": 2, "cols": 3, "entries": [[..], [..]]}`.
#[derive(serde::Serialize, serde::Deserialize)]
struct MatRepr {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<i64>>,
}

impl serde::Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatRepr {
            p: self.field.p as u64,
            rows: self.rows,
            cols: self.cols,
            entries: self.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Mat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = MatRepr::deserialize(d)?;
        let field = PrimeField::new(r.p).map_err(D::Error::custom)?;
        if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
            return Err(D::Error::custom(format!("matrix entries do not have shape {}x{}", r.rows, r.cols)));
        }
        let data = r.entries.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Mat::from_vec(field, r.rows, r.cols, data))
    }
}

/// Reduced row echelon form of a matrix together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Self { field, rows: r, cols: c, data })
    }

    /// Builds a matrix from already reduced row-major data.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows x cols");
        debug_assert!(data.iter().all(|&x| x < field.p));
        Self { field, rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u8>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Column vector.
    pub fn column_vector(field: PrimeField, v: &[u8]) -> Self {
        Self::from_vec(field, v.len(), 1, v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
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
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_same_shape(&self, other: &Mat) {
        assert!(
            self.rows == other.rows && self.cols == other.cols && self.field == other.field,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }

    /// Matrix product; panics on mismatched inner dimensions.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch in product");
        assert_eq!(self.field, other.field);
        let p = self.field.p as u32;
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u32; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u32;
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot += a * b as u32;
                }
                if k % 256 == 255 {
                    acc.iter_mut().for_each(|a| *a %= p);
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (a % p) as u8;
            }
        }
        out
    }

    /// Checked product returning a dimension error instead of panicking.
    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.check_same_shape(other);
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.check_same_shape(other);
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { data, ..self.clone() }
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        Mat { data: self.data.iter().map(|&a| f.neg(a)).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: u8) -> Mat {
        let f = self.field;
        Mat { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block matrix from a grid of blocks; row heights and column widths must be consistent.
    pub fn block(field: PrimeField, row_dims: &[usize], col_dims: &[usize], blocks: &[Vec<Option<&Mat>>]) -> Mat {
        let total_r: usize = row_dims.iter().sum();
        let total_c: usize = col_dims.iter().sum();
        let mut out = Mat::zeros(field, total_r, total_c);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                if let Some(b) = b {
                    assert_eq!((b.rows, b.cols), (row_dims[bi], col_dims[bj]), "block shape");
                    out.paste(r0, c0, b);
                }
                c0 += col_dims[bj];
            }
            r0 += row_dims[bi];
        }
        out
    }

    pub fn block_diag(field: PrimeField, blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, idx.len());
        for (j, &c) in idx.iter().enumerate() {
            for r in 0..self.rows {
                out.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Row-major flattening as a column vector.
    pub fn vectorize(&self) -> Vec<u8> {
        self.data.clone()
    }

    // ---------------------------------------------------------------
    // Elimination
    // ---------------------------------------------------------------

    /// Reduced row echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else { continue };
            if piv != row {
                for c in 0..m.cols {
                    m.data.swap(piv * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col));
            if inv != 1 {
                for c in col..m.cols {
                    let v = m.get(row, c);
                    m.set(row, c, f.mul(v, inv));
                }
            }
            let pivot_row: Vec<u8> = m.row(row).to_vec();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                let base = r * m.cols;
                for c in col..m.cols {
                    let v = m.data[base + c];
                    m.data[base + c] = f.sub(v, f.mul(factor, pivot_row[c]));
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of the null space, one per free column in increasing order.
    pub fn kernel_basis(&self) -> Mat {
        let Rref { mat, pivots } = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(mat.get(i, fc)));
            }
        }
        k
    }

    /// Pivot columns of `self`: an independent spanning set of the column space.
    pub fn image_basis(&self) -> Mat {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    /// Some `X` with `self * X = b`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: A has {} rows, B has {}",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let aug = self.hstack(b).rref();
        if aug.pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, n, b.cols);
        for (i, &pc) in aug.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug.mat.get(i, n + j));
            }
        }
        Ok(Some(x))
    }

    /// Some `X` with `X * self = b`.
    pub fn solve_left(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.cols != b.cols {
            return Err(Error::DimensionMismatch(format!(
                "solve_left: A has {} cols, B has {}",
                self.cols, b.cols
            )));
        }
        Ok(self.transpose().solve(&b.transpose())?.map(|x| x.transpose()))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Mat::identity(self.field, self.rows)).ok()??;
        (self.rank() == self.rows).then_some(x)
    }

    /// True when the column vector `v` lies in the column space of `self`.
    pub fn spans(&self, v: &Mat) -> bool {
        matches!(self.solve(v), Ok(Some(_)))
    }
}

/// A subspace `S` of `F^n` with a chosen complement, giving coordinates on `F^n / S`.
///
/// `basis` is an independent spanning set of `S`, `complement` is a set of standard
/// vectors completing it, `quotient` has kernel exactly `S` and satisfies
/// `quotient * complement = I`, and `coords` is a left inverse of `basis` that
/// vanishes on the complement.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub basis: Mat,
    pub complement: Mat,
    pub coords: Mat,
    pub quotient: Mat,
}

impl Subspace {
    /// `span` is an `n x k` matrix whose columns span the subspace.
    pub fn new(span: &Mat) -> Self {
        let f = span.field();
        let n = span.rows();
        let basis = span.image_basis();
        let k = basis.cols();
        let full = basis.hstack(&Mat::identity(f, n));
        let pivots = full.rref().pivots;
        let comp_idx: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
        let complement = Mat::identity(f, n).select_columns(&comp_idx);
        let change = basis.hstack(&complement);
        let inv = change.inverse().expect("basis plus complement is invertible");
        let coords = inv.submatrix(0, k, 0, n);
        let quotient = inv.submatrix(k, n - k, 0, n);
        Self { basis, complement, coords, quotient }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn codim(&self) -> usize {
        self.complement.cols()
    }
}

/// Enumerates all vectors of `F_p^n` in lexicographic order (first coordinate slowest).
pub fn all_vectors(field: PrimeField, n: usize) -> impl Iterator<Item = Vec<u8>> {
    let p = field.p() as u64;
    let total = p.checked_pow(n as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u8; n];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p) as u8;
            idx /= p;
        }
        v
    })
}

/// Linear combination `sum c_i M_i` of equally shaped matrices.
pub fn combine(field: PrimeField, rows: usize, cols: usize, coeffs: &[u8], mats: &[Mat]) -> Mat {
    assert_eq!(coeffs.len(), mats.len());
    let mut out = Mat::zeros(field, rows, cols);
    for (&c, m) in coeffs.iter().zip(mats) {
        if c != 0 {
            out = out.add(&m.scale(c));
        }
    }
    out
}
