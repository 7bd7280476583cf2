//! Dense third-order tensors and the slice-level products the M-product is
//! built from.
//!
//! Entries are stored slice-major, row-major within a slice: entry
//! `(i, j, k)` lives at `k * m * n + i * n + j`.

use std::ops::{Add, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex dense matrix used for frontal slices and transforms.
pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    m: usize,
    n: usize,
    p: usize,
    data: Vec<Complex64>,
}

impl Tensor3 {
    pub fn zeros(m: usize, n: usize, p: usize) -> Self {
        Self {
            m,
            n,
            p,
            data: vec![Complex64::new(0.0, 0.0); m * n * p],
        }
    }

    pub fn from_fn(m: usize, n: usize, p: usize, mut f: impl FnMut(usize, usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(m * n * p);
        for k in 0..p {
            for i in 0..m {
                for j in 0..n {
                    data.push(f(i, j, k));
                }
            }
        }
        Self { m, n, p, data }
    }

    /// Builds a tensor from slice-major, row-major data.
    pub fn from_vec(m: usize, n: usize, p: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != m * n * p {
            return Err(Error::dims(format!(
                "expected {} entries for {m}x{n}x{p}, got {}",
                m * n * p,
                data.len()
            )));
        }
        Ok(Self { m, n, p, data })
    }

    /// Builds a real tensor from nested frontal slices, `slices[k][i][j]`.
    pub fn from_real_slices<S, R>(slices: &[S]) -> Result<Self>
    where
        S: AsRef<[R]>,
        R: AsRef<[f64]>,
    {
        let p = slices.len();
        let m = slices.first().map_or(0, |s| s.as_ref().len());
        let n = slices
            .first()
            .and_then(|s| s.as_ref().first())
            .map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(m * n * p);
        for s in slices {
            let rows = s.as_ref();
            if rows.len() != m {
                return Err(Error::dims("ragged slices"));
            }
            for r in rows {
                let r = r.as_ref();
                if r.len() != n {
                    return Err(Error::dims("ragged rows"));
                }
                data.extend(r.iter().map(|&v| Complex64::new(v, 0.0)));
            }
        }
        Ok(Self { m, n, p, data })
    }

    /// Stacks `m x n` matrices as frontal slices.
    pub fn from_slices(m: usize, n: usize, slices: &[CMatrix]) -> Result<Self> {
        let mut t = Self::zeros(m, n, slices.len());
        for (k, s) in slices.iter().enumerate() {
            t.set_slice(k, s)?;
        }
        Ok(t)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.p)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.p
    }

    pub fn is_square(&self) -> bool {
        self.m == self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        assert!(
            i < self.m && j < self.n && k < self.p,
            "index ({i},{j},{k}) out of bounds"
        );
        k * self.m * self.n + i * self.n + j
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.data[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Complex64) {
        let at = self.idx(i, j, k);
        self.data[at] = v;
    }

    /// Frontal slice `k` as an `m x n` matrix.
    pub fn slice(&self, k: usize) -> CMatrix {
        let off = k * self.m * self.n;
        CMatrix::from_row_slice(self.m, self.n, &self.data[off..off + self.m * self.n])
    }

    pub fn slices(&self) -> Vec<CMatrix> {
        (0..self.p).map(|k| self.slice(k)).collect()
    }

    pub fn set_slice(&mut self, k: usize, s: &CMatrix) -> Result<()> {
        if s.shape() != (self.m, self.n) || k >= self.p {
            return Err(Error::dims(format!(
                "slice {k} of shape {:?} does not fit {}x{}x{}",
                s.shape(),
                self.m,
                self.n,
                self.p
            )));
        }
        let off = k * self.m * self.n;
        for i in 0..self.m {
            for j in 0..self.n {
                self.data[off + i * self.n + j] = s[(i, j)];
            }
        }
        Ok(())
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Frobenius norm, summed in storage order.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            data: self.data.iter().map(|z| z * s).collect(),
            ..*self
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            data: self.data.iter().map(|&z| f(z)).collect(),
            ..*self
        }
    }

    /// `out(i1, i2, k) = sum_{i3} A(i1, i2, i3) * W(k, i3)`.
    pub fn mode3_product(&self, w: &CMatrix) -> Result<Self> {
        if w.ncols() != self.p {
            return Err(Error::dims(format!(
                "mode-3 product: matrix has {} columns, tensor depth is {}",
                w.ncols(),
                self.p
            )));
        }
        let q = w.nrows();
        let mn = self.m * self.n;
        let mut out = Self::zeros(self.m, self.n, q);
        for k in 0..q {
            let dst = &mut out.data[k * mn..(k + 1) * mn];
            for i3 in 0..self.p {
                let c = w[(k, i3)];
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let src = &self.data[i3 * mn..(i3 + 1) * mn];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += s * c;
                }
            }
        }
        Ok(out)
    }

    /// Slice-by-slice matrix product, `(A Δ B)(:,:,k) = A(:,:,k) B(:,:,k)`.
    pub fn facewise_product(&self, other: &Self) -> Result<Self> {
        if self.n != other.m || self.p != other.p {
            return Err(Error::dims(format!(
                "facewise product of {:?} and {:?}",
                self.dims(),
                other.dims()
            )));
        }
        let slices: Vec<CMatrix> = (0..self.p).map(|k| self.slice(k) * other.slice(k)).collect();
        Self::from_slices(self.m, other.n, &slices)
    }

    /// Conjugate transpose of every frontal slice, no transform involved.
    pub fn slice_adjoint(&self) -> Self {
        let slices: Vec<CMatrix> = self.slices().iter().map(|s| s.adjoint()).collect();
        Self::from_slices(self.n, self.m, &slices).expect("shapes agree")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dims(), other.dims(), "elementwise op on mismatched tensors");
        Self {
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
            ..*self
        }
    }
}

impl Add for &Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &Tensor3) -> Tensor3 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Helper for building real complex scalars.
#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Real matrix from row-major nested data.
pub fn real_matrix<R: AsRef<[f64]>>(rows: &[R]) -> CMatrix {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.as_ref().len());
    CMatrix::from_fn(m, n, |i, j| c(rows[i].as_ref()[j]))
}
