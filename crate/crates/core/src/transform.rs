//! The invertible `p x p` matrix that defines an M-product.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{c, CMatrix};

/// An invertible transform `M` together with its cached inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform {
    m: CMatrix,
    minv: CMatrix,
}

impl Transform {
    /// Wraps `m`, computing and verifying its inverse:
    /// `|M Minv - I|_F <= 1e-10 |M|_F |Minv|_F`.
    pub fn new(m: CMatrix) -> Result<Self> {
        let p = m.nrows();
        if p == 0 || m.ncols() != p {
            return Err(Error::dims(format!(
                "transform must be square and non-empty, got {:?}",
                m.shape()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::SingularTransform);
        }
        let minv = m.clone().try_inverse().ok_or(Error::SingularTransform)?;
        let resid = (&m * &minv - CMatrix::identity(p, p)).norm();
        if !(resid <= 1e-10 * m.norm() * minv.norm()) {
            return Err(Error::SingularTransform);
        }
        Ok(Self { m, minv })
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(crate::tensor::real_matrix(rows))
    }

    pub fn identity(p: usize) -> Self {
        Self::new(CMatrix::identity(p, p)).expect("identity is invertible")
    }

    /// Orthonormal DCT-II matrix; the M-product becomes the c-product.
    pub fn dct(p: usize) -> Self {
        let m = CMatrix::from_fn(p, p, |k, i| {
            let s = if k == 0 {
                (1.0 / p as f64).sqrt()
            } else {
                (2.0 / p as f64).sqrt()
            };
            c(s * (PI * (2 * i + 1) as f64 * k as f64 / (2 * p) as f64).cos())
        });
        Self::new(m).expect("DCT matrix is orthogonal")
    }

    /// Unnormalized DFT matrix `F(k, j) = exp(-2 pi i k j / p)`; the M-product
    /// becomes the t-product.
    pub fn dft(p: usize) -> Self {
        let m = CMatrix::from_fn(p, p, |k, j| {
            let theta = -2.0 * PI * ((k * j) % p) as f64 / p as f64;
            Complex64::from_polar(1.0, theta)
        });
        Self::new(m).expect("DFT matrix is invertible")
    }

    /// Real `p x p` matrix with entries uniform in `[-1, 1)`, drawn row-major
    /// from [`Lcg64`] seeded with `seed`.
    pub fn seeded_random(p: usize, seed: u64) -> Result<Self> {
        let mut rng = Lcg64::new(seed);
        let mut rows = vec![vec![0.0; p]; p];
        for row in rows.iter_mut() {
            for v in row.iter_mut() {
                *v = 2.0 * rng.next_f64() - 1.0;
            }
        }
        Self::from_real_rows(&rows)
    }

    pub fn p(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn inverse(&self) -> &CMatrix {
        &self.minv
    }

    pub fn is_real(&self) -> bool {
        self.m.iter().all(|z| z.im == 0.0)
    }
}

/// 64-bit linear congruential generator,
/// `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`.
/// Doubles take the top 53 bits of the advanced state.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
