//! Tensor full-rank decomposition and M-QDR decomposition.
//!
//! Both run slice-by-slice in the transform domain. Slices whose rank falls
//! short of the tubal rank `r` get zero columns appended on the right of the
//! left factor and zero rows appended at the bottom of the right factor, so
//! every slice has the same shape before mapping back with `M^-1`.

use crate::algebra::{assemble, m_product_chain, transformed_slices};
use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::kernels::{frd_with_rank, matrix_qdr, matrix_qdr_truncated, matrix_rank, MatrixQdr};
use crate::tensor::{CMatrix, Tensor3};
use crate::transform::Transform;

/// `A = S * T` with `S` of size `m x r x p` and `T` of size `r x n x p`.
#[derive(Debug, Clone)]
pub struct TensorFrd {
    pub s: Tensor3,
    pub t: Tensor3,
    pub rank: usize,
}

impl TensorFrd {
    pub fn reconstruct(&self, tr: &Transform) -> Result<Tensor3> {
        m_product_chain(&[&self.s, &self.t], tr)
    }
}

/// `A = Q * D * R`; transform-domain slices of `D` are diagonal and those of
/// `R` upper trapezoidal.
#[derive(Debug, Clone)]
pub struct TensorQdr {
    pub q: Tensor3,
    pub d: Tensor3,
    pub r: Tensor3,
    pub rank: usize,
}

impl TensorQdr {
    pub fn reconstruct(&self, tr: &Transform) -> Result<Tensor3> {
        m_product_chain(&[&self.q, &self.d, &self.r], tr)
    }
}

fn pad_columns(a: &CMatrix, width: usize) -> CMatrix {
    let mut out = CMatrix::zeros(a.nrows(), width);
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out
}

fn pad_rows(a: &CMatrix, height: usize) -> CMatrix {
    let mut out = CMatrix::zeros(height, a.ncols());
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out
}

pub fn tensor_frd(a: &Tensor3, tr: &Transform, tol: &ToleranceConfig) -> Result<TensorFrd> {
    let (m, n, _) = a.dims();
    let slices = transformed_slices(a, tr)?;
    let ranks: Vec<usize> = slices.iter().map(|s| matrix_rank(s, tol)).collect();
    let r = ranks.iter().copied().max().unwrap_or(0);
    let mut s_slices = Vec::with_capacity(slices.len());
    let mut t_slices = Vec::with_capacity(slices.len());
    for (s, &rk) in slices.iter().zip(&ranks) {
        let f = frd_with_rank(s, rk);
        s_slices.push(pad_columns(&f.f, r));
        t_slices.push(pad_rows(&f.g, r));
    }
    Ok(TensorFrd {
        s: assemble(m, r, &s_slices, tr)?,
        t: assemble(r, n, &t_slices, tr)?,
        rank: r,
    })
}

fn assemble_qdr(m: usize, n: usize, parts: &[MatrixQdr], width: usize, tr: &Transform) -> Result<TensorQdr> {
    let mut q = Vec::with_capacity(parts.len());
    let mut d = Vec::with_capacity(parts.len());
    let mut r = Vec::with_capacity(parts.len());
    for part in parts {
        q.push(pad_columns(&part.q, width));
        d.push(pad_rows(&pad_columns(&part.d, width), width));
        r.push(pad_rows(&part.r, width));
    }
    Ok(TensorQdr {
        q: assemble(m, width, &q, tr)?,
        d: assemble(width, width, &d, tr)?,
        r: assemble(width, n, &r, tr)?,
        rank: width,
    })
}

/// M-QDR decomposition, padded to the largest per-slice Gram-Schmidt rank
/// (the tubal rank whenever the Gram-Schmidt and SVD rank decisions agree).
pub fn tensor_qdr(a: &Tensor3, tr: &Transform, tol: &ToleranceConfig) -> Result<TensorQdr> {
    let (m, n, _) = a.dims();
    let parts: Vec<MatrixQdr> = transformed_slices(a, tr)?.iter().map(|s| matrix_qdr(s, tol)).collect();
    let r = parts.iter().map(|p| p.rank).max().unwrap_or(0);
    assemble_qdr(m, n, &parts, r, tr)
}

/// QDR keeping at most `k` Gram-Schmidt directions per transform-domain slice.
///
/// Every factor has width `k`; slices with fewer than `k` independent columns
/// are zero-filled. `Q * D * R` is the projection of each transform-domain
/// slice onto its leading `k` directions.
pub fn truncated_qdr(a: &Tensor3, tr: &Transform, k: usize, tol: &ToleranceConfig) -> Result<TensorQdr> {
    let (m, n, _) = a.dims();
    if k == 0 || k > m.min(n) {
        return Err(Error::InvalidArgument(format!(
            "truncation rank {k} outside 1..={}",
            m.min(n)
        )));
    }
    let parts: Vec<MatrixQdr> = transformed_slices(a, tr)?
        .iter()
        .map(|s| matrix_qdr_truncated(s, tol, k))
        .collect();
    assemble_qdr(m, n, &parts, k, tr)
}
