//! Generalized inverses under the M-product.
//!
//! Moore-Penrose and Drazin inverses come either from per-slice full-rank
//! factorizations, or as outer inverses `Z = Q (R A Q)^-1 R` with prescribed
//! range and null space read off a QDR of a steering tensor `W`. The core
//! systems are always solved by LU rather than inverted.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{assemble, m_power, m_product_chain, m_transpose, multi_index, transformed_slices};
use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::kernels::{
    frd_with_rank, index_and_power, matrix_frd, matrix_qdr, matrix_rank, matrix_rank_scaled, solve_linear,
};
use crate::tensor::{CMatrix, Tensor3};
use crate::transform::Transform;

/// Residual norms of the defining equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Residual {
    /// `|A - A*X*A|_F`
    E1,
    /// `|X - X*A*X|_F`
    E2,
    /// `|A*X - (A*X)^T|_F`
    E3,
    /// `|X*A - (X*A)^T|_F`
    E4,
    /// `|A*X - X*A|_F`
    E5,
    /// `|X*A^(k+1) - A^k|_F`, `k` the tubal index of `A`.
    E1k,
}

impl Residual {
    pub fn name(self) -> &'static str {
        match self {
            Residual::E1 => "E1",
            Residual::E2 => "E2",
            Residual::E3 => "E3",
            Residual::E4 => "E4",
            Residual::E5 => "E5",
            Residual::E1k => "E1k",
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which defining equations a residual report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseKind {
    Pinv,
    Drazin,
    Outer,
}

#[derive(Debug, Clone)]
pub struct GinvReport {
    pub x: Tensor3,
    pub residuals: BTreeMap<Residual, f64>,
}

impl GinvReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }
}

/// Residuals of the equations `kind` requires of `x` as an inverse of `a`.
pub fn residual_report(
    a: &Tensor3,
    x: &Tensor3,
    t: &Transform,
    kind: InverseKind,
    tol: &ToleranceConfig,
) -> Result<BTreeMap<Residual, f64>> {
    if x.dims() != (a.cols(), a.rows(), a.depth()) {
        return Err(Error::dims(format!(
            "inverse of {:?} cannot have shape {:?}",
            a.dims(),
            x.dims()
        )));
    }
    let mut out = BTreeMap::new();
    let xax = m_product_chain(&[x, a, x], t)?;
    out.insert(Residual::E2, (x - &xax).fro_norm());
    match kind {
        InverseKind::Outer => {}
        InverseKind::Pinv => {
            let axa = m_product_chain(&[a, x, a], t)?;
            out.insert(Residual::E1, (a - &axa).fro_norm());
            let ax = m_product_chain(&[a, x], t)?;
            out.insert(Residual::E3, (&ax - &m_transpose(&ax, t)?).fro_norm());
            let xa = m_product_chain(&[x, a], t)?;
            out.insert(Residual::E4, (&xa - &m_transpose(&xa, t)?).fro_norm());
        }
        InverseKind::Drazin => {
            let ax = m_product_chain(&[a, x], t)?;
            let xa = m_product_chain(&[x, a], t)?;
            out.insert(Residual::E5, (&ax - &xa).fro_norm());
            let k = multi_index(a, t, tol)?.tubal_index();
            let ak = m_power(a, k, t)?;
            let ak1 = m_power(a, k + 1, t)?;
            let lhs = m_product_chain(&[x, &ak1], t)?;
            out.insert(Residual::E1k, (&lhs - &ak).fro_norm());
        }
    }
    Ok(out)
}

fn report(a: &Tensor3, x: Tensor3, t: &Transform, kind: InverseKind, tol: &ToleranceConfig) -> Result<GinvReport> {
    let residuals = residual_report(a, &x, t, kind, tol)?;
    Ok(GinvReport { x, residuals })
}

/// Moore-Penrose inverse from per-slice full-rank factorizations:
/// `X~_k = G* (F* A~_k G*)^-1 F*`.
pub fn pinv_frd(a: &Tensor3, t: &Transform, tol: &ToleranceConfig) -> Result<GinvReport> {
    let (m, n, _) = a.dims();
    let mut out = Vec::with_capacity(a.depth());
    for s in transformed_slices(a, t)? {
        let frd = matrix_frd(&s, tol);
        if frd.rank == 0 {
            out.push(CMatrix::zeros(n, m));
            continue;
        }
        let fh = frd.f.adjoint();
        let gh = frd.g.adjoint();
        let core = &fh * &s * &gh;
        out.push(gh * solve_linear(&core, &fh, tol)?);
    }
    let x = assemble(n, m, &out, t)?;
    report(a, x, t, InverseKind::Pinv, tol)
}

/// Drazin inverse from full-rank factorizations of per-slice index powers:
/// `Y~_k = F (G B~_k F)^-1 G` where `B~_k^l = F G`, `l = ind(B~_k)`.
pub fn drazin_frd(b: &Tensor3, t: &Transform, tol: &ToleranceConfig) -> Result<GinvReport> {
    if !b.is_square() {
        return Err(Error::dims(format!(
            "Drazin inverse of non-square tensor {:?}",
            b.dims()
        )));
    }
    let m = b.rows();
    let mut out = Vec::with_capacity(b.depth());
    for s in transformed_slices(b, t)? {
        let (_, power, scale) = index_and_power(&s, tol);
        let rank = matrix_rank_scaled(&power, scale, tol);
        if rank == 0 {
            out.push(CMatrix::zeros(m, m));
            continue;
        }
        let frd = frd_with_rank(&power, rank);
        let core = &frd.g * &s * &frd.f;
        out.push(&frd.f * solve_linear(&core, &frd.g, tol)?);
    }
    let y = assemble(m, m, &out, t)?;
    report(b, y, t, InverseKind::Drazin, tol)
}

/// Per-slice outer inverse with range and null space taken from `w_slices`.
fn outer_slices(a_slices: &[CMatrix], w_slices: &[CMatrix], tol: &ToleranceConfig) -> Result<Vec<CMatrix>> {
    let mut out = Vec::with_capacity(a_slices.len());
    for (k, (a, w)) in a_slices.iter().zip(w_slices).enumerate() {
        let qdr = matrix_qdr(w, tol);
        // Q D^(1/2) and D^(1/2) R give the same Z and a balanced core
        let half: Vec<f64> = qdr.d.diagonal().iter().map(|z| z.re.sqrt()).collect();
        let q = CMatrix::from_fn(qdr.q.nrows(), qdr.rank, |i, j| qdr.q[(i, j)] * half[j]);
        let r = CMatrix::from_fn(qdr.rank, qdr.r.ncols(), |i, j| qdr.r[(i, j)] * half[i]);
        let core = &r * a * &q;
        // rank(W~_k) is the Gram-Schmidt column count, the same decision that sized Q
        if matrix_rank(&core, tol) != qdr.rank {
            return Err(Error::ExistenceViolated(k));
        }
        out.push(&q * solve_linear(&core, &r, tol)?);
    }
    Ok(out)
}

/// Outer inverse `A^(2)` with the range and null space of `W`, computed from
/// per-slice QDR factors of `W`.
pub fn outer_inverse_qdr(a: &Tensor3, w: &Tensor3, t: &Transform, tol: &ToleranceConfig) -> Result<GinvReport> {
    let (m, n, p) = a.dims();
    if w.dims() != (n, m, p) {
        return Err(Error::dims(format!("W must be {n}x{m}x{p}, got {:?}", w.dims())));
    }
    let z = outer_slices(&transformed_slices(a, t)?, &transformed_slices(w, t)?, tol)?;
    let z = assemble(n, m, &z, t)?;
    report(a, z, t, InverseKind::Outer, tol)
}

/// Moore-Penrose inverse as the outer inverse steered by `A*`.
pub fn pinv_qdr(a: &Tensor3, t: &Transform, tol: &ToleranceConfig) -> Result<GinvReport> {
    let (m, n, _) = a.dims();
    let a_slices = transformed_slices(a, t)?;
    let w_slices: Vec<CMatrix> = a_slices.iter().map(|s| s.adjoint()).collect();
    let x = assemble(n, m, &outer_slices(&a_slices, &w_slices, tol)?, t)?;
    report(a, x, t, InverseKind::Pinv, tol)
}

/// Drazin inverse as the outer inverse steered by the per-slice index powers
/// `B~_k^(ind B~_k)`.
pub fn drazin_qdr(b: &Tensor3, t: &Transform, tol: &ToleranceConfig) -> Result<GinvReport> {
    if !b.is_square() {
        return Err(Error::dims(format!(
            "Drazin inverse of non-square tensor {:?}",
            b.dims()
        )));
    }
    let m = b.rows();
    let b_slices = transformed_slices(b, t)?;
    let mut w_slices = Vec::with_capacity(b_slices.len());
    for s in &b_slices {
        let (_, power, scale) = index_and_power(s, tol);
        // drop roundoff left in a nilpotent power so QDR keeps no columns
        if matrix_rank_scaled(&power, scale, tol) == 0 {
            w_slices.push(CMatrix::zeros(m, m));
        } else {
            w_slices.push(power);
        }
    }
    let y = assemble(m, m, &outer_slices(&b_slices, &w_slices, tol)?, t)?;
    report(b, y, t, InverseKind::Drazin, tol)
}

/// Per-slice outcome of comparing range and null spaces of `Z` and `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceReport {
    /// `rank [Z~_k W~_k] = rank Z~_k = rank W~_k`
    pub range: Vec<bool>,
    /// `rank [Z~_k; W~_k] = rank Z~_k`
    pub null: Vec<bool>,
}

impl SubspaceReport {
    pub fn passed(&self) -> bool {
        self.range.iter().chain(&self.null).all(|&b| b)
    }
}

fn normalized(a: &CMatrix) -> CMatrix {
    let n = a.norm();
    if n > 0.0 {
        a.unscale(n)
    } else {
        a.clone()
    }
}

/// Slice-wise range and null-space equality of `Z` and `W` in the transform
/// domain.
pub fn check_subspaces(z: &Tensor3, w: &Tensor3, t: &Transform, tol: &ToleranceConfig) -> Result<SubspaceReport> {
    if z.dims() != w.dims() {
        return Err(Error::dims(format!(
            "subspace check of {:?} against {:?}",
            z.dims(),
            w.dims()
        )));
    }
    let mut range = Vec::with_capacity(z.depth());
    let mut null = Vec::with_capacity(z.depth());
    for (zs, ws) in transformed_slices(z, t)?.iter().zip(transformed_slices(w, t)?) {
        let (zs, ws) = (normalized(zs), normalized(&ws));
        let rz = matrix_rank(&zs, tol);
        let rw = matrix_rank(&ws, tol);
        let side = CMatrix::from_fn(zs.nrows(), zs.ncols() * 2, |i, j| {
            if j < zs.ncols() {
                zs[(i, j)]
            } else {
                ws[(i, j - zs.ncols())]
            }
        });
        let stacked = CMatrix::from_fn(zs.nrows() * 2, zs.ncols(), |i, j| {
            if i < zs.nrows() {
                zs[(i, j)]
            } else {
                ws[(i - zs.nrows(), j)]
            }
        });
        range.push(matrix_rank(&side, tol) == rz && rz == rw);
        null.push(matrix_rank(&stacked, tol) == rz && rz == rw);
    }
    Ok(SubspaceReport { range, null })
}
