use super::matrix::SymMatrix;
use super::ratfun::RatFun;
use super::tensor::{from_transform_domain, sym_transpose, to_transform_domain, SymTensor3, SymTransform};
use crate::error::{Error, Result};

/// Exact `A = Q D R` with `D = diag(1 / q_i^T q_i)` and `R = Q^T A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymQdr {
    pub q: SymMatrix,
    pub d: SymMatrix,
    pub r: SymMatrix,
    pub rank: usize,
}

impl SymQdr {
    pub fn reconstruct(&self) -> SymMatrix {
        &(&self.q * &self.d) * &self.r
    }
}

fn dot(a: &[RatFun], b: &[RatFun]) -> RatFun {
    a.iter().zip(b).fold(RatFun::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            &acc + &(x * y)
        }
    })
}

/// Unnormalized Gram-Schmidt with an exact zero test. Orthogonality is with
/// respect to the bilinear form `x^T y`, which is definite over real rational
/// functions, so every kept direction has a nonzero `q^T q`.
pub fn sym_matrix_qdr(a: &SymMatrix) -> SymQdr {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<RatFun>> = Vec::new();
    let mut sq: Vec<RatFun> = Vec::new();
    for j in 0..n {
        let mut v = a.column(j);
        for (q, qq) in cols.iter().zip(&sq) {
            let coef = dot(q, &v).checked_div(qq).expect("q^T q is nonzero");
            if coef.is_zero() {
                continue;
            }
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi = &*vi - &(&coef * qi);
            }
        }
        if v.iter().any(|e| !e.is_zero()) {
            sq.push(dot(&v, &v));
            cols.push(v);
        }
    }
    let rank = cols.len();
    let q = SymMatrix::from_columns(m, &cols);
    let d = SymMatrix::from_fn(rank, rank, |i, j| {
        if i == j {
            sq[i].recip().expect("q^T q is nonzero")
        } else {
            RatFun::zero()
        }
    });
    let r = &q.transpose() * a;
    SymQdr { q, d, r, rank }
}

/// Symbolic M-QDR, padded with zero columns/rows to the largest slice rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensorQdr {
    pub q: SymTensor3,
    pub d: SymTensor3,
    pub r: SymTensor3,
    pub rank: usize,
}

pub fn sym_tensor_qdr(a: &SymTensor3, tr: &SymTransform) -> Result<SymTensorQdr> {
    let (m, n, _) = a.dims();
    let parts: Vec<SymQdr> = to_transform_domain(a, tr)?
        .slices()
        .iter()
        .map(sym_matrix_qdr)
        .collect();
    let w = parts.iter().map(|p| p.rank).max().unwrap_or(0);
    let pad = |src: &SymMatrix, rows: usize, cols: usize| {
        SymMatrix::from_fn(rows, cols, |i, j| {
            if i < src.nrows() && j < src.ncols() {
                src.get(i, j).clone()
            } else {
                RatFun::zero()
            }
        })
    };
    let q: Vec<_> = parts.iter().map(|p| pad(&p.q, m, w)).collect();
    let d: Vec<_> = parts.iter().map(|p| pad(&p.d, w, w)).collect();
    let r: Vec<_> = parts.iter().map(|p| pad(&p.r, w, n)).collect();
    let back = |s: &[SymMatrix], rows: usize, cols: usize| -> Result<SymTensor3> {
        let t = if s.is_empty() || rows * cols == 0 {
            SymTensor3::zeros(rows, cols, s.len())
        } else {
            SymTensor3::from_slices(s)?
        };
        from_transform_domain(&t, tr)
    };
    Ok(SymTensorQdr {
        q: back(&q, m, w)?,
        d: back(&d, w, w)?,
        r: back(&r, w, n)?,
        rank: w,
    })
}

/// Exact outer inverse `Z` with range and null space prescribed by `W`
/// (`n x m x p` for `A` of size `m x n x p`).
///
/// Per transform-domain slice, `W_k = Q D R` and `Z_k = Q (R A_k Q)^-1 R`.
/// A singular core means no such inverse exists for that slice.
pub fn sym_outer_inverse(a: &SymTensor3, w: &SymTensor3, tr: &SymTransform) -> Result<SymTensor3> {
    let (m, n, p) = a.dims();
    if w.dims() != (n, m, p) {
        return Err(Error::dims(format!("W must be {n}x{m}x{p}, got {:?}", w.dims())));
    }
    let at = to_transform_domain(a, tr)?.slices();
    let wt = to_transform_domain(w, tr)?.slices();
    let mut out = Vec::with_capacity(p);
    for (k, (ak, wk)) in at.iter().zip(&wt).enumerate() {
        let f = sym_matrix_qdr(wk);
        if f.rank == 0 {
            out.push(SymMatrix::zeros(n, m));
            continue;
        }
        let core = &(&f.r * ak) * &f.q;
        let x = core.solve(&f.r).map_err(|e| match e {
            Error::SingularSystem => Error::ExistenceViolated(k),
            other => other,
        })?;
        out.push(&f.q * &x);
    }
    from_transform_domain(&SymTensor3::from_slices(&out)?, tr)
}

/// Exact Moore-Penrose inverse, the outer inverse with `W = A^T`.
pub fn sym_pinv(a: &SymTensor3, tr: &SymTransform) -> Result<SymTensor3> {
    sym_outer_inverse(a, &sym_transpose(a), tr)
}
