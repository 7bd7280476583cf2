//! Dense per-slice matrix kernels: numerical rank, full-rank factorization by
//! column-pivoted QR, square-root-free QDR, matrix index and LU solves.

use num_complex::Complex64;

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::tensor::{c, CMatrix};

/// `A = F G` with `F` of full column rank and `G` of full row rank.
#[derive(Debug, Clone)]
pub struct MatrixFrd {
    pub f: CMatrix,
    pub g: CMatrix,
    pub rank: usize,
}

/// `A = Q D R` with pairwise-orthogonal (unnormalized) columns in `Q`,
/// `D = (Q* Q)^-1` and `R = Q* A` upper trapezoidal.
#[derive(Debug, Clone)]
pub struct MatrixQdr {
    pub q: CMatrix,
    pub d: CMatrix,
    pub r: CMatrix,
    pub rank: usize,
}

impl MatrixQdr {
    pub fn reconstruct(&self) -> CMatrix {
        &self.q * &self.d * &self.r
    }
}

pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = a.clone().singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Numerical rank: count of `s_i > rank_rel_tol * s_1 * max(m, n)`.
pub fn matrix_rank(a: &CMatrix, tol: &ToleranceConfig) -> usize {
    let sv = singular_values(a);
    let s1 = sv.first().copied().unwrap_or(0.0);
    count_above(&sv, tol.rank_rel_tol * s1 * a.nrows().max(a.ncols()) as f64)
}

/// Rank with an externally supplied scale in place of `s_1`. Used for matrix
/// powers, where `|A^j|_2 <= |A|_2^j` gives a threshold that does not collapse
/// onto roundoff when `A^j` should vanish.
pub fn matrix_rank_scaled(a: &CMatrix, scale: f64, tol: &ToleranceConfig) -> usize {
    let sv = singular_values(a);
    count_above(&sv, tol.rank_rel_tol * scale * a.nrows().max(a.ncols()) as f64)
}

fn count_above(sv: &[f64], threshold: f64) -> usize {
    sv.iter().filter(|&&s| s > threshold).count()
}

/// Householder QR with column pivoting, `A P = Q R`.
struct PivotedQr {
    /// Householder vectors, `v_k` acting on rows `k..m`.
    reflectors: Vec<(Vec<Complex64>, f64)>,
    r: CMatrix,
    perm: Vec<usize>,
}

fn pivoted_qr(a: &CMatrix) -> PivotedQr {
    let (m, n) = a.shape();
    let mut w = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut reflectors = Vec::new();
    for k in 0..m.min(n) {
        // largest remaining column norm; strict comparison keeps the lowest index on ties
        let mut best = k;
        let mut best_norm = -1.0;
        for j in k..n {
            let nrm: f64 = (k..m).map(|i| w[(i, j)].norm_sqr()).sum();
            if nrm > best_norm {
                best_norm = nrm;
                best = j;
            }
        }
        if best != k {
            w.swap_columns(k, best);
            perm.swap(k, best);
        }
        let norm_x = best_norm.sqrt();
        if norm_x == 0.0 {
            reflectors.push((vec![c(0.0); m - k], 0.0));
            continue;
        }
        let x0 = w[(k, k)];
        let phase = if x0.norm() == 0.0 { c(1.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm_x;
        let mut v: Vec<Complex64> = (k..m).map(|i| w[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm2;
        apply_reflector(&mut w, k, &v, beta, k);
        reflectors.push((v, beta));
    }
    let r = CMatrix::from_fn(m, n, |i, j| if i <= j { w[(i, j)] } else { c(0.0) });
    PivotedQr { reflectors, r, perm }
}

/// `W[k.., cols..] -= beta v (v* W[k.., cols..])`.
fn apply_reflector(w: &mut CMatrix, k: usize, v: &[Complex64], beta: f64, first_col: usize) {
    if beta == 0.0 {
        return;
    }
    for j in first_col..w.ncols() {
        let dot: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * w[(k + i, j)]).sum();
        let s = dot * beta;
        for (i, vi) in v.iter().enumerate() {
            w[(k + i, j)] -= vi * s;
        }
    }
}

impl PivotedQr {
    /// First `r` columns of `Q`.
    fn thin_q(&self, m: usize, r: usize) -> CMatrix {
        let mut q = CMatrix::identity(m, r);
        for (k, (v, beta)) in self.reflectors.iter().enumerate().rev() {
            apply_reflector(&mut q, k, v, *beta, 0);
        }
        q
    }
}

/// Full-rank factorization from a rank-revealing column-pivoted QR.
///
/// `F` holds the leading `r` orthonormal columns of `Q` and `G = R_{1:r,:} P^T`,
/// where `r` is the numerical rank. A numerically zero matrix yields empty
/// factors.
pub fn matrix_frd(a: &CMatrix, tol: &ToleranceConfig) -> MatrixFrd {
    let r = matrix_rank(a, tol);
    frd_with_rank(a, r)
}

pub(crate) fn frd_with_rank(a: &CMatrix, r: usize) -> MatrixFrd {
    let (m, n) = a.shape();
    if r == 0 {
        return MatrixFrd {
            f: CMatrix::zeros(m, 0),
            g: CMatrix::zeros(0, n),
            rank: 0,
        };
    }
    let qr = pivoted_qr(a);
    let f = qr.thin_q(m, r);
    let mut g = CMatrix::zeros(r, n);
    for (j, &col) in qr.perm.iter().enumerate() {
        for i in 0..r {
            g[(i, col)] = qr.r[(i, j)];
        }
    }
    MatrixFrd { f, g, rank: r }
}

/// Square-root-free QDR by unnormalized modified Gram-Schmidt over the
/// columns of `a`.
pub fn matrix_qdr(a: &CMatrix, tol: &ToleranceConfig) -> MatrixQdr {
    qdr_limited(a, tol, usize::MAX)
}

/// Gram-Schmidt stopped after at most `max_cols` kept directions.
pub fn matrix_qdr_truncated(a: &CMatrix, tol: &ToleranceConfig, max_cols: usize) -> MatrixQdr {
    qdr_limited(a, tol, max_cols)
}

fn qdr_limited(a: &CMatrix, tol: &ToleranceConfig, max_cols: usize) -> MatrixQdr {
    let (m, n) = a.shape();
    let mut cols: Vec<nalgebra::DVector<Complex64>> = Vec::new();
    let mut sq_norms: Vec<f64> = Vec::new();
    for j in 0..n {
        if cols.len() >= max_cols {
            break;
        }
        let aj = a.column(j).into_owned();
        let mut v = aj.clone();
        // two sweeps of MGS; the second removes what roundoff left behind
        for _ in 0..2 {
            for (q, qq) in cols.iter().zip(&sq_norms) {
                let coef = q.dotc(&v) / *qq;
                v -= q * coef;
            }
        }
        let vn = v.norm();
        if vn > tol.zero_column_tol * aj.norm().max(1.0) {
            sq_norms.push(vn * vn);
            cols.push(v);
        }
    }
    let r = cols.len();
    let q = if r == 0 {
        CMatrix::zeros(m, 0)
    } else {
        CMatrix::from_columns(&cols)
    };
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        r,
        sq_norms.iter().map(|&s| c(1.0 / s)),
    ));
    let rmat = q.adjoint() * a;
    // zero the strictly-lower part, which is roundoff by construction
    let rmat = CMatrix::from_fn(r, n, |i, j| if j < i { c(0.0) } else { rmat[(i, j)] });
    MatrixQdr { q, d, r: rmat, rank: r }
}

/// `A^j` by repeated multiplication; `A^0 = I`.
pub fn matrix_power(a: &CMatrix, j: usize) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::identity(n, n);
    for _ in 0..j {
        out = &out * a;
    }
    out
}

/// Smallest `j >= 0` with `rank(A^j) = rank(A^{j+1})`, capped at `m`.
pub fn matrix_index(a: &CMatrix, tol: &ToleranceConfig) -> usize {
    index_and_power(a, tol).0
}

/// Index together with `A^index` and the scale used for its rank decisions.
pub(crate) fn index_and_power(a: &CMatrix, tol: &ToleranceConfig) -> (usize, CMatrix, f64) {
    let m = a.nrows();
    let s1 = singular_values(a).first().copied().unwrap_or(0.0);
    let mut power = CMatrix::identity(m, m);
    let mut scale = 1.0;
    let mut rank = m;
    for j in 0..=m {
        let next = &power * a;
        let next_scale = scale * s1;
        let next_rank = matrix_rank_scaled(&next, next_scale, tol);
        if next_rank == rank {
            return (j, power, scale);
        }
        power = next;
        scale = next_scale;
        rank = next_rank;
    }
    (m, power, scale)
}

/// Solves `A X = B` by LU with partial pivoting.
///
/// Fails with [`Error::SingularSystem`] when a pivot is at or below
/// `rank_rel_tol * max|A| * r`.
pub fn solve_linear(a: &CMatrix, b: &CMatrix, tol: &ToleranceConfig) -> Result<CMatrix> {
    let r = a.nrows();
    if a.ncols() != r || b.nrows() != r {
        return Err(Error::dims(format!(
            "solve: A is {:?}, B is {:?}",
            a.shape(),
            b.shape()
        )));
    }
    if r == 0 {
        return Ok(CMatrix::zeros(0, b.ncols()));
    }
    let amax = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let threshold = tol.rank_rel_tol * amax * r as f64;
    let mut lu = a.clone();
    let mut x = b.clone();
    for k in 0..r {
        let (piv, pval) =
            (k..r)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if !(pval > threshold) {
            return Err(Error::SingularSystem);
        }
        if piv != k {
            lu.swap_rows(k, piv);
            x.swap_rows(k, piv);
        }
        let d = lu[(k, k)];
        for i in k + 1..r {
            let f = lu[(i, k)] / d;
            if f == c(0.0) {
                continue;
            }
            for j in k..r {
                let t = lu[(k, j)];
                lu[(i, j)] -= f * t;
            }
            for j in 0..x.ncols() {
                let t = x[(k, j)];
                x[(i, j)] -= f * t;
            }
        }
    }
    for k in (0..r).rev() {
        let d = lu[(k, k)];
        for j in 0..x.ncols() {
            let mut s = x[(k, j)];
            for l in k + 1..r {
                s -= lu[(k, l)] * x[(l, j)];
            }
            x[(k, j)] = s / d;
        }
    }
    Ok(x)
}
