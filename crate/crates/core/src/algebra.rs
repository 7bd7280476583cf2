//! M-product algebra: products, adjoints, identities, inverses and
//! transform-domain rank diagnostics.

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::kernels::{matrix_index, matrix_rank, solve_linear};
use crate::tensor::{CMatrix, Tensor3};
use crate::transform::Transform;

/// Per-slice ranks of `A x_3 M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRank {
    pub ranks: Vec<usize>,
}

impl MultiRank {
    pub fn tubal_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.ranks.windows(2).all(|w| w[0] == w[1])
    }
}

/// Per-slice matrix indices of `A x_3 M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex {
    pub indices: Vec<usize>,
}

impl MultiIndex {
    pub fn tubal_index(&self) -> usize {
        self.indices.iter().copied().max().unwrap_or(0)
    }
}

fn check_depth(a: &Tensor3, t: &Transform) -> Result<()> {
    if a.depth() != t.p() {
        return Err(Error::dims(format!(
            "tensor depth {} does not match transform size {}",
            a.depth(),
            t.p()
        )));
    }
    Ok(())
}

/// `A x_3 M`.
pub fn to_transform_domain(a: &Tensor3, t: &Transform) -> Result<Tensor3> {
    check_depth(a, t)?;
    a.mode3_product(t.matrix())
}

/// `A x_3 M^-1`.
pub fn from_transform_domain(a: &Tensor3, t: &Transform) -> Result<Tensor3> {
    check_depth(a, t)?;
    a.mode3_product(t.inverse())
}

/// Transform-domain slices of `a`.
pub(crate) fn transformed_slices(a: &Tensor3, t: &Transform) -> Result<Vec<CMatrix>> {
    Ok(to_transform_domain(a, t)?.slices())
}

/// Stacks transform-domain slices and maps them back with `M^-1`.
pub(crate) fn assemble(m: usize, n: usize, slices: &[CMatrix], t: &Transform) -> Result<Tensor3> {
    from_transform_domain(&Tensor3::from_slices(m, n, slices)?, t)
}

/// `A * B = ((A x_3 M) Δ (B x_3 M)) x_3 M^-1`.
pub fn m_product(a: &Tensor3, b: &Tensor3, t: &Transform) -> Result<Tensor3> {
    if a.cols() != b.rows() || a.depth() != b.depth() {
        return Err(Error::dims(format!("M-product of {:?} and {:?}", a.dims(), b.dims())));
    }
    let at = to_transform_domain(a, t)?;
    let bt = to_transform_domain(b, t)?;
    from_transform_domain(&at.facewise_product(&bt)?, t)
}

/// Left-to-right product of a chain of tensors.
pub fn m_product_chain(factors: &[&Tensor3], t: &Transform) -> Result<Tensor3> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty product chain".into()))?;
    let mut acc = to_transform_domain(first, t)?;
    for f in rest {
        if acc.cols() != f.rows() || acc.depth() != f.depth() {
            return Err(Error::dims(format!("M-product of {:?} and {:?}", acc.dims(), f.dims())));
        }
        acc = acc.facewise_product(&to_transform_domain(f, t)?)?;
    }
    from_transform_domain(&acc, t)
}

/// Conjugate transpose under the M-product: adjoint of every transform-domain
/// slice, mapped back.
pub fn m_transpose(a: &Tensor3, t: &Transform) -> Result<Tensor3> {
    let at = to_transform_domain(a, t)?;
    from_transform_domain(&at.slice_adjoint(), t)
}

/// Tensor whose transform-domain slices are all `I_m`.
pub fn m_identity(m: usize, p: usize, t: &Transform) -> Result<Tensor3> {
    if t.p() != p {
        return Err(Error::dims(format!(
            "identity depth {p} does not match transform size {}",
            t.p()
        )));
    }
    let slices = vec![CMatrix::identity(m, m); p];
    assemble(m, m, &slices, t)
}

/// Inverse under the M-product by per-slice LU in the transform domain.
pub fn m_inverse(a: &Tensor3, t: &Transform, tol: &ToleranceConfig) -> Result<Tensor3> {
    if !a.is_square() {
        return Err(Error::dims(format!("inverse of non-square tensor {:?}", a.dims())));
    }
    let m = a.rows();
    let mut out = Vec::with_capacity(a.depth());
    for (k, s) in transformed_slices(a, t)?.iter().enumerate() {
        if matrix_rank(s, tol) < m {
            return Err(Error::SingularSlice(k));
        }
        let inv = solve_linear(s, &CMatrix::identity(m, m), tol).map_err(|e| match e {
            Error::SingularSystem => Error::SingularSlice(k),
            other => other,
        })?;
        out.push(inv);
    }
    assemble(m, m, &out, t)
}

/// `A^j`, with `A^0` the identity tensor.
pub fn m_power(a: &Tensor3, j: usize, t: &Transform) -> Result<Tensor3> {
    if !a.is_square() {
        return Err(Error::dims(format!("power of non-square tensor {:?}", a.dims())));
    }
    let at = to_transform_domain(a, t)?;
    let slices: Vec<CMatrix> = at.slices().iter().map(|s| crate::kernels::matrix_power(s, j)).collect();
    assemble(a.rows(), a.rows(), &slices, t)
}

pub fn multirank(a: &Tensor3, t: &Transform, tol: &ToleranceConfig) -> Result<MultiRank> {
    let ranks = transformed_slices(a, t)?.iter().map(|s| matrix_rank(s, tol)).collect();
    Ok(MultiRank { ranks })
}

pub fn multi_index(a: &Tensor3, t: &Transform, tol: &ToleranceConfig) -> Result<MultiIndex> {
    if !a.is_square() {
        return Err(Error::dims(format!("index of non-square tensor {:?}", a.dims())));
    }
    let indices = transformed_slices(a, t)?.iter().map(|s| matrix_index(s, tol)).collect();
    Ok(MultiIndex { indices })
}
