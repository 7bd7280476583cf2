//! Third-order tensor algebra under the M-product.
//!
//! For an invertible `p x p` matrix `M`, the M-product of `A` (`m x n x p`) and
//! `B` (`n x q x p`) multiplies the frontal slices of `A x_3 M` and `B x_3 M`
//! pairwise and maps the result back with `M^-1`. Everything slice-shaped
//! (ranks, indices, factorizations, inverses) therefore happens in the
//! transform domain.
//!
//! The crate provides:
//!
//! * [`tensor`], [`transform`], [`algebra`]: tensors, transforms, products,
//!   adjoints, inverses, multirank and multi-index.
//! * [`kernels`]: per-slice rank, full-rank factorization, QDR, index, solves.
//! * [`decomp`]: tensor full-rank and M-QDR decompositions.
//! * [`geninv`]: Moore-Penrose, Drazin and outer inverses.
//! * [`symbolic`]: the same QDR-based inverses computed exactly over rational
//!   functions in one variable.
//! * [`imaging`]: truncated-QDR color image compression with PSNR and SSIM.
//! * [`io`]: text formats for tensors, transforms and reports.

pub mod algebra;
pub mod config;
pub mod decomp;
pub mod error;
pub mod geninv;
pub mod imaging;
pub mod io;
pub mod kernels;
pub mod symbolic;
pub mod tensor;
pub mod transform;

pub use algebra::{
    from_transform_domain, m_identity, m_inverse, m_power, m_product, m_product_chain, m_transpose, multi_index,
    multirank, to_transform_domain, MultiIndex, MultiRank,
};
pub use config::ToleranceConfig;
pub use decomp::{tensor_frd, tensor_qdr, truncated_qdr, TensorFrd, TensorQdr};
pub use error::{Error, Result};
pub use geninv::{
    check_subspaces, drazin_frd, drazin_qdr, outer_inverse_qdr, pinv_frd, pinv_qdr, residual_report, GinvReport,
    InverseKind, Residual, SubspaceReport,
};
pub use num_complex::Complex64;
pub use tensor::{CMatrix, Tensor3};
pub use transform::{Lcg64, Transform};
