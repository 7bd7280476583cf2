//! Exact computation over univariate rational functions with rational
//! coefficients.
//!
//! Rank decisions here are exact zero tests, so there are no tolerances.
//! Results can be checked against the numeric path by evaluating at a
//! rational point away from the poles (see [`SymTensor3::eval`]).

pub mod inverse;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod tensor;

pub use inverse::{sym_matrix_qdr, sym_outer_inverse, sym_pinv, sym_tensor_qdr, SymQdr, SymTensorQdr};
pub use matrix::SymMatrix;
pub use num_rational::BigRational;
pub use poly::{poly_gcd, poly_lcm, Poly};
pub use ratfun::RatFun;
pub use tensor::{
    from_transform_domain, sym_m_product, sym_mode3_product, sym_transpose, to_transform_domain, SymTensor3,
    SymTransform,
};
