use num_rational::BigRational;

use super::matrix::SymMatrix;
use super::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::tensor::Tensor3;
use crate::transform::Transform;

/// `m x n x p` tensor of rational functions, stored slice-major like
/// [`Tensor3`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor3 {
    m: usize,
    n: usize,
    p: usize,
    data: Vec<RatFun>,
}

impl SymTensor3 {
    pub fn zeros(m: usize, n: usize, p: usize) -> Self {
        Self {
            m,
            n,
            p,
            data: vec![RatFun::zero(); m * n * p],
        }
    }

    pub fn from_fn(m: usize, n: usize, p: usize, mut f: impl FnMut(usize, usize, usize) -> RatFun) -> Self {
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

    pub fn from_vec(m: usize, n: usize, p: usize, data: Vec<RatFun>) -> Result<Self> {
        if data.len() != m * n * p {
            return Err(Error::dims(format!(
                "{m}x{n}x{p} tensor needs {} entries, got {}",
                m * n * p,
                data.len()
            )));
        }
        Ok(Self { m, n, p, data })
    }

    pub fn from_slices(slices: &[SymMatrix]) -> Result<Self> {
        let (m, n) = slices.first().map_or((0, 0), SymMatrix::shape);
        if slices.iter().any(|s| s.shape() != (m, n)) {
            return Err(Error::dims("frontal slices differ in shape"));
        }
        Ok(Self {
            m,
            n,
            p: slices.len(),
            data: slices.iter().flat_map(|s| s.entries().iter().cloned()).collect(),
        })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.p)
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &RatFun {
        &self.data[k * self.m * self.n + i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: RatFun) {
        self.data[k * self.m * self.n + i * self.n + j] = v;
    }

    pub fn slice(&self, k: usize) -> SymMatrix {
        SymMatrix::from_fn(self.m, self.n, |i, j| self.get(i, j, k).clone())
    }

    pub fn slices(&self) -> Vec<SymMatrix> {
        (0..self.p).map(|k| self.slice(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFun::is_zero)
    }

    /// Numeric tensor of the entries evaluated at `x`.
    pub fn eval(&self, x: &BigRational) -> Result<Tensor3> {
        let mut out = Vec::with_capacity(self.data.len());
        for e in &self.data {
            out.push(num_complex::Complex64::new(e.eval_f64(x)?, 0.0));
        }
        Tensor3::from_vec(self.m, self.n, self.p, out)
    }

    /// `I` with identity frontal slices in the transform domain.
    pub fn identity(m: usize, tr: &SymTransform) -> Result<Self> {
        let p = tr.p();
        let slices = vec![SymMatrix::identity(m); p];
        from_transform_domain(&Self::from_slices(&slices)?, tr)
    }
}

/// Invertible rational `p x p` matrix with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTransform {
    m: SymMatrix,
    minv: SymMatrix,
}

impl SymTransform {
    pub fn new(m: SymMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::dims(format!(
                "transform must be square and nonempty, got {:?}",
                m.shape()
            )));
        }
        if m.entries().iter().any(|e| e.as_constant().is_none()) {
            return Err(Error::InvalidArgument(
                "transform entries must be rational constants".into(),
            ));
        }
        let minv = m.inverse().map_err(|_| Error::SingularTransform)?;
        Ok(Self { m, minv })
    }

    pub fn from_rational_rows(rows: &[Vec<BigRational>]) -> Result<Self> {
        Self::new(SymMatrix::from_rational_rows(rows)?)
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        Self::from_rational_rows(&rows)
    }

    pub fn identity(p: usize) -> Self {
        Self {
            m: SymMatrix::identity(p),
            minv: SymMatrix::identity(p),
        }
    }

    /// Exact rational copy of a real floating-point transform.
    pub fn from_numeric(t: &Transform) -> Result<Self> {
        if !t.is_real() {
            return Err(Error::InvalidArgument("symbolic transforms must be real".into()));
        }
        let p = t.p();
        let rows: Vec<Vec<BigRational>> = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| BigRational::from_float(t.matrix()[(i, j)].re).expect("finite entry"))
                    .collect()
            })
            .collect();
        Self::from_rational_rows(&rows)
    }

    pub fn p(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.m
    }

    pub fn inverse(&self) -> &SymMatrix {
        &self.minv
    }

    /// Floating-point version for the numeric path.
    pub fn to_numeric(&self) -> Result<Transform> {
        Transform::new(self.m.eval(&BigRational::from_integer(0.into()))?)
    }
}

/// `A x_3 W`: tube fibers multiplied by `W` (`q x p`).
pub fn sym_mode3_product(a: &SymTensor3, w: &SymMatrix) -> Result<SymTensor3> {
    let (m, n, p) = a.dims();
    if w.ncols() != p {
        return Err(Error::dims(format!(
            "mode-3 factor has {} columns, tensor depth is {p}",
            w.ncols()
        )));
    }
    Ok(SymTensor3::from_fn(m, n, w.nrows(), |i, j, k| {
        (0..p).fold(RatFun::zero(), |acc, l| {
            let (c, e) = (w.get(k, l), a.get(i, j, l));
            if c.is_zero() || e.is_zero() {
                acc
            } else {
                &acc + &(c * e)
            }
        })
    }))
}

fn check_depth(a: &SymTensor3, tr: &SymTransform) -> Result<()> {
    if a.p != tr.p() {
        return Err(Error::dims(format!(
            "tensor depth {} does not match transform size {}",
            a.p,
            tr.p()
        )));
    }
    Ok(())
}

pub fn to_transform_domain(a: &SymTensor3, tr: &SymTransform) -> Result<SymTensor3> {
    check_depth(a, tr)?;
    sym_mode3_product(a, tr.matrix())
}

pub fn from_transform_domain(a: &SymTensor3, tr: &SymTransform) -> Result<SymTensor3> {
    check_depth(a, tr)?;
    sym_mode3_product(a, tr.inverse())
}

pub fn sym_m_product(a: &SymTensor3, b: &SymTensor3, tr: &SymTransform) -> Result<SymTensor3> {
    if a.n != b.m || a.p != b.p {
        return Err(Error::dims(format!(
            "cannot M-multiply {:?} by {:?}",
            a.dims(),
            b.dims()
        )));
    }
    let at = to_transform_domain(a, tr)?;
    let bt = to_transform_domain(b, tr)?;
    let slices = at
        .slices()
        .iter()
        .zip(bt.slices())
        .map(|(x, y)| x.try_mul(&y))
        .collect::<Result<Vec<_>>>()?;
    from_transform_domain(&SymTensor3::from_slices(&slices)?, tr)
}

/// Slice-wise transpose. The transform acts only along the third mode, so this
/// equals transposing in the transform domain for every `M`.
pub fn sym_transpose(a: &SymTensor3) -> SymTensor3 {
    SymTensor3::from_fn(a.n, a.m, a.p, |i, j, k| a.get(j, i, k).clone())
}
