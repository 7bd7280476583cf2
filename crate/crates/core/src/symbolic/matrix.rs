use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;

use super::ratfun::RatFun;
use crate::error::{Error, Result};
use crate::tensor::CMatrix;
use num_complex::Complex64;

/// Dense row-major matrix of rational functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

impl SymMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![RatFun::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RatFun::one() } else { RatFun::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFun) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dims("ragged rows"));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Constant matrix from rational rows.
    pub fn from_rational_rows(rows: &[Vec<BigRational>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(RatFun::constant).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFun) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFun::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn column(&self, j: usize) -> Vec<RatFun> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<RatFun>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(RatFun::zero(), |acc, k| {
                let (a, b) = (self.get(i, k), rhs.get(k, j));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        }))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&RatFun, &RatFun) -> RatFun) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::dims(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn eval(&self, x: &BigRational) -> Result<CMatrix> {
        let mut out = CMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = Complex64::new(self.get(i, j).eval_f64(x)?, 0.0);
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Row-reduces `[self | rhs]` in place; returns the pivot columns.
    fn eliminate(&mut self, rhs: &mut Self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // lowest-degree nonzero pivot keeps intermediate degrees small
            let Some(p) = (row..self.rows)
                .filter(|&i| !self.get(i, col).is_zero())
                .min_by_key(|&i| {
                    let e = self.get(i, col);
                    (e.num().degree() + e.den().degree(), i)
                })
            else {
                continue;
            };
            self.swap_rows(row, p);
            rhs.swap_rows(row, p);
            let inv = self.get(row, col).recip().expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for j in 0..rhs.cols {
                let v = rhs.get(row, j) * &inv;
                rhs.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let f = self.get(i, col).clone();
                for j in 0..self.cols {
                    if !self.get(row, j).is_zero() {
                        let v = self.get(i, j) - &(&f * self.get(row, j));
                        self.set(i, j, v);
                    }
                }
                for j in 0..rhs.cols {
                    if !rhs.get(row, j).is_zero() {
                        let v = rhs.get(i, j) - &(&f * rhs.get(row, j));
                        rhs.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        a.eliminate(&mut Self::zeros(self.rows, 0)).len()
    }

    /// Solves `self * X = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if self.rows != self.cols || rhs.rows != self.rows {
            return Err(Error::dims(format!(
                "solve needs a square matrix and matching right-hand side, got {:?} and {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        if a.eliminate(&mut b).len() < self.rows {
            return Err(Error::SingularSystem);
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.rows))
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;
    fn add(self, rhs: &SymMatrix) -> SymMatrix {
        self.try_add(rhs).expect("matching shapes")
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;
    fn sub(self, rhs: &SymMatrix) -> SymMatrix {
        self.try_sub(rhs).expect("matching shapes")
    }
}

impl Mul for &SymMatrix {
    type Output = SymMatrix;
    fn mul(self, rhs: &SymMatrix) -> SymMatrix {
        self.try_mul(rhs).expect("matching inner dimensions")
    }
}
