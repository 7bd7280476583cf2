//! Reference tensors shared by the integration tests.
#![allow(dead_code)]

use mprod::symbolic::{BigRational, Poly, RatFun, SymTensor3, SymTransform};
use mprod::{Complex64, Tensor3, Transform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn t3(slices: &[&[&[f64]]]) -> Tensor3 {
    Tensor3::from_real_slices(slices).unwrap()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn fixture(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
}

pub fn max_diff(a: &Tensor3, b: &Tensor3) -> f64 {
    assert_eq!(a.dims(), b.dims());
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// 3x3x3, multirank (2, 2, 3).
pub fn full_tubal() -> (Tensor3, Transform) {
    let a = t3(&[
        &[&[0.0, 1.0, 0.0], &[-1.0, 0.0, 1.0], &[-1.0, 0.0, 1.0]],
        &[&[1.0, 1.0, 1.0], &[1.0, 1.0, 2.0], &[-1.0, 0.0, -1.0]],
        &[&[1.0, 2.0, 1.0], &[2.0, 1.0, 1.0], &[1.0, 1.0, 1.0]],
    ]);
    let m = Transform::from_real_rows(&[[1.0, -1.0, 1.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]]).unwrap();
    (a, m)
}

/// Its Moore-Penrose inverse, to four decimals.
pub fn full_tubal_pinv() -> Tensor3 {
    t3(&[
        &[
            &[-0.1553, -1.7632, 1.9421],
            &[-1.1053, -0.2632, 2.3421],
            &[1.7447, 2.2368, -5.8579],
        ],
        &[
            &[-0.1053, -0.7632, 0.8421],
            &[-0.6053, -0.2632, 1.3421],
            &[0.8947, 1.2368, -3.1579],
        ],
        &[&[0.0, 1.0, -1.0], &[1.0, 0.0, -1.0], &[-1.0, -1.0, 3.0]],
    ])
}

pub fn corner_shear() -> Transform {
    Transform::from_real_rows(&[[1.0, 0.0, 1.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap()
}

/// 3x3x3 with per-slice indices (1, 2, 3) under [`corner_shear`].
pub fn index_123() -> Tensor3 {
    t3(&[
        &[&[1.0, 0.0, 0.0], &[3.0, 3.0, -1.0], &[0.0, 0.0, 0.0]],
        &[&[2.0, 0.0, 0.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0]],
        &[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0]],
    ])
}

pub fn index_123_drazin() -> Tensor3 {
    t3(&[
        &[&[0.0625, 0.0625, 0.0], &[0.1875, 0.1875, 0.0], &[0.0, 0.0, 0.0]],
        &[&[0.5, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]],
        &[&[0.0; 3], &[0.0; 3], &[0.0; 3]],
    ])
}

/// 3x4x3 with multirank (1, 2, 3) under [`corner_shear`].
pub fn rank_123_a() -> Tensor3 {
    t3(&[
        &[&[-1.0, 2.0, 3.0, 0.0], &[-1.0, 1.0, -3.0, 2.0], &[0.0, 2.0, 2.0, -2.0]],
        &[&[1.0, 1.0, 1.0, 0.0], &[0.0, 0.0, -1.0, 0.0], &[1.0, 1.0, 0.0, 0.0]],
        &[&[2.0, -2.0, -2.0, 0.0], &[0.0, -1.0, 2.0, -2.0], &[2.0, -2.0, 0.0, 2.0]],
    ])
}

/// Exact Moore-Penrose inverse of [`rank_123_a`], as `(num, den)` per entry.
pub fn rank_123_a_pinv() -> [[[(i64, i64); 3]; 4]; 3] {
    [
        [
            [(-11, 516), (-67, 516), (8, 129)],
            [(5, 43), (7, 43), (5, 43)],
            [(187, 516), (-151, 516), (-7, 129)],
            [(19, 86), (9, 43), (-12, 43)],
        ],
        [
            [(1, 6), (1, 6), (1, 3)],
            [(1, 6), (1, 6), (1, 3)],
            [(1, 3), (-2, 3), (-1, 3)],
            [(0, 1), (0, 1), (0, 1)],
        ],
        [
            [(9, 86), (2, 43), (9, 86)],
            [(-5, 43), (-7, 43), (-5, 43)],
            [(-12, 43), (9, 43), (19, 86)],
            [(-19, 86), (-9, 43), (12, 43)],
        ],
    ]
}

pub fn rank_123_b() -> Tensor3 {
    t3(&[
        &[&[4.0, 2.0, -2.0, -1.0], &[4.0, 2.0, -4.0, 0.0], &[2.0, 3.0, -2.0, 1.0]],
        &[&[1.0, -2.0, 3.0, 2.0], &[2.0, -2.0, 4.0, 2.0], &[2.0, -2.0, 4.0, 2.0]],
        &[
            &[-2.0, -2.0, 0.0, -1.0],
            &[-2.0, -2.0, 2.0, -2.0],
            &[-1.0, -3.0, 1.0, -2.0],
        ],
    ])
}

/// 2x3x2 with multirank (1, 2).
pub fn mixed_rank() -> (Tensor3, Transform) {
    let a = t3(&[
        &[&[0.0, 1.0, 0.0], &[0.0, 1.0, 1.0]],
        &[&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]],
    ]);
    let m = Transform::from_real_rows(&[[1.0, -1.0], [0.0, 1.0]]).unwrap();
    (a, m)
}

pub fn rf(num: &[i64], den: &[i64]) -> RatFun {
    RatFun::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
}

pub fn sym_transform_12_11() -> SymTransform {
    SymTransform::from_int_rows(&[[1, 2], [1, 1]]).unwrap()
}

/// `z / (1 + z + z^2/2 + z^3/6)` in the (1,1,1) entry and `2z` at (2,1,2).
pub fn exp_pade_a() -> SymTensor3 {
    let den = Poly::from_coeffs(vec![q(1, 1), q(1, 1), q(1, 2), q(1, 6)]);
    let mut a = SymTensor3::zeros(2, 2, 2);
    a.set(0, 0, 0, RatFun::new(Poly::x(), den).unwrap());
    a.set(1, 0, 1, rf(&[0, 2], &[1]));
    a
}

pub fn exp_pade_w() -> SymTensor3 {
    let mut w = SymTensor3::zeros(2, 2, 2);
    w.set(0, 0, 0, rf(&[1, 1], &[1]));
    w.set(1, 0, 1, rf(&[0, 1], &[1]));
    w
}

/// `(index, numerator, denominator)` with ascending integer coefficients.
pub type ExactEntry = ((usize, usize, usize), Vec<i64>, Vec<i64>);

/// Numerators and denominators of the nonzero Moore-Penrose entries of
/// [`exp_pade_a`], ascending coefficients, keyed by zero-based `(i, j, k)`.
pub fn exp_pade_pinv() -> Vec<ExactEntry> {
    let d1 = vec![
        0, 13770, 47952, 89424, 114912, 110754, 83484, 50202, 24192, 9288, 2784, 624, 96, 8,
    ];
    let d2: Vec<i64> = d1.iter().map(|c| c / 2).collect();
    vec![
        (
            (0, 0, 0),
            vec![4698, 13770, 20493, 20439, 14742, 7938, 3213, 945, 189, 21],
            d1.clone(),
        ),
        (
            (0, 1, 0),
            vec![
                3888, 15552, 31104, 41472, 40824, 31104, 18792, 9072, 3483, 1044, 234, 36, 3,
            ],
            d2,
        ),
        (
            (0, 0, 1),
            vec![-1944, -5832, -8748, -8748, -6318, -3402, -1377, -405, -81, -9],
            d1.clone(),
        ),
        (
            (0, 1, 1),
            vec![
                -2268, -9720, -20088, -27216, -27027, -20682, -12519, -6048, -2322, -696, -156, -24, -2,
            ],
            d1,
        ),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_real(rng: &mut impl Rng, m: usize, n: usize, p: usize) -> Tensor3 {
    Tensor3::from_fn(m, n, p, |_, _, _| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
}

/// Well-conditioned real transform: identity plus a small random perturbation.
pub fn random_transform(rng: &mut impl Rng, p: usize) -> Transform {
    let rows: Vec<Vec<f64>> = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| if i == j { 1.0 } else { 0.0 } + rng.gen_range(-0.3..0.3))
                .collect()
        })
        .collect();
    Transform::from_real_rows(&rows).unwrap()
}

/// Real tensor whose transform-domain slices have the given ranks. The
/// factors are identity-dominant, so nonzero singular values stay O(1) and
/// absolute residuals stay meaningful.
pub fn with_multirank(rng: &mut impl Rng, m: usize, n: usize, ranks: &[usize], tr: &Transform) -> Tensor3 {
    let p = ranks.len();
    let mut hat = Tensor3::zeros(m, n, p);
    let mut near_eye =
        |i: usize, j: usize| Complex64::new(if i == j { 1.0 } else { 0.0 } + rng.gen_range(-0.4..0.4), 0.0);
    for (k, &r) in ranks.iter().enumerate() {
        let u = mprod::CMatrix::from_fn(m, r, &mut near_eye);
        let v = mprod::CMatrix::from_fn(r, n, &mut near_eye);
        hat.set_slice(k, &(u * v)).unwrap();
    }
    let a = mprod::from_transform_domain(&hat, tr).unwrap();
    // the transform is real, so imaginary parts are roundoff
    a.map(|z| Complex64::new(z.re, 0.0))
}
