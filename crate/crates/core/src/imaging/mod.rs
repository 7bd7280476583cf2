//! Color image compression by truncated M-QDR.
//!
//! An image becomes a `height x width x 3` tensor (one frontal slice per
//! channel). [`compress`] keeps `k` Gram-Schmidt directions per
//! transform-domain slice and reports PSNR, SSIM and the storage ratio.

mod metrics;
mod ppm;

pub use metrics::{psnr, ssim};
pub use ppm::{decode_ppm, encode_ppm, read_ppm, write_ppm};

use num_complex::Complex64;

use crate::config::ToleranceConfig;
use crate::decomp::truncated_qdr;
use crate::error::{Error, Result};
use crate::tensor::Tensor3;
use crate::transform::Transform;

/// 8-bit RGB raster, row-major with interleaved channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageRGB {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl ImageRGB {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument("image dimensions must be positive".into()));
        }
        if pixels.len() != width * height * 3 {
            return Err(Error::dims(format!(
                "{width}x{height} image needs {} bytes, got {}",
                width * height * 3,
                pixels.len()
            )));
        }
        Ok(Self { width, height, pixels })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height * 3);
        for i in 0..height {
            for j in 0..width {
                for c in 0..3 {
                    pixels.push(f(i, j, c));
                }
            }
        }
        Self { width, height, pixels }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn channel(&self, row: usize, col: usize, c: usize) -> u8 {
        self.pixels[(row * self.width + col) * 3 + c]
    }
}

pub fn image_to_tensor(img: &ImageRGB) -> Tensor3 {
    Tensor3::from_fn(img.height, img.width, 3, |i, j, k| {
        Complex64::new(img.channel(i, j, k) as f64, 0.0)
    })
}

/// Rounds half away from zero, then clamps to `[0, 255]`.
pub fn quantize(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Real parts of a `height x width x 3` tensor, quantized to 8 bits.
pub fn tensor_to_image(a: &Tensor3) -> Result<ImageRGB> {
    let (m, n, p) = a.dims();
    if p != 3 {
        return Err(Error::dims(format!("image tensors have depth 3, got {p}")));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("image dimensions must be positive".into()));
    }
    Ok(ImageRGB::from_fn(n, m, |i, j, c| quantize(a.get(i, j, c).re)))
}

#[derive(Clone, Debug)]
pub struct CompressionResult {
    pub k: usize,
    pub reconstructed: ImageRGB,
    pub psnr_db: f64,
    pub ssim: f64,
    /// `k (m + n + k) / (m n)`.
    pub storage_ratio: f64,
}

pub fn compress(img: &ImageRGB, k: usize, tr: &Transform, tol: &ToleranceConfig) -> Result<CompressionResult> {
    if tr.p() != 3 {
        return Err(Error::dims(format!("image transforms are 3x3, got {0}x{0}", tr.p())));
    }
    let (m, n) = (img.height, img.width);
    let a = image_to_tensor(img);
    let reconstructed = tensor_to_image(&truncated_qdr(&a, tr, k, tol)?.reconstruct(tr)?)?;
    Ok(CompressionResult {
        k,
        psnr_db: psnr(img, &reconstructed)?,
        ssim: ssim(img, &reconstructed)?,
        storage_ratio: (k * (m + n + k)) as f64 / (m * n) as f64,
        reconstructed,
    })
}
