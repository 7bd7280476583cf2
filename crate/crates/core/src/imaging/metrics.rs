//! PSNR and SSIM for 8-bit RGB images.

use super::ImageRGB;
use crate::error::{Error, Result};

const WINDOW: usize = 8;
const C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
const C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

fn same_dims(a: &ImageRGB, b: &ImageRGB) -> Result<()> {
    let (da, db) = ((a.height(), a.width()), (b.height(), b.width()));
    if da != db {
        return Err(Error::DimMismatch(da, db));
    }
    Ok(())
}

/// `10 log10(255^2 / MSE)` over every channel sample; infinite for identical
/// images.
pub fn psnr(a: &ImageRGB, b: &ImageRGB) -> Result<f64> {
    same_dims(a, b)?;
    let sse: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = x.abs_diff(y) as u64;
            d * d
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / a.pixels().len() as f64;
    Ok(10.0 * (255.0 * 255.0 / mse).log10())
}

/// Summed-area table with a zero border, `(h + 1) x (w + 1)`.
fn integral(h: usize, w: usize, f: impl Fn(usize, usize) -> i64) -> Vec<i64> {
    let mut s = vec![0i64; (h + 1) * (w + 1)];
    for i in 0..h {
        let mut row = 0;
        for j in 0..w {
            row += f(i, j);
            s[(i + 1) * (w + 1) + j + 1] = s[i * (w + 1) + j + 1] + row;
        }
    }
    s
}

fn window_sum(s: &[i64], w: usize, i: usize, j: usize) -> i64 {
    let at = |r: usize, c: usize| s[r * (w + 1) + c];
    at(i + WINDOW, j + WINDOW) - at(i, j + WINDOW) - at(i + WINDOW, j) + at(i, j)
}

fn channel_ssim(a: &ImageRGB, b: &ImageRGB, ch: usize) -> f64 {
    let (h, w) = (a.height(), a.width());
    let x = |i: usize, j: usize| a.channel(i, j, ch) as i64;
    let y = |i: usize, j: usize| b.channel(i, j, ch) as i64;
    let sx = integral(h, w, x);
    let sy = integral(h, w, y);
    let sxx = integral(h, w, |i, j| x(i, j) * x(i, j));
    let syy = integral(h, w, |i, j| y(i, j) * y(i, j));
    let sxy = integral(h, w, |i, j| x(i, j) * y(i, j));
    let n = (WINDOW * WINDOW) as f64;
    let mut total = 0.0;
    for i in 0..=h - WINDOW {
        for j in 0..=w - WINDOW {
            let mx = window_sum(&sx, w, i, j) as f64 / n;
            let my = window_sum(&sy, w, i, j) as f64 / n;
            let vx = window_sum(&sxx, w, i, j) as f64 / n - mx * mx;
            let vy = window_sum(&syy, w, i, j) as f64 / n - my * my;
            let cxy = window_sum(&sxy, w, i, j) as f64 / n - mx * my;
            total += ((2.0 * mx * my + C1) * (2.0 * cxy + C2)) / ((mx * mx + my * my + C1) * (vx + vy + C2));
        }
    }
    total / ((h - WINDOW + 1) * (w - WINDOW + 1)) as f64
}

/// Mean SSIM over 8x8 uniform windows at stride 1 with population
/// statistics, averaged over the three channels.
pub fn ssim(a: &ImageRGB, b: &ImageRGB) -> Result<f64> {
    same_dims(a, b)?;
    if a.height() < WINDOW || a.width() < WINDOW {
        return Err(Error::TooSmall(a.height(), a.width()));
    }
    Ok((0..3).map(|c| channel_ssim(a, b, c)).sum::<f64>() / 3.0)
}
