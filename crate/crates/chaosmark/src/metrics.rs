//! Similarity and distortion metrics.

use crate::error::{Error, Result};
use crate::image::{GrayImage, Watermark};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimilarityReport {
    pub matching_bits: usize,
    pub total_bits: usize,
}

impl SimilarityReport {
    pub fn percentage(&self) -> f64 {
        100.0 * self.matching_bits as f64 / self.total_bits as f64
    }
}

/// Fraction of equal bits between two equally sized watermarks.
pub fn similarity(a: &Watermark, b: &Watermark) -> Result<SimilarityReport> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch {
            left_w: a.width(),
            left_h: a.height(),
            right_w: b.width(),
            right_h: b.height(),
        });
    }
    let matching = a
        .bits()
        .iter()
        .zip(b.bits())
        .filter(|(x, y)| x == y)
        .count();
    Ok(SimilarityReport {
        matching_bits: matching,
        total_bits: a.len(),
    })
}

/// Peak signal-to-noise ratio in dB; +infinity for identical images.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    a.same_dims(b)?;
    let sum_sq: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = x.abs_diff(y) as u64;
            d * d
        })
        .sum();
    if sum_sq == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sum_sq as f64 / a.pixels().len() as f64;
    Ok(10.0 * (255.0 * 255.0 / mse).log10())
}
