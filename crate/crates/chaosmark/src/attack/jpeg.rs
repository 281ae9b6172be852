use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Baseline luminance quantization table, row-major with the vertical
/// frequency as the row index.
const Q_LUMA: [u16; 64] = [
    16, 11, 10, 16, 24, 40, 51, 61, //
    12, 12, 14, 19, 26, 58, 60, 55, //
    14, 13, 16, 24, 40, 57, 69, 56, //
    14, 17, 22, 29, 51, 87, 80, 62, //
    18, 22, 37, 56, 68, 109, 103, 77, //
    24, 35, 55, 64, 81, 104, 113, 92, //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
];

struct DctTables {
    /// cos((2j + 1) * k * pi / 16) indexed [k][j].
    cos: [[f64; 8]; 8],
    /// Orthonormal row scaling: sqrt(1/8) for k = 0, 1/2 otherwise.
    scale: [f64; 8],
}

fn tables() -> &'static DctTables {
    static TABLES: OnceLock<DctTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut cos = [[0.0; 8]; 8];
        for (k, row) in cos.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = (((2 * j + 1) * k) as f64 * std::f64::consts::PI / 16.0).cos();
            }
        }
        let mut scale = [0.5; 8];
        scale[0] = (1.0f64 / 8.0).sqrt();
        DctTables { cos, scale }
    })
}

fn dct1(v: &[f64; 8], t: &DctTables) -> [f64; 8] {
    let mut out = [0.0; 8];
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (x, c) in v.iter().zip(t.cos[k]) {
            acc += x * c;
        }
        *o = t.scale[k] * acc;
    }
    out
}

fn idct1(v: &[f64; 8], t: &DctTables) -> [f64; 8] {
    let mut out = [0.0; 8];
    for (j, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (k, x) in v.iter().enumerate() {
            acc += t.scale[k] * x * t.cos[k][j];
        }
        *o = acc;
    }
    out
}

/// Orthonormal 2-D DCT of one 8x8 block: rows first, then columns.
/// `spatial[i][j]` is row i, column j; the result is indexed by vertical
/// then horizontal frequency, matching [`Q_LUMA`].
pub fn dct2_8x8(spatial: &[[f64; 8]; 8]) -> [[f64; 8]; 8] {
    let t = tables();
    let mut rows = [[0.0; 8]; 8];
    for i in 0..8 {
        rows[i] = dct1(&spatial[i], t);
    }
    let mut out = [[0.0; 8]; 8];
    for u in 0..8 {
        let mut col = [0.0; 8];
        for i in 0..8 {
            col[i] = rows[i][u];
        }
        let g = dct1(&col, t);
        for v in 0..8 {
            out[v][u] = g[v];
        }
    }
    out
}

/// Inverse of [`dct2_8x8`]: columns first, then rows.
pub fn idct2_8x8(freq: &[[f64; 8]; 8]) -> [[f64; 8]; 8] {
    let t = tables();
    let mut cols = [[0.0; 8]; 8];
    for (u, out_col) in cols.iter_mut().enumerate() {
        let mut col = [0.0; 8];
        for v in 0..8 {
            col[v] = freq[v][u];
        }
        *out_col = idct1(&col, t);
    }
    let mut out = [[0.0; 8]; 8];
    for (i, out_row) in out.iter_mut().enumerate() {
        let mut row = [0.0; 8];
        for u in 0..8 {
            row[u] = cols[u][i];
        }
        *out_row = idct1(&row, t);
    }
    out
}

/// Recompresses the 8-pixel-tall band starting at row `by`. Blocks that
/// overhang the right or bottom edge are padded by edge replication; padded
/// samples are transformed but never written back.
fn jpeg_band(img: &GrayImage, ratio: f64, by: usize, band: &mut [u8]) {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let px = img.pixels();
    let pw = w.div_ceil(8) * 8;
    for bx in (0..pw).step_by(8) {
        let mut block = [[0.0; 8]; 8];
        for (i, row) in block.iter_mut().enumerate() {
            let sy = (by + i).min(h - 1);
            for (j, s) in row.iter_mut().enumerate() {
                let sx = (bx + j).min(w - 1);
                *s = px[sy * w + sx] as f64 - 128.0;
            }
        }
        let mut freq = dct2_8x8(&block);
        for v in 0..8 {
            for u in 0..8 {
                let q = Q_LUMA[v * 8 + u] as f64 * ratio;
                freq[v][u] = (freq[v][u] / q).round_ties_even() * q;
            }
        }
        let spatial = idct2_8x8(&freq);
        for (i, row) in spatial.iter().enumerate() {
            if by + i >= h {
                break;
            }
            for (j, &s) in row.iter().enumerate() {
                if bx + j < w {
                    band[i * w + bx + j] =
                        ((s + 128.0).round_ties_even() as i32).clamp(0, 255) as u8;
                }
            }
        }
    }
}

fn check_ratio(ratio: f64) -> Result<()> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::InvalidAttack(format!(
            "jpeg ratio {ratio} must be a positive finite scale"
        )));
    }
    Ok(())
}

/// Simulates JPEG recompression: per 8x8 block, a level-shifted orthonormal
/// DCT, quantization by the luminance table scaled by `ratio`, and the
/// inverse transform. Larger ratios mean coarser quantization.
pub fn attack_jpeg(img: &GrayImage, ratio: f64) -> Result<GrayImage> {
    check_ratio(ratio)?;
    let (w, h) = (img.width(), img.height());
    let mut pixels = vec![0u8; w as usize * h as usize];
    #[cfg(feature = "parallel")]
    pixels
        .par_chunks_mut(w as usize * 8)
        .enumerate()
        .for_each(|(band_idx, band)| jpeg_band(img, ratio, band_idx * 8, band));
    #[cfg(not(feature = "parallel"))]
    for (band_idx, band) in pixels.chunks_mut(w as usize * 8).enumerate() {
        jpeg_band(img, ratio, band_idx * 8, band);
    }
    GrayImage::new(w, h, pixels)
}

/// Single-threaded [`attack_jpeg`]; produces identical pixels.
pub fn attack_jpeg_seq(img: &GrayImage, ratio: f64) -> Result<GrayImage> {
    check_ratio(ratio)?;
    let (w, h) = (img.width(), img.height());
    let mut pixels = vec![0u8; w as usize * h as usize];
    for (band_idx, band) in pixels.chunks_mut(w as usize * 8).enumerate() {
        jpeg_band(img, ratio, band_idx * 8, band);
    }
    GrayImage::new(w, h, pixels)
}
