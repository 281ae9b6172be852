use crate::image::GrayImage;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fills one output row of a rotation by `degrees` around the image center.
///
/// Backward mapping with bilinear interpolation: each destination pixel
/// samples the source at the inverse-rotated position, clamped to the image
/// border, and the blended value is rounded half-up to u8.
fn rotate_row(src: &GrayImage, degrees: f64, y: usize, row: &mut [u8]) {
    let (w, h) = (src.width() as usize, src.height() as usize);
    let a = degrees.to_radians();
    let (ca, sa) = (a.cos(), a.sin());
    let cx = (w as f64 - 1.0) / 2.0;
    let cy = (h as f64 - 1.0) / 2.0;
    let px = src.pixels();
    let dy = y as f64 - cy;
    for (x, out) in row.iter_mut().enumerate() {
        let dx = x as f64 - cx;
        let sx = (ca * dx + sa * dy + cx).clamp(0.0, w as f64 - 1.0);
        let sy = (-sa * dx + ca * dy + cy).clamp(0.0, h as f64 - 1.0);
        let x0 = sx as usize;
        let y0 = sy as usize;
        let x1 = (x0 + 1).min(w - 1);
        let y1 = (y0 + 1).min(h - 1);
        let fx = sx - x0 as f64;
        let fy = sy - y0 as f64;
        let top = px[y0 * w + x0] as f64 * (1.0 - fx) + px[y0 * w + x1] as f64 * fx;
        let bot = px[y1 * w + x0] as f64 * (1.0 - fx) + px[y1 * w + x1] as f64 * fx;
        let v = top * (1.0 - fy) + bot * fy;
        *out = ((v + 0.5) as i32).clamp(0, 255) as u8;
    }
}

#[cfg(feature = "parallel")]
fn rotate_once(src: &GrayImage, degrees: f64) -> GrayImage {
    let (w, h) = (src.width(), src.height());
    let mut pixels = vec![0u8; w as usize * h as usize];
    pixels
        .par_chunks_mut(w as usize)
        .enumerate()
        .for_each(|(y, row)| rotate_row(src, degrees, y, row));
    GrayImage::new(w, h, pixels).expect("rotation preserves dimensions")
}

#[cfg(not(feature = "parallel"))]
fn rotate_once(src: &GrayImage, degrees: f64) -> GrayImage {
    rotate_once_seq(src, degrees)
}

fn rotate_once_seq(src: &GrayImage, degrees: f64) -> GrayImage {
    let (w, h) = (src.width(), src.height());
    let mut pixels = vec![0u8; w as usize * h as usize];
    for (y, row) in pixels.chunks_mut(w as usize).enumerate() {
        rotate_row(src, degrees, y, row);
    }
    GrayImage::new(w, h, pixels).expect("rotation preserves dimensions")
}

/// Rotates by `angle` degrees, requantizes, then rotates back by the same
/// amount. The round trip through two interpolations is the attack: pixel
/// values shift even though the geometry is restored.
pub fn attack_rotation(img: &GrayImage, angle: f64) -> GrayImage {
    rotate_once(&rotate_once(img, angle), -angle)
}

/// Single-threaded [`attack_rotation`]; produces identical pixels.
pub fn attack_rotation_seq(img: &GrayImage, angle: f64) -> GrayImage {
    rotate_once_seq(&rotate_once_seq(img, angle), -angle)
}
