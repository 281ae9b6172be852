//! Deterministic sample images bundled with the toolkit.
//!
//! The generators here produce the exact bytes committed under `assets/`,
//! so tests and benchmarks can rebuild the corpus instead of shipping
//! binary fixtures they cannot diff.

use crate::image::{GrayImage, Watermark};
use crate::rng::splitmix64;

pub const CARRIER_SIDE: u32 = 256;
pub const CARRIER_SEED: u64 = 0xC0FFEE;
const TILE: u32 = 16;

pub const LOGO_SIDE: u32 = 64;

fn lattice_byte(seed: u64, gx: u64, gy: u64) -> u8 {
    let mut state = seed
        ^ gx.wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(gy.wrapping_mul(0xD1B5_4A32_D192_ED03));
    (splitmix64(&mut state) >> 56) as u8
}

/// A 256x256 carrier of flat 16-pixel tiles whose levels are hashed from
/// the tile coordinates. Values stay inside [40, 216] so high-nibble
/// content varies across the image while embedding can never clip.
pub fn synthetic_carrier() -> GrayImage {
    let n = CARRIER_SIDE;
    let mut pixels = Vec::with_capacity((n * n) as usize);
    for y in 0..n {
        for x in 0..n {
            let t = lattice_byte(CARRIER_SEED, (x / TILE) as u64, (y / TILE) as u64);
            pixels.push(40 + ((t as u32 * 177) / 256) as u8);
        }
    }
    GrayImage::new(n, n, pixels).expect("carrier dimensions are fixed")
}

/// A 64x64 binary logo of concentric rings crossed with diagonal stripes,
/// close to an even split of set and cleared bits.
pub fn synthetic_logo() -> Watermark {
    let n = LOGO_SIDE;
    let c = (n as f64 - 1.0) / 2.0;
    let mut bits = Vec::with_capacity((n * n) as usize);
    for y in 0..n {
        for x in 0..n {
            let dx = x as f64 - c;
            let dy = y as f64 - c;
            let r2 = (dx * dx + dy * dy) as u32;
            let ring = (r2 >> 7) & 1;
            let stripe = ((x + y) >> 3) & 1;
            bits.push(ring ^ stripe == 1);
        }
    }
    Watermark::new(n, n, bits).expect("logo dimensions are fixed")
}
