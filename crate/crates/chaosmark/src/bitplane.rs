//! Bit-plane decomposition of grayscale images into most- and
//! least-significant coefficient streams.
//!
//! Streams are row-major over pixels and most-significant-bit first within
//! each pixel, so a given (image, layout) pair always yields the same bit
//! order regardless of platform.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Partition of the 8 bits of a pixel into MSC, LSC, and unused planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitPlaneLayout {
    msc_mask: u8,
    lsc_mask: u8,
}

impl BitPlaneLayout {
    /// Four high bits carry the perceptually significant content, the next
    /// three are the embedding channel, and the lowest bit stays untouched.
    pub const DEFAULT: BitPlaneLayout = BitPlaneLayout {
        msc_mask: 0xF0,
        lsc_mask: 0x0E,
    };

    pub fn new(msc_mask: u8, lsc_mask: u8) -> Result<Self> {
        if msc_mask & lsc_mask != 0 {
            return Err(Error::LayoutOverlap {
                msc: msc_mask,
                lsc: lsc_mask,
            });
        }
        Ok(BitPlaneLayout { msc_mask, lsc_mask })
    }

    pub fn msc_mask(&self) -> u8 {
        self.msc_mask
    }

    pub fn lsc_mask(&self) -> u8 {
        self.lsc_mask
    }

    pub fn unused_mask(&self) -> u8 {
        !(self.msc_mask | self.lsc_mask)
    }

    /// Bits per pixel in the LSC stream.
    pub fn lsc_bits_per_pixel(&self) -> usize {
        self.lsc_mask.count_ones() as usize
    }

    /// LSC stream length M for an image of the given pixel count.
    pub fn lsc_capacity(&self, pixel_count: usize) -> usize {
        pixel_count * self.lsc_bits_per_pixel()
    }
}

impl Default for BitPlaneLayout {
    fn default() -> Self {
        BitPlaneLayout::DEFAULT
    }
}

/// Bit positions selected by `mask`, most significant first.
fn mask_positions(mask: u8) -> impl Iterator<Item = u8> {
    (0..8u8).rev().filter(move |b| mask >> b & 1 == 1)
}

fn extract_plane(image: &GrayImage, mask: u8) -> Vec<bool> {
    let positions: Vec<u8> = mask_positions(mask).collect();
    let mut out = Vec::with_capacity(image.pixels().len() * positions.len());
    for &p in image.pixels() {
        for &b in &positions {
            out.push(p >> b & 1 == 1);
        }
    }
    out
}

pub fn extract_msc(image: &GrayImage, layout: BitPlaneLayout) -> Vec<bool> {
    extract_plane(image, layout.msc_mask)
}

pub fn extract_lsc(image: &GrayImage, layout: BitPlaneLayout) -> Vec<bool> {
    extract_plane(image, layout.lsc_mask)
}

/// Replaces exactly the LSC bits of every pixel with `bits`; MSC and unused
/// bits pass through untouched.
pub fn inject_lsc(image: &GrayImage, layout: BitPlaneLayout, bits: &[bool]) -> Result<GrayImage> {
    let positions: Vec<u8> = mask_positions(layout.lsc_mask).collect();
    let expected = image.pixels().len() * positions.len();
    if bits.len() != expected {
        return Err(Error::StreamLength {
            expected,
            got: bits.len(),
        });
    }
    let mut out = image.clone();
    let mut i = 0;
    for p in out.pixels_mut() {
        for &b in &positions {
            *p = *p & !(1 << b) | (bits[i] as u8) << b;
            i += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_layout_partitions_the_byte() {
        let l = BitPlaneLayout::DEFAULT;
        assert_eq!(l.msc_mask() & l.lsc_mask(), 0);
        assert_eq!(l.msc_mask() | l.lsc_mask() | l.unused_mask(), 0xFF);
        assert_eq!(l.unused_mask(), 0x01);
    }

    #[test]
    fn overlapping_masks_rejected() {
        assert!(BitPlaneLayout::new(0xF0, 0x18).is_err());
        assert!(BitPlaneLayout::new(0xF0, 0x07).is_ok());
    }

    #[test]
    fn msc_extraction_is_msb_first() {
        let img = GrayImage::new(1, 1, vec![0b1011_0110]).unwrap();
        let bits = extract_msc(&img, BitPlaneLayout::DEFAULT);
        assert_eq!(bits, vec![true, false, true, true]);
    }

    #[test]
    fn all_zero_image_gives_all_false_stream() {
        let img = GrayImage::filled(4, 4, 0);
        assert!(extract_msc(&img, BitPlaneLayout::DEFAULT)
            .iter()
            .all(|&b| !b));
    }

    #[test]
    fn stream_lengths_match_default_layout() {
        let img = GrayImage::filled(256, 256, 7);
        assert_eq!(extract_msc(&img, BitPlaneLayout::DEFAULT).len(), 262144);
        assert_eq!(extract_lsc(&img, BitPlaneLayout::DEFAULT).len(), 196608);
    }

    #[test]
    fn inject_is_mask_surgery() {
        let img = GrayImage::new(1, 1, vec![0b1011_0110]).unwrap();
        let out = inject_lsc(&img, BitPlaneLayout::DEFAULT, &[false, false, false]).unwrap();
        assert_eq!(out.pixels(), &[0b1011_0000]);
    }

    #[test]
    fn inject_extract_round_trip() {
        let img = GrayImage::new(2, 2, vec![0x00, 0xFF, 0x5A, 0xC3]).unwrap();
        let layout = BitPlaneLayout::DEFAULT;
        let lsc = extract_lsc(&img, layout);
        assert_eq!(inject_lsc(&img, layout, &lsc).unwrap(), img);
        let injected = inject_lsc(&img, layout, &vec![true; lsc.len()]).unwrap();
        assert_eq!(extract_lsc(&injected, layout), vec![true; lsc.len()]);
        assert_eq!(extract_msc(&injected, layout), extract_msc(&img, layout));
    }

    #[test]
    fn inject_rejects_length_mismatch() {
        let img = GrayImage::filled(2, 2, 0);
        assert!(inject_lsc(&img, BitPlaneLayout::DEFAULT, &[true; 11]).is_err());
    }

    #[test]
    fn lsc_change_bounded_by_mask_weight() {
        // Default layout 0x0E: worst case rewrite moves a pixel by 14 levels;
        // alternative layout 0x07 by 7.
        for (lsc_mask, bound) in [(0x0Eu8, 14u8), (0x07, 7)] {
            let layout = BitPlaneLayout::new(0xF0, lsc_mask).unwrap();
            let img = GrayImage::filled(16, 16, 0b1010_1010);
            let n = layout.lsc_capacity(img.pixels().len());
            for fill in [false, true] {
                let out = inject_lsc(&img, layout, &vec![fill; n]).unwrap();
                for (&a, &b) in img.pixels().iter().zip(out.pixels()) {
                    assert!(a.abs_diff(b) <= bound);
                }
            }
        }
    }
}
