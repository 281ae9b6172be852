//! Deterministic attacks applied to watermarked images before extraction.
//!
//! Every attack preserves dimensions and intensity range, and is a pure
//! function of its inputs (the Gaussian attack includes its seed), so
//! evaluation runs reproduce byte-identical images.

mod jpeg;
mod noise;
mod rotation;
mod zeroing;

pub use jpeg::{attack_jpeg, attack_jpeg_seq, dct2_8x8, idct2_8x8};
pub use noise::{attack_gaussian, attack_gaussian_seq};
pub use rotation::{attack_rotation, attack_rotation_seq};
pub use zeroing::attack_zeroing;

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Anchor {
    #[default]
    Center,
    TopLeft,
}

impl Anchor {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "center" => Ok(Anchor::Center),
            "top-left" => Ok(Anchor::TopLeft),
            _ => Err(Error::InvalidAttack(format!(
                "unknown anchor {s:?} (expected center or top-left)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttackSpec {
    Zeroing { side: u32, anchor: Anchor },
    Rotation { angle: f64 },
    Jpeg { ratio: f64 },
    Gaussian { sigma: f64, seed: u64 },
}

impl AttackSpec {
    pub fn apply(&self, img: &GrayImage) -> Result<GrayImage> {
        match *self {
            AttackSpec::Zeroing { side, anchor } => attack_zeroing(img, side, anchor),
            AttackSpec::Rotation { angle } => Ok(attack_rotation(img, angle)),
            AttackSpec::Jpeg { ratio } => attack_jpeg(img, ratio),
            AttackSpec::Gaussian { sigma, seed } => attack_gaussian(img, sigma, seed),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AttackSpec::Zeroing { .. } => "zeroing",
            AttackSpec::Rotation { .. } => "rotation",
            AttackSpec::Jpeg { .. } => "jpeg",
            AttackSpec::Gaussian { .. } => "gaussian",
        }
    }

    /// The attack strength as written in reports: side length, angle,
    /// compression ratio, or standard deviation.
    pub fn parameter(&self) -> f64 {
        match *self {
            AttackSpec::Zeroing { side, .. } => side as f64,
            AttackSpec::Rotation { angle } => angle,
            AttackSpec::Jpeg { ratio } => ratio,
            AttackSpec::Gaussian { sigma, .. } => sigma,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            AttackSpec::Gaussian { seed, .. } => Some(seed),
            _ => None,
        }
    }
}
