//! Chaos-driven fragile watermarking for 8-bit grayscale images.
//!
//! A secret key seeds a logistic-map keystream. The keystream drives two
//! things: a chaotic mixing pass over the watermark bits, and a strategy
//! sequence that scatters those bits across the carrier's least significant
//! category. Extraction reverses the walk, either blindly (substitute mode)
//! or against the original image (negate mode), and similarity between the
//! recovered and reference watermark measures how much of the mark survived
//! whatever happened to the image in between.
//!
//! The crate splits into:
//!
//! * [`pnm`]: bit-exact PGM/PBM readers and writers.
//! * [`bitplane`]: significance masks and bit-level image accessors.
//! * [`chaos`]: the logistic keystream, strategy derivation, and the
//!   chaotic mixing iteration.
//! * [`embed`]: position resolution plus the embed and extract pipelines.
//! * [`attack`]: deterministic zeroing, rotation, JPEG-style recompression
//!   and Gaussian-noise degradations.
//! * [`metrics`]: similarity and PSNR reporting.
//! * [`corpus`]: generators for the bundled sample carrier and logo.
//!
//! The heavier attacks run on rayon worker threads when the default
//! `parallel` feature is enabled; each has a `_seq` twin that computes the
//! identical result on one thread.

pub mod attack;
pub mod bitplane;
pub mod chaos;
pub mod corpus;
pub mod embed;
pub mod error;
pub mod image;
pub mod key;
pub mod metrics;
pub mod pnm;
pub mod rng;
pub mod textkv;

pub use attack::{Anchor, AttackSpec};
pub use bitplane::BitPlaneLayout;
pub use embed::{embed, extract, CollisionPolicy, EmbedConfig, EmbedMode};
pub use error::{Error, Result};
pub use image::{GrayImage, Watermark};
pub use key::SecretKey;
pub use metrics::{psnr, similarity, SimilarityReport};
