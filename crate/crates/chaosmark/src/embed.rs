//! Watermark embedding and blind extraction.
//!
//! Substitute mode mixes the watermark by chaotic iterations, then writes
//! mixed bit k into the LSC position resolved from U^k. Negate mode flips
//! one LSC per step instead, which makes a second embedding with the same
//! key restore the carrier exactly. Extraction regenerates the strategy and
//! the U-sequence from the key alone (and, in authenticated mode, from the
//! MSCs of the watermarked image, which embedding never touches), so no
//! original is needed in substitute mode.

use crate::bitplane::{extract_lsc, extract_msc, inject_lsc, BitPlaneLayout};
use crate::chaos::{derive_strategy, mix_watermark};
use crate::error::{Error, Result};
use crate::image::{GrayImage, Watermark};
use crate::key::SecretKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmbedMode {
    #[default]
    Substitute,
    Negate,
}

/// What to do when two U values resolve to the same LSC position. The raw
/// recurrence can repeat; overwrite keeps the later write (and loses the
/// earlier bit), probe walks forward to the next free position so every
/// watermark bit survives and extraction can replay the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CollisionPolicy {
    #[default]
    Probe,
    Overwrite,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EmbedConfig {
    pub mode: EmbedMode,
    pub layout: BitPlaneLayout,
    pub collision: CollisionPolicy,
}

/// U-sequence over LSC indices: U^0 = S^0 mod m, then
/// U^(n+1) = (S^(n+1) + 2 U^n + n) mod m, in exact integer arithmetic.
pub fn u_sequence(strategy: &[u32], m: usize, count: usize) -> Result<Vec<usize>> {
    if strategy.len() < count {
        return Err(Error::StrategyTooShort {
            needed: count,
            got: strategy.len(),
        });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let m = m as u64;
    let mut out = Vec::with_capacity(count);
    let mut u = strategy[0] as u64 % m;
    out.push(u as usize);
    for (n, &s) in strategy[1..count].iter().enumerate() {
        u = (s as u64 + 2 * u + n as u64) % m;
        out.push(u as usize);
    }
    Ok(out)
}

/// Resolves each raw U value to the LSC position actually written, in
/// embedding order. Probe takes the first free slot at or cyclically after
/// u; overwrite passes u through unchanged.
pub fn resolve_positions(us: &[usize], m: usize, policy: CollisionPolicy) -> Result<Vec<usize>> {
    match policy {
        CollisionPolicy::Overwrite => Ok(us.to_vec()),
        CollisionPolicy::Probe => {
            if us.len() > m {
                return Err(Error::ProbeExhausted { m });
            }
            let mut used = vec![false; m];
            let mut out = Vec::with_capacity(us.len());
            for &u in us {
                let mut j = u;
                while used[j] {
                    j = (j + 1) % m;
                }
                used[j] = true;
                out.push(j);
            }
            Ok(out)
        }
    }
}

/// Strategy elements consumed by one embed or extract: the mix needs
/// mix_iters, the U-sequence needs one per watermark bit, and both read the
/// same stream from the start.
fn strategy_len(key: &SecretKey, n: usize) -> usize {
    (key.mix_iters as usize).max(n)
}

fn key_streams(
    key: &SecretKey,
    msc_source: &GrayImage,
    layout: BitPlaneLayout,
    n: usize,
) -> Result<Vec<u32>> {
    let msc;
    let msc_ref = if key.authenticated {
        msc = extract_msc(msc_source, layout);
        Some(msc.as_slice())
    } else {
        None
    };
    derive_strategy(key, msc_ref, n, strategy_len(key, n))
}

pub fn embed(
    carrier: &GrayImage,
    watermark: &Watermark,
    key: &SecretKey,
    config: &EmbedConfig,
) -> Result<GrayImage> {
    let n = watermark.len();
    let mut lsc = extract_lsc(carrier, config.layout);
    let m = lsc.len();
    if n > m {
        return Err(Error::Capacity {
            needed: n,
            available: m,
        });
    }
    let strategy = key_streams(key, carrier, config.layout, n)?;
    let us = u_sequence(&strategy, m, n)?;
    let positions = resolve_positions(&us, m, config.collision)?;
    match config.mode {
        EmbedMode::Substitute => {
            let mixed = mix_watermark(watermark, &strategy[..key.mix_iters as usize])?;
            for (k, &p) in positions.iter().enumerate() {
                lsc[p] = mixed.bits()[k];
            }
        }
        EmbedMode::Negate => {
            for &p in &positions {
                lsc[p] ^= true;
            }
        }
    }
    inject_lsc(carrier, config.layout, &lsc)
}

pub fn extract(
    watermarked: &GrayImage,
    key: &SecretKey,
    config: &EmbedConfig,
    dims: (u32, u32),
    original: Option<&GrayImage>,
) -> Result<Watermark> {
    let n = dims.0 as usize * dims.1 as usize;
    let lsc = extract_lsc(watermarked, config.layout);
    let m = lsc.len();
    if n > m {
        return Err(Error::Capacity {
            needed: n,
            available: m,
        });
    }
    let strategy = key_streams(key, watermarked, config.layout, n)?;
    let us = u_sequence(&strategy, m, n)?;
    let positions = resolve_positions(&us, m, config.collision)?;
    match config.mode {
        EmbedMode::Substitute => {
            let mixed: Vec<bool> = positions.iter().map(|&p| lsc[p]).collect();
            let mixed = Watermark::new(dims.0, dims.1, mixed)?;
            mix_watermark(&mixed, &strategy[..key.mix_iters as usize])
        }
        EmbedMode::Negate => {
            let original = original.ok_or(Error::MissingOriginal)?;
            original.same_dims(watermarked)?;
            let orig_lsc = extract_lsc(original, config.layout);
            let bits: Vec<bool> = positions.iter().map(|&p| orig_lsc[p] ^ lsc[p]).collect();
            Watermark::new(dims.0, dims.1, bits)
        }
    }
}
