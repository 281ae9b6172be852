//! Logistic-map keystreams, strategy derivation, and the chaotic-iterations
//! state machine.
//!
//! A strategy is a sequence of component indices in [1, N]. Each chaotic
//! iteration updates exactly the component named by the strategy, leaving
//! every other component untouched; with the vectorial negation as iterate
//! function this flips one bit per step, and replaying the same strategy
//! undoes the whole mix (parity argument: a bit ends up flipped iff its
//! index occurs an odd number of times).

use crate::error::{Error, Result};
use crate::image::Watermark;
use crate::key::SecretKey;

/// One logistic step. The evaluation order (mu * x) * (1 - x) is fixed:
/// every implementation of the key schedule must produce bit-identical
/// doubles, and f64 multiplication is not associative.
#[inline]
pub fn logistic_next(mu: f64, x: f64) -> f64 {
    (mu * x) * (1.0 - x)
}

/// Infinite bit source: one bit per logistic iterate, 1 iff the iterate is
/// at least 0.5. Burn-in iterates are consumed at construction.
pub struct Keystream {
    mu: f64,
    x: f64,
}

impl Keystream {
    pub fn new(key: &SecretKey) -> Self {
        let mut x = key.u0;
        for _ in 0..key.burn_in {
            x = logistic_next(key.mu, x);
        }
        Keystream { mu: key.mu, x }
    }

    #[inline]
    pub fn next_bit(&mut self) -> bool {
        self.x = logistic_next(self.mu, self.x);
        self.x >= 0.5
    }

    /// The raw iterate behind the most recent bit.
    pub fn last_iterate(&self) -> f64 {
        self.x
    }
}

pub fn keystream(key: &SecretKey, length: usize) -> Vec<bool> {
    let mut ks = Keystream::new(key);
    (0..length).map(|_| ks.next_bit()).collect()
}

/// Group width for strategies over [1, n]: ceil(log2 n), at least 1.
pub fn group_width(n: usize) -> usize {
    if n <= 1 {
        1
    } else {
        (n - 1).ilog2() as usize + 1
    }
}

/// Derives `count` strategy elements over [1, n].
///
/// Source bits are the keystream alone, or, in authenticated mode, the
/// keystream XORed with the carrier's MSC stream repeated cyclically. Bits
/// are consumed in big-endian groups of `group_width(n)`; each group value g
/// becomes the element (g mod n) + 1.
pub fn derive_strategy(
    key: &SecretKey,
    msc: Option<&[bool]>,
    n: usize,
    count: usize,
) -> Result<Vec<u32>> {
    let msc = match (key.authenticated, msc) {
        (true, None | Some([])) => return Err(Error::MissingMsc),
        (true, Some(m)) => Some(m),
        (false, _) => None,
    };
    let w = group_width(n);
    let mut ks = Keystream::new(key);
    let mut out = Vec::with_capacity(count);
    let mut bit_index = 0usize;
    for _ in 0..count {
        let mut g: u64 = 0;
        for _ in 0..w {
            let mut bit = ks.next_bit();
            if let Some(m) = msc {
                bit ^= m[bit_index % m.len()];
            }
            bit_index += 1;
            g = g << 1 | bit as u64;
        }
        out.push((g % n as u64) as u32 + 1);
    }
    Ok(out)
}

/// Boolean system state advanced one component at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChaoticState {
    x: Vec<bool>,
    step: u64,
}

impl ChaoticState {
    pub fn new(x: Vec<bool>) -> Self {
        ChaoticState { x, step: 0 }
    }

    pub fn bits(&self) -> &[bool] {
        &self.x
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.x
    }
}

/// One chaotic iteration: component s-1 (s is 1-based) takes its value from
/// f applied to the whole state; everything else is carried over.
pub fn chaotic_iterate(state: &mut ChaoticState, s: u32, f: impl Fn(&[bool]) -> Vec<bool>) {
    let i = s as usize - 1;
    let image = f(&state.x);
    state.x[i] = image[i];
    state.step += 1;
}

/// The iterate function f0: componentwise complement, an involution.
pub fn vectorial_negation(x: &[bool]) -> Vec<bool> {
    x.iter().map(|&b| !b).collect()
}

/// Runs chaotic iterations with f0 from the watermark as initial state.
///
/// f0 only ever negates the selected component, so the loop reduces to one
/// bit flip per strategy element; replaying the strategy unmixes.
pub fn mix_watermark(watermark: &Watermark, strategy: &[u32]) -> Result<Watermark> {
    let n = watermark.len();
    let mut bits = watermark.bits().to_vec();
    for &s in strategy {
        if s as usize > n || s == 0 {
            return Err(Error::InvalidKey(format!(
                "strategy element {s} outside [1, {n}]"
            )));
        }
        bits[s as usize - 1] ^= true;
    }
    Watermark::new(watermark.width(), watermark.height(), bits)
}
