//! Fixed 64-bit mixing generator (splitmix64) used wherever the toolkit
//! needs reproducible pseudo-randomness: the Gaussian attack and the
//! procedural test corpus. The constants are pinned so every build and
//! platform produces byte-identical outputs.

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Advances the state and returns the next mixed 64-bit value.
#[inline]
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform double in (0, 1]: 53 mantissa bits, shifted so 0 is excluded
/// (safe as the argument of ln).
#[inline]
pub fn unit_open_low(v: u64) -> f64 {
    ((v >> 11) + 1) as f64 / (1u64 << 53) as f64
}

/// Uniform double in [0, 1).
#[inline]
pub fn unit_closed_low(v: u64) -> f64 {
    (v >> 11) as f64 / (1u64 << 53) as f64
}
