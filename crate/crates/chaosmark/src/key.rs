//! Private keys: logistic-map parameters plus iteration counts and the
//! authentication flag, with a plain-text file format.
//!
//! Key file format: UTF-8, one `name=value` per line, fields `mu`, `u0`
//! (full-precision decimals), `burn_in`, `mix_iters`, `authenticated`
//! (true/false). Unknown or duplicate names are rejected so a typo cannot
//! silently fall back to a default.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::textkv;

pub const MU_MIN_EXCLUSIVE: f64 = 3.57;
pub const MU_MAX: f64 = 4.0;

/// Seeds where the logistic orbit degenerates to a fixed point or a short
/// transient, so the keystream would be constant.
pub const FORBIDDEN_U0: [f64; 3] = [0.25, 0.5, 0.75];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecretKey {
    pub mu: f64,
    pub u0: f64,
    pub burn_in: u32,
    pub mix_iters: u32,
    pub authenticated: bool,
}

impl SecretKey {
    pub fn new(
        mu: f64,
        u0: f64,
        burn_in: u32,
        mix_iters: u32,
        authenticated: bool,
    ) -> Result<Self> {
        if !(mu > MU_MIN_EXCLUSIVE && mu <= MU_MAX) {
            return Err(Error::InvalidKey(format!(
                "mu must lie in ({MU_MIN_EXCLUSIVE}, {MU_MAX}], got {mu} (non-chaotic regime)"
            )));
        }
        if !(u0 > 0.0 && u0 < 1.0) {
            return Err(Error::InvalidKey(format!(
                "u0 must lie strictly inside (0, 1), got {u0}"
            )));
        }
        if FORBIDDEN_U0.contains(&u0) {
            return Err(Error::InvalidKey(format!(
                "u0 = {u0} is a degenerate seed of the logistic map"
            )));
        }
        if mix_iters == 0 {
            return Err(Error::InvalidKey("mix_iters must be at least 1".into()));
        }
        Ok(SecretKey {
            mu,
            u0,
            burn_in,
            mix_iters,
            authenticated,
        })
    }

    /// Default mixing depth for an N-bit watermark: two expected visits per
    /// bit give thorough diffusion at trivial cost.
    pub fn default_mix_iters(watermark_bits: usize) -> u32 {
        (watermark_bits as u32).saturating_mul(2).max(1)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let entries = textkv::parse_flat(&text, path)?;

        let mut mu = None;
        let mut u0 = None;
        let mut burn_in = None;
        let mut mix_iters = None;
        let mut authenticated = None;

        fn set<T>(slot: &mut Option<T>, value: T, name: &str) -> Result<()> {
            if slot.is_some() {
                return Err(Error::InvalidKey(format!("duplicate field {name}")));
            }
            *slot = Some(value);
            Ok(())
        }

        for entry in &entries {
            let v = entry.value.as_str();
            match entry.key.as_str() {
                "mu" => set(&mut mu, parse_f64(v, "mu")?, "mu")?,
                "u0" => set(&mut u0, parse_f64(v, "u0")?, "u0")?,
                "burn_in" => set(&mut burn_in, parse_u32(v, "burn_in")?, "burn_in")?,
                "mix_iters" => set(&mut mix_iters, parse_u32(v, "mix_iters")?, "mix_iters")?,
                "authenticated" => set(
                    &mut authenticated,
                    parse_bool(v, "authenticated")?,
                    "authenticated",
                )?,
                other => {
                    return Err(Error::InvalidKey(format!(
                        "unknown field {other:?} in {}",
                        path.display()
                    )))
                }
            }
        }

        let missing = |name: &str| Error::InvalidKey(format!("missing field {name}"));
        SecretKey::new(
            mu.ok_or_else(|| missing("mu"))?,
            u0.ok_or_else(|| missing("u0"))?,
            burn_in.ok_or_else(|| missing("burn_in"))?,
            mix_iters.ok_or_else(|| missing("mix_iters"))?,
            authenticated.ok_or_else(|| missing("authenticated"))?,
        )
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_file_string()).map_err(|e| Error::io(path, e))
    }

    pub fn to_file_string(&self) -> String {
        // {:?} prints the shortest decimal that parses back to the same f64,
        // so saved keys reload bit-identically.
        format!(
            "mu={:?}\nu0={:?}\nburn_in={}\nmix_iters={}\nauthenticated={}\n",
            self.mu, self.u0, self.burn_in, self.mix_iters, self.authenticated
        )
    }
}

fn parse_f64(value: &str, name: &str) -> Result<f64> {
    value
        .parse()
        .map_err(|_| Error::InvalidKey(format!("{name}: not a number: {value:?}")))
}

fn parse_u32(value: &str, name: &str) -> Result<u32> {
    value
        .parse()
        .map_err(|_| Error::InvalidKey(format!("{name}: not a non-negative integer: {value:?}")))
}

fn parse_bool(value: &str, name: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::InvalidKey(format!(
            "{name}: expected true or false, got {value:?}"
        ))),
    }
}
