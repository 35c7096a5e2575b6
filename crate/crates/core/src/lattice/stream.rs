//! Counter-based update field.
//!
//! Every bit is a pure function of `(seed, trial, lane, row, site)`: a block of
//! 64 consecutive sites is produced by chaining the SplitMix64 finalizer over
//! the key words. No generator state exists, so any window of any step can be
//! regenerated in any order and from any thread.

use serde::{Deserialize, Serialize};

use super::{Arrow, BitPlane, UpdateRow};

/// Independent sub-fields of one stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lane {
    /// The arrows `U_{i,n}`; the row index is the time step.
    Arrows,
    /// Random initial conditions; rows index separate draws (occupancy, colors).
    Init,
}

impl Lane {
    fn key(self) -> u64 {
        match self {
            Lane::Arrows => 0x243F_6A88_85A3_08D3,
            Lane::Init => 0x1319_8A2E_0370_7344,
        }
    }
}

#[inline]
fn splitmix(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UpdateStream {
    pub seed: u64,
    pub trial: u64,
}

impl UpdateStream {
    pub fn new(seed: u64, trial: u64) -> Self {
        Self { seed, trial }
    }

    pub fn with_trial(self, trial: u64) -> Self {
        Self { trial, ..self }
    }

    /// 64 fair bits for sites `64 * block .. 64 * block + 63`.
    #[inline]
    pub fn block(&self, lane: Lane, row: u64, block: i64) -> u64 {
        let mut h = splitmix(self.seed ^ lane.key());
        h = splitmix(h ^ self.trial);
        h = splitmix(h ^ row);
        splitmix(h ^ block as u64)
    }

    #[inline]
    pub fn bit(&self, lane: Lane, row: u64, site: i64) -> bool {
        let word = self.block(lane, row, site.div_euclid(64));
        (word >> site.rem_euclid(64)) & 1 == 1
    }

    /// Arrow at time step `step` and site `site`.
    pub fn arrow_at(&self, step: u64, site: i64) -> Arrow {
        Arrow::from_up(self.bit(Lane::Arrows, step, site))
    }

    /// Bits for sites `[offset, offset + len)` of one lane row, assembled word-wise.
    pub fn bits(&self, lane: Lane, row: u64, offset: i64, len: usize) -> BitPlane {
        let first = offset.div_euclid(64);
        let shift = offset.rem_euclid(64) as u32;
        let words = (0..len.div_ceil(64) as i64)
            .map(|k| {
                let lo = self.block(lane, row, first + k);
                if shift == 0 {
                    lo
                } else {
                    let hi = self.block(lane, row, first + k + 1);
                    (lo >> shift) | (hi << (64 - shift))
                }
            })
            .collect();
        BitPlane::from_words(words, len)
    }

    pub fn row(&self, step: u64, offset: i64, len: usize) -> UpdateRow {
        UpdateRow::new(offset, self.bits(Lane::Arrows, step, offset, len))
    }

    /// Uniform draw in `[0, 1)` with 53 bits of resolution, one per site.
    pub fn uniform(&self, lane: Lane, row: u64, site: i64) -> f64 {
        // Keyed apart from `block` so per-site floats never reuse a bit word.
        let h = splitmix(self.block(lane, row ^ 0x8000_0000_0000_0000, site));
        (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
