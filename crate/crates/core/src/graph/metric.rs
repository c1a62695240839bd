use serde::Serialize;

use super::{canonical_code, RootedBall};
use crate::error::{GlimError, Result};

/// Distance between two rooted objects observed through balls of radius
/// `0..=r_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootedDistance {
    /// `2^-r`, `r` the largest radius with isomorphic balls.
    Exact { r: usize },
    /// All supplied radii agree; the true distance is at most `2^-r_max`.
    AtMost { r_max: usize },
}

impl RootedDistance {
    /// Exact value, or the upper bound when truncated.
    pub fn value(self) -> f64 {
        let r = match self {
            RootedDistance::Exact { r } => r,
            RootedDistance::AtMost { r_max } => r_max,
        };
        0.5f64.powi(r as i32)
    }

    pub fn is_truncated(self) -> bool {
        matches!(self, RootedDistance::AtMost { .. })
    }
}

fn check_radii(balls: &[RootedBall], r_max: usize) -> Result<()> {
    for expected in 0..=r_max {
        match balls.get(expected) {
            Some(b) if b.radius() == expected => {}
            Some(b) => return Err(GlimError::RadiusGap { expected, found: b.radius() }),
            None => return Err(GlimError::RadiusGap { expected, found: balls.len() }),
        }
    }
    Ok(())
}

/// The `2^-r` ultrametric on rooted (labelled) graphs, truncated at `r_max`.
pub fn rooted_distance(a: &[RootedBall], b: &[RootedBall], r_max: usize) -> Result<RootedDistance> {
    check_radii(a, r_max)?;
    check_radii(b, r_max)?;
    if a[0].is_labelled() != b[0].is_labelled() {
        return Err(GlimError::MixedPayload);
    }
    for r in 0..=r_max {
        if canonical_code(&a[r]) != canonical_code(&b[r]) {
            // radius 0 balls always agree, so r >= 1 here
            return Ok(RootedDistance::Exact { r: r.saturating_sub(1) });
        }
    }
    Ok(RootedDistance::AtMost { r_max })
}
