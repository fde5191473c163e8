//! `f64` resonant octant loop, vectorized over fixed-width lanes.
//!
//! The arithmetic is plain IEEE (no fused operations), so the AVX2 build
//! selected at run time produces the same bits as the baseline build.

use crate::compensated::{CompensatedSum, LaneSum};
use crate::fastmath::sin_cos_lanes;

const LANES: usize = 16;

#[derive(Debug, Clone, Copy)]
pub(super) struct OctantShell {
    pub a2: f64,
    pub z2: f64,
    pub n: u64,
    /// Parallel dipoles along the normal; otherwise the orthogonal pair.
    pub parallel: bool,
}

#[inline(always)]
fn chunk(shell: &OctantShell, j0: u64) -> [f64; LANES] {
    let OctantShell { a2, z2, n, parallel } = *shell;
    let mut rho2 = [0.0; LANES];
    let mut r2 = [0.0; LANES];
    let mut r = [0.0; LANES];
    let mut phase = [0.0; LANES];
    for l in 0..LANES {
        let j = j0 + l as u64;
        rho2[l] = a2 * ((n * n + j * j) as f64);
        r2[l] = rho2[l] + z2;
        r[l] = r2[l].sqrt();
        phase[l] = r[l] + r[l];
    }
    let (s, c) = sin_cos_lanes(&phase);
    let mut out = [0.0; LANES];
    for l in 0..LANES {
        let inv = 1.0 / r2[l];
        let (br, bi) = if parallel {
            let zq = z2 * inv;
            (r2[l] - 1.0 + (3.0 - r2[l]) * zq, r[l] * (1.0 - 3.0 * zq))
        } else {
            (3.0 - r2[l], -3.0 * r[l])
        };
        let re = c[l] * (br * br - bi * bi) - (s[l] + s[l]) * br * bi;
        let radial = re * inv * inv * inv;
        out[l] = if parallel { radial } else { radial * z2 * rho2[l] / (2.0 * r2[l] * r2[l]) };
    }
    out
}

#[inline(always)]
fn interior_body(shell: &OctantShell, term: impl Fn(u64) -> f64) -> CompensatedSum<f64> {
    let n = shell.n;
    let mut lanes = LaneSum::<f64, LANES>::default();
    let mut j = 1;
    while j + (LANES as u64) <= n {
        lanes.add_chunk(&chunk(shell, j));
        j += LANES as u64;
    }
    let mut acc = lanes.finish();
    while j < n {
        acc.add(term(j));
        j += 1;
    }
    acc
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn interior_avx2(shell: &OctantShell, term: &dyn Fn(u64) -> f64) -> CompensatedSum<f64> {
    interior_body(shell, term)
}

/// `Σ_{0<j<n}` of the octant term; `term` evaluates single sites for the tail.
pub(super) fn octant_interior(shell: &OctantShell, term: &dyn Fn(u64) -> f64) -> CompensatedSum<f64> {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the required CPU feature was detected above.
            return unsafe { interior_avx2(shell, term) };
        }
    }
    interior_body(shell, term)
}
