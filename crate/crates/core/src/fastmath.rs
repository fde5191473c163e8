//! Branch-light `sin`/`cos` for the lattice hot loop.
//!
//! Cody–Waite reduction by π/2 with a split constant, then the fdlibm
//! minimax kernels on `[-π/4, π/4]`. Accurate to a couple of ulp for
//! `|x| < 2^20 π/2`, which covers every phase `2r̃` produced by lattices
//! that fit in memory-free enumeration; larger arguments fall back to libm.

const INV_PIO2: f64 = std::f64::consts::FRAC_2_PI;
const PIO2_1: f64 = 1.570_796_326_734_125_614_17;
const PIO2_2: f64 = 6.077_100_506_303_965_976_60e-11;
const PIO2_2T: f64 = 2.022_266_248_795_950_631_54e-21;

const S1: f64 = -1.666_666_666_666_663_243_48e-01;
const S2: f64 = 8.333_333_333_322_489_461_54e-03;
const S3: f64 = -1.984_126_982_985_794_931_09e-04;
const S4: f64 = 2.755_731_370_707_006_767_89e-06;
const S5: f64 = -2.505_076_025_340_686_341_62e-08;
const S6: f64 = 1.589_690_995_211_550_102_21e-10;

const C1: f64 = 4.166_666_666_666_660_190_37e-02;
const C2: f64 = -1.388_888_888_887_410_957_49e-03;
const C3: f64 = 2.480_158_728_947_672_941_35e-05;
const C4: f64 = -2.755_731_435_139_066_330_35e-07;
const C5: f64 = 2.087_572_321_298_174_827_97e-09;
const C6: f64 = -1.135_964_755_778_819_482_79e-11;

const REDUCTION_LIMIT: f64 = 1.647_099_3e6;
const ROUND_SHIFT: f64 = 6_755_399_441_055_744.0;

#[inline(always)]
fn kernel_sin(y: f64, yy: f64) -> f64 {
    let z = y * y;
    let v = z * y;
    let r = S2 + z * (S3 + z * (S4 + z * (S5 + z * S6)));
    y - ((z * (0.5 * yy - v * r) - yy) - v * S1)
}

#[inline(always)]
fn kernel_cos(y: f64, yy: f64) -> f64 {
    let z = y * y;
    let r = z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * C6)))));
    let hz = 0.5 * z;
    let w = 1.0 - hz;
    w + (((1.0 - w) - hz) + (z * r - y * yy))
}

/// Returns `(sin x, cos x)`.
#[inline(always)]
pub fn sin_cos(x: f64) -> (f64, f64) {
    if !(x.abs() < REDUCTION_LIMIT) {
        return x.sin_cos();
    }
    // Round-to-nearest via the 1.5·2^52 shift; the low mantissa bits hold k mod 4.
    let shifted = x * INV_PIO2 + ROUND_SHIFT;
    let quadrant = shifted.to_bits();
    let k = shifted - ROUND_SHIFT;
    // k*PIO2_1 and k*PIO2_2 are exact for |k| < 2^20.
    let r0 = x - k * PIO2_1;
    let w0 = k * PIO2_2;
    let r1 = r0 - w0;
    let w1 = k * PIO2_2T - ((r0 - r1) - w0);
    let y = r1 - w1;
    let yy = (r1 - y) - w1;
    let s = kernel_sin(y, yy);
    let c = kernel_cos(y, yy);
    // Branch-free quadrant fix-up: swap on odd k, then apply signs.
    let swap = 0u64.wrapping_sub(quadrant & 1);
    let (sb, cb) = (s.to_bits(), c.to_bits());
    let first = (sb & !swap) | (cb & swap);
    let second = (cb & !swap) | (sb & swap);
    let sin_sign = (quadrant & 2) << 62;
    let cos_sign = (quadrant.wrapping_add(1) & 2) << 62;
    (f64::from_bits(first ^ sin_sign), f64::from_bits(second ^ cos_sign))
}

/// Lane-wise [`sin_cos`] written as straight-line array code so it
/// vectorizes; results are bit-identical to the scalar routine.
#[inline(always)]
pub fn sin_cos_lanes<const N: usize>(x: &[f64; N]) -> ([f64; N], [f64; N]) {
    if x.iter().any(|v| !(v.abs() < REDUCTION_LIMIT)) {
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        for l in 0..N {
            (s[l], c[l]) = sin_cos(x[l]);
        }
        return (s, c);
    }
    let mut s = [0.0; N];
    let mut c = [0.0; N];
    for l in 0..N {
        let shifted = x[l] * INV_PIO2 + ROUND_SHIFT;
        let quadrant = shifted.to_bits();
        let k = shifted - ROUND_SHIFT;
        let r0 = x[l] - k * PIO2_1;
        let w0 = k * PIO2_2;
        let r1 = r0 - w0;
        let w1 = k * PIO2_2T - ((r0 - r1) - w0);
        let y = r1 - w1;
        let yy = (r1 - y) - w1;
        let ks = kernel_sin(y, yy);
        let kc = kernel_cos(y, yy);
        let swap = 0u64.wrapping_sub(quadrant & 1);
        let (sb, cb) = (ks.to_bits(), kc.to_bits());
        let first = (sb & !swap) | (cb & swap);
        let second = (cb & !swap) | (sb & swap);
        s[l] = f64::from_bits(first ^ ((quadrant & 2) << 62));
        c[l] = f64::from_bits(second ^ ((quadrant.wrapping_add(1) & 2) << 62));
    }
    (s, c)
}
