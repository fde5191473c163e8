//! Piecewise Chebyshev interpolant of a smooth function of `r²`.
//!
//! Every binade `[2^e, 2^{e+1})` is cut into eight equal panels; the panel of
//! an argument is read off its exponent and leading mantissa bits, so lookup
//! needs no logarithm. For functions analytic away from `r² = 0` each panel
//! sits at least eight widths from the singularity and degree 14 reaches
//! working precision.

use crate::scalar::Real;

const PANELS_PER_BINADE: usize = 8;
const NODES: usize = 15;

#[derive(Debug, Clone)]
pub(crate) struct RadialTable<T> {
    first_binade: i32,
    coeffs: Vec<[T; NODES]>,
    /// Centre and inverse half-width of each panel.
    frames: Vec<(T, T)>,
}

/// `(binade, panel)` of a positive normal number.
#[inline(always)]
fn locate<T: Real>(x: T) -> (i32, usize) {
    let (mantissa, exponent, _) = x.integer_decode();
    let bits = 64 - mantissa.leading_zeros() as i32;
    let binade = exponent as i32 + bits - 1;
    let panel = ((mantissa >> (bits - 4)) & 7) as usize;
    (binade, panel)
}

/// Centre and half-width of `panel` in `binade`.
fn bounds<T: Real>(binade: i32, panel: usize) -> (T, T) {
    let base = T::lit(2.0).powi(binade);
    let width = base / T::lit(PANELS_PER_BINADE as f64);
    let lo = base + width * T::lit(panel as f64);
    let half = width * T::lit(0.5);
    (lo + half, half)
}

impl<T: Real> RadialTable<T> {
    /// Interpolates `f` on `[lo, hi]` (`0 < lo ≤ hi`).
    pub(crate) fn new(f: impl Fn(T) -> T, lo: T, hi: T) -> Self {
        let (b0, _) = locate(lo);
        let (b1, _) = locate(hi);
        let n = T::lit(NODES as f64);
        let nodes: Vec<T> =
            (0..NODES).map(|k| (T::PI() * (T::lit(k as f64) + T::lit(0.5)) / n).cos()).collect();
        let mut coeffs = Vec::with_capacity((b1 - b0 + 1) as usize * PANELS_PER_BINADE);
        let mut frames = Vec::with_capacity(coeffs.capacity());
        for binade in b0..=b1 {
            for panel in 0..PANELS_PER_BINADE {
                let (mid, half) = bounds::<T>(binade, panel);
                frames.push((mid, T::one() / half));
                let values: Vec<T> = nodes.iter().map(|&x| f(mid + half * x)).collect();
                let mut c = [T::zero(); NODES];
                for (j, cj) in c.iter_mut().enumerate() {
                    let mut acc = T::zero();
                    for (k, v) in values.iter().enumerate() {
                        let angle = T::PI() * T::lit(j as f64) * (T::lit(k as f64) + T::lit(0.5)) / n;
                        acc = acc + *v * angle.cos();
                    }
                    *cj = acc * T::lit(2.0) / n;
                }
                c[0] = c[0] * T::lit(0.5);
                coeffs.push(c);
            }
        }
        Self { first_binade: b0, coeffs, frames }
    }

    /// Interpolated value; `x` must lie in the range given at construction.
    #[inline(always)]
    pub(crate) fn eval(&self, x: T) -> T {
        self.eval_lanes(&[x])[0]
    }

    #[inline(always)]
    fn index(&self, x: T) -> usize {
        let (binade, panel) = locate(x);
        (binade - self.first_binade) as usize * PANELS_PER_BINADE + panel
    }

    /// Lane-wise [`eval`](Self::eval); the Clenshaw recurrences of the lanes
    /// are independent and interleave.
    #[inline(always)]
    pub(crate) fn eval_lanes<const N: usize>(&self, x: &[T; N]) -> [T; N] {
        let idx: [usize; N] = std::array::from_fn(|l| self.index(x[l]));
        let t: [T; N] = std::array::from_fn(|l| {
            let (mid, inv_half) = self.frames[idx[l]];
            (x[l] - mid) * inv_half
        });
        let mut b1 = [T::zero(); N];
        let mut b2 = [T::zero(); N];
        for k in (1..NODES).rev() {
            for l in 0..N {
                let b0 = self.coeffs[idx[l]][k] + (t[l] + t[l]) * b1[l] - b2[l];
                b2[l] = b1[l];
                b1[l] = b0;
            }
        }
        std::array::from_fn(|l| self.coeffs[idx[l]][0] + t[l] * b1[l] - b2[l])
    }
}
