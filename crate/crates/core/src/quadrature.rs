//! Adaptive 15-point Gauss–Kronrod quadrature over finite and semi-infinite
//! intervals, for real- or complex-valued integrands.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{CpError, Result};
use crate::scalar::Real;

/// Values that can be integrated: a vector space over `T` with a magnitude.
pub trait Integrand<T>: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> T;
}

impl<T: Real> Integrand<T> for T {
    fn zero() -> Self {
        T::zero()
    }
    fn magnitude(&self) -> T {
        self.abs()
    }
}

impl<T: Real> Integrand<T> for Complex<T> {
    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn magnitude(&self) -> T {
        self.re.abs().max(self.im.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    /// Maximum number of subintervals kept at once.
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-10, rel: 1e-10, max_intervals: 2000 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Estimate<V, T> {
    pub value: V,
    pub error: T,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn kronrod_panel<T: Real, V: Integrand<T>>(f: &mut impl FnMut(T) -> V, a: T, b: T) -> (V, T) {
    let half = (b - a) * T::lit(0.5);
    let centre = (a + b) * T::lit(0.5);
    let fc = f(centre);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let pair = f(centre - dx) + f(centre + dx);
        kronrod = kronrod + pair * T::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[j / 2]);
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).magnitude();
    (value, error)
}

/// Integrates `f` over `[a, b]` by adaptive bisection of the worst panel.
pub fn integrate<T: Real, V: Integrand<T>>(
    mut f: impl FnMut(T) -> V,
    a: T,
    b: T,
    tol: Tolerance,
) -> Result<Estimate<V, T>> {
    let mut panels: Vec<(T, T, V, T)> = Vec::with_capacity(64);
    let (v, e) = kronrod_panel(&mut f, a, b);
    panels.push((a, b, v, e));
    let mut evaluations = 15;
    loop {
        let mut total = V::zero();
        let mut err = T::zero();
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            total = total + p.2;
            err = err + p.3;
            if p.3 > panels[worst].3 {
                worst = i;
            }
        }
        let target = T::lit(tol.abs).max(T::lit(tol.rel) * total.magnitude());
        let finite = total.magnitude().is_finite() && err.is_finite();
        if finite && err <= target {
            return Ok(Estimate { value: total, error: err, evaluations });
        }
        let (lo, hi, _, _) = panels[worst];
        let mid = (lo + hi) * T::lit(0.5);
        if !finite || panels.len() >= tol.max_intervals || mid <= lo || mid >= hi {
            return Err(CpError::QuadratureFailure {
                estimate: total.magnitude().as_f64(),
                error: err.as_f64(),
                evaluations,
            });
        }
        let left = kronrod_panel(&mut f, lo, mid);
        let right = kronrod_panel(&mut f, mid, hi);
        evaluations += 30;
        panels[worst] = (lo, mid, left.0, left.1);
        panels.push((mid, hi, right.0, right.1));
    }
}

/// Integrates `f` over `[a, ∞)` with `x = a + s (1 − t)/t`, `t ∈ (0, 1]`.
///
/// `scale` should be the length over which `f` varies near `a`.
pub fn integrate_to_infinity<T: Real, V: Integrand<T>>(
    mut f: impl FnMut(T) -> V,
    a: T,
    scale: T,
    tol: Tolerance,
) -> Result<Estimate<V, T>> {
    integrate(
        |t: T| {
            let x = a + scale * (T::one() - t) / t;
            f(x) * (scale / (t * t))
        },
        T::zero(),
        T::one(),
        tol,
    )
}

/// Nodes and weights of `n`-point Gauss–Laguerre quadrature for `∫₀^∞ e^{-x} f(x) dx`.
pub fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let nf = n as f64;
    // Returns (L_n(z), L_{n-1}(z)).
    let laguerre = |z: f64| {
        let (mut p1, mut p2) = (1.0, 0.0);
        for j in 0..n {
            let p3 = p2;
            p2 = p1;
            let jf = j as f64;
            p1 = ((2.0 * jf + 1.0 - z) * p2 - jf * p3) / (jf + 1.0);
        }
        (p1, p2)
    };
    let mut nodes: Vec<f64> = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut z = 0.0f64;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2])
            }
        };
        for _ in 0..100 {
            let (p1, p2) = laguerre(z);
            let dp = nf * (p1 - p2) / z;
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() <= 1e-16 * z {
                break;
            }
        }
        let (_, p2) = laguerre(z);
        nodes.push(z);
        weights.push(z / (nf * p2 * nf * p2));
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let est = integrate(|x: f64| x.powi(6) - 3.0 * x, 0.0, 2.0, Tolerance::default()).unwrap();
        assert!((est.value - (128.0 / 7.0 - 6.0)).abs() < 1e-13);
    }

    #[test]
    fn integrates_peaked_function() {
        let est = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, Tolerance::new(0.0, 1e-12)).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!(((est.value - exact) / exact).abs() < 1e-11);
    }

    #[test]
    fn semi_infinite_exponential() {
        let est = integrate_to_infinity(|x: f64| (-2.0 * x).exp(), 0.0, 0.5, Tolerance::new(0.0, 1e-13)).unwrap();
        assert!((est.value - 0.5).abs() < 1e-13);
    }

    #[test]
    fn complex_integrand() {
        let est = integrate(
            |x: f64| Complex::new(0.0, x).exp(),
            0.0,
            std::f64::consts::PI,
            Tolerance::new(1e-14, 0.0),
        )
        .unwrap();
        assert!((est.value - Complex::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn reports_failure_on_singularity() {
        let err = integrate(|x: f64| 1.0 / x, 0.0, 1.0, Tolerance { max_intervals: 50, ..Tolerance::default() });
        assert!(matches!(err, Err(CpError::QuadratureFailure { .. })));
    }

    #[test]
    fn laguerre_moments() {
        let (x, w) = gauss_laguerre(32);
        let mut fact = 1.0;
        for k in 0..40 {
            if k > 0 {
                fact *= k as f64;
            }
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            assert!(((s - fact) / fact).abs() < 1e-12, "k={k}: {s} vs {fact}");
        }
    }
}
