//! Power-law exponents from sampled curves.

use crate::error::{CpError, Result};
use crate::scalar::Real;

/// Minimum number of points (or peaks) behind a fit.
pub const MIN_POINTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport<T> {
    /// Fitted exponent of `z̃`.
    pub slope: T,
    /// `ln` of the prefactor.
    pub intercept: T,
    pub r_squared: T,
    pub window: (T, T),
    pub points: usize,
}

fn in_window<T: Real>(z: T, window: (T, T)) -> bool {
    z >= window.0 && z <= window.1
}

/// Least squares on `(ln z̃, ln |value|)` for the points inside `window`.
///
/// Logarithms are taken relative to the first point, so rescaling all
/// values by a power of two leaves the slope bit-identical.
pub fn fit_power_law<T: Real>(points: &[(T, T)], window: (T, T)) -> Result<FitReport<T>> {
    let inside: Vec<(T, T)> = points.iter().copied().filter(|&(z, _)| in_window(z, window)).collect();
    if inside.len() < MIN_POINTS {
        return Err(CpError::InsufficientPoints { needed: MIN_POINTS, got: inside.len() });
    }
    if let Some(&(z, _)) = inside.iter().find(|&&(_, v)| v == T::zero() || !v.is_finite()) {
        return Err(CpError::ZeroValue { z: z.as_f64() });
    }
    let (z0, v0) = (inside[0].0, inside[0].1.abs());
    let xs: Vec<T> = inside.iter().map(|&(z, _)| (z / z0).ln()).collect();
    let ys: Vec<T> = inside.iter().map(|&(_, v)| (v.abs() / v0).ln()).collect();
    let n = T::from_int(inside.len() as i64);
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(&ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    if sxx == T::zero() {
        return Err(CpError::InsufficientPoints { needed: MIN_POINTS, got: 1 });
    }
    let slope = sxy / sxx;
    let r_squared = if syy == T::zero() { T::one() } else { (sxy * sxy / (sxx * syy)).min(T::one()).max(T::zero()) };
    let intercept = v0.ln() - slope * z0.ln() + (my - slope * mx);
    Ok(FitReport { slope, intercept, r_squared, window, points: inside.len() })
}

/// Local maxima of `|value|` inside `window`, refined by the parabola
/// through each three-point neighbourhood.
pub fn peaks<T: Real>(points: &[(T, T)], window: (T, T)) -> Vec<(T, T)> {
    let mut out = Vec::new();
    for w in points.windows(3) {
        let (z1, v1) = (w[0].0, w[0].1.abs());
        let (z2, v2) = (w[1].0, w[1].1.abs());
        let (z3, v3) = (w[2].0, w[2].1.abs());
        if !(v2 > v1 && v2 >= v3) || !in_window(z2, window) {
            continue;
        }
        // vertex of the interpolating parabola
        let d1 = (v2 - v1) / (z2 - z1);
        let d2 = (v3 - v2) / (z3 - z2);
        let curv = (d2 - d1) / (z3 - z1);
        let mut peak = (z2, v2);
        if curv < T::zero() {
            let zs = (z1 + z2) * T::lit(0.5) - d1 / (curv + curv);
            if zs > z1 && zs < z3 {
                let vs = v2 + d1 * (zs - z2) + curv * (zs - z1) * (zs - z2);
                if vs >= v2 {
                    peak = (zs, vs);
                }
            }
        }
        out.push(peak);
    }
    out
}

/// Power law through the peaks of an oscillating curve.
pub fn envelope_fit<T: Real>(points: &[(T, T)], window: (T, T)) -> Result<FitReport<T>> {
    let found = peaks(points, window);
    if found.len() < MIN_POINTS {
        return Err(CpError::TooFewPeaks { needed: MIN_POINTS, got: found.len() });
    }
    let mut report = fit_power_law(&found, window)?;
    report.points = found.len();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
    }

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = grid(0.1, 1.0, 40).into_iter().map(|z| (z, 7.0 * z.powi(-4))).collect();
        let f = fit_power_law(&pts, (0.1, 1.0)).unwrap();
        assert!((f.slope + 4.0).abs() < 1e-12);
        assert!((f.intercept - 7f64.ln()).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oscillating_envelope() {
        let zs: Vec<f64> = (0..=4000).map(|i| 5.0 + 25.0 * i as f64 / 4000.0).collect();
        let pts: Vec<(f64, f64)> = zs.iter().map(|&z| (z, (2.0 * z).sin().abs() / z.powi(3))).collect();
        let f = envelope_fit(&pts, (5.0, 30.0)).unwrap();
        assert!((f.slope + 3.0).abs() < 0.05, "{}", f.slope);
        // coarse sampling at 16 points per period still resolves the envelope
        let zs: Vec<f64> = (0..=128).map(|i| 5.0 + std::f64::consts::PI / 16.0 * i as f64).collect();
        let pts: Vec<(f64, f64)> = zs.iter().map(|&z| (z, (2.0 * z).sin() / z.powi(3))).collect();
        let f = envelope_fit(&pts, (5.0, 30.0)).unwrap();
        assert!((f.slope + 3.0).abs() < 0.05, "{}", f.slope);
    }

    #[test]
    fn errors() {
        let pts = [(1.0, 1.0), (2.0, 2.0), (3.0, 3.0), (4.0, 4.0)];
        assert_eq!(fit_power_law(&pts, (0.0, 10.0)), Err(CpError::InsufficientPoints { needed: 5, got: 4 }));
        let pts = [(1.0, 1.0), (2.0, 2.0), (3.0, 0.0), (4.0, 4.0), (5.0, 5.0)];
        assert_eq!(fit_power_law(&pts, (0.0, 10.0)), Err(CpError::ZeroValue { z: 3.0 }));
        let pts: Vec<(f64, f64)> = grid(1.0, 10.0, 50).into_iter().map(|z| (z, z.powi(-2))).collect();
        assert!(matches!(envelope_fit(&pts, (1.0, 10.0)), Err(CpError::TooFewPeaks { got: 0, .. })));
    }

    #[test]
    fn window_selects_points() {
        let pts: Vec<(f64, f64)> = grid(0.01, 100.0, 81)
            .into_iter()
            .map(|z| (z, if z < 1.0 { z.powi(-6) } else { z.powi(-3) }))
            .collect();
        let f = fit_power_law(&pts, (0.01, 0.9)).unwrap();
        assert!((f.slope + 6.0).abs() < 1e-12);
        let f = fit_power_law(&pts, (1.0, 100.0)).unwrap();
        assert!((f.slope + 3.0).abs() < 1e-12);
        assert_eq!(f.window, (1.0, 100.0));
    }

    proptest! {
        #[test]
        fn scale_equivariance(k in -20i32..20, e in -8.0f64..2.0, c in 0.1f64..50.0) {
            let pts: Vec<(f64, f64)> = grid(0.2, 7.0, 23).into_iter().map(|z| (z, 3.0 * z.powf(e) * (1.0 + 0.1 * z.sin()))).collect();
            let base = fit_power_law(&pts, (0.0, 10.0)).unwrap();
            let two = 2f64.powi(k);
            let scaled: Vec<(f64, f64)> = pts.iter().map(|&(z, v)| (z, v * two)).collect();
            let f = fit_power_law(&scaled, (0.0, 10.0)).unwrap();
            prop_assert_eq!(f.slope.to_bits(), base.slope.to_bits());
            prop_assert!((f.intercept - base.intercept - two.ln()).abs() < 1e-12);
            let scaled: Vec<(f64, f64)> = pts.iter().map(|&(z, v)| (z, v * c)).collect();
            let f = fit_power_law(&scaled, (0.0, 10.0)).unwrap();
            prop_assert!((f.slope - base.slope).abs() < 1e-13);
            prop_assert!((f.intercept - base.intercept - c.ln()).abs() < 1e-12);
            prop_assert!(f.r_squared >= 0.0 && f.r_squared <= 1.0);
        }

        #[test]
        fn window_monotonicity(e in -8.0f64..2.0, lo in 0.0f64..0.4, hi in 0.6f64..1.0) {
            let zs = grid(0.1, 10.0, 60);
            let pts: Vec<(f64, f64)> = zs.iter().map(|&z| (z, 5.0 * z.powf(e))).collect();
            let full = fit_power_law(&pts, (0.1, 10.0)).unwrap();
            let wlo = 0.1 * 100f64.powf(lo);
            let whi = 0.1 * 100f64.powf(hi);
            if let Ok(f) = fit_power_law(&pts, (wlo, whi)) {
                prop_assert!((f.slope - full.slope).abs() < 1e-12);
                prop_assert!((f.slope - e).abs() < 1e-12);
            }
        }
    }
}
