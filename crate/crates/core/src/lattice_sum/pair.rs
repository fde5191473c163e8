//! Single-site kernels shared by the direct sums and the continuum integrals.
//!
//! For dipoles `ê₀`, `ê_n` and unit separation `n̂`, write `d = ê₀·ê_n` and
//! `q = (ê₀·n̂)(ê_n·n̂)`. Everything depends on the site only through
//! `(r̃, d, q)`, and after any average over directions only through
//! `(r̃, d, ⟨q⟩, ⟨q²⟩)`; the kernels therefore take those moments.

use num_complex::Complex;

use crate::scalar::Real;

/// `(r² + ir − 1, −r² + 3 − 3ir)`: `r³ e^{-ir} ĝ = a δ + b n nᵀ` at `k̃ = 1`.
#[inline]
pub fn resonant_brackets<T: Real>(r: Complex<T>) -> (Complex<T>, Complex<T>) {
    let i = Complex::new(T::zero(), T::one());
    let r2 = r * r;
    let three = T::lit(3.0);
    (r2 + i * r - T::one(), -r2 + three - i * r * three)
}

/// `e^{2ir}/r⁶ · [a² d² + 2ab d⟨q⟩ + b²⟨q²⟩]`, i.e. `⟨p²⟩` at `k̃ = 1`.
///
/// Valid for complex `r` (used on rotated contours), with `⟨q⟩`, `⟨q²⟩`
/// continued analytically.
pub fn resonant_kernel<T: Real>(r: Complex<T>, d: T, q1: Complex<T>, q2: Complex<T>) -> Complex<T> {
    let (a, b) = resonant_brackets(r);
    let i = Complex::new(T::zero(), T::one());
    let r2 = r * r;
    let r6 = r2 * r2 * r2;
    let bracket = a * a * (d * d) + a * b * q1 * (d + d) + b * b * q2;
    (i * (r + r)).exp() * bracket / r6
}

/// Real-`r` specialization of [`resonant_kernel`] for parallel dipoles along
/// the array normal: `Re[e^{2ir} B²]/r⁶`,
/// `B = (r²+ir−1) + (−r²+3−3ir) z²/r²`. Takes `r²` to skip a square.
#[inline(always)]
pub fn resonant_zz<T: Real>(r2: T, z2: T) -> T {
    let r = r2.sqrt();
    let inv = T::one() / r2;
    let zq = z2 * inv;
    let three = T::lit(3.0);
    let br = r2 - T::one() + (three - r2) * zq;
    let bi = r * (T::one() - three * zq);
    let (s, c) = (r + r).sin_cos_fast();
    let re = c * (br * br - bi * bi) - (s + s) * br * bi;
    re * inv * inv * inv
}

/// `Re[e^{2ir} b²]/r⁶` with `b = −r² + 3 − 3ir`; multiply by `⟨q²⟩` for
/// orthogonal (`d = 0`) configurations.
#[inline(always)]
pub fn resonant_orthogonal<T: Real>(r2: T) -> T {
    let r = r2.sqrt();
    let inv = T::one() / r2;
    let three = T::lit(3.0);
    let br = three - r2;
    let bi = -three * r;
    let (s, c) = (r + r).sin_cos_fast();
    let re = c * (br * br - bi * bi) - (s + s) * br * bi;
    re * inv * inv * inv
}

/// `∫₀^∞ ξ⁴ ⟨p(iξ)²⟩ w(ξ) dξ` from the moments `J_k(r)`.
///
/// `ξ⁴ p(iξ)² = e^{-2ξr}/r⁶ [(u²+u+1)d − (u²+3u+3)q]²` with `u = ξr`; the
/// square is a quartic in `u` whose coefficients are linear in `d²`,
/// `d⟨q⟩`, `⟨q²⟩`.
pub fn offresonant_kernel<T: Real>(r: T, d: T, q1: T, q2: T, j: &[T; 5]) -> T {
    let dd = d * d;
    let dq = d * q1;
    let c = |a: f64, b: f64, e: f64| T::lit(a) * dd - T::lit(b) * dq + T::lit(e) * q2;
    let coeffs = [
        c(1.0, 6.0, 9.0),
        c(2.0, 12.0, 18.0),
        c(3.0, 14.0, 15.0),
        c(2.0, 8.0, 6.0),
        c(1.0, 2.0, 1.0),
    ];
    let mut acc = T::zero();
    let mut rk = T::one();
    for (ck, jk) in coeffs.iter().zip(j) {
        acc = acc + *ck * rk * *jk;
        rk = rk * r;
    }
    let r2 = r * r;
    acc / (r2 * r2 * r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greens::pair_coupling;

    #[test]
    fn zz_fast_path_matches_generic_kernel() {
        for (r, z) in [(0.7f64, 0.5), (3.0, 0.1), (0.02, 0.02), (40.0, 2.0)] {
            let q = z * z / (r * r);
            let generic = resonant_kernel(Complex::new(r, 0.0), 1.0, Complex::new(q, 0.0), Complex::new(q * q, 0.0));
            let fast = resonant_zz(r * r, z * z);
            assert!((generic.re - fast).abs() <= 1e-13 * generic.norm(), "r={r}");
        }
    }

    #[test]
    fn kernel_is_square_of_coupling() {
        let e0 = [0.0, 0.6, 0.8];
        let en = [0.48, 0.6, -0.64];
        let v = [0.3f64, -1.1, 0.4];
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let p = pair_coupling(&e0, &en, &v, Complex::new(1.0, 0.0)).unwrap();
        let d: f64 = e0.iter().zip(&en).map(|(a, b)| a * b).sum();
        let q = (e0[0] * v[0] + e0[1] * v[1] + e0[2] * v[2]) * (en[0] * v[0] + en[1] * v[1] + en[2] * v[2]) / (r * r);
        let k = resonant_kernel(Complex::new(r, 0.0), d, Complex::new(q, 0.0), Complex::new(q * q, 0.0));
        assert!((k - p * p).norm() < 1e-13 * k.norm());
    }

    #[test]
    fn orthogonal_path_matches_generic_kernel() {
        let (r, q2) = (1.3f64, 0.17);
        let generic = resonant_kernel(Complex::new(r, 0.0), 0.0, Complex::new(0.0, 0.0), Complex::new(q2, 0.0));
        assert!((generic.re - q2 * resonant_orthogonal(r * r)).abs() < 1e-14 * generic.norm());
    }
}
