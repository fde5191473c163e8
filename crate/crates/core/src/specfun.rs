//! Cosine integral, exponential integral and the auxiliary functions
//! `f(x) = ∫ e^{-xt}/(1+t²) dt`, `g(x) = ∫ t e^{-xt}/(1+t²) dt` over `t ∈ [0, ∞)`.
//!
//! Below [`CI_SWITCH`] the trigonometric integrals use their power series;
//! above it `E1(ix)` is evaluated by a modified-Lentz continued fraction,
//! which is accurate for every `x` past the switch (unlike the divergent
//! large-argument expansion). `E1` on the real axis switches at
//! [`E1_SWITCH`].

use num_complex::Complex;

use crate::error::{CpError, Result};
use crate::scalar::Real;

/// Series / continued-fraction boundary for `Ci`, `Si`, `f` and `g`.
pub const CI_SWITCH: f64 = 4.0;
/// Series / continued-fraction boundary for `E1`.
pub const E1_SWITCH: f64 = 1.0;

const MAX_ITER: usize = 10_000;

fn check_domain<T: Real>(function: &'static str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(CpError::DomainError { function, x: x.as_f64() })
    }
}

/// `Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt`.
pub fn cosine_integral<T: Real>(x: T) -> Result<T> {
    check_domain("cosine_integral", x)?;
    Ok(if x <= T::lit(CI_SWITCH) { ci_series(x) } else { ci_continued_fraction(x) })
}

/// `Si(x) = ∫₀ˣ sin t / t dt`.
pub fn sine_integral<T: Real>(x: T) -> Result<T> {
    check_domain("sine_integral", x)?;
    Ok(if x <= T::lit(CI_SWITCH) {
        si_series(x)
    } else {
        let h = e1_imaginary(x);
        T::FRAC_PI_2() + h.im
    })
}

/// `Chi(x) − Shi(x)`, which equals `−E1(x)`.
pub fn chi_minus_shi<T: Real>(x: T) -> Result<T> {
    check_domain("chi_minus_shi", x)?;
    Ok(-exp_integral_e1_unchecked(x))
}

/// Exponential integral `E1(x) = ∫₁^∞ e^{-xt}/t dt`.
pub fn exp_integral_e1<T: Real>(x: T) -> Result<T> {
    check_domain("exp_integral_e1", x)?;
    Ok(exp_integral_e1_unchecked(x))
}

fn exp_integral_e1_unchecked<T: Real>(x: T) -> T {
    if x <= T::lit(E1_SWITCH) {
        e1_series(x)
    } else {
        e1_continued_fraction(x)
    }
}

/// Power-series branch of `Ci`.
pub fn ci_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut term = T::one();
    let mut sum = T::zero();
    for k in 1..MAX_ITER {
        let kk = T::from_int(2 * k as i64);
        term = -term * x2 / ((kk - T::one()) * kk);
        let contrib = term / kk;
        sum = sum + contrib;
        if contrib.abs() <= T::epsilon() * sum.abs() * T::lit(0.1) {
            break;
        }
    }
    T::euler_gamma() + x.ln() + sum
}

fn si_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for k in 1..MAX_ITER {
        let kk = T::from_int(2 * k as i64);
        term = -term * x2 / (kk * (kk + T::one()));
        let contrib = term / (kk + T::one());
        sum = sum + contrib;
        if contrib.abs() <= T::epsilon() * sum.abs() * T::lit(0.1) {
            break;
        }
    }
    sum
}

/// `e^{ix} E1(ix) = g(x) − i f(x)` by continued fraction; valid for `x ≳ 1`.
fn e1_imaginary_scaled<T: Real>(x: T) -> Complex<T> {
    let tiny = T::min_positive_value() / T::epsilon();
    let two = T::lit(2.0);
    let mut b = Complex::new(T::one(), x);
    let mut c = Complex::new(T::one() / tiny, T::zero());
    let mut d = b.inv();
    let mut h = d;
    for i in 2..MAX_ITER {
        let im1 = T::from_int(i as i64 - 1);
        let a = -(im1 * im1);
        b.re = b.re + two;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h = h * del;
        if (del.re - T::one()).abs() + del.im.abs() <= T::epsilon() {
            break;
        }
    }
    h
}

fn e1_imaginary<T: Real>(x: T) -> Complex<T> {
    let (s, c) = x.sin_cos();
    e1_imaginary_scaled(x) * Complex::new(c, -s)
}

/// Continued-fraction branch of `Ci`, via `Ci(x) = −Re E1(ix)`.
pub fn ci_continued_fraction<T: Real>(x: T) -> T {
    -e1_imaginary(x).re
}

/// Power-series branch of `E1`.
pub fn e1_series<T: Real>(x: T) -> T {
    let mut term = T::one();
    let mut sum = T::zero();
    for k in 1..MAX_ITER {
        let kk = T::from_int(k as i64);
        term = -term * x / kk;
        let contrib = term / kk;
        sum = sum + contrib;
        if contrib.abs() <= T::epsilon() * sum.abs() * T::lit(0.1) {
            break;
        }
    }
    -T::euler_gamma() - x.ln() - sum
}

/// Continued-fraction branch of `E1`.
pub fn e1_continued_fraction<T: Real>(x: T) -> T {
    let tiny = T::min_positive_value() / T::epsilon();
    let two = T::lit(2.0);
    let mut b = x + T::one();
    let mut c = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let ii = T::from_int(i as i64);
        let an = -ii * ii;
        b = b + two;
        d = T::one() / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h = h * del;
        if (del - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    h * (-x).exp()
}

/// Auxiliary functions `(f(x), g(x))` for `x > 0`.
///
/// `f(x) = Ci(x) sin x − (Si(x) − π/2) cos x` and
/// `g(x) = −Ci(x) cos x − (Si(x) − π/2) sin x`; both decay like powers of
/// `1/x` and are computed without cancellation past the switch.
pub fn auxiliary_fg<T: Real>(x: T) -> (T, T) {
    if x <= T::lit(CI_SWITCH) {
        let ci = ci_series(x);
        let si = si_series(x) - T::FRAC_PI_2();
        let (s, c) = x.sin_cos();
        (ci * s - si * c, -ci * c - si * s)
    } else {
        let h = e1_imaginary_scaled(x);
        (-h.im, h.re)
    }
}
