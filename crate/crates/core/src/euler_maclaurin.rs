//! Continuum decomposition of the infinite-lattice sum:
//!
//! `Σ f(n_x, n_y) ≈ (1/ã²) ∬ f + (2/ã) [∫₀^∞ f(x,0) dx + ∫₀^∞ f(0,y) dy] + f(0,0)`.
//!
//! With `r² = R² + z²` the bulk integral becomes `2π ∫_z^∞ r ⟨f⟩_φ dr`. The
//! azimuthal averages of the dipole projections are quadratic forms in `R²`
//! with closed-form coefficients for any orientation, so every integral here
//! is one-dimensional. Resonant integrands carry `e^{2ir}`; they are
//! integrated along rays in the upper half plane where that factor decays
//! (`r = z + it` for the bulk, `x = t e^{iπ/4}` for the edges). Parallel and
//! orthogonal resonant bulks also have closed antiderivatives.

use num_complex::Complex;

use crate::error::{CpError, Result};
use crate::lattice_sum::{offresonant_kernel, pair_term, resonant_kernel, OffResonantMoments, ShiftKind};
use crate::model::{ModelParams, Orientation, System};
use crate::quadrature::{integrate_to_infinity, Tolerance};
use crate::scalar::{dot, Real};
use crate::specfun::{cosine_integral, exp_integral_e1};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftBreakdown<T> {
    /// Continuum (medium-like) term, `∝ 1/ã²`.
    pub bulk: T,
    /// Axis line integrals, `∝ 1/ã`.
    pub edge: T,
    /// Single-site term at the foot of the test atom.
    pub vertex: T,
    pub total: T,
}

impl<T: Real> ShiftBreakdown<T> {
    pub fn new(bulk: T, edge: T, vertex: T) -> Self {
        Self { bulk, edge, vertex, total: bulk + edge + vertex }
    }
}

/// Coefficients of `⟨q⟩ r²` and `⟨q²⟩ r⁴` as polynomials in `R²` and `z²`.
///
/// Writing the in-plane parts of the dipoles as `A(φ) = ê₀∥·û`,
/// `B(φ) = ê_n∥·û` and `a₀ = ê₀·ẑ`, `b₀ = ê_n·ẑ`:
/// `⟨q⟩ r² = m₁ R² + a₀b₀ z²`,
/// `⟨q²⟩ r⁴ = m₂ R⁴ + (2a₀b₀m₁ + m₃) R² z² + a₀²b₀² z⁴`,
/// with `m₁ = ⟨AB⟩`, `m₂ = ⟨A²B²⟩`, `m₃ = ⟨(Ab₀ + a₀B)²⟩`. Terms odd in `R`
/// drop out of the average (and out of the even part along an axis).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Angular<T> {
    d: T,
    a0b0: T,
    m1: T,
    m2: T,
    m3: T,
}

impl<T: Real> Angular<T> {
    /// Average over the full circle.
    fn plane(p: &ModelParams<T>) -> Self {
        let (a, b) = (&p.test_dipole, &p.array_dipole);
        let half = T::lit(0.5);
        let alpha2 = a[0] * a[0] + a[1] * a[1];
        let beta2 = b[0] * b[0] + b[1] * b[1];
        let ab = a[0] * b[0] + a[1] * b[1];
        let c1 = a[0] * b[2] + a[2] * b[0];
        let c2 = a[1] * b[2] + a[2] * b[1];
        Self {
            d: dot(a, b),
            a0b0: a[2] * b[2],
            m1: ab * half,
            m2: (alpha2 * beta2 + T::lit(2.0) * ab * ab) / T::lit(8.0),
            m3: (c1 * c1 + c2 * c2) * half,
        }
    }

    /// Even part along in-plane axis `axis` (0 for x, 1 for y).
    fn axis(p: &ModelParams<T>, axis: usize) -> Self {
        let (a, b) = (&p.test_dipole, &p.array_dipole);
        let (ai, bi) = (a[axis], b[axis]);
        let c = ai * b[2] + a[2] * bi;
        Self { d: dot(a, b), a0b0: a[2] * b[2], m1: ai * bi, m2: ai * ai * bi * bi, m3: c * c }
    }

    /// `(⟨q⟩, ⟨q²⟩)` at in-plane distance² `R²`, height² `z²`, distance² `r²`.
    fn moments<V>(&self, big_r2: V, z2: T, r2: V) -> (V, V)
    where
        V: Copy + std::ops::Add<Output = V> + std::ops::Mul<Output = V> + std::ops::Div<Output = V> + From<T>,
    {
        let c = |x: T| V::from(x);
        let q1 = (big_r2 * c(self.m1) + c(z2 * self.a0b0)) / r2;
        let mid = self.a0b0 * self.m1 * T::lit(2.0) + self.m3;
        let q2 = (big_r2 * big_r2 * c(self.m2) + big_r2 * c(z2 * mid) + c(z2 * z2 * self.a0b0 * self.a0b0)) / (r2 * r2);
        (q1, q2)
    }

    fn vanishes(&self) -> bool {
        let zero = T::zero();
        self.d == zero && self.a0b0 == zero && self.m1 == zero && self.m2 == zero && self.m3 == zero
    }
}

fn tolerance<T: Real>() -> Tolerance {
    let rel = (T::epsilon().as_f64() * 256.0).max(1e-12);
    Tolerance { abs: 0.0, rel, max_intervals: 4000 }
}

fn axis_weight<T: Real>(sys: &System<T>) -> T {
    T::lit(2.0) / sys.a()
}

fn plane_weight<T: Real>(sys: &System<T>) -> T {
    T::lit(2.0) * T::PI() / (sys.a() * sys.a())
}

/// Closed-form bulk of the resonant shift for `ê₀ = ê_n = ẑ`:
/// `(π/4) K/(ã² z⁴) [−8 Ci(2z) z⁴ + (3 − 2z²) cos 2z + 2z (3 + 2z²) sin 2z]`.
pub fn resonant_zz_bulk<T: Real>(sys: &System<T>) -> Result<T> {
    let z = sys.z();
    let z2 = z * z;
    let (s, c) = (z + z).sin_cos();
    let (two, three) = (T::lit(2.0), T::lit(3.0));
    let bracket = -T::lit(8.0) * cosine_integral(z + z)? * z2 * z2 + c * (three - two * z2) + two * z * (three + two * z2) * s;
    let k = sys.params().resonant_prefactor();
    Ok(T::FRAC_PI_4() * k * bracket / (sys.a() * sys.a() * z2 * z2))
}

/// Closed-form bulk of the resonant shift for `ê₀ = ẑ`, `ê_n ⟂ ẑ`:
/// `(π/8) K/(ã² z⁴) [(3 − 4z²) cos 2z + 6z sin 2z]`.
pub fn resonant_zx_bulk<T: Real>(sys: &System<T>) -> T {
    let z = sys.z();
    let z2 = z * z;
    let (s, c) = (z + z).sin_cos();
    let bracket = (T::lit(3.0) - T::lit(4.0) * z2) * c + T::lit(6.0) * z * s;
    let k = sys.params().resonant_prefactor();
    T::FRAC_PI_8() * k * bracket / (sys.a() * sys.a() * z2 * z2)
}

/// Resonant bulk by quadrature along `r = z + it`, valid for any orientation.
pub fn resonant_bulk_contour<T: Real>(sys: &System<T>) -> Result<T> {
    let p = sys.params();
    let ang = Angular::plane(p);
    let z = sys.z();
    let z2 = z * z;
    let i = Complex::new(T::zero(), T::one());
    let integrand = |t: T| {
        let r = Complex::new(z, t);
        let r2 = r * r;
        let (q1, q2) = ang.moments(r2 - z2, z2, r2);
        r * resonant_kernel(r, ang.d, q1, q2)
    };
    let est = integrate_to_infinity(integrand, T::zero(), z.min(T::one()), tolerance::<T>())?;
    Ok(plane_weight(sys) * p.resonant_prefactor() * (i * est.value).re)
}

/// `∫₀^∞ f(x, 0) dx` (even part) of the resonant kernel along `x = t e^{iπ/4}`.
fn resonant_axis_integral<T: Real>(sys: &System<T>, ang: &Angular<T>) -> Result<T> {
    if ang.vanishes() {
        return Ok(T::zero());
    }
    let z = sys.z();
    let z2 = z * z;
    let ray = Complex::new(T::FRAC_1_SQRT_2(), T::FRAC_1_SQRT_2());
    let integrand = |t: T| {
        let x = ray * t;
        let x2 = x * x;
        let r2 = x2 + z2;
        let (q1, q2) = ang.moments(x2, z2, r2);
        resonant_kernel(r2.sqrt(), ang.d, q1, q2)
    };
    let est = integrate_to_infinity(integrand, T::zero(), z.min(T::one()), tolerance::<T>())?;
    Ok((ray * est.value).re)
}

fn offresonant_bulk<T: Real>(sys: &System<T>) -> Result<T> {
    let p = sys.params();
    let ang = Angular::plane(p);
    let moments = OffResonantMoments::new(p.mu);
    let z = sys.z();
    let z2 = z * z;
    let integrand = |r: T| {
        let r2 = r * r;
        let (q1, q2) = ang.moments(r2 - z2, z2, r2);
        r * offresonant_kernel(r, ang.d, q1, q2, &moments.at(r))
    };
    let est = integrate_to_infinity(integrand, z, z, tolerance::<T>())?;
    Ok(plane_weight(sys) * p.offresonant_prefactor() * est.value)
}

fn offresonant_axis_integral<T: Real>(sys: &System<T>, ang: &Angular<T>, moments: &OffResonantMoments<T>) -> Result<T> {
    if ang.vanishes() {
        return Ok(T::zero());
    }
    let z = sys.z();
    let z2 = z * z;
    let integrand = |x: T| {
        let x2 = x * x;
        let r2 = x2 + z2;
        let r = r2.sqrt();
        let (q1, q2) = ang.moments(x2, z2, r2);
        offresonant_kernel(r, ang.d, q1, q2, &moments.at(r))
    };
    Ok(integrate_to_infinity(integrand, T::zero(), z, tolerance::<T>())?.value)
}

/// Bulk term `(1/ã²) ∬ f dx dy` of the infinite lattice.
pub fn bulk_term<T: Real>(sys: &System<T>, kind: ShiftKind) -> Result<T> {
    match (kind, sys.params().orientation()) {
        (ShiftKind::Resonant, Orientation::ZZ) => resonant_zz_bulk(sys),
        (ShiftKind::Resonant, Orientation::ZX) => Ok(resonant_zx_bulk(sys)),
        (ShiftKind::Resonant, Orientation::General) => resonant_bulk_contour(sys),
        (ShiftKind::OffResonant, _) => offresonant_bulk(sys),
    }
}

/// Edge term `(2/ã) [∫₀^∞ f(x,0) dx + ∫₀^∞ f(0,y) dy]`.
///
/// Along each axis only the part of `f` even in the coordinate enters, so
/// orientations without the reflection symmetry get the mean of both
/// half-axes.
pub fn edge_term<T: Real>(sys: &System<T>, kind: ShiftKind) -> Result<T> {
    let p = sys.params();
    let (ax, ay) = (Angular::axis(p, 0), Angular::axis(p, 1));
    let same = p.orientation() == Orientation::ZZ;
    let sum = match kind {
        ShiftKind::Resonant => {
            let x = resonant_axis_integral(sys, &ax)?;
            let y = if same { x } else { resonant_axis_integral(sys, &ay)? };
            p.resonant_prefactor() * (x + y)
        }
        ShiftKind::OffResonant => {
            let moments = OffResonantMoments::new(p.mu);
            let x = offresonant_axis_integral(sys, &ax, &moments)?;
            let y = if same { x } else { offresonant_axis_integral(sys, &ay, &moments)? };
            p.offresonant_prefactor() * (x + y)
        }
    };
    Ok(axis_weight(sys) * sum)
}

/// Vertex term: the pair term of the site directly below the test atom.
pub fn vertex_term<T: Real>(sys: &System<T>, kind: ShiftKind) -> Result<T> {
    pair_term(kind, 0, 0, sys)
}

pub fn decompose<T: Real>(sys: &System<T>, kind: ShiftKind) -> Result<ShiftBreakdown<T>> {
    let b = ShiftBreakdown::new(bulk_term(sys, kind)?, edge_term(sys, kind)?, vertex_term(sys, kind)?);
    if !b.total.is_finite() {
        return Err(CpError::QuadratureFailure { estimate: b.total.as_f64(), error: f64::NAN, evaluations: 0 });
    }
    Ok(b)
}

/// Off-resonant bulk for `ê₀ = ê_n = ẑ` with the radial integral done in
/// closed form at each imaginary frequency:
/// `∫_z^∞ r ξ⁴ p(iξ)² dr = [e^{-2u}(3 + 6u + 2u² − 4u³) + 8u⁴ E₁(2u)] / (8z⁴)`,
/// `u = zξ`. Validation path for [`bulk_term`].
pub fn offresonant_zz_bulk_semi_closed<T: Real>(sys: &System<T>, tol: Tolerance) -> Result<T> {
    let p = sys.params();
    if p.orientation() != Orientation::ZZ {
        return Err(CpError::InvalidParameter { what: "orientation (expected zz)", value: f64::NAN });
    }
    let z = sys.z();
    let z4 = z * z * z * z;
    let mu2 = p.mu * p.mu;
    let radial = |xi: T| -> Result<T> {
        let u = z * xi;
        if u == T::zero() {
            return Ok(T::lit(3.0) / (T::lit(8.0) * z4));
        }
        let poly = T::lit(3.0) + u * (T::lit(6.0) + u * (T::lit(2.0) - T::lit(4.0) * u));
        let u4 = u * u * u * u;
        Ok(((-(u + u)).exp() * poly + T::lit(8.0) * u4 * exp_integral_e1(u + u)?) / (T::lit(8.0) * z4))
    };
    let mut failure = None;
    let integrand = |xi: T| match radial(xi) {
        Ok(v) => v / ((xi * xi + T::one()) * (xi * xi + mu2)),
        Err(e) => {
            failure = Some(e);
            T::zero()
        }
    };
    let scale = p.mu.min(T::one()).min(T::one() / z);
    let est = integrate_to_infinity(integrand, T::zero(), scale, tol)?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(plane_weight(sys) * p.offresonant_prefactor() * est.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_sum::{resonant_pair_term, sum_lattice};
    use crate::model::{normalized, validate, Geometry, LatticeSpec};
    use crate::quadrature::integrate;

    fn system(p: ModelParams<f64>, a: f64, z: f64) -> System<f64> {
        validate(p, LatticeSpec::new(a, 0), Geometry::new(z)).unwrap()
    }

    fn zz(a: f64, z: f64) -> System<f64> {
        system(ModelParams::zz(0.5, 1e-6), a, z)
    }

    fn zx(a: f64, z: f64) -> System<f64> {
        system(ModelParams::zx(0.5, 1e-6), a, z)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn closed_bulks_match_oracle_values() {
        let cases = [
            (0.1, 23887.323126429290332),
            (1.0, 4.1570974004045005611),
            (5.0, -0.027159271917827673898),
            (30.0, -7.088924235785519095e-5),
        ];
        for (z, want) in cases {
            let s = zz(1.0, z);
            let got = resonant_zz_bulk(&s).unwrap() / s.params().resonant_prefactor();
            assert!(rel(got, want) < 1e-12, "zz z={z}: {got} vs {want}");
        }
        let cases = [(0.1, 11860.292438196779207), (1.0, 2.3059020675966400252), (5.0, 0.040884250108502174861)];
        for (z, want) in cases {
            let s = zx(1.0, z);
            let got = resonant_zx_bulk(&s) / s.params().resonant_prefactor();
            assert!(rel(got, want) < 1e-12, "zx z={z}: {got} vs {want}");
        }
    }

    #[test]
    fn closed_bulk_matches_contour_quadrature() {
        let mut z = 0.05;
        while z <= 50.0 {
            for s in [zz(0.3, z), zx(0.3, z)] {
                let closed = bulk_term(&s, ShiftKind::Resonant).unwrap();
                let numeric = resonant_bulk_contour(&s).unwrap();
                // relative to the local envelope so zero crossings do not dominate
                let k = s.params().resonant_prefactor();
                let envelope = k / (s.a() * s.a()) * (3.0 / z.powi(4) + 4.0 / z.powi(3) + 8.0 / z.powi(2));
                assert!((closed - numeric).abs() < 1e-8 * envelope.max(closed.abs()), "z={z}: {closed} vs {numeric}");
            }
            z *= 1.37;
        }
    }

    #[test]
    fn oracle_bulk_closed_form_example() {
        // dense, non-retarded: the bracket tends to 3
        let s = zz(0.01, 0.1);
        let k = s.params().resonant_prefactor();
        let lead = 0.75 * std::f64::consts::PI * k / (1e-4 * 1e-4);
        assert!(rel(bulk_term(&s, ShiftKind::Resonant).unwrap(), lead) < 0.03);
    }

    #[test]
    fn edge_matches_oracle_values() {
        let s = zz(1.0, 0.3);
        let got = edge_term(&s, ShiftKind::Resonant).unwrap() / s.params().resonant_prefactor();
        assert!(rel(got, 2763.0997525898897595) < 1e-9, "{got}");
        let s = zz(1.0, 2.0);
        let got = edge_term(&s, ShiftKind::Resonant).unwrap() / s.params().resonant_prefactor();
        assert!(rel(got, -0.51682266110369808398) < 1e-9, "{got}");
        let s = zx(1.0, 0.5);
        let got = edge_term(&s, ShiftKind::Resonant).unwrap() / s.params().resonant_prefactor();
        assert!(rel(got, 40.81200788222042513) < 1e-9, "{got}");
    }

    #[test]
    fn edge_matches_real_axis_quadrature() {
        // direct real-line quadrature of the pair term over a long finite range
        let s = zz(1.0, 0.7);
        let k = s.params().resonant_prefactor();
        let z2 = 0.49;
        let f = |x: f64| crate::lattice_sum::resonant_zz(x * x + z2, z2);
        let mut total = 0.0;
        let mut lo = 0.0;
        while lo < 4000.0 {
            total += integrate(f, lo, lo + 2.0, Tolerance::new(1e-15, 1e-13)).unwrap().value;
            lo += 2.0;
        }
        // tail ~ cos(2x)/x², bounded by 1/(2·4000²)
        // both axes, weight 2/ã with ã = 1
        let edge = edge_term(&s, ShiftKind::Resonant).unwrap() / (4.0 * k);
        assert!((edge - total).abs() < 1e-7, "{edge} vs {total}");
    }

    #[test]
    fn offresonant_bulk_matches_oracle_values() {
        for (z, want) in [(0.1, 0.0087878192955134129927), (1.0, 7.1718618151813199366e-7), (20.0, 5.5530289287039810905e-13)] {
            let s = zz(1.0, z);
            let got = bulk_term(&s, ShiftKind::OffResonant).unwrap();
            assert!(rel(got, want) < 1e-9, "z={z}: {got} vs {want}");
        }
    }

    #[test]
    fn offresonant_bulk_matches_semi_closed_form() {
        for mu in [0.1, 0.5, 2.0] {
            for z in [0.05, 0.3, 1.0, 4.0, 20.0] {
                let s = system(ModelParams::zz(mu, 1e-6), 0.5, z);
                let a = bulk_term(&s, ShiftKind::OffResonant).unwrap();
                let b = offresonant_zz_bulk_semi_closed(&s, Tolerance::new(0.0, 1e-12)).unwrap();
                assert!(rel(a, b) < 1e-9, "mu={mu} z={z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn semi_closed_radial_integral() {
        // the closed radial antiderivative at fixed imaginary frequency
        for (z, xi) in [(0.2, 0.5), (1.0, 1.0), (3.0, 0.1), (0.5, 7.0)] {
            let f = |r: f64| {
                let u = xi * r;
                let q = z * z / (r * r);
                let b = (u * u + u + 1.0) - (u * u + 3.0 * u + 3.0) * q;
                r * (-2.0 * u).exp() * b * b / r.powi(6)
            };
            let direct = integrate_to_infinity(f, z, z, Tolerance::new(0.0, 1e-13)).unwrap().value;
            let u = z * xi;
            let poly = 3.0 + u * (6.0 + u * (2.0 - 4.0 * u));
            let closed = ((-2.0 * u).exp() * poly + 8.0 * u.powi(4) * exp_integral_e1(2.0 * u).unwrap()) / (8.0 * z.powi(4));
            assert!(rel(closed, direct) < 1e-10, "z={z} xi={xi}: {closed} vs {direct}");
        }
    }

    #[test]
    fn offresonant_dense_retarded_example() {
        let s = zz(0.01, 20.0);
        let want = 0.9 * 1e-6 / 0.5 / (1e-4 * 20f64.powi(5));
        assert!(rel(bulk_term(&s, ShiftKind::OffResonant).unwrap(), want) < 0.02);
    }

    #[test]
    fn general_orientation_reduces_to_special_cases() {
        // rotating the in-plane dipole about ẑ leaves the bulk unchanged
        let e = normalized([1.0, 1.0, 0.0]);
        let p = ModelParams::new(0.5, 1e-6, [0.0, 0.0, 1.0], e);
        for z in [0.2, 1.3, 6.0] {
            let g = system(p, 0.4, z);
            let reference = zx(0.4, z);
            for kind in ShiftKind::BOTH {
                let a = bulk_term(&g, kind).unwrap();
                let b = bulk_term(&reference, kind).unwrap();
                assert!(rel(a, b) < 1e-9, "{kind:?} z={z}: {a} vs {b}");
            }
        }
        // the same dipoles along -ẑ give the parallel configuration
        let p = ModelParams::new(0.5, 1e-6, [0.0, 0.0, -1.0], [0.0, 0.0, -1.0]);
        assert_eq!(p.orientation(), Orientation::ZZ);
    }

    #[test]
    fn tilted_bulk_matches_direct_plane_average() {
        // brute-force the azimuthal average numerically for a tilted pair
        let p = ModelParams::new(0.5, 1e-6, normalized([0.3, -0.2, 1.0]), normalized([1.0, 0.4, 0.5]));
        let z = 0.8;
        let s = system(p, 1.0, z);
        let ang = Angular::plane(&p);
        for big_r in [0.3, 1.1, 2.7] {
            let r2: f64 = big_r * big_r + z * z;
            let n = 64;
            let (mut q1, mut q2) = (0.0, 0.0);
            for k in 0..n {
                let phi = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                let v = [-big_r * phi.cos(), -big_r * phi.sin(), z];
                let q = dot(&p.test_dipole, &v) * dot(&p.array_dipole, &v) / r2;
                q1 += q / n as f64;
                q2 += q * q / n as f64;
            }
            let (a1, a2): (Complex<f64>, Complex<f64>) = ang.moments(Complex::from(big_r * big_r), z * z, Complex::from(r2));
            assert!((a1.re - q1).abs() < 1e-14 && (a2.re - q2).abs() < 1e-14);
        }
        assert!(bulk_term(&s, ShiftKind::Resonant).unwrap().is_finite());
    }

    #[test]
    fn parity_precondition_holds() {
        for s in [zz(0.3, 0.4), zx(0.3, 0.4)] {
            for kind in ShiftKind::BOTH {
                for (nx, ny) in [(1, 0), (2, 3), (0, 5), (7, 1)] {
                    let f = pair_term(kind, nx, ny, &s).unwrap();
                    assert_eq!(f.to_bits(), pair_term(kind, -nx, ny, &s).unwrap().to_bits());
                    assert_eq!(f.to_bits(), pair_term(kind, nx, -ny, &s).unwrap().to_bits());
                }
            }
        }
    }

    #[test]
    fn lattice_constant_scaling_is_exact() {
        for kind in ShiftKind::BOTH {
            for make in [zz, zx] {
                let a = make(0.02, 0.6);
                let b = make(0.04, 0.6);
                let (da, db) = (decompose(&a, kind).unwrap(), decompose(&b, kind).unwrap());
                assert!(rel(da.bulk / db.bulk, 4.0) < 1e-10);
                if da.edge != 0.0 {
                    assert!(rel(da.edge / db.edge, 2.0) < 1e-10);
                }
                assert_eq!(da.vertex.to_bits(), db.vertex.to_bits());
            }
        }
    }

    #[test]
    fn total_is_sum_of_parts() {
        for s in [zz(0.01, 0.3), zx(2.0, 0.7), zz(100.0, 0.01)] {
            for kind in ShiftKind::BOTH {
                let d = decompose(&s, kind).unwrap();
                assert_eq!(d.total.to_bits(), (d.bulk + d.edge + d.vertex).to_bits());
            }
        }
    }

    #[test]
    fn vertex_is_the_origin_pair_term() {
        let s = zz(0.5, 0.3);
        assert_eq!(vertex_term(&s, ShiftKind::Resonant).unwrap(), resonant_pair_term(0, 0, &s));
        assert_eq!(vertex_term(&zx(0.5, 0.3), ShiftKind::Resonant).unwrap(), 0.0);
        assert_eq!(vertex_term(&zx(0.5, 0.3), ShiftKind::OffResonant).unwrap(), 0.0);
    }

    #[test]
    fn sparse_total_is_vertex() {
        for kind in ShiftKind::BOTH {
            let d = decompose(&zz(100.0, 0.01), kind).unwrap();
            assert!(rel(d.total, d.vertex) < 0.01);
            assert!(d.edge.abs() < 0.01 * d.vertex.abs());
        }
        let d = decompose(&zz(100.0, 0.01), ShiftKind::OffResonant).unwrap();
        let want = 2.25 * 1e-6 / 1.5 / 0.01f64.powi(6);
        assert!(rel(d.vertex, want) < 0.01);
    }

    #[test]
    fn dense_ordering_and_edge_scaling() {
        let ratios: Vec<f64> = [0.01, 0.02, 0.04]
            .iter()
            .map(|&a| {
                let d = decompose(&zz(a, 0.3), ShiftKind::Resonant).unwrap();
                assert!(d.bulk.abs() > d.edge.abs() && d.edge.abs() > 0.0);
                d.bulk / d.edge
            })
            .collect();
        assert!(rel(ratios[0] / ratios[1], 2.0) < 1e-10 && rel(ratios[1] / ratios[2], 2.0) < 1e-10);
    }

    #[test]
    fn bulk_alone_tracks_the_dense_direct_sum() {
        let s = validate(ModelParams::zz(0.5, 1e-6), LatticeSpec::new(0.05, 2000), Geometry::new(0.3)).unwrap();
        let direct = sum_lattice(&s, ShiftKind::Resonant).unwrap().value;
        let bulk = bulk_term(&s, ShiftKind::Resonant).unwrap();
        assert!(rel(bulk, direct) < 0.02, "{bulk} vs {direct}");
    }

    #[test]
    fn single_precision_bulk() {
        let s = validate(ModelParams::<f32>::zz(0.5, 1e-6), LatticeSpec::new(0.1f32, 0), Geometry::new(0.5f32)).unwrap();
        let a = bulk_term(&s, ShiftKind::Resonant).unwrap() as f64;
        let b = bulk_term(&zz(0.1, 0.5), ShiftKind::Resonant).unwrap();
        assert!(rel(a, b) < 1e-4);
        assert!(bulk_term(&s, ShiftKind::OffResonant).unwrap().is_finite());
    }
}
