//! Leading-order laws for the parallel (`zz`) and orthogonal (`zx`)
//! configurations in the four corners of the (retardation, density) plane.
//!
//! With `K' = ρμ/((1−μ)(1+μ))`:
//!
//! | shift | pair | sparse, z ≪ 1 | dense, z ≪ 1 | sparse, z ≫ 1 | dense, z ≫ 1 |
//! |---|---|---|---|---|---|
//! | resonant | zz | `9K'/(2z⁶)` | `27πK'/(32ã²z⁴)` | `−9K' cos2z/(2z⁴)` | `9πK' sin2z/(4ã²z³)` |
//! | resonant | zx | 0 | `27πK'/(64ã²z⁴)` | 0 | `−9πK' cos2z/(16ã²z²)` |
//! | off-res. | zz | `9ρ/(4(1+μ)z⁶)` | `27πρ/(64(1+μ)ã²z⁴)` | `45ρ/(8πμz⁷)` | `9ρ/(10μã²z⁵)` |
//! | off-res. | zx | 0 | `27πρ/(128(1+μ)ã²z⁴)` | 0 | `9ρ/(16μã²z⁵)` |
//!
//! Regimes are never selected automatically; the caller decides which law
//! applies.

use num_rational::Ratio;

use crate::error::Result;
use crate::euler_maclaurin::{resonant_zx_bulk, resonant_zz_bulk};
use crate::lattice_sum::ShiftKind;
use crate::model::{Orientation, System};
use crate::scalar::Real;

use Retardation::Retarded;

/// Dipole pairs with tabulated laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alignment {
    ZZ,
    ZX,
}

impl Alignment {
    pub fn of(o: Orientation) -> Option<Self> {
        match o {
            Orientation::ZZ => Some(Alignment::ZZ),
            Orientation::ZX => Some(Alignment::ZX),
            Orientation::General => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Alignment::ZZ => "zz",
            Alignment::ZX => "zx",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Retardation {
    NonRetarded,
    Retarded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Density {
    Sparse,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Regime {
    pub kind: ShiftKind,
    pub alignment: Alignment,
    pub retardation: Retardation,
    pub density: Density,
}

/// Power of `z̃` in a law, or an identically vanishing shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    Power(Ratio<i32>),
    Vanishes,
}

impl Regime {
    pub fn new(kind: ShiftKind, alignment: Alignment, retardation: Retardation, density: Density) -> Self {
        Self { kind, alignment, retardation, density }
    }

    /// All sixteen regimes, ordered kind, alignment, retardation, density.
    pub fn all() -> Vec<Regime> {
        let mut out = Vec::with_capacity(16);
        for kind in ShiftKind::BOTH {
            for alignment in [Alignment::ZZ, Alignment::ZX] {
                for retardation in [Retardation::NonRetarded, Retarded] {
                    for density in [Density::Sparse, Density::Dense] {
                        out.push(Regime::new(kind, alignment, retardation, density));
                    }
                }
            }
        }
        out
    }

    /// Regimes whose law applies to `orientation` (none for general pairs).
    pub fn applicable(orientation: Orientation) -> Vec<Regime> {
        match Alignment::of(orientation) {
            Some(al) => Regime::all().into_iter().filter(|r| r.alignment == al).collect(),
            None => Vec::new(),
        }
    }

    pub fn vanishes(&self) -> bool {
        self.alignment == Alignment::ZX && self.density == Density::Sparse
    }

    /// Whether the law carries `cos 2z̃` or `sin 2z̃`.
    pub fn oscillates(&self) -> bool {
        self.kind == ShiftKind::Resonant && self.retardation == Retarded && !self.vanishes()
    }

    /// Stable identifier, e.g. `resonant_zz_retarded_dense`.
    pub fn label(&self) -> String {
        let ret = match self.retardation {
            Retardation::NonRetarded => "nonretarded",
            Retarded => "retarded",
        };
        let den = match self.density {
            Density::Sparse => "sparse",
            Density::Dense => "dense",
        };
        format!("{}_{}_{}_{}", self.kind.label(), self.alignment.label(), ret, den)
    }
}

/// Value of the law for `r` at the bundle's `(μ, ρ, ã, z̃)`.
pub fn asymptotic_shift<T: Real>(r: Regime, sys: &System<T>) -> T {
    if r.vanishes() {
        return T::zero();
    }
    let p = sys.params();
    let (mu, rho) = (p.mu, p.rho);
    let z = sys.z();
    let a2 = sys.a() * sys.a();
    let pi = T::PI();
    let lit = T::lit;
    let kp = rho * mu / ((T::one() - mu) * (T::one() + mu));
    let (s, c) = (z + z).sin_cos();
    use Alignment::*;
    use Density::*;
    use Retardation::*;
    match (r.kind, r.alignment, r.retardation, r.density) {
        (ShiftKind::Resonant, ZZ, NonRetarded, Sparse) => lit(4.5) * kp / z.powi(6),
        (ShiftKind::Resonant, ZZ, NonRetarded, Dense) => lit(27.0) * pi * kp / (lit(32.0) * a2 * z.powi(4)),
        (ShiftKind::Resonant, ZZ, Retarded, Sparse) => -lit(4.5) * kp * c / z.powi(4),
        (ShiftKind::Resonant, ZZ, Retarded, Dense) => lit(9.0) * pi * kp * s / (lit(4.0) * a2 * z.powi(3)),
        (ShiftKind::Resonant, ZX, NonRetarded, Dense) => lit(27.0) * pi * kp / (lit(64.0) * a2 * z.powi(4)),
        (ShiftKind::Resonant, ZX, Retarded, Dense) => -lit(9.0) * pi * kp * c / (lit(16.0) * a2 * z.powi(2)),
        (ShiftKind::OffResonant, ZZ, NonRetarded, Sparse) => lit(2.25) * rho / ((T::one() + mu) * z.powi(6)),
        (ShiftKind::OffResonant, ZZ, NonRetarded, Dense) => {
            lit(27.0) * pi * rho / (lit(64.0) * (T::one() + mu) * a2 * z.powi(4))
        }
        (ShiftKind::OffResonant, ZZ, Retarded, Sparse) => lit(45.0) * rho / (lit(8.0) * pi * mu * z.powi(7)),
        (ShiftKind::OffResonant, ZZ, Retarded, Dense) => lit(0.9) * rho / (mu * a2 * z.powi(5)),
        (ShiftKind::OffResonant, ZX, NonRetarded, Dense) => {
            lit(27.0) * pi * rho / (lit(128.0) * (T::one() + mu) * a2 * z.powi(4))
        }
        (ShiftKind::OffResonant, ZX, Retarded, Dense) => lit(9.0) * rho / (lit(16.0) * mu * a2 * z.powi(5)),
        (_, ZX, _, Sparse) => unreachable!("handled above"),
    }
}

/// Exact dense resonant bulk, valid at any height.
pub fn full_closed_form<T: Real>(alignment: Alignment, sys: &System<T>) -> Result<T> {
    match alignment {
        Alignment::ZZ => resonant_zz_bulk(sys),
        Alignment::ZX => Ok(resonant_zx_bulk(sys)),
    }
}

/// Tabulated power of `z̃`.
pub fn expected_exponent(r: Regime) -> Exponent {
    if r.vanishes() {
        return Exponent::Vanishes;
    }
    let n = match (r.kind, r.alignment, r.retardation, r.density) {
        (_, _, Retardation::NonRetarded, Density::Sparse) => -6,
        (_, _, Retardation::NonRetarded, Density::Dense) => -4,
        (ShiftKind::Resonant, Alignment::ZZ, Retarded, Density::Sparse) => -4,
        (ShiftKind::Resonant, Alignment::ZZ, Retarded, Density::Dense) => -3,
        (ShiftKind::Resonant, Alignment::ZX, Retarded, Density::Dense) => -2,
        (ShiftKind::OffResonant, _, Retarded, Density::Sparse) => -7,
        (ShiftKind::OffResonant, _, Retarded, Density::Dense) => -5,
        (_, Alignment::ZX, _, Density::Sparse) => unreachable!("vanishing regimes handled above"),
    };
    Exponent::Power(Ratio::from_integer(n))
}

/// Power of `ã`: 0 for sparse laws, −2 for dense ones.
pub fn lattice_exponent(r: Regime) -> Ratio<i32> {
    match r.density {
        Density::Sparse => Ratio::from_integer(0),
        Density::Dense => Ratio::from_integer(-2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler_maclaurin::bulk_term;
    use crate::lattice_sum::pair_term;
    use crate::model::{validate, Geometry, LatticeSpec, ModelParams};

    fn sys(al: Alignment, mu: f64, rho: f64, a: f64, z: f64) -> System<f64> {
        let p = match al {
            Alignment::ZZ => ModelParams::zz(mu, rho),
            Alignment::ZX => ModelParams::zx(mu, rho),
        };
        validate(p, LatticeSpec::new(a, 0), Geometry::new(z)).unwrap()
    }

    fn regime(kind: ShiftKind, al: Alignment, ret: Retardation, den: Density) -> Regime {
        Regime::new(kind, al, ret, den)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    use Alignment::*;
    use Density::*;
    use Retardation::*;
    use ShiftKind::*;

    #[test]
    fn worked_examples() {
        let s = sys(ZZ, 0.5, 1e-6, 1.0, 0.01);
        let v = asymptotic_shift(regime(Resonant, ZZ, NonRetarded, Sparse), &s);
        assert!(rel(v, 3.0e6) < 1e-12, "{v}");
        let s = sys(ZZ, 0.5, 1e-6, 0.01, 20.0);
        let v = asymptotic_shift(regime(OffResonant, ZZ, Retarded, Dense), &s);
        assert!(rel(v, 5.625e-9) < 1e-12, "{v}");
    }

    #[test]
    fn zx_sparse_laws_vanish() {
        let s = sys(ZX, 0.3, 1e-5, 2.0, 0.7);
        for r in Regime::all().into_iter().filter(|r| r.alignment == ZX && r.density == Sparse) {
            assert_eq!(asymptotic_shift(r, &s), 0.0);
            assert_eq!(expected_exponent(r), Exponent::Vanishes);
        }
    }

    #[test]
    fn tabulated_exponents() {
        let p = |n| Exponent::Power(Ratio::from_integer(n));
        assert_eq!(expected_exponent(regime(Resonant, ZZ, NonRetarded, Sparse)), p(-6));
        assert_eq!(expected_exponent(regime(OffResonant, ZZ, Retarded, Dense)), p(-5));
        assert_eq!(expected_exponent(regime(Resonant, ZX, Retarded, Dense)), p(-2));
        assert_eq!(expected_exponent(regime(Resonant, ZZ, Retarded, Dense)), p(-3));
        assert_eq!(expected_exponent(regime(OffResonant, ZZ, Retarded, Sparse)), p(-7));
        assert_eq!(expected_exponent(regime(OffResonant, ZX, NonRetarded, Dense)), p(-4));
        assert_eq!(Regime::all().len(), 16);
        assert_eq!(Regime::applicable(Orientation::ZX).len(), 8);
        assert!(Regime::applicable(Orientation::General).is_empty());
    }

    #[test]
    fn non_oscillating_laws_follow_their_exponents() {
        for r in Regime::all().into_iter().filter(|r| !r.vanishes() && !r.oscillates()) {
            let Exponent::Power(e) = expected_exponent(r) else { unreachable!() };
            let e = *e.numer() as f64 / *e.denom() as f64;
            let at = |z: f64, a: f64| asymptotic_shift(r, &sys(r.alignment, 0.4, 1e-6, a, z));
            let slope = (at(0.8, 1.0) / at(0.4, 1.0)).log2();
            assert!((slope - e).abs() < 1e-12, "{}: {slope}", r.label());
            let ae = *lattice_exponent(r).numer() as f64;
            let aslope = (at(0.4, 2.0) / at(0.4, 1.0)).log2();
            assert!((aslope - ae).abs() < 1e-12, "{}", r.label());
        }
    }

    #[test]
    fn laws_are_linear_in_rho() {
        for r in Regime::all() {
            let one = asymptotic_shift(r, &sys(r.alignment, 0.4, 1e-6, 0.5, 0.3));
            let three = asymptotic_shift(r, &sys(r.alignment, 0.4, 3e-6, 0.5, 0.3));
            assert!((three - 3.0 * one).abs() <= 1e-14 * three.abs(), "{}", r.label());
        }
    }

    #[test]
    fn sparse_laws_match_single_site() {
        let check = |r: Regime, z: f64, tol: f64| {
            let s = sys(r.alignment, 0.5, 1e-6, 1.0, z);
            let law = asymptotic_shift(r, &s);
            let site = pair_term(r.kind, 0, 0, &s).unwrap();
            // the retarded resonant law is compared against its envelope 9K'/(2z⁴)
            let scale = if r.oscillates() { 4.5 * (0.5e-6 / 0.75) / z.powi(4) } else { law.abs() };
            assert!((law - site).abs() < tol * scale, "{}: {law} vs {site}", r.label());
        };
        check(regime(Resonant, ZZ, NonRetarded, Sparse), 0.01, 1e-3);
        check(regime(Resonant, ZZ, Retarded, Sparse), 300.0, 1e-2);
        check(regime(OffResonant, ZZ, NonRetarded, Sparse), 0.005, 1e-2);
        check(regime(OffResonant, ZZ, Retarded, Sparse), 100.0, 1e-3);
        for kind in ShiftKind::BOTH {
            assert_eq!(pair_term(kind, 0, 0, &sys(ZX, 0.5, 1e-6, 1.0, 0.3)).unwrap(), 0.0);
        }
    }

    #[test]
    fn dense_laws_match_bulk() {
        let check = |r: Regime, z: f64, tol: f64| {
            let s = sys(r.alignment, 0.5, 1e-6, 0.01, z);
            let law = asymptotic_shift(r, &s);
            let bulk = bulk_term(&s, r.kind).unwrap();
            let scale = if r.oscillates() {
                // compare at the envelope scale
                let quarter = s.with_height(z + std::f64::consts::FRAC_PI_4).unwrap();
                law.abs().max(asymptotic_shift(r, &quarter).abs())
            } else {
                law.abs()
            };
            assert!((law - bulk).abs() < tol * scale, "{} z={z}: {law} vs {bulk}", r.label());
        };
        check(regime(Resonant, ZZ, NonRetarded, Dense), 0.01, 1e-3);
        check(regime(Resonant, ZX, NonRetarded, Dense), 0.01, 1e-3);
        check(regime(OffResonant, ZZ, NonRetarded, Dense), 0.005, 1e-2);
        check(regime(OffResonant, ZX, NonRetarded, Dense), 0.005, 1e-2);
        check(regime(Resonant, ZZ, Retarded, Dense), 50.0, 1e-3);
        check(regime(Resonant, ZX, Retarded, Dense), 1000.0, 2e-3);
        check(regime(OffResonant, ZZ, Retarded, Dense), 20.0, 0.02);
        check(regime(OffResonant, ZX, Retarded, Dense), 40.0, 0.02);
    }

    #[test]
    fn full_closed_form_limits() {
        for (al, r) in [(ZZ, regime(Resonant, ZZ, NonRetarded, Dense)), (ZX, regime(Resonant, ZX, NonRetarded, Dense))] {
            for z in [0.04, 0.02, 0.01] {
                let s = sys(al, 0.5, 1e-6, 0.01, z);
                let ratio = full_closed_form(al, &s).unwrap() / asymptotic_shift(r, &s);
                assert!((ratio - 1.0).abs() < 4.0 * z * z, "{al:?} z={z}: {ratio}");
            }
        }
    }

    #[test]
    fn retarded_envelope_amplitude_at_thirty() {
        // peak nearest z = 30 of the exact bulk against the leading law's amplitude
        let r = regime(Resonant, ZZ, Retarded, Dense);
        let mut best: (f64, f64) = (0.0, 0.0);
        let mut z = 29.0;
        while z < 31.0 {
            let v = full_closed_form(ZZ, &sys(ZZ, 0.5, 1e-6, 0.01, z)).unwrap().abs();
            if v > best.1 {
                best = (z, v);
            }
            z += 1e-3;
        }
        let s = sys(ZZ, 0.5, 1e-6, 0.01, best.0);
        let amplitude = asymptotic_shift(r, &s).abs() / (2.0 * best.0).sin().abs();
        assert!(rel(best.1, amplitude) < 0.05);
    }

    #[test]
    fn retarded_laws_have_period_pi() {
        for r in Regime::all().into_iter().filter(Regime::oscillates) {
            let f = |z: f64| asymptotic_shift(r, &sys(r.alignment, 0.5, 1e-6, 0.01, z));
            let mut crossings = Vec::new();
            let mut z = 10.0;
            while z < 30.0 {
                let (lo, hi) = (f(z), f(z + 1e-3));
                if lo.signum() != hi.signum() {
                    crossings.push(z);
                }
                z += 1e-3;
            }
            for w in crossings.windows(2) {
                assert!((w[1] - w[0] - std::f64::consts::FRAC_PI_2).abs() < 3e-3, "{}", r.label());
            }
            assert!(crossings.len() >= 12);
        }
    }
}
