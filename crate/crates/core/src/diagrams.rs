//! The twelve fourth-order exchange processes and their energy denominators.
//!
//! Frequencies are in units of the test-atom transition frequency, so the
//! test atom sits at 1 and an array atom at `mu`. Everything here is generic
//! over a [`Field`], which lets the partial-fraction collapse be checked both
//! in floating point and in exact rational arithmetic.

use std::fmt;
use std::ops::Neg;

use num_traits::{Num, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CpError, Result};
use crate::model::ModelParams;
use crate::scalar::Real;

/// Arithmetic needed by the denominator algebra.
pub trait Field: Num + Neg<Output = Self> + Clone + PartialEq {}
impl<F: Num + Neg<Output = F> + Clone + PartialEq> Field for F {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProcessId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
}

impl ProcessId {
    pub const ALL: [ProcessId; 12] = [
        ProcessId::I,
        ProcessId::II,
        ProcessId::III,
        ProcessId::IV,
        ProcessId::V,
        ProcessId::VI,
        ProcessId::VII,
        ProcessId::VIII,
        ProcessId::IX,
        ProcessId::X,
        ProcessId::XI,
        ProcessId::XII,
    ];

    pub fn label(self) -> &'static str {
        use ProcessId::*;
        match self {
            I => "I",
            II => "II",
            III => "III",
            IV => "IV",
            V => "V",
            VI => "VI",
            VII => "VII",
            VIII => "VIII",
            IX => "IX",
            X => "X",
            XI => "XI",
            XII => "XII",
        }
    }

    /// Sign and factor indices into [`Factors::all`].
    fn recipe(self) -> (bool, [usize; 3]) {
        use ProcessId::*;
        // 0: 1-w  1: 1-mu  2: wp+mu  3: 1-wp  4: 1-mu-w-wp  5: w+wp  6: mu+w  7: mu+wp
        match self {
            I => (true, [0, 1, 2]),
            II => (false, [0, 1, 3]),
            III => (false, [0, 4, 3]),
            IV => (false, [0, 5, 6]),
            V => (true, [0, 4, 6]),
            VI => (true, [6, 4, 0]),
            VII => (false, [6, 4, 7]),
            VIII => (false, [6, 1, 7]),
            IX => (true, [6, 1, 3]),
            X => (false, [6, 5, 0]),
            XI => (false, [7, 5, 0]),
            XII => (false, [6, 5, 3]),
        }
    }

    /// Whether the denominator carries an explicit `(1 - mu)` factor.
    pub fn carries_detuning(self) -> bool {
        self.recipe().1.contains(&1)
    }

    /// Whether the denominator carries an overall minus sign.
    pub fn is_negative(self) -> bool {
        self.recipe().0
    }
}

impl fmt::Display for ProcessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The eight distinct linear factors at one `(w, wp, mu)` point, each
/// computed once so every denominator sees identical rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct Factors<F> {
    all: [F; 8],
}

impl<F: Field> Factors<F> {
    pub fn new(w: F, wp: F, mu: F) -> Self {
        let one = F::one();
        Self {
            all: [
                one.clone() - w.clone(),
                one.clone() - mu.clone(),
                wp.clone() + mu.clone(),
                one.clone() - wp.clone(),
                one - mu.clone() - w.clone() - wp.clone(),
                w.clone() + wp.clone(),
                mu.clone() + w,
                mu + wp,
            ],
        }
    }

    pub fn as_slice(&self) -> &[F] {
        &self.all
    }

    pub fn denominator(&self, p: ProcessId) -> F {
        let (neg, [a, b, c]) = p.recipe();
        let d = self.all[a].clone() * self.all[b].clone() * self.all[c].clone();
        if neg {
            -d
        } else {
            d
        }
    }
}

/// `D_p(w, wp)`; zero exactly on a pole set.
pub fn denominator_in<F: Field>(p: ProcessId, w: F, wp: F, mu: F) -> F {
    Factors::new(w, wp, mu).denominator(p)
}

pub fn denominator<T: Real>(p: ProcessId, w: T, wp: T, params: &ModelParams<T>) -> T {
    denominator_in(p, w, wp, params.mu)
}

fn inverse_sum<F: Field>(factors: &Factors<F>, filter: impl Fn(ProcessId) -> bool) -> Result<F> {
    let mut acc = F::zero();
    for p in ProcessId::ALL.into_iter().filter(|p| filter(*p)) {
        let d = factors.denominator(p);
        if d == F::zero() {
            return Err(CpError::PoleHit { process: p.label() });
        }
        acc = acc + F::one() / d;
    }
    Ok(acc)
}

fn half<F: Field>(x: F) -> F {
    x / (F::one() + F::one())
}

/// `½ [Σ_p 1/D_p(w, wp) + Σ_p 1/D_p(wp, w)]` restricted to processes selected by `filter`.
pub fn symmetrized_partial_sum<F: Field>(
    w: F,
    wp: F,
    mu: F,
    filter: impl Fn(ProcessId) -> bool + Copy,
) -> Result<F> {
    let fwd = inverse_sum(&Factors::new(w.clone(), wp.clone(), mu.clone()), filter)?;
    let rev = inverse_sum(&Factors::new(wp, w, mu), filter)?;
    Ok(half(fwd + rev))
}

/// Symmetrized sum of all twelve inverse denominators, exact field arithmetic.
pub fn symmetrized_inverse_sum_in<F: Field>(w: F, wp: F, mu: F) -> Result<F> {
    symmetrized_partial_sum(w, wp, mu, |_| true)
}

pub fn symmetrized_inverse_sum<T: Real>(w: T, wp: T, params: &ModelParams<T>) -> Result<T> {
    symmetrized_inverse_sum_in(w, wp, params.mu)
}

/// One ordering of the collapsed form,
/// `4(w−δ)/[δ(w−1)(w+mu)] · [1/(w+wp) − 1/(w−wp)]` with `δ = 1 − mu`.
fn combined_half<F: Field>(w: F, wp: F, mu: F) -> Result<F> {
    let one = F::one();
    let four = one.clone() + one.clone() + one.clone() + one.clone();
    let delta = one.clone() - mu.clone();
    let lead = delta.clone() * (w.clone() - one) * (w.clone() + mu);
    let plus = w.clone() + wp.clone();
    let minus = w.clone() - wp;
    for (f, label) in [(&lead, "combined:lead"), (&plus, "combined:w+wp"), (&minus, "combined:w-wp")] {
        if *f == F::zero() {
            return Err(CpError::PoleHit { process: label });
        }
    }
    let numer = four * (w - delta);
    Ok(numer.clone() / (lead.clone() * plus) - numer / (lead * minus))
}

pub fn combined_denominator_form_in<F: Field>(w: F, wp: F, mu: F) -> Result<F> {
    let a = combined_half(w.clone(), wp.clone(), mu.clone())?;
    let b = combined_half(wp, w, mu)?;
    Ok(half(a + b))
}

pub fn combined_denominator_form<T: Real>(w: T, wp: T, params: &ModelParams<T>) -> Result<T> {
    combined_denominator_form_in(w, wp, params.mu)
}

/// Random-sampling check of the collapse identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub samples: usize,
    pub seed: u64,
    pub mus: Vec<f64>,
    /// Samples closer than this to any factor's zero set are redrawn.
    pub exclusion: f64,
    /// Test hook: flip the sign of this process's denominator.
    pub corrupt: Option<ProcessId>,
}

impl IdentityCheck {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed, mus: vec![0.25, 0.5, 0.9], exclusion: 1e-6, corrupt: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub samples: usize,
    pub max_rel_error: f64,
    /// `(w, wp, mu)` at the worst sample.
    pub worst: (f64, f64, f64),
}

pub fn verify_identity(check: &IdentityCheck) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(check.seed);
    let mut report = IdentityReport { samples: 0, max_rel_error: 0.0, worst: (0.0, 0.0, 0.0) };
    let corrupt = |p: ProcessId, d: f64| if Some(p) == check.corrupt { -d } else { d };
    for i in 0..check.samples {
        let mu = check.mus[i % check.mus.len()];
        let (w, wp, factors) = loop {
            let w: f64 = rng.gen_range(0.0..2.0);
            let wp: f64 = rng.gen_range(0.0..2.0);
            let f = Factors::new(w, wp, mu);
            let near_pole = f.as_slice().iter().any(|x| x.abs() < check.exclusion)
                || (w - wp).abs() < check.exclusion
                || (w - 1.0).abs() < check.exclusion
                || (wp - 1.0).abs() < check.exclusion;
            if !near_pole {
                break (w, wp, f);
            }
        };
        let rev = Factors::new(wp, w, mu);
        let lhs: f64 = 0.5
            * ProcessId::ALL
                .iter()
                .map(|&p| 1.0 / corrupt(p, factors.denominator(p)) + 1.0 / corrupt(p, rev.denominator(p)))
                .sum::<f64>();
        let rhs = combined_denominator_form_in(w, wp, mu).expect("poles excluded");
        let rel = ((lhs - rhs) / rhs).abs();
        if !(rel <= report.max_rel_error) {
            report.max_rel_error = rel;
            report.worst = (w, wp, mu);
        }
        report.samples += 1;
    }
    report
}

/// Converts an exact field element to `f64` for reporting.
pub fn to_f64<F: ToPrimitive>(x: &F) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qi(n: i64) -> Q {
        q(n, 1)
    }

    #[test]
    fn table_entries() {
        let p = ModelParams::<f64>::zz(0.5, 1e-6);
        assert!((denominator(ProcessId::II, 0.5, 0.3, &p) - 0.175).abs() < 1e-16);
        assert!((denominator(ProcessId::VIII, 0.2, 0.4, &p) - 0.315).abs() < 1e-16);
        assert_eq!(denominator(ProcessId::I, 1.0, 0.77, &p), 0.0);
        assert_eq!(denominator_in(ProcessId::II, q(1, 2), q(3, 10), q(1, 2)), q(7, 40));
    }

    #[test]
    fn sign_pattern() {
        let negative: Vec<_> = ProcessId::ALL.into_iter().filter(|p| p.is_negative()).collect();
        assert_eq!(negative, vec![ProcessId::I, ProcessId::V, ProcessId::VI, ProcessId::IX]);
        // At a point where every factor is positive the sign is the table sign.
        let f = Factors::new(0.1, 0.2, 0.3);
        assert!(f.as_slice().iter().all(|x| *x > 0.0));
        for p in ProcessId::ALL {
            assert_eq!(f.denominator(p) < 0.0, p.is_negative(), "{p}");
        }
    }

    #[test]
    fn identity_at_reference_point() {
        let p = ModelParams::<f64>::zz(0.5, 1e-6);
        let lhs = symmetrized_inverse_sum(0.37, 0.81, &p).unwrap();
        let rhs = combined_denominator_form(0.37, 0.81, &p).unwrap();
        assert!(((lhs - rhs) / rhs).abs() < 1e-12);
        assert!((rhs - 10.060_799_202_220_7).abs() < 1e-11);
    }

    #[test]
    fn identity_is_exact_in_rationals() {
        let points = [
            (q(37, 100), q(81, 100), q(1, 2)),
            (q(3, 7), q(13, 11), q(9, 10)),
            (q(19, 10), q(1, 3), q(1, 4)),
        ];
        for (w, wp, mu) in points {
            assert_eq!(
                symmetrized_inverse_sum_in(w.clone(), wp.clone(), mu.clone()).unwrap(),
                combined_denominator_form_in(w, wp, mu).unwrap()
            );
        }
        let (w, wp, mu) = (q(123_456_789, 98_765_432), q(1, 1_000_003), q(2, 3));
        assert_eq!(
            symmetrized_inverse_sum_in(w.clone(), wp.clone(), mu.clone()).unwrap(),
            combined_denominator_form_in(w, wp, mu).unwrap()
        );
    }

    #[test]
    fn symmetric_under_swap() {
        let p = ModelParams::<f64>::zz(0.25, 1e-6);
        assert_eq!(
            symmetrized_inverse_sum(0.3, 1.7, &p).unwrap(),
            symmetrized_inverse_sum(1.7, 0.3, &p).unwrap()
        );
    }

    #[test]
    fn equal_frequency_limit() {
        let p = ModelParams::<f64>::zz(0.25, 1e-6);
        let at = symmetrized_inverse_sum(0.5, 0.5, &p).unwrap();
        assert!(matches!(combined_denominator_form(0.5, 0.5, &p), Err(CpError::PoleHit { .. })));
        let h = 1e-6;
        let up = combined_denominator_form(0.5 + h, 0.5, &p).unwrap();
        let down = combined_denominator_form(0.5 - h, 0.5, &p).unwrap();
        let limit = 0.5 * (up + down);
        assert!(((limit - at) / at).abs() < 1e-8, "{limit} vs {at}");
        let exact = symmetrized_inverse_sum_in(q(1, 2), q(1, 2), q(1, 4)).unwrap();
        assert!((to_f64(&exact) - at).abs() < 1e-13 * at.abs());
    }

    #[test]
    fn on_shell_residues_agree() {
        let p = ModelParams::<f64>::zz(0.5, 1e-6);
        let h = 1e-4;
        let residue = |f: &dyn Fn(f64) -> f64| 0.5 * h * (f(1.0 + h) - f(1.0 - h));
        let lhs = residue(&|w| symmetrized_inverse_sum(w, 0.3, &p).unwrap());
        let rhs = residue(&|w| combined_denominator_form(w, 0.3, &p).unwrap());
        assert!(lhs.abs() > 1e-3);
        assert!(((lhs - rhs) / rhs).abs() < 1e-8);
    }

    #[test]
    fn detuning_pole_comes_from_detuning_blocks() {
        // The 1/δ residue of the collapsed form is carried entirely by the
        // processes whose denominator contains (1 - mu).
        let (w, wp) = (q(37, 100), q(81, 100));
        let delta = q(1, 1_000_000);
        let mu = qi(1) - delta.clone();
        let blocks = symmetrized_partial_sum(w.clone(), wp.clone(), mu.clone(), ProcessId::carries_detuning)
            .unwrap()
            * delta.clone();
        let full = combined_denominator_form_in(w, wp, mu).unwrap() * delta;
        let (b, f): (f64, f64) = (to_f64(&blocks), to_f64(&full));
        assert!(((b - f) / f).abs() < 1e-5, "{b} vs {f}");
        let blocks_vec: Vec<_> = ProcessId::ALL.into_iter().filter(|p| p.carries_detuning()).collect();
        assert_eq!(blocks_vec, vec![ProcessId::I, ProcessId::II, ProcessId::VIII, ProcessId::IX]);
    }

    #[test]
    fn denominators_are_cubic() {
        // Along a line in (w, wp, mu) the fourth finite difference vanishes
        // exactly and the third does not.
        let start = [q(1, 7), q(2, 9), q(3, 11)];
        let dir = [q(1, 3), q(-2, 5), q(1, 13)];
        for p in ProcessId::ALL {
            let vals: Vec<Q> = (0..5)
                .map(|t| {
                    let at = |i: usize| start[i].clone() + dir[i].clone() * qi(t);
                    denominator_in(p, at(0), at(1), at(2))
                })
                .collect();
            let mut diff = vals;
            let mut order = Vec::new();
            while diff.len() > 1 {
                diff = diff.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
                order.push(diff[0].clone());
            }
            assert_ne!(order[2], qi(0), "{p}");
            assert_eq!(order[3], qi(0), "{p}");
        }
    }

    #[test]
    fn random_identity_check() {
        let report = verify_identity(&IdentityCheck::new(2000, 7));
        assert_eq!(report.samples, 2000);
        assert!(report.max_rel_error < 1e-10, "{report:?}");
    }

    #[test]
    fn corruption_is_detected() {
        let mut check = IdentityCheck::new(200, 1);
        check.corrupt = Some(ProcessId::II);
        assert!(verify_identity(&check).max_rel_error > 1e-3);
    }

    #[test]
    fn single_sample_smoke() {
        let r = verify_identity(&IdentityCheck::new(1, 99));
        assert_eq!(r.samples, 1);
        assert!(r.max_rel_error < 1e-10);
    }
}
