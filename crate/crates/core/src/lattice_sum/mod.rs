//! Direct summation of the pair shifts over the finite square lattice.
//!
//! Sites are visited shell by shell (`max(|n_x|, |n_y|) = n`), each shell
//! reduced with compensated arithmetic, and shells combined in increasing
//! order. Shells run in parallel but the reduction order is fixed, so the
//! result is bit-identical for any thread count.
//!
//! Parallel (`zz`) and orthogonal (`zx`) configurations depend on the site
//! only through `n_x² + n_y²` (the latter after symmetrizing `x ↔ y`), so a
//! shell needs one octant. Other orientations use a quadrant when the
//! coupling is even under both in-plane reflections and the full shell
//! otherwise.

mod hot;
mod moments;
mod pair;
mod table;

use std::any::Any;

use num_complex::Complex;
use rayon::prelude::*;

pub use moments::{OffResonantMoments, LAGUERRE_SWITCH};
pub use pair::{offresonant_kernel, resonant_brackets, resonant_kernel, resonant_orthogonal, resonant_zz};

use crate::compensated::{CompensatedSum, LaneSum};
use crate::error::{CpError, Result};
use crate::greens::pair_coupling;
use crate::model::{ModelParams, Orientation, System};
use crate::quadrature::{integrate, Tolerance};
use crate::scalar::{dot, Real, Vec3};
use table::RadialTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftKind {
    Resonant,
    OffResonant,
}

impl ShiftKind {
    pub const BOTH: [ShiftKind; 2] = [ShiftKind::Resonant, ShiftKind::OffResonant];

    pub fn label(self) -> &'static str {
        match self {
            ShiftKind::Resonant => "resonant",
            ShiftKind::OffResonant => "off_resonant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSum<T> {
    pub value: T,
    pub terms_summed: u128,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftResult<T> {
    /// Resonant shift in units of the free-space linewidth.
    pub resonant: T,
    pub off_resonant: T,
    pub terms_summed: u128,
}

/// Displacement from array site `(x, y, 0)` to the test atom at `(0, 0, z)`.
fn displacement<T: Real>(x: T, y: T, z: T) -> Vec3<T> {
    [-x, -y, z]
}

fn projections<T: Real>(p: &ModelParams<T>, v: &Vec3<T>) -> (T, T, T) {
    let r2 = dot(v, v);
    let d = dot(&p.test_dipole, &p.array_dipole);
    let q = dot(&p.test_dipole, v) * dot(&p.array_dipole, v) / r2;
    (r2.sqrt(), d, q)
}

fn site_position<T: Real>(nx: i64, ny: i64, sys: &System<T>) -> (T, T) {
    (T::from_int(nx) * sys.a(), T::from_int(ny) * sys.a())
}

/// Resonant contribution of site `(n_x, n_y)`.
pub fn resonant_pair_term<T: Real>(nx: i64, ny: i64, sys: &System<T>) -> T {
    let p = sys.params();
    let (x, y) = site_position(nx, ny, sys);
    let z = sys.z();
    let k = p.resonant_prefactor();
    match p.orientation() {
        Orientation::ZZ => k * resonant_zz(x * x + y * y + z * z, z * z),
        Orientation::ZX => {
            let r2 = x * x + y * y + z * z;
            let q = z * x / r2;
            k * q * q * resonant_orthogonal(r2)
        }
        Orientation::General => {
            let v = displacement(x, y, z);
            let g = pair_coupling(&p.test_dipole, &p.array_dipole, &v, Complex::new(T::one(), T::zero()))
                .expect("validated height keeps every site off the test atom");
            k * (g * g).re
        }
    }
}

/// Off-resonant contribution of site `(n_x, n_y)`, evaluated from the
/// closed-form frequency moments.
pub fn offresonant_pair_term<T: Real>(nx: i64, ny: i64, sys: &System<T>) -> Result<T> {
    let moments = OffResonantMoments::new(sys.params().mu);
    Ok(offresonant_site(nx, ny, sys, &moments))
}

fn offresonant_site<T: Real>(nx: i64, ny: i64, sys: &System<T>, moments: &OffResonantMoments<T>) -> T {
    let p = sys.params();
    let (x, y) = site_position(nx, ny, sys);
    let v = displacement(x, y, sys.z());
    let (r, d, q) = projections(p, &v);
    p.offresonant_prefactor() * offresonant_kernel(r, d, q, q * q, &moments.at(r))
}

/// Off-resonant contribution of one site by adaptive quadrature over the
/// imaginary frequency, split as `[0, 1] ∪ [1, ∞)` with `ξ = 1/t` on the
/// tail. Reference path for the moment evaluation.
pub fn offresonant_pair_term_quadrature<T: Real>(nx: i64, ny: i64, sys: &System<T>, tol: Tolerance) -> Result<T> {
    let p = sys.params();
    let (x, y) = site_position(nx, ny, sys);
    let v = displacement(x, y, sys.z());
    let (r, d, q) = projections(p, &v);
    let mu2 = p.mu * p.mu;
    let integrand = |xi: T| {
        let u = xi * r;
        let bracket = (u * u + u + T::one()) * d - (u * u + T::lit(3.0) * u + T::lit(3.0)) * q;
        let w = T::one() / ((xi * xi + T::one()) * (xi * xi + mu2));
        w * (-(u + u)).exp() * bracket * bracket
    };
    let head = integrate(integrand, T::zero(), T::one(), tol)?;
    let tail = integrate(|t: T| integrand(T::one() / t) / (t * t), T::zero(), T::one(), tol)?;
    let r2 = r * r;
    Ok(p.offresonant_prefactor() * (head.value + tail.value) / (r2 * r2 * r2))
}

pub fn pair_term<T: Real>(kind: ShiftKind, nx: i64, ny: i64, sys: &System<T>) -> Result<T> {
    match kind {
        ShiftKind::Resonant => Ok(resonant_pair_term(nx, ny, sys)),
        ShiftKind::OffResonant => offresonant_pair_term(nx, ny, sys),
    }
}

/// In-plane reflection symmetries of the squared coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reflections {
    pub x: bool,
    pub y: bool,
}

impl Reflections {
    /// `q = vᵀ S v / r²` with `S = sym(ê₀ ê_nᵀ)`; the squared coupling is even in
    /// `x` if `S` has no `x`-mixing entries, or if `d = 0` and `S` couples
    /// only `x` to the other axes (then `q` is odd and only `q²` enters).
    pub fn of<T: Real>(p: &ModelParams<T>) -> Self {
        let (a, b) = (&p.test_dipole, &p.array_dipole);
        let half = T::lit(0.5);
        let s = |i: usize, j: usize| (a[i] * b[j] + a[j] * b[i]) * half;
        let zero = T::zero();
        let even = |axis: usize| {
            let others: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
            let (o1, o2) = (others[0], others[1]);
            let unmixed = s(axis, o1) == zero && s(axis, o2) == zero;
            let only_mixed = s(axis, axis) == zero && s(o1, o1) == zero && s(o2, o2) == zero && s(o1, o2) == zero;
            unmixed || only_mixed
        };
        Self { x: even(0), y: even(1) }
    }
}

/// How the shells of a given configuration are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Enumeration {
    Octant,
    Quadrant,
    Full,
}

fn enumeration<T: Real>(p: &ModelParams<T>) -> Enumeration {
    match p.orientation() {
        Orientation::ZZ | Orientation::ZX => Enumeration::Octant,
        Orientation::General => {
            let r = Reflections::of(p);
            if r.x && r.y {
                Enumeration::Quadrant
            } else {
                Enumeration::Full
            }
        }
    }
}

/// Shared state for one summation.
struct Context<T> {
    moments: Option<OffResonantMoments<T>>,
    /// Off-resonant octant kernel as a function of `r²` (weight removed).
    table: Option<RadialTable<T>>,
}

/// Off-resonant octant kernel at distance² `r2` divided by its orientation
/// weight: 1 for `zz`, `ρ²` for `zx` (so the origin of `zx` stays exactly 0).
fn offresonant_radial<T: Real>(sys: &System<T>, r2: T, moments: &OffResonantMoments<T>) -> T {
    let z2 = sys.z() * sys.z();
    let r = r2.sqrt();
    let j = moments.at(r);
    if sys.params().orientation() == Orientation::ZZ {
        let q = z2 / r2;
        offresonant_kernel(r, T::one(), q, q * q, &j)
    } else {
        offresonant_kernel(r, T::zero(), T::zero(), z2 / (T::lit(2.0) * r2 * r2), &j)
    }
}

fn new_context<T: Real>(kind: ShiftKind, sys: &System<T>) -> Context<T> {
    if kind == ShiftKind::Resonant {
        return Context { moments: None, table: None };
    }
    let moments = OffResonantMoments::new(sys.params().mu);
    let table = (enumeration(sys.params()) == Enumeration::Octant && sys.lattice().half_extent > 0).then(|| {
        let z2 = sys.z() * sys.z();
        let m = T::lit(sys.lattice().half_extent as f64);
        let hi = z2 + T::lit(2.0) * sys.a() * sys.a() * m * m;
        RadialTable::new(|r2| offresonant_radial(sys, r2, &moments), z2, hi)
    });
    Context { moments: Some(moments), table }
}

/// Octant term as a function of `n_x² + n_y²`, without the overall prefactor.
/// The off-resonant origin is evaluated exactly, the rest from the table.
fn octant_term<T: Real>(kind: ShiftKind, sys: &System<T>, n2: u64, ctx: &Context<T>) -> T {
    let a = sys.a();
    let z = sys.z();
    let z2 = z * z;
    let rho2 = a * a * T::lit(n2 as f64);
    let r2 = rho2 + z2;
    let zz = sys.params().orientation() == Orientation::ZZ;
    match kind {
        ShiftKind::Resonant => {
            if zz {
                resonant_zz(r2, z2)
            } else {
                // x ↔ y symmetrized: ⟨q²⟩ = z² ρ² / (2 r⁴)
                resonant_orthogonal(r2) * z2 * rho2 / (T::lit(2.0) * r2 * r2)
            }
        }
        ShiftKind::OffResonant => {
            let radial = match (&ctx.table, n2) {
                (Some(table), 1..) => table.eval(r2),
                _ => offresonant_radial(sys, r2, ctx.moments.as_ref().expect("moments prepared")),
            };
            if zz {
                radial
            } else {
                rho2 * radial
            }
        }
    }
}

/// `Σ_{0<j<n}` of the resonant octant term on shell `n`: the hot loop.
fn resonant_octant_interior<T: Real>(sys: &System<T>, n: u64) -> CompensatedSum<T> {
    let a2 = sys.a() * sys.a();
    let z2 = sys.z() * sys.z();
    let parallel = sys.params().orientation() == Orientation::ZZ;
    let term = |j: u64| {
        let rho2 = a2 * T::lit((n * n + j * j) as f64);
        let r2 = rho2 + z2;
        if parallel {
            resonant_zz(r2, z2)
        } else {
            resonant_orthogonal(r2) * z2 * rho2 / (T::lit(2.0) * r2 * r2)
        }
    };
    if let Some(sys64) = (sys as &dyn Any).downcast_ref::<System<f64>>() {
        let shell = hot::OctantShell { a2: sys64.a() * sys64.a(), z2: sys64.z() * sys64.z(), n, parallel };
        let term64 = |j: u64| term(j).as_f64();
        let acc = hot::octant_interior(&shell, &term64);
        let (s, e) = acc.parts();
        let mut out = CompensatedSum::new();
        out.add(T::lit(s));
        out.add(T::lit(e));
        return out;
    }
    let mut acc = CompensatedSum::new();
    for j in 1..n {
        acc.add(term(j));
    }
    acc
}

/// `Σ_{0<j<n}` of the off-resonant octant term on shell `n`, from the table.
fn offresonant_octant_interior<T: Real>(sys: &System<T>, n: u64, ctx: &Context<T>) -> CompensatedSum<T> {
    const LANES: usize = 16;
    let table = ctx.table.as_ref().expect("table prepared for octant sums");
    let a2 = sys.a() * sys.a();
    let z2 = sys.z() * sys.z();
    let zz = sys.params().orientation() == Orientation::ZZ;
    let mut lanes = LaneSum::<T, LANES>::default();
    let mut j = 1;
    while j + LANES as u64 <= n {
        let rho2: [T; LANES] = std::array::from_fn(|l| a2 * T::lit((n * n + (j + l as u64).pow(2)) as f64));
        let r2: [T; LANES] = std::array::from_fn(|l| rho2[l] + z2);
        let radial = table.eval_lanes(&r2);
        let terms: [T; LANES] = std::array::from_fn(|l| if zz { radial[l] } else { rho2[l] * radial[l] });
        lanes.add_chunk(&terms);
        j += LANES as u64;
    }
    let mut acc = lanes.finish();
    for j in j..n {
        acc.add(octant_term(ShiftKind::OffResonant, sys, n * n + j * j, ctx));
    }
    acc
}

fn general_term<T: Real>(kind: ShiftKind, sys: &System<T>, nx: i64, ny: i64, ctx: &Context<T>) -> T {
    match kind {
        ShiftKind::Resonant => resonant_pair_term(nx, ny, sys),
        ShiftKind::OffResonant => offresonant_site(nx, ny, sys, ctx.moments.as_ref().expect("moments prepared")),
    }
}

/// Sum over shell `n`; octant terms still lack the prefactor (see [`prefactor`]).
fn shell_sum<T: Real>(kind: ShiftKind, sys: &System<T>, n: u64, ctx: &Context<T>) -> CompensatedSum<T> {
    let mut acc = CompensatedSum::new();
    if n == 0 {
        acc.add(match enumeration(sys.params()) {
            Enumeration::Octant => octant_term(kind, sys, 0, ctx),
            _ => general_term(kind, sys, 0, 0, ctx),
        });
        return acc;
    }
    match enumeration(sys.params()) {
        Enumeration::Octant => {
            let n2 = n * n;
            let four = T::lit(4.0);
            acc.add(four * octant_term(kind, sys, n2, ctx));
            acc.add(four * octant_term(kind, sys, 2 * n2, ctx));
            let interior = match kind {
                ShiftKind::Resonant => resonant_octant_interior(sys, n),
                ShiftKind::OffResonant => offresonant_octant_interior(sys, n, ctx),
            };
            acc.merge(&interior.scaled(T::lit(8.0)));
        }
        Enumeration::Quadrant => {
            let n = n as i64;
            let (two, four) = (T::lit(2.0), T::lit(4.0));
            for j in 0..=n {
                let w = if j == 0 { two } else { four };
                acc.add(w * general_term(kind, sys, n, j, ctx));
            }
            for j in 0..n {
                let w = if j == 0 { two } else { four };
                acc.add(w * general_term(kind, sys, j, n, ctx));
            }
        }
        Enumeration::Full => {
            let n = n as i64;
            for j in -n..=n {
                acc.add(general_term(kind, sys, n, j, ctx));
                acc.add(general_term(kind, sys, -n, j, ctx));
            }
            for i in (-n + 1)..n {
                acc.add(general_term(kind, sys, i, n, ctx));
                acc.add(general_term(kind, sys, i, -n, ctx));
            }
        }
    }
    acc
}

fn prefactor<T: Real>(kind: ShiftKind, sys: &System<T>) -> T {
    match (kind, enumeration(sys.params())) {
        (_, Enumeration::Quadrant | Enumeration::Full) => T::one(),
        (ShiftKind::Resonant, Enumeration::Octant) => sys.params().resonant_prefactor(),
        (ShiftKind::OffResonant, Enumeration::Octant) => sys.params().offresonant_prefactor(),
    }
}

/// Compensated sums of every shell `0..=M`, in shell order.
fn shell_partials<T: Real>(sys: &System<T>, kind: ShiftKind) -> Vec<CompensatedSum<T>> {
    let m = sys.lattice().half_extent;
    let ctx = new_context(kind, sys);
    (0..=m).into_par_iter().map(|n| shell_sum(kind, sys, n, &ctx)).collect()
}

/// Contribution of each shell `n = 0..=M`.
pub fn shell_sums<T: Real>(sys: &System<T>, kind: ShiftKind) -> Vec<T> {
    let pre = prefactor(kind, sys);
    shell_partials(sys, kind).iter().map(|s| s.value() * pre).collect()
}

/// Total shift from all `(2M+1)²` sites.
pub fn sum_lattice<T: Real>(sys: &System<T>, kind: ShiftKind) -> Result<LatticeSum<T>> {
    let mut total = CompensatedSum::new();
    for partial in shell_partials(sys, kind) {
        total.merge(&partial);
    }
    let value = total.value() * prefactor(kind, sys);
    if !value.is_finite() {
        return Err(CpError::QuadratureFailure { estimate: value.as_f64(), error: f64::NAN, evaluations: 0 });
    }
    Ok(LatticeSum { value, terms_summed: sys.lattice().site_count() })
}

/// Both shift components.
pub fn shift<T: Real>(sys: &System<T>) -> Result<ShiftResult<T>> {
    let res = sum_lattice(sys, ShiftKind::Resonant)?;
    let off = sum_lattice(sys, ShiftKind::OffResonant)?;
    Ok(ShiftResult { resonant: res.value, off_resonant: off.value, terms_summed: res.terms_summed })
}

/// Plain row-major loop over every site; reference for the symmetric paths.
pub fn naive_sum<T: Real>(sys: &System<T>, kind: ShiftKind) -> Result<T> {
    let m = sys.lattice().half_extent as i64;
    let mut acc = CompensatedSum::new();
    for nx in -m..=m {
        for ny in -m..=m {
            acc.add(pair_term(kind, nx, ny, sys)?);
        }
    }
    Ok(acc.value())
}
