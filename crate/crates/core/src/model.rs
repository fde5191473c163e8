//! Dimensionless physical inputs.
//!
//! Lengths are multiplied by the test-atom wavenumber `k0`, frequencies are
//! divided by the test-atom transition frequency and shifts are reported in
//! units of the free-space linewidth `gamma0`. Nothing downstream sees a
//! dimensionful quantity.

use crate::error::{CpError, Result};
use crate::scalar::{dot, norm, Real, Vec3};

/// Smallest accepted `|1 - mu|`; the perturbative treatment needs a detuned array.
pub const MIN_DETUNING: f64 = 1e-3;
/// Upper bound on `rho = gamma0 / omega0`.
pub const MAX_RHO: f64 = 0.1;
/// Accepted deviation of a dipole orientation from unit norm.
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    /// Array transition frequency over test-atom transition frequency.
    pub mu: T,
    /// Test-atom linewidth over its transition frequency.
    pub rho: T,
    pub test_dipole: Vec3<T>,
    pub array_dipole: Vec3<T>,
}

impl<T: Real> ModelParams<T> {
    pub fn new(mu: T, rho: T, test_dipole: Vec3<T>, array_dipole: Vec3<T>) -> Self {
        Self { mu, rho, test_dipole, array_dipole }
    }

    /// Test dipole along z, array dipoles along z.
    pub fn zz(mu: T, rho: T) -> Self {
        Self::new(mu, rho, unit_z(), unit_z())
    }

    /// Test dipole along z, array dipoles along x.
    pub fn zx(mu: T, rho: T) -> Self {
        Self::new(mu, rho, unit_z(), unit_x())
    }

    /// `delta / omega0 = 1 - mu`.
    pub fn detuning(&self) -> T {
        T::one() - self.mu
    }

    /// Prefactor of the resonant pair term, `9 rho mu / (8 (1-mu)(1+mu))`.
    pub fn resonant_prefactor(&self) -> T {
        T::lit(9.0) * self.rho * self.mu / (T::lit(8.0) * self.detuning() * (T::one() + self.mu))
    }

    /// Prefactor of the off-resonant pair integral, `9 rho mu / (8 pi)`.
    pub fn offresonant_prefactor(&self) -> T {
        T::lit(9.0) * self.rho * self.mu / (T::lit(8.0) * T::PI())
    }

    pub fn orientation(&self) -> Orientation {
        Orientation::classify(&self.test_dipole, &self.array_dipole)
    }
}

/// Dipole configurations with dedicated fast paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Both dipoles along z.
    ZZ,
    /// Test dipole along z, array dipoles along x.
    ZX,
    General,
}

impl Orientation {
    pub fn classify<T: Real>(test: &Vec3<T>, array: &Vec3<T>) -> Self {
        let along = |v: &Vec3<T>, axis: usize| {
            (0..3).all(|i| if i == axis { v[i].abs() == T::one() } else { v[i] == T::zero() })
        };
        match (along(test, 2), along(array, 2), along(array, 0)) {
            (true, true, _) => Orientation::ZZ,
            (true, _, true) => Orientation::ZX,
            _ => Orientation::General,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Orientation::ZZ => "zz",
            Orientation::ZX => "zx",
            Orientation::General => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec<T> {
    /// `k0 * a`.
    pub a_tilde: T,
    /// Sites run over `-M..=M` in both directions.
    pub half_extent: u64,
}

impl<T: Real> LatticeSpec<T> {
    pub fn new(a_tilde: T, half_extent: u64) -> Self {
        Self { a_tilde, half_extent }
    }

    /// Lattice with indices `-sqrt(N)/2 ..= sqrt(N)/2`, i.e. `M = floor(sqrt(N)/2)`.
    pub fn from_atom_count(a_tilde: T, atoms: u64) -> Self {
        let half = ((atoms as f64).sqrt() / 2.0).floor() as u64;
        Self::new(a_tilde, half)
    }

    /// `(2M + 1)^2`.
    pub fn site_count(&self) -> u128 {
        let side = 2 * self.half_extent as u128 + 1;
        side * side
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry<T> {
    /// `k0 * z`, height of the test atom above the array plane.
    pub z_tilde: T,
}

impl<T: Real> Geometry<T> {
    pub fn new(z_tilde: T) -> Self {
        Self { z_tilde }
    }
}

/// A parameter bundle that passed [`validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct System<T> {
    params: ModelParams<T>,
    lattice: LatticeSpec<T>,
    geom: Geometry<T>,
}

impl<T: Real> System<T> {
    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    pub fn lattice(&self) -> &LatticeSpec<T> {
        &self.lattice
    }

    pub fn geometry(&self) -> &Geometry<T> {
        &self.geom
    }

    pub fn z(&self) -> T {
        self.geom.z_tilde
    }

    pub fn a(&self) -> T {
        self.lattice.a_tilde
    }

    pub fn into_parts(self) -> (ModelParams<T>, LatticeSpec<T>, Geometry<T>) {
        (self.params, self.lattice, self.geom)
    }

    /// Same system at a different height.
    pub fn with_height(&self, z_tilde: T) -> Result<Self> {
        validate(self.params, self.lattice, Geometry::new(z_tilde))
    }

    /// Same system with a different half extent.
    pub fn with_half_extent(&self, half_extent: u64) -> Self {
        Self { lattice: LatticeSpec::new(self.lattice.a_tilde, half_extent), ..*self }
    }
}

/// Checks every invariant of the three input types and bundles them.
pub fn validate<T: Real>(
    params: ModelParams<T>,
    lattice: LatticeSpec<T>,
    geom: Geometry<T>,
) -> Result<System<T>> {
    let finite_positive = |what: &'static str, v: T| {
        if !v.is_finite() {
            Err(CpError::InvalidParameter { what, value: v.as_f64() })
        } else if v <= T::zero() {
            Err(CpError::NonPositiveLength { what, value: v.as_f64() })
        } else {
            Ok(())
        }
    };
    finite_positive("z_tilde", geom.z_tilde)?;
    finite_positive("a_tilde", lattice.a_tilde)?;

    if !params.mu.is_finite() || params.mu <= T::zero() {
        return Err(CpError::InvalidParameter { what: "mu", value: params.mu.as_f64() });
    }
    let detuning = params.detuning().abs();
    if detuning < T::lit(MIN_DETUNING) {
        return Err(CpError::DetuningTooSmall { detuning: detuning.as_f64(), limit: MIN_DETUNING });
    }
    if !(params.rho > T::zero() && params.rho < T::lit(MAX_RHO)) {
        return Err(CpError::WeakCouplingViolated { rho: params.rho.as_f64(), limit: MAX_RHO });
    }
    for (which, d) in [("test", &params.test_dipole), ("array", &params.array_dipole)] {
        let n = norm(d);
        if !n.is_finite() || (n - T::one()).abs() > T::lit(UNIT_TOLERANCE) {
            return Err(CpError::NonUnitDipole { which, norm: n.as_f64() });
        }
    }
    Ok(System { params, lattice, geom })
}

pub fn unit_x<T: Real>() -> Vec3<T> {
    [T::one(), T::zero(), T::zero()]
}

pub fn unit_y<T: Real>() -> Vec3<T> {
    [T::zero(), T::one(), T::zero()]
}

pub fn unit_z<T: Real>() -> Vec3<T> {
    [T::zero(), T::zero(), T::one()]
}

/// Normalizes `v`; used by front ends accepting arbitrary orientations.
pub fn normalized<T: Real>(v: Vec3<T>) -> Vec3<T> {
    let n = dot(&v, &v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}
