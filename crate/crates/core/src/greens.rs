//! Free-space dyadic Green tensor in the normalization `ĝ = (4π/k) G`,
//! evaluated at dimensionless distance `r̃` and complex frequency `k̃`
//! (`k̃ = 1` on resonance, `k̃ = iξ̃` after Wick rotation).

use num_complex::Complex;

use crate::error::{CpError, Result};
use crate::scalar::{dot, norm, Real, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicTensor<T> {
    pub entries: [[Complex<T>; 3]; 3],
}

impl<T: Real> DyadicTensor<T> {
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row][col]
    }

    /// `aᵀ ĝ b`.
    pub fn project(&self, a: &Vec3<T>, b: &Vec3<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, row) in self.entries.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                acc = acc + *g * (a[i] * b[j]);
            }
        }
        acc
    }
}

/// Scalar coefficients `(A, B)` with `ĝ = A δ + B n nᵀ`.
pub fn dyadic_coefficients<T: Real>(r_tilde: T, k: Complex<T>) -> (Complex<T>, Complex<T>) {
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let kr = k * r_tilde;
    let inv_kr2 = (kr * kr).inv();
    let phase = (i * kr).exp() / r_tilde;
    let a = phase * (one + (i * kr - one) * inv_kr2);
    let b = phase * (-one + (one * T::lit(3.0) - i * kr * T::lit(3.0)) * inv_kr2);
    (a, b)
}

/// `ĝ(n, r̃, k̃)`; `direction` must be a unit vector.
pub fn green_dyadic<T: Real>(direction: &Vec3<T>, r_tilde: T, k: Complex<T>) -> Result<DyadicTensor<T>> {
    if !(r_tilde > T::zero()) {
        return Err(CpError::ZeroSeparation);
    }
    let (a, b) = dyadic_coefficients(r_tilde, k);
    let zero = Complex::new(T::zero(), T::zero());
    let mut entries = [[zero; 3]; 3];
    for (row, n_row) in entries.iter_mut().zip(direction.iter()) {
        for (e, n_col) in row.iter_mut().zip(direction.iter()) {
            *e = b * (*n_row * *n_col);
        }
    }
    for (d, row) in entries.iter_mut().enumerate() {
        row[d] = row[d] + a;
    }
    Ok(DyadicTensor { entries })
}

/// `ê₀ · ĝ(v) · ê_n` for displacement `v` from the array atom to the test atom.
pub fn pair_coupling<T: Real>(
    test_dipole: &Vec3<T>,
    array_dipole: &Vec3<T>,
    displacement: &Vec3<T>,
    k: Complex<T>,
) -> Result<Complex<T>> {
    let r = norm(displacement);
    if !(r > T::zero()) {
        return Err(CpError::ZeroSeparation);
    }
    let (a, b) = dyadic_coefficients(r, k);
    let d = dot(test_dipole, array_dipole);
    let q = dot(test_dipole, displacement) * dot(array_dipole, displacement) / (r * r);
    Ok(a * d + b * q)
}
