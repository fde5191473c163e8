//! Error-free-transformation accumulators.

use crate::scalar::Real;

/// `a + b = s + e` exactly.
#[inline(always)]
pub fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Running sum with a separately accumulated rounding error (cascaded TwoSum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompensatedSum<T> {
    sum: T,
    err: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), err: T::zero() }
    }

    #[inline(always)]
    pub fn add(&mut self, x: T) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.err = self.err + e;
    }

    /// Folds in another accumulator, keeping both error terms.
    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.err = self.err + other.err;
    }

    /// Multiplies both parts by `factor`; exact when `factor` is a power of two.
    pub fn scaled(&self, factor: T) -> Self {
        Self { sum: self.sum * factor, err: self.err * factor }
    }

    /// `(sum, accumulated error)`.
    pub fn parts(&self) -> (T, T) {
        (self.sum, self.err)
    }

    pub fn value(&self) -> T {
        self.sum + self.err
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Several independent accumulators fed round-robin, so the inner loop
/// has no serial dependency on a single sum. Lanes are folded in a fixed
/// order, so the result depends only on the input sequence.
#[derive(Debug, Clone, Copy)]
pub struct LaneSum<T, const N: usize> {
    sum: [T; N],
    err: [T; N],
}

impl<T: Real, const N: usize> Default for LaneSum<T, N> {
    fn default() -> Self {
        Self { sum: [T::zero(); N], err: [T::zero(); N] }
    }
}

impl<T: Real, const N: usize> LaneSum<T, N> {
    #[inline(always)]
    pub fn add_chunk(&mut self, xs: &[T; N]) {
        for l in 0..N {
            let (s, e) = two_sum(self.sum[l], xs[l]);
            self.sum[l] = s;
            self.err[l] = self.err[l] + e;
        }
    }

    pub fn finish(&self) -> CompensatedSum<T> {
        let mut acc = CompensatedSum::new();
        for l in 0..N {
            acc.add(self.sum[l]);
        }
        for l in 0..N {
            acc.add(self.err[l]);
        }
        acc
    }
}
