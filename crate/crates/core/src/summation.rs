//! Compensated accumulation with a fixed summation order.

use crate::scalar::Real;

/// Neumaier (improved Kahan) accumulator.
///
/// Results depend only on the order in which terms are added, so sums over
/// the Fermi sea are bit-stable as long as callers keep the (n, λ) ordering.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Real> NeumaierSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Real> FromIterator<T> for NeumaierSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(iter: I) -> T {
    iter.into_iter().collect::<NeumaierSum<T>>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let terms = [1.0f64, 1e100, 1.0, -1e100];
        assert_eq!(terms.iter().copied().sum::<f64>(), 0.0);
        assert_eq!(compensated_sum(terms), 2.0);
    }

    #[test]
    fn harmonic_tail_beats_naive() {
        let n = 1_000_000usize;
        let terms: Vec<f32> = (1..=n).map(|k| 1.0 / k as f32).collect();
        let exact: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
        let naive: f32 = terms.iter().sum();
        let comp = compensated_sum(terms.iter().copied());
        assert!((comp as f64 - exact).abs() < (naive as f64 - exact).abs());
        assert!((comp as f64 - exact).abs() < 1e-5);
    }
}
