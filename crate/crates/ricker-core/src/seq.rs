//! Periodic coefficient sequences.
//!
//! Every parameter of the planar system is a sequence of some period
//! `p >= 1`; a constant is the `p = 1` case. Slot `k` of the backing vector
//! holds the value at times `n ≡ k (mod p)`, counting time from zero.
//! Non-negativity is a property of the *system* parameters, not of sequences
//! in general: derived exponent sequences (`a_n`, `d_n`) are free to be
//! negative, so `PeriodicSeq` only insists on finite values.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A sequence of period `len(values)` over the reals.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSeq {
    values: Vec<f64>,
}

impl PeriodicSeq {
    /// Builds a sequence from one full period of values.
    ///
    /// Rejects empty input and non-finite values. The period is the list
    /// length as given; minimality is not required.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("periodic sequence needs at least one value"));
        }
        for (k, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Domain(alloc::format!(
                    "periodic sequence slot {k} is {v}; values must be finite"
                )));
            }
        }
        Ok(PeriodicSeq { values })
    }

    /// The constant sequence with period 1.
    pub fn constant(v: f64) -> Result<Self> {
        PeriodicSeq::new(vec![v])
    }

    /// Period of the sequence (length of the stored block).
    pub fn period(&self) -> usize {
        self.values.len()
    }

    /// Value at time `n`.
    pub fn eval(&self, n: usize) -> f64 {
        self.values[n % self.values.len()]
    }

    /// One full period of values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest value over one period.
    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest value over one period.
    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Arithmetic mean over one period.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// True when every slot is strictly positive.
    pub fn all_positive(&self) -> bool {
        self.values.iter().all(|&v| v > 0.0)
    }

    /// True when every slot is non-negative.
    pub fn all_non_negative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    /// True when every slot is zero.
    pub fn all_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }
}

/// Least common multiple of a set of periods; the combined period over which
/// any slot-wise expression in the underlying sequences repeats.
pub fn lcm_period(periods: &[usize]) -> Result<usize> {
    if periods.is_empty() {
        return Err(Error::domain("lcm_period needs at least one period"));
    }
    let mut acc = 1usize;
    for &p in periods {
        if p == 0 {
            return Err(Error::domain("period 0 is not a period"));
        }
        acc = num_integer::lcm(acc, p);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(PeriodicSeq::new(vec![]).is_err());
        assert!(PeriodicSeq::new(vec![f64::NAN]).is_err());
        assert!(PeriodicSeq::constant(f64::INFINITY).is_err());
        // Negative values are fine: exponent sequences are signed.
        assert!(PeriodicSeq::new(vec![1.0, -0.5]).is_ok());
    }

    #[test]
    fn eval_wraps_mod_period() {
        let q = PeriodicSeq::new(vec![1.0, 2.0, 4.0]).unwrap();
        assert_eq!(q.period(), 3);
        for n in 0..30 {
            assert_eq!(q.eval(n), q.eval(n + 3));
            assert_eq!(q.eval(n), [1.0, 2.0, 4.0][n % 3]);
        }
    }

    #[test]
    fn lcm_of_periods() {
        assert_eq!(lcm_period(&[1, 1]).unwrap(), 1);
        assert_eq!(lcm_period(&[2, 3]).unwrap(), 6);
        assert_eq!(lcm_period(&[4, 6]).unwrap(), 12);
        assert_eq!(lcm_period(&[2, 2, 4]).unwrap(), 4);
        assert!(lcm_period(&[]).is_err());
        assert!(lcm_period(&[0]).is_err());
    }

    #[test]
    fn summary_stats() {
        let q = PeriodicSeq::new(vec![2.0, 0.1]).unwrap();
        assert_eq!(q.max(), 2.0);
        assert_eq!(q.min(), 0.1);
        assert!((q.mean() - 1.05).abs() < 1e-15);
        assert!(q.all_positive());
        assert!(q.all_non_negative());
        assert!(!q.all_zero());
    }
}
