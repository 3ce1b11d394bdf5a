//! Reproducible bifurcation scans of the reduced equation over a grid of
//! initial conditions.
//!
//! A scan fixes `d` and `r_{-1}` and sweeps `r_0` over a grid; each grid value
//! selects an invariant `t_0`, so the sweep moves transversally through the
//! one-parameter family of interval maps. Rows record the orbit tail after a
//! transient, a minimal-period classification of that tail, and the period of
//! the induced odd-chain map for cross-checking.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::semiconj::{compute_t0, detect_cycle, MapConfig, CYCLE_TOL};
use crate::simulate::iterate_reduced;
use crate::system::ReducedParams;
use crate::{Error, Result};

/// Default number of grid points.
pub const DEFAULT_GRID_N: usize = 400;
/// Default transient length before keeping points.
pub const DEFAULT_TRANSIENT: usize = 2000;
/// Default number of kept tail points per row.
pub const DEFAULT_KEEP: usize = 300;
/// Absolute closeness tolerance for tail classification.
pub const CLASSIFY_TOL: f64 = 1e-6;
/// Largest minimal period the classifier reports.
pub const CLASSIFY_MAX_PERIOD: usize = 64;

/// Parameters of one scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub d: f64,
    /// Shared seed value at time -1.
    pub r_m1: f64,
    /// Inclusive sweep range for the time-0 seed.
    pub r0_lo: f64,
    pub r0_hi: f64,
    pub grid_n: usize,
    pub transient: usize,
    pub keep: usize,
}

impl ScanSpec {
    /// A spec with the default grid, transient, and keep sizes.
    pub fn new(d: f64, r_m1: f64, r0_lo: f64, r0_hi: f64) -> Result<Self> {
        let spec = ScanSpec {
            d,
            r_m1,
            r0_lo,
            r0_hi,
            grid_n: DEFAULT_GRID_N,
            transient: DEFAULT_TRANSIENT,
            keep: DEFAULT_KEEP,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.d.is_finite() {
            return Err(Error::domain("d must be finite"));
        }
        if !(self.r_m1 > 0.0) || !self.r_m1.is_finite() {
            return Err(Error::domain("r_m1 must be finite and > 0"));
        }
        if !(self.r0_lo > 0.0) || !(self.r0_hi > self.r0_lo) || !self.r0_hi.is_finite() {
            return Err(Error::domain("need 0 < r0_lo < r0_hi, both finite"));
        }
        if self.grid_n < 2 {
            return Err(Error::domain("need at least 2 grid points"));
        }
        if self.keep == 0 {
            return Err(Error::domain("need keep >= 1"));
        }
        Ok(())
    }

    /// The i-th grid value; strictly increasing in `i`, hitting both ends.
    pub fn r0_at(&self, i: usize) -> f64 {
        self.r0_lo + (self.r0_hi - self.r0_lo) * (i as f64) / ((self.grid_n - 1) as f64)
    }
}

/// One grid row of a scan. An overflowing orbit yields an empty tail with
/// `overflowed` set instead of failing the whole scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub r0: f64,
    /// The orbit invariant `r0 e^{r_m1} / r_m1`.
    pub t0: f64,
    /// Kept tail points (times ascending), empty on overflow.
    pub points: Vec<f64>,
    /// Minimal period of the tail, `None` when aperiodic within the window.
    pub classified_period: Option<usize>,
    /// Period of the induced odd-chain map `f_{t0}` from the same seed.
    pub f0_period: Option<usize>,
    pub overflowed: bool,
}

/// Minimal `q <= max_period` such that every lag-`q` pair of `points` agrees
/// within the absolute tolerance; `None` when no such q exists (aperiodic or
/// window too short).
pub fn classify_attractor(points: &[f64], tol: f64, max_period: usize) -> Option<usize> {
    for q in 1..=max_period {
        if points.len() < q + 1 {
            return None;
        }
        if (0..points.len() - q).all(|i| (points[i + q] - points[i]).abs() <= tol) {
            return Some(q);
        }
    }
    None
}

/// Computes one row. Pure in `spec` and `i`, so rows may be computed in any
/// order or in parallel and reassembled.
pub fn scan_row(spec: &ScanSpec, i: usize) -> Result<ScanRow> {
    spec.validate()?;
    if i >= spec.grid_n {
        return Err(Error::domain("grid index out of range"));
    }
    let r0 = spec.r0_at(i);
    let t0 = compute_t0(spec.r_m1, r0)?;
    let rp = ReducedParams::constant(spec.d)?;
    let orbit = match iterate_reduced(spec.r_m1, r0, &rp, spec.transient + spec.keep) {
        Ok(o) => o,
        Err(Error::Overflow { .. }) => {
            return Ok(ScanRow {
                r0,
                t0,
                points: Vec::new(),
                classified_period: None,
                f0_period: None,
                overflowed: true,
            })
        }
        Err(e) => return Err(e),
    };
    let points = orbit.values[orbit.values.len() - spec.keep..].to_vec();
    let classified_period = classify_attractor(&points, CLASSIFY_TOL, CLASSIFY_MAX_PERIOD);
    let f0_period = MapConfig::new(spec.d, t0)
        .and_then(|cfg| {
            detect_cycle(
                &cfg,
                spec.r_m1,
                spec.transient,
                CLASSIFY_MAX_PERIOD,
                CYCLE_TOL,
            )
        })
        .ok()
        .and_then(|cr| cr.converged.then_some(cr.period));
    Ok(ScanRow {
        r0,
        t0,
        points,
        classified_period,
        f0_period,
        overflowed: false,
    })
}

/// Runs the whole grid in order. Deterministic: no randomness anywhere, so
/// two runs of the same spec produce identical rows.
pub fn run_scan(spec: &ScanSpec) -> Result<Vec<ScanRow>> {
    spec.validate()?;
    (0..spec.grid_n).map(|i| scan_row(spec, i)).collect()
}

/// Renders rows as CSV with header `r0,t0,period,point_index,value`, one line
/// per kept point, floats in `{:.16e}` (round-trippable). Aperiodic rows get
/// period 0; overflowed rows get period -1 and a single NaN point.
pub fn emit_csv(rows: &[ScanRow]) -> String {
    let mut out = String::new();
    out.push_str("r0,t0,period,point_index,value\n");
    for row in rows {
        let period: i64 = if row.overflowed {
            -1
        } else {
            row.classified_period.map_or(0, |q| q as i64)
        };
        if row.overflowed {
            let _ = writeln!(out, "{:.16e},{:.16e},{},0,NaN", row.r0, row.t0, period);
            continue;
        }
        for (j, v) in row.points.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{},{},{:.16e}",
                row.r0, row.t0, period, j, v
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn classifier_basics() {
        let ones = vec![2.0; 50];
        assert_eq!(classify_attractor(&ones, 1e-6, 8), Some(1));

        let mut alt = Vec::new();
        for i in 0..50 {
            alt.push(if i % 2 == 0 { 1.0 } else { 3.0 });
        }
        assert_eq!(classify_attractor(&alt, 1e-6, 8), Some(2));

        let mut four = Vec::new();
        for i in 0..48 {
            four.push([1.0, 2.0, 3.0, 4.0][i % 4]);
        }
        assert_eq!(classify_attractor(&four, 1e-6, 8), Some(4));

        let ramp: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        assert_eq!(classify_attractor(&ramp, 1e-6, 8), None);

        // noise below tolerance does not break the classification
        let wobble: Vec<f64> = (0..50)
            .map(|i| {
                if i % 2 == 0 {
                    1.0 + 1e-9 * i as f64
                } else {
                    3.0
                }
            })
            .collect();
        assert_eq!(classify_attractor(&wobble, 1e-6, 8), Some(2));

        // window too short for the candidate period
        assert_eq!(classify_attractor(&[1.0, 2.0], 1e-6, 8), None);
        assert_eq!(classify_attractor(&[1.0], 1e-6, 8), None);
    }

    #[test]
    fn spec_validation() {
        assert!(ScanSpec::new(1.5, 0.75, 0.5, 2.5).is_ok());
        assert!(ScanSpec::new(1.5, 0.0, 0.5, 2.5).is_err());
        assert!(ScanSpec::new(1.5, 0.75, 2.5, 0.5).is_err());
        assert!(ScanSpec::new(f64::NAN, 0.75, 0.5, 2.5).is_err());
        let mut spec = ScanSpec::new(1.5, 0.75, 0.5, 2.5).unwrap();
        spec.grid_n = 1;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn grid_hits_both_ends_strictly_increasing() {
        let spec = ScanSpec::new(4.5, 2.25, 2.5, 6.5).unwrap();
        assert_eq!(spec.r0_at(0), 2.5);
        assert_eq!(spec.r0_at(spec.grid_n - 1), 6.5);
        for i in 1..spec.grid_n {
            assert!(spec.r0_at(i) > spec.r0_at(i - 1));
        }
    }

    #[test]
    fn two_cycle_regime_classifies_as_short_periods() {
        let mut spec = ScanSpec::new(1.5, 0.75, 0.5, 2.5).unwrap();
        spec.grid_n = 40;
        let rows = run_scan(&spec).unwrap();
        assert_eq!(rows.len(), 40);
        for row in &rows {
            assert!(!row.overflowed);
            let q = row.classified_period.expect("settled tail");
            assert!(q == 1 || q == 2, "r0={}: period {q}", row.r0);
            // odd-chain period is half the full period (fixed point per chain)
            assert_eq!(row.f0_period, Some(1), "r0={}", row.r0);
        }
        for w in rows.windows(2) {
            assert!(w[1].r0 > w[0].r0);
        }
    }

    #[test]
    fn scan_is_deterministic() {
        let mut spec = ScanSpec::new(2.8, 1.1, 0.6, 3.0).unwrap();
        spec.grid_n = 25;
        let a = run_scan(&spec).unwrap();
        let b = run_scan(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(emit_csv(&a), emit_csv(&b));
    }

    #[test]
    fn on_curve_row_lands_on_fixed_point() {
        // with d = 2 and r_m1 = 1 the grid value r0 = 1 sits exactly on the
        // invariant curve, whose map has the attracting fixed point 1
        let mut spec = ScanSpec::new(2.0, 1.0, 0.5, 1.5).unwrap();
        spec.grid_n = 3;
        let rows = run_scan(&spec).unwrap();
        let mid = &rows[1];
        assert_eq!(mid.r0, 1.0);
        assert_eq!(mid.t0, core::f64::consts::E);
        assert_eq!(mid.classified_period, Some(1));
        assert!((mid.points.last().unwrap() - 1.0).abs() < 1e-6);
        // neighbors are off the curve and settle onto two-cycles
        assert_eq!(rows[0].classified_period, Some(2));
        assert_eq!(rows[2].classified_period, Some(2));
    }

    #[test]
    fn overflow_rows_are_flagged_not_fatal() {
        let spec = ScanSpec {
            d: 800.0,
            r_m1: 1e-8,
            r0_lo: 1e-8,
            r0_hi: 2e-8,
            grid_n: 3,
            transient: 10,
            keep: 5,
        };
        let rows = run_scan(&spec).unwrap();
        assert!(rows.iter().all(|r| r.overflowed));
        let csv = emit_csv(&rows);
        for line in csv.lines().skip(1) {
            assert!(line.contains(",-1,0,NaN"), "{line}");
        }
    }

    #[test]
    fn csv_shape_and_roundtrip() {
        let mut spec = ScanSpec::new(1.5, 0.75, 0.5, 2.5).unwrap();
        spec.grid_n = 4;
        spec.keep = 7;
        let rows = run_scan(&spec).unwrap();
        let csv = emit_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "r0,t0,period,point_index,value");
        let body: Vec<&str> = lines.collect();
        assert_eq!(body.len(), 4 * 7);
        for (k, line) in body.iter().enumerate() {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 5);
            let row = &rows[k / 7];
            assert_eq!(fields[0].parse::<f64>().unwrap(), row.r0);
            assert_eq!(fields[1].parse::<f64>().unwrap(), row.t0);
            assert_eq!(fields[3].parse::<usize>().unwrap(), k % 7);
            assert_eq!(fields[4].parse::<f64>().unwrap(), row.points[k % 7]);
        }
    }

    #[test]
    fn row_indexing_is_positional() {
        let mut spec = ScanSpec::new(1.5, 0.75, 0.5, 2.5).unwrap();
        spec.grid_n = 10;
        let rows = run_scan(&spec).unwrap();
        for (i, row) in rows.iter().enumerate() {
            let again = scan_row(&spec, i).unwrap();
            assert_eq!(&again, row);
        }
        assert!(scan_row(&spec, 10).is_err());
    }
}
