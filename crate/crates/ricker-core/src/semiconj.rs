//! Semiconjugate factorization of the constant-exponent reduced equation
//! `r_{n+1} = r_{n-1} e^{d - r_{n-1} - r_n}`.
//!
//! Every positive solution carries an invariant `t_0 = r_0 / (r_{-1} e^{-r_{-1}})`
//! with companion `t_1 = e^d / t_0`; the orbit then factors through the curve
//! maps `g_t(r) = t r e^{-r}` applied with alternating `t`, and the odd / even
//! subsequences are orbits of the one-dimensional maps
//! `f_t(r) = r e^{d - r - t r e^{-r}}` for `t = t_0` and `t = t_1`.
//! This module provides those maps, cycle detection and lifting, fixed-point
//! analysis of `eta(x) = d - x - t x e^{-x}`, two-cycle limits, period-3
//! witnesses, and the odd-period exclusion check.

use alloc::vec;
use alloc::vec::Vec;

use crate::bifurcate::classify_attractor;
use crate::math;
use crate::simulate::{checked_exp, iterate_reduced, ScalarOrbit};
use crate::system::ReducedParams;
use crate::{Error, Result};

/// Default transient before cycle detection.
pub const CYCLE_TRANSIENT: usize = 2000;
/// Default closeness tolerance (relative above magnitude one) for cycles.
pub const CYCLE_TOL: f64 = 1e-8;

/// The invariant pair of a reduced-equation orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorState {
    pub d: f64,
    /// `r_0 / (r_{-1} e^{-r_{-1}})`; constant along the even steps.
    pub t0: f64,
    /// `e^d / t0`; the odd-step companion. `t0 * t1 = e^d`.
    pub t1: f64,
}

impl FactorState {
    pub fn new(d: f64, r_m1: f64, r_0: f64) -> Result<Self> {
        if !d.is_finite() {
            return Err(Error::domain("d must be finite"));
        }
        let t0 = compute_t0(r_m1, r_0)?;
        Ok(FactorState {
            d,
            t0,
            t1: math::exp(d) / t0,
        })
    }
}

/// Parameters of the interval map `f_t(r) = r e^{d - r - t r e^{-r}}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapConfig {
    pub d: f64,
    pub t: f64,
}

impl MapConfig {
    pub fn new(d: f64, t: f64) -> Result<Self> {
        if !d.is_finite() || !(t > 0.0) || !t.is_finite() {
            return Err(Error::domain("map needs finite d and t > 0"));
        }
        Ok(MapConfig { d, t })
    }
}

/// `t_0 = r_0 / (r_{-1} e^{-r_{-1}})` for positive seeds.
pub fn compute_t0(r_m1: f64, r_0: f64) -> Result<f64> {
    if !(r_m1 > 0.0) || !(r_0 > 0.0) || !r_m1.is_finite() || !r_0.is_finite() {
        return Err(Error::domain(alloc::format!(
            "seeds ({r_m1}, {r_0}) must be finite and > 0"
        )));
    }
    Ok(r_0 * math::exp(r_m1) / r_m1)
}

/// The invariant value `e^{d/2}` of `t0` on the invariant curve.
pub fn invariant_curve_t(d: f64) -> f64 {
    math::exp(0.5 * d)
}

/// `g_t(r) = t r e^{-r}`. Pure formula; callers keep `r >= 0`, `t > 0`.
pub fn g_map(r: f64, t: f64) -> f64 {
    t * r * math::exp(-r)
}

/// `f_t(r) = r e^{d - r - t r e^{-r}}` with the shared exponent cap.
pub fn f_map(r: f64, cfg: &MapConfig) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::domain(alloc::format!(
            "f is defined for r >= 0, got {r}"
        )));
    }
    let e = cfg.d - r - cfg.t * r * math::exp(-r);
    Ok(r * checked_exp(e, 0)?)
}

/// Analytic derivative `f_t'(r) = e^{eta(r)} (1 - r)(1 - t r e^{-r})` where
/// `eta(r) = d - r - t r e^{-r}`.
pub fn f_derivative(r: f64, cfg: &MapConfig) -> f64 {
    let w = cfg.t * r * math::exp(-r);
    math::exp(cfg.d - r - w) * (1.0 - r) * (1.0 - w)
}

/// Step-by-step confirmation that the factorized iteration reproduces the
/// direct one. All residuals are relative above magnitude one.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorReport {
    pub t0: f64,
    pub t1: f64,
    /// `|t0 t1 - e^d| / e^d`.
    pub t_product_residual: f64,
    /// Odd-time values vs the `f_{t0}` orbit of `r_{-1}`.
    pub odd_chain_residual: f64,
    /// Even-time values vs the `f_{t1}` orbit of `r_0`.
    pub even_chain_residual: f64,
    /// Factorized orbit vs direct iteration, all times.
    pub orbit_residual: f64,
    /// The factorized orbit (times -1..=n_steps).
    pub orbit: ScalarOrbit,
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / math::abs(a).max(math::abs(b)).max(1.0)
}

/// Runs the factorized iteration `r_{n+1} = g_{t_{n+1}}(r_n)` (with `t`
/// alternating between `t1` at odd times and `t0` at even times) next to the
/// direct recurrence and the two chain maps, reporting worst-case residuals.
pub fn verify_factorization(r_m1: f64, r_0: f64, d: f64, n_steps: usize) -> Result<FactorReport> {
    let fs = FactorState::new(d, r_m1, r_0)?;
    let mut vals = Vec::with_capacity(n_steps + 2);
    vals.push(r_m1);
    vals.push(r_0);
    for n in 0..n_steps {
        let t = if (n + 1) % 2 == 1 { fs.t1 } else { fs.t0 };
        let next = g_map(vals[n + 1], t);
        if !next.is_finite() {
            return Err(Error::Overflow {
                index: n,
                exponent: f64::NAN,
            });
        }
        vals.push(next);
    }

    let direct = iterate_reduced(r_m1, r_0, &ReducedParams::constant(d)?, n_steps)?;
    let mut orbit_residual = 0.0f64;
    for (a, b) in vals.iter().zip(&direct.values) {
        orbit_residual = orbit_residual.max(rel_gap(*a, *b));
    }

    let f0 = MapConfig::new(d, fs.t0)?;
    let f1 = MapConfig::new(d, fs.t1)?;
    let mut odd_chain_residual = 0.0f64;
    let mut x = r_m1; // f0-orbit visits the odd times -1, 1, 3, ...
    let mut k = 0;
    while 2 * k < vals.len() {
        odd_chain_residual = odd_chain_residual.max(rel_gap(x, vals[2 * k]));
        x = f_map(x, &f0)?;
        k += 1;
    }
    let mut even_chain_residual = 0.0f64;
    let mut x = r_0; // f1-orbit visits the even times 0, 2, 4, ...
    let mut k = 0;
    while 2 * k + 1 < vals.len() {
        even_chain_residual = even_chain_residual.max(rel_gap(x, vals[2 * k + 1]));
        x = f_map(x, &f1)?;
        k += 1;
    }

    let ed = math::exp(d);
    Ok(FactorReport {
        t0: fs.t0,
        t1: fs.t1,
        t_product_residual: (fs.t0 * fs.t1 - ed).abs() / ed,
        odd_chain_residual,
        even_chain_residual,
        orbit_residual,
        orbit: ScalarOrbit {
            values: vals,
            start_index: -1,
        },
    })
}

/// A detected cycle of an interval map. When `converged` is false, `points`
/// holds the trailing window instead, `period` is 0 and the numeric fields
/// are NaN.
#[derive(Debug, Clone)]
pub struct CycleResult {
    /// Cycle points in iteration order.
    pub points: Vec<f64>,
    /// Minimal period among those tested; 0 when not converged.
    pub period: usize,
    /// Product of the map derivative over the cycle.
    pub multiplier: f64,
    pub converged: bool,
    /// Worst closeness gap over the sustained window.
    pub residual: f64,
}

/// Iterates past `transient`, then looks for the minimal `q <= max_period`
/// such that `|f^q(r) - r| < tol * max(1, |r|)` sustained over a full extra
/// cycle. Not finding one is a result (`converged = false` with the trailing
/// window), not an error: the orbit may genuinely have no short period.
pub fn detect_cycle(
    cfg: &MapConfig,
    seed: f64,
    transient: usize,
    max_period: usize,
    tol: f64,
) -> Result<CycleResult> {
    if !(seed > 0.0) || !seed.is_finite() {
        return Err(Error::domain("cycle detection needs a positive seed"));
    }
    if max_period == 0 || !(tol > 0.0) {
        return Err(Error::domain("need max_period >= 1 and tol > 0"));
    }
    let mut r = seed;
    for n in 0..transient {
        r = match f_map(r, cfg) {
            Ok(v) => v,
            Err(Error::Overflow { exponent, .. }) => {
                return Err(Error::Overflow { index: n, exponent })
            }
            Err(e) => return Err(e),
        };
    }
    let window = 2 * max_period + 2;
    let mut w = Vec::with_capacity(window);
    w.push(r);
    while w.len() < window {
        r = match f_map(r, cfg) {
            Ok(v) => v,
            Err(Error::Overflow { exponent, .. }) => {
                return Err(Error::Overflow {
                    index: transient + w.len(),
                    exponent,
                })
            }
            Err(e) => return Err(e),
        };
        w.push(r);
    }
    for q in 1..=max_period {
        let sustained = (0..=q).all(|i| (w[i + q] - w[i]).abs() < tol * w[i].abs().max(1.0));
        if sustained {
            let points = w[..q].to_vec();
            let residual = (0..=q).map(|i| (w[i + q] - w[i]).abs()).fold(0.0, f64::max);
            let multiplier = points.iter().map(|&s| f_derivative(s, cfg)).product();
            return Ok(CycleResult {
                points,
                period: q,
                multiplier,
                converged: true,
                residual,
            });
        }
    }
    Ok(CycleResult {
        points: w[window - max_period..].to_vec(),
        period: 0,
        multiplier: f64::NAN,
        converged: false,
        residual: f64::NAN,
    })
}

/// A cycle pushed through `g_{t0}`, with a degeneracy warning when any source
/// point sits at the critical value 1 (where the multiplier-transfer argument
/// divides by zero).
#[derive(Debug, Clone)]
pub struct ShadowCycle {
    pub cycle: CycleResult,
    pub degenerate: bool,
}

fn shadow_tol(cr: &CycleResult) -> f64 {
    (cr.residual.max(1e-14) * 50.0).max(1e-9)
}

/// Maps a `q`-cycle `{s_k}` of `f_{t0}` to `{g_{t0}(s_k)}` and verifies it is
/// a `q`-cycle of `f_{t1}` with the same multiplier (checked at 1e-9 relative
/// unless some `s_k` is within 1e-6 of 1, which is flagged as degenerate).
/// A non-converged input is mapped through without cycle verification.
pub fn shadow_cycle(cr: &CycleResult, d: f64, t0: f64) -> Result<ShadowCycle> {
    if !(t0 > 0.0) || !t0.is_finite() || !d.is_finite() {
        return Err(Error::domain("shadow needs finite d and t0 > 0"));
    }
    let points: Vec<f64> = cr.points.iter().map(|&s| g_map(s, t0)).collect();
    if !cr.converged {
        return Ok(ShadowCycle {
            cycle: CycleResult {
                points,
                period: 0,
                multiplier: f64::NAN,
                converged: false,
                residual: f64::NAN,
            },
            degenerate: false,
        });
    }
    let q = cr.period;
    let f1 = MapConfig::new(d, math::exp(d) / t0)?;
    let mut residual = 0.0f64;
    for k in 0..q {
        let img = f_map(points[k], &f1)?;
        residual = residual.max((img - points[(k + 1) % q]).abs());
    }
    let tol = shadow_tol(cr);
    if residual >= tol * points.iter().fold(1.0f64, |m, &u| m.max(u.abs())) {
        return Err(Error::numerics(
            "image points do not form a cycle of the companion map",
        ));
    }
    let multiplier: f64 = points.iter().map(|&u| f_derivative(u, &f1)).product();
    let degenerate = cr.points.iter().any(|&s| (s - 1.0).abs() <= 1e-6);
    if !degenerate && !math::close_rel(multiplier, cr.multiplier, 1e-9) {
        return Err(Error::numerics(
            "shadow multiplier does not match the source cycle's",
        ));
    }
    Ok(ShadowCycle {
        cycle: CycleResult {
            points,
            period: q,
            multiplier,
            converged: true,
            residual,
        },
        degenerate,
    })
}

/// Interleaves a `q`-cycle `{s_k}` of `f_{t0}` with its `g_{t0}` images into
/// the `2q` values `[s_1, g(s_1), ..., s_q, g(s_q)]` and verifies the list is
/// invariant under the two-step reduced dynamics (cyclically). On the
/// invariant curve with `q = 1` this degenerates to the constant pair.
pub fn lift_cycle(cr: &CycleResult, d: f64, t0: f64) -> Result<Vec<f64>> {
    if !cr.converged {
        return Err(Error::domain("lift needs a detected cycle"));
    }
    if !(t0 > 0.0) || !t0.is_finite() || !d.is_finite() {
        return Err(Error::domain("lift needs finite d and t0 > 0"));
    }
    let q = cr.period;
    let mut lift = Vec::with_capacity(2 * q);
    for &s in &cr.points {
        lift.push(s);
        lift.push(g_map(s, t0));
    }
    let n = 2 * q;
    let tol = shadow_tol(cr);
    for i in 0..n {
        let prev = lift[i];
        let cur = lift[(i + 1) % n];
        let next = lift[(i + 2) % n];
        let expect = prev * math::exp(d - prev - cur);
        if (next - expect).abs() >= tol * next.abs().max(1.0) {
            return Err(Error::numerics(
                "lifted points are not invariant under the two-step dynamics",
            ));
        }
    }
    Ok(lift)
}

/// Roots of `eta(x) = d - x - gamma x e^{-x}` in `(0, d)`. `unique` is true
/// only for `0 < d <= 2`, where a single root is proven; beyond that every
/// bracketed root from a sign-change grid scan is returned and the caller is
/// warned (via `unique = false`) that completeness is heuristic.
#[derive(Debug, Clone, PartialEq)]
pub struct DrFixedPoints {
    /// Ascending roots, each with `|eta| < 1e-12`.
    pub roots: Vec<f64>,
    pub unique: bool,
}

fn bracket_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo < 0.0) == (fhi < 0.0) {
        return Err(Error::numerics("root bracket does not change sign"));
    }
    let mut best = lo;
    let mut fbest = flo;
    for iter in 0..256 {
        // regula falsi, with bisection every other step to guarantee progress
        let mut c = (lo * fhi - hi * flo) / (fhi - flo);
        if iter % 2 == 1 || !(c > lo && c < hi) {
            c = 0.5 * (lo + hi);
        }
        let fc = f(c);
        if fc.abs() < fbest.abs() {
            best = c;
            fbest = fc;
        }
        if fc == 0.0 {
            return Ok(c);
        }
        if (fc < 0.0) == (flo < 0.0) {
            lo = c;
            flo = fc;
        } else {
            hi = c;
            fhi = fc;
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(lo.abs()) {
            break;
        }
    }
    if fbest.abs() < 1e-12 {
        Ok(best)
    } else {
        Err(Error::numerics(
            "root refinement stalled above residual target",
        ))
    }
}

/// Finds the positive fixed-point abscissa(s): `eta(0) = d > 0` and
/// `eta(d) < 0`, so a root always exists in `(0, d)`.
pub fn fixed_point_dr(d: f64, gamma: f64) -> Result<DrFixedPoints> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::domain("need d > 0"));
    }
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::domain("need gamma > 0"));
    }
    let eta = |x: f64| d - x - gamma * x * math::exp(-x);
    let lo = 1e-12;
    if d <= 2.0 {
        let root = bracket_root(eta, lo, d)?;
        return Ok(DrFixedPoints {
            roots: vec![root],
            unique: true,
        });
    }
    // Beyond the proven range eta may have several roots; scan for brackets.
    let cells = 1024usize;
    let step = (d - lo) / cells as f64;
    let mut roots = Vec::new();
    let mut x_prev = lo;
    let mut e_prev = eta(lo);
    for i in 1..=cells {
        let x = lo + step * i as f64;
        let e = eta(x);
        if e_prev == 0.0 {
            roots.push(x_prev);
        } else if e != 0.0 && (e < 0.0) != (e_prev < 0.0) {
            roots.push(bracket_root(eta, x_prev, x)?);
        }
        x_prev = x;
        e_prev = e;
    }
    if e_prev == 0.0 {
        roots.push(x_prev);
    }
    if roots.is_empty() {
        return Err(Error::numerics(
            "no sign change found despite eta(0) > 0 > eta(d)",
        ));
    }
    Ok(DrFixedPoints {
        roots,
        unique: false,
    })
}

/// The limits of the odd/even subsequences of a reduced-equation orbit with
/// `0 < d <= 2`. Their sum is always `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoCycle {
    /// Limit of the odd-time subsequence (r_{-1}, r_1, ...).
    pub rho1: f64,
    /// Limit of the even-time subsequence (r_0, r_2, ...).
    pub rho2: f64,
    /// True when the seeds sit on the invariant curve and the orbit is the
    /// constant d/2.
    pub degenerate: bool,
}

impl TwoCycle {
    pub fn max_point(&self) -> f64 {
        self.rho1.max(self.rho2)
    }

    pub fn min_point(&self) -> f64 {
        self.rho1.min(self.rho2)
    }
}

/// Computes the two-cycle limits for `0 < d <= 2`: the odd and even limits
/// are the fixed-point abscissas for `gamma = t0` and `gamma = t1`, paired
/// empirically by simulating the orbit (the assignment depends on indexing
/// conventions, so it is verified per run rather than hard-coded). Verifies
/// `rho1 + rho2 = d` to 1e-9 relative.
pub fn two_cycle_rmsa(d: f64, r_m1: f64, r_0: f64) -> Result<TwoCycle> {
    if !(d > 0.0 && d <= 2.0) {
        return Err(Error::domain(alloc::format!(
            "two-cycle analysis covers 0 < d <= 2, got {d}"
        )));
    }
    let t0 = compute_t0(r_m1, r_0)?;
    let curve = invariant_curve_t(d);
    if (t0 - curve).abs() <= 1e-12 * curve {
        return Ok(TwoCycle {
            rho1: 0.5 * d,
            rho2: 0.5 * d,
            degenerate: true,
        });
    }
    let t1 = math::exp(d) / t0;
    let xa = fixed_point_dr(d, t0)?.roots[0];
    let xb = fixed_point_dr(d, t1)?.roots[0];

    const SETTLE: f64 = 1e-7;
    const CAP: usize = 200_000;
    let mut prev = r_m1; // value at time n-1
    let mut cur = r_0; // value at time n
    let mut last_odd = r_m1;
    let mut last_even = r_0;
    let mut assigned: Option<(f64, f64)> = None;
    for n in 0..CAP {
        let next = prev * math::exp(d - prev - cur);
        let time = n as i64 + 1;
        if time.rem_euclid(2) == 1 {
            last_odd = next;
        } else {
            last_even = next;
        }
        prev = cur;
        cur = next;
        if n % 1024 == 1023 {
            if (last_odd - xa).abs() < SETTLE && (last_even - xb).abs() < SETTLE {
                assigned = Some((xa, xb));
                break;
            }
            if (last_odd - xb).abs() < SETTLE && (last_even - xa).abs() < SETTLE {
                assigned = Some((xb, xa));
                break;
            }
        }
    }
    let (rho1, rho2) = assigned.ok_or_else(|| {
        Error::numerics("orbit did not settle onto the two-cycle within the step cap")
    })?;
    if !math::close(rho1 + rho2, d, 1e-9) {
        return Err(Error::numerics("two-cycle limits do not sum to d"));
    }
    Ok(TwoCycle {
        rho1,
        rho2,
        degenerate: false,
    })
}

/// Outcome of a sign-change search for a period-3 point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Period3Witness {
    pub found: bool,
    /// Interval where `map^3(r) - r` changes sign away from fixed points.
    pub bracket: Option<(f64, f64)>,
}

/// Scans `grid` cells of `[lo, hi]` for a sign change of `map^3(r) - r`
/// whose endpoints are not fixed points of `map` (those would witness period
/// 1, not 3).
pub fn period3_witness_map<F: Fn(f64) -> f64>(
    map: F,
    lo: f64,
    hi: f64,
    grid: usize,
) -> Period3Witness {
    let none = Period3Witness {
        found: false,
        bracket: None,
    };
    if !(hi > lo) || grid < 2 {
        return none;
    }
    let h = |r: f64| map(map(map(r))) - r;
    let fixed = |r: f64| (map(r) - r).abs() <= 1e-9 * r.abs().max(1.0);
    let step = (hi - lo) / grid as f64;
    let mut r_prev = lo;
    let mut h_prev = h(lo);
    for i in 1..=grid {
        let r = lo + step * i as f64;
        let hr = h(r);
        if h_prev.is_finite()
            && hr.is_finite()
            && h_prev != 0.0
            && hr != 0.0
            && (h_prev < 0.0) != (hr < 0.0)
            && !fixed(r_prev)
            && !fixed(r)
        {
            return Period3Witness {
                found: true,
                bracket: Some((r_prev, r)),
            };
        }
        r_prev = r;
        h_prev = hr;
    }
    none
}

/// Period-3 witness for the invariant-curve map `g(r) = r e^{d/2 - r}`,
/// searched on `(1, d/2)` (empty when `d <= 2`, hence no witness).
pub fn period3_witness(d: f64, grid: usize) -> Period3Witness {
    let a = 0.5 * d;
    if a <= 1.0 {
        return Period3Witness {
            found: false,
            bracket: None,
        };
    }
    period3_witness_map(|r| r * math::exp(a - r), 1.0, a, grid)
}

/// Whether a reduced-equation orbit's detected minimal period respects the
/// even-only rule that holds off the invariant curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OddExclusionReport {
    /// Minimal period of the settled orbit, if one was detected.
    pub detected_period: Option<usize>,
    pub on_invariant_curve: bool,
    /// The even-only rule applies only off the curve.
    pub exclusion_applies: bool,
    /// True when no odd period was detected while the rule applies.
    pub consistent: bool,
}

/// Iterates the reduced equation past a transient and classifies the minimal
/// period of the tail, checking the parity rule.
pub fn odd_period_exclusion(
    d: f64,
    r_m1: f64,
    r_0: f64,
    max_period: usize,
) -> Result<OddExclusionReport> {
    let t0 = compute_t0(r_m1, r_0)?;
    let curve = invariant_curve_t(d);
    let on_curve = (t0 - curve).abs() <= 1e-12 * curve;
    let rp = ReducedParams::constant(d)?;
    let n_steps = CYCLE_TRANSIENT + 2 * max_period + 2;
    let orbit = iterate_reduced(r_m1, r_0, &rp, n_steps)?;
    let tail = &orbit.values[orbit.values.len() - (2 * max_period + 2)..];
    let detected = classify_attractor(tail, 1e-6, max_period);
    let exclusion_applies = !on_curve;
    let consistent = !exclusion_applies || detected.is_none_or(|q| q.is_multiple_of(2));
    Ok(OddExclusionReport {
        detected_period: detected,
        on_invariant_curve: on_curve,
        exclusion_applies,
        consistent,
    })
}

/// Dual-iteration record for embedding a first-order equation with period-2
/// exponent into the reduced equation.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbedReport {
    /// `c0 + c1`, the reduced exponent.
    pub d: f64,
    /// Worst pointwise gap (relative above magnitude one).
    pub max_residual: f64,
    /// The reduced orbit from seeds `(u_0, u_1)`.
    pub reduced: ScalarOrbit,
    /// The first-order orbit `u_0 ..= u_{n_steps+1}`.
    pub first_order: Vec<f64>,
}

/// Iterates `u_{n+1} = u_n e^{c_n - u_n}` (`c_n` alternating `c0, c1`) and the
/// reduced equation with `d = c0 + c1` from seeds `r_{-1} = u_0`,
/// `r_0 = u_1`, verifying that the reduced orbit reproduces the first-order
/// one shifted by one step.
pub fn embed_first_order(c0: f64, c1: f64, u0: f64, n_steps: usize) -> Result<EmbedReport> {
    if !(u0 > 0.0) || !u0.is_finite() {
        return Err(Error::domain("embedding needs u0 > 0"));
    }
    if !c0.is_finite() || !c1.is_finite() {
        return Err(Error::domain("exponents must be finite"));
    }
    let d = c0 + c1;
    let mut u = Vec::with_capacity(n_steps + 2);
    u.push(u0);
    for n in 0..=n_steps {
        let c = if n % 2 == 0 { c0 } else { c1 };
        let next = u[n] * checked_exp(c - u[n], n)?;
        if !next.is_finite() {
            return Err(Error::Overflow {
                index: n,
                exponent: c - u[n],
            });
        }
        u.push(next);
    }
    let reduced = iterate_reduced(u[0], u[1], &ReducedParams::constant(d)?, n_steps)?;
    let mut max_residual = 0.0f64;
    for n in -1..=(n_steps as i64) {
        max_residual = max_residual.max(rel_gap(reduced.at(n), u[(n + 1) as usize]));
    }
    Ok(EmbedReport {
        d,
        max_residual,
        reduced,
        first_order: u,
    })
}

/// Iterates `r_{n+1} = r_{n-1} e^{a - r_{n-1} - b r_n}` from positive seeds.
/// For `a` in (0, 1] and `b` in (0, 1) every positive solution converges to
/// [`fhl_attractor`].
pub fn iterate_fhl(r_m1: f64, r_0: f64, a: f64, b: f64, n_steps: usize) -> Result<ScalarOrbit> {
    if !(r_m1 > 0.0) || !(r_0 > 0.0) || !r_m1.is_finite() || !r_0.is_finite() {
        return Err(Error::domain("seeds must be finite and > 0"));
    }
    if !a.is_finite() || !b.is_finite() || b < 0.0 {
        return Err(Error::domain("need finite a and b >= 0"));
    }
    let mut values = Vec::with_capacity(n_steps + 2);
    values.push(r_m1);
    values.push(r_0);
    for n in 0..n_steps {
        let prev = values[n];
        let cur = values[n + 1];
        let next = prev * checked_exp(a - prev - b * cur, n)?;
        if !next.is_finite() {
            return Err(Error::Overflow {
                index: n,
                exponent: a - prev - b * cur,
            });
        }
        values.push(next);
    }
    Ok(ScalarOrbit {
        values,
        start_index: -1,
    })
}

/// The global attractor `a / (1 + b)` of the damped reduced equation.
pub fn fhl_attractor(a: f64, b: f64) -> f64 {
    a / (1.0 + b)
}
