//! The planar stage-structured Ricker system and its scalar foldings.
//!
//! The system iterated here is
//!
//! ```text
//! x_{n+1} = sigma1_n * y_n + sigma2_n * x_n
//! y_{n+1} = beta_n * x_n * exp(alpha_n - c1_n * x_n - c2_n * y_n)
//! ```
//!
//! with all six parameter sequences periodic and non-negative. When the
//! stage-1 carryover `sigma2` vanishes, eliminating `y` folds the system into
//! a second-order scalar equation
//!
//! ```text
//! x_{n+1} = x_{n-1} exp(a_n - c1_n x_{n-1} - (c2_n / sigma1_n) x_n),
//! a_n = alpha_n + ln(beta_n * sigma1_{n+1}),
//! ```
//!
//! and when additionally the matching condition `c2_n = sigma1_n c1_n` holds,
//! the substitution `r_n = c1_n x_n` reduces it further to
//!
//! ```text
//! r_{n+1} = r_{n-1} exp(d_n - r_{n-1} - r_n),
//! d_n = a_n + ln(c1_{n+1} / c1_{n-1}).
//! ```

use crate::math;
use crate::seq::{lcm_period, PeriodicSeq};
use crate::{Error, Result};

/// Parameter values in effect at a single time step.
///
/// Produced by [`RickerSystem::params_at`], or by a user-supplied generator
/// when iterating non-periodic environments (see `simulate`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepParams {
    pub alpha: f64,
    pub beta: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub c1: f64,
    pub c2: f64,
}

/// The six periodic parameter sequences of the planar system.
#[derive(Debug, Clone, PartialEq)]
pub struct RickerSystem {
    pub alpha: PeriodicSeq,
    pub beta: PeriodicSeq,
    pub sigma1: PeriodicSeq,
    pub sigma2: PeriodicSeq,
    pub c1: PeriodicSeq,
    pub c2: PeriodicSeq,
}

impl RickerSystem {
    /// Validates and assembles a system.
    ///
    /// All values must be non-negative, and `beta` and `sigma1` must each be
    /// strictly positive in at least one slot (otherwise the adult stage is
    /// never populated and the model degenerates).
    pub fn new(
        alpha: PeriodicSeq,
        beta: PeriodicSeq,
        sigma1: PeriodicSeq,
        sigma2: PeriodicSeq,
        c1: PeriodicSeq,
        c2: PeriodicSeq,
    ) -> Result<Self> {
        for (name, q) in [
            ("alpha", &alpha),
            ("beta", &beta),
            ("sigma1", &sigma1),
            ("sigma2", &sigma2),
            ("c1", &c1),
            ("c2", &c2),
        ] {
            if !q.all_non_negative() {
                return Err(Error::Domain(alloc::format!(
                    "{name} has a negative slot; system parameters must be >= 0"
                )));
            }
        }
        if beta.all_zero() {
            return Err(Error::domain("beta is identically zero"));
        }
        if sigma1.all_zero() {
            return Err(Error::domain("sigma1 is identically zero"));
        }
        Ok(RickerSystem {
            alpha,
            beta,
            sigma1,
            sigma2,
            c1,
            c2,
        })
    }

    /// A convenience constructor for systems with constant parameters.
    pub fn constant(
        alpha: f64,
        beta: f64,
        sigma1: f64,
        sigma2: f64,
        c1: f64,
        c2: f64,
    ) -> Result<Self> {
        RickerSystem::new(
            PeriodicSeq::constant(alpha)?,
            PeriodicSeq::constant(beta)?,
            PeriodicSeq::constant(sigma1)?,
            PeriodicSeq::constant(sigma2)?,
            PeriodicSeq::constant(c1)?,
            PeriodicSeq::constant(c2)?,
        )
    }

    /// Combined period: the lcm of all six parameter periods.
    pub fn combined_period(&self) -> usize {
        lcm_period(&[
            self.alpha.period(),
            self.beta.period(),
            self.sigma1.period(),
            self.sigma2.period(),
            self.c1.period(),
            self.c2.period(),
        ])
        .expect("periods are validated positive")
    }

    /// Parameter values in effect at time `n`.
    pub fn params_at(&self, n: usize) -> StepParams {
        StepParams {
            alpha: self.alpha.eval(n),
            beta: self.beta.eval(n),
            sigma1: self.sigma1.eval(n),
            sigma2: self.sigma2.eval(n),
            c1: self.c1.eval(n),
            c2: self.c2.eval(n),
        }
    }
}

/// Coefficients of the second-order fold: `x_{n+1} = x_{n-1} e^{a_n - c1_n
/// x_{n-1} - (c2_n/sigma1_n) x_n}` with `a_n = alpha_n + ln(beta_n
/// sigma1_{n+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldedParams {
    pub a: PeriodicSeq,
    pub c1: PeriodicSeq,
    pub c2: PeriodicSeq,
    pub sigma1: PeriodicSeq,
}

/// Coefficients of the reduced equation `r_{n+1} = r_{n-1} e^{d_n - r_{n-1} -
/// r_n}`; for constant `d` this is the autonomous reduced equation.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedParams {
    pub d: PeriodicSeq,
}

impl ReducedParams {
    /// Autonomous reduced equation with constant exponent `d`.
    pub fn constant(d: f64) -> Result<Self> {
        Ok(ReducedParams {
            d: PeriodicSeq::constant(d)?,
        })
    }
}

/// Folds the planar system (with `sigma2 ≡ 0`) into its second-order scalar
/// form, tabulating `a_n = alpha_n + ln(beta_n sigma1_{n+1})` over one
/// combined period and passing `c1`, `c2`, `sigma1` through.
///
/// The elimination of the adult stage is only exact when `sigma2` vanishes
/// identically, so any non-zero `sigma2` slot is rejected rather than
/// silently ignored.
pub fn fold_second_order(sys: &RickerSystem) -> Result<FoldedParams> {
    if !sys.sigma2.all_zero() {
        return Err(Error::domain(
            "second-order fold requires sigma2 = 0 on every slot",
        ));
    }
    let p = lcm_period(&[sys.alpha.period(), sys.beta.period(), sys.sigma1.period()])?;
    let mut a = alloc::vec::Vec::with_capacity(p);
    for n in 0..p {
        let prod = sys.beta.eval(n) * sys.sigma1.eval(n + 1);
        if prod <= 0.0 {
            return Err(Error::Domain(alloc::format!(
                "beta_n * sigma1_(n+1) = {prod} at slot {n}; the fold needs it positive"
            )));
        }
        // ln(1) = 0 exactly, so beta*sigma1 = 1 passes alpha through bitwise.
        a.push(sys.alpha.eval(n) + math::ln(prod));
    }
    Ok(FoldedParams {
        a: PeriodicSeq::new(a)?,
        c1: sys.c1.clone(),
        c2: sys.c2.clone(),
        sigma1: sys.sigma1.clone(),
    })
}

/// True iff the matching condition `c2_n = sigma1_n c1_n` holds on every slot
/// of the combined period, to relative tolerance `tol` (floored at 1 so that
/// zero slots compare absolutely).
pub fn check_matching(sys: &RickerSystem, tol: f64) -> bool {
    let p = lcm_period(&[sys.c2.period(), sys.sigma1.period(), sys.c1.period()])
        .expect("periods validated");
    (0..p).all(|n| {
        let lhs = sys.c2.eval(n);
        let rhs = sys.sigma1.eval(n) * sys.c1.eval(n);
        math::abs(lhs - rhs) <= tol * math::abs(lhs).max(1.0)
    })
}

/// Default tolerance for [`check_matching`] and [`reduce`]: the matching
/// condition is structural, not statistical.
pub const MATCHING_TOL: f64 = 1e-12;

/// Reduces the second-order fold to `r_{n+1} = r_{n-1} e^{d_n - r_{n-1} -
/// r_n}` with `d_n = a_n + ln(c1_{n+1}/c1_{n-1})`.
///
/// Requires the matching condition `c2_n = sigma1_n c1_n` (verified here
/// against `tol`) and strictly positive `c1`. When `c1_{n+1} = c1_{n-1}` —
/// always the case for constant or period-2 `c1` — the log term is skipped so
/// that `d_n = a_n` bitwise.
pub fn reduce(params: &FoldedParams, tol: f64) -> Result<ReducedParams> {
    let p_match = lcm_period(&[
        params.c2.period(),
        params.sigma1.period(),
        params.c1.period(),
    ])?;
    for n in 0..p_match {
        let lhs = params.c2.eval(n);
        let rhs = params.sigma1.eval(n) * params.c1.eval(n);
        if math::abs(lhs - rhs) > tol * math::abs(lhs).max(1.0) {
            return Err(Error::Domain(alloc::format!(
                "matching condition fails at slot {n}: c2 = {lhs} vs sigma1*c1 = {rhs}"
            )));
        }
    }
    if !params.c1.all_positive() {
        return Err(Error::domain("reduction requires c1 > 0 on every slot"));
    }
    let p = lcm_period(&[params.a.period(), params.c1.period()])?;
    let pc = params.c1.period();
    let mut d = alloc::vec::Vec::with_capacity(p);
    for n in 0..p {
        let next = params.c1.eval(n + 1);
        let prev = params.c1.eval((n + pc - 1) % pc);
        if next == prev {
            d.push(params.a.eval(n));
        } else {
            d.push(params.a.eval(n) + math::ln(next / prev));
        }
    }
    Ok(ReducedParams {
        d: PeriodicSeq::new(d)?,
    })
}
