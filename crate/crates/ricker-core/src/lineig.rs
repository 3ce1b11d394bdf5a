//! Second-order linear difference equations `u_{k+1} = a_k u_k + b_k u_{k-1}`
//! with periodic non-negative coefficients: the delta/theta basis solutions,
//! the characteristic quadratic over one period, the periodic eigensequence
//! `r_{k+1} = a_k + b_k / r_k`, a factorized solution built from it, and the
//! extinction criteria for the planar system that rest on all of this.
//!
//! Coefficients use the 1-based convention `a_1, ..., a_p`; stored slot `j`
//! holds `a_{j+1}` (so `a_k = a.eval(k - 1)`).

use alloc::vec;
use alloc::vec::Vec;

use crate::math;
use crate::seq::{lcm_period, PeriodicSeq};
use crate::simulate::ScalarOrbit;
use crate::system::RickerSystem;
use crate::{Error, Result};

/// Relative tolerance for verifying that the eigensequence closes up
/// (`r_{p+1} = r_1`) and that the two product formulas agree.
pub const PERIODICITY_TOL: f64 = 1e-9;

/// Periodic coefficient pair for `u_{k+1} = a_k u_k + b_k u_{k-1}`.
/// `p` is the combined (lcm) period.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCoeffs {
    pub a: PeriodicSeq,
    pub b: PeriodicSeq,
    pub p: usize,
}

impl LinearCoeffs {
    /// Requires both sequences non-negative.
    pub fn new(a: PeriodicSeq, b: PeriodicSeq) -> Result<Self> {
        if !a.all_non_negative() || !b.all_non_negative() {
            return Err(Error::domain("linear coefficients must be non-negative"));
        }
        let p = lcm_period(&[a.period(), b.period()])?;
        Ok(LinearCoeffs { a, b, p })
    }
}

/// The two basis solutions over one period: `delta` starts from (0, 1) and
/// `theta` from (1, 0); both satisfy the coefficient recurrence, and every
/// solution is `u_n = theta_n u_0 + delta_n u_1`. Arrays run from index 0 to
/// p+1 inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaTheta {
    pub delta: Vec<f64>,
    pub theta: Vec<f64>,
}

/// Computes the basis solutions `delta_0..delta_{p+1}`, `theta_0..theta_{p+1}`.
pub fn delta_theta(lc: &LinearCoeffs) -> DeltaTheta {
    let p = lc.p;
    let mut delta = vec![0.0; p + 2];
    let mut theta = vec![0.0; p + 2];
    delta[1] = 1.0;
    theta[0] = 1.0;
    for k in 1..=p {
        let a = lc.a.eval(k - 1);
        let b = lc.b.eval(k - 1);
        delta[k + 1] = a * delta[k] + b * delta[k - 1];
        theta[k + 1] = a * theta[k] + b * theta[k - 1];
    }
    DeltaTheta { delta, theta }
}

/// Coefficients `(A, B, C)` of the period-`p` characteristic quadratic
/// `A r^2 + B r + C = 0` with `A = delta_p`, `B = theta_p - delta_{p+1}`,
/// `C = -theta_{p+1}`. Errors when all three vanish (improper equation).
pub fn characteristic_quadratic(delta: &[f64], theta: &[f64]) -> Result<(f64, f64, f64)> {
    let p = delta.len() - 2;
    let (qa, qb, qc) = (delta[p], theta[p] - delta[p + 1], -theta[p + 1]);
    if qa == 0.0 && qb == 0.0 && qc == 0.0 {
        return Err(Error::numerics(
            "characteristic quadratic is improper (0 = 0); no eigensequence",
        ));
    }
    Ok((qa, qb, qc))
}

/// The "+"-branch root; falls back to the single root of the degenerate
/// linear equation when the leading coefficient vanishes.
fn positive_branch_root(qa: f64, qb: f64, qc: f64) -> Result<f64> {
    if qa == 0.0 {
        if qb == 0.0 {
            return Err(Error::numerics(
                "degenerate characteristic equation has no root",
            ));
        }
        return Ok(-qc / qb);
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Err(Error::numerics(
            "characteristic quadratic has no real root; no real eigensequence",
        ));
    }
    Ok((-qb + math::sqrt(disc)) / (2.0 * qa))
}

/// Full eigensequence record for one period.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenData {
    /// Basis solution from (0, 1), indices 0..=p+1.
    pub delta: Vec<f64>,
    /// Basis solution from (1, 0), indices 0..=p+1.
    pub theta: Vec<f64>,
    /// Characteristic quadratic coefficients (A, B, C).
    pub quad: (f64, f64, f64),
    /// The chosen root; equals `r[0]`.
    pub r1: f64,
    /// The eigensequence `r_1..r_p`.
    pub r: Vec<f64>,
    /// `r_1 r_2 ... r_p`, computed as `delta_p r_1 + theta_p` and
    /// cross-checked against direct multiplication.
    pub product: f64,
}

impl EigenData {
    /// `r_k` for any 1-based index, extended periodically.
    fn rate(&self, k: usize) -> f64 {
        self.r[(k - 1) % self.r.len()]
    }
}

/// Builds the periodic eigensequence: `r_1` is the "+"-branch root of the
/// characteristic quadratic and `r_{k+1} = a_k + b_k / r_k` generates the
/// rest. When every `a_i > 0` this always succeeds and every `r_i > 0`; with
/// zero coefficients present the construction is attempted and may fail.
///
/// Verifies both that the sequence closes up (`r_{p+1} = r_1`) and that the
/// direct product matches `delta_p r_1 + theta_p`, each within `tol` relative.
pub fn eigensequence_with_tol(lc: &LinearCoeffs, tol: f64) -> Result<EigenData> {
    let dt = delta_theta(lc);
    let quad = characteristic_quadratic(&dt.delta, &dt.theta)?;
    let r1 = positive_branch_root(quad.0, quad.1, quad.2)?;
    if r1 == 0.0 {
        return Err(Error::numerics("eigensequence root is zero"));
    }
    let p = lc.p;
    let mut r = Vec::with_capacity(p);
    r.push(r1);
    for k in 1..p {
        let prev = r[k - 1];
        if prev == 0.0 {
            return Err(Error::numerics("eigensequence hit zero; cannot divide"));
        }
        r.push(lc.a.eval(k - 1) + lc.b.eval(k - 1) / prev);
    }
    let last = r[p - 1];
    if last == 0.0 {
        return Err(Error::numerics("eigensequence hit zero; cannot divide"));
    }
    let wrapped = lc.a.eval(p - 1) + lc.b.eval(p - 1) / last;
    if !math::close_rel(wrapped, r1, tol) {
        return Err(Error::numerics(
            "eigensequence does not close up over one period (ill-conditioned quadratic)",
        ));
    }
    let direct: f64 = r.iter().product();
    let product = dt.delta[p] * r1 + dt.theta[p];
    if !math::close_rel(direct, product, tol) {
        return Err(Error::numerics("eigensequence product cross-check failed"));
    }
    Ok(EigenData {
        delta: dt.delta,
        theta: dt.theta,
        quad,
        r1,
        r,
        product,
    })
}

/// [`eigensequence_with_tol`] at the default [`PERIODICITY_TOL`].
pub fn eigensequence(lc: &LinearCoeffs) -> Result<EigenData> {
    eigensequence_with_tol(lc, PERIODICITY_TOL)
}

/// Closed form for the period product when all `b_i > 0`:
/// `(delta_{p+1} + theta_p + sqrt((delta_{p+1} - theta_p)^2 + 4 delta_p theta_{p+1})) / 2`.
pub fn product_closed_form(delta: &[f64], theta: &[f64]) -> f64 {
    let p = delta.len() - 2;
    let gap = delta[p + 1] - theta[p];
    let disc = gap * gap + 4.0 * delta[p] * theta[p + 1];
    0.5 * (delta[p + 1] + theta[p] + math::sqrt(disc))
}

/// Direct iteration of `u_{k+1} = a_k u_k + b_k u_{k-1}` from `u_0, u_1`.
/// Returns `u_0..=u_{n_steps}`.
pub fn iterate_linear(u0: f64, u1: f64, lc: &LinearCoeffs, n_steps: usize) -> Result<ScalarOrbit> {
    let mut values = Vec::with_capacity(n_steps + 1);
    values.push(u0);
    if n_steps >= 1 {
        values.push(u1);
    }
    for k in 1..n_steps {
        let next = lc.a.eval(k - 1) * values[k] + lc.b.eval(k - 1) * values[k - 1];
        if !next.is_finite() {
            return Err(Error::numerics(alloc::format!(
                "linear solution overflowed f64 at step {k}"
            )));
        }
        values.push(next);
    }
    Ok(ScalarOrbit {
        values,
        start_index: 0,
    })
}

/// Solves the linear equation through its factorization into the first-order
/// pair `t_{k+1} = -(b_k / r_k) t_k`, `u_{k+1} = r_{k+1} u_k + t_{k+1}` with
/// `t_1 = u_1 - r_1 u_0`. The value at `n_steps` is re-derived from the
/// closed-form sum and cross-checked within 1e-9 (absolute below magnitude
/// one) before returning.
pub fn semiconj_solution(
    lc: &LinearCoeffs,
    u0: f64,
    u1: f64,
    n_steps: usize,
) -> Result<ScalarOrbit> {
    let ed = eigensequence(lc)?;
    let mut values = Vec::with_capacity(n_steps + 1);
    values.push(u0);
    if n_steps >= 1 {
        values.push(u1);
    }
    let mut t = vec![u1 - ed.r1 * u0]; // t_1
    for k in 1..n_steps {
        let b_k = lc.b.eval(k - 1);
        let r_k = ed.rate(k);
        let t_next = -(b_k / r_k) * t[k - 1];
        let u_next = ed.rate(k + 1) * values[k] + t_next;
        if !u_next.is_finite() {
            return Err(Error::numerics(alloc::format!(
                "factorized solution overflowed f64 at step {k}"
            )));
        }
        t.push(t_next);
        values.push(u_next);
    }
    if n_steps >= 1 {
        // u_n = (prod_{i<=n} r_i) u_0 + sum_j (prod_{i>j} r_i) t_j
        let n = n_steps;
        let mut suffix = vec![1.0; n + 1];
        for j in (0..n).rev() {
            suffix[j] = ed.rate(j + 1) * suffix[j + 1];
        }
        let mut closed = suffix[0] * u0;
        for j in 1..=n {
            closed += suffix[j] * t[j - 1];
        }
        if closed.is_finite() && !math::close(closed, values[n], 1e-9) {
            return Err(Error::numerics(
                "factorized solution disagrees with its closed form",
            ));
        }
    }
    Ok(ScalarOrbit {
        values,
        start_index: 0,
    })
}

/// Sufficient condition for every solution of the linear equation to decay:
/// `delta_p theta_{p+1} < (1 - delta_{p+1})(1 - theta_p)`, guarded by
/// `delta_{p+1} < 1` and `theta_p < 1` (the inequality is derived by a
/// squaring step that needs both sides positive).
pub fn criterion_alb(delta: &[f64], theta: &[f64]) -> bool {
    let p = delta.len() - 2;
    delta[p + 1] < 1.0
        && theta[p] < 1.0
        && delta[p] * theta[p + 1] < (1.0 - delta[p + 1]) * (1.0 - theta[p])
}

/// Period-2 specialization of the decay criterion:
/// `b_1 < 1`, `b_2 < 1`, and `a_1 a_2 < (1 - b_1)(1 - b_2)` (strict; equality
/// fails). Notable because `(a_1 + a_2)/2` may exceed 1 while it holds.
pub fn criterion_p2(a1: f64, a2: f64, b1: f64, b2: f64) -> bool {
    b1 < 1.0 && b2 < 1.0 && a1 * a2 < (1.0 - b1) * (1.0 - b2)
}

/// The linear comparison coefficients induced by a planar system:
/// `x_{n+1} <= a_n x_n + b_n x_{n-1}` holds along every orbit with
/// `a_n = sigma2_n` and `b_n = sigma1_n beta_{n-1} e^{alpha_{n-1}}`.
/// Stored slot `j` carries the coefficients acting at planar time `j + 1`.
pub fn comparison_coeffs(sys: &RickerSystem) -> LinearCoeffs {
    let p = lcm_period(&[
        sys.sigma2.period(),
        sys.sigma1.period(),
        sys.beta.period(),
        sys.alpha.period(),
    ])
    .expect("periods validated");
    let a: Vec<f64> = (0..p).map(|j| sys.sigma2.eval(j + 1)).collect();
    let b: Vec<f64> = (0..p)
        .map(|j| sys.sigma1.eval(j + 1) * sys.beta.eval(j) * math::exp(sys.alpha.eval(j)))
        .collect();
    LinearCoeffs::new(
        PeriodicSeq::new(a).expect("finite by construction"),
        PeriodicSeq::new(b).expect("finite by construction"),
    )
    .expect("non-negative by construction")
}

/// Extinction verdict for a periodic planar system via linear domination.
#[derive(Debug, Clone, PartialEq)]
pub struct BextVerdict {
    /// True iff every orbit converges to the origin per the criterion below.
    pub extinct: bool,
    /// Gate: `b_i < 1` on every slot of one combined period.
    pub all_b_below_one: bool,
    /// The decay criterion on the dominating linear equation.
    pub criterion_alb: bool,
    /// Eigensequence of the dominating equation, when it can be built
    /// (requires no zero coefficient in its way); None means criterion-only.
    pub eigen: Option<EigenData>,
    /// The dominating linear coefficients, for inspection.
    pub coeffs: LinearCoeffs,
    /// Mean of sigma2 over its period; interesting because extinction can
    /// hold even when this exceeds 1 (heavy periodic stocking still fails).
    pub mean_sigma2: f64,
}

/// Decides extinction of the planar system by checking the decay criterion
/// on the dominating linear equation from [`comparison_coeffs`].
pub fn check_bext(sys: &RickerSystem) -> BextVerdict {
    let coeffs = comparison_coeffs(sys);
    let dt = delta_theta(&coeffs);
    let all_b_below_one = coeffs.b.max() < 1.0;
    let crit = criterion_alb(&dt.delta, &dt.theta);
    let eigen = eigensequence(&coeffs).ok();
    BextVerdict {
        extinct: all_b_below_one && crit,
        all_b_below_one,
        criterion_alb: crit,
        eigen,
        coeffs,
        mean_sigma2: sys.sigma2.mean(),
    }
}
