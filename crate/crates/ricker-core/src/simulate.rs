//! Orbit iteration for the planar system, its second-order fold, and the
//! reduced scalar equation, plus the boundedness and extinction certificates.
//!
//! Iteration is a pure function of (seed, parameters). Exponents are checked
//! against [`crate::EXP_CAP`] before every `exp`, so divergent inputs surface
//! as explicit overflow errors rather than silent infinities.

use alloc::string::String;
use alloc::vec::Vec;

use crate::math;
use crate::seq::lcm_period;
use crate::system::{FoldedParams, ReducedParams, RickerSystem, StepParams};
use crate::{Error, Result, EXP_CAP};

/// One state of the planar system: juvenile density `x`, adult density `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarState {
    pub x: f64,
    pub y: f64,
}

impl PlanarState {
    pub fn new(x: f64, y: f64) -> Self {
        PlanarState { x, y }
    }
}

/// Time-ordered planar orbit; `states[k]` is the state at time `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarOrbit {
    pub states: Vec<PlanarState>,
}

impl PlanarOrbit {
    /// The x-components in time order.
    pub fn x_projection(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.x).collect()
    }

    pub fn last(&self) -> PlanarState {
        *self.states.last().expect("orbit never empty")
    }
}

/// Time-ordered scalar orbit. Second-order runs are seeded with the values at
/// times −1 and 0, so `start_index` is −1 there and 0 for first-order runs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarOrbit {
    pub values: Vec<f64>,
    pub start_index: i64,
}

impl ScalarOrbit {
    /// Value at (signed) time `n`; panics when `n` is outside the run.
    pub fn at(&self, n: i64) -> f64 {
        self.values[usize::try_from(n - self.start_index).expect("index before start")]
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("orbit never empty")
    }

    /// The values at odd (signed) times, in order.
    pub fn odd_values(&self) -> Vec<f64> {
        self.values
            .iter()
            .enumerate()
            .filter(|(k, _)| (self.start_index + *k as i64).rem_euclid(2) == 1)
            .map(|(_, &v)| v)
            .collect()
    }

    /// The values at even (signed) times, in order.
    pub fn even_values(&self) -> Vec<f64> {
        self.values
            .iter()
            .enumerate()
            .filter(|(k, _)| (self.start_index + *k as i64).rem_euclid(2) == 0)
            .map(|(_, &v)| v)
            .collect()
    }
}

fn check_state(x: f64, y: f64) -> Result<()> {
    if !x.is_finite() || !y.is_finite() || x < 0.0 || y < 0.0 {
        return Err(Error::Domain(alloc::format!(
            "state ({x}, {y}) must be finite and non-negative"
        )));
    }
    Ok(())
}

fn check_params(p: &StepParams, n: usize) -> Result<()> {
    for (name, v) in [
        ("alpha", p.alpha),
        ("beta", p.beta),
        ("sigma1", p.sigma1),
        ("sigma2", p.sigma2),
        ("c1", p.c1),
        ("c2", p.c2),
    ] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Domain(alloc::format!(
                "generator produced {name} = {v} at step {n}; parameters must be finite and >= 0"
            )));
        }
    }
    Ok(())
}

/// `exp(e)` guarded by the cap; `index` names the offending step on error.
pub(crate) fn checked_exp(e: f64, index: usize) -> Result<f64> {
    if e > EXP_CAP {
        return Err(Error::Overflow { index, exponent: e });
    }
    Ok(math::exp(e))
}

fn step_with_params(s: PlanarState, p: &StepParams, n: usize) -> Result<PlanarState> {
    let e = p.alpha - p.c1 * s.x - p.c2 * s.y;
    let x = p.sigma1 * s.y + p.sigma2 * s.x;
    let y = p.beta * s.x * checked_exp(e, n)?;
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::Overflow {
            index: n,
            exponent: e,
        });
    }
    Ok(PlanarState { x, y })
}

/// One step of the planar system at time `n`:
/// `x' = sigma1_n y + sigma2_n x`, `y' = beta_n x e^{alpha_n - c1_n x - c2_n y}`.
pub fn step_planar(s: PlanarState, sys: &RickerSystem, n: usize) -> Result<PlanarState> {
    check_state(s.x, s.y)?;
    step_with_params(s, &sys.params_at(n), n)
}

/// Iterates the planar system `n_steps` times; the orbit includes the seed,
/// so it has `n_steps + 1` states.
pub fn iterate_planar(x0: f64, y0: f64, sys: &RickerSystem, n_steps: usize) -> Result<PlanarOrbit> {
    iterate_planar_with(x0, y0, |n| sys.params_at(n), n_steps)
}

/// Generator-hook variant of [`iterate_planar`]: `source(n)` supplies the
/// parameter values in effect at step `n`, periodic or not. Each emitted
/// parameter set is validated like a periodic one.
pub fn iterate_planar_with<F>(x0: f64, y0: f64, source: F, n_steps: usize) -> Result<PlanarOrbit>
where
    F: Fn(usize) -> StepParams,
{
    check_state(x0, y0)?;
    let mut states = Vec::with_capacity(n_steps + 1);
    states.push(PlanarState::new(x0, y0));
    for n in 0..n_steps {
        let p = source(n);
        check_params(&p, n)?;
        let next = step_with_params(states[n], &p, n)?;
        states.push(next);
    }
    Ok(PlanarOrbit { states })
}

/// Iterates the second-order fold
/// `x_{n+1} = x_{n-1} e^{a_n - c1_n x_{n-1} - (c2_n/sigma1_n) x_n}`
/// from the seeds `x_{-1} = x_m1`, `x_0`. The orbit covers times
/// `-1 ..= n_steps`, i.e. `n_steps` applications of the recurrence.
///
/// Seeding with the planar values `(x_0, x_1)` reproduces the x-projection of
/// the planar orbit shifted by one: the fold's time `m` is planar time `m+1`.
pub fn iterate_second_order(
    x_m1: f64,
    x_0: f64,
    fp: &FoldedParams,
    n_steps: usize,
) -> Result<ScalarOrbit> {
    check_state(x_m1, x_0)?;
    let mut values = Vec::with_capacity(n_steps + 2);
    values.push(x_m1);
    values.push(x_0);
    for m in 0..n_steps {
        let s1 = fp.sigma1.eval(m);
        if s1 == 0.0 {
            return Err(Error::Domain(alloc::format!(
                "sigma1 = 0 at slot {m}; the second-order form divides by it"
            )));
        }
        let prev = values[m]; // x_{m-1}
        let cur = values[m + 1]; // x_m
        let e = fp.a.eval(m) - fp.c1.eval(m) * prev - (fp.c2.eval(m) / s1) * cur;
        let next = prev * checked_exp(e, m)?;
        if !next.is_finite() {
            return Err(Error::Overflow {
                index: m,
                exponent: e,
            });
        }
        values.push(next);
    }
    Ok(ScalarOrbit {
        values,
        start_index: -1,
    })
}

/// Iterates the reduced equation `r_{n+1} = r_{n-1} e^{d_n - r_{n-1} - r_n}`
/// from positive seeds `r_{-1} = r_m1`, `r_0`. Orbit covers times
/// `-1 ..= n_steps`.
pub fn iterate_reduced(
    r_m1: f64,
    r_0: f64,
    rp: &ReducedParams,
    n_steps: usize,
) -> Result<ScalarOrbit> {
    if !(r_m1 > 0.0) || !(r_0 > 0.0) || !r_m1.is_finite() || !r_0.is_finite() {
        return Err(Error::Domain(alloc::format!(
            "reduced seeds ({r_m1}, {r_0}) must be finite and > 0"
        )));
    }
    let mut values = Vec::with_capacity(n_steps + 2);
    values.push(r_m1);
    values.push(r_0);
    for m in 0..n_steps {
        let prev = values[m];
        let cur = values[m + 1];
        let e = rp.d.eval(m) - prev - cur;
        let next = prev * checked_exp(e, m)?;
        if !next.is_finite() {
            return Err(Error::Overflow {
                index: m,
                exponent: e,
            });
        }
        values.push(next);
    }
    Ok(ScalarOrbit {
        values,
        start_index: -1,
    })
}

/// The asymptotic cap `alpha/(1-beta) + eps` for any sequence satisfying
/// `x_{n+1} <= alpha + beta x_n`: every such sequence eventually stays below
/// the returned value. Use [`first_index_at_or_below`] on a concrete orbit to
/// find where "eventually" starts.
pub fn linear_comparison_bound(alpha: f64, beta: f64, _x0: f64, eps: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(alloc::format!(
            "beta = {beta} must lie in (0, 1)"
        )));
    }
    if !(alpha > 0.0) {
        return Err(Error::Domain(alloc::format!("alpha = {alpha} must be > 0")));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(alloc::format!("eps = {eps} must be > 0")));
    }
    Ok(alpha / (1.0 - beta) + eps)
}

/// First index at which `values[k] <= bound`, if any. Operationalizes the
/// "all sufficiently large n" in the comparison bound.
pub fn first_index_at_or_below(values: &[f64], bound: f64) -> Option<usize> {
    values.iter().position(|&v| v <= bound)
}

/// Uniform boundedness certificate. When applicable,
/// `bound = (m0 * m1 + sigma_bar) / (1 - sigma_bar)` caps every orbit's
/// x-coordinate asymptotically, where `m0 = m_ratio * e^{max alpha - 1}`,
/// `m1 = max sigma1`, `sigma_bar = max sigma2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound: f64,
    pub sigma_bar: f64,
    pub m0: f64,
    pub m1: f64,
    pub applicable: bool,
    /// Why the certificate does not apply, when it doesn't.
    pub reason: Option<String>,
}

impl BoundReport {
    fn inapplicable(reason: String) -> Self {
        BoundReport {
            bound: f64::INFINITY,
            sigma_bar: f64::NAN,
            m0: f64::NAN,
            m1: f64::NAN,
            applicable: false,
            reason: Some(reason),
        }
    }
}

/// Checks the hypotheses `max sigma2 < 1` and `beta_n <= m_ratio * c1_n`
/// slot-wise, and if both hold produces the uniform asymptotic bound.
/// Inapplicability is a result, not an error.
pub fn uniform_bound(sys: &RickerSystem, m_ratio: f64) -> BoundReport {
    let sigma_bar = sys.sigma2.max();
    if sigma_bar >= 1.0 {
        return BoundReport::inapplicable(alloc::format!("max sigma2 = {sigma_bar} is not < 1"));
    }
    let p = lcm_period(&[sys.beta.period(), sys.c1.period()]).expect("periods validated");
    for n in 0..p {
        if sys.beta.eval(n) > m_ratio * sys.c1.eval(n) {
            return BoundReport::inapplicable(alloc::format!(
                "beta_n > m_ratio * c1_n at slot {n} ({} > {} * {})",
                sys.beta.eval(n),
                m_ratio,
                sys.c1.eval(n)
            ));
        }
    }
    let m1 = sys.sigma1.max();
    let m2 = sys.alpha.max();
    let m0 = m_ratio * math::exp(m2 - 1.0);
    BoundReport {
        bound: (m0 * m1 + sigma_bar) / (1.0 - sigma_bar),
        sigma_bar,
        m0,
        m1,
        applicable: true,
        reason: None,
    }
}

/// Global-extinction criterion for periodic systems: true iff
/// `max_n (sigma1_n beta_n e^{alpha_n} + sigma2_n) < 1` over one combined
/// period (the limsup of a periodic sequence is its max).
pub fn check_c0(sys: &RickerSystem) -> bool {
    let p = lcm_period(&[
        sys.sigma1.period(),
        sys.beta.period(),
        sys.alpha.period(),
        sys.sigma2.period(),
    ])
    .expect("periods validated");
    (0..p)
        .map(|n| {
            sys.sigma1.eval(n) * sys.beta.eval(n) * math::exp(sys.alpha.eval(n))
                + sys.sigma2.eval(n)
        })
        .fold(f64::NEG_INFINITY, f64::max)
        < 1.0
}

/// Windowed variant of [`check_c0`] for generator-supplied (possibly
/// non-periodic) parameters. A finite window cannot certify a limsup, so the
/// result always carries `caveat = true`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowedC0 {
    /// Max of `sigma1 beta e^alpha + sigma2` over the window.
    pub sup: f64,
    /// Whether the windowed max is < 1.
    pub holds: bool,
    pub window: usize,
    /// Always true: finitely many terms only bound the limsup from below.
    pub caveat: bool,
}

/// Evaluates the extinction quantity over `window` generated steps.
pub fn check_c0_windowed<F>(source: F, window: usize) -> WindowedC0
where
    F: Fn(usize) -> StepParams,
{
    let sup = (0..window)
        .map(|n| {
            let p = source(n);
            p.sigma1 * p.beta * math::exp(p.alpha) + p.sigma2
        })
        .fold(f64::NEG_INFINITY, f64::max);
    WindowedC0 {
        sup,
        holds: sup < 1.0,
        window,
        caveat: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::PeriodicSeq;
    use crate::system::fold_second_order;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn seq(vals: &[f64]) -> PeriodicSeq {
        PeriodicSeq::new(vals.to_vec()).unwrap()
    }

    /// A random valid system with sigma2 = 0 and strictly positive beta,
    /// sigma1 (foldable regime).
    fn random_foldable(rng: &mut ChaCha8Rng) -> RickerSystem {
        let period = |rng: &mut ChaCha8Rng| rng.gen_range(1..=3usize);
        let draw = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| {
            let p = period(rng);
            PeriodicSeq::new((0..p).map(|_| rng.gen_range(lo..hi)).collect()).unwrap()
        };
        RickerSystem::new(
            draw(rng, 0.0, 2.0),
            draw(rng, 0.1, 2.0),
            draw(rng, 0.1, 2.0),
            seq(&[0.0]),
            draw(rng, 0.0, 1.5),
            draw(rng, 0.0, 1.5),
        )
        .unwrap()
    }

    #[test]
    fn origin_is_fixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let sys = random_foldable(&mut rng);
            for n in 0..5 {
                let s = step_planar(PlanarState::new(0.0, 0.0), &sys, n).unwrap();
                assert_eq!((s.x, s.y), (0.0, 0.0));
            }
        }
    }

    #[test]
    fn step_formulas_direct_substitution() {
        // (x, 0) with sigma2 = 0 goes to (0, beta x e^{alpha - c1 x}).
        let sys = RickerSystem::constant(0.5, 2.0, 1.0, 0.0, 0.3, 0.7).unwrap();
        let s = step_planar(PlanarState::new(1.5, 0.0), &sys, 0).unwrap();
        assert_eq!(s.x, 0.0);
        let want = 2.0 * 1.5 * (0.5f64 - 0.3 * 1.5).exp();
        assert!((s.y - want).abs() < 1e-15 * want);

        // The worked constant case: (1,1) -> (1, e^{-1}).
        let sys = RickerSystem::constant(0.0, 1.0, 1.0, 0.0, 1.0, 0.0).unwrap();
        let s = step_planar(PlanarState::new(1.0, 1.0), &sys, 0).unwrap();
        assert_eq!(s.x, 1.0);
        assert!((s.y - (-1.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn step_rejects_bad_state_and_caps_exponent() {
        let sys = RickerSystem::constant(1.0, 1.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        assert!(step_planar(PlanarState::new(-1.0, 0.0), &sys, 0).is_err());
        assert!(step_planar(PlanarState::new(f64::NAN, 0.0), &sys, 0).is_err());
        let hot = RickerSystem::constant(800.0, 1.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        match step_planar(PlanarState::new(0.01, 0.0), &hot, 3) {
            Err(Error::Overflow { index: 3, .. }) => {}
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn zero_steps_is_seed_only() {
        let sys = RickerSystem::constant(1.0, 1.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let orbit = iterate_planar(2.0, 3.0, &sys, 0).unwrap();
        assert_eq!(orbit.states, vec![PlanarState::new(2.0, 3.0)]);
    }

    #[test]
    fn linear_system_grows_without_bound() {
        // c1 = c2 = 0 with sigma1 beta e^alpha = 1 > 1 - sigma2 = 0.5: the
        // linear system has unbounded solutions.
        let sys = RickerSystem::constant(0.0, 1.0, 1.0, 0.5, 0.0, 0.0).unwrap();
        let orbit = iterate_planar(1.0, 1.0, &sys, 200).unwrap();
        let max_x = orbit.states.iter().map(|s| s.x).fold(0.0, f64::max);
        assert!(max_x > 1e12, "max x = {max_x}");
    }

    #[test]
    fn c0_system_converges_to_origin() {
        let sys = RickerSystem::constant(0.0, 1.0, 0.4, 0.3, 0.1, 0.1).unwrap();
        assert!(check_c0(&sys));
        let last = iterate_planar(1.0, 1.0, &sys, 500).unwrap().last();
        assert!(last.x < 1e-6 && last.y < 1e-6, "{last:?}");
    }

    #[test]
    fn second_order_zero_is_fixed() {
        let sys = RickerSystem::constant(1.0, 1.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let fp = fold_second_order(&sys).unwrap();
        let orbit = iterate_second_order(0.0, 0.0, &fp, 50).unwrap();
        assert!(orbit.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn second_order_negative_a_collapses() {
        // Autonomous a < 0: all positive solutions go to zero.
        let sys = RickerSystem::constant(0.0, 0.8, 1.0, 0.0, 1.0, 1.0).unwrap();
        let fp = fold_second_order(&sys).unwrap();
        assert!(fp.a.eval(0) < 0.0);
        let orbit = iterate_second_order(2.0, 3.0, &fp, 1000).unwrap();
        assert!(orbit.last() < 1e-6, "{}", orbit.last());
    }

    #[test]
    fn fold_consistency_shifted_projection() {
        // The fold's orbit seeded with (X_0, X_1) reproduces the planar
        // x-projection shifted by one time step. Orbits can be chaotic, so
        // rounding differences between the two recurrences amplify along the
        // run; the whole-orbit comparison gets a drift allowance while the
        // identity itself is checked tightly one step at a time, re-seeding
        // at phase-aligned times.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..25 {
            let sys = random_foldable(&mut rng);
            let fp = fold_second_order(&sys).unwrap();
            let x0 = rng.gen_range(0.05..5.0);
            let y0 = rng.gen_range(0.05..5.0);
            let planar = iterate_planar(x0, y0, &sys, 101).unwrap();
            let xs = planar.x_projection();
            let folded = iterate_second_order(xs[0], xs[1], &fp, 100).unwrap();
            for m in -1..=99i64 {
                let got = folded.at(m);
                let want = xs[(m + 1) as usize];
                assert!(
                    math::close(got, want, 1e-7),
                    "m={m}: folded {got} vs planar {want}"
                );
            }
            let period = sys.combined_period();
            let mut start = 0;
            while start + period + 1 < xs.len() - 1 {
                let one = iterate_second_order(xs[start], xs[start + 1], &fp, 1).unwrap();
                assert!(
                    math::close_rel(one.at(1), xs[start + 2], 1e-12),
                    "one step from t={start}: {} vs {}",
                    one.at(1),
                    xs[start + 2]
                );
                start += period;
            }
        }
    }

    #[test]
    fn second_order_rejects_zero_sigma1_slot() {
        let fp = FoldedParams {
            a: seq(&[1.0]),
            c1: seq(&[1.0]),
            c2: seq(&[1.0]),
            sigma1: seq(&[0.0, 1.0]),
        };
        assert!(iterate_second_order(1.0, 1.0, &fp, 10).is_err());
    }

    #[test]
    fn reduced_fixed_point_and_two_cycle_mean() {
        let rp = ReducedParams::constant(3.0).unwrap();
        let orbit = iterate_reduced(1.5, 1.5, &rp, 100).unwrap();
        assert!(orbit.values.iter().all(|&v| (v - 1.5).abs() < 1e-12));

        // d = 1.5: odd/even subsequences converge, limits sum to d.
        let rp = ReducedParams::constant(1.5).unwrap();
        let orbit = iterate_reduced(0.4, 2.0, &rp, 4000).unwrap();
        let odd = orbit.odd_values();
        let even = orbit.even_values();
        let sum = odd.last().unwrap() + even.last().unwrap();
        assert!((sum - 1.5).abs() < 1e-6, "sum = {sum}");
        // and the tails have settled
        let odd_tail = odd[odd.len() - 2] - odd[odd.len() - 1];
        assert!(odd_tail.abs() < 1e-8);
    }

    #[test]
    fn reduced_rejects_non_positive_seeds() {
        let rp = ReducedParams::constant(1.0).unwrap();
        assert!(iterate_reduced(0.0, 1.0, &rp, 5).is_err());
        assert!(iterate_reduced(1.0, -0.1, &rp, 5).is_err());
    }

    #[test]
    fn comparison_bound_values_and_domain() {
        assert!((linear_comparison_bound(1.0, 0.5, 100.0, 0.1).unwrap() - 2.1).abs() < 1e-15);
        assert!((linear_comparison_bound(2.0, 0.9, 0.0, 0.01).unwrap() - 20.01).abs() < 1e-12);
        assert!(linear_comparison_bound(1.0, 1.0, 0.0, 0.1).is_err());
        assert!(linear_comparison_bound(1.0, -0.1, 0.0, 0.1).is_err());
        assert!(linear_comparison_bound(0.0, 0.5, 0.0, 0.1).is_err());
    }

    #[test]
    fn comparison_bound_reached_quickly_from_100() {
        // u_{n+1} = 1 + 0.5 u_n from u_0 = 100 drops below 2.1 within 12 steps.
        let bound = linear_comparison_bound(1.0, 0.5, 100.0, 0.1).unwrap();
        let mut u = vec![100.0];
        for n in 0..20 {
            u.push(1.0 + 0.5 * u[n]);
        }
        let idx = first_index_at_or_below(&u, bound).unwrap();
        assert!(idx <= 12, "first index {idx}");
    }

    #[test]
    fn monotone_comparison_dominates() {
        // Any sequence with x_{n+1} <= alpha + beta x_n sits below the linear
        // orbit with equality dynamics and the same start.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let alpha = rng.gen_range(0.1..3.0);
            let beta = rng.gen_range(0.05..0.95);
            let x0 = rng.gen_range(0.0..10.0);
            let mut x = x0;
            let mut u = x0;
            for _ in 0..200 {
                let slack: f64 = rng.gen_range(0.0..1.0);
                x = (alpha + beta * x) * slack;
                u = alpha + beta * u;
                assert!(x <= u * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn uniform_bound_worked_example() {
        // sigma2=0.5, sigma1=1, alpha=1, beta=c1 (m_ratio=1): M0 = 1, bound = 3.
        let sys = RickerSystem::constant(1.0, 0.7, 1.0, 0.5, 0.7, 0.2).unwrap();
        let rep = uniform_bound(&sys, 1.0);
        assert!(rep.applicable);
        assert!((rep.m0 - 1.0).abs() < 1e-15);
        assert!((rep.bound - 3.0).abs() < 1e-15);
        assert_eq!(rep.sigma_bar, 0.5);
        assert_eq!(rep.m1, 1.0);
    }

    #[test]
    fn uniform_bound_hypothesis_gates() {
        let s_bad_sigma = RickerSystem::constant(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let rep = uniform_bound(&s_bad_sigma, 1.0);
        assert!(!rep.applicable);
        assert!(rep.reason.is_some());

        let s_bad_ratio = RickerSystem::constant(1.0, 2.0, 1.0, 0.5, 1.0, 1.0).unwrap();
        assert!(!uniform_bound(&s_bad_ratio, 1.0).applicable);
    }

    #[test]
    fn uniform_bound_soundness_simulated() {
        let sys = RickerSystem::constant(1.0, 0.7, 1.0, 0.5, 0.7, 0.2).unwrap();
        let rep = uniform_bound(&sys, 1.0);
        assert!(rep.applicable);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x0 = rng.gen_range(0.0..10.0);
            let y0 = rng.gen_range(0.0..10.0);
            let orbit = iterate_planar(x0, y0, &sys, 3000).unwrap();
            let max_tail = orbit.states[1000..].iter().map(|s| s.x).fold(0.0, f64::max);
            assert!(max_tail <= rep.bound + 1e-9, "tail max {max_tail}");
        }
    }

    #[test]
    fn c0_examples() {
        let t = RickerSystem::constant(0.0, 1.0, 0.4, 0.3, 0.1, 0.1).unwrap();
        assert!(check_c0(&t));
        let f = RickerSystem::constant(0.0, 1.0, 1.0, 0.5, 0.1, 0.1).unwrap();
        assert!(!check_c0(&f));
        let edge = RickerSystem::constant(0.0, 0.99, 1.0, 0.0, 0.1, 0.1).unwrap();
        assert!(check_c0(&edge));
    }

    #[test]
    fn c0_extinction_soundness_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut found = 0;
        while found < 5 {
            let sys = random_foldable(&mut rng);
            if !check_c0(&sys) {
                continue;
            }
            found += 1;
            for _ in 0..20 {
                let x0 = rng.gen_range(0.0..10.0);
                let y0 = rng.gen_range(0.0..10.0);
                let orbit = iterate_planar(x0, y0, &sys, 10_000).unwrap();
                let last = orbit.last();
                assert!(last.x < 1e-8 && last.y < 1e-8, "{last:?}");
            }
        }
    }

    #[test]
    fn windowed_c0_carries_caveat() {
        let sys = RickerSystem::constant(0.0, 1.0, 0.4, 0.3, 0.1, 0.1).unwrap();
        let rep = check_c0_windowed(|n| sys.params_at(n), 64);
        assert!(rep.holds && rep.caveat);
        assert!((rep.sup - 0.7).abs() < 1e-15);
        // A generator that later violates the criterion is only caught when
        // the window reaches it; the caveat flag is what warns the caller.
        let tricky = |n: usize| StepParams {
            alpha: 0.0,
            beta: if n < 50 { 0.5 } else { 2.0 },
            sigma1: 1.0,
            sigma2: 0.0,
            c1: 0.1,
            c2: 0.1,
        };
        assert!(check_c0_windowed(tricky, 10).holds);
        assert!(!check_c0_windowed(tricky, 100).holds);
    }

    #[test]
    fn generator_hook_matches_periodic_path() {
        let sys = RickerSystem::new(
            seq(&[0.5, 1.0]),
            seq(&[1.0]),
            seq(&[0.8]),
            seq(&[0.1]),
            seq(&[1.0, 0.5, 0.25]),
            seq(&[0.3]),
        )
        .unwrap();
        let a = iterate_planar(1.0, 2.0, &sys, 50).unwrap();
        let b = iterate_planar_with(1.0, 2.0, |n| sys.params_at(n), 50).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn generator_hook_validates_output() {
        let bad = |_n: usize| StepParams {
            alpha: -1.0,
            beta: 1.0,
            sigma1: 1.0,
            sigma2: 0.0,
            c1: 1.0,
            c2: 1.0,
        };
        assert!(iterate_planar_with(1.0, 1.0, bad, 3).is_err());
    }

    #[test]
    fn orbit_index_accessors() {
        let rp = ReducedParams::constant(1.0).unwrap();
        let orbit = iterate_reduced(0.5, 0.7, &rp, 10).unwrap();
        assert_eq!(orbit.at(-1), 0.5);
        assert_eq!(orbit.at(0), 0.7);
        assert_eq!(orbit.values.len(), 12);
        let odd = orbit.odd_values();
        let even = orbit.even_values();
        // covers times -1..=10: odd are -1,1,..,9 and even are 0,2,..,10
        assert_eq!(odd.len(), 6);
        assert_eq!(even.len(), 6);
        assert_eq!(odd[0], 0.5);
        assert_eq!(even[0], 0.7);
    }
}
