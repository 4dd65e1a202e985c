//! Bohmian trajectories under the guidance law `dx/dt = j / rho`.
//!
//! Trajectories start at `t_start` and are advanced by classic fourth-order
//! Runge-Kutta with step-doubling error control and local extrapolation.
//! Steps are clipped so that every requested sample time is hit exactly.
//!
//! Shortly after release the edge-diffraction ripples make `v` oscillate
//! faster than the smallest allowed step. Their effect on positions is tiny
//! but not resolved, so accuracy there is limited to roughly the step
//! tolerance times the number of steps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::observables::{velocity, DEFAULT_NODE_EPS};
use crate::scenario::{GridSpec, InitialState, Scenario};
use crate::special::erf_complex;
use crate::wavefunction::{initial_wave, Wavefunction};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrajectoryStatus {
    Completed,
    StoppedAtNode,
    LeftDomain,
}

impl TrajectoryStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TrajectoryStatus::Completed => "completed",
            TrajectoryStatus::StoppedAtNode => "stopped-at-node",
            TrajectoryStatus::LeftDomain => "left-domain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    /// ms
    pub t: f64,
    /// um
    pub x: f64,
    /// um/ms
    pub v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub x0: f64,
    pub samples: Vec<TrajectoryPoint>,
    pub status: TrajectoryStatus,
    /// Why integration ended early, if it did.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectoryPoint {
        self.samples.last().expect("a trajectory holds at least its start")
    }

    /// Position at sample index `i`, if the trajectory got that far.
    pub fn x_at(&self, i: usize) -> Option<f64> {
        self.samples.get(i).map(|p| p.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    /// Per-step error bound in um.
    pub tol: f64,
    /// Steps shorter than this (ms) end the trajectory as stopped-at-node.
    pub min_step: f64,
    pub node_eps: f64,
    /// Leaving this interval ends the trajectory as left-domain.
    pub domain: (f64, f64),
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            min_step: 1e-9,
            node_eps: DEFAULT_NODE_EPS,
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            max_steps: 10_000_000,
        }
    }
}

/// Outcome of one RK4 step of size `h` from `(t, x)` with slope `v`.
fn rk4<F: Fn(f64, f64) -> Result<f64>>(f: &F, t: f64, x: f64, v: f64, h: f64) -> Result<f64> {
    let k1 = v;
    let k2 = f(t + 0.5 * h, x + 0.5 * h * k1)?;
    let k3 = f(t + 0.5 * h, x + 0.5 * h * k2)?;
    let k4 = f(t + h, x + h * k3)?;
    Ok(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
}

/// Integrates one trajectory from `(times[0], x0)` and records it at every
/// entry of `times`, which must be strictly increasing.
pub fn integrate_at(wf: &Wavefunction, x0: f64, times: &[f64], opts: &IntegratorOptions) -> Result<Trajectory> {
    if times.is_empty() {
        return Err(Error::InvalidSeries("no sample times".into()));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidSeries("sample times must increase strictly".into()));
    }
    // The state is carried as the offset `u` from the box centre, so that
    // trajectories mirrored about it stay mirrored to rounding error.
    let centre = 0.5 * wf.length();
    let f = |t: f64, u: f64| velocity(&wf.sample_centred(u, t)?, wf.constants(), opts.node_eps);

    let mut t = times[0];
    let mut u = x0 - centre;
    let mut v = f(t, u)?;
    let mut samples = Vec::with_capacity(times.len());
    samples.push(TrajectoryPoint { t, x: x0, v });
    let span = times[times.len() - 1] - t;
    let mut h = (span * 1e-4).max(opts.min_step);
    let mut steps = 0usize;

    let stop = |samples: Vec<TrajectoryPoint>, status, reason: String| Trajectory {
        x0,
        samples,
        status,
        reason: Some(reason),
    };

    for &target in &times[1..] {
        while t < target {
            steps += 1;
            if steps > opts.max_steps {
                let reason = format!("step budget exhausted at x = {} um, t = {t} ms", centre + u);
                return Ok(stop(samples, TrajectoryStatus::StoppedAtNode, reason));
            }
            let last = target - t <= h;
            let step = if last { target - t } else { h };
            // One full step against two half steps.
            let attempt = rk4(&f, t, u, v, step).and_then(|full| {
                let mid = rk4(&f, t, u, v, 0.5 * step)?;
                let vm = f(t + 0.5 * step, mid)?;
                Ok((full, rk4(&f, t + 0.5 * step, mid, vm, 0.5 * step)?))
            });
            let (full, half) = match attempt {
                Ok(pair) => pair,
                Err(Error::Node { .. }) if step * 0.5 >= opts.min_step => {
                    h = step * 0.5;
                    continue;
                }
                Err(e @ Error::Node { .. }) => return Ok(stop(samples, TrajectoryStatus::StoppedAtNode, e.to_string())),
                Err(e) => return Err(e),
            };
            let err = (half - full).abs();
            if !err.is_finite() {
                let reason = format!("non-finite position after x = {} um, t = {t} ms", centre + u);
                return Ok(stop(samples, TrajectoryStatus::LeftDomain, reason));
            }
            // At the floor step the error estimate is accepted as is: very
            // early on the edge ripple oscillates faster than any usable step.
            if err > opts.tol && step > opts.min_step {
                h = (step * (0.9 * (opts.tol / err).powf(0.2)).max(0.1)).max(opts.min_step);
                continue;
            }
            t = if last { target } else { t + step };
            // Local extrapolation removes the leading error term.
            u = half + (half - full) / 15.0;
            let x = centre + u;
            if x < opts.domain.0 || x > opts.domain.1 {
                return Ok(stop(samples, TrajectoryStatus::LeftDomain, format!("left domain at x = {x} um, t = {t} ms")));
            }
            v = match f(t, u) {
                Ok(v) => v,
                Err(e @ Error::Node { .. }) => return Ok(stop(samples, TrajectoryStatus::StoppedAtNode, e.to_string())),
                Err(e) => return Err(e),
            };
            let grow = if err > 0.0 { (0.9 * (opts.tol / err).powf(0.2)).min(4.0) } else { 4.0 };
            if !last || grow < 1.0 {
                h = step * grow;
            }
        }
        samples.push(TrajectoryPoint { t, x: centre + u, v });
    }
    Ok(Trajectory {
        x0,
        samples,
        status: TrajectoryStatus::Completed,
        reason: None,
    })
}

/// Sample times used by [`integrate_trajectory`]: `t_count` points over
/// `[t_start, t_end]`.
pub fn sample_times(scenario: &Scenario, t_end: f64) -> Result<Vec<f64>> {
    if !(t_end > scenario.t_start) {
        return Err(Error::InvalidSeries(format!(
            "t_end = {t_end} ms must exceed t_start = {} ms",
            scenario.t_start
        )));
    }
    Ok(GridSpec::new(scenario.t_start, t_end, scenario.t_count.max(2)).points())
}

/// Trajectory from `x0` over `[t_start, t_end]` with per-step tolerance `tol`.
pub fn integrate_trajectory(scenario: &Scenario, x0: f64, t_end: f64, tol: f64) -> Result<Trajectory> {
    let wf = Wavefunction::new(scenario);
    let opts = IntegratorOptions {
        tol,
        ..Default::default()
    };
    integrate_at(&wf, x0, &sample_times(scenario, t_end)?, &opts)
}

/// How initial positions are drawn from `|psi_0|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// Equally spaced quantiles `(i + 1/2) / count` of the initial density.
    #[default]
    Quantile,
    /// Independent draws (Born rule) from a seeded ChaCha8 stream.
    Born,
}

impl std::str::FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantile" => Ok(SamplingMode::Quantile),
            "born" => Ok(SamplingMode::Born),
            _ => Err(Error::Parse {
                what: "sampling mode",
                input: s.to_string(),
            }),
        }
    }
}

fn real_erf(x: f64) -> f64 {
    erf_complex(Complex64::new(x, 0.0)).map(|z| z.re).unwrap_or(x.signum())
}

/// Cumulative distribution of `|psi_0|^2` normalised to one, together with
/// its support.
fn initial_cdf(state: &InitialState, length: f64) -> (Box<dyn Fn(f64) -> f64 + Send + Sync>, (f64, f64)) {
    match *state {
        InitialState::Eigenstate { n } => {
            let w = 2.0 * n as f64 * std::f64::consts::PI / length;
            (Box::new(move |x: f64| x / length - (w * x).sin() / (w * length)), (0.0, length))
        }
        InitialState::TruncatedGaussian { x0, sigma0 } => {
            let s = std::f64::consts::SQRT_2 * sigma0;
            let lo = real_erf((0.0 - x0) / s);
            let hi = real_erf((length - x0) / s);
            (Box::new(move |x: f64| (real_erf((x - x0) / s) - lo) / (hi - lo)), (0.0, length))
        }
        InitialState::FreeGaussian { x0, sigma0 } => {
            let s = std::f64::consts::SQRT_2 * sigma0;
            let half = 12.0 * sigma0;
            (Box::new(move |x: f64| 0.5 * (1.0 + real_erf((x - x0) / s))), (x0 - half, x0 + half))
        }
    }
}

fn invert(cdf: &dyn Fn(f64) -> f64, (mut a, mut b): (f64, f64), u: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if cdf(m) < u {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn near_node(state: &InitialState, length: f64, x: f64) -> bool {
    match *state {
        InitialState::Eigenstate { n } => {
            let cell = length / n as f64;
            let r = (x / cell).round();
            (x - r * cell).abs() < 1e-9
        }
        _ => false,
    }
}

fn symmetric_about_centre(state: &InitialState, length: f64) -> bool {
    match *state {
        InitialState::Eigenstate { .. } => true,
        InitialState::TruncatedGaussian { x0, .. } => x0 == 0.5 * length,
        InitialState::FreeGaussian { .. } => false,
    }
}

/// Whether `u` is the cumulative probability at an interior node. The
/// density is flat there, so the test is done on `u` rather than on the
/// inverted position.
fn node_quantile(state: &InitialState, u: f64) -> bool {
    match *state {
        InitialState::Eigenstate { n } => {
            let k = u * n as f64;
            (k - k.round()).abs() < 1e-9
        }
        _ => false,
    }
}

/// Initial positions distributed as `|psi_0|^2`, never within 1e-9 um of a
/// node. Born mode is reproducible for a given seed; quantile mode ignores it.
pub fn sample_initial_positions(state: &InitialState, length: f64, count: usize, seed: u64, mode: SamplingMode) -> Vec<f64> {
    let (cdf, support) = initial_cdf(state, length);
    match mode {
        SamplingMode::Quantile => {
            let quantile = |i: usize| {
                let u = (i as f64 + 0.5) / count as f64;
                if node_quantile(state, u) {
                    // Step towards the centre so the set stays mirror-symmetric.
                    let du = if u < 0.5 { 0.25 } else { -0.25 } / count as f64;
                    invert(&*cdf, support, u + du)
                } else {
                    invert(&*cdf, support, u)
                }
            };
            if !symmetric_about_centre(state, length) {
                return (0..count).map(quantile).collect();
            }
            // Build the upper half as exact reflections of the lower half.
            // Snapping to multiples of 2^-52 L keeps `x - L/2` and `L - x`
            // exact, so mirrored starts are mirrored to the last bit.
            let q = length * f64::EPSILON / 2.0;
            let mut xs = vec![0.0; count];
            for i in 0..count / 2 {
                let x = (quantile(i) / q).round() * q;
                xs[i] = x;
                xs[count - 1 - i] = length - x;
            }
            if count % 2 == 1 {
                let mid = count / 2;
                xs[mid] = if node_quantile(state, 0.5) { quantile(mid) } else { 0.5 * length };
            }
            xs
        }
        SamplingMode::Born => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let u: f64 = rng.gen();
                let x = invert(&*cdf, support, u);
                if !near_node(state, length, x) && initial_wave(state, length, x).norm_sqr() > 0.0 {
                    out.push(x);
                }
            }
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ensemble {
    pub scenario: Scenario,
    pub mode: SamplingMode,
    pub seed: Option<u64>,
    pub trajectories: Vec<Trajectory>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    pub count: usize,
    pub seed: u64,
    pub mode: SamplingMode,
    pub t_end: f64,
    pub options: IntegratorOptions,
}

/// Integrates trajectories from sampled initial positions. Failures of
/// individual trajectories are recorded in their status.
pub fn ensemble(scenario: &Scenario, spec: &EnsembleSpec, exec: Execution) -> Result<Ensemble> {
    let positions = sample_initial_positions(&scenario.state, scenario.box_length(), spec.count, spec.seed, spec.mode);
    ensemble_from(scenario, &positions, spec, exec)
}

/// As [`ensemble`] but from given initial positions.
pub fn ensemble_from(scenario: &Scenario, positions: &[f64], spec: &EnsembleSpec, exec: Execution) -> Result<Ensemble> {
    let times = sample_times(scenario, spec.t_end)?;
    let wf = Wavefunction::new(scenario);
    let trajectories = exec.map(positions, |&x0| {
        integrate_at(&wf, x0, &times, &spec.options).unwrap_or_else(|e| Trajectory {
            x0,
            samples: vec![TrajectoryPoint {
                t: times[0],
                x: x0,
                v: f64::NAN,
            }],
            status: TrajectoryStatus::StoppedAtNode,
            reason: Some(e.to_string()),
        })
    });
    Ok(Ensemble {
        scenario: scenario.clone(),
        mode: spec.mode,
        seed: (spec.mode == SamplingMode::Born).then_some(spec.seed),
        trajectories,
    })
}

/// Earliest common sample time at which the ensemble's velocities have split
/// into two branches: some `v > threshold`, some `v < -threshold`, and at
/// most `slow_fraction` of the trajectories with `|v| <= threshold`.
pub fn bifurcation_time(ensemble: &Ensemble, threshold: f64, slow_fraction: f64) -> Option<f64> {
    let trajs = &ensemble.trajectories;
    let len = trajs.iter().map(|t| t.samples.len()).min()?;
    (0..len).find_map(|i| {
        let (mut up, mut down, mut slow) = (false, false, 0usize);
        for tr in trajs {
            let v = tr.samples[i].v;
            if v > threshold {
                up = true;
            } else if v < -threshold {
                down = true;
            } else {
                slow += 1;
            }
        }
        let frac = slow as f64 / trajs.len() as f64;
        (up && down && frac <= slow_fraction).then(|| trajs[0].samples[i].t)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eigen(n: u32) -> Scenario {
        Scenario::with_state(InitialState::Eigenstate { n })
    }

    #[test]
    fn odd_midpoint_stays_at_rest() {
        let s = eigen(7);
        let tr = integrate_trajectory(&s, 0.5, 0.06, 1e-9).unwrap();
        assert_eq!(tr.status, TrajectoryStatus::Completed);
        let dev = tr.samples.iter().map(|p| (p.x - 0.5).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-6, "{dev}");
    }

    #[test]
    fn even_midpoint_is_rejected() {
        let s = eigen(2);
        assert!(matches!(integrate_trajectory(&s, 0.5, 0.01, 1e-9), Err(Error::Node { .. })));
    }

    #[test]
    fn first_sample_is_the_start() {
        let s = eigen(3);
        let tr = integrate_trajectory(&s, 0.2, 0.02, 1e-9).unwrap();
        assert_eq!(tr.samples[0].t, s.t_start);
        assert_eq!(tr.samples[0].x, 0.2);
        assert_eq!(tr.samples.len(), s.t_count);
        assert_eq!(tr.last().t, 0.02);
        assert!(tr.samples.windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn sample_velocities_follow_the_guidance_law() {
        let s = eigen(7);
        let wf = Wavefunction::new(&s);
        let tr = integrate_trajectory(&s, 0.31, 0.05, 1e-9).unwrap();
        for p in tr.samples.iter().step_by(97) {
            let v = velocity(&wf.sample(p.x, p.t).unwrap(), &s.constants, DEFAULT_NODE_EPS).unwrap();
            assert!((v - p.v).abs() <= 1e-9 * v.abs().max(1.0), "t={}: {v} vs {}", p.t, p.v);
        }
    }

    #[test]
    fn free_gaussian_matches_closed_form() {
        let s = Scenario::with_state(InitialState::FreeGaussian { x0: 0.5, sigma0: 0.25 });
        let rate = s.hbar_over_mass() / (2.0 * 0.25 * 0.25);
        for x0 in [-0.3, 0.1, 0.5, 0.77, 1.4] {
            let tr = integrate_trajectory(&s, x0, 0.1, 1e-10).unwrap();
            for p in &tr.samples {
                let exact = 0.5 + (x0 - 0.5) * (1.0 + (rate * p.t).powi(2)).sqrt();
                assert!((p.x - exact).abs() < 1e-6, "x0={x0} t={}: {} vs {exact}", p.t, p.x);
            }
        }
    }

    #[test]
    fn paths_fan_out_from_the_middle() {
        let s = eigen(7);
        let spec = EnsembleSpec {
            count: 20,
            seed: 0,
            mode: SamplingMode::Quantile,
            t_end: 0.06,
            options: IntegratorOptions::default(),
        };
        let ens = ensemble(&s, &spec, Execution::default()).unwrap();
        for tr in &ens.trajectories {
            assert_eq!(tr.status, TrajectoryStatus::Completed);
            let end = tr.last().x;
            if tr.x0 < 0.5 {
                assert!(end < tr.x0, "{} -> {end}", tr.x0);
            } else {
                assert!(end > tr.x0, "{} -> {end}", tr.x0);
            }
        }
        // Non-crossing and mirror symmetry.
        let k = ens.trajectories.len();
        for i in 0..s.t_count {
            for w in ens.trajectories.windows(2) {
                assert!(w[0].samples[i].x < w[1].samples[i].x + 1e-8);
            }
            for a in 0..k / 2 {
                let l = ens.trajectories[a].samples[i].x;
                let r = ens.trajectories[k - 1 - a].samples[i].x;
                assert!((l + r - 1.0).abs() < 1e-6, "i={i} a={a} {l} {r} {}", l + r - 1.0);
            }
        }
        let v7 = s.semiclassical_velocity(7).unwrap();
        let tb = bifurcation_time(&ens, 0.5 * v7, 0.05).unwrap();
        assert!((0.025..=0.035).contains(&tb), "{tb}");
    }

    #[test]
    fn execution_modes_agree() {
        let s = eigen(4);
        let spec = EnsembleSpec {
            count: 6,
            seed: 3,
            mode: SamplingMode::Born,
            t_end: 0.02,
            options: IntegratorOptions::default(),
        };
        let a = ensemble(&s, &spec, Execution::Sequential).unwrap();
        let b = ensemble(&s, &spec, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn integrator_converges_at_fourth_order() {
        let s = Scenario::with_state(InitialState::FreeGaussian { x0: 0.5, sigma0: 0.25 });
        let wf = Wavefunction::new(&s);
        let rate = s.hbar_over_mass() / (2.0 * 0.25 * 0.25);
        let (x0, t_end) = (1.2, 0.5);
        let exact = 0.5 + (x0 - 0.5) * (1.0 + (rate * t_end).powi(2)).sqrt();
        let error = |tol| {
            let opts = IntegratorOptions {
                tol,
                ..Default::default()
            };
            (integrate_at(&wf, x0, &[s.t_start, t_end], &opts).unwrap().last().x - exact).abs()
        };
        let (e1, e2) = (error(1e-5), error(1e-6));
        // The accepted step scales as tol^(1/5); an order-p method then has
        // global error ~ tol^(p/5).
        let order = 5.0 * (e1 / e2).log10();
        assert!(order >= 3.5, "e1={e1:e} e2={e2:e} order={order}");
    }

    #[test]
    fn confined_paths_outrun_free_ones() {
        let conf = Scenario::with_state(InitialState::TruncatedGaussian { x0: 0.5, sigma0: 0.25 });
        let free = Scenario::with_state(InitialState::FreeGaussian { x0: 0.5, sigma0: 0.25 });
        let starts = sample_initial_positions(&conf.state, 1.0, 10, 0, SamplingMode::Quantile);
        for x0 in starts {
            let a = integrate_trajectory(&conf, x0, 0.1, 1e-9).unwrap().last().v;
            let b = integrate_trajectory(&free, x0, 0.1, 1e-9).unwrap().last().v;
            assert!(a.abs() >= b.abs(), "x0={x0}: {a} vs {b}");
        }
    }

    #[test]
    fn quantiles_avoid_nodes_and_are_sorted() {
        for n in [2, 6] {
            for count in [1, 7, 21, 100] {
                let xs = sample_initial_positions(&InitialState::Eigenstate { n }, 1.0, count, 0, SamplingMode::Quantile);
                assert_eq!(xs.len(), count);
                assert!(xs.windows(2).all(|w| w[0] < w[1]));
                assert!(xs.iter().all(|&x| !near_node(&InitialState::Eigenstate { n }, 1.0, x)));
            }
        }
    }

    #[test]
    fn born_samples_follow_the_sine_squared_law() {
        let xs = sample_initial_positions(&InitialState::Eigenstate { n: 1 }, 1.0, 1000, 42, SamplingMode::Born);
        let mut sorted = xs.clone();
        sorted.sort_by(f64::total_cmp);
        let cdf = |x: f64| x - (2.0 * std::f64::consts::PI * x).sin() / (2.0 * std::f64::consts::PI);
        let ks = sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let c = cdf(x);
                (c - i as f64 / 1000.0).abs().max(((i + 1) as f64 / 1000.0 - c).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 0.05, "{ks}");
        assert_eq!(xs, sample_initial_positions(&InitialState::Eigenstate { n: 1 }, 1.0, 1000, 42, SamplingMode::Born));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn born_samples_stay_in_the_box(seed in any::<u64>(), n in 1u32..40) {
            let state = InitialState::Eigenstate { n };
            let xs = sample_initial_positions(&state, 1.0, 50, seed, SamplingMode::Born);
            prop_assert!(xs.iter().all(|&x| x > 0.0 && x < 1.0));
            prop_assert!(xs.iter().all(|&x| !near_node(&state, 1.0, x)));
        }

        #[test]
        fn quantiles_mirror_about_the_centre(n in 1u32..30, count in 2usize..40) {
            let xs = sample_initial_positions(&InitialState::Eigenstate { n }, 1.0, count, 0, SamplingMode::Quantile);
            for i in 0..count / 2 {
                prop_assert_eq!(xs[i] - 0.5, -(xs[count - 1 - i] - 0.5));
            }
        }
    }
}
