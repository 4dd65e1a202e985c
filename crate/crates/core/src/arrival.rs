//! Arrival-time distributions at a point detector.
//!
//! Two rules are provided. The Leavens rule takes `|j(X, t)|` normalised
//! over the time grid. The cutoff rule counts the current only while the
//! cumulative flux `f(t) = int j dt` sits at a new running maximum (for
//! outgoing flux) or a new running minimum (for incoming flux), and
//! normalises by the detection probability
//! `P = max f + max (-f)` at the end of the grid.
//!
//! All time integrals use the trapezoid rule and start at the first grid
//! time.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::observables::current;
use crate::scenario::Scenario;
use crate::wavefunction::Wavefunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrivalMethod {
    #[default]
    Leavens,
    Cutoff,
}

impl fmt::Display for ArrivalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrivalMethod::Leavens => "leavens",
            ArrivalMethod::Cutoff => "cutoff",
        })
    }
}

impl FromStr for ArrivalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leavens" => Ok(ArrivalMethod::Leavens),
            "cutoff" => Ok(ArrivalMethod::Cutoff),
            _ => Err(Error::Parse {
                what: "arrival method",
                input: s.to_string(),
            }),
        }
    }
}

/// Probability current at a fixed point over a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurrentSeries {
    /// um
    pub detector_x: f64,
    /// ms, strictly increasing
    pub times: Vec<f64>,
    /// 1/ms
    pub j: Vec<f64>,
}

impl CurrentSeries {
    pub fn new(detector_x: f64, times: Vec<f64>, j: Vec<f64>) -> Result<Self> {
        if times.len() != j.len() {
            return Err(Error::InvalidSeries(format!("{} times but {} currents", times.len(), j.len())));
        }
        if times.len() < 2 {
            return Err(Error::InvalidSeries("need at least two samples".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidSeries("times must increase strictly".into()));
        }
        if times.iter().chain(&j).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("current series"));
        }
        Ok(Self { detector_x, times, j })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Whether the current never changes sign.
    pub fn single_signed(&self) -> bool {
        self.j.iter().all(|&j| j >= 0.0) || self.j.iter().all(|&j| j <= 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArrivalDistribution {
    /// ms
    pub times: Vec<f64>,
    /// 1/ms
    pub pi: Vec<f64>,
    /// ms
    pub mean: f64,
    pub method: ArrivalMethod,
    /// `P(t_max)`; only defined for the cutoff rule.
    pub detection_probability: Option<f64>,
}

/// `j(X, t)` on `times`, evaluated in parallel when `exec` allows.
pub fn current_series(scenario: &Scenario, detector_x: f64, times: &[f64], exec: Execution) -> Result<CurrentSeries> {
    if let Some(&t) = times.iter().find(|&&t| !(t > 0.0)) {
        return Err(Error::NonPositiveTime(t));
    }
    let wf = Wavefunction::new(scenario);
    let j = exec
        .map(times, |&t| wf.sample(detector_x, t).map(|s| current(&s, &scenario.constants)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    CurrentSeries::new(detector_x, times.to_vec(), j)
}

/// Trapezoid running integral of `values` over `times`, starting at zero.
fn cumulative(times: &[f64], values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out = Vec::with_capacity(times.len());
    let mut acc = 0.0;
    let mut prev: Option<f64> = None;
    for (i, v) in values.enumerate() {
        if let Some(p) = prev {
            acc += 0.5 * (times[i] - times[i - 1]) * (p + v);
        }
        out.push(acc);
        prev = Some(v);
    }
    out
}

fn trapezoid(times: &[f64], values: impl Iterator<Item = f64>) -> f64 {
    cumulative(times, values).last().copied().unwrap_or(0.0)
}

/// Net flux through the detector, `f(s) = int_{t_0}^s j dt`, at each grid time.
pub fn cumulative_flux(series: &CurrentSeries) -> Vec<f64> {
    cumulative(&series.times, series.j.iter().copied())
}

/// `max_{s <= t} f(s) + max_{s <= t} (-f(s))` at every grid time.
pub fn detection_curve(series: &CurrentSeries) -> Vec<f64> {
    let f = cumulative_flux(series);
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    f.iter()
        .map(|&v| {
            hi = hi.max(v);
            lo = lo.max(-v);
            hi + lo
        })
        .collect()
}

/// Detection probability up to time `t`, which must lie on the grid span.
/// Between grid points the flux is interpolated linearly.
pub fn detection_probability(series: &CurrentSeries, t: f64) -> Result<f64> {
    let (first, last) = (series.times[0], series.times[series.len() - 1]);
    if !(t >= first && t <= last) {
        return Err(Error::InvalidSeries(format!("t = {t} ms outside grid [{first}, {last}]")));
    }
    let f = cumulative_flux(series);
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (i, &s) in series.times.iter().enumerate() {
        let value = if s <= t {
            f[i]
        } else {
            let w = (t - series.times[i - 1]) / (s - series.times[i - 1]);
            f[i - 1] + w * (f[i] - f[i - 1])
        };
        hi = hi.max(value);
        lo = lo.max(-value);
        if s >= t {
            break;
        }
    }
    Ok(hi + lo)
}

/// Leavens rule: `Pi = |j| / int |j| dt`.
pub fn arrival_leavens(series: &CurrentSeries) -> Result<ArrivalDistribution> {
    let norm = trapezoid(&series.times, series.j.iter().map(|j| j.abs()));
    if !(norm > 0.0) {
        return Err(Error::ZeroDetection);
    }
    let pi: Vec<f64> = series.j.iter().map(|j| j.abs() / norm).collect();
    Ok(finish(series, pi, ArrivalMethod::Leavens, None))
}

/// Cutoff rule with `Theta(0) = 1`.
///
/// At sample `i` the outgoing term fires when `f_i` equals its running
/// maximum and `j_i > 0`; the incoming term when `-f_i` equals its running
/// maximum and `j_i < 0`. Gating on the sign of `j` is the right-hand limit
/// of the continuous rule: it decides the tie at the first sample, where
/// `f = 0` is both extremes, and keeps `Pi >= 0` when a flux extremum falls
/// between samples. Plateaus at the running extreme count as detecting.
pub fn arrival_cutoff(series: &CurrentSeries) -> Result<ArrivalDistribution> {
    let f = cumulative_flux(series);
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut fires = Vec::with_capacity(f.len());
    for (&fi, &j) in f.iter().zip(&series.j) {
        hi = hi.max(fi);
        lo = lo.max(-fi);
        fires.push((fi >= hi && j > 0.0) || (-fi >= lo && j < 0.0));
    }
    let p = hi + lo;
    if !(p > 0.0) {
        return Err(Error::ZeroDetection);
    }
    let pi = series
        .j
        .iter()
        .zip(&fires)
        .map(|(j, &on)| if on { j.abs() / p } else { 0.0 })
        .collect();
    Ok(finish(series, pi, ArrivalMethod::Cutoff, Some(p)))
}

pub fn arrival(series: &CurrentSeries, method: ArrivalMethod) -> Result<ArrivalDistribution> {
    match method {
        ArrivalMethod::Leavens => arrival_leavens(series),
        ArrivalMethod::Cutoff => arrival_cutoff(series),
    }
}

fn finish(series: &CurrentSeries, pi: Vec<f64>, method: ArrivalMethod, p: Option<f64>) -> ArrivalDistribution {
    let mut dist = ArrivalDistribution {
        times: series.times.clone(),
        pi,
        mean: 0.0,
        method,
        detection_probability: p,
    };
    dist.mean = mean_arrival(&dist);
    dist
}

/// `int t Pi(t) dt` by the trapezoid rule.
pub fn mean_arrival(dist: &ArrivalDistribution) -> f64 {
    trapezoid(&dist.times, dist.times.iter().zip(&dist.pi).map(|(t, p)| t * p))
}

/// Trapezoid integral of `Pi`; one for a normalised distribution.
pub fn total_weight(dist: &ArrivalDistribution) -> f64 {
    trapezoid(&dist.times, dist.pi.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{GridSpec, InitialState};
    use proptest::prelude::*;

    fn series(times: Vec<f64>, j: Vec<f64>) -> CurrentSeries {
        CurrentSeries::new(2.0, times, j).unwrap()
    }

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        GridSpec::new(a, b, n).points()
    }

    /// Cutoff rule recomputed from scratch at every sample: flux by direct
    /// summation and running extremes by rescanning the prefix.
    fn brute_cutoff(s: &CurrentSeries) -> Vec<f64> {
        let n = s.len();
        let flux = |i: usize| (1..=i).map(|k| 0.5 * (s.times[k] - s.times[k - 1]) * (s.j[k] + s.j[k - 1])).sum::<f64>();
        let f: Vec<f64> = (0..n).map(flux).collect();
        let max_f = f.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let max_g = f.iter().map(|v| -v).fold(f64::NEG_INFINITY, f64::max);
        let p = max_f + max_g;
        (0..n)
            .map(|i| {
                let up = (0..=i).all(|k| f[k] <= f[i]);
                let down = (0..=i).all(|k| -f[k] <= -f[i]);
                let on = (up && s.j[i] > 0.0) || (down && s.j[i] < 0.0);
                if on {
                    s.j[i].abs() / p
                } else {
                    0.0
                }
            })
            .collect()
    }

    fn toy_series() -> Vec<CurrentSeries> {
        let t = grid(0.0, 10.0, 2001);
        let make = |g: &dyn Fn(f64) -> f64| series(t.clone(), t.iter().map(|&x| g(x)).collect());
        vec![
            make(&|x| (x * 1.3).sin()),
            make(&|x| (-(x - 3.0).powi(2)).exp() - 0.6 * (-(x - 6.0).powi(2)).exp() + 0.2 * (x * 4.0).sin() * (-x / 5.0).exp()),
            make(&|x| -(x * 0.7).cos() * (1.0 + 0.3 * (x * 9.0).sin())),
        ]
    }

    #[test]
    fn constant_current() {
        let t = grid(1.0, 3.0, 201);
        let s = series(t.clone(), vec![0.25; 201]);
        let f = cumulative_flux(&s);
        for (fi, ti) in f.iter().zip(&t) {
            assert!((fi - 0.25 * (ti - 1.0)).abs() < 1e-14);
        }
        let d = arrival_leavens(&s).unwrap();
        assert!(d.pi.iter().all(|p| (p - 0.5).abs() < 1e-14));
        assert!((d.mean - 2.0).abs() < 1e-12);
        assert!((detection_probability(&s, 3.0).unwrap() - 0.5).abs() < 1e-14);
        assert!((detection_probability(&s, 2.0).unwrap() - 0.25).abs() < 1e-14);
        assert!(detection_probability(&s, 3.5).is_err());
    }

    #[test]
    fn zero_current_is_never_detected() {
        let s = series(grid(0.0, 1.0, 11), vec![0.0; 11]);
        assert_eq!(detection_probability(&s, 1.0).unwrap(), 0.0);
        assert!(matches!(arrival_leavens(&s), Err(Error::ZeroDetection)));
        assert!(matches!(arrival_cutoff(&s), Err(Error::ZeroDetection)));
    }

    #[test]
    fn narrow_peak_mean_sits_on_the_peak() {
        let t = grid(0.0, 1.0, 10_001);
        let s = series(t.clone(), t.iter().map(|x| (-((x - 0.3137) / 1e-3).powi(2)).exp()).collect());
        let d = arrival_leavens(&s).unwrap();
        assert!((d.mean - 0.3137).abs() <= 1e-4, "{}", d.mean);
    }

    #[test]
    fn cutoff_matches_running_maximum_oracle() {
        for s in toy_series() {
            assert!(!s.single_signed());
            let d = arrival_cutoff(&s).unwrap();
            let oracle = brute_cutoff(&s);
            for (a, b) in d.pi.iter().zip(&oracle) {
                assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
            }
            assert!(d.pi.iter().all(|&p| p >= -1e-15));
            let p = d.detection_probability.unwrap();
            assert!((p - *detection_curve(&s).last().unwrap()).abs() < 1e-15);
            assert!((total_weight(&d) - 1.0).abs() < 1e-3, "{}", total_weight(&d));
        }
    }

    #[test]
    fn detection_curve_matches_brute_force() {
        for s in toy_series() {
            let f = cumulative_flux(&s);
            let curve = detection_curve(&s);
            for i in (0..s.len()).step_by(37) {
                let hi = f[..=i].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let lo = f[..=i].iter().map(|v| -v).fold(f64::NEG_INFINITY, f64::max);
                assert!((curve[i] - (hi + lo)).abs() < 1e-15);
                assert!((detection_probability(&s, s.times[i]).unwrap() - curve[i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn eigenstate_current_at_the_detector() {
        let s = Scenario::default();
        let times = grid(s.t_start, 0.6, 3001);
        let series = current_series(&s, 2.0, &times, Execution::default()).unwrap();
        assert!(series.j.iter().all(|&j| j >= -1e-12));
        let peak = series.j.iter().cloned().fold(0.0, f64::max);
        assert!(series.j[0].abs() < 1e-6 * peak);
        let f = cumulative_flux(&series);
        assert!(f.windows(2).all(|w| w[1] >= w[0] - 1e-15));
        let total = *f.last().unwrap();
        assert!(total > 0.0 && total <= 1.0, "{total}");
    }

    #[test]
    fn odd_states_carry_no_current_through_the_centre() {
        let s = Scenario::with_state(InitialState::Eigenstate { n: 7 });
        let times = grid(s.t_start, 0.1, 101);
        let series = current_series(&s, 0.5, &times, Execution::Sequential).unwrap();
        assert!(series.j.iter().all(|j| j.abs() < 1e-12));
    }

    #[test]
    fn higher_states_arrive_earlier() {
        let times = grid(1e-6, 0.6, 6001);
        let mean = |n| {
            let s = Scenario::with_state(InitialState::Eigenstate { n });
            arrival_leavens(&current_series(&s, 2.0, &times, Execution::default()).unwrap())
                .unwrap()
                .mean
        };
        let (m1, m50) = (mean(1), mean(50));
        assert!(m50 < m1, "{m50} vs {m1}");
    }

    #[test]
    fn rejects_bad_series() {
        assert!(CurrentSeries::new(0.0, vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(CurrentSeries::new(0.0, vec![1.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(CurrentSeries::new(0.0, vec![0.0, 1.0], vec![1.0, f64::NAN]).is_err());
        let s = Scenario::default();
        assert!(matches!(current_series(&s, 2.0, &[0.0, 0.1], Execution::Sequential), Err(Error::NonPositiveTime(_))));
    }

    proptest! {
        #[test]
        fn single_signed_series_agree(
            values in prop::collection::vec(0.0f64..5.0, 2..200),
            negative in any::<bool>(),
            dt in 1e-4f64..1.0,
        ) {
            let times: Vec<f64> = (0..values.len()).map(|i| 0.5 + dt * i as f64).collect();
            let j: Vec<f64> = values.iter().map(|v| if negative { -v } else { *v }).collect();
            let s = series(times, j);
            let (Ok(a), Ok(b)) = (arrival_leavens(&s), arrival_cutoff(&s)) else {
                return Ok(());
            };
            for (x, y) in a.pi.iter().zip(&b.pi) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
            prop_assert!((total_weight(&a) - 1.0).abs() < 1e-12);
            prop_assert!(a.mean >= s.times[0] && a.mean <= s.times[s.len() - 1]);
        }

        #[test]
        fn cutoff_is_never_negative(values in prop::collection::vec(-5.0f64..5.0, 2..300)) {
            let times: Vec<f64> = (0..values.len()).map(|i| i as f64 * 0.01).collect();
            let s = series(times, values);
            if let Ok(d) = arrival_cutoff(&s) {
                prop_assert!(d.pi.iter().all(|&p| p >= -1e-15));
                let oracle = brute_cutoff(&s);
                for (a, b) in d.pi.iter().zip(&oracle) {
                    prop_assert!((a - b).abs() <= 1e-12);
                }
            }
        }
    }
}
