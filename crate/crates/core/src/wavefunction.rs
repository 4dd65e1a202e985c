//! The released wavefunction `psi(x, t)` and its spatial derivative.
//!
//! Eigenstates are evaluated in closed form from Fresnel integrals, the
//! truncated Gaussian from two scaled complementary error functions, and the
//! free Gaussian from its textbook expression. [`oracle_wave`] integrates the
//! free propagator against the initial state directly and serves as the
//! independent reference for all three.

use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_panels, QuadratureOptions};
use crate::scenario::{wavenumber, InitialState, PhysicalConstants, Scenario};
use crate::special::{erfcx, fresnel};

/// `psi` and `d psi / dx` at one space-time point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveSample {
    /// um
    pub x: f64,
    /// ms
    pub t: f64,
    /// um^-1/2
    pub psi: Complex64,
    /// um^-3/2
    pub dpsi_dx: Complex64,
}

/// Upper limit `xi_n(x, t)` of the Fresnel integral.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DimensionlessArgument(pub f64);

/// `sqrt(m / (pi hbar t)) (v_n t - x)`.
pub fn xi_n(n: u32, x: f64, t: f64, scenario: &Scenario) -> Result<DimensionlessArgument> {
    check_time(t)?;
    let hm = scenario.hbar_over_mass();
    let v = hm * wavenumber(n, scenario.box_length())?;
    Ok(DimensionlessArgument((v * t - x) / (PI * hm * t).sqrt()))
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTime(t))
    }
}

/// `exp(i pi u)`, exact at multiples of 1/2.
fn cis_pi(u: f64) -> Complex64 {
    let r = u.rem_euclid(2.0);
    let quarter = (2.0 * r).round();
    let f = r - 0.5 * quarter;
    let (s, c) = (PI * f).sin_cos();
    match quarter as i64 % 4 {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

fn gaussian_norm(sigma0: f64) -> f64 {
    (2.0 * PI * sigma0 * sigma0).powf(-0.25)
}

/// Wavefunction at t = 0: zero outside `[0, L]` except for the free packet.
pub fn initial_wave(state: &InitialState, length: f64, x: f64) -> Complex64 {
    let inside = (0.0..=length).contains(&x);
    let re = match *state {
        InitialState::Eigenstate { n } => {
            if inside {
                (2.0 / length).sqrt() * (PI * n as f64 * x / length).sin()
            } else {
                0.0
            }
        }
        InitialState::TruncatedGaussian { x0, sigma0 } => {
            if inside {
                gaussian_norm(sigma0) * (-(x - x0).powi(2) / (4.0 * sigma0 * sigma0)).exp()
            } else {
                0.0
            }
        }
        InitialState::FreeGaussian { x0, sigma0 } => {
            gaussian_norm(sigma0) * (-(x - x0).powi(2) / (4.0 * sigma0 * sigma0)).exp()
        }
    };
    Complex64::new(re, 0.0)
}

/// Evaluator bound to one scenario.
#[derive(Debug, Clone, Copy)]
pub struct Wavefunction {
    state: InitialState,
    constants: PhysicalConstants,
    hbar_over_mass: f64,
    length: f64,
}

impl Wavefunction {
    pub fn new(scenario: &Scenario) -> Self {
        Self {
            state: scenario.state,
            constants: scenario.constants,
            hbar_over_mass: scenario.hbar_over_mass(),
            length: scenario.box_length(),
        }
    }

    pub fn state(&self) -> &InitialState {
        &self.state
    }

    /// Box width in um.
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub fn initial(&self, x: f64) -> Complex64 {
        initial_wave(&self.state, self.length, x)
    }

    pub fn sample(&self, x: f64, t: f64) -> Result<WaveSample> {
        check_time(t)?;
        if !x.is_finite() {
            return Err(Error::NonFinite("position"));
        }
        let (psi, dpsi_dx) = match self.state {
            InitialState::Eigenstate { n } => {
                if n == 0 {
                    return Err(Error::ZeroQuantumNumber);
                }
                self.eigenstate(n, x, t)
            }
            InitialState::TruncatedGaussian { x0, sigma0 } => self.truncated_gaussian(x0, sigma0, x, t),
            InitialState::FreeGaussian { x0, sigma0 } => self.free_gaussian(x0, sigma0, x, t),
        };
        if !(psi.re.is_finite() && psi.im.is_finite() && dpsi_dx.re.is_finite() && dpsi_dx.im.is_finite()) {
            return Err(Error::NonFinite("wavefunction value"));
        }
        Ok(WaveSample { x, t, psi, dpsi_dx })
    }

    /// Sample at `x = L/2 + u`.
    ///
    /// Eigenstates have parity `(-1)^(n+1)` about the centre; they are
    /// evaluated at `L/2 + |u|` and reflected, so samples at `u` and `-u`
    /// are exact mirror images (equal density, opposite current).
    pub fn sample_centred(&self, u: f64, t: f64) -> Result<WaveSample> {
        let c = 0.5 * self.length;
        match self.state {
            InitialState::Eigenstate { n } if u < 0.0 => {
                let w = self.sample(c + (-u), t)?;
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                Ok(WaveSample {
                    x: c + u,
                    t,
                    psi: w.psi * sign,
                    dpsi_dx: -w.dpsi_dx * sign,
                })
            }
            _ => self.sample(c + u, t),
        }
    }

    /// Right- and left-moving diffracted plane waves:
    ///
    /// ```text
    /// psi_+ = P e^{ i k x - i E t} [F(xi(x - L)) - F(xi(x))]
    /// psi_- = P e^{-i k x - i E t} [F(xi(L - x)) - F(xi(-x))]
    /// P = e^{-3 i pi / 4} / (2 sqrt(L))
    /// ```
    ///
    /// Differentiating the Fresnel limits produces boundary terms
    /// proportional to `sin(k L)`, which vanish for integer `n`, leaving
    /// `d psi / dx = i k (psi_+ - psi_-)`.
    fn eigenstate(&self, n: u32, x: f64, t: f64) -> (Complex64, Complex64) {
        let l = self.length;
        let hm = self.hbar_over_mass;
        let k = n as f64 * PI / l;
        let v = hm * k;
        let scale = 1.0 / (PI * hm * t).sqrt();
        let xi = |y: f64| scale * (v * t - y);

        let energy_phase = Complex64::from_polar(1.0, -0.5 * hm * k * k * t);
        let prefactor = Complex64::from_polar(0.5 / l.sqrt(), -3.0 * FRAC_PI_4) * energy_phase;
        let right = cis_pi(n as f64 * x / l);

        let bracket_plus = fresnel(xi(x - l)) - fresnel(xi(x));
        let bracket_minus = fresnel(xi(l - x)) - fresnel(xi(-x));
        let plus = prefactor * right * bracket_plus;
        let minus = prefactor * right.conj() * bracket_minus;
        let ik = Complex64::new(0.0, k);
        (plus + minus, ik * (plus - minus))
    }

    /// Completes the square in
    /// `int_0^L exp(-(x'-x0)^2/(4 s^2) + i a (x - x')^2) dx'` with
    /// `a = m / (2 hbar t)` and writes the result with `erfcx` so that no
    /// exponential is ever evaluated at a large positive real part.
    fn truncated_gaussian(&self, x0: f64, sigma0: f64, x: f64, t: f64) -> (Complex64, Complex64) {
        let l = self.length;
        let alpha = 0.5 / (self.hbar_over_mass * t);
        let a = 0.25 / (sigma0 * sigma0);
        let ia = Complex64::new(0.0, alpha);

        let big_a = a - ia;
        let big_b = 2.0 * a * x0 - 2.0 * ia * x;
        let big_c = -a * x0 * x0 + ia * x * x;
        let mu = big_b / (2.0 * big_a);
        let exponent = |xp: f64| -big_a * xp * xp + big_b * xp + big_c;
        let at_mu = big_c + big_b * big_b / (4.0 * big_a);

        let root = big_a.sqrt();
        let z0 = root * (0.0 - mu);
        let zl = root * (l - mu);
        let e0 = exponent(0.0).exp();
        let el = exponent(l).exp();

        let diff = if z0.re >= 0.0 {
            e0 * erfcx(z0) - el * erfcx(zl)
        } else if zl.re <= 0.0 {
            el * erfcx(-zl) - e0 * erfcx(-z0)
        } else {
            2.0 * at_mu.exp() - el * erfcx(zl) - e0 * erfcx(-z0)
        };
        let integral = diff * (0.5 * PI.sqrt()) / root;
        // int (x' - mu) e^g dx' = (e^g(0) - e^g(L)) / (2A)
        let first_moment = (e0 - el) / (2.0 * big_a);

        let kernel = Complex64::from_polar((alpha / PI).sqrt(), -FRAC_PI_4) * gaussian_norm(sigma0);
        let psi = kernel * integral;
        let dpsi = kernel * 2.0 * ia * ((x - mu) * integral - first_moment);
        (psi, dpsi)
    }

    fn free_gaussian(&self, x0: f64, sigma0: f64, x: f64, t: f64) -> (Complex64, Complex64) {
        let s2 = sigma0 * sigma0;
        let spread = Complex64::new(1.0, self.hbar_over_mass * t / (2.0 * s2));
        let d = x - x0;
        let psi = gaussian_norm(sigma0) / spread.sqrt() * (-(d * d) / (4.0 * s2 * spread)).exp();
        let dpsi = -d / (2.0 * s2 * spread) * psi;
        (psi, dpsi)
    }
}

fn evaluator(scenario: &Scenario, state: InitialState) -> Wavefunction {
    Wavefunction {
        state,
        ..Wavefunction::new(scenario)
    }
}

pub fn eigenstate_wave(n: u32, x: f64, t: f64, scenario: &Scenario) -> Result<WaveSample> {
    evaluator(scenario, InitialState::Eigenstate { n }).sample(x, t)
}

pub fn gaussian_wave(x0: f64, sigma0: f64, x: f64, t: f64, scenario: &Scenario) -> Result<WaveSample> {
    evaluator(scenario, InitialState::TruncatedGaussian { x0, sigma0 }).sample(x, t)
}

pub fn free_gaussian_wave(x0: f64, sigma0: f64, x: f64, t: f64, scenario: &Scenario) -> Result<WaveSample> {
    evaluator(scenario, InitialState::FreeGaussian { x0, sigma0 }).sample(x, t)
}

/// Direct quadrature of `int G(x, t | x', 0) psi_0(x') dx'`, the reference
/// for the closed forms. `quad_tol` bounds the absolute error of `psi`; the
/// derivative's bound is scaled by `1 + 2 alpha max|x - x'|`.
pub fn oracle_wave(state: &InitialState, x: f64, t: f64, scenario: &Scenario, quad_tol: f64) -> Result<WaveSample> {
    check_time(t)?;
    let l = scenario.box_length();
    let alpha = 0.5 / (scenario.hbar_over_mass() * t);
    let kernel = Complex64::from_polar((alpha / PI).sqrt(), -FRAC_PI_4);

    let (lo, hi) = match *state {
        InitialState::FreeGaussian { x0, sigma0 } => (x0 - 12.0 * sigma0, x0 + 12.0 * sigma0),
        _ => (0.0, l),
    };
    let mut breaks = vec![lo, hi];
    // Phase alpha (x - x')^2 advances by pi between consecutive breaks.
    if x > lo && x < hi {
        breaks.push(x);
    }
    let step = (PI / alpha).sqrt();
    for dir in [-1.0, 1.0] {
        let mut j = 1.0_f64;
        loop {
            let b = x + dir * step * j.sqrt();
            if (dir < 0.0 && b <= lo) || (dir > 0.0 && b >= hi) || j > 1e6 {
                break;
            }
            if b > lo && b < hi {
                breaks.push(b);
            }
            j += 1.0;
        }
    }
    if let InitialState::Eigenstate { n } = *state {
        for i in 1..n {
            breaks.push(i as f64 * l / n as f64);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let psi0 = |xp: f64| initial_wave(state, l, xp);
    let phase = |xp: f64| Complex64::from_polar(1.0, alpha * (x - xp) * (x - xp));
    let scale = kernel.norm();
    let opts = QuadratureOptions {
        abs_tol: quad_tol / scale,
        rel_tol: 0.0,
        max_intervals: 200_000,
    };
    let psi = integrate_panels(|xp| phase(xp) * psi0(xp), &breaks, &opts)?.value * kernel;
    // The derivative integrand carries the factor 2 alpha (x - x').
    let lever = 1.0 + 2.0 * alpha * (x - lo).abs().max((x - hi).abs());
    let dopts = QuadratureOptions {
        abs_tol: quad_tol * lever / scale,
        ..opts
    };
    let dpsi = integrate_panels(
        |xp| Complex64::new(0.0, 2.0 * alpha * (x - xp)) * phase(xp) * psi0(xp),
        &breaks,
        &dopts,
    )?
    .value
        * kernel;
    Ok(WaveSample { x, t, psi, dpsi_dx: dpsi })
}

/// Options for [`total_probability`].
#[derive(Debug, Clone, Copy)]
pub struct NormOptions {
    /// Upper bound on the distance integrated beyond each box edge.
    pub margin: f64,
    pub abs_tol: f64,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            margin: 200.0,
            abs_tol: 1e-9,
        }
    }
}

/// `int |psi|^2 dx` over the real line at time `t`.
///
/// A window around the box, wide enough to hold the spreading packet, is
/// integrated adaptively. Beyond it the density follows the far-field
/// endpoint asymptotes, whose mass is added analytically:
/// `psi_0(e)^2 hbar t / (2 pi m d^2)` for a packet cut off at edge `e`, and
/// `psi_0'(e)^2 / (16 pi alpha^3 d^4)` with `alpha = m / (2 hbar t)` when
/// `psi_0(e)` vanishes, as it does for eigenstates.
pub fn total_probability(wf: &Wavefunction, t: f64, opts: &NormOptions) -> Result<f64> {
    check_time(t)?;
    let l = wf.length;
    let spread = |k: f64| (1.0 + 60.0 * wf.hbar_over_mass * t * (k + 20.0 / l)).min(opts.margin);
    let (lo, hi) = match wf.state {
        InitialState::FreeGaussian { x0, sigma0 } => {
            let w = spread(3.0 / sigma0) + 10.0 * sigma0;
            (x0 - w, x0 + w)
        }
        InitialState::TruncatedGaussian { sigma0, .. } => (-spread(3.0 / sigma0), l + spread(3.0 / sigma0)),
        InitialState::Eigenstate { n } => {
            let w = spread(n as f64 * PI / l);
            (-w, l + w)
        }
    };
    // Panels no wider than the edge-to-edge fringe spacing.
    let fringe = (2.0 * PI * wf.hbar_over_mass * t / l).clamp(1e-3, 1.0);
    let count = ((hi - lo) / fringe).ceil() as usize;
    let mut breaks: Vec<f64> = (0..=count).map(|i| lo + (hi - lo) * i as f64 / count as f64).collect();
    breaks.extend([0.0, l]);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let failure = RefCell::new(None);
    let density = |x: f64| match wf.sample(x, t) {
        Ok(s) => Complex64::new(s.psi.norm_sqr(), 0.0),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let q = integrate_panels(
        density,
        &breaks,
        &QuadratureOptions {
            abs_tol: opts.abs_tol,
            rel_tol: 0.0,
            max_intervals: 4_000_000,
        },
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    // Distances from each edge to both window ends.
    let far = |e: f64, p: u32| (e - lo).powi(-(p as i32)) + (hi - e).powi(-(p as i32));
    let tail = match wf.state {
        InitialState::TruncatedGaussian { .. } => {
            let c = wf.hbar_over_mass * t / (2.0 * PI);
            c * (wf.initial(0.0).norm_sqr() * far(0.0, 1) + wf.initial(l).norm_sqr() * far(l, 1))
        }
        InitialState::Eigenstate { n } => {
            let alpha = 0.5 / (wf.hbar_over_mass * t);
            let slope2 = 2.0 / l * (n as f64 * PI / l).powi(2);
            slope2 / (48.0 * PI * alpha.powi(3)) * (far(0.0, 3) + far(l, 3))
        }
        InitialState::FreeGaussian { .. } => 0.0,
    };
    Ok(q.value.re + tail)
}

/// `int_a^b |psi|^2 dx` by adaptive quadrature.
pub fn window_probability(wf: &Wavefunction, a: f64, b: f64, t: f64, abs_tol: f64) -> Result<f64> {
    let q = integrate(
        |x| Complex64::new(wf.sample(x, t).map(|s| s.psi.norm_sqr()).unwrap_or(f64::NAN), 0.0),
        a,
        b,
        &QuadratureOptions {
            abs_tol,
            rel_tol: 0.0,
            max_intervals: 100_000,
        },
    )?;
    if q.value.re.is_finite() {
        Ok(q.value.re)
    } else {
        Err(Error::NonFinite("density"))
    }
}
