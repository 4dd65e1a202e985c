//! Units, constants and the scenario record shared by every computation.
//!
//! Internally everything is expressed in kilograms, micrometres and
//! milliseconds. In these units the reduced Planck constant is of order
//! 1e-25 and `hbar / m` for a rubidium atom is about 0.74 um^2/ms, so the
//! interesting lengths and times are all of order one.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, FieldError, Result};

/// CODATA 2018 reduced Planck constant in J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;

/// Rubidium atom mass used for the reference scenarios, in kg.
pub const RUBIDIUM_MASS_KG: f64 = 1.42e-25;

/// Slack allowed before the truncated Gaussian overlap warning fires, in um.
const OVERLAP_TOLERANCE: f64 = 1e-9;

/// Reduced Planck constant in kg um^2 / ms.
///
/// 1 J s = 1 kg m^2 / s = 1e12 kg um^2 / (1e3 ms).
pub fn unit_hbar() -> f64 {
    HBAR_SI * 1e12 / 1e3
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// kg um^2 / ms
    pub hbar: f64,
    /// kg
    pub mass: f64,
}

impl PhysicalConstants {
    pub fn new(mass: f64) -> Self {
        Self {
            hbar: unit_hbar(),
            mass,
        }
    }

    /// `hbar / m` in um^2 / ms.
    pub fn hbar_over_mass(&self) -> f64 {
        self.hbar / self.mass
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::new(RUBIDIUM_MASS_KG)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxGeometry {
    /// Box width in um; the box occupies `[0, length]`.
    pub length: f64,
}

impl BoxGeometry {
    pub fn midpoint(&self) -> f64 {
        0.5 * self.length
    }
}

impl Default for BoxGeometry {
    fn default() -> Self {
        Self { length: 1.0 }
    }
}

/// Wavefunction at the instant the walls are removed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitialState {
    /// Box eigenstate `sqrt(2/L) sin(n pi x / L)`.
    Eigenstate { n: u32 },
    /// Gaussian of rms width `sigma0` centred at `x0`, cut to `[0, L]`.
    TruncatedGaussian { x0: f64, sigma0: f64 },
    /// The same Gaussian without truncation, evolving freely. Comparison
    /// mode only; it was never confined.
    FreeGaussian { x0: f64, sigma0: f64 },
}

impl InitialState {
    pub fn quantum_number(&self) -> Option<u32> {
        match *self {
            InitialState::Eigenstate { n } => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InitialState::Eigenstate { n } => write!(f, "n:{n}"),
            InitialState::TruncatedGaussian { x0, sigma0 } => write!(f, "gaussian:{x0},{sigma0}"),
            InitialState::FreeGaussian { x0, sigma0 } => write!(f, "free-gaussian:{x0},{sigma0}"),
        }
    }
}

impl FromStr for InitialState {
    type Err = Error;

    /// Accepts `n:<int>`, `gaussian:<x0>,<sigma0>` and
    /// `free-gaussian:<x0>,<sigma0>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "initial state",
            input: s.to_string(),
        };
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let pair = |args: &str| -> Result<(f64, f64)> {
            let (a, b) = args.split_once(',').ok_or_else(bad)?;
            let a = a.trim().parse::<f64>().map_err(|_| bad())?;
            let b = b.trim().parse::<f64>().map_err(|_| bad())?;
            Ok((a, b))
        };
        match kind.trim() {
            "n" => {
                let n = args.trim().parse::<u32>().map_err(|_| bad())?;
                Ok(InitialState::Eigenstate { n })
            }
            "gaussian" => {
                let (x0, sigma0) = pair(args)?;
                Ok(InitialState::TruncatedGaussian { x0, sigma0 })
            }
            "free-gaussian" => {
                let (x0, sigma0) = pair(args)?;
                Ok(InitialState::FreeGaussian { x0, sigma0 })
            }
            _ => Err(bad()),
        }
    }
}

/// Uniform grid `min..=max` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Self { min, max, count }
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count.max(2) - 1) as f64
    }

    /// Grid points; the last point is exactly `max`.
    pub fn points(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.min],
            n => {
                let h = self.step();
                (0..n)
                    .map(|i| if i + 1 == n { self.max } else { self.min + h * i as f64 })
                    .collect()
            }
        }
    }

    /// Same span with `factor` times as many intervals.
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            count: (self.count - 1) * factor + 1,
            ..*self
        }
    }

    fn check(&self, field: &'static str, errors: &mut Vec<FieldError>) {
        if !(self.min.is_finite() && self.max.is_finite()) {
            errors.push(FieldError::new(field, "grid bounds must be finite"));
        } else if self.max <= self.min {
            errors.push(FieldError::new(field, "grid max must exceed min"));
        }
        if self.count < 2 {
            errors.push(FieldError::new(field, "grid count must be >= 2"));
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.count)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// `min:max:count`
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "grid",
            input: s.to_string(),
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(Self {
            min: parts[0].trim().parse().map_err(|_| bad())?,
            max: parts[1].trim().parse().map_err(|_| bad())?,
            count: parts[2].trim().parse().map_err(|_| bad())?,
        })
    }
}

/// The single input record of every run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub constants: PhysicalConstants,
    pub geometry: BoxGeometry,
    pub state: InitialState,
    /// Detector position X in um.
    pub detector_x: f64,
    /// First evaluation time in ms; the propagator is singular at t = 0.
    pub t_start: f64,
    pub t_max: f64,
    pub x_grid: GridSpec,
    /// Explicit time grid; when absent the grid spans `[t_start, t_max]`.
    pub t_grid: Option<GridSpec>,
    /// Point count of the derived time grid.
    pub t_count: usize,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            constants: PhysicalConstants::default(),
            geometry: BoxGeometry::default(),
            state: InitialState::Eigenstate { n: 1 },
            detector_x: 2.0,
            t_start: 1e-6,
            t_max: 0.6,
            x_grid: GridSpec::new(-2.0, 3.0, 1001),
            t_grid: None,
            t_count: 2001,
        }
    }
}

/// A non-fatal remark produced by [`Scenario::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Warning(pub String);

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Scenario {
    pub fn with_state(state: InitialState) -> Self {
        Self {
            state,
            ..Self::default()
        }
    }

    pub fn box_length(&self) -> f64 {
        self.geometry.length
    }

    pub fn hbar_over_mass(&self) -> f64 {
        self.constants.hbar_over_mass()
    }

    pub fn time_grid(&self) -> GridSpec {
        self.t_grid
            .unwrap_or(GridSpec::new(self.t_start, self.t_max, self.t_count))
    }

    /// `m L^2 / (2 n pi hbar)` in ms.
    pub fn semiclassical_time(&self, n: u32) -> Result<f64> {
        if n == 0 {
            return Err(Error::ZeroQuantumNumber);
        }
        let l = self.box_length();
        Ok(self.constants.mass * l * l / (2.0 * n as f64 * PI * self.constants.hbar))
    }

    /// `hbar k_n / m` in um/ms.
    pub fn semiclassical_velocity(&self, n: u32) -> Result<f64> {
        Ok(self.hbar_over_mass() * wavenumber(n, self.box_length())?)
    }

    /// Checks every invariant and reports all violations at once.
    pub fn validate(&self) -> Result<Vec<Warning>> {
        let mut errors = Vec::new();
        let mut warnings = Vec::new();
        let c = &self.constants;
        if !(c.hbar.is_finite() && c.hbar > 0.0) {
            errors.push(FieldError::new("hbar", "hbar must be > 0"));
        }
        if !(c.mass.is_finite() && c.mass > 0.0) {
            errors.push(FieldError::new("mass_kg", "mass must be > 0"));
        }
        let l = self.geometry.length;
        if !(l.is_finite() && l > 0.0) {
            errors.push(FieldError::new("box_length_um", "L must be > 0"));
        }
        match self.state {
            InitialState::Eigenstate { n } => {
                if n == 0 {
                    errors.push(FieldError::new("state", "n must be ≥ 1"));
                }
            }
            InitialState::TruncatedGaussian { x0, sigma0 } => {
                if !(x0.is_finite() && x0 > 0.0 && x0 < l) {
                    errors.push(FieldError::new("state", "x0 outside box"));
                }
                if !(sigma0.is_finite() && sigma0 > 0.0) {
                    errors.push(FieldError::new("state", "sigma0 must be > 0"));
                }
                if x0 - 2.0 * sigma0 < -OVERLAP_TOLERANCE || x0 + 2.0 * sigma0 > l + OVERLAP_TOLERANCE
                {
                    warnings.push(Warning(format!(
                        "gaussian x0 ± 2 sigma0 = [{}, {}] extends beyond the box [0, {l}]",
                        x0 - 2.0 * sigma0,
                        x0 + 2.0 * sigma0
                    )));
                }
            }
            InitialState::FreeGaussian { x0, sigma0 } => {
                if !x0.is_finite() {
                    errors.push(FieldError::new("state", "x0 must be finite"));
                }
                if !(sigma0.is_finite() && sigma0 > 0.0) {
                    errors.push(FieldError::new("state", "sigma0 must be > 0"));
                }
            }
        }
        if !self.detector_x.is_finite() {
            errors.push(FieldError::new("detector_x_um", "detector position must be finite"));
        }
        if !(self.t_start.is_finite() && self.t_start > 0.0) {
            errors.push(FieldError::new("t_start_ms", "t_start must be > 0"));
        }
        if !(self.t_max.is_finite() && self.t_max > self.t_start) {
            errors.push(FieldError::new("t_max_ms", "t_max must exceed t_start"));
        }
        self.x_grid.check("x_grid", &mut errors);
        let tg = self.time_grid();
        tg.check("t_grid", &mut errors);
        if tg.min <= 0.0 {
            errors.push(FieldError::new("t_grid", "time grid must start after t = 0"));
        }
        if errors.is_empty() {
            Ok(warnings)
        } else {
            Err(Error::InvalidScenario(errors))
        }
    }
}

/// `n pi / L` in 1/um.
pub fn wavenumber(n: u32, length: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroQuantumNumber);
    }
    Ok(n as f64 * PI / length)
}
