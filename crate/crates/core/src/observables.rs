//! Probability density, current and Bohmian velocity at a single point.
//!
//! Everything here is computed from a [`WaveSample`] alone, so the same
//! functions apply to closed-form and quadrature samples alike.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::PhysicalConstants;
use crate::wavefunction::{WaveSample, Wavefunction};

/// Density below which the guidance velocity is treated as undefined, in 1/um.
pub const DEFAULT_NODE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldPoint {
    /// um
    pub x: f64,
    /// ms
    pub t: f64,
    /// 1/um
    pub rho: f64,
    /// 1/ms
    pub j: f64,
    /// um/ms; `None` at a node.
    pub v: Option<f64>,
}

/// `|psi|^2`.
pub fn density(sample: &WaveSample) -> f64 {
    sample.psi.norm_sqr()
}

/// `(hbar / m) Im(psi* dpsi/dx)`.
pub fn current(sample: &WaveSample, constants: &PhysicalConstants) -> f64 {
    constants.hbar_over_mass() * (sample.psi.conj() * sample.dpsi_dx).im
}

/// Guidance velocity `j / rho`, or [`Error::Node`] when `rho < node_eps`.
pub fn velocity(sample: &WaveSample, constants: &PhysicalConstants, node_eps: f64) -> Result<f64> {
    let rho = density(sample);
    if rho < node_eps || rho == 0.0 {
        return Err(Error::Node {
            x: sample.x,
            t: sample.t,
            rho,
        });
    }
    let v = current(sample, constants) / rho;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("velocity"))
    }
}

pub fn field_point(sample: &WaveSample, constants: &PhysicalConstants, node_eps: f64) -> FieldPoint {
    FieldPoint {
        x: sample.x,
        t: sample.t,
        rho: density(sample),
        j: current(sample, constants),
        v: velocity(sample, constants, node_eps).ok(),
    }
}

/// Central-difference residual of `d rho/dt + dj/dx` at `(x, t)`.
///
/// Returned relative to `max(1, |d rho/dt|, |dj/dx|)`.
pub fn continuity_residual(wf: &Wavefunction, constants: &PhysicalConstants, x: f64, t: f64, hx: f64, ht: f64) -> Result<f64> {
    let rho = |x: f64, t: f64| wf.sample(x, t).map(|s| density(&s));
    let j = |x: f64| wf.sample(x, t).map(|s| current(&s, constants));
    let drho_dt = (rho(x, t + ht)? - rho(x, t - ht)?) / (2.0 * ht);
    let dj_dx = (j(x + hx)? - j(x - hx)?) / (2.0 * hx);
    let scale = drho_dt.abs().max(dj_dx.abs()).max(1.0);
    Ok((drho_dt + dj_dx).abs() / scale)
}
