//! Globally adaptive 21-point Gauss-Kronrod quadrature for complex-valued
//! integrands on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_532_938,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    /// Target absolute error of the whole integral.
    pub abs_tol: f64,
    /// Target error relative to `|integral|`; the looser target wins.
    pub rel_tol: f64,
    /// Subdivision budget before giving up.
    pub max_intervals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 0.0,
            max_intervals: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn gauss_kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += sum * WGK[j];
        if j % 2 == 1 {
            gauss += sum * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    Panel { a, b, value, error }
}

/// Integrates `f` from `a` to `b`; `b < a` flips the sign.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    opts: &QuadratureOptions,
) -> Result<Quadrature> {
    if b < a {
        let q = integrate_panels(f, &[b, a], opts)?;
        return Ok(Quadrature { value: -q.value, ..q });
    }
    integrate_panels(f, &[a, b], opts)
}

/// Integrates `f` over consecutive panels `breaks[0]..breaks[1]..` and
/// refines the worst panel until the total error estimate meets the target.
/// `breaks` must be ascending.
pub fn integrate_panels<F: Fn(f64) -> Complex64>(
    f: F,
    breaks: &[f64],
    opts: &QuadratureOptions,
) -> Result<Quadrature> {
    if breaks.len() < 2 {
        return Ok(Quadrature {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            intervals: 0,
        });
    }
    let mut heap: BinaryHeap<ByError> = breaks
        .windows(2)
        .map(|w| ByError(gauss_kronrod(&f, w[0], w[1])))
        .collect();
    let mut value: Complex64 = heap.iter().map(|p| p.0.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.0.error).sum();
    let mut since_resum = 0usize;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.norm());
        if error <= target {
            // Running sums drift; confirm against a fresh total.
            value = heap.iter().map(|p| p.0.value).sum();
            error = heap.iter().map(|p| p.0.error).sum();
            if error <= opts.abs_tol.max(opts.rel_tol * value.norm()) {
                return Ok(Quadrature {
                    value,
                    error,
                    intervals: heap.len(),
                });
            }
        }
        let p = heap.pop().expect("at least one panel").0;
        let mid = 0.5 * (p.a + p.b);
        if heap.len() + 1 >= opts.max_intervals || !(mid > p.a && mid < p.b) {
            return Err(Error::QuadratureDiverged {
                estimate: error,
                tolerance: target,
            });
        }
        let left = gauss_kronrod(&f, p.a, mid);
        let right = gauss_kronrod(&f, mid, p.b);
        value += left.value + right.value - p.value;
        error += left.error + right.error - p.error;
        heap.push(ByError(left));
        heap.push(ByError(right));
        since_resum += 1;
        if since_resum == 4096 {
            since_resum = 0;
            error = heap.iter().map(|p| p.0.error).sum();
        }
    }
}

struct ByError(Panel);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ByError {}

impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}
