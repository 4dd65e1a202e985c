//! Fresnel-type integral and the complex error function family.
//!
//! `F(xi) = int_0^xi exp(i pi u^2 / 2) du = C(xi) + i S(xi)` uses a power
//! series for `|xi| <= FRESNEL_SWITCH` and the Lentz continued fraction of the
//! complementary integral beyond. Both branches agree to about 1e-15 at the
//! switch point.
//!
//! The complex error function goes through the Faddeeva function
//! `w(z) = exp(-z^2) erfc(-iz)`, evaluated with Weideman's rational
//! approximation (N = 40 terms, relative error around 1e-14 in the closed
//! upper half plane).

use std::f64::consts::{FRAC_2_SQRT_PI, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Series/continued-fraction switch point for [`fresnel_f`].
pub const FRESNEL_SWITCH: f64 = 1.5;

/// Largest `|Im z|` accepted by [`erf_complex`].
pub const ERF_IM_LIMIT: f64 = 50.0;

const WEIDEMAN_TERMS: usize = 40;
const CF_MAX_ITER: usize = 10_000;

/// `int_0^xi exp(i pi u^2 / 2) du`.
pub fn fresnel_f(xi: f64) -> Result<Complex64> {
    if !xi.is_finite() {
        return Err(Error::NonFinite("fresnel argument"));
    }
    Ok(fresnel(xi))
}

/// Unchecked [`fresnel_f`]; odd in `xi` bit for bit.
pub(crate) fn fresnel(xi: f64) -> Complex64 {
    let ax = xi.abs();
    let value = if ax <= FRESNEL_SWITCH {
        fresnel_series(ax)
    } else {
        fresnel_continued_fraction(ax)
    };
    if xi < 0.0 {
        -value
    } else {
        value
    }
}

/// `sum_k (i pi / 2)^k x^(2k+1) / (k! (2k+1))`
fn fresnel_series(x: f64) -> Complex64 {
    let z = Complex64::new(0.0, 0.5 * PI * x * x);
    let mut term = Complex64::new(x, 0.0);
    let mut sum = term;
    for k in 1..200 {
        term *= z / k as f64;
        let add = term / (2 * k + 1) as f64;
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// `(1+i)/2 * (1 - exp(i pi x^2 / 2) h(x))` with `h` from the modified Lentz
/// evaluation of the erfc continued fraction. Valid for `x >= 1.5`.
fn fresnel_continued_fraction(x: f64) -> Complex64 {
    const TINY: f64 = 1e-300;
    let pix2 = PI * x * x;
    let mut b = Complex64::new(1.0, -pix2);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut n = -1.0_f64;
    for _ in 0..CF_MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += 4.0;
        d = (d * a + b).inv();
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    h *= Complex64::new(x, -x);
    Complex64::new(0.5, 0.5) * (Complex64::new(1.0, 0.0) - half_pi_square_phase(x) * h)
}

/// `exp(i pi x^2 / 2)` with `x^2` reduced modulo 4 before the trig calls, so
/// the phase stays accurate for large `x`.
pub(crate) fn half_pi_square_phase(x: f64) -> Complex64 {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    let r = hi % 4.0 + lo;
    Complex64::from_polar(1.0, 0.5 * PI * r)
}

fn weideman() -> &'static (f64, [f64; WEIDEMAN_TERMS]) {
    static COEFFS: OnceLock<(f64, [f64; WEIDEMAN_TERMS])> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let n = WEIDEMAN_TERMS;
        let m = 2 * n;
        let l = (n as f64 / std::f64::consts::SQRT_2).sqrt();
        let samples: Vec<(f64, f64)> = (-(m as i64) + 1..m as i64)
            .map(|k| {
                let theta = k as f64 * PI / m as f64;
                let t = l * (0.5 * theta).tan();
                (k as f64, (-t * t).exp() * (l * l + t * t))
            })
            .collect();
        let mut a = [0.0; WEIDEMAN_TERMS];
        for (p, slot) in a.iter_mut().enumerate() {
            let p = (p + 1) as f64;
            let s: f64 = samples
                .iter()
                .map(|&(k, f)| f * (PI * p * k / m as f64).cos())
                .sum();
            *slot = s / (2 * m) as f64;
        }
        (l, a)
    })
}

/// Faddeeva function `w(z) = exp(-z^2) erfc(-i z)`.
pub fn faddeeva(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        // w(z) = 2 exp(-z^2) - w(-z)
        return 2.0 * (-z * z).exp() - faddeeva_upper(-z);
    }
    faddeeva_upper(z)
}

fn faddeeva_upper(z: Complex64) -> Complex64 {
    let (l, a) = weideman();
    let iz = Complex64::i() * z;
    let denom = Complex64::new(*l, 0.0) - iz;
    let zz = (Complex64::new(*l, 0.0) + iz) / denom;
    let mut p = Complex64::new(0.0, 0.0);
    for &coef in a.iter().rev() {
        p = p * zz + coef;
    }
    let inv = denom.inv();
    2.0 * p * inv * inv + inv * (0.5 * FRAC_2_SQRT_PI)
}

/// Scaled complementary error function `exp(z^2) erfc(z)`.
///
/// Bounded for `Re z >= 0`; callers that combine it with an explicit
/// exponential avoid the overflow and cancellation of raw `erf`.
pub fn erfcx(z: Complex64) -> Complex64 {
    faddeeva(Complex64::i() * z)
}

/// `erfc(z)`.
pub fn erfc_complex(z: Complex64) -> Complex64 {
    if z.re >= 0.0 {
        (-z * z).exp() * erfcx(z)
    } else {
        2.0 - (-z * z).exp() * erfcx(-z)
    }
}

fn erf_series(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for k in 1..200 {
        term *= -z2 / k as f64;
        let add = term / (2 * k + 1) as f64;
        sum += add;
        if add.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * FRAC_2_SQRT_PI
}

/// Error function of a complex argument inside `|Im z| <= 50`.
///
/// Fails outside the window or when the result overflows.
pub fn erf_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("erf argument"));
    }
    if z.im.abs() > ERF_IM_LIMIT {
        return Err(Error::OutsideErfWindow {
            re: z.re,
            im: z.im,
            limit: ERF_IM_LIMIT,
        });
    }
    let value = if z.norm() < 1.0 {
        erf_series(z)
    } else if z.re >= 0.0 {
        1.0 - (-z * z).exp() * erfcx(z)
    } else {
        (-z * z).exp() * erfcx(-z) - 1.0
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::OutsideErfWindow {
            re: z.re,
            im: z.im,
            limit: ERF_IM_LIMIT,
        })
    }
}

/// `F(xi)` through the error function, `(1+i)/2 erf((1-i) sqrt(pi) xi / 2)`.
/// Independent second route used to cross-check [`fresnel_f`].
pub fn fresnel_via_faddeeva(xi: f64) -> Complex64 {
    let ax = xi.abs();
    // erf(a x) = 1 - exp(i pi x^2/2) w(i a x), i a = (1+i) sqrt(pi)/2
    let arg = Complex64::new(1.0, 1.0) * (0.5 * PI.sqrt() * ax);
    let one_minus = half_pi_square_phase(ax) * faddeeva(arg);
    let v = Complex64::new(0.5, 0.5) * (1.0 - one_minus);
    if xi < 0.0 {
        -v
    } else {
        v
    }
}
