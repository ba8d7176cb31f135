//! Jacobi elliptic functions `sn`, `cn`, `dn` and the complete elliptic
//! integral of the first kind `K(m)`.
//!
//! Both are driven by the arithmetic-geometric mean. The Jacobi functions use
//! the descending Landen recursion (Abramowitz & Stegun 16.4) after the
//! argument has been reduced modulo the real period `4K(m)`.
//!
//! The parameter convention is `m = k²`. Only `0 ≤ m < 1` is supported; the
//! hyperbolic limit `m = 1` has an infinite real period and is rejected.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};

/// Landen descent stops once `c_n / a_n` drops below this.
const LANDEN_TOL: f64 = 1e-15;

const MAX_LANDEN_STEPS: usize = 40;

/// Elliptic parameter `m` in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Modulus(f64);

impl Modulus {
    pub fn new(m: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite(m));
        }
        if !(0.0..1.0).contains(&m) {
            return Err(Error::Domain(format!(
                "elliptic modulus m = {m} outside [0, 1)"
            )));
        }
        Ok(Self(m))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Complementary parameter `1 - m`.
    #[inline]
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for Modulus {
    type Error = Error;

    fn try_from(m: f64) -> Result<Self> {
        Self::new(m)
    }
}

/// `sn`, `cn`, `dn` at one argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiValues {
    pub x: f64,
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Arithmetic-geometric mean of two non-negative numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Quarter period `K(m) = π / (2 AGM(1, √(1-m)))`.
pub fn complete_k(m: Modulus) -> f64 {
    FRAC_PI_2 / agm(1.0, m.complement().sqrt())
}

/// Checked variant of [`complete_k`] for a raw parameter.
pub fn complete_k_checked(m: f64) -> Result<f64> {
    Modulus::new(m).map(complete_k)
}

/// Jacobi elliptic functions by descending Landen transformation.
pub fn jacobi(x: f64, m: Modulus) -> Result<JacobiValues> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    let mv = m.value();

    // Reduce into [-2K, 2K].
    let period = 4.0 * complete_k(m);
    let xr = x - period * (x / period).round();

    let mut a = [0.0_f64; MAX_LANDEN_STEPS + 1];
    let mut c = [0.0_f64; MAX_LANDEN_STEPS + 1];
    a[0] = 1.0;
    c[0] = mv.sqrt();
    let mut b = m.complement().sqrt();
    let mut steps = 0;
    while c[steps].abs() > LANDEN_TOL * a[steps] && steps < MAX_LANDEN_STEPS {
        let (an, bn) = (a[steps], b);
        a[steps + 1] = 0.5 * (an + bn);
        c[steps + 1] = 0.5 * (an - bn);
        b = (an * bn).sqrt();
        steps += 1;
    }

    let mut phi = a[steps] * xr * f64::powi(2.0, steps as i32);
    for n in (1..=steps).rev() {
        phi = 0.5 * (phi + (c[n] / a[n] * phi.sin()).asin());
    }

    let (sn, cn) = phi.sin_cos();
    // dn > 0 on the real axis for m < 1.
    let dn = (1.0 - mv * sn * sn).sqrt();
    Ok(JacobiValues { x, sn, cn, dn })
}
