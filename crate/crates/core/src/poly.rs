//! Dense real polynomials in ascending-power order.

use std::ops::{Add, Mul, Neg, Sub};

use twofloat::TwoFloat;

#[derive(Debug, Clone, PartialEq, Default)]
pub(crate) struct Poly(pub Vec<f64>);

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Poly(coeffs)
    }

    pub fn monomial(power: usize, coeff: f64) -> Self {
        let mut c = vec![0.0; power + 1];
        c[power] = coeff;
        Poly(c)
    }

    pub fn coeff(&self, power: usize) -> f64 {
        self.0.get(power).copied().unwrap_or(0.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Poly(vec![0.0]);
        }
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Quotient and remainder by a divisor with nonzero leading coefficient.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dlen = divisor.0.len();
        let lead = divisor.0[dlen - 1];
        let mut rem = self.0.clone();
        if rem.len() < dlen {
            return (Poly(vec![0.0]), Poly(rem));
        }
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![0.0; qlen];
        for k in (0..qlen).rev() {
            let q = rem[k + dlen - 1] / lead;
            quot[k] = q;
            for (i, &d) in divisor.0.iter().enumerate() {
                rem[k + i] -= q * d;
            }
        }
        rem.truncate(dlen - 1);
        (Poly(quot), Poly(rem))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + rhs.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (k, &b) in rhs.0.iter().enumerate() {
                out[i + k] += a * b;
            }
        }
        Poly(out)
    }
}

/// Double-double quotient. `TwoFloat / TwoFloat` in twofloat 0.8 forms
/// `1 - b·(1/b)` without a fused multiply-add and so is only `f64`-accurate;
/// dividing by the high word and correcting once is not.
pub(crate) fn dd_div(x: TwoFloat, y: TwoFloat) -> TwoFloat {
    let q = x / y.hi();
    let r = x - q * y;
    q + r / y.hi()
}
