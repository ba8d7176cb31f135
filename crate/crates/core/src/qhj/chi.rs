//! The meromorphic form of `χ(t)` for an assembled solution.

use serde::Serialize;

use super::residues::{riccati_source, Residue};
use super::solution::{BandEdgeSolution, ParityPolynomial};
use crate::potentials::PotentialSpec;

/// `χ = b₁/(t-1) + b₁'/(t+1) + d₁/(t-1/√m) + d₁'/(t+1/√m) + P'/P + C`.
#[derive(Debug, Clone, Serialize)]
pub struct ChiExpansion {
    #[serde(serialize_with = "ser")]
    pub b1: Residue,
    #[serde(serialize_with = "ser")]
    pub b1p: Residue,
    #[serde(serialize_with = "ser")]
    pub d1: Residue,
    #[serde(serialize_with = "ser")]
    pub d1p: Residue,
    pub poly: ParityPolynomial,
    pub constant: f64,
    pub m: f64,
}

fn ser<S: serde::Serializer>(r: &Residue, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn to_f64(r: Residue) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl ChiExpansion {
    /// Parity forces equal residues at `±t₀`; the analytic part is zero.
    pub fn from_solution(solution: &BandEdgeSolution) -> Self {
        let fam = &solution.family;
        Self {
            b1: fam.b1,
            b1p: fam.b1,
            d1: fam.d1,
            d1p: fam.d1,
            poly: solution.poly.clone(),
            constant: 0.0,
            m: solution.spec.m(),
        }
    }

    fn poles(&self) -> [(f64, f64); 4] {
        let s = 1.0 / self.m.sqrt();
        [
            (1.0, to_f64(self.b1)),
            (-1.0, to_f64(self.b1p)),
            (s, to_f64(self.d1)),
            (-s, to_f64(self.d1p)),
        ]
    }

    pub fn eval(&self, t: f64) -> f64 {
        let fixed: f64 = self.poles().iter().map(|&(t0, r)| r / (t - t0)).sum();
        fixed + self.poly.derivative_at(t) / self.poly.eval(t) + self.constant
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let fixed: f64 = self
            .poles()
            .iter()
            .map(|&(t0, r)| -r / ((t - t0) * (t - t0)))
            .sum();
        let p = self.poly.eval(t);
        let dp = self.poly.derivative_at(t);
        let ddp = self.poly.second_derivative_at(t);
        fixed + (ddp * p - dp * dp) / (p * p)
    }

    /// `χ² + χ' + R(t)` at offset-free energy `energy`; zero for a true solution.
    pub fn riccati_residual(&self, spec: &PotentialSpec, energy: f64, t: f64) -> f64 {
        let chi = self.eval(t);
        chi * chi + self.derivative(t) + riccati_source(spec, energy, t)
    }
}
