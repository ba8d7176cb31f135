//! Fixed-pole residues of the quantum momentum function `χ(t)`.
//!
//! With `t = sn x`, `f(t) = (1-t²)(1-mt²)` and `ψ'/ψ = √f · (χ - f'/(4f))`,
//! the Schrödinger equation turns into the Riccati equation
//!
//! ```text
//! χ² + χ' + R(t) = 0,   R = (E - V)/f - f''/(4f) + 3 f'²/(16 f²)
//! ```
//!
//! `R` has double poles at `t = ±1, ±1/√m`. A simple pole `b/(t - t₀)` of `χ`
//! must satisfy `b² - b + r₋₂ = 0` where `r₋₂` is the double-pole coefficient
//! of `R` at `t₀`. The same balance at infinity, `χ ~ λ/t`, gives
//! `λ² - λ + r∞ = 0` with `r∞ = lim t²R`.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::potentials::{Family, PotentialSpec};

/// Exact residue value; all residues here are quarter-integers.
pub type Residue = Ratio<i64>;

/// The two admissible residues at `t = ±1` (`b1`) and at `t = ±1/√m` (`d1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueCandidates {
    pub b1: [Residue; 2],
    pub d1: [Residue; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FixedPole {
    /// `t = 1` (zero of `cn`).
    One,
    /// `t = 1/√m` (zero of `dn`).
    InverseRootM,
}

impl FixedPole {
    pub fn location(self, m: f64) -> f64 {
        match self {
            FixedPole::One => 1.0,
            FixedPole::InverseRootM => 1.0 / m.sqrt(),
        }
    }
}

/// Residue candidates in closed form.
pub fn fixed_residues(spec: &PotentialSpec) -> ResidueCandidates {
    let quarter = |n: i64| Ratio::new(n, 4);
    let b1 = [quarter(3), quarter(1)];
    let d1 = match spec.family {
        Family::Lame => [quarter(3), quarter(1)],
        Family::AssociatedLame => {
            let j = spec.j();
            [quarter(3 + 2 * j), quarter(1 - 2 * j)]
        }
    };
    ResidueCandidates { b1, d1 }
}

/// `V(t)` without the additive offset.
pub(crate) fn potential_in_t(spec: &PotentialSpec, t: f64) -> f64 {
    let m = spec.m();
    let t2 = t * t;
    let shape = match spec.family {
        Family::Lame => t2,
        Family::AssociatedLame => t2 + (1.0 - t2) / (1.0 - m * t2),
    };
    spec.coupling() * m * shape
}

/// `R(t)` for the offset-free potential at energy `energy`.
pub fn riccati_source(spec: &PotentialSpec, energy: f64, t: f64) -> f64 {
    let m = spec.m();
    let t2 = t * t;
    let p = 1.0 - t2;
    let q = 1.0 - m * t2;
    let f = p * q;
    let fp = -2.0 * t * q - 2.0 * m * t * p;
    let fpp = -2.0 * (1.0 + m) + 12.0 * m * t2;
    (energy - potential_in_t(spec, t)) / f - fpp / (4.0 * f) + 3.0 * fp * fp / (16.0 * f * f)
}

/// Re-derive the residues at `pole` from the Laurent balance of the Riccati
/// equation, extracting `r₋₂` numerically. Roots are returned larger first.
pub fn residue_quadratic_check(spec: &PotentialSpec, pole: FixedPole) -> Result<[f64; 2]> {
    let m = spec.m();
    let t0 = pole.location(m);
    let others = [1.0, -1.0, 1.0 / m.sqrt(), -1.0 / m.sqrt()];
    let gap = others
        .iter()
        .map(|&s| (s - t0).abs())
        .filter(|&d| d > 1e-12)
        .fold(f64::INFINITY, f64::min);

    // s² R(t₀ + s), symmetrised to drop odd orders, then two Richardson
    // passes in s² to remove the O(s²) and O(s⁴) terms.
    let sym = |h: f64| {
        let g = |s: f64| s * s * riccati_source(spec, 0.0, t0 + s);
        0.5 * (g(h) + g(-h))
    };
    let h = 0.01 * gap;
    let (s0, s1, s2) = (sym(h), sym(0.5 * h), sym(0.25 * h));
    let r1 = (4.0 * s1 - s0) / 3.0;
    let r2 = (4.0 * s2 - s1) / 3.0;
    let r = (16.0 * r2 - r1) / 15.0;

    quadratic_roots(r)
}

/// Exponents `λ` of `χ ~ λ/t` at infinity, from `r∞ = lim t² R(t)`.
pub fn infinity_exponents(spec: &PotentialSpec) -> Result<[f64; 2]> {
    let big = 1e3 / spec.m().sqrt();
    let g = |t: f64| t * t * riccati_source(spec, 0.0, t);
    let r = (4.0 * g(2.0 * big) - g(big)) / 3.0;
    quadratic_roots(r)
}

/// Roots of `x² - x + r = 0`, larger first.
fn quadratic_roots(r: f64) -> Result<[f64; 2]> {
    let disc = 1.0 - 4.0 * r;
    if disc < 0.0 {
        return Err(Error::NegativeDiscriminant(disc));
    }
    let s = disc.sqrt();
    Ok([0.5 * (1.0 + s), 0.5 * (1.0 - s)])
}
