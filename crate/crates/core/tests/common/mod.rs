//! Shared oracles for the integration tests.
#![allow(dead_code)]

use bandedge::qhj::evaluate_wavefunction;
use bandedge::{BandEdgeSolution, Family, PotentialSpec};

/// Points at which the Schrödinger residual is sampled.
pub const RESIDUAL_POINTS: usize = 512;

/// `δ = √(1 - m + m²)`.
pub fn delta(m: f64) -> f64 {
    (1.0 - m + m * m).sqrt()
}

/// SUSY-shifted Lamé `j = 2` band edges, ascending.
pub fn lame_j2_closed(m: f64) -> Vec<f64> {
    let d = delta(m);
    let mut e = vec![
        0.0,
        2.0 * d - m - 1.0,
        2.0 * d + 2.0 * m - 1.0,
        2.0 * d - m + 2.0,
        4.0 * d,
    ];
    e.sort_by(f64::total_cmp);
    e
}

/// SUSY-shifted associated Lamé `j = 1` band edges, ascending.
pub fn associated_j1_closed(m: f64) -> Vec<f64> {
    let r = (1.0 - m).sqrt();
    let mut e = vec![0.0, 4.0 * r, 2.0 - m + 2.0 * r];
    e.sort_by(f64::total_cmp);
    e
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "length mismatch");
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `max |-ψ'' + (V - E)ψ| / max |ψ|` over 512 points of one period, with the
/// fourth-order central stencil at `h = L/2048`.
pub fn schrodinger_residual(sol: &BandEdgeSolution) -> f64 {
    let spec = &sol.spec;
    let period = spec.fundamental_period();
    let h = period / 2048.0;
    let psi = |x: f64| evaluate_wavefunction(sol, x).expect("ψ evaluates");
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..RESIDUAL_POINTS {
        let x = (i as f64 + 0.5) * period / RESIDUAL_POINTS as f64;
        let p0 = psi(x);
        let d2 = (-psi(x + 2.0 * h) + 16.0 * psi(x + h) - 30.0 * p0 + 16.0 * psi(x - h)
            - psi(x - 2.0 * h))
            / (12.0 * h * h);
        let v = spec.evaluate(x).expect("V evaluates");
        worst = worst.max((-d2 + (v - sol.energy) * p0).abs());
        scale = scale.max(p0.abs());
    }
    worst / scale
}

/// Quasi-random points in `[0, 1)²` from the plastic-number sequence.
pub fn r2_sequence(count: usize) -> impl Iterator<Item = (f64, f64)> {
    let g = 1.324_717_957_244_746_f64;
    let (a1, a2) = (1.0 / g, 1.0 / (g * g));
    (1..=count).map(move |i| ((0.5 + a1 * i as f64).fract(), (0.5 + a2 * i as f64).fract()))
}

/// Specs covered by the broad sweeps.
pub fn sweep_specs() -> Vec<PotentialSpec> {
    let mut specs = Vec::new();
    for family in [Family::Lame, Family::AssociatedLame] {
        for j in 1..=5 {
            for m in [0.1, 0.5, 0.9] {
                specs.push(PotentialSpec::new(family, j, m).unwrap());
            }
        }
    }
    specs
}
