//! Plane-wave (Hill-matrix) Bloch solver used to check the analytic band edges.
//!
//! Over one period `L`, a Bloch state with phase `θ` is expanded as
//! `ψ = Σ_q c_q exp(i(θ + 2πq)x/L)` for `q = -N..=N`. The Hamiltonian
//! `-d²/dx² + V` becomes
//!
//! ```text
//! H[q, q'] = ((θ + 2πq)/L)² δ_{qq'} + V_{q-q'}
//! ```
//!
//! with `V_q` the Fourier coefficients of the potential. `θ = 0` gives the
//! periodic band edges, `θ = π` the antiperiodic ones.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::potentials::PotentialSpec;
use crate::qhj::BandEdgeSpectrum;

/// Default plane-wave cutoff `N`.
pub const DEFAULT_MODES: usize = 128;

/// Quadrature points per retained Fourier index.
const QUADRATURE_OVERSAMPLING: usize = 8;

/// Bloch phase accumulated over one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgePhase {
    /// `θ = 0`
    Periodic,
    /// `θ = π`
    Antiperiodic,
}

impl EdgePhase {
    pub fn theta(self) -> f64 {
        match self {
            EdgePhase::Periodic => 0.0,
            EdgePhase::Antiperiodic => PI,
        }
    }

    /// `"p"` or `"a"`.
    pub fn short(self) -> &'static str {
        match self {
            EdgePhase::Periodic => "p",
            EdgePhase::Antiperiodic => "a",
        }
    }

    /// Phase of the `index`-th band edge in ascending order: p, a, a, p, p, a, a, …
    pub fn expected_at(index: usize) -> Self {
        if index.div_ceil(2).is_multiple_of(2) {
            EdgePhase::Periodic
        } else {
            EdgePhase::Antiperiodic
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Plane waves run over `q = -modes..=modes`.
    pub modes: usize,
    pub phase: EdgePhase,
    pub period: f64,
}

impl OracleConfig {
    pub fn new(modes: usize, phase: EdgePhase, period: f64) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Domain("plane-wave cutoff must be ≥ 1".into()));
        }
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::Domain(format!("period {period} must be positive")));
        }
        Ok(Self {
            modes,
            phase,
            period,
        })
    }

    /// Config on the fundamental period of `spec`.
    pub fn for_spec(spec: &PotentialSpec, modes: usize, phase: EdgePhase) -> Result<Self> {
        Self::new(modes, phase, spec.fundamental_period())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochSpectrum {
    pub phase: EdgePhase,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub modes: usize,
}

/// Fourier coefficients of a potential sampled on one period.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    max_index: usize,
    coeffs: Vec<Complex64>,
}

impl FourierSeries {
    pub fn max_index(&self) -> usize {
        self.max_index
    }

    /// `V_q` for `|q| ≤ max_index`.
    pub fn get(&self, q: i64) -> Complex64 {
        let idx = q + self.max_index as i64;
        assert!(
            idx >= 0 && (idx as usize) < self.coeffs.len(),
            "Fourier index {q} out of range"
        );
        self.coeffs[idx as usize]
    }

    /// `(q, V_q)` for `q = -M..=M`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let m = self.max_index as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - m, c))
    }
}

/// Trapezoid rule on `8M` equispaced points, done by FFT.
pub fn fourier_coefficients<F>(potential: F, period: f64, max_index: usize) -> Result<FourierSeries>
where
    F: Fn(f64) -> Result<f64>,
{
    let points = QUADRATURE_OVERSAMPLING * max_index.max(1);
    let mut buf = (0..points)
        .map(|k| potential(k as f64 * period / points as f64).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    FftPlanner::<f64>::new()
        .plan_fft_forward(points)
        .process(&mut buf);
    let norm = 1.0 / points as f64;
    let m = max_index as i64;
    // A real potential has V_{-q} = conj(V_q); imposing it exactly makes the
    // Hill matrix Hermitian by construction.
    let raw = |q: i64| buf[q.rem_euclid(points as i64) as usize] * norm;
    let coeffs = (-m..=m).map(|q| (raw(q) + raw(-q).conj()) * 0.5).collect();
    Ok(FourierSeries { max_index, coeffs })
}

/// `V_q`, `q = -M..=M`, for the potential of `spec` over period `period`.
pub fn potential_fourier(
    spec: &PotentialSpec,
    period: f64,
    max_index: usize,
) -> Result<FourierSeries> {
    fourier_coefficients(|x| spec.evaluate(x), period, max_index)
}

/// The Hill matrix for given Fourier coefficients (needs `max_index ≥ 2N`).
pub fn hill_matrix(series: &FourierSeries, config: &OracleConfig) -> DMatrix<Complex64> {
    let n = config.modes as i64;
    assert!(
        series.max_index() as i64 >= 2 * n,
        "Fourier series too short"
    );
    let dim = (2 * n + 1) as usize;
    let theta = config.phase.theta();
    DMatrix::from_fn(dim, dim, |r, c| {
        let (qr, qc) = (r as i64 - n, c as i64 - n);
        let mut h = series.get(qr - qc);
        if r == c {
            let k = (theta + 2.0 * PI * qr as f64) / config.period;
            h += Complex64::new(k * k, 0.0);
        }
        h
    })
}

/// Eigenvalues of the Hill matrix built from `series`.
pub fn hill_eigenvalues(series: &FourierSeries, config: &OracleConfig) -> Result<BlochSpectrum> {
    let h = hill_matrix(series, config);
    let eig = SymmetricEigen::try_new(h.clone(), f64::EPSILON, 0)
        .ok_or_else(|| Error::Eigensolver("Hermitian eigensolver did not converge".into()))?;
    // The solver's absolute error scales with the largest kinetic term; the
    // Rayleigh quotient of its eigenvector does not, because the high-q
    // components of a low-lying state are tiny.
    let hv = &h * &eig.eigenvectors;
    let mut eigenvalues: Vec<f64> = (0..eig.eigenvalues.len())
        .map(|i| {
            let v = eig.eigenvectors.column(i);
            v.dotc(&hv.column(i)).re / v.norm_squared()
        })
        .collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(BlochSpectrum {
        phase: config.phase,
        eigenvalues,
        modes: config.modes,
    })
}

pub fn bloch_eigenvalues(spec: &PotentialSpec, config: &OracleConfig) -> Result<BlochSpectrum> {
    let series = potential_fourier(spec, config.period, 2 * config.modes)?;
    hill_eigenvalues(&series, config)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LabeledEdge {
    pub energy: f64,
    pub phase: EdgePhase,
}

/// The lowest `count` eigenvalues of the merged periodic and antiperiodic spectra.
pub fn band_edges_n(spec: &PotentialSpec, modes: usize, count: usize) -> Result<Vec<LabeledEdge>> {
    let period = spec.fundamental_period();
    let series = potential_fourier(spec, period, 2 * modes)?;
    let solve = |phase| {
        OracleConfig::new(modes, phase, period).and_then(|cfg| hill_eigenvalues(&series, &cfg))
    };
    let (periodic, antiperiodic) = rayon::join(
        || solve(EdgePhase::Periodic),
        || solve(EdgePhase::Antiperiodic),
    );
    let mut edges: Vec<LabeledEdge> = [periodic?, antiperiodic?]
        .into_iter()
        .flat_map(|s| {
            let phase = s.phase;
            s.eigenvalues
                .into_iter()
                .map(move |energy| LabeledEdge { energy, phase })
        })
        .collect();
    edges.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    edges.truncate(count);
    Ok(edges)
}

/// Lowest `2j+3` labelled edges: the `2j+1` finite-gap edges plus the first
/// pair above them, whose gap should be closed.
pub fn band_edges(spec: &PotentialSpec, modes: usize) -> Result<Vec<LabeledEdge>> {
    band_edges_n(spec, modes, spec.edge_count() + 2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeCheck {
    pub index: usize,
    pub set_id: u8,
    pub qhj_energy: f64,
    pub oracle_energy: f64,
    pub delta: f64,
    pub phase: EdgePhase,
    pub matched: bool,
}

/// Machine-readable outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub modes: usize,
    pub tolerance: f64,
    pub pass: bool,
    pub max_delta: f64,
    pub edges: Vec<EdgeCheck>,
    /// Energies that found no oracle edge within tolerance.
    pub unmatched: Vec<f64>,
}

impl VerificationReport {
    pub fn phases(&self) -> Vec<EdgePhase> {
        self.edges.iter().map(|e| e.phase).collect()
    }

    /// True when the phases read p, a, a, p, p, … in ascending order. Two
    /// edges closer than the tolerance may appear in either order.
    pub fn phases_alternate(&self) -> bool {
        self.edges.iter().enumerate().all(|(i, e)| {
            let near = |j: usize| {
                self.edges
                    .get(j)
                    .is_some_and(|o| (o.qhj_energy - e.qhj_energy).abs() <= self.tolerance)
            };
            e.phase == EdgePhase::expected_at(i)
                || (i > 0 && near(i - 1) && e.phase == EdgePhase::expected_at(i - 1))
                || (near(i + 1) && e.phase == EdgePhase::expected_at(i + 1))
        })
    }
}

/// Match every analytic edge to the nearest unused oracle edge and record its
/// Bloch phase on the solution.
pub fn verify(
    spectrum: &mut BandEdgeSpectrum,
    modes: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let oracle = band_edges(&spectrum.spec, modes)?;
    let mut used = vec![false; oracle.len()];
    let mut edges = Vec::with_capacity(spectrum.solutions.len());
    let mut unmatched = Vec::new();
    let mut max_delta: f64 = 0.0;

    for (index, sol) in spectrum.solutions.iter_mut().enumerate() {
        let best = oracle
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|a, b| {
                (a.1.energy - sol.energy)
                    .abs()
                    .total_cmp(&(b.1.energy - sol.energy).abs())
            });
        let Some((i, edge)) = best else {
            unmatched.push(sol.energy);
            continue;
        };
        used[i] = true;
        let delta = (edge.energy - sol.energy).abs();
        max_delta = max_delta.max(delta);
        let matched = delta <= tol;
        if matched {
            sol.bloch_phase = Some(edge.phase);
        } else {
            unmatched.push(sol.energy);
        }
        edges.push(EdgeCheck {
            index,
            set_id: sol.family.set_id,
            qhj_energy: sol.energy,
            oracle_energy: edge.energy,
            delta,
            phase: edge.phase,
            matched,
        });
    }

    Ok(VerificationReport {
        modes,
        tolerance: tol,
        pass: unmatched.is_empty(),
        max_delta,
        edges,
        unmatched,
    })
}
