//! Assembled band-edge eigenfunctions `ψ = cn^α dn^β P_n(sn)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use twofloat::TwoFloat;

use super::families::{enumerate_families, Parity, SolutionFamily};
use super::pencil::{build_pencil, extended_eigenpairs};
use crate::elliptic::jacobi;
use crate::error::{Error, Result};
use crate::oracle::EdgePhase;
use crate::poly::{dd_div, Poly};
use crate::potentials::PotentialSpec;

/// Grid used for the real-zero count.
pub const ZERO_SCAN_POINTS: usize = 4096;

/// Coefficients below this fraction of the largest one count as zero when
/// deciding the actual degree.
const DEGREE_TOL: f64 = 1e-12;

/// `P_n(t)` with only the powers `t^n, t^{n-2}, …` present.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParityPolynomial {
    pub parity: Parity,
    /// Nominal degree `n`.
    pub degree: usize,
    /// Coefficients of `t^n, t^{n-2}, …`.
    pub coeffs: Vec<f64>,
    /// Low-order parts completing `coeffs` to double-double. The monomial
    /// basis cancels so heavily for large `n` near `m → 1` that rounding the
    /// coefficients to `f64` visibly changes `ψ`.
    #[serde(skip)]
    low: Vec<f64>,
}

impl ParityPolynomial {
    pub fn new(degree: usize, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), degree / 2 + 1, "coefficient count");
        Self {
            parity: Parity::of(degree),
            degree,
            low: vec![0.0; coeffs.len()],
            coeffs,
        }
    }

    pub(crate) fn from_extended(degree: usize, coeffs: &[TwoFloat]) -> Self {
        let mut poly = Self::new(degree, coeffs.iter().map(TwoFloat::hi).collect());
        poly.low = coeffs.iter().map(TwoFloat::lo).collect();
        poly
    }

    pub fn powers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.coeffs.len()).map(move |i| self.degree - 2 * i)
    }

    /// Horner in double-double: plain evaluation noise would swamp
    /// finite-difference checks once the basis cancels.
    pub fn eval(&self, t: f64) -> f64 {
        let t = TwoFloat::from(t);
        let t2 = t * t;
        let even = self
            .coeffs
            .iter()
            .zip(&self.low)
            .fold(TwoFloat::from(0.0), |acc, (&hi, &lo)| {
                acc * t2 + TwoFloat::new_add(hi, lo)
            });
        let value = match self.parity {
            Parity::Even => even,
            Parity::Odd => even * t,
        };
        value.into()
    }

    /// Dense ascending coefficients.
    pub(crate) fn dense(&self) -> Poly {
        let mut c = vec![0.0; self.degree + 1];
        for (p, &v) in self.powers().zip(&self.coeffs) {
            c[p] = v;
        }
        Poly::new(c)
    }

    pub fn derivative_at(&self, t: f64) -> f64 {
        self.dense().derivative().eval(t)
    }

    pub fn second_derivative_at(&self, t: f64) -> f64 {
        self.dense().derivative().derivative().eval(t)
    }

    /// Highest power whose coefficient is not negligible.
    pub fn actual_degree(&self) -> usize {
        let scale = self.coeffs.iter().fold(0.0_f64, |s, c| s.max(c.abs()));
        self.powers()
            .zip(&self.coeffs)
            .find(|(_, c)| c.abs() > DEGREE_TOL * scale)
            .map(|(p, _)| p)
            .unwrap_or(0)
    }

    /// Complex roots (the moving poles of `χ`), from the companion matrix.
    pub fn roots(&self) -> Vec<Complex64> {
        let dense = self.dense();
        let deg = self.actual_degree();
        if deg == 0 {
            return Vec::new();
        }
        let lead = dense.coeff(deg);
        let mut companion = DMatrix::<f64>::zeros(deg, deg);
        for i in 1..deg {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            companion[(i, deg - 1)] = -dense.coeff(i) / lead;
        }
        companion.complex_eigenvalues().iter().copied().collect()
    }
}

/// One band edge: energy, residue set and eigenfunction data.
#[derive(Debug, Clone, Serialize)]
pub struct BandEdgeSolution {
    /// Energy including the potential offset.
    pub energy: f64,
    pub family: SolutionFamily,
    pub poly: ParityPolynomial,
    pub total_zeros: usize,
    pub real_zeros_in_period: usize,
    /// Filled in by [`crate::oracle::verify`].
    pub bloch_phase: Option<EdgePhase>,
    /// Set when the leading coefficient of `P_n` vanished.
    pub degree_deficient: bool,
    #[serde(skip)]
    pub spec: PotentialSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroCensus {
    pub total_zeros: usize,
    pub real_zeros_in_period: usize,
}

/// All band edges of one potential, ascending in energy.
#[derive(Debug, Clone, Serialize)]
pub struct BandEdgeSpectrum {
    #[serde(skip)]
    pub spec: PotentialSpec,
    pub solutions: Vec<BandEdgeSolution>,
}

impl BandEdgeSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.solutions.iter().map(|s| s.energy).collect()
    }
}

/// `ψ(x)` for an assembled solution.
pub fn evaluate_wavefunction(solution: &BandEdgeSolution, x: f64) -> Result<f64> {
    let v = jacobi(x, solution.spec.modulus())?;
    let fam = &solution.family;
    Ok(v.cn.powi(fam.alpha as i32) * v.dn.powi(fam.beta as i32) * solution.poly.eval(v.sn))
}

/// Build a solution from a pencil eigenpair. `coeffs` follows the pencil's
/// power ordering; it is rescaled so the largest-magnitude entry is `+1`.
pub fn assemble_solution(
    spec: &PotentialSpec,
    family: &SolutionFamily,
    energy: f64,
    coeffs: &[f64],
) -> Result<BandEdgeSolution> {
    let extended: Vec<TwoFloat> = coeffs.iter().map(|&c| TwoFloat::from(c)).collect();
    assemble_extended(spec, family, energy, &extended)
}

fn assemble_extended(
    spec: &PotentialSpec,
    family: &SolutionFamily,
    energy: f64,
    coeffs: &[TwoFloat],
) -> Result<BandEdgeSolution> {
    let (pivot, &largest) = coeffs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.hi().abs().total_cmp(&b.1.hi().abs()))
        .ok_or(Error::ZeroEigenvector(energy))?;
    if largest.hi() == 0.0 || !largest.hi().is_finite() {
        return Err(Error::ZeroEigenvector(energy));
    }
    let mut normalized: Vec<TwoFloat> = coeffs.iter().map(|&c| dd_div(c, largest)).collect();
    normalized[pivot] = TwoFloat::from(1.0);

    let poly = ParityPolynomial::from_extended(family.n, &normalized);
    let degree_deficient = poly.actual_degree() < family.n;
    let mut solution = BandEdgeSolution {
        energy,
        family: *family,
        poly,
        total_zeros: 0,
        real_zeros_in_period: 0,
        bloch_phase: None,
        degree_deficient,
        spec: *spec,
    };
    let census = zero_census(&solution, spec)?;
    solution.total_zeros = census.total_zeros;
    solution.real_zeros_in_period = census.real_zeros_in_period;
    Ok(solution)
}

/// Zeros of `ψ`: complex roots of `P_n` plus the `cn` factor, and sign
/// changes over one fundamental period.
pub fn zero_census(solution: &BandEdgeSolution, spec: &PotentialSpec) -> Result<ZeroCensus> {
    let total_zeros = solution.poly.actual_degree() + usize::from(solution.family.alpha == 1);

    // Half-step shift keeps the symmetric zeros at 0, K, 2K off the grid.
    let period = spec.fundamental_period();
    let step = period / ZERO_SCAN_POINTS as f64;
    let mut last_sign = 0.0;
    let mut changes = 0;
    for i in 0..=ZERO_SCAN_POINTS {
        let x = (i as f64 + 0.5) * step;
        let psi = evaluate_wavefunction(solution, x)?;
        if psi == 0.0 {
            continue;
        }
        let sign = psi.signum();
        if last_sign != 0.0 && sign != last_sign {
            changes += 1;
        }
        last_sign = sign;
    }
    Ok(ZeroCensus {
        total_zeros,
        real_zeros_in_period: changes,
    })
}

/// Every band edge of `spec`: all families, all pencil roots, offset applied.
pub fn full_spectrum(spec: &PotentialSpec) -> Result<BandEdgeSpectrum> {
    let families = enumerate_families(spec);
    let mut solutions = Vec::with_capacity(spec.edge_count());
    for family in &families {
        let pencil = build_pencil(family, spec)?;
        let pairs = extended_eigenpairs(&pencil)?;
        if pairs.len() != family.expected_count {
            return Err(Error::CountMismatch {
                expected: family.expected_count,
                found: pairs.len(),
            });
        }
        for (energy, vector) in pairs {
            solutions.push(assemble_extended(
                spec,
                family,
                energy + spec.offset,
                &vector,
            )?);
        }
    }
    if solutions.len() != spec.edge_count() {
        return Err(Error::CountMismatch {
            expected: spec.edge_count(),
            found: solutions.len(),
        });
    }
    solutions.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.family.set_id.cmp(&b.family.set_id))
    });
    Ok(BandEdgeSpectrum {
        spec: *spec,
        solutions,
    })
}
