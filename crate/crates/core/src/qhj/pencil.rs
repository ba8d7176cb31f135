//! The polynomial ODE for `P_n` as a matrix pencil in the energy.
//!
//! Substituting `ψ = (1-t²)^{α/2} (1-mt²)^{β/2} P(t)` into
//! `f ψ'' + (f'/2) ψ' + (E - V) ψ = 0` (`f = (1-t²)(1-mt²)`, `u = ln w` for
//! the prefactor `w`) and dividing by `w` gives
//!
//! ```text
//! f P'' + (2 f u' + f'/2) P' + (f (u'' + u'²) + f' u'/2 - V + E) P = 0.
//! ```
//!
//! After multiplying the last coefficient by `f` everything is polynomial. For
//! the residues of a valid set the cleared term `N - fV` is divisible by `f`
//! (the double poles cancel), which leaves an operator `L` with polynomial
//! coefficients and `L[P] + E P = 0`. Acting on the parity-allowed monomials
//! `t^n, t^{n-2}, …`, `L` is tridiagonal; the overflow row `t^{n+2}` vanishes
//! because `n` was chosen from the behaviour at infinity.
//!
//! In closed form, with `k` the power carried by a column,
//!
//! ```text
//! diagonal   -(k+α)² - m(k+β)²
//! below      k(k-1)                          (t^k → t^{k-2})
//! above      m[(k+α+β)(k+α+β+1) - j(j+1)]    (t^k → t^{k+2})
//! ```
//!
//! The generic assembly is kept as a structural check; the closed form, held
//! in double-double, drives the final solve. For large `j` near `m → 1` the
//! pencil is far from normal and an `f64` eigensolver loses several digits.

use nalgebra::{DMatrix, DVector};
use twofloat::TwoFloat;

use super::families::SolutionFamily;
use crate::error::{Error, Result};
use crate::poly::{dd_div, Poly};
use crate::potentials::{Family, PotentialSpec};

/// Relative size allowed for terms that must cancel exactly.
pub const CANCELLATION_TOL: f64 = 1e-10;

/// Imaginary part above which a pencil eigenvalue counts as complex.
pub const COMPLEX_TOL: f64 = 1e-8;

/// Largest relative move Newton refinement may make from the `f64` estimate.
const REFINE_GUARD: f64 = 1e-4;

const MAX_NEWTON_STEPS: usize = 40;

const INVERSE_ITERATIONS: usize = 3;

/// `(A0 + E·A1) c = 0` for the coefficient vector `c` of `P_n`.
#[derive(Debug, Clone)]
pub struct MatrixPencil {
    pub a0: DMatrix<f64>,
    pub a1: DMatrix<f64>,
    /// Power of `t` carried by each unknown (and each row), highest first.
    pub powers: Vec<usize>,
    pub family: SolutionFamily,
    /// Largest coefficient in rows dropped by the parity/degree restriction,
    /// relative to the largest retained entry.
    pub consistency_residual: f64,
    /// Remainder of `N - fV` on division by `f`, relative to its size.
    pub pole_residual: f64,
    /// The reduced operator coefficients `[f, 2fu' + f'/2, Q]`.
    pub(crate) operator: [Poly; 3],
    bands: Bands,
}

/// The tridiagonal `A0` in double-double; row and column `r` carry `t^{n-2r}`.
#[derive(Debug, Clone)]
struct Bands {
    diag: Vec<TwoFloat>,
    /// Entry `(r, r+1)`.
    upper: Vec<TwoFloat>,
    /// Entry `(r+1, r)`, never zero.
    lower: Vec<TwoFloat>,
}

impl Bands {
    fn new(family: &SolutionFamily, spec: &PotentialSpec, powers: &[usize]) -> Self {
        let m = TwoFloat::from(spec.m());
        let (alpha, beta) = (family.alpha as f64, family.beta as f64);
        let g = spec.coupling();
        let diag = powers
            .iter()
            .map(|&k| {
                let k = k as f64;
                -((k + alpha) * (k + alpha)) - m * ((k + beta) * (k + beta))
            })
            .collect();
        let upper = powers[1..]
            .iter()
            .map(|&k| {
                let s = k as f64 + alpha + beta;
                m * (s * (s + 1.0) - g)
            })
            .collect();
        let lower = powers[..powers.len() - 1]
            .iter()
            .map(|&k| TwoFloat::from((k * (k - 1)) as f64))
            .collect();
        Self { diag, upper, lower }
    }

    fn to_matrix(&self) -> DMatrix<f64> {
        let dim = self.diag.len();
        DMatrix::from_fn(dim, dim, |r, c| {
            let v = if r == c {
                self.diag[r]
            } else if c == r + 1 {
                self.upper[r]
            } else if r == c + 1 {
                self.lower[c]
            } else {
                TwoFloat::from(0.0)
            };
            v.into()
        })
    }

    /// `det(A0 + E·I)` and its `E`-derivative by the continuant recurrence.
    fn characteristic(&self, energy: TwoFloat) -> (TwoFloat, TwoFloat) {
        let zero = TwoFloat::from(0.0);
        let one = TwoFloat::from(1.0);
        let (mut p_prev, mut p) = (one, self.diag[0] + energy);
        let (mut d_prev, mut d) = (zero, one);
        for r in 1..self.diag.len() {
            let a = self.diag[r] + energy;
            let bc = self.upper[r - 1] * self.lower[r - 1];
            let p_next = a * p - bc * p_prev;
            let d_next = p + a * d - bc * d_prev;
            (p_prev, p) = (p, p_next);
            (d_prev, d) = (d, d_next);
        }
        (p, d)
    }

    /// Newton on the characteristic polynomial, started from an `f64` root.
    fn refine(&self, estimate: f64) -> TwoFloat {
        let scale = estimate.abs().max(1.0);
        let mut energy = TwoFloat::from(estimate);
        for _ in 0..MAX_NEWTON_STEPS {
            let (p, dp) = self.characteristic(energy);
            if f64::from(dp) == 0.0 {
                break;
            }
            let step = dd_div(p, dp);
            if !f64::from(step).is_finite() {
                break;
            }
            energy -= step;
            if f64::from(step).abs() <= 1e-28 * scale {
                break;
            }
        }
        let moved = f64::from(energy - estimate).abs();
        if moved.is_finite() && moved <= REFINE_GUARD * scale {
            energy
        } else {
            TwoFloat::from(estimate)
        }
    }

    /// Kernel of `A0 + E·I` by inverse iteration. The backward three-term
    /// recurrence would be exact in exact arithmetic but amplifies rounding.
    fn null_vector(&self, energy: TwoFloat) -> Vec<TwoFloat> {
        let dim = self.diag.len();
        let zero = TwoFloat::from(0.0);
        let mut shifted = vec![vec![zero; dim]; dim];
        for r in 0..dim {
            shifted[r][r] = self.diag[r] + energy;
            if r + 1 < dim {
                shifted[r][r + 1] = self.upper[r];
                shifted[r + 1][r] = self.lower[r];
            }
        }
        let mut v = vec![TwoFloat::from(1.0); dim];
        for _ in 0..INVERSE_ITERATIONS {
            v = solve_pivoted(shifted.clone(), v);
            let largest = v
                .iter()
                .fold(zero, |s, c| if c.abs() > s { c.abs() } else { s });
            if largest == zero {
                break;
            }
            v.iter_mut().for_each(|c| *c = dd_div(*c, largest));
        }
        v
    }
}

/// Gaussian elimination with partial pivoting. An exactly vanishing pivot
/// (the shift sits on an eigenvalue) is nudged so inverse iteration proceeds.
fn solve_pivoted(mut a: Vec<Vec<TwoFloat>>, mut b: Vec<TwoFloat>) -> Vec<TwoFloat> {
    let dim = b.len();
    let zero = TwoFloat::from(0.0);
    let scale = a
        .iter()
        .flatten()
        .fold(1.0_f64, |s, c| s.max(f64::from(*c).abs()));
    for col in 0..dim {
        let pivot = (col..dim)
            .max_by(|&i, &j| {
                f64::from(a[i][col])
                    .abs()
                    .total_cmp(&f64::from(a[j][col]).abs())
            })
            .expect("non-empty");
        a.swap(col, pivot);
        b.swap(col, pivot);
        if a[col][col] == zero {
            a[col][col] = TwoFloat::from(1e-30 * scale);
        }
        let pivot_row = a[col].clone();
        for row in col + 1..dim {
            let factor = dd_div(a[row][col], pivot_row[col]);
            if factor == zero {
                continue;
            }
            for (entry, &p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *entry -= factor * p;
            }
            let delta = factor * b[col];
            b[row] -= delta;
        }
    }
    let mut x = vec![zero; dim];
    for row in (0..dim).rev() {
        let mut acc = b[row];
        for k in row + 1..dim {
            acc -= a[row][k] * x[k];
        }
        x[row] = dd_div(acc, a[row][row]);
    }
    x
}

impl MatrixPencil {
    pub fn dim(&self) -> usize {
        self.powers.len()
    }

    /// `A0 + E·A1`.
    pub fn at(&self, energy: f64) -> DMatrix<f64> {
        &self.a0 + &self.a1 * energy
    }

    /// Value of the coefficient `Q(t)` multiplying `P` (offset-free, `E = 0`).
    pub fn potential_coefficient(&self, t: f64) -> f64 {
        self.operator[2].eval(t)
    }
}

fn assembly_error(family: &SolutionFamily, reason: impl Into<String>) -> Error {
    Error::PencilAssembly {
        set_id: family.set_id,
        reason: reason.into(),
    }
}

/// Build the pencil for one residue set. The additive offset of `spec` is
/// ignored; energies are shifted afterwards.
pub fn build_pencil(family: &SolutionFamily, spec: &PotentialSpec) -> Result<MatrixPencil> {
    let m = spec.m();
    let a = family.alpha as f64 / 2.0;
    let b = family.beta as f64 / 2.0;
    let g = spec.coupling();

    let t = Poly::new(vec![0.0, 1.0]);
    let t2 = Poly::new(vec![0.0, 0.0, 1.0]);
    let p = Poly::new(vec![1.0, 0.0, -1.0]); // 1 - t²
    let q = Poly::new(vec![1.0, 0.0, -m]); // 1 - m t²
    let f = &p * &q;
    let fp = f.derivative();

    // f·u'
    let fu = &(&t * &q).scale(-2.0 * a) + &(&t * &p).scale(-2.0 * b * m);
    // f²·u''
    let one_plus_t2 = Poly::new(vec![1.0, 0.0, 1.0]);
    let one_plus_mt2 = Poly::new(vec![1.0, 0.0, m]);
    let f2u2 = &(&one_plus_t2 * &(&q * &q)).scale(-2.0 * a)
        + &(&one_plus_mt2 * &(&p * &p)).scale(-2.0 * b * m);
    let cleared = &(&f2u2 + &(&fu * &fu)) + &(&fp * &fu).scale(0.5);

    let fv = match spec.family {
        Family::Lame => (&f * &t2).scale(g * m),
        Family::AssociatedLame => (&(&f * &t2) + &(&p * &p)).scale(g * m),
    };
    let w = &cleared - &fv;
    let (quotient, remainder) = w.div_rem(&f);
    let pole_residual = remainder.max_abs() / w.max_abs().max(1.0);
    if pole_residual > CANCELLATION_TOL {
        return Err(assembly_error(
            family,
            format!("double poles do not cancel (remainder {pole_residual:.3e})"),
        ));
    }

    let second = f;
    let first = &fu.scale(2.0) + &fp.scale(0.5);
    let zeroth = quotient;

    let n = family.n;
    let powers: Vec<usize> = (0..=n / 2).map(|i| n - 2 * i).collect();
    let dim = powers.len();
    let row_of = |power: usize| -> Option<usize> {
        (power <= n && (n - power).is_multiple_of(2)).then(|| (n - power) / 2)
    };

    let mut a0 = DMatrix::<f64>::zeros(dim, dim);
    let mut dropped: f64 = 0.0;
    for (col, &k) in powers.iter().enumerate() {
        let kf = k as f64;
        let mut image = &zeroth * &Poly::monomial(k, 1.0);
        if k >= 1 {
            image = &image + &(&first * &Poly::monomial(k - 1, kf));
        }
        if k >= 2 {
            image = &image + &(&second * &Poly::monomial(k - 2, kf * (kf - 1.0)));
        }
        for (power, &c) in image.0.iter().enumerate() {
            match row_of(power) {
                Some(row) => a0[(row, col)] = c,
                None => dropped = dropped.max(c.abs()),
            }
        }
    }
    let scale = a0.iter().fold(1.0_f64, |s, c| s.max(c.abs()));
    let consistency_residual = dropped / scale;
    if consistency_residual > CANCELLATION_TOL {
        return Err(assembly_error(
            family,
            format!("overflow rows do not vanish (residual {consistency_residual:.3e})"),
        ));
    }

    let bands = Bands::new(family, spec, &powers);
    let closed = bands.to_matrix();
    let mismatch = (&closed - &a0).amax() / scale;
    if mismatch > CANCELLATION_TOL {
        return Err(assembly_error(
            family,
            format!("closed-form bands disagree with assembly ({mismatch:.3e})"),
        ));
    }

    let a1 = DMatrix::<f64>::identity(dim, dim);
    if a1.determinant().abs() < 1e-14 {
        return Err(assembly_error(family, "energy matrix is singular"));
    }

    Ok(MatrixPencil {
        a0,
        a1,
        powers,
        family: *family,
        consistency_residual,
        pole_residual,
        operator: [second, first, zeroth],
        bands,
    })
}

/// Roots of `det(A0 + E·A1) = 0`, ascending.
pub fn band_edge_energies(pencil: &MatrixPencil) -> Result<Vec<f64>> {
    let inv = pencil
        .a1
        .clone()
        .try_inverse()
        .ok_or_else(|| assembly_error(&pencil.family, "energy matrix is singular"))?;
    let mat = -(inv * &pencil.a0);
    let set_id = pencil.family.set_id;
    let scale = mat.iter().fold(1.0_f64, |s, c| s.max(c.abs()));

    let mut energies = match pencil.dim() {
        1 => vec![mat[(0, 0)]],
        2 => {
            let half_tr = 0.5 * (mat[(0, 0)] + mat[(1, 1)]);
            let half_diff = 0.5 * (mat[(0, 0)] - mat[(1, 1)]);
            let disc = half_diff * half_diff + mat[(0, 1)] * mat[(1, 0)];
            if disc < 0.0 {
                let im = (-disc).sqrt();
                if im > COMPLEX_TOL * scale {
                    return Err(Error::ComplexEigenvalue {
                        set_id,
                        re: half_tr,
                        im,
                    });
                }
                vec![half_tr, half_tr]
            } else {
                let s = disc.sqrt();
                vec![half_tr - s, half_tr + s]
            }
        }
        _ if symmetrizable(&mat) => {
            // A diagonal similarity turns a tridiagonal matrix with positive
            // off-diagonal products into a symmetric one; its eigenvalues are
            // then well conditioned even when `mat` is far from normal.
            let dim = mat.nrows();
            let sym = DMatrix::from_fn(dim, dim, |r, c| match r.abs_diff(c) {
                0 => mat[(r, c)],
                1 => (mat[(r, c)] * mat[(c, r)]).sqrt(),
                _ => 0.0,
            });
            sym.symmetric_eigenvalues().iter().copied().collect()
        }
        _ => {
            let eig = mat.complex_eigenvalues();
            let mut out = Vec::with_capacity(eig.len());
            for z in eig.iter() {
                if z.im.abs() > COMPLEX_TOL * scale {
                    return Err(Error::ComplexEigenvalue {
                        set_id,
                        re: z.re,
                        im: z.im,
                    });
                }
                out.push(z.re);
            }
            out
        }
    };
    energies.sort_by(f64::total_cmp);
    Ok(refined(pencil, &energies)
        .iter()
        .map(|&e| f64::from(e))
        .collect())
}

/// Newton-refined roots; falls back to the estimates if two of them merge.
fn refined(pencil: &MatrixPencil, estimates: &[f64]) -> Vec<TwoFloat> {
    let out: Vec<TwoFloat> = estimates.iter().map(|&e| pencil.bands.refine(e)).collect();
    let ordered = out.windows(2).all(|w| f64::from(w[1] - w[0]) > 0.0);
    if ordered || out.len() < 2 {
        out
    } else {
        estimates.iter().map(|&e| TwoFloat::from(e)).collect()
    }
}

fn symmetrizable(mat: &DMatrix<f64>) -> bool {
    let dim = mat.nrows();
    (0..dim).all(|r| {
        (0..dim).all(|c| match r.abs_diff(c) {
            0 => true,
            1 => mat[(r, c)] * mat[(c, r)] > 0.0,
            _ => mat[(r, c)] == 0.0,
        })
    })
}

/// Null vector of `A0 + E·A1`, ordered like [`MatrixPencil::powers`] and
/// scaled so its largest entry has magnitude one.
pub fn null_vector(pencil: &MatrixPencil, energy: f64) -> Result<DVector<f64>> {
    let v = checked_kernel(pencil, TwoFloat::from(energy), energy)?;
    Ok(DVector::from_iterator(
        v.len(),
        v.iter().map(|&c| f64::from(c)),
    ))
}

fn checked_kernel(pencil: &MatrixPencil, energy: TwoFloat, label: f64) -> Result<Vec<TwoFloat>> {
    let v = pencil.bands.null_vector(energy);
    if v.iter().all(|c| f64::from(*c).is_finite()) {
        Ok(v)
    } else {
        Err(Error::ZeroEigenvector(label))
    }
}

/// Energies (offset-free, ascending) with their coefficient vectors.
pub fn eigenpairs(pencil: &MatrixPencil) -> Result<Vec<(f64, DVector<f64>)>> {
    Ok(extended_eigenpairs(pencil)?
        .into_iter()
        .map(|(e, v)| {
            (
                e,
                DVector::from_iterator(v.len(), v.iter().map(|&c| f64::from(c))),
            )
        })
        .collect())
}

/// Like [`eigenpairs`] but keeps the coefficients in double-double.
pub(crate) fn extended_eigenpairs(pencil: &MatrixPencil) -> Result<Vec<(f64, Vec<TwoFloat>)>> {
    band_edge_energies(pencil)?
        .into_iter()
        .map(|e| checked_kernel(pencil, pencil.bands.refine(e), e).map(|v| (e, v)))
        .collect()
}
