//! Residue sets and the polynomial degree each one forces.
//!
//! Matching `χ ~ λ₁/t` at infinity against the pole expansion gives
//! `2b₁ + 2d₁ + n = λ₁`, so every choice of residues and of the exponent
//! branch `λ₁ ∈ {j+1, -j}` fixes the degree `n` of `P_n`. Negative `n` is
//! discarded. For Lamé with `j ≥ 1` that removes the whole `λ₁ = -j` branch;
//! for the associated family it keeps two sets, and the reflected parameter
//! `-j-1` lands on exactly the same two.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::residues::{fixed_residues, Residue};
use crate::potentials::{Family, PotentialSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// One residue set together with everything it determines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolutionFamily {
    pub set_id: u8,
    #[serde(serialize_with = "ser_ratio")]
    pub b1: Residue,
    #[serde(serialize_with = "ser_ratio")]
    pub d1: Residue,
    pub lambda1: i64,
    /// Exponent of `cn x`, `(4b₁ - 1)/2`.
    pub alpha: i64,
    /// Exponent of `dn x`, `(4d₁ - 1)/2`.
    pub beta: i64,
    /// Degree of `P_n`.
    pub n: usize,
    pub parity: Parity,
    /// Number of independent polynomials, `⌊n/2⌋ + 1`.
    pub expected_count: usize,
}

fn ser_ratio<S: Serializer>(r: &Residue, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn half_odd_exponent(residue: Residue) -> i64 {
    let e = (residue * 4 - 1) / 2;
    assert!(
        e.is_integer(),
        "residue {residue} gives non-integer exponent"
    );
    e.to_integer()
}

/// Sets in table order: Lamé `1..=4` over `(b₁, d₁)` in
/// `(¼,¼) (¾,¼) (¼,¾) (¾,¾)`; associated set 1 has `b₁ = ¾`, set 2 `b₁ = ¼`.
fn set_id(family: Family, b1: Residue, d1: Residue) -> u8 {
    let three = Ratio::new(3, 4);
    match family {
        Family::Lame => 1 + u8::from(b1 == three) + 2 * u8::from(d1 == three),
        Family::AssociatedLame => {
            if b1 == three {
                1
            } else {
                2
            }
        }
    }
}

/// All surviving residue sets for a family at coupling index `j`.
///
/// `j` may be negative; `-j-1` describes the same potential.
pub fn families_for(
    family: Family,
    j: i64,
    residues: &super::ResidueCandidates,
) -> Vec<SolutionFamily> {
    let mut out = Vec::new();
    for lambda1 in [j + 1, -j] {
        for &d1 in &residues.d1 {
            for &b1 in &residues.b1 {
                let n = Ratio::from_integer(lambda1) - b1 * 2 - d1 * 2;
                assert!(n.is_integer());
                let n = n.to_integer();
                if n < 0 {
                    continue;
                }
                let n = n as usize;
                out.push(SolutionFamily {
                    set_id: set_id(family, b1, d1),
                    b1,
                    d1,
                    lambda1,
                    alpha: half_odd_exponent(b1),
                    beta: half_odd_exponent(d1),
                    n,
                    parity: Parity::of(n),
                    expected_count: n / 2 + 1,
                });
            }
        }
    }
    out.sort_by_key(|f| f.set_id);
    out
}

pub fn enumerate_families(spec: &PotentialSpec) -> Vec<SolutionFamily> {
    families_for(spec.family, spec.j(), &fixed_residues(spec))
}
