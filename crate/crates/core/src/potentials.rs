//! The Lamé and associated Lamé (`a = b = j`) potentials.

use std::fmt;

use serde::Serialize;

use crate::elliptic::{complete_k, jacobi, Modulus};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `V = j(j+1) m sn²x`
    Lame,
    /// `V = j(j+1) m (sn²x + cn²x / dn²x)`
    #[value(name = "associated", alias = "associated-lame")]
    #[serde(rename = "associated")]
    AssociatedLame,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Lame => "lame",
            Family::AssociatedLame => "associated",
        })
    }
}

/// One member of a potential family.
///
/// `j` is stored signed: [`PotentialSpec::reflected`] produces the equivalent
/// parameter `-j-1`, which leaves `j(j+1)` and therefore the potential
/// unchanged. Public construction goes through [`PotentialSpec::new`], which
/// requires `j ≥ 1` and `0 < m < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialSpec {
    pub family: Family,
    j: i64,
    m: Modulus,
    pub offset: f64,
}

/// Additive constant that moves the lowest band edge to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SusyOffset {
    pub value: f64,
    /// `false` when no closed form is known for this (family, j); `value` is 0.
    pub published: bool,
}

impl PotentialSpec {
    pub fn new(family: Family, j: i64, m: f64) -> Result<Self> {
        if j < 1 {
            return Err(Error::Domain("j must be ≥ 1".into()));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite(m));
        }
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::Domain(format!("m = {m} must lie in (0, 1)")));
        }
        Ok(Self {
            family,
            j,
            m: Modulus::new(m)?,
            offset: 0.0,
        })
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    /// Shift by [`susy_offset`](Self::susy_offset); unchanged when none is published.
    pub fn with_susy_offset(self) -> Self {
        let shift = self.susy_offset().value;
        self.with_offset(shift)
    }

    /// The same potential written with `j → -j-1`.
    pub fn reflected(&self) -> Self {
        Self {
            j: -self.j - 1,
            ..*self
        }
    }

    #[inline]
    pub fn j(&self) -> i64 {
        self.j
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.m
    }

    #[inline]
    pub fn m(&self) -> f64 {
        self.m.value()
    }

    /// `j(j+1)`.
    #[inline]
    pub fn coupling(&self) -> f64 {
        (self.j * (self.j + 1)) as f64
    }

    /// Number of band edges, `2j+1` for positive `j`.
    pub fn edge_count(&self) -> usize {
        let j = if self.j >= 0 { self.j } else { -self.j - 1 };
        (2 * j + 1) as usize
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let v = jacobi(x, self.m)?;
        let shape = match self.family {
            Family::Lame => v.sn * v.sn,
            Family::AssociatedLame => v.sn * v.sn + (v.cn * v.cn) / (v.dn * v.dn),
        };
        Ok(self.coupling() * self.m() * shape + self.offset)
    }

    /// The offset `V(x) → V(x) + c` with `c` chosen so the ground band edge is 0.
    ///
    /// Known for Lamé `j = 2` (`-2m - 2 + 2√(1-m+m²)`) and associated Lamé
    /// `j = 1` (`-2 - m + 2√(1-m)`).
    pub fn susy_offset(&self) -> SusyOffset {
        let m = self.m();
        let value = match (self.family, self.j) {
            (Family::Lame, 2) | (Family::Lame, -3) => {
                let delta = (1.0 - m + m * m).sqrt();
                Some(-2.0 * m - 2.0 + 2.0 * delta)
            }
            (Family::AssociatedLame, 1) | (Family::AssociatedLame, -2) => {
                Some(-2.0 - m + 2.0 * (1.0 - m).sqrt())
            }
            _ => None,
        };
        match value {
            Some(value) => SusyOffset {
                value,
                published: true,
            },
            None => SusyOffset {
                value: 0.0,
                published: false,
            },
        }
    }

    /// Smallest real period: `2K` for Lamé, `K` for the associated family,
    /// since `sn²(x+K) = cn²x/dn²x` swaps the two terms.
    pub fn fundamental_period(&self) -> f64 {
        let k = complete_k(self.m);
        match self.family {
            Family::Lame => 2.0 * k,
            Family::AssociatedLame => k,
        }
    }
}
