//! Weight arithmetic for gl(n,H).
//!
//! Weights are exact integer vectors in the basis e_1..e_n of t*. This module
//! holds the root-system constants rho_c and rho_n, the restriction map from
//! the full Cartan to (t, a), K-type dominance, the PRV component, and the
//! spin norm. Everything is exact; there is no floating point anywhere.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::weyl;

/// Exact integer weight in the basis e_1..e_n of t*. The rank is the length
/// of the coordinate vector and is validated wherever two weights meet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank(), "weight rank mismatch in add");
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank(), "weight rank mismatch in sub");
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    /// Sum of the coordinates.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Squared Euclidean norm.
    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|a| a * a).sum()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Regular infinitesimal character, stored as its restriction to t
/// (strictly decreasing positive integers). The optional full form keeps all
/// 2n coordinates as doubled half-integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInfChar")]
pub struct InfChar {
    restricted: Weight,
    full: Option<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawInfChar {
    restricted: Weight,
    full: Option<Vec<i64>>,
}

impl TryFrom<RawInfChar> for InfChar {
    type Error = Error;

    fn try_from(raw: RawInfChar) -> Result<Self, Error> {
        match raw.full {
            None => InfChar::new(raw.restricted),
            Some(full) => InfChar::with_full(raw.restricted, full),
        }
    }
}

impl InfChar {
    pub fn new(restricted: Weight) -> Result<Self, Error> {
        let c = restricted.coords();
        if c.windows(2).any(|w| w[0] <= w[1]) || c.last().is_some_and(|&x| x < 1) {
            return Err(Error::InvalidInfChar(format!(
                "{restricted} is not strictly decreasing with entries >= 1"
            )));
        }
        Ok(InfChar { restricted, full: None })
    }

    /// Attach the full 2n-coordinate form (doubled half-integers). The
    /// restriction of `full` must reproduce `restricted` on the t side and
    /// vanish on the a side.
    pub fn with_full(restricted: Weight, full: Vec<i64>) -> Result<Self, Error> {
        let base = InfChar::new(restricted)?;
        let (t, a) = restrict(&full)?;
        if t != base.restricted {
            return Err(Error::InvalidInfChar(format!(
                "full form restricts to {t} on t, expected {}",
                base.restricted
            )));
        }
        if a.coords().iter().any(|&x| x != 0) {
            return Err(Error::InvalidInfChar(format!("full form has nonzero a-part {a}")));
        }
        Ok(InfChar { full: Some(full), ..base })
    }

    pub fn restricted(&self) -> &Weight {
        &self.restricted
    }

    pub fn full(&self) -> Option<&[i64]> {
        self.full.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.restricted.rank()
    }
}

impl fmt::Display for InfChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.restricted.fmt(f)
    }
}

/// Half sum of compact positive roots: rho_c = (n, n-1, ..., 1).
pub fn rho_c(n: usize) -> Weight {
    Weight((1..=n as i64).rev().collect())
}

/// Half sum of noncompact positive roots: rho_n = (n-1, n-2, ..., 0).
pub fn rho_n(n: usize) -> Weight {
    Weight((0..n as i64).rev().collect())
}

/// Restrict a full 2n-coordinate character (doubled half-integers) to
/// (t, a): t_k = lambda_k - lambda_{2n-k+1}, a_k = lambda_k + lambda_{2n-k+1},
/// both returned in undoubled units.
pub fn restrict(full: &[i64]) -> Result<(Weight, Weight), Error> {
    if !full.len().is_multiple_of(2) {
        return Err(Error::InvalidWeight(format!(
            "full character has odd length {}",
            full.len()
        )));
    }
    let n = full.len() / 2;
    let mut t = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n);
    for k in 0..n {
        let (x, y) = (full[k], full[2 * n - 1 - k]);
        if (x - y) % 2 != 0 {
            return Err(Error::InvalidWeight(format!(
                "coordinates {x} and {y} have mixed integrality"
            )));
        }
        t.push((x - y) / 2);
        a.push((x + y) / 2);
    }
    Ok((Weight(t), Weight(a)))
}

/// A K-type highest weight for Sp(n) is a weakly decreasing sequence of
/// non-negative integers.
pub fn is_ktype(w: &Weight) -> bool {
    let c = w.coords();
    c.windows(2).all(|p| p[0] >= p[1]) && c.last().is_none_or(|&x| x >= 0)
}

/// PRV component of E_tau tensor the spin module: the dominant conjugate
/// {tau - rho_n}.
pub fn prv(tau: &Weight) -> Weight {
    debug_assert!(is_ktype(tau), "prv called on non-K-type {tau}");
    weyl::dominant_rep(&tau.sub(&rho_n(tau.rank()))).0
}

/// Squared spin norm ||{tau - rho_n} + rho_c||^2, kept squared so the value
/// stays an exact integer.
pub fn spin_norm_sq(tau: &Weight) -> i64 {
    prv(tau).add(&rho_c(tau.rank())).norm_sq()
}
