//! Canonical effective linear circle actions and their gcd arithmetic.
//!
//! A linear circle action on `R^n` splits as `R^t x C^m`, with the circle
//! acting trivially on `R^t` and by `z_j -> e^{i a_j theta} z_j` on `C^m`.
//! [`ActionSpec`] stores `t` together with the positive weights `a_j`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An effective linear circle action in normal form.
///
/// Weights are positive, sorted ascending, and coprime as a whole.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ActionSpec {
    trivial_dim: usize,
    weights: Vec<u64>,
}

#[derive(Deserialize)]
struct RawActionSpec {
    #[serde(default)]
    trivial_dim: usize,
    weights: Vec<i64>,
}

impl<'de> Deserialize<'de> for ActionSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawActionSpec::deserialize(d)?;
        canonicalize(&raw.weights, raw.trivial_dim).map_err(serde::de::Error::custom)
    }
}

/// Brings raw integer weights into normal form.
///
/// Negative weights flip sign (complex conjugation is an equivariant
/// diffeomorphism), zero weights move into the trivial factor, and the
/// rest are sorted.
pub fn canonicalize(raw_weights: &[i64], raw_trivial_dim: usize) -> Result<ActionSpec> {
    let mut trivial_dim = raw_trivial_dim;
    let mut weights = Vec::with_capacity(raw_weights.len());
    for &w in raw_weights {
        if w == 0 {
            trivial_dim += 2;
        } else {
            weights.push(w.unsigned_abs());
        }
    }
    weights.sort_unstable();
    let g = gcd_all(weights.iter().copied());
    if !weights.is_empty() && g != 1 {
        return Err(Error::NotEffective { gcd: g });
    }
    Ok(ActionSpec {
        trivial_dim,
        weights,
    })
}

impl ActionSpec {
    /// Convenience constructor for already-positive weights.
    pub fn new(weights: &[u64], trivial_dim: usize) -> Result<Self> {
        let raw: Vec<i64> = weights
            .iter()
            .map(|&w| {
                i64::try_from(w).map_err(|_| Error::InvalidInput(format!("weight {w} too large")))
            })
            .collect::<Result<_>>()?;
        canonicalize(&raw, trivial_dim)
    }

    pub fn trivial_dim(&self) -> usize {
        self.trivial_dim
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Number of complex coordinates the circle moves.
    pub fn m(&self) -> usize {
        self.weights.len()
    }

    /// Real dimension of the representation, `trivial_dim + 2m`.
    pub fn n(&self) -> usize {
        self.trivial_dim + 2 * self.m()
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Rejects the purely trivial action (`m = 0`).
    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.weights.is_empty() {
            Err(Error::EmptyAction)
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_index_set(&self, set: &IndexSet) -> Result<()> {
        match set.max() {
            Some(j) if j > self.m() => Err(Error::IndexOutOfRange {
                index: j,
                m: self.m(),
            }),
            _ => Ok(()),
        }
    }

    /// Weight at a 1-based coordinate index.
    pub fn weight(&self, j: usize) -> Result<u64> {
        if j == 0 || j > self.m() {
            return Err(Error::IndexOutOfRange {
                index: j,
                m: self.m(),
            });
        }
        Ok(self.weights[j - 1])
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weights {:?}", self.weights)?;
        if self.trivial_dim > 0 {
            write!(f, " + trivial R^{}", self.trivial_dim)?;
        }
        Ok(())
    }
}

/// A non-empty set of 1-based coordinate indices, i.e. a face of the
/// weight simplex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(BTreeSet<usize>);

impl IndexSet {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidInput("index set must be non-empty".into()));
        }
        if set.contains(&0) {
            return Err(Error::IndexOutOfRange { index: 0, m: 0 });
        }
        Ok(IndexSet(set))
    }

    /// Builds the face from a bitmask over `m` coordinates (bit `j-1` is index `j`).
    pub(crate) fn from_mask(mask: u64) -> Self {
        IndexSet(
            (0..64)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b + 1)
                .collect(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.contains(&j)
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    fn max(&self) -> Option<usize> {
        self.0.iter().next_back().copied()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("S_")?;
        let sep = if self.0.iter().any(|&j| j > 9) {
            ","
        } else {
            ""
        };
        let parts: Vec<String> = self.0.iter().map(|j| j.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

/// Order of a stabilizer subgroup of the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsotropyOrder {
    Finite(u64),
    /// The whole circle, at points of the trivial factor.
    Infinite,
}

impl fmt::Display for IsotropyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsotropyOrder::Finite(d) => f.pad(&d.to_string()),
            IsotropyOrder::Infinite => f.pad("inf"),
        }
    }
}

pub(crate) fn gcd_all<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    values.into_iter().fold(0, |acc, v| acc.gcd(&v))
}

/// The gcd label the weight simplex carries on `face`.
pub fn gcd_label(spec: &ActionSpec, face: &IndexSet) -> Result<u64> {
    spec.check_index_set(face)?;
    Ok(gcd_all(face.iter().map(|j| spec.weights[j - 1])))
}

/// Order of the stabilizer at points whose nonzero coordinates are exactly
/// `support`.
pub fn isotropy_order(spec: &ActionSpec, support: &[usize]) -> Result<IsotropyOrder> {
    if support.is_empty() {
        return Ok(IsotropyOrder::Infinite);
    }
    let face = IndexSet::new(support.iter().copied()).map_err(|_| Error::IndexOutOfRange {
        index: 0,
        m: spec.m(),
    })?;
    gcd_label(spec, &face).map(IsotropyOrder::Finite)
}
