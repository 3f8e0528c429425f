//! Invariant monomials of a linear circle action.
//!
//! The monomial `z^k zbar^kbar` is invariant exactly when
//! `sum_j a_j (k_j - kbar_j) = 0`. Invariant exponent vectors form an
//! affine monoid; its Hilbert basis, split into real and imaginary parts,
//! generates the algebra of real invariant polynomials.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::ActionSpec;
use crate::error::{Error, Result};

/// Exponents of the complex monomial `z_1^{k_1} zbar_1^{kbar_1} ... z_m^{k_m} zbar_m^{kbar_m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector {
    pub k: Vec<u32>,
    pub kbar: Vec<u32>,
}

impl ExponentVector {
    pub fn new(k: Vec<u32>, kbar: Vec<u32>) -> Result<Self> {
        if k.len() != kbar.len() {
            return Err(Error::LengthMismatch {
                expected: k.len(),
                got: kbar.len(),
            });
        }
        Ok(ExponentVector { k, kbar })
    }

    /// Builds a vector from the interleaved layout `(k_1, kbar_1, ..., k_m, kbar_m)`.
    pub fn interleaved(pairs: &[u32]) -> Result<Self> {
        if !pairs.len().is_multiple_of(2) {
            return Err(Error::InvalidInput(
                "interleaved exponents need even length".into(),
            ));
        }
        let k = pairs.iter().step_by(2).copied().collect();
        let kbar = pairs.iter().skip(1).step_by(2).copied().collect();
        Ok(ExponentVector { k, kbar })
    }

    pub fn zero(m: usize) -> Self {
        ExponentVector {
            k: vec![0; m],
            kbar: vec![0; m],
        }
    }

    /// Exponent of `|z_j|^2` (1-based `j`).
    pub fn modulus_squared(m: usize, j: usize) -> Self {
        let mut e = Self::zero(m);
        e.k[j - 1] = 1;
        e.kbar[j - 1] = 1;
        e
    }

    pub fn m(&self) -> usize {
        self.k.len()
    }

    pub fn degree(&self) -> u32 {
        self.k.iter().chain(&self.kbar).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.k.iter().chain(&self.kbar).all(|&x| x == 0)
    }

    /// Exponents of the complex conjugate monomial.
    pub fn conjugate(&self) -> Self {
        ExponentVector {
            k: self.kbar.clone(),
            kbar: self.k.clone(),
        }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.k == self.kbar
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.k.iter().zip(&other.k).all(|(a, b)| a <= b)
            && self.kbar.iter().zip(&other.kbar).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.le(self) {
            return None;
        }
        Some(ExponentVector {
            k: self.k.iter().zip(&other.k).map(|(a, b)| a - b).collect(),
            kbar: self
                .kbar
                .iter()
                .zip(&other.kbar)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector {
            k: self.k.iter().zip(&other.k).map(|(a, b)| a + b).collect(),
            kbar: self
                .kbar
                .iter()
                .zip(&other.kbar)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// The concatenated tuple `(k, kbar)` used for canonical ordering.
    fn concat(&self) -> impl Iterator<Item = u32> + '_ {
        self.k.iter().chain(&self.kbar).copied()
    }

    fn check_len(&self, m: usize) -> Result<()> {
        if self.k.len() != m || self.kbar.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: self.k.len().max(self.kbar.len()),
            });
        }
        Ok(())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, exps) in [("z", &self.k), ("zbar", &self.kbar)] {
            for (j, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("{name}{}", j + 1)),
                    _ => parts.push(format!("{name}{}^{e}", j + 1)),
                }
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Which real polynomial a generator takes from its monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    #[serde(rename = "abs2")]
    ModulusSquared,
    #[serde(rename = "re")]
    RealPart,
    #[serde(rename = "im")]
    ImaginaryPart,
}

/// A real-valued invariant polynomial: `|z_j|^2`, or the real or imaginary
/// part of an invariant monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantGenerator {
    #[serde(flatten)]
    pub exponents: ExponentVector,
    pub part: Part,
}

impl fmt::Display for InvariantGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            Part::ModulusSquared => {
                let j = self
                    .exponents
                    .k
                    .iter()
                    .position(|&x| x == 1)
                    .map_or(0, |j| j + 1);
                write!(f, "|z{j}|^2")
            }
            Part::RealPart => write!(f, "Re({})", self.exponents),
            Part::ImaginaryPart => write!(f, "Im({})", self.exponents),
        }
    }
}

/// `sum_j a_j (k_j - kbar_j)`: the character by which the circle acts on the monomial.
pub fn circle_weight(spec: &ActionSpec, e: &ExponentVector) -> Result<i64> {
    e.check_len(spec.m())?;
    Ok(spec
        .weights()
        .iter()
        .zip(e.k.iter().zip(&e.kbar))
        .map(|(&a, (&k, &kb))| a as i64 * (k as i64 - kb as i64))
        .sum())
}

pub fn is_invariant_exponent(spec: &ActionSpec, e: &ExponentVector) -> Result<bool> {
    Ok(circle_weight(spec, e)? == 0)
}

/// Minimal generating set of the monoid of invariant exponent vectors.
///
/// Uses the Contejean-Devie completion for the single equation
/// `a.k - a.kbar = 0`: starting from unit vectors, a partial vector is only
/// extended along coordinates that push its circle weight toward zero, and
/// any vector dominating a solution already found is dropped. Levels are
/// processed by total degree, so every kept solution is minimal.
///
/// Output is sorted by degree, then by the concatenated `(k, kbar)` tuple.
pub fn hilbert_basis(spec: &ActionSpec) -> Result<Vec<ExponentVector>> {
    spec.require_nonempty()?;
    let m = spec.m();
    // Coordinates 0..m are k, m..2m are kbar; signed coefficient per coordinate.
    let coeff: Vec<i64> = spec
        .weights()
        .iter()
        .map(|&a| a as i64)
        .chain(spec.weights().iter().map(|&a| -(a as i64)))
        .collect();

    let mut solutions: Vec<Vec<u32>> = Vec::new();
    let mut frontier: Vec<(Vec<u32>, i64)> = (0..2 * m)
        .map(|i| {
            let mut v = vec![0u32; 2 * m];
            v[i] = 1;
            (v, coeff[i])
        })
        .collect();

    while !frontier.is_empty() {
        let mut next = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut found = Vec::new();
        for (v, balance) in frontier {
            if balance == 0 {
                found.push(v);
                continue;
            }
            for (i, &c) in coeff.iter().enumerate() {
                if balance.signum() == c.signum() {
                    continue;
                }
                let mut w = v.clone();
                w[i] += 1;
                if seen.contains(&w) || dominates_any(&w, &solutions) {
                    continue;
                }
                seen.insert(w.clone());
                next.push((w, balance + c));
            }
        }
        solutions.extend(found);
        // Vectors at the next level may dominate solutions found on this one.
        next.retain(|(w, _)| !dominates_any(w, &solutions));
        frontier = next;
    }

    let mut basis: Vec<ExponentVector> = solutions
        .into_iter()
        .map(|v| ExponentVector {
            k: v[..m].to_vec(),
            kbar: v[m..].to_vec(),
        })
        .collect();
    basis.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.concat().cmp(b.concat()))
    });
    basis.dedup();
    Ok(basis)
}

fn dominates_any(w: &[u32], solutions: &[Vec<u32>]) -> bool {
    solutions
        .iter()
        .any(|s| s.iter().zip(w).all(|(a, b)| a <= b))
}

/// Splits a Hilbert basis into real generators.
///
/// Self-conjugate elements (the `|z_j|^2`) come first, ordered by `j`. Each
/// conjugate pair then contributes the real and imaginary part of its
/// representative, the member whose `(k, kbar)` tuple is lexicographically
/// larger, so the pair `z1^2 zbar2`, `zbar1^2 z2` is written through `z1^2 zbar2`.
/// Pairs are ordered by degree and then by representative, descending.
pub fn realize_generators(basis: &[ExponentVector]) -> Vec<InvariantGenerator> {
    let mut moduli: Vec<&ExponentVector> = basis.iter().filter(|e| e.is_self_conjugate()).collect();
    moduli.sort_by(|a, b| b.concat().cmp(a.concat()));

    let mut reps: Vec<ExponentVector> = basis
        .iter()
        .filter(|e| !e.is_self_conjugate())
        .map(|e| {
            let c = e.conjugate();
            if e.concat().cmp(c.concat()).is_ge() {
                e.clone()
            } else {
                c
            }
        })
        .collect();
    reps.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| b.concat().cmp(a.concat()))
    });
    reps.dedup();

    let mut out: Vec<InvariantGenerator> = moduli
        .into_iter()
        .map(|e| InvariantGenerator {
            exponents: e.clone(),
            part: Part::ModulusSquared,
        })
        .collect();
    for e in reps {
        out.push(InvariantGenerator {
            exponents: e.clone(),
            part: Part::RealPart,
        });
        out.push(InvariantGenerator {
            exponents: e,
            part: Part::ImaginaryPart,
        });
    }
    out
}

/// Generators of the real invariant algebra for `spec`.
pub fn generators(spec: &ActionSpec) -> Result<Vec<InvariantGenerator>> {
    Ok(realize_generators(&hilbert_basis(spec)?))
}

/// Exhaustive search for a way to write invariant vectors as sums of basis
/// elements. Results are memoized, so one decomposer can check many vectors.
pub struct Decomposer<'a> {
    spec: &'a ActionSpec,
    basis: &'a [ExponentVector],
    // None: proven not decomposable; Some(i): basis[i] is the first summand.
    memo: HashMap<ExponentVector, Option<usize>>,
}

impl<'a> Decomposer<'a> {
    pub fn new(spec: &'a ActionSpec, basis: &'a [ExponentVector]) -> Self {
        Decomposer {
            spec,
            basis,
            memo: HashMap::new(),
        }
    }

    /// Returns the multiset of basis elements summing to `e`, or `None` when
    /// no such multiset exists.
    pub fn decompose(
        &mut self,
        e: &ExponentVector,
    ) -> Result<Option<BTreeMap<ExponentVector, usize>>> {
        let w = circle_weight(self.spec, e)?;
        if w != 0 {
            return Err(Error::NotInvariant { weight: w });
        }
        if !self.search(e) {
            return Ok(None);
        }
        let mut out = BTreeMap::new();
        let mut rest = e.clone();
        while !rest.is_zero() {
            let i = self.memo[&rest].expect("search succeeded");
            *out.entry(self.basis[i].clone()).or_insert(0) += 1;
            rest = rest.checked_sub(&self.basis[i]).expect("summand fits");
        }
        Ok(Some(out))
    }

    fn search(&mut self, e: &ExponentVector) -> bool {
        if e.is_zero() {
            return true;
        }
        if let Some(r) = self.memo.get(e) {
            return r.is_some();
        }
        let mut hit = None;
        for (i, b) in self.basis.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            if let Some(rest) = e.checked_sub(b) {
                if self.search(&rest) {
                    hit = Some(i);
                    break;
                }
            }
        }
        self.memo.insert(e.clone(), hit);
        hit.is_some()
    }
}

pub fn decompose(
    spec: &ActionSpec,
    e: &ExponentVector,
    basis: &[ExponentVector],
) -> Result<Option<BTreeMap<ExponentVector, usize>>> {
    Decomposer::new(spec, basis).decompose(e)
}
