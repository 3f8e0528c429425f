//! Orbit-type stratification of `R^t x C^m / S^1`.
//!
//! Each face `I` of the weight simplex is the set `S_I` of points whose
//! nonzero coordinates are exactly `I`; the stabilizer there is cyclic of
//! order `gcd(a_i : i in I)`. Orbit-type strata of the quotient group faces
//! by that order. The stratum of order `d` has the unique maximal face
//! `I_d = {j : d | a_j}`, and `stratum_d` lies in the closure of `stratum_e`
//! exactly when `e | d`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::action::{gcd_all, gcd_label, ActionSpec, IndexSet, IsotropyOrder};
use crate::error::{Error, Result};

/// Largest `m` for which faces are enumerated explicitly.
pub const MAX_FACE_M: usize = 20;

pub const DISTINGUISHED_ID: &str = "distinguished";

/// One row of the face table: a set `S_I`, its stabilizer order and codimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceClass {
    pub indices: IndexSet,
    pub stabilizer_order: u64,
    pub codim: usize,
}

/// All `2^m - 1` faces, ordered by codimension and then by index set.
pub fn face_table(spec: &ActionSpec) -> Result<Vec<FaceClass>> {
    spec.require_nonempty()?;
    let m = spec.m();
    if m > MAX_FACE_M {
        return Err(Error::InvalidInput(format!(
            "face table limited to m <= {MAX_FACE_M}, got {m}"
        )));
    }
    let mut rows = Vec::with_capacity((1usize << m) - 1);
    for mask in 1u64..(1u64 << m) {
        let indices = IndexSet::from_mask(mask);
        let stabilizer_order = gcd_label(spec, &indices)?;
        rows.push(FaceClass {
            codim: 2 * (m - indices.len()),
            indices,
            stabilizer_order,
        });
    }
    rows.sort_by(|a, b| {
        a.codim
            .cmp(&b.codim)
            .then_with(|| a.indices.cmp(&b.indices))
    });
    Ok(rows)
}

impl Serialize for IsotropyOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            IsotropyOrder::Finite(d) => s.serialize_u64(*d),
            IsotropyOrder::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for IsotropyOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(0) => Err(serde::de::Error::custom("isotropy order must be positive")),
            Raw::Num(n) => Ok(IsotropyOrder::Finite(n)),
            Raw::Str(s) if s == "inf" => Ok(IsotropyOrder::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "bad isotropy order `{s}`"
            ))),
        }
    }
}

/// An orbit-type stratum of the orbit space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub id: String,
    pub order: IsotropyOrder,
    pub dim: usize,
    /// Faces whose images make up the stratum. Never serialized; empty for
    /// the distinguished stratum and for diagrams read from JSON.
    #[serde(skip)]
    pub faces: Vec<IndexSet>,
}

impl Stratum {
    pub fn is_distinguished(&self) -> bool {
        self.order == IsotropyOrder::Infinite
    }

    pub fn finite_order(&self) -> Option<u64> {
        match self.order {
            IsotropyOrder::Finite(d) => Some(d),
            IsotropyOrder::Infinite => None,
        }
    }
}

/// Strata of an orbit space together with the closure order.
///
/// `closure` holds the strict relation `S < T` (`S` lies in the closure of
/// `T`, `S != T`) as index pairs into `strata`, transitively closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratificationDiagram {
    ambient_dim: usize,
    strata: Vec<Stratum>,
    closure: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct DiagramWire {
    ambient_dim: usize,
    strata: Vec<Stratum>,
    closure: Vec<(String, String)>,
}

impl Serialize for StratificationDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramWire {
            ambient_dim: self.ambient_dim,
            strata: self.strata.clone(),
            closure: self
                .closure
                .iter()
                .map(|&(a, b)| (self.strata[a].id.clone(), self.strata[b].id.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StratificationDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = DiagramWire::deserialize(d)?;
        StratificationDiagram::new(w.ambient_dim, w.strata, &w.closure)
            .map_err(serde::de::Error::custom)
    }
}

impl StratificationDiagram {
    /// Builds a diagram from strata and `(lower, upper)` id pairs.
    ///
    /// Reflexive pairs are dropped and the relation is transitively closed.
    /// Fails on duplicate or unknown ids, cycles, and pairs whose lower
    /// stratum is not of strictly smaller dimension.
    pub fn new(
        ambient_dim: usize,
        strata: Vec<Stratum>,
        pairs: &[(String, String)],
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, s) in strata.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(Error::MalformedDiagram(format!(
                    "duplicate stratum id `{}`",
                    s.id
                )));
            }
            if s.dim >= ambient_dim.max(1) {
                return Err(Error::MalformedDiagram(format!(
                    "stratum `{}` has dim {} but the orbit space has dim {}",
                    s.id,
                    s.dim,
                    ambient_dim.saturating_sub(1)
                )));
            }
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownStratum(id.to_string()))
        };
        let n = strata.len();
        let mut rel = vec![vec![false; n]; n];
        for (a, b) in pairs {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i != j {
                rel[i][j] = true;
            }
        }
        for k in 0..n {
            let via = rel[k].clone();
            for row in rel.iter_mut().filter(|row| row[k]) {
                for (cell, &v) in row.iter_mut().zip(&via) {
                    *cell |= v;
                }
            }
        }
        let mut closure = BTreeSet::new();
        for i in 0..n {
            if rel[i][i] {
                return Err(Error::MalformedDiagram(format!(
                    "closure order has a cycle through `{}`",
                    strata[i].id
                )));
            }
            for j in 0..n {
                if rel[i][j] {
                    if strata[i].dim >= strata[j].dim {
                        return Err(Error::MalformedDiagram(format!(
                            "`{}` < `{}` but dims are {} and {}",
                            strata[i].id, strata[j].id, strata[i].dim, strata[j].dim
                        )));
                    }
                    closure.insert((i, j));
                }
            }
        }
        Ok(StratificationDiagram {
            ambient_dim,
            strata,
            closure,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, id: &str) -> Result<&Stratum> {
        self.index_of(id).map(|i| &self.strata[i])
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.strata
            .iter()
            .position(|s| s.id == id)
            .ok_or_else(|| Error::UnknownStratum(id.to_string()))
    }

    /// Strict closure relation as index pairs.
    pub fn closure(&self) -> &BTreeSet<(usize, usize)> {
        &self.closure
    }

    /// `S < T` on indices.
    pub fn precedes(&self, lower: usize, upper: usize) -> bool {
        self.closure.contains(&(lower, upper))
    }

    pub fn distinguished(&self) -> Vec<usize> {
        (0..self.strata.len())
            .filter(|&i| self.strata[i].is_distinguished())
            .collect()
    }

    pub fn finite(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.strata.len()).filter(move |&i| !self.strata[i].is_distinguished())
    }

    /// Finite strata not below any other finite stratum.
    pub fn maximal_finite(&self) -> Vec<usize> {
        self.finite()
            .filter(|&i| !self.finite().any(|j| self.precedes(i, j)))
            .collect()
    }

    /// The open dense stratum, when it is unique.
    pub fn top(&self) -> Result<usize> {
        match self.maximal_finite().as_slice() {
            [t] => Ok(*t),
            [] => Err(Error::MalformedDiagram("no finite-order stratum".into())),
            many => Err(Error::MalformedDiagram(format!(
                "{} maximal strata ({})",
                many.len(),
                many.iter()
                    .map(|&i| self.strata[i].id.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))),
        }
    }

    /// Covering pairs of the closure order among finite strata.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let finite: Vec<usize> = self.finite().collect();
        let mut edges: Vec<(usize, usize)> = self
            .closure
            .iter()
            .copied()
            .filter(|&(s, t)| {
                !self.strata[s].is_distinguished() && !self.strata[t].is_distinguished()
            })
            .filter(|&(s, t)| {
                !finite
                    .iter()
                    .any(|&u| self.precedes(s, u) && self.precedes(u, t))
            })
            .collect();
        edges.sort();
        edges
    }

    /// Hasse edges by stratum id.
    pub fn hasse_edge_ids(&self) -> Vec<(String, String)> {
        self.hasse_edges()
            .into_iter()
            .map(|(a, b)| (self.strata[a].id.clone(), self.strata[b].id.clone()))
            .collect()
    }

    /// Length of a longest strict chain from stratum `idx` up to the top.
    pub fn depth_of(&self, idx: usize) -> Result<usize> {
        let s = self
            .strata
            .get(idx)
            .ok_or_else(|| Error::UnknownStratum(format!("#{idx}")))?;
        if s.is_distinguished() {
            return Err(Error::DistinguishedStratum(s.id.clone()));
        }
        let mut memo = HashMap::new();
        Ok(self.depth_rec(idx, &mut memo))
    }

    fn depth_rec(&self, idx: usize, memo: &mut HashMap<usize, usize>) -> usize {
        if let Some(&d) = memo.get(&idx) {
            return d;
        }
        let d = self
            .finite()
            .filter(|&j| self.precedes(idx, j))
            .collect::<Vec<_>>()
            .into_iter()
            .map(|j| 1 + self.depth_rec(j, memo))
            .max()
            .unwrap_or(0);
        memo.insert(idx, d);
        d
    }

    /// Graphviz rendering: one node per stratum, one edge per Hasse pair.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph strata {\n  rankdir=BT;\n");
        for s in &self.strata {
            let order = match s.order {
                IsotropyOrder::Finite(d) => d.to_string(),
                IsotropyOrder::Infinite => "inf".into(),
            };
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{} (order {}, dim {})\"];",
                s.id, s.id, order, s.dim
            );
        }
        for (a, b) in self.hasse_edge_ids() {
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for StratificationDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top_dim = self.top().ok().map(|t| self.strata[t].dim);
        writeln!(f, "ambient dimension {}", self.ambient_dim)?;
        writeln!(
            f,
            "{:<16} {:>6} {:>5} {:>6}",
            "stratum", "order", "dim", "codim"
        )?;
        for s in &self.strata {
            let codim = top_dim.map_or("-".to_string(), |t| (t - s.dim.min(t)).to_string());
            writeln!(f, "{:<16} {:>6} {:>5} {:>6}", s.id, s.order, s.dim, codim)?;
        }
        writeln!(f, "hasse edges:")?;
        for (a, b) in self.hasse_edge_ids() {
            writeln!(f, "  {a} < {b}")?;
        }
        Ok(())
    }
}

pub fn stratum_id(order: IsotropyOrder) -> String {
    match order {
        IsotropyOrder::Finite(d) => format!("order:{d}"),
        IsotropyOrder::Infinite => DISTINGUISHED_ID.to_string(),
    }
}

/// Orbit-type stratification of the orbit space of `spec`.
///
/// Finite strata are listed by ascending order (the top stratum, order 1,
/// first) followed by the distinguished stratum.
pub fn orbit_strata(spec: &ActionSpec) -> Result<StratificationDiagram> {
    let faces = face_table(spec)?;
    let t = spec.trivial_dim();
    let mut groups: BTreeMap<u64, Vec<IndexSet>> = BTreeMap::new();
    for row in faces {
        groups
            .entry(row.stabilizer_order)
            .or_default()
            .push(row.indices);
    }

    let mut strata = Vec::with_capacity(groups.len() + 1);
    for (&d, group) in &groups {
        let max_face =
            IndexSet::new((1..=spec.m()).filter(|&j| spec.weights()[j - 1].is_multiple_of(d)))?;
        debug_assert_eq!(gcd_all(max_face.iter().map(|j| spec.weights()[j - 1])), d);
        strata.push(Stratum {
            id: stratum_id(IsotropyOrder::Finite(d)),
            order: IsotropyOrder::Finite(d),
            dim: t + 2 * max_face.len() - 1,
            faces: group.clone(),
        });
    }
    strata.push(Stratum {
        id: DISTINGUISHED_ID.to_string(),
        order: IsotropyOrder::Infinite,
        dim: t,
        faces: Vec::new(),
    });

    let mut pairs = Vec::new();
    for lower in &strata {
        for upper in &strata {
            if lower.id == upper.id {
                continue;
            }
            let below = match (lower.order, upper.order) {
                (IsotropyOrder::Infinite, _) => true,
                (IsotropyOrder::Finite(d), IsotropyOrder::Finite(e)) => d % e == 0,
                (IsotropyOrder::Finite(_), IsotropyOrder::Infinite) => false,
            };
            if below {
                pairs.push((lower.id.clone(), upper.id.clone()));
            }
        }
    }
    StratificationDiagram::new(spec.n(), strata, &pairs)
}

/// Depth of the stratum with the given id.
pub fn depth(diagram: &StratificationDiagram, id: &str) -> Result<usize> {
    diagram.depth_of(diagram.index_of(id)?)
}

pub fn hasse_edges(diagram: &StratificationDiagram) -> Vec<(String, String)> {
    diagram.hasse_edge_ids()
}
