//! Recovering the weights of a linear circle action from its abstract
//! stratification diagram.
//!
//! Only stratum dimensions, isotropy orders and the closure order are read;
//! faces are never consulted. The distinguished stratum fixes the trivial
//! dimension, the top stratum fixes `n`, and a stratum of codimension `c`
//! spans a face with `m - c/2` vertices. Walking strata from the deepest
//! upward, the vertices a stratum owns itself are its vertex count minus
//! those already owned by strata in its closure; each owned vertex carries
//! the stratum's order as a weight.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{gcd_all, ActionSpec};
use crate::error::{Error, Result};
use crate::numeric::SampleReport;
use crate::strata::{orbit_strata, StratificationDiagram};

/// Dimensions read off a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub n: usize,
    pub trivial_dim: usize,
    pub m: usize,
}

/// Recovered weights with multiplicity, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiset(Vec<u64>);

impl WeightMultiset {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Full result of a recovery, in the shape emitted as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recovery {
    pub weights: Vec<u64>,
    pub trivial_dim: usize,
    pub m: usize,
    pub n: usize,
    /// Vertices owned by each finite stratum, by id.
    #[serde(skip)]
    pub own: BTreeMap<String, usize>,
}

impl Recovery {
    pub fn to_spec(&self) -> Result<ActionSpec> {
        ActionSpec::new(&self.weights, self.trivial_dim)
    }
}

pub fn infer_dimensions(diagram: &StratificationDiagram) -> Result<Dimensions> {
    let distinguished = diagram.distinguished();
    let &[a] = distinguished.as_slice() else {
        if distinguished.is_empty() {
            return Err(Error::NoDistinguishedStratum);
        }
        return Err(Error::MalformedDiagram(format!(
            "{} strata of infinite order",
            distinguished.len()
        )));
    };
    let top = diagram.top()?;
    let n = diagram.strata()[top].dim + 1;
    let trivial_dim = diagram.strata()[a].dim;
    if trivial_dim >= n {
        return Err(Error::MalformedDiagram(format!(
            "distinguished stratum has dim {trivial_dim}, top stratum {}",
            n - 1
        )));
    }
    if !(n - trivial_dim).is_multiple_of(2) {
        return Err(Error::ParityError(n - trivial_dim));
    }
    Ok(Dimensions {
        n,
        trivial_dim,
        m: (n - trivial_dim) / 2,
    })
}

/// Runs the recovery and keeps per-stratum bookkeeping.
pub fn recover(diagram: &StratificationDiagram) -> Result<Recovery> {
    let dims = infer_dimensions(diagram)?;
    let strata = diagram.strata();
    let top_dim = strata[diagram.top()?].dim;

    let finite: Vec<usize> = diagram.finite().collect();
    let mut seen_orders = BTreeMap::new();
    for &i in &finite {
        let d = strata[i].finite_order().expect("finite stratum");
        if let Some(prev) = seen_orders.insert(d, i) {
            return Err(Error::MalformedDiagram(format!(
                "strata `{}` and `{}` share order {d}",
                strata[prev].id, strata[i].id
            )));
        }
    }
    for &(lo, hi) in diagram.closure() {
        if let (Some(d), Some(e)) = (strata[lo].finite_order(), strata[hi].finite_order()) {
            if d % e != 0 {
                return Err(Error::MalformedDiagram(format!(
                    "`{}` < `{}` but {e} does not divide {d}",
                    strata[lo].id, strata[hi].id
                )));
            }
        }
    }

    let mut by_depth = Vec::with_capacity(finite.len());
    for &i in &finite {
        by_depth.push((diagram.depth_of(i)?, i));
    }
    by_depth.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut own: BTreeMap<usize, i64> = BTreeMap::new();
    for &(_, i) in &by_depth {
        let codim = top_dim - strata[i].dim;
        if !codim.is_multiple_of(2) || codim / 2 > dims.m {
            return Err(Error::MalformedDiagram(format!(
                "stratum `{}` has codimension {codim}",
                strata[i].id
            )));
        }
        let vertices = (dims.m - codim / 2) as i64;
        // Every stratum strictly below has greater depth and is already done.
        let below: i64 = finite
            .iter()
            .filter(|&&j| diagram.precedes(j, i))
            .map(|j| own[j])
            .sum();
        let mine = vertices - below;
        if mine < 0 {
            return Err(Error::NegativeMultiplicity {
                stratum: strata[i].id.clone(),
                value: mine,
            });
        }
        own.insert(i, mine);
    }

    let mut weights = Vec::with_capacity(dims.m);
    for (&i, &count) in &own {
        let d = strata[i].finite_order().expect("finite stratum");
        weights.extend(std::iter::repeat_n(d, count as usize));
    }
    weights.sort_unstable();
    if weights.len() != dims.m {
        return Err(Error::CountMismatch {
            expected: dims.m,
            got: weights.len(),
        });
    }
    let g = gcd_all(weights.iter().copied());
    if g != 1 {
        return Err(Error::NotEffective { gcd: g });
    }
    Ok(Recovery {
        weights,
        trivial_dim: dims.trivial_dim,
        m: dims.m,
        n: dims.n,
        own: own
            .into_iter()
            .map(|(i, c)| (strata[i].id.clone(), c as usize))
            .collect(),
    })
}

pub fn recover_weights(diagram: &StratificationDiagram) -> Result<WeightMultiset> {
    recover(diagram).map(|r| WeightMultiset(r.weights))
}

/// Stratifies `spec`, forgets everything but the abstract diagram, and
/// checks that recovery returns the same action.
pub fn roundtrip(spec: &ActionSpec) -> Result<bool> {
    spec.require_nonempty()?;
    let diagram = orbit_strata(spec)?;
    // Pass through the wire format so no face data survives.
    let abstract_diagram: StratificationDiagram =
        serde_json::from_str(&serde_json::to_string(&diagram)?)?;
    let r = recover(&abstract_diagram)?;
    Ok(r.weights == spec.weights() && r.trivial_dim == spec.trivial_dim())
}

/// Bounds for randomly drawn actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecBounds {
    pub max_m: usize,
    pub max_weight: u64,
    pub max_trivial_dim: usize,
}

impl Default for SpecBounds {
    fn default() -> Self {
        SpecBounds {
            max_m: 6,
            max_weight: 30,
            max_trivial_dim: 4,
        }
    }
}

/// Draws an effective action with `1 <= m <= max_m` and weights in
/// `1..=max_weight`, rejecting non-coprime draws.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, bounds: SpecBounds) -> ActionSpec {
    loop {
        let m = rng.gen_range(1..=bounds.max_m.max(1));
        let weights: Vec<u64> = (0..m)
            .map(|_| rng.gen_range(1..=bounds.max_weight.max(1)))
            .collect();
        let t = rng.gen_range(0..=bounds.max_trivial_dim);
        if let Ok(spec) = ActionSpec::new(&weights, t) {
            return spec;
        }
    }
}

/// Seeded round-trip campaign. Trial `i` draws from its own ChaCha stream,
/// so results do not depend on evaluation order.
pub fn roundtrip_campaign(
    seed: u64,
    trials: usize,
    bounds: SpecBounds,
) -> (SampleReport, Vec<ActionSpec>) {
    let mut failures = Vec::new();
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let spec = random_spec(&mut rng, bounds);
        if !matches!(roundtrip(&spec), Ok(true)) {
            failures.push(spec);
        }
    }
    let report = SampleReport {
        check: "roundtrip".into(),
        seed,
        trials,
        failures: failures.len(),
        max_err: if failures.is_empty() { 0.0 } else { 1.0 },
    };
    (report, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::IsotropyOrder;
    use crate::strata::Stratum;

    fn diagram(w: &[u64], t: usize) -> StratificationDiagram {
        orbit_strata(&ActionSpec::new(w, t).unwrap()).unwrap()
    }

    fn hand_built(
        ambient: usize,
        strata: &[(&str, Option<u64>, usize)],
        pairs: &[(&str, &str)],
    ) -> StratificationDiagram {
        let strata = strata
            .iter()
            .map(|&(id, order, dim)| Stratum {
                id: id.into(),
                order: order.map_or(IsotropyOrder::Infinite, IsotropyOrder::Finite),
                dim,
                faces: vec![],
            })
            .collect();
        let pairs: Vec<(String, String)> = pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        StratificationDiagram::new(ambient, strata, &pairs).unwrap()
    }

    #[test]
    fn dimensions() {
        let d = infer_dimensions(&diagram(&[1, 2, 3], 0)).unwrap();
        assert_eq!((d.n, d.trivial_dim, d.m), (6, 0, 3));
        let d = infer_dimensions(&diagram(&[2, 2, 3, 4, 6], 0)).unwrap();
        assert_eq!((d.n, d.trivial_dim, d.m), (10, 0, 5));
        let d = infer_dimensions(&diagram(&[1], 2)).unwrap();
        assert_eq!((d.n, d.trivial_dim, d.m), (4, 2, 1));
    }

    #[test]
    fn dimension_errors() {
        let no_a = hand_built(4, &[("o", Some(1), 3)], &[]);
        assert!(matches!(
            infer_dimensions(&no_a),
            Err(Error::NoDistinguishedStratum)
        ));
        let odd = hand_built(4, &[("o", Some(1), 3), ("a", None, 1)], &[("a", "o")]);
        assert!(matches!(infer_dimensions(&odd), Err(Error::ParityError(3))));
    }

    #[test]
    fn recover_one_two_three() {
        let r = recover(&diagram(&[1, 2, 3], 0)).unwrap();
        assert_eq!(r.weights, vec![1, 2, 3]);
        assert_eq!(r.own["order:1"], 1);
        assert_eq!(r.own["order:2"], 1);
        assert_eq!(r.own["order:3"], 1);
    }

    #[test]
    fn recover_two_two_three_four_six() {
        let r = recover(&diagram(&[2, 2, 3, 4, 6], 0)).unwrap();
        assert_eq!(r.weights, vec![2, 2, 3, 4, 6]);
        let own: Vec<usize> = ["order:1", "order:2", "order:3", "order:4", "order:6"]
            .iter()
            .map(|id| r.own[*id])
            .collect();
        assert_eq!(own, vec![0, 2, 1, 1, 1]);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"weights":[2,2,3,4,6],"trivial_dim":0,"m":5,"n":10}"#
        );
    }

    #[test]
    fn recover_weight_one() {
        assert_eq!(recover_weights(&diagram(&[1], 0)).unwrap().as_slice(), &[1]);
    }

    #[test]
    fn roundtrip_examples() {
        assert!(roundtrip(&ActionSpec::new(&[1, 2, 3], 0).unwrap()).unwrap());
        assert!(roundtrip(&ActionSpec::new(&[2, 2, 3, 4, 6], 0).unwrap()).unwrap());
        assert!(roundtrip(&ActionSpec::new(&[7, 11, 13], 4).unwrap()).unwrap());
        let empty = crate::action::canonicalize(&[0], 0).unwrap();
        assert!(matches!(roundtrip(&empty), Err(Error::EmptyAction)));
    }

    #[test]
    fn negative_multiplicity_rejected() {
        // order:2 spans two vertices but three single-vertex strata lie below it.
        let d = hand_built(
            6,
            &[
                ("order:1", Some(1), 5),
                ("order:2", Some(2), 3),
                ("order:4", Some(4), 1),
                ("order:8", Some(8), 1),
                ("order:12", Some(12), 1),
                ("distinguished", None, 0),
            ],
            &[
                ("order:2", "order:1"),
                ("order:4", "order:2"),
                ("order:8", "order:2"),
                ("order:12", "order:2"),
                ("distinguished", "order:4"),
                ("distinguished", "order:8"),
                ("distinguished", "order:12"),
            ],
        );
        match recover(&d) {
            Err(Error::NegativeMultiplicity { stratum, value }) => {
                assert_eq!(stratum, "order:2");
                assert_eq!(value, -1);
            }
            other => panic!("expected NegativeMultiplicity, got {other:?}"),
        }
    }

    #[test]
    fn gcd_two_rejected() {
        let d = hand_built(
            2,
            &[("order:2", Some(2), 1), ("distinguished", None, 0)],
            &[("distinguished", "order:2")],
        );
        assert!(matches!(recover(&d), Err(Error::NotEffective { gcd: 2 })));
    }

    #[test]
    fn order_inconsistent_with_divisibility_rejected() {
        let d = hand_built(
            6,
            &[
                ("order:1", Some(1), 5),
                ("order:2", Some(2), 3),
                ("order:3", Some(3), 1),
                ("distinguished", None, 0),
            ],
            &[
                ("order:3", "order:2"),
                ("order:2", "order:1"),
                ("distinguished", "order:3"),
            ],
        );
        assert!(matches!(recover(&d), Err(Error::MalformedDiagram(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn effective() -> impl Strategy<Value = (Vec<u64>, usize)> {
            (prop::collection::vec(1u64..=30, 1..=6), 0usize..=4)
                .prop_filter("coprime", |(w, _)| gcd_all(w.iter().copied()) == 1)
        }

        proptest! {
            #[test]
            fn roundtrip_holds((w, t) in effective()) {
                prop_assert!(roundtrip(&ActionSpec::new(&w, t).unwrap()).unwrap());
            }

            #[test]
            fn own_counts_weights_and_conserve_m((w, t) in effective()) {
                let s = ActionSpec::new(&w, t).unwrap();
                let r = recover(&orbit_strata(&s).unwrap()).unwrap();
                prop_assert_eq!(r.own.values().sum::<usize>(), s.m());
                for (id, &c) in &r.own {
                    let d: u64 = id.trim_start_matches("order:").parse().unwrap();
                    prop_assert_eq!(c, s.weights().iter().filter(|&&x| x == d).count());
                }
            }

            #[test]
            fn permutation_invariant((w, t) in effective(), rot in 0usize..6) {
                let mut shuffled = w.clone();
                let k = rot % shuffled.len();
                shuffled.rotate_left(k);
                shuffled.reverse();
                let a = recover_weights(&orbit_strata(&ActionSpec::new(&w, t).unwrap()).unwrap()).unwrap();
                let b = recover_weights(&orbit_strata(&ActionSpec::new(&shuffled, t).unwrap()).unwrap()).unwrap();
                prop_assert_eq!(a, b);
            }

            #[test]
            fn independent_of_stratum_listing_order((w, t) in effective(), seed in any::<u64>()) {
                let d = orbit_strata(&ActionSpec::new(&w, t).unwrap()).unwrap();
                let mut strata: Vec<Stratum> = d.strata().to_vec();
                let len = strata.len();
                strata.rotate_left((seed as usize) % len);
                if seed & 1 == 1 { strata.reverse(); }
                let pairs: Vec<(String, String)> = d.closure().iter()
                    .map(|&(a, b)| (d.strata()[a].id.clone(), d.strata()[b].id.clone()))
                    .collect();
                let shuffled = StratificationDiagram::new(d.ambient_dim(), strata, &pairs).unwrap();
                prop_assert_eq!(recover(&shuffled).unwrap().own, recover(&d).unwrap().own);
            }
        }
    }
}
