//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::collections::HashSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::Parser;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use circle_strata::cli::{run, CommandConfig};
use circle_strata::numeric::{homogeneity_check, invariance_check};
use circle_strata::recovery::{recover, roundtrip_campaign, SpecBounds};
use circle_strata::{
    circle_weight, evaluate_hilbert_map, face_table, generators, hilbert_basis, orbit_strata,
    recover_weights, roundtrip, ActionSpec, Decomposer, Error, ExponentVector, IsotropyOrder,
    OrbitPoint, Part,
};

type Check = Result<(), String>;
type Criterion = fn() -> Check;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(w: &[u64]) -> ActionSpec {
    ActionSpec::new(w, 0).unwrap()
}

fn iv(pairs: &[u32]) -> ExponentVector {
    ExponentVector::interleaved(pairs).unwrap()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn edges(spec: &ActionSpec) -> Vec<(String, String)> {
    let mut e = orbit_strata(spec).unwrap().hasse_edge_ids();
    e.sort();
    e
}

fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
    let mut out: Vec<_> = v
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    out.sort();
    out
}

/// All sorted weight multisets of length `1..=max_m` with entries in
/// `1..=max_w` and gcd 1.
fn effective_multisets(max_m: usize, max_w: u64) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, start: u64, max_m: usize, max_w: u64, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() && ActionSpec::new(prefix, 0).is_ok() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_m {
            return;
        }
        for w in start..=max_w {
            prefix.push(w);
            go(prefix, w, max_m, max_w, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_m, max_w, &mut out);
    out
}

/// Every invariant exponent vector of total degree `1..=max_degree`, by
/// direct enumeration of the simplex of exponent vectors.
fn invariant_vectors(spec: &ActionSpec, max_degree: u32) -> Vec<ExponentVector> {
    let m = spec.m();
    let mut out = Vec::new();
    let mut cur = vec![0u32; 2 * m];
    fn go(
        spec: &ActionSpec,
        cur: &mut Vec<u32>,
        i: usize,
        left: u32,
        out: &mut Vec<ExponentVector>,
    ) {
        let m = spec.m();
        if i == 2 * m {
            let e = ExponentVector::new(cur[..m].to_vec(), cur[m..].to_vec()).unwrap();
            if !e.is_zero() && circle_weight(spec, &e).unwrap() == 0 {
                out.push(e);
            }
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            go(spec, cur, i + 1, left - v, out);
        }
        cur[i] = 0;
    }
    go(spec, &mut cur, 0, max_degree, &mut out);
    out
}

fn ac1() -> Check {
    let s = spec(&[1]);
    let g = generators(&s).unwrap();
    ensure(g.len() == 1, || format!("{} generators", g.len()))?;
    ensure(
        g[0].part == Part::ModulusSquared && g[0].exponents == iv(&[1, 1]),
        || format!("{}", g[0]),
    )?;
    let d = orbit_strata(&s).unwrap();
    let orders: Vec<IsotropyOrder> = d.strata().iter().map(|x| x.order).collect();
    ensure(
        orders == [IsotropyOrder::Finite(1), IsotropyOrder::Infinite],
        || format!("orders {orders:?}"),
    )
}

fn ac2() -> Check {
    let s = spec(&[1, 2]);
    let basis = hilbert_basis(&s).unwrap();
    let got: HashSet<_> = basis.iter().cloned().collect();
    let want: HashSet<_> = [
        iv(&[1, 1, 0, 0]),
        iv(&[0, 0, 1, 1]),
        iv(&[2, 0, 0, 1]),
        iv(&[0, 2, 1, 0]),
    ]
    .into_iter()
    .collect();
    ensure(got == want && basis.len() == 4, || {
        format!("basis {basis:?}")
    })?;
    let g = generators(&s).unwrap();
    let names: Vec<String> = g.iter().map(|x| x.to_string()).collect();
    ensure(
        names == ["|z1|^2", "|z2|^2", "Re(z1^2 zbar2)", "Im(z1^2 zbar2)"],
        || format!("{names:?}"),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let p = OrbitPoint::random_in_polydisc(2, &mut rng);
        let y = evaluate_hilbert_map(&g, &p).unwrap().0;
        let y = [y[0], y[1], y[2], y[3]];
        if !circle_strata::check_m2_membership(1, 2, y, 1e-9).unwrap() {
            failures += 1;
        }
        let lhs = y[2] * y[2] + y[3] * y[3];
        let rhs = y[0] * y[0] * y[1];
        let scale = lhs.abs().max(rhs.abs());
        if scale > 0.0 {
            worst = worst.max((lhs - rhs).abs() / scale);
        }
    }
    ensure(failures == 0, || format!("{failures} membership failures"))?;
    ensure(worst <= 1e-9, || {
        format!("relation relative error {worst:e}")
    })
}

fn ac3() -> Check {
    let s = spec(&[1, 2, 3]);
    let table: Vec<(Vec<usize>, u64, usize)> = face_table(&s)
        .unwrap()
        .into_iter()
        .map(|r| (r.indices.iter().collect(), r.stabilizer_order, r.codim))
        .collect();
    let want: Vec<(Vec<usize>, u64, usize)> = vec![
        (vec![1, 2, 3], 1, 0),
        (vec![1, 2], 1, 2),
        (vec![1, 3], 1, 2),
        (vec![2, 3], 1, 2),
        (vec![1], 1, 4),
        (vec![2], 2, 4),
        (vec![3], 3, 4),
    ];
    ensure(table == want, || format!("face table {table:?}"))?;
    let d = orbit_strata(&s).unwrap();
    let finite: Vec<(u64, usize)> = d
        .strata()
        .iter()
        .filter_map(|x| x.finite_order().map(|o| (o, x.dim)))
        .collect();
    ensure(finite == [(1, 5), (2, 1), (3, 1)], || {
        format!("strata {finite:?}")
    })?;
    ensure(
        edges(&s) == pairs(&[("order:2", "order:1"), ("order:3", "order:1")]),
        || format!("edges {:?}", edges(&s)),
    )?;
    let w = recover_weights(&d).unwrap();
    ensure(w.as_slice() == [1, 2, 3], || format!("recovered {w:?}"))
}

fn ac4() -> Check {
    let s = spec(&[2, 2, 3, 4, 6]);
    let d = orbit_strata(&s).unwrap();
    let top = d.strata()[d.top().unwrap()].dim;
    let finite: Vec<(u64, usize)> = d
        .strata()
        .iter()
        .filter_map(|x| x.finite_order().map(|o| (o, top - x.dim)))
        .collect();
    ensure(finite == [(1, 0), (2, 2), (3, 6), (4, 8), (6, 8)], || {
        format!("orders/codims {finite:?}")
    })?;
    let want = pairs(&[
        ("order:2", "order:1"),
        ("order:3", "order:1"),
        ("order:4", "order:2"),
        ("order:6", "order:2"),
        ("order:6", "order:3"),
    ]);
    ensure(edges(&s) == want, || format!("edges {:?}", edges(&s)))?;
    // Recover from the golden wire-format file, which carries no face data.
    let text = std::fs::read_to_string(data("ex64.json")).map_err(|e| e.to_string())?;
    let wire: circle_strata::StratificationDiagram =
        serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let r = recover(&wire).map_err(|e| e.to_string())?;
    ensure(r.weights == [2, 2, 3, 4, 6], || {
        format!("weights {:?}", r.weights)
    })?;
    let own: Vec<usize> = ["order:1", "order:2", "order:3", "order:4", "order:6"]
        .iter()
        .map(|id| r.own[*id])
        .collect();
    ensure(own == [0, 2, 1, 1, 1], || format!("own {own:?}"))
}

fn ac5() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for w in effective_multisets(3, 12) {
        for t in 0..=4 {
            let s = ActionSpec::new(&w, t).unwrap();
            count += 1;
            let result = roundtrip(&s);
            ensure(matches!(result, Ok(true)), || {
                format!("exhaustive roundtrip failed for {s}: {result:?}")
            })?;
        }
    }
    let (report, failures) = roundtrip_campaign(
        20_251_016,
        10_000,
        SpecBounds {
            max_m: 6,
            max_weight: 30,
            max_trivial_dim: 4,
        },
    );
    ensure(report.trials == 10_000 && failures.is_empty(), || {
        format!("random failures: {failures:?}")
    })?;
    let elapsed = start.elapsed();
    println!(
        "      {count} exhaustive specs + {} random in {:.2?}",
        report.trials, elapsed
    );
    ensure(elapsed <= Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })
}

fn ac6() -> Check {
    let specs = effective_multisets(3, 8);
    let mut vectors_checked = 0usize;
    for w in &specs {
        let s = spec(w);
        let basis = hilbert_basis(&s).unwrap();
        for e in &basis {
            ensure(circle_weight(&s, e).unwrap() == 0, || {
                format!("{w:?}: {e} not invariant")
            })?;
            ensure(basis.contains(&e.conjugate()), || {
                format!("{w:?}: conjugate of {e} missing")
            })?;
        }
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                ensure(!a.le(b) && !b.le(a), || {
                    format!("{w:?}: {a} and {b} comparable")
                })?;
            }
        }
        for j in 1..=s.m() {
            let mj = ExponentVector::modulus_squared(s.m(), j);
            ensure(basis.contains(&mj), || format!("{w:?}: |z{j}|^2 missing"))?;
        }
        let max_degree = 2 * s.max_weight() as u32 + 4;
        let mut dec = Decomposer::new(&s, &basis);
        for e in invariant_vectors(&s, max_degree) {
            vectors_checked += 1;
            let ok = matches!(dec.decompose(&e), Ok(Some(_)));
            ensure(ok, || format!("{w:?}: {e} does not decompose"))?;
        }
    }
    println!(
        "      {} specs, {vectors_checked} invariant vectors decomposed",
        specs.len()
    );
    Ok(())
}

fn ac7() -> Check {
    for w in [&[1][..], &[1, 2], &[1, 2, 3], &[2, 3], &[2, 2, 3, 4, 6]] {
        let s = spec(w);
        let g = generators(&s).unwrap();
        let inv = invariance_check(&s, &g, 7, 1000, 1e-9).unwrap();
        ensure(inv.trials == 1000 && inv.passed(), || {
            format!("{w:?}: {inv:?}")
        })?;
        let hom = homogeneity_check(&s, &g, 7, 1000, 1e-9).unwrap();
        ensure(hom.trials == 1000 && hom.passed(), || {
            format!("{w:?}: {hom:?}")
        })?;
    }
    Ok(())
}

fn ac8() -> Check {
    let cases = [
        ("negative_multiplicity.json", "negative multiplicity"),
        ("not_effective.json", "not effective"),
    ];
    for (file, needle) in cases {
        let text = std::fs::read_to_string(data(file)).map_err(|e| e.to_string())?;
        let d: circle_strata::StratificationDiagram =
            serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let err = recover(&d).err();
        let variant_ok = match file {
            "negative_multiplicity.json" => matches!(err, Some(Error::NegativeMultiplicity { .. })),
            _ => matches!(err, Some(Error::NotEffective { gcd: 2 })),
        };
        ensure(variant_ok, || format!("{file}: got {err:?}"))?;
        let path = data(file);
        let cfg = CommandConfig::parse_from([
            "circle-strata",
            "recover",
            "--diagram",
            path.to_str().unwrap(),
        ]);
        let out = run(&cfg);
        ensure(out.status == 2 && out.stderr.contains(needle), || {
            format!("{file}: exit {} stderr {:?}", out.status, out.stderr)
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("AC1 weights [1]: one generator, two strata", ac1),
        ("AC2 weights [1,2]: four generators, image relation", ac2),
        ("AC3 weights [1,2,3]: face table, strata, recovery", ac3),
        (
            "AC4 weights [2,2,3,4,6]: strata, Hasse edges, recovery",
            ac4,
        ),
        ("AC5 round-trip exhaustive + 10000 random", ac5),
        ("AC6 Hilbert basis properties and generation", ac6),
        ("AC7 numeric invariance and homogeneity", ac7),
        ("AC8 malformed diagrams rejected with exit 2", ac8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("PASS  {name}  ({:.2?})", start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
