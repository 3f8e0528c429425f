// Recovering weights from nothing but an abstract diagram: stratum
// dimensions, isotropy orders and the closure order.
//
//     cargo run --example recover_weights

use circle_strata::{infer_dimensions, orbit_strata, recover, ActionSpec, StratificationDiagram};

pub fn run_example() -> circle_strata::Result<()> {
    let wire = serde_json::to_string(&orbit_strata(&ActionSpec::new(&[2, 2, 3, 4, 6], 0)?)?)?;
    println!("diagram: {wire}");

    let diagram: StratificationDiagram = serde_json::from_str(&wire)?;
    let dims = infer_dimensions(&diagram)?;
    println!(
        "n = {}, trivial_dim = {}, m = {}",
        dims.n, dims.trivial_dim, dims.m
    );
    let r = recover(&diagram)?;
    for (id, own) in &r.own {
        println!("  {id} owns {own} vertex(es)");
    }
    println!("{}", serde_json::to_string(&r)?);

    // Unrealizable diagrams are rejected.
    let bad = r#"{"ambient_dim":2,"strata":[{"id":"order:2","order":2,"dim":1},
                 {"id":"distinguished","order":"inf","dim":0}],
                 "closure":[["distinguished","order:2"]]}"#;
    let bad: StratificationDiagram = serde_json::from_str(bad)?;
    println!("gcd-2 diagram: {}", recover(&bad).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("recover weights example");
}
