// Evaluating the Hilbert map numerically: invariance along orbits, the
// image relation for two weights, and the coordinate axes.
//
//     cargo run --example hilbert_map

use std::f64::consts::PI;

use circle_strata::numeric::verify_suite;
use circle_strata::{
    check_axes_image, check_m2_membership, evaluate_hilbert_map, generators, rotate, same_orbit,
    ActionSpec, OrbitPoint,
};

pub fn run_example() -> circle_strata::Result<()> {
    let spec = ActionSpec::new(&[1, 2], 0)?;
    let gens = generators(&spec)?;
    let p = OrbitPoint::from_re_im(&[(0.6, 0.2), (-0.3, 0.5)]);
    let q = rotate(&spec, PI / 3.0, &p)?;
    let yp = evaluate_hilbert_map(&gens, &p)?;
    let yq = evaluate_hilbert_map(&gens, &q)?;
    println!("sigma(p)        = {:?}", yp.0);
    println!("sigma(rotated)  = {:?}", yq.0);
    println!("same orbit: {}", same_orbit(&spec, &p, &q, 1e-9)?);

    let y = [yp.0[0], yp.0[1], yp.0[2], yp.0[3]];
    println!(
        "y3^2 + y4^2 = y1^2 y2 holds: {}",
        check_m2_membership(1, 2, y, 1e-9)?
    );
    for j in 1..=spec.m() {
        println!(
            "axis {j} maps to the |z{j}|^2 axis: {}",
            check_axes_image(&spec, &gens, j, 1.5)?
        );
    }

    for report in verify_suite(&ActionSpec::new(&[2, 3, 5], 0)?, 1, 200, 1e-9)? {
        println!("{}", serde_json::to_string(&report)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hilbert map example");
}
