// Seeded campaign checking that recovery inverts stratification.
//
//     cargo run --release --example roundtrip_campaign

use circle_strata::recovery::{roundtrip_campaign, SpecBounds};
use circle_strata::{roundtrip, ActionSpec};

pub fn run_example() -> circle_strata::Result<()> {
    let spec = ActionSpec::new(&[7, 11, 13], 4)?;
    println!(
        "{spec}: {}",
        if roundtrip(&spec)? { "pass" } else { "FAIL" }
    );

    let (report, failures) = roundtrip_campaign(42, 2000, SpecBounds::default());
    println!("{}", serde_json::to_string(&report)?);
    assert!(failures.is_empty(), "roundtrip failures: {failures:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("roundtrip campaign example");
}
