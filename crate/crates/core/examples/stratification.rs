// Face table, orbit-type strata, closure order and depth.
//
//     cargo run --example stratification

use circle_strata::{depth, face_table, orbit_strata, ActionSpec};

pub fn run_example() -> circle_strata::Result<()> {
    let spec = ActionSpec::new(&[1, 2, 3], 0)?;
    println!("faces of {spec}:");
    for row in face_table(&spec)? {
        println!(
            "  {:<6} order {} codim {}",
            row.indices.to_string(),
            row.stabilizer_order,
            row.codim
        );
    }

    let spec = ActionSpec::new(&[2, 2, 3, 4, 6], 0)?;
    let diagram = orbit_strata(&spec)?;
    println!("\n{diagram}");
    for s in diagram.strata().iter().filter(|s| !s.is_distinguished()) {
        let faces: Vec<String> = s.faces.iter().map(ToString::to_string).collect();
        println!(
            "{} (depth {}): {}",
            s.id,
            depth(&diagram, &s.id)?,
            faces.join(" ")
        );
    }
    println!("\n{}", diagram.to_dot());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("stratification example");
}
