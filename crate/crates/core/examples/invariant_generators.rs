// Hilbert basis of the invariant exponent monoid and the real generators
// built from it.
//
//     cargo run --example invariant_generators

use circle_strata::{decompose, hilbert_basis, realize_generators, ActionSpec, ExponentVector};

pub fn run_example() -> circle_strata::Result<()> {
    for weights in [&[1][..], &[1, 2], &[2, 3], &[1, 2, 3]] {
        let spec = ActionSpec::new(weights, 0)?;
        let basis = hilbert_basis(&spec)?;
        let gens = realize_generators(&basis);
        println!(
            "{spec}: {} basis vectors, {} real generators",
            basis.len(),
            gens.len()
        );
        for g in &gens {
            println!("  {g}");
        }
    }

    // Any invariant monomial factors through the basis.
    let spec = ActionSpec::new(&[1, 2], 0)?;
    let basis = hilbert_basis(&spec)?;
    let e = ExponentVector::interleaved(&[5, 1, 1, 3])?;
    let parts = decompose(&spec, &e, &basis)?.expect("basis generates every invariant");
    let terms: Vec<String> = parts.iter().map(|(b, c)| format!("{c} x ({b})")).collect();
    println!("{e} = {}", terms.join(" + "));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("invariant generators example");
}
