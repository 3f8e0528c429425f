//! Invariant polynomials, orbit-type strata and weight recovery for
//! effective linear circle actions on `R^t x C^m`.
//!
//! ```
//! use circle_strata::{canonicalize, orbit_strata, recover_weights};
//!
//! let spec = canonicalize(&[2, 2, 3, 4, 6], 0).unwrap();
//! let diagram = orbit_strata(&spec).unwrap();
//! assert_eq!(recover_weights(&diagram).unwrap().as_slice(), &[2, 2, 3, 4, 6]);
//! ```

pub mod action;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod numeric;
pub mod recovery;
pub mod strata;

pub use action::{canonicalize, gcd_label, isotropy_order, ActionSpec, IndexSet, IsotropyOrder};
pub use error::{Error, Result};
pub use invariants::{
    circle_weight, decompose, generators, hilbert_basis, is_invariant_exponent, realize_generators,
    Decomposer, ExponentVector, InvariantGenerator, Part,
};
pub use numeric::{
    check_axes_image, check_m2_membership, evaluate_hilbert_map, rotate, same_orbit, HilbertImage,
    OrbitPoint, SampleReport,
};
pub use recovery::{
    infer_dimensions, recover, recover_weights, roundtrip, Dimensions, Recovery, WeightMultiset,
};
pub use strata::{
    depth, face_table, hasse_edges, orbit_strata, FaceClass, StratificationDiagram, Stratum,
};
