//! Floating-point evaluation of the Hilbert map and sampled checks of its
//! properties. Everything here corroborates the exact computations in
//! [`crate::invariants`]; nothing downstream depends on it for truth.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::ActionSpec;
use crate::error::{Error, Result};
use crate::invariants::{InvariantGenerator, Part};

/// Grid resolution used by [`same_orbit`] before local refinement.
pub const ORBIT_GRID: usize = 4096;
/// Refinement steps per grid minimum in [`same_orbit`].
pub const ORBIT_REFINE_STEPS: usize = 40;

/// A point `(z_1, ..., z_m)` of `C^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPoint(pub Vec<Complex64>);

impl OrbitPoint {
    pub fn new(coords: Vec<Complex64>) -> Self {
        OrbitPoint(coords)
    }

    pub fn from_re_im(pairs: &[(f64, f64)]) -> Self {
        OrbitPoint(
            pairs
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn zero(m: usize) -> Self {
        OrbitPoint(vec![Complex64::new(0.0, 0.0); m])
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, t: f64) -> Self {
        OrbitPoint(self.0.iter().map(|z| z * t).collect())
    }

    /// Uniform sample from the unit polydisc.
    pub fn random_in_polydisc<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        OrbitPoint(
            (0..m)
                .map(|_| {
                    let r = rng.gen::<f64>().sqrt();
                    Complex64::from_polar(r, rng.gen_range(0.0..TAU))
                })
                .collect(),
        )
    }

    fn max_dist(&self, other: &OrbitPoint) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Values of the Hilbert map, one per generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertImage(pub Vec<f64>);

impl HilbertImage {
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn max_diff(&self, other: &HilbertImage) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |a, (x, y)| a.max((x - y).abs()))
    }
}

fn check_len(spec: &ActionSpec, p: &OrbitPoint) -> Result<()> {
    if p.m() != spec.m() {
        return Err(Error::LengthMismatch {
            expected: spec.m(),
            got: p.m(),
        });
    }
    Ok(())
}

/// Acts by `e^{i theta}`: coordinate `j` turns by `a_j theta`.
pub fn rotate(spec: &ActionSpec, theta: f64, p: &OrbitPoint) -> Result<OrbitPoint> {
    check_len(spec, p)?;
    Ok(OrbitPoint(
        spec.weights()
            .iter()
            .zip(&p.0)
            .map(|(&a, z)| z * Complex64::from_polar(1.0, a as f64 * theta))
            .collect(),
    ))
}

fn monomial(g: &InvariantGenerator, p: &OrbitPoint) -> Complex64 {
    let e = &g.exponents;
    p.0.iter()
        .zip(e.k.iter().zip(&e.kbar))
        .fold(Complex64::new(1.0, 0.0), |acc, (z, (&k, &kb))| {
            acc * z.powu(k) * z.conj().powu(kb)
        })
}

/// Evaluates `sigma = (sigma_1, ..., sigma_n)` at `p`.
pub fn evaluate_hilbert_map(
    generators: &[InvariantGenerator],
    p: &OrbitPoint,
) -> Result<HilbertImage> {
    let mut values = Vec::with_capacity(generators.len());
    for g in generators {
        if g.exponents.m() != p.m() {
            return Err(Error::LengthMismatch {
                expected: g.exponents.m(),
                got: p.m(),
            });
        }
        let v = match g.part {
            Part::ModulusSquared => {
                let j = g.exponents.k.iter().position(|&x| x > 0).unwrap_or(0);
                p.0[j].norm_sqr()
            }
            Part::RealPart => monomial(g, p).re,
            Part::ImaginaryPart => monomial(g, p).im,
        };
        values.push(v);
    }
    Ok(HilbertImage(values))
}

/// Numerically decides whether `w` lies on the circle orbit of `z`.
///
/// Minimizes the max-norm distance between `rotate(theta, z)` and `w` over
/// a grid of [`ORBIT_GRID`] angles, then refines the best few grid minima
/// by ternary search. A verification aid, not a proof: the grid resolves
/// orbits for weights up to about 64.
pub fn same_orbit(spec: &ActionSpec, z: &OrbitPoint, w: &OrbitPoint, tol: f64) -> Result<bool> {
    check_len(spec, z)?;
    check_len(spec, w)?;
    let dist = |theta: f64| -> f64 {
        spec.weights()
            .iter()
            .zip(z.0.iter().zip(&w.0))
            .map(|(&a, (zj, wj))| (zj * Complex64::from_polar(1.0, a as f64 * theta) - wj).norm())
            .fold(0.0, f64::max)
    };
    let step = TAU / ORBIT_GRID as f64;
    let samples: Vec<f64> = (0..ORBIT_GRID).map(|i| dist(i as f64 * step)).collect();

    let mut minima: Vec<usize> = (0..ORBIT_GRID)
        .filter(|&i| {
            let prev = samples[(i + ORBIT_GRID - 1) % ORBIT_GRID];
            let next = samples[(i + 1) % ORBIT_GRID];
            samples[i] <= prev && samples[i] <= next
        })
        .collect();
    minima.sort_by(|&a, &b| samples[a].total_cmp(&samples[b]));
    minima.truncate(8);

    let mut best = samples.iter().copied().fold(f64::INFINITY, f64::min);
    for i in minima {
        let (mut lo, mut hi) = ((i as f64 - 1.0) * step, (i as f64 + 1.0) * step);
        for _ in 0..ORBIT_REFINE_STEPS {
            let a = lo + (hi - lo) / 3.0;
            let b = hi - (hi - lo) / 3.0;
            if dist(a) <= dist(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        best = best.min(dist(0.5 * (lo + hi)));
    }
    Ok(best <= tol)
}

/// Membership in the semi-algebraic image of the Hilbert map for `m = 2`:
/// `y1 >= 0`, `y2 >= 0`, `y3^2 + y4^2 = y1^{a2} y2^{a1}`.
pub fn check_m2_membership(alpha1: u64, alpha2: u64, y: [f64; 4], tol: f64) -> Result<bool> {
    if alpha1 == 0 || alpha2 == 0 || alpha1.gcd(&alpha2) != 1 {
        return Err(Error::NotCoprime(alpha1, alpha2));
    }
    let [y1, y2, y3, y4] = y;
    if y1 < -tol || y2 < -tol {
        return Ok(false);
    }
    let rhs = y1.powi(alpha2 as i32) * y2.powi(alpha1 as i32);
    let scale = 1.0 + y1.abs().powi(alpha2 as i32) * y2.abs().powi(alpha1 as i32);
    Ok((y3 * y3 + y4 * y4 - rhs).abs() <= tol * scale)
}

/// Image of the point with `z_j = r` and all other coordinates zero.
pub fn axis_image(
    spec: &ActionSpec,
    generators: &[InvariantGenerator],
    j: usize,
    r: f64,
) -> Result<HilbertImage> {
    if j == 0 || j > spec.m() {
        return Err(Error::IndexOutOfRange {
            index: j,
            m: spec.m(),
        });
    }
    if r.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidInput(format!(
            "axis radius must be positive, got {r}"
        )));
    }
    let mut p = OrbitPoint::zero(spec.m());
    p.0[j - 1] = Complex64::new(r, 0.0);
    evaluate_hilbert_map(generators, &p)
}

/// True when the image of `z_j = r` lies on the positive `|z_j|^2` axis at `r^2`.
pub fn check_axes_image(
    spec: &ActionSpec,
    generators: &[InvariantGenerator],
    j: usize,
    r: f64,
) -> Result<bool> {
    let image = axis_image(spec, generators, j, r)?;
    let slot = generators
        .iter()
        .position(|g| g.part == Part::ModulusSquared && g.exponents.k.get(j - 1) == Some(&1));
    let Some(slot) = slot else {
        return Ok(false);
    };
    let others_vanish = image
        .0
        .iter()
        .enumerate()
        .all(|(i, v)| i == slot || v.abs() <= 1e-12);
    let r2 = r * r;
    Ok(others_vanish && (image.0[slot] - r2).abs() <= 1e-12 * r2.max(1.0))
}

/// Outcome of one sampled check, serialized as a JSON line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub check: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    pub max_err: f64,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn from_errors(check: &str, seed: u64, errs: impl Iterator<Item = f64>, tol: f64) -> Self {
        let mut trials = 0;
        let mut failures = 0;
        let mut max_err: f64 = 0.0;
        for e in errs {
            trials += 1;
            if e.is_nan() || e > tol {
                failures += 1;
            }
            max_err = max_err.max(e);
        }
        SampleReport {
            check: check.to_string(),
            seed,
            trials,
            failures,
            max_err,
        }
    }
}

/// `max |sigma(e^{i theta} p) - sigma(p)| / (1 + max |sigma(p)|)` over random `theta`, `p`.
pub fn invariance_check(
    spec: &ActionSpec,
    generators: &[InvariantGenerator],
    seed: u64,
    trials: usize,
    tol: f64,
) -> Result<SampleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut errs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let p = OrbitPoint::random_in_polydisc(spec.m(), &mut rng);
        let theta = rng.gen_range(0.0..TAU);
        let base = evaluate_hilbert_map(generators, &p)?;
        let moved = evaluate_hilbert_map(generators, &rotate(spec, theta, &p)?)?;
        errs.push(base.max_diff(&moved) / (1.0 + base.max_abs()));
    }
    Ok(SampleReport::from_errors(
        "invariance",
        seed,
        errs.into_iter(),
        tol,
    ))
}

/// Relative error of `sigma_i(t p) = t^{d_i} sigma_i(p)` for random `t` in `(0, 4)`.
pub fn homogeneity_check(
    spec: &ActionSpec,
    generators: &[InvariantGenerator],
    seed: u64,
    trials: usize,
    tol: f64,
) -> Result<SampleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut errs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let p = OrbitPoint::random_in_polydisc(spec.m(), &mut rng);
        let t = rng.gen_range(f64::EPSILON..4.0);
        let base = evaluate_hilbert_map(generators, &p)?;
        let scaled = evaluate_hilbert_map(generators, &p.scale(t))?;
        let err = generators
            .iter()
            .zip(base.0.iter().zip(&scaled.0))
            .map(|(g, (b, s))| {
                let want = t.powi(g.exponents.degree() as i32) * b;
                (s - want).abs() / want.abs().max(1.0)
            })
            .fold(0.0, f64::max);
        errs.push(err);
    }
    Ok(SampleReport::from_errors(
        "homogeneity",
        seed,
        errs.into_iter(),
        tol,
    ))
}

/// Sampled orbit separation: points with matching Hilbert images must share an
/// orbit, and points on distinct orbits must have distinct images.
///
/// Each trial draws `z`, a rotated copy `w` (equal images by invariance) and
/// an independent `u`. Error is 0 when both implications hold, else 1.
pub fn separation_check(
    spec: &ActionSpec,
    generators: &[InvariantGenerator],
    seed: u64,
    trials: usize,
) -> Result<SampleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut errs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let z = OrbitPoint::random_in_polydisc(spec.m(), &mut rng);
        let w = rotate(spec, rng.gen_range(0.0..TAU), &z)?;
        let u = OrbitPoint::random_in_polydisc(spec.m(), &mut rng);
        let sz = evaluate_hilbert_map(generators, &z)?;
        let mut ok = true;
        for other in [&w, &u] {
            let close = sz.max_diff(&evaluate_hilbert_map(generators, other)?) <= 1e-12;
            if close && !same_orbit(spec, &z, other, 1e-6)? {
                ok = false;
            }
            if !close && z.max_dist(other) > 0.0 && same_orbit(spec, &z, other, 1e-12)? {
                ok = false;
            }
        }
        errs.push(if ok { 0.0 } else { 1.0 });
    }
    Ok(SampleReport::from_errors(
        "separation",
        seed,
        errs.into_iter(),
        0.0,
    ))
}

/// Residual of the `m = 2` relation at sampled images. Requires a spec with two
/// weights and generators in [`crate::invariants::realize_generators`] order.
pub fn m2_relation_check(
    spec: &ActionSpec,
    generators: &[InvariantGenerator],
    seed: u64,
    trials: usize,
    tol: f64,
) -> Result<SampleReport> {
    let &[a1, a2] = spec.weights() else {
        return Err(Error::LengthMismatch {
            expected: 2,
            got: spec.m(),
        });
    };
    if generators.len() != 4 {
        return Err(Error::LengthMismatch {
            expected: 4,
            got: generators.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut errs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let p = OrbitPoint::random_in_polydisc(2, &mut rng);
        let y = evaluate_hilbert_map(generators, &p)?.0;
        let y = [y[0], y[1], y[2], y[3]];
        let rhs = y[0].powi(a2 as i32) * y[1].powi(a1 as i32);
        let residual = (y[2] * y[2] + y[3] * y[3] - rhs).abs() / (1.0 + rhs.abs());
        let member = check_m2_membership(a1, a2, y, tol)?;
        errs.push(if member { residual } else { f64::INFINITY });
    }
    Ok(SampleReport::from_errors(
        "m2_membership",
        seed,
        errs.into_iter(),
        tol,
    ))
}

/// Runs every sampled check that applies to `spec`.
pub fn verify_suite(
    spec: &ActionSpec,
    seed: u64,
    trials: usize,
    tol: f64,
) -> Result<Vec<SampleReport>> {
    let generators = crate::invariants::generators(spec)?;
    let mut reports = vec![
        invariance_check(spec, &generators, seed, trials, tol)?,
        homogeneity_check(spec, &generators, seed, trials, tol)?,
        separation_check(spec, &generators, seed, trials.min(200))?,
    ];
    if spec.m() == 2 {
        reports.push(m2_relation_check(spec, &generators, seed, trials, tol)?);
    }
    let axes_failures = (1..=spec.m())
        .map(|j| check_axes_image(spec, &generators, j, 1.0 + j as f64 / 3.0))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .filter(|ok| !**ok)
        .count();
    reports.push(SampleReport {
        check: "axes_image".into(),
        seed,
        trials: spec.m(),
        failures: axes_failures,
        max_err: 0.0,
    });
    Ok(reports)
}
