//! Shared helpers for the integration suites: random standard instances and
//! the running fixtures.

use rand::Rng;

use troplp::instance::Instance;
use troplp::linalg::{check_generic, GenericityMode, Mat};
use troplp::oracle::{enumerate_basic_points, Enumeration, DEFAULT_ENUM_BOUND};
use troplp::semiring::{SignedTrop, Trop};

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load_fixture(name: &str) -> Instance {
    let bytes = std::fs::read(fixture_path(name)).expect("fixture exists");
    Instance::parse(&bytes).expect("fixture parses")
}

pub fn running_example() -> Instance {
    let mut inst = load_fixture("running.json");
    inst.assume_positive = true;
    inst
}

pub fn intro_example() -> Instance {
    load_fixture("intro2d.json")
}

fn random_signed(rng: &mut impl Rng, zero_prob: f64) -> SignedTrop {
    if rng.gen_bool(zero_prob) {
        return SignedTrop::Zero;
    }
    let v = rng.gen_range(-9..=9);
    if rng.gen_bool(0.5) {
        SignedTrop::pos(v)
    } else {
        SignedTrop::neg(v)
    }
}

/// Draws an instance whose feasible set is a box `l <= x <= u` (explicit
/// lower-bound rows plus one joint upper-bound row, all integer entries in
/// [-9, 9]) carved by `m - n - 1` fully random signed rows. The box keeps
/// every feasible coordinate finite, so the positivity attestation is sound.
/// Also returns the row indices of the `n` lower-bound rows, whose common
/// tight point is the corner `x = l`.
pub fn random_box_instance(
    rng: &mut impl Rng,
    n: usize,
    m: usize,
) -> (Instance, Vec<usize>) {
    assert!(m > n, "need at least n + 1 rows");
    // (row, lower-bound marker)
    let mut rows: Vec<(Vec<SignedTrop>, SignedTrop, bool)> = Vec::with_capacity(m);
    for j in 0..n {
        let mut a = vec![SignedTrop::Zero; n];
        a[j] = SignedTrop::one();
        let l = rng.gen_range(-9..=-1);
        rows.push((a, SignedTrop::neg(l), true));
    }
    let upper: Vec<SignedTrop> = (0..n).map(|_| SignedTrop::neg(-rng.gen_range(1..=9))).collect();
    rows.push((upper, SignedTrop::pos(0), false));
    while rows.len() < m {
        let a: Vec<SignedTrop> = (0..n).map(|_| random_signed(rng, 0.35)).collect();
        let b = random_signed(rng, 0.5);
        if a.iter().all(SignedTrop::is_zero) && b.is_zero() {
            continue;
        }
        rows.push((a, b, false));
    }
    // shuffle row order so structure does not pin indices
    for i in (1..rows.len()).rev() {
        let j = rng.gen_range(0..=i);
        rows.swap(i, j);
    }
    let lower_rows: Vec<usize> =
        rows.iter().enumerate().filter(|(_, r)| r.2).map(|(i, _)| i).collect();
    let (a_rows, b): (Vec<Vec<SignedTrop>>, Vec<SignedTrop>) =
        rows.into_iter().map(|(a, b, _)| (a, b)).unzip();
    let c: Vec<Trop> = (0..n).map(|_| Trop::fin(rng.gen_range(-9..=9))).collect();
    let mut inst = Instance::new(Mat::from_rows(a_rows), b, c, None).expect("rows are non-null");
    inst.assume_positive = true;
    (inst, lower_rows)
}

/// Resamples until the homogenized matrix is tropically generic, the dual
/// matrix `(Aᵀ cᵀ)` is sign generic, and a feasible basic point exists.
/// Returns the instance with its enumeration.
pub fn random_standard_instance(
    rng: &mut impl Rng,
    n: usize,
    m: usize,
) -> (Instance, Enumeration) {
    loop {
        let (inst, _) = random_box_instance(rng, n, m);
        let h = inst.homogenize();
        let primal = check_generic(&h.w, GenericityMode::Exhaustive).expect("within bound");
        if !primal.is_generic() {
            continue;
        }
        let dual = check_generic(&inst.dual_matrix(), GenericityMode::Exhaustive)
            .expect("within bound");
        if !dual.is_sign_generic() {
            continue;
        }
        let enumeration = enumerate_basic_points(&inst, DEFAULT_ENUM_BOUND).expect("small");
        if enumeration.points.is_empty() {
            continue;
        }
        return (inst, enumeration);
    }
}
