//! Seeded random tests: the support of a cone over `α: C → ΣⁿC`, `n ≠ 0`, equals that of `C`.

mod common;

use civar_core::complex::{complex_support, mapping_cone};
use common::ksp::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[test]
fn cone_support_over_dual_numbers() {
    let start = Instant::now();
    let r = ring(&["x"], &["x^2"]);
    let seen = run_suite(&r, 0x5eed_0001, 25);
    assert!(seen.iter().any(|(d, _)| *d == 0) && seen.iter().any(|(d, _)| *d == -1));
    assert!(seen.iter().filter(|(_, nz)| *nz).count() >= 5);
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn cone_support_over_embedded_point() {
    let start = Instant::now();
    let r = ring(&["x", "y"], &["x^2", "x*y"]);
    let seen = run_suite(&r, 0x5eed_0002, 25);
    assert!(seen.iter().any(|(d, _)| *d == 1) && seen.iter().any(|(d, _)| *d == 0));
    assert!(seen.iter().filter(|(_, nz)| *nz).count() >= 5);
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn degree_zero_cones_stay_inside_the_union() {
    let r = ring(&["x", "y"], &["x^2", "x*y"]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let c = random_complex(&r, &mut rng);
        let alpha = random_chain_map(&r, &c, 0, 0, &mut rng);
        let k = mapping_cone(&alpha).unwrap();
        assert!(complex_support(&k).is_subset(&complex_support(&c), &r));
    }
}
