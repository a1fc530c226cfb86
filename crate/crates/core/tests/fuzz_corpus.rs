//! Replays the checked-in fuzz seeds through the same checks as the fuzz targets.

use civar_core::algebra::GradedRing;
use civar_core::io::poly_parse::parse_poly;
use civar_core::io::{parse_input, print_job};
use std::path::PathBuf;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(PathBuf, String)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn input_seeds_round_trip() {
    let mut accepted = 0;
    for (path, text) in seeds("parse_input") {
        if let Ok(job) = parse_input(&text) {
            accepted += 1;
            assert_eq!(parse_input(&print_job(&job)).as_ref(), Ok(&job), "{}", path.display());
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn polynomial_seeds_round_trip() {
    let ring = GradedRing::new(32003, &["x", "y", "z"], &[1, 1, 2], Vec::new()).unwrap();
    let mut accepted = 0;
    for (path, text) in seeds("parse_polynomial") {
        if let Ok(f) = parse_poly(&ring, &text, 1, 1) {
            accepted += 1;
            assert_eq!(ring.parse(&ring.fmt_poly(&f)).as_ref(), Ok(&f), "{}", path.display());
        }
    }
    assert!(accepted >= 3);
}
