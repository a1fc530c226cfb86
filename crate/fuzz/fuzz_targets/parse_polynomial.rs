#![no_main]

use civar_core::algebra::GradedRing;
use civar_core::io::poly_parse::parse_poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let ring = GradedRing::new(32003, &["x", "y", "z"], &[1, 1, 2], Vec::new()).unwrap();
    if let Ok(f) = parse_poly(&ring, src, 1, 1) {
        assert_eq!(ring.parse(&ring.fmt_poly(&f)).as_ref(), Ok(&f));
    }
});
