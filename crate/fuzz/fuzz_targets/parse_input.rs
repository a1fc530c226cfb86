#![no_main]

use civar_core::io::{parse_input, print_job};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(job) = parse_input(src) {
        let printed = print_job(&job);
        assert_eq!(parse_input(&printed).as_ref(), Ok(&job));
    }
});
