//! Fuzzes the numeric-literal parsers: arbitrary input must parse or be
//! rejected with an error, never panic, and accepted values must be finite.

#![no_main]
use libfuzzer_sys::fuzz_target;

use pz_core::scalar::{parse_exact_rational, Scalar};

fuzz_target!(|data: &[u8]| {
    if data.len() > 256 {
        return;
    }
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(scalar) = text.parse::<Scalar>() {
            assert!(scalar.is_finite());
            // Display of an exact value re-parses to the same value.
            if scalar.is_exact() {
                let round: Scalar = scalar.to_string().parse().expect("display re-parses");
                assert_eq!(round, scalar);
            }
        }
        let _ = parse_exact_rational(text);
    }
});
