#![no_main]

use libfuzzer_sys::fuzz_target;
use modlie::ffield::{artin_schreier_field, Field};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for field in [Field::prime(5).unwrap(), artin_schreier_field(3).unwrap()] {
        if let Ok(a) = field.parse_element(text) {
            let printed = a.to_string();
            assert_eq!(field.parse_element(&printed).expect("printed element parses"), a);
        }
    }
});
