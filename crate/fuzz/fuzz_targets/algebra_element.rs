#![no_main]

use libfuzzer_sys::fuzz_target;
use modlie::dpalgebra::{AlgebraElement, Heights};
use modlie::ffield::artin_schreier_field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let field = artin_schreier_field(3).unwrap();
    let heights = Heights::new(3, 2, 1).unwrap();
    if let Ok(v) = AlgebraElement::parse(text, &field, heights) {
        let printed = v.to_string();
        let back = AlgebraElement::parse(&printed, &field, heights).expect("printed element parses");
        assert_eq!(back, v);
        assert_eq!(back.to_string(), printed);
    }
});
