#![no_main]

use libfuzzer_sys::fuzz_target;
use modlie::dpalgebra::Heights;
use modlie::ffield::artin_schreier_field;
use modlie::grading::GradedBasis;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let field = artin_schreier_field(3).unwrap();
    let heights = Heights::new(3, 2, 1).unwrap();
    // N = p^{n1} (q - 1) for q = p^n2
    if let Ok(basis) = GradedBasis::parse(text, &field, heights, 18) {
        let printed = basis.to_text();
        let back = GradedBasis::parse(&printed, &field, heights, 18).expect("printed basis parses");
        assert_eq!(back.to_text(), printed);
    }
});
