#![no_main]

use libfuzzer_sys::fuzz_target;
use modlie::ffield::FieldParams;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(params) = text.parse::<FieldParams>() {
        let printed = params.to_string();
        let back: FieldParams = printed.parse().expect("printed spec parses");
        assert_eq!(back, params);
        assert_eq!(back.to_string(), printed);
    }
});
