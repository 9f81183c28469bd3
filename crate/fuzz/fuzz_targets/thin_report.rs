#![no_main]

use libfuzzer_sys::fuzz_target;
use modlie::thinlie::ThinReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = ThinReport::from_json(text) {
        let json = report.to_json();
        assert_eq!(ThinReport::from_json(&json).expect("printed report parses"), report);
        let _ = report.timeline();
    }
});
