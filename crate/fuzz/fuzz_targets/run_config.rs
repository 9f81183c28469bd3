#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = modlie_cli::check_config_file(text);
    // --config would read arbitrary paths
    let args: Vec<&str> = std::iter::once("modlie")
        .chain(text.split_whitespace().filter(|a| !a.starts_with("--config")))
        .collect();
    let _ = modlie_cli::parse_config(args);
});
