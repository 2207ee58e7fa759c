#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = poset_wap::io::parse_pa(s) {
            let back = poset_wap::io::to_json(&v);
            assert!(poset_wap::io::parse_pa(&back).is_ok());
        }
    }
});
