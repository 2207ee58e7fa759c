#![no_main]

use libfuzzer_sys::fuzz_target;
use poset_wap::ObstructionCertificate;

fuzz_target!(|data: &[u8]| {
    if let Ok(cert) = serde_json::from_slice::<ObstructionCertificate>(data) {
        let _ = cert.check();
    }
});
