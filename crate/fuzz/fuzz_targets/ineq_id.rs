#![no_main]

use libfuzzer_sys::fuzz_target;
use turan_bessel::turan::InequalityId;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(id) = s.parse::<InequalityId>() {
        // the canonical name parses back to the same id
        assert_eq!(id.to_string().parse::<InequalityId>().ok(), Some(id));
    }
});
