#![no_main]

use libfuzzer_sys::fuzz_target;
use turan_bessel::turan::IdentityId;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(id) = s.parse::<IdentityId>() {
        assert_eq!(id.to_string().parse::<IdentityId>().ok(), Some(id));
    }
});
