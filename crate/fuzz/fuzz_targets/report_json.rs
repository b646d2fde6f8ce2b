#![no_main]

use libfuzzer_sys::fuzz_target;
use turan_bessel::report::{from_json, to_json, CsvReport};
use turan_bessel::turan::InequalityReport;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = from_json::<InequalityReport>(s) {
        let _ = r.to_csv();
        let _ = to_json(&r);
    }
});
