#![no_main]

use libfuzzer_sys::fuzz_target;
use turan_bessel::neumann::{parse_theta_params, NeumannInstance};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_theta_params(s);
    if let Ok(i) = s.parse::<NeumannInstance>() {
        let _ = i.theta.theta(1.5);
        assert!(i.to_string().parse::<NeumannInstance>().is_ok());
    }
});
