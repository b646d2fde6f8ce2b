#![no_main]

use libfuzzer_sys::fuzz_target;
use turan_bessel::grid::Range;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = s.parse::<Range>() {
        assert!(r.lo <= r.hi);
        if r.count <= 10_000 {
            let nodes = r.nodes();
            assert_eq!(nodes.len(), r.count);
            assert!(nodes.iter().all(|v| v.is_finite()));
            assert_eq!(nodes[0], r.lo);
            assert_eq!(*nodes.last().unwrap(), r.hi);
        }
    }
});
