#![no_main]

use libfuzzer_sys::fuzz_target;

use gpforest::forest::ForestPattern;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Never panic; accepted patterns must be normalized and stable under a
    // render/parse round trip.
    if let Ok(p) = ForestPattern::parse(text) {
        let again = ForestPattern::parse(&p.to_string()).expect("rendered pattern reparses");
        assert_eq!(p, again);
        // Expansion is exponential in the dash count by contract; keep the
        // target fast by only expanding small patterns.
        let dashes = p.codes().iter().filter(|c| c.is_none()).count();
        if p.len() <= 10 && dashes <= 6 {
            for full in p.expand() {
                assert!(!full.has_dash());
                assert_eq!(full.len(), p.len());
            }
        }
    }
});
