#![no_main]

use libfuzzer_sys::fuzz_target;

use gpforest::graph::Graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // The parser must never panic; on success, render/parse must round-trip
    // to an equal graph.
    if let Ok(g) = Graph::parse(text) {
        let again = Graph::parse(&g.render()).expect("rendered graph reparses");
        assert_eq!(g, again);
    }
});
