//! Seeded in-tree shake of the text parsers: random bytes, random token
//! soup, and corpus-style mutations. Complements the libfuzzer targets,
//! which need a nightly toolchain to run.

use gpforest::forest::ForestPattern;
use gpforest::graph::Graph;
use gpforest::rng::SplitMix64;

fn random_bytes(rng: &mut SplitMix64, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.next_u64() as u8).collect()
}

fn random_token_soup(rng: &mut SplitMix64) -> String {
    const TOKENS: [&str; 14] = [
        "v", "e", "marked", "remove", "#", "\n", " ", "0", "1", "2", "17", "-3", "999999999999",
        "x",
    ];
    let mut out = String::new();
    for _ in 0..rng.below(40) {
        out.push_str(TOKENS[rng.below(TOKENS.len() as u64) as usize]);
        if rng.bool() {
            out.push(' ');
        }
    }
    out
}

fn mutate(rng: &mut SplitMix64, base: &str) -> String {
    let mut bytes = base.as_bytes().to_vec();
    for _ in 0..=rng.below(4) {
        if bytes.is_empty() {
            break;
        }
        let pos = rng.below(bytes.len() as u64) as usize;
        match rng.below(3) {
            0 => bytes[pos] = rng.next_u64() as u8,
            1 => {
                bytes.remove(pos);
            }
            _ => bytes.insert(pos, rng.next_u64() as u8),
        }
    }
    String::from_utf8_lossy(&bytes).into_owned()
}

#[test]
fn graph_parser_never_panics_and_round_trips() {
    let corpus = [
        "v 3\nmarked 1 2 3\nremove 3\ne 1 2\ne 2 3\ne 3 1\n",
        "v 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\ne 1 3\n",
        "# comment\nv 2\ne 1 2\ne 2 1\n",
    ];
    let mut rng = SplitMix64::new(0xf022);
    for round in 0..4000 {
        let input = match round % 3 {
            0 => {
                let len = 1 + rng.below(80) as usize;
                String::from_utf8_lossy(&random_bytes(&mut rng, len)).into_owned()
            }
            1 => random_token_soup(&mut rng),
            _ => mutate(&mut rng, corpus[round % corpus.len()]),
        };
        if let Ok(g) = Graph::parse(&input) {
            let again = Graph::parse(&g.render()).expect("rendered graph reparses");
            assert_eq!(g, again, "round {round}");
        }
    }
}

#[test]
fn pattern_parser_never_panics_and_round_trips() {
    let corpus = ["1,2,3,4", "1,1,1,1", "1,-,2,2", "-,-,1", "2,2,1,3"];
    let mut rng = SplitMix64::new(0xf033);
    for round in 0..4000 {
        let input = match round % 2 {
            0 => {
                let len = 1 + rng.below(24) as usize;
                String::from_utf8_lossy(&random_bytes(&mut rng, len)).into_owned()
            }
            _ => mutate(&mut rng, corpus[round % corpus.len()]),
        };
        if let Ok(p) = ForestPattern::parse(&input) {
            let again = ForestPattern::parse(&p.to_string()).expect("rendered pattern reparses");
            assert_eq!(p, again, "round {round}");
            let dashes = p.codes().iter().filter(|c| c.is_none()).count();
            if p.len() <= 10 && dashes <= 6 {
                for full in p.expand() {
                    assert!(!full.has_dash());
                }
            }
        }
    }
}
