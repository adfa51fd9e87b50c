use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omega_synth::automata::{emit_hoa, parse_hoa, parse_json};

const B1_HOA: &str = include_str!("../../../fixtures/b1.hoa");
const B1_JSON: &str = include_str!("../../../fixtures/b1.json");

const SPLICES: &[&str] = &[
    "{0}",
    "[0]",
    "[!0 & 1]",
    "State:",
    "--BODY--",
    "--END--",
    "AP:",
    "\"",
    "Start: 9",
    "States: 99999999999",
    "Acceptance: 2 Inf(0)&Inf(1)",
    "t",
    "-1",
    "/*",
    "*/",
    "\n",
    "{",
    "}",
    "[",
    "]",
    "4294967296",
    "null",
    ",",
    ":",
];

fn mutate(rng: &mut ChaCha8Rng, base: &str) -> String {
    let mut bytes = base.as_bytes().to_vec();
    for _ in 0..rng.gen_range(1..=4) {
        let at = rng.gen_range(0..=bytes.len());
        match rng.gen_range(0..5) {
            0 if !bytes.is_empty() => {
                let i = at.min(bytes.len() - 1);
                bytes[i] = rng.gen();
            }
            1 if !bytes.is_empty() => {
                let end = (at + rng.gen_range(1..8)).min(bytes.len());
                bytes.drain(at.min(end)..end);
            }
            2 => {
                let s = SPLICES[rng.gen_range(0..SPLICES.len())];
                bytes.splice(at..at, s.bytes());
            }
            3 if !bytes.is_empty() => {
                let start = rng.gen_range(0..bytes.len());
                let end = (start + rng.gen_range(1..16)).min(bytes.len());
                let chunk = bytes[start..end].to_vec();
                bytes.splice(at..at, chunk);
            }
            _ => bytes.truncate(at),
        }
    }
    String::from_utf8_lossy(&bytes).into_owned()
}

#[test]
fn mutated_hoa_yields_structured_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut rejected = 0;
    for _ in 0..2000 {
        let text = mutate(&mut rng, B1_HOA);
        match parse_hoa(&text) {
            Ok(b) => {
                // Whatever was accepted must survive a round trip.
                let again = parse_hoa(&emit_hoa(&b)).unwrap();
                assert_eq!(again.num_states(), b.num_states());
            }
            Err(e) => {
                assert!(e.line >= 1);
                assert!(!e.to_string().is_empty());
                rejected += 1;
            }
        }
    }
    assert!(rejected > 1000, "mutations too mild: {rejected}");
}

#[test]
fn mutated_json_yields_structured_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e57);
    for _ in 0..2000 {
        let text = mutate(&mut rng, B1_JSON);
        if let Err(e) = parse_json(&text) {
            assert!(!e.to_string().is_empty());
        }
    }
}
