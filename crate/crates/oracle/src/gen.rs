//! Random small theories for differential testing.
//!
//! Every theory has the same signature: domain `a b`, `P/1 = {(a)}`, a
//! false 0-ary `l`, and three sentence constants `c0 c1 c2` whose bindings
//! are drawn at random. Bindings are produced as text so the parser is
//! exercised too.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dualtruth::model::Theory;
use dualtruth::{parse_theory, Error};

use crate::oracle_report;

pub const CONSTANTS: [&str; 3] = ["c0", "c1", "c2"];

const HEADER: &str = "domain a b\npred P/1 = { (a) }\npred l/0 = {}\n";

fn atom(rng: &mut ChaCha8Rng, var: Option<&str>) -> String {
    let c = CONSTANTS[rng.gen_range(0..CONSTANTS.len())];
    let term = match var {
        Some(x) if rng.gen_bool(0.5) => x.to_string(),
        _ => ["a", "b", c][rng.gen_range(0..3)].to_string(),
    };
    match rng.gen_range(0..8) {
        0 => format!("P({term})"),
        1 => format!("S({term})"),
        2 => "l()".to_string(),
        3 | 4 => format!("T({c})"),
        5 => format!("F({c})"),
        6 => format!("U({c})"),
        _ => format!("T({term})"),
    }
}

fn formula(rng: &mut ChaCha8Rng, depth: u32, var: Option<&str>) -> String {
    if depth == 0 {
        return atom(rng, var);
    }
    match rng.gen_range(0..10) {
        0 | 1 => atom(rng, var),
        2 => format!("~{}", formula(rng, depth - 1, var)),
        3 => format!("({} & {})", formula(rng, depth - 1, var), formula(rng, depth - 1, var)),
        4 => format!("({} | {})", formula(rng, depth - 1, var), formula(rng, depth - 1, var)),
        5 => format!("({} -> {})", formula(rng, depth - 1, var), formula(rng, depth - 1, var)),
        6 => format!("({} <-> {})", formula(rng, depth - 1, var), formula(rng, depth - 1, var)),
        7 => format!("T([{}])", formula(rng, depth - 1, var)),
        8 if var.is_none() => format!("(forall x. {})", formula(rng, depth - 1, Some("x"))),
        _ if var.is_none() => format!("(exists x. {})", formula(rng, depth - 1, Some("x"))),
        _ => atom(rng, var),
    }
}

/// Theory text for one draw, without any size check.
pub fn theory_text(rng: &mut ChaCha8Rng) -> String {
    let mut text = HEADER.to_string();
    for c in CONSTANTS {
        let depth = rng.gen_range(0..3);
        text.push_str(&format!("let {c} := {}\n", formula(rng, depth, None)));
    }
    text
}

/// A random theory whose core has at most [`crate::ORACLE_MAX_CORE`] sentences,
/// drawn by rejection sampling. Deterministic in `seed`.
pub fn random_theory(seed: u64) -> (String, Theory) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let text = theory_text(&mut rng);
        let th = parse_theory(&text).unwrap_or_else(|e| panic!("generated text does not parse: {e}\n{text}"));
        match oracle_report(&th) {
            Ok(_) => return (text, th),
            Err(Error::EnumerationBudgetExceeded { .. }) => continue,
            Err(e) => panic!("oracle failed on\n{text}: {e}"),
        }
    }
}
