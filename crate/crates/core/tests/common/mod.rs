//! Seeded random instances shared by the integration suites.
#![allow(dead_code)]

pub mod golden;

use std::collections::{BTreeMap, BTreeSet};

use fuzzylim::funlim::Table;
use fuzzylim::omegalim::{Acceptance, AutomatonSpec, LassoWord};
use fuzzylim::scalar::{rat, Scalar};
use fuzzylim::seqlim::{ApproachMode, SequenceSpec, Strand};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/den` with `den` in `1..=max_den` and the value in `[lo, hi]`.
pub fn rational(rng: &mut impl Rng, lo: i64, hi: i64, max_den: i64) -> Scalar {
    let den = rng.random_range(1..=max_den);
    rat(rng.random_range(lo * den..=hi * den), den)
}

pub const MODES: [ApproachMode; 4] = [ApproachMode::Exact, ApproachMode::Above, ApproachMode::Below, ApproachMode::Alternating];

/// Up to 4 strands with finite targets in `[-10, 10]`, short transient.
pub fn sequence(rng: &mut impl Rng) -> SequenceSpec {
    let strands = (0..rng.random_range(1..=4))
        .map(|_| Strand::finite(rational(rng, -10, 10, 4), *MODES.choose(rng).unwrap()))
        .collect();
    let transient = (0..rng.random_range(0..=4)).map(|_| rational(rng, -20, 20, 3)).collect();
    SequenceSpec::new(transient, strands).unwrap()
}

/// A table on half-integers in `[-6, 6]` with random values.
pub fn table(rng: &mut impl Rng, size: usize) -> Table {
    let mut t = BTreeMap::new();
    while t.len() < size {
        t.insert(rat(rng.random_range(-12..=12), 2), rational(rng, -10, 10, 2));
    }
    t
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random deterministic complete automaton over `{a, b}` with at most `max_states` states.
pub fn automaton(rng: &mut impl Rng, max_states: usize) -> AutomatonSpec {
    let states = names("q", rng.random_range(1..=max_states));
    let alphabet = vec!["a".to_string(), "b".to_string()];
    let mut rows = Vec::new();
    for p in &states {
        for s in &alphabet {
            rows.push((p.clone(), s.clone(), states.choose(rng).unwrap().clone()));
        }
    }
    let f: BTreeSet<String> = states.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
    AutomatonSpec::new(states, alphabet, &rows, "q0", Acceptance::Buchi(f)).unwrap()
}

/// A random Muller family over the automaton's states.
pub fn muller_family(rng: &mut impl Rng, states: &[String]) -> BTreeSet<BTreeSet<String>> {
    let n = states.len();
    (1u32..(1 << n))
        .filter(|_| rng.random_bool(0.4))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| states[i].clone()).collect())
        .collect()
}

/// Every word over `{a, b}` with prefix length `<= max_prefix` and cycle length in `1..=max_cycle`.
pub fn all_lassos(max_prefix: usize, max_cycle: usize) -> Vec<LassoWord> {
    let words = |len: usize| -> Vec<Vec<String>> {
        (0..1usize << len)
            .map(|m| (0..len).map(|i| if m >> i & 1 == 1 { "b" } else { "a" }.to_string()).collect())
            .collect()
    };
    let mut out = Vec::new();
    for p in 0..=max_prefix {
        for c in 1..=max_cycle {
            for prefix in words(p) {
                for cycle in words(c) {
                    out.push(LassoWord::new(prefix.clone(), cycle).unwrap());
                }
            }
        }
    }
    out
}
