//! Deterministic Büchi and Muller automata over ultimately periodic words.
//!
//! Acceptance is computed from the set of states a run visits infinitely
//! often, and again from the weak 0-limits of the run read as a sequence of
//! state indices. Distinct indices are at distance at least 1, so a weak
//! 0-limit is exactly a state that recurs forever.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::int;
use crate::seqlim::{weak_defect, ApproachMode, SequenceSpec, Strand};

/// `prefix . cycle^omega`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    prefix: Vec<String>,
    cycle: Vec<String>,
}

impl LassoWord {
    pub fn new(prefix: Vec<String>, cycle: Vec<String>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidWord("the cycle must be nonempty".into()));
        }
        Ok(LassoWord { prefix, cycle })
    }

    /// Parses `prefix | cycle`, symbols separated by whitespace or commas.
    /// Without a bar the whole text is the cycle.
    pub fn parse(src: &str) -> Result<Self> {
        let split = |s: &str| -> Vec<String> {
            s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(String::from).collect()
        };
        match src.split_once('|') {
            Some((p, c)) => LassoWord::new(split(p), split(c)),
            None => LassoWord::new(Vec::new(), split(src)),
        }
    }

    pub fn prefix(&self) -> &[String] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[String] {
        &self.cycle
    }

    /// The `i`-th symbol, from 0.
    pub fn symbol(&self, i: usize) -> &str {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Same word, cycle written `times` times over.
    pub fn unrolled(&self, times: usize) -> Self {
        LassoWord { prefix: self.prefix.clone(), cycle: (0..times.max(1)).flat_map(|_| self.cycle.iter().cloned()).collect() }
    }

    /// Same word, first cycle symbol moved into the prefix.
    pub fn rotated(&self) -> Self {
        let mut prefix = self.prefix.clone();
        prefix.push(self.cycle[0].clone());
        let mut cycle = self.cycle[1..].to_vec();
        cycle.push(self.cycle[0].clone());
        LassoWord { prefix, cycle }
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "{} ", self.prefix.join(" "))?;
        }
        write!(f, "| {}", self.cycle.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Acceptance {
    /// Accept iff some state in the set recurs forever.
    Buchi(BTreeSet<String>),
    /// Accept iff the set of recurring states is one of the listed sets.
    Muller(BTreeSet<BTreeSet<String>>),
}

impl Acceptance {
    pub fn admits(&self, recurring: &BTreeSet<String>) -> bool {
        match self {
            Acceptance::Buchi(f) => !f.is_disjoint(recurring),
            Acceptance::Muller(family) => family.contains(recurring),
        }
    }
}

/// A deterministic, complete automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonSpec {
    states: Vec<String>,
    alphabet: Vec<String>,
    /// `delta[state][symbol]`, both as indices.
    delta: Vec<Vec<usize>>,
    initial: usize,
    acceptance: Acceptance,
}

fn index_of(names: &[String], name: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::InvariantViolation(format!("unknown {what} `{name}`")))
}

impl AutomatonSpec {
    /// `transitions` lists `(from, symbol, to)`; exactly one row per state and symbol.
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        transitions: &[(String, String, String)],
        initial: &str,
        acceptance: Acceptance,
    ) -> Result<Self> {
        let unique = |v: &[String]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
        if states.is_empty() || alphabet.is_empty() {
            return Err(Error::InvariantViolation("states and alphabet must be nonempty".into()));
        }
        if !unique(&states) || !unique(&alphabet) {
            return Err(Error::InvariantViolation("duplicate state or symbol".into()));
        }
        let mut delta = vec![vec![None; alphabet.len()]; states.len()];
        for (from, sym, to) in transitions {
            let (p, a, q) = (
                index_of(&states, from, "state")?,
                index_of(&alphabet, sym, "symbol")?,
                index_of(&states, to, "state")?,
            );
            if delta[p][a].replace(q).is_some() {
                return Err(Error::InvariantViolation(format!("two transitions for ({from}, {sym})")));
            }
        }
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(p, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(a, q)| {
                        q.ok_or_else(|| {
                            Error::InvariantViolation(format!("missing transition for ({}, {})", states[p], alphabet[a]))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let initial = index_of(&states, initial, "state")?;
        let known = |set: &BTreeSet<String>| set.iter().try_for_each(|s| index_of(&states, s, "state").map(|_| ()));
        match &acceptance {
            Acceptance::Buchi(f) => known(f)?,
            Acceptance::Muller(family) => family.iter().try_for_each(known)?,
        }
        Ok(AutomatonSpec { states, alphabet, delta, initial, acceptance })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> &str {
        &self.states[self.initial]
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn with_acceptance(&self, acceptance: Acceptance) -> Result<Self> {
        let rows = self.transitions();
        AutomatonSpec::new(self.states.clone(), self.alphabet.clone(), &rows, self.initial(), acceptance)
    }

    /// All `(from, symbol, to)` rows, in state then symbol order.
    pub fn transitions(&self) -> Vec<(String, String, String)> {
        let mut rows = Vec::new();
        for (p, row) in self.delta.iter().enumerate() {
            for (a, q) in row.iter().enumerate() {
                rows.push((self.states[p].clone(), self.alphabet[a].clone(), self.states[*q].clone()));
            }
        }
        rows
    }

    pub fn step(&self, state: &str, symbol: &str) -> Result<String> {
        let p = index_of(&self.states, state, "state")?;
        let a = self.symbol_index(symbol)?;
        Ok(self.states[self.delta[p][a]].clone())
    }

    fn symbol_index(&self, symbol: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::InvalidWord(format!("symbol `{symbol}` is not in the alphabet")))
    }

    fn check_word(&self, w: &LassoWord) -> Result<()> {
        w.prefix.iter().chain(&w.cycle).try_for_each(|s| self.symbol_index(s).map(|_| ()))
    }
}

/// The run `s0 s1 s2 ...` (starting at the initial state) as `prefix . cycle^omega`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLasso {
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
}

/// Simulates until a (state, cycle position) pair repeats.
pub fn run(aut: &AutomatonSpec, w: &LassoWord) -> Result<RunLasso> {
    aut.check_word(w)?;
    let symbols: Vec<usize> = w
        .prefix
        .iter()
        .chain(&w.cycle)
        .map(|s| aut.symbol_index(s))
        .collect::<Result<_>>()?;
    let (p, c) = (w.prefix.len(), w.cycle.len());
    let mut trace = vec![aut.initial];
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    loop {
        let i = trace.len() - 1;
        let state = trace[i];
        if i >= p {
            let pos = (i - p) % c;
            if let Some(&first) = seen.get(&(state, pos)) {
                let names = |ix: &[usize]| ix.iter().map(|&s| aut.states[s].clone()).collect();
                return Ok(RunLasso { prefix: names(&trace[..first]), cycle: names(&trace[first..i]) });
            }
            seen.insert((state, pos), i);
        }
        let sym = if i < p { symbols[i] } else { symbols[p + (i - p) % c] };
        trace.push(aut.delta[state][sym]);
    }
}

/// States the run visits infinitely often.
pub fn inf_states(r: &RunLasso) -> BTreeSet<String> {
    r.cycle.iter().cloned().collect()
}

pub fn accepts(aut: &AutomatonSpec, w: &LassoWord) -> Result<bool> {
    Ok(aut.acceptance.admits(&inf_states(&run(aut, w)?)))
}

/// States `s` whose index is a weak 0-limit of the run's index sequence.
///
/// `states` fixes the index of each state name; the run's states must all be listed.
pub fn weak_limit_states(states: &[String], r: &RunLasso) -> Result<BTreeSet<String>> {
    let index: BTreeMap<&str, i64> = states.iter().enumerate().map(|(i, s)| (s.as_str(), i as i64)).collect();
    let encode = |s: &String| {
        index
            .get(s.as_str())
            .map(|&i| int(i))
            .ok_or_else(|| Error::InvariantViolation(format!("run visits unlisted state `{s}`")))
    };
    let transient = r.prefix.iter().map(encode).collect::<Result<Vec<_>>>()?;
    let strands = r
        .cycle
        .iter()
        .map(|s| Ok(Strand::finite(encode(s)?, ApproachMode::Exact)))
        .collect::<Result<Vec<_>>>()?;
    let seq = SequenceSpec::new(transient, strands)?;
    Ok(states
        .iter()
        .enumerate()
        .filter(|(i, _)| weak_defect(&int(*i as i64), &seq).le(&int(0)))
        .map(|(_, s)| s.clone())
        .collect())
}

/// Acceptance decided from the weak-limit states instead of the cycle.
pub fn accepts_via_weak_limits(aut: &AutomatonSpec, w: &LassoWord) -> Result<bool> {
    let limits = weak_limit_states(&aut.states, &run(aut, w)?)?;
    Ok(aut.acceptance.admits(&limits))
}
