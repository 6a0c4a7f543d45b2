//! Brute-force reference computations that follow the definitions literally.
//!
//! These exist to cross-check the closed forms and stay small on purpose:
//! each refuses inputs beyond a desk-scale bound.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::funlim::Table;
use crate::omegalim::{AutomatonSpec, LassoWord};
use crate::scalar::{dist, Scalar, XScalar};
use crate::seqlim::{defect_of, sample_prefix, SequenceSpec};

pub const MAX_PREFIX: usize = 100_000;
pub const MAX_ADMISSIBLE: usize = 8;
pub const MAX_CANDIDATES: usize = 14;
pub const MAX_STATES: usize = 4;

/// `max |a - x_i|` over the second half of the first `n` elements.
pub fn oracle_seq_defect(seq: &SequenceSpec, a: &Scalar, n: usize) -> Result<Scalar> {
    if n > MAX_PREFIX {
        return Err(Error::OracleScaleExceeded(format!("prefix {n} exceeds {MAX_PREFIX}")));
    }
    if n < 2 {
        return Err(Error::invalid("prefix length must be at least 2"));
    }
    let xs = sample_prefix(seq, n);
    Ok(xs[n / 2..].iter().map(|x| dist(a, x)).max().expect("nonempty"))
}

/// Strong or weak (q,r)-defect by enumerating periodic sequences.
///
/// Every nonempty subset `T` of `Dom f \ {a}` yields the sequence cycling
/// through `T`. It q-converges to `a` iff its defect at `a` is at most `q`, and
/// its image is then scored by the defect of `b`. The strong defect is the worst
/// score, the weak one the best.
pub fn oracle_fn_defect(f: &Table, a: &Scalar, q: &Scalar, b: &Scalar, weak: bool) -> Result<Scalar> {
    let pool: Vec<(&Scalar, &Scalar)> = f.iter().filter(|(x, _)| *x != a).collect();
    let near = pool.iter().filter(|(x, _)| dist(x, a) <= *q).count();
    if pool.len() > MAX_CANDIDATES {
        return Err(Error::OracleScaleExceeded(format!("{} candidate points exceed {MAX_CANDIDATES}", pool.len())));
    }
    if near > MAX_ADMISSIBLE {
        return Err(Error::OracleScaleExceeded(format!("{near} admissible points exceed {MAX_ADMISSIBLE}")));
    }
    let mut best: Option<Scalar> = None;
    for mask in 1u32..(1 << pool.len()) {
        let chosen: Vec<_> = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]).collect();
        let xs = SequenceSpec::periodic(chosen.iter().map(|(x, _)| (*x).clone()))?;
        if !defect_of(a, &xs).le(q) {
            continue;
        }
        let ys = SequenceSpec::periodic(chosen.iter().map(|(_, y)| (*y).clone()))?;
        let XScalar::Finite(score) = defect_of(b, &ys) else { unreachable!("periodic sequences are bounded") };
        best = Some(match best {
            None => score,
            Some(cur) if weak => cur.min(score),
            Some(cur) => cur.max(score),
        });
    }
    best.ok_or(Error::NoAdmissibleSequence)
}

/// States seen in a late window of a long simulation.
///
/// After `|prefix| + |Q| * |cycle|` steps the run is periodic, and the next
/// `|Q| * |cycle|` steps cover a whole period of it.
pub fn oracle_inf_states(aut: &AutomatonSpec, w: &LassoWord) -> Result<BTreeSet<String>> {
    let n = aut.states().len();
    if n > MAX_STATES {
        return Err(Error::OracleScaleExceeded(format!("{n} states exceed {MAX_STATES}")));
    }
    let settle = w.prefix().len() + n * w.cycle().len();
    let end = settle + n * w.cycle().len();
    let mut state = aut.initial().to_string();
    let mut seen = BTreeSet::new();
    for i in 0..=end {
        if i >= settle {
            seen.insert(state.clone());
        }
        state = aut.step(&state, w.symbol(i))?;
    }
    Ok(seen)
}

pub fn oracle_accepts(aut: &AutomatonSpec, w: &LassoWord) -> Result<bool> {
    Ok(aut.acceptance().admits(&oracle_inf_states(aut, w)?))
}
