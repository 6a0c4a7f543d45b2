//! Fuzzy limits of sequences.
//!
//! A sequence is described intensionally by a finite transient followed by a
//! round-robin interleaving of *strands*. Each strand accumulates at one target
//! with a fixed approach pattern, so the set of strand targets is exactly the
//! set of subsequential limits and every limit predicate below is decidable in
//! exact arithmetic.
//!
//! The central quantity is the *defect of convergence*
//! `defect(a) = limsup_i |a - a_i|`: `a` is an r-limit iff `defect(a) <= r`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{dist, int, Interval, Scalar, XScalar};

/// How a strand approaches its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ApproachMode {
    /// Constant at the target.
    Exact,
    /// `target + 1/i`.
    Above,
    /// `target - 1/i`.
    Below,
    /// `target + (-1)^i / i`.
    Alternating,
}

impl ApproachMode {
    pub const ALL: [ApproachMode; 4] =
        [ApproachMode::Exact, ApproachMode::Above, ApproachMode::Below, ApproachMode::Alternating];

    pub fn name(self) -> &'static str {
        match self {
            ApproachMode::Exact => "exact",
            ApproachMode::Above => "above",
            ApproachMode::Below => "below",
            ApproachMode::Alternating => "alt",
        }
    }
}

impl FromStr for ApproachMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ApproachMode::Exact),
            "above" | "from-above" => Ok(ApproachMode::Above),
            "below" | "from-below" => Ok(ApproachMode::Below),
            "alt" | "alternating" => Ok(ApproachMode::Alternating),
            other => Err(Error::invalid(format!("unknown approach mode `{other}`"))),
        }
    }
}

impl fmt::Display for ApproachMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One accumulation target of a sequence. The mode is ignored for infinite targets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strand {
    pub target: XScalar,
    pub mode: ApproachMode,
}

impl Strand {
    pub fn new(target: XScalar, mode: ApproachMode) -> Self {
        Strand { target, mode }
    }

    pub fn finite(target: Scalar, mode: ApproachMode) -> Self {
        Strand { target: XScalar::Finite(target), mode }
    }

    /// The `i`-th value of the strand's stream, `i >= 1`.
    pub fn value(&self, n: u64) -> Scalar {
        debug_assert!(n >= 1);
        let i = Scalar::from_integer(n.into());
        match &self.target {
            XScalar::PosInf => i,
            XScalar::NegInf => -i,
            XScalar::Finite(d) => match self.mode {
                ApproachMode::Exact => d.clone(),
                ApproachMode::Above => d + i.recip(),
                ApproachMode::Below => d - i.recip(),
                ApproachMode::Alternating => {
                    let step = i.recip();
                    if n.is_multiple_of(2) {
                        d + step
                    } else {
                        d - step
                    }
                }
            },
        }
    }

    /// Whether almost all stream values are `> r`.
    fn eventually_above(&self, r: &Scalar) -> bool {
        match &self.target {
            XScalar::PosInf => true,
            XScalar::NegInf => false,
            XScalar::Finite(d) => match self.mode {
                ApproachMode::Above => d >= r,
                _ => d > r,
            },
        }
    }

    /// Whether almost all stream values are `< bound`.
    fn eventually_below(&self, bound: &Scalar) -> bool {
        match &self.target {
            XScalar::PosInf => false,
            XScalar::NegInf => true,
            XScalar::Finite(d) => match self.mode {
                ApproachMode::Below => d <= bound,
                _ => d < bound,
            },
        }
    }

    /// `limsup |a - x_i|` over this strand's stream.
    fn tail_defect(&self, a: &Scalar) -> XScalar {
        match &self.target {
            XScalar::Finite(d) => XScalar::Finite(dist(a, d)),
            _ => XScalar::PosInf,
        }
    }
}

/// A concrete real sequence: `transient` followed by the round-robin
/// interleaving of the strand streams.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    transient: Vec<Scalar>,
    strands: Vec<Strand>,
}

impl SequenceSpec {
    pub fn new(transient: Vec<Scalar>, strands: Vec<Strand>) -> Result<Self> {
        if strands.is_empty() {
            return Err(Error::InvariantViolation("a sequence needs at least one strand".into()));
        }
        Ok(SequenceSpec { transient, strands })
    }

    /// The sequence converging to `target` along `mode`, with no transient.
    pub fn single(target: Scalar, mode: ApproachMode) -> Self {
        SequenceSpec { transient: Vec::new(), strands: vec![Strand::finite(target, mode)] }
    }

    /// Periodic sequence cycling through `values`; empty input is rejected.
    pub fn periodic(values: impl IntoIterator<Item = Scalar>) -> Result<Self> {
        let strands = values.into_iter().map(|v| Strand::finite(v, ApproachMode::Exact)).collect();
        SequenceSpec::new(Vec::new(), strands)
    }

    pub fn transient(&self) -> &[Scalar] {
        &self.transient
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    /// Strand targets, failing if any is infinite.
    pub fn finite_targets(&self) -> Result<Vec<&Scalar>> {
        self.strands
            .iter()
            .map(|s| s.target.finite().ok_or(Error::UnsupportedInfiniteTarget))
            .collect()
    }

    fn target_range(&self) -> Result<(Scalar, Scalar)> {
        let targets = self.finite_targets()?;
        let lo = targets.iter().min().copied().cloned().expect("strands are nonempty");
        let hi = targets.iter().max().copied().cloned().expect("strands are nonempty");
        Ok((lo, hi))
    }

    /// The element at 0-based position `k`.
    pub fn element(&self, k: usize) -> Scalar {
        if k < self.transient.len() {
            return self.transient[k].clone();
        }
        let k = k - self.transient.len();
        let m = self.strands.len();
        self.strands[k % m].value((k / m) as u64 + 1)
    }
}

/// A nonempty finite set of sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceSet {
    members: Vec<SequenceSpec>,
}

impl SequenceSet {
    pub fn new(members: Vec<SequenceSpec>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvariantViolation("a sequence set needs at least one member".into()));
        }
        Ok(SequenceSet { members })
    }

    pub fn members(&self) -> &[SequenceSpec] {
        &self.members
    }
}

/// `limsup_i |a - a_i|`; `+inf` as soon as some strand diverges.
pub fn defect_of(a: &Scalar, seq: &SequenceSpec) -> XScalar {
    seq.strands.iter().map(|s| s.tail_defect(a)).max().expect("strands are nonempty")
}

/// Whether `a` (possibly infinite) is an r-limit of `seq`.
///
/// For `a = +inf` this asks that almost all elements exceed `r`, and for
/// `a = -inf` that almost all fall below `-r`. Those comparisons are strict,
/// so unlike the finite case they depend on each strand's approach mode.
pub fn is_r_limit(a: &XScalar, r: &Scalar, seq: &SequenceSpec) -> Result<bool> {
    if r.is_negative() {
        return Err(Error::invalid("r must be non-negative"));
    }
    Ok(match a {
        XScalar::Finite(a) => defect_of(a, seq).le(r),
        XScalar::PosInf => seq.strands.iter().all(|s| s.eventually_above(r)),
        XScalar::NegInf => {
            let bound = -r;
            seq.strands.iter().all(|s| s.eventually_below(&bound))
        }
    })
}

/// `{a : defect_of(a, seq) <= r}`, or `None` when no such `a` exists.
pub fn r_limit_set(r: &Scalar, seq: &SequenceSpec) -> Result<Option<Interval>> {
    if r.is_negative() {
        return Err(Error::invalid("r must be non-negative"));
    }
    let (lo, hi) = seq.target_range()?;
    let left = hi - r;
    let right = lo + r;
    Ok(if left <= right { Some(Interval::new(left, right)?) } else { None })
}

/// The least `r` admitting an r-limit, and the unique point attaining it.
pub fn convergence_radius(seq: &SequenceSpec) -> Result<(Scalar, Scalar)> {
    let (lo, hi) = seq.target_range()?;
    let two = int(2);
    Ok(((&hi - &lo) / &two, (hi + lo) / two))
}

/// Best defect over subsequences: `b` is a weak r-limit iff this is `<= r`.
pub fn weak_defect(b: &Scalar, seq: &SequenceSpec) -> XScalar {
    seq.strands.iter().map(|s| s.tail_defect(b)).min().expect("strands are nonempty")
}

/// One sequence whose r-limits are exactly the common r-limits of the set.
///
/// Transients are concatenated in member order and strands are collected in
/// member order, so the result's prefix is deterministic.
pub fn interleave(set: &SequenceSet) -> SequenceSpec {
    let mut transient = Vec::new();
    let mut strands = Vec::new();
    for m in &set.members {
        transient.extend(m.transient.iter().cloned());
        strands.extend(m.strands.iter().cloned());
    }
    SequenceSpec { transient, strands }
}

/// `max` over members of `defect_of(a, member)`.
pub fn set_defect(a: &Scalar, set: &SequenceSet) -> XScalar {
    set.members.iter().map(|m| defect_of(a, m)).max().expect("sets are nonempty")
}

/// The first `n` elements of the denoted sequence.
pub fn sample_prefix(seq: &SequenceSpec, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n);
    out.extend(seq.transient.iter().take(n).cloned());
    let m = seq.strands.len();
    let mut k = 0usize;
    while out.len() < n {
        out.push(seq.strands[k % m].value((k / m) as u64 + 1));
        k += 1;
    }
    out
}

/// Display-only membership degree `max(0, 1 - defect/scale)`.
///
/// This is a convenience rescaling of the defect into `[0, 1]`; it is not a
/// canonical fuzzy membership function.
pub fn display_membership(defect: &XScalar, scale: &Scalar) -> Result<Scalar> {
    if !scale.is_positive() {
        return Err(Error::invalid("membership scale must be positive"));
    }
    Ok(match defect {
        XScalar::Finite(d) => {
            let m = Scalar::from_integer(1.into()) - d / scale;
            if m.is_negative() {
                Scalar::zero()
            } else {
                m
            }
        }
        _ => Scalar::zero(),
    })
}

/// Max of `|a - x|` over the last `window` entries of a floating-point trace.
pub fn streaming_defect(trace: &[f64], a: f64, window: usize) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::invalid("trace is empty"));
    }
    if window == 0 || window > trace.len() {
        return Err(Error::invalid(format!(
            "window must be in 1..={}, got {window}",
            trace.len()
        )));
    }
    Ok(trace[trace.len() - window..].iter().map(|x| (a - x).abs()).fold(0.0, f64::max))
}

/// Online version of [`streaming_defect`] for a solver trace that arrives one
/// value at a time.
#[derive(Debug, Clone)]
pub struct StreamingDefect {
    center: f64,
    window: usize,
    tail: VecDeque<f64>,
}

impl StreamingDefect {
    pub fn new(center: f64, window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::invalid("window must be at least 1"));
        }
        Ok(StreamingDefect { center, window, tail: VecDeque::with_capacity(window) })
    }

    pub fn push(&mut self, x: f64) {
        if self.tail.len() == self.window {
            self.tail.pop_front();
        }
        self.tail.push_back(x);
    }

    /// `None` until a full window has been observed.
    pub fn current(&self) -> Option<f64> {
        (self.tail.len() == self.window)
            .then(|| self.tail.iter().map(|x| (self.center - x).abs()).fold(0.0, f64::max))
    }
}
