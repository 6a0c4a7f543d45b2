use std::collections::BTreeMap;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::funlim::model::{FunctionModel, GeneratorDomain};
use crate::scalar::{int, rat, Interval, Scalar};

/// Shrinking sampling margins around a region, with a fixed grid size per level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridSchedule {
    levels: Vec<Scalar>,
    samples_per_level: usize,
    /// Sorted sample values split into clusters where consecutive values differ by more than this.
    gap: Scalar,
}

impl GridSchedule {
    pub fn new(levels: Vec<Scalar>, samples_per_level: usize, gap: Scalar) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvariantViolation("schedule needs at least one level".into()));
        }
        if levels.iter().any(|m| !m.is_positive()) {
            return Err(Error::InvariantViolation("schedule margins must be positive".into()));
        }
        if levels.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvariantViolation("schedule margins must be strictly decreasing".into()));
        }
        if samples_per_level < 3 {
            return Err(Error::InvariantViolation("need at least 3 samples per level".into()));
        }
        if !gap.is_positive() {
            return Err(Error::InvariantViolation("cluster gap must be positive".into()));
        }
        Ok(GridSchedule { levels, samples_per_level, gap })
    }

    /// Margins `1/2, 1/4, ..., 1/2^count` with the given grid size and gap `1/4`.
    pub fn halving(count: usize, samples_per_level: usize) -> Result<Self> {
        let levels = (1..=count as u32).map(|k| rat(1, 1i64 << k)).collect();
        GridSchedule::new(levels, samples_per_level, rat(1, 4))
    }

    pub fn levels(&self) -> &[Scalar] {
        &self.levels
    }

    pub fn samples_per_level(&self) -> usize {
        self.samples_per_level
    }

    pub fn gap(&self) -> &Scalar {
        &self.gap
    }

    pub fn finest(&self) -> &Scalar {
        self.levels.last().expect("schedule is nonempty")
    }
}

impl Default for GridSchedule {
    fn default() -> Self {
        GridSchedule::halving(8, 33).expect("valid default schedule")
    }
}

/// `n` equispaced points over `window`, both endpoints included.
pub fn grid(window: &Interval, n: usize) -> Vec<Scalar> {
    debug_assert!(n >= 2);
    let step = window.length() / int(n as i64 - 1);
    (0..n).map(|j| window.lo() + &step * int(j as i64)).collect()
}

/// Domain points sampled around `region` at one margin, as `(x, f(x))` sorted by `x`.
///
/// Finite-domain models contribute every listed point within `margin` of the
/// region. Continuum generators contribute the equispaced grid over the widened
/// region, the region's endpoints, domain endpoints inside the window, and any
/// override point inside it. The region's midpoint is always
/// punctured: a degenerate region is the point itself, and for a proper
/// interval `[a - q, a + q]` the midpoint is the excluded point `a`.
pub fn sample_region(model: &FunctionModel, region: &Interval, margin: &Scalar, n: usize) -> Vec<(Scalar, Scalar)> {
    let center = region.midpoint();
    let window = region.widen(margin);
    let mut out: BTreeMap<Scalar, Scalar> = BTreeMap::new();
    match (model.finite_points(), model) {
        (Some(points), _) => {
            for (x, y) in points.range(window.lo().clone()..=window.hi().clone()) {
                out.insert(x.clone(), y.clone());
            }
        }
        (None, FunctionModel::Generator(g)) => {
            // The region's own endpoints and any domain endpoint in the window are
            // sampled too, so clipped domains still contribute their extremes.
            let mut xs = grid(&window, n);
            xs.extend([region.lo().clone(), region.hi().clone()]);
            if let GeneratorDomain::Interval(d) = &g.domain {
                xs.extend([d.lo(), d.hi()].into_iter().filter(|e| window.contains(e)).cloned());
            }
            for x in xs {
                if let Some(y) = g.eval(&x) {
                    out.insert(x, y);
                }
            }
            for (x, y) in g.overrides.range(window.lo().clone()..=window.hi().clone()) {
                out.insert(x.clone(), y.clone());
            }
        }
        (None, FunctionModel::Discrete(_)) => unreachable!("tables always have finite points"),
    }
    out.remove(&center);
    out.into_iter().collect()
}
