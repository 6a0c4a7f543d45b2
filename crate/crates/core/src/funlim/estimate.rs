//! Grid-refinement estimators for generator models.
//!
//! Each schedule level samples the region widened by that level's margin (see
//! [`sample_region`]) and records one estimate. For the piecewise functions the
//! grammar builds, the estimates settle as the margin shrinks; reports keep
//! the full per-level trace so stabilization can be judged by the caller.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::funlim::model::{FunctionModel, GeneratorDomain};
use crate::funlim::schedule::{grid, sample_region, GridSchedule};
use crate::scalar::{dist, Interval, Scalar, XScalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelEstimate {
    pub margin: Scalar,
    pub samples: usize,
    pub value: Scalar,
}

/// Per-level defect estimates, coarsest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionEstimate {
    pub levels: Vec<LevelEstimate>,
}

impl RegionEstimate {
    pub fn estimates(&self) -> Vec<Scalar> {
        self.levels.iter().map(|l| l.value.clone()).collect()
    }

    pub fn final_estimate(&self) -> &Scalar {
        &self.levels.last().expect("at least one level").value
    }

    /// First level index from which every later estimate is within `tol` of the final one.
    pub fn stabilized_at(&self, tol: &Scalar) -> usize {
        let last = self.final_estimate();
        let mut k = self.levels.len() - 1;
        while k > 0 && dist(&self.levels[k - 1].value, last) <= *tol {
            k -= 1;
        }
        k
    }
}

fn per_level(
    f: &FunctionModel,
    region: &Interval,
    sched: &GridSchedule,
    fold: impl Fn(&[(Scalar, Scalar)]) -> Scalar,
) -> Result<RegionEstimate> {
    let mut levels = Vec::with_capacity(sched.levels().len());
    for margin in sched.levels() {
        let samples = sample_region(f, region, margin, sched.samples_per_level());
        if samples.is_empty() {
            return Err(Error::EmptySample);
        }
        levels.push(LevelEstimate { margin: margin.clone(), samples: samples.len(), value: fold(&samples) });
    }
    Ok(RegionEstimate { levels })
}

/// Estimated strong defect of `b` at `region`: per level, the worst `|f(x) - b|`.
///
/// For `region = [a - q, a + q]` this estimates the (q,r)-defect at `a`; a
/// degenerate region gives the point defect.
pub fn region_defect_estimate(
    f: &FunctionModel,
    region: &Interval,
    b: &Scalar,
    sched: &GridSchedule,
) -> Result<RegionEstimate> {
    per_level(f, region, sched, |s| s.iter().map(|(_, y)| dist(y, b)).max().expect("nonempty"))
}

/// Estimated weak defect: per level, the best `|f(x) - b|`.
pub fn weak_region_defect_estimate(
    f: &FunctionModel,
    region: &Interval,
    b: &Scalar,
    sched: &GridSchedule,
) -> Result<RegionEstimate> {
    per_level(f, region, sched, |s| s.iter().map(|(_, y)| dist(y, b)).min().expect("nonempty"))
}

/// A maximal run of sorted sample values with no internal gap above the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub lo: Scalar,
    pub hi: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelClusters {
    pub margin: Scalar,
    pub samples: usize,
    pub spans: Vec<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    /// Midpoint of the final-level span.
    pub value: Scalar,
    pub lo: Scalar,
    pub hi: Scalar,
    /// First level from which this exact single value is present at every level.
    pub stable_from: Option<usize>,
    pub converged: bool,
}

/// Estimated limit values of `f` along sequences into the region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterReport {
    pub clusters: Vec<Cluster>,
    pub trace: Vec<LevelClusters>,
}

impl ClusterReport {
    pub fn values(&self) -> Vec<Scalar> {
        self.clusters.iter().map(|c| c.value.clone()).collect()
    }

    /// Distance from `b` to the nearest reported cluster span.
    pub fn weak_defect(&self, b: &Scalar) -> Scalar {
        self.clusters
            .iter()
            .map(|c| Interval::new(c.lo.clone(), c.hi.clone()).expect("lo <= hi").distance_to(b))
            .min()
            .expect("at least one cluster")
    }

    pub fn is_weak_r_limit(&self, b: &Scalar, r: &Scalar) -> bool {
        self.weak_defect(b) <= *r
    }
}

fn gap_cluster(mut values: Vec<Scalar>, gap: &Scalar) -> Vec<Span> {
    values.sort();
    values.dedup();
    let mut spans: Vec<Span> = Vec::new();
    for v in values {
        match spans.last_mut() {
            Some(s) if &v - &s.hi <= *gap => s.hi = v,
            _ => spans.push(Span { lo: v.clone(), hi: v }),
        }
    }
    spans
}

pub fn cluster_values_estimate(f: &FunctionModel, region: &Interval, sched: &GridSchedule) -> Result<ClusterReport> {
    let mut trace = Vec::with_capacity(sched.levels().len());
    for margin in sched.levels() {
        let samples = sample_region(f, region, margin, sched.samples_per_level());
        if samples.is_empty() {
            return Err(Error::EmptySample);
        }
        let n = samples.len();
        let spans = gap_cluster(samples.into_iter().map(|(_, y)| y).collect(), sched.gap());
        trace.push(LevelClusters { margin: margin.clone(), samples: n, spans });
    }
    let last = trace.len() - 1;
    let clusters = trace[last]
        .spans
        .iter()
        .map(|s| {
            let stable_from = (s.lo == s.hi).then(|| {
                let mut k = last;
                while k > 0 && trace[k - 1].spans.iter().any(|t| t.lo == s.lo && t.hi == s.lo) {
                    k -= 1;
                }
                k
            });
            Cluster {
                value: (&s.lo + &s.hi) / crate::scalar::int(2),
                lo: s.lo.clone(),
                hi: s.hi.clone(),
                converged: stable_from.is_some_and(|k| k < last),
                stable_from,
            }
        })
        .collect();
    Ok(ClusterReport { clusters, trace })
}

/// Result of scanning a region for a single repeated value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostConstant {
    /// The common value when every sample agrees.
    pub value: Option<Scalar>,
    pub samples: usize,
}

impl AlmostConstant {
    pub fn holds(&self) -> bool {
        self.value.is_some()
    }
}

/// Whether all sampled values on the region coincide, ignoring override points.
///
/// When they do, that value is the interval limit of the model on the region.
pub fn almost_constant_check(f: &FunctionModel, region: &Interval, sched: &GridSchedule) -> Result<AlmostConstant> {
    let mut values: Vec<Scalar> = Vec::new();
    match f {
        FunctionModel::Discrete(t) => {
            values.extend(t.range(region.lo().clone()..=region.hi().clone()).map(|(_, y)| y.clone()));
        }
        FunctionModel::Generator(g) if g.domain == GeneratorDomain::OverridesOnly => {
            values.extend(g.overrides.range(region.lo().clone()..=region.hi().clone()).map(|(_, y)| y.clone()));
        }
        FunctionModel::Generator(g) => {
            let center = region.midpoint();
            for margin in sched.levels() {
                for x in grid(&region.widen(margin), sched.samples_per_level()) {
                    let keep = if region.is_degenerate() { x != center } else { region.contains(&x) };
                    if keep && !g.overrides.contains_key(&x) {
                        values.extend(g.eval_continuum(&x));
                    }
                }
            }
        }
    }
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let first = values[0].clone();
    let constant = values.iter().all(|v| *v == first).then_some(first);
    Ok(AlmostConstant { value: constant, samples: values.len() })
}

/// Spread of `f` around `a`: `f(a)` and the largest `|f(a) - f(x)|` seen with `|x - a| <= radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSpread {
    pub value_at_point: Scalar,
    pub spread: XScalar,
    pub samples: usize,
}

impl LocalSpread {
    /// `(f(a), spread)`: `f(a)` is a spread-limit of `f` at `a`, witnessing fuzzy convergence.
    pub fn witness(&self) -> Option<(Scalar, Scalar)> {
        self.spread.finite().map(|r| (self.value_at_point.clone(), r.clone()))
    }
}

/// Samples `n` grid points over `[a - radius, a + radius]` for generators; tables use their entries.
pub fn local_spread(f: &FunctionModel, a: &Scalar, radius: &Scalar, n: usize) -> Result<LocalSpread> {
    if !radius.is_positive() {
        return Err(Error::invalid("radius must be positive"));
    }
    if n < 2 {
        return Err(Error::invalid("need at least 2 samples"));
    }
    let fa = f.eval(a).ok_or_else(|| Error::PointNotInDomain(a.clone()))?;
    let window = Interval::around(a, radius)?;
    let mut values: Vec<Scalar> = Vec::new();
    match f.finite_points() {
        Some(points) => values.extend(points.range(window.lo().clone()..=window.hi().clone()).map(|(_, y)| y.clone())),
        None => {
            if let FunctionModel::Generator(g) = f {
                values.extend(grid(&window, n).iter().filter_map(|x| g.eval(x)));
                values.extend(g.overrides.range(window.lo().clone()..=window.hi().clone()).map(|(_, y)| y.clone()));
            }
        }
    }
    let spread = values.iter().map(|y| dist(y, &fa)).max().expect("a itself is sampled");
    Ok(LocalSpread { value_at_point: fa, spread: XScalar::Finite(spread), samples: values.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funlim::expr::Expr;
    use crate::funlim::model::Generator;
    use crate::scalar::{int, rat};

    fn sched() -> GridSchedule {
        GridSchedule::halving(6, 17).unwrap()
    }

    #[test]
    fn sign_at_zero_has_defect_one() {
        let f = FunctionModel::expr("x / abs(x)").unwrap();
        let est = region_defect_estimate(&f, &Interval::point(int(0)), &int(0), &sched()).unwrap();
        assert!(est.estimates().iter().all(|v| *v == int(1)));
        assert_eq!(est.stabilized_at(&rat(1, 1000)), 0);
    }

    #[test]
    fn floor_at_three() {
        let f = FunctionModel::expr("floor(x)").unwrap();
        let est = region_defect_estimate(&f, &Interval::point(int(3)), &rat(5, 2), &sched()).unwrap();
        assert_eq!(est.final_estimate(), &rat(1, 2));
        let weak = weak_region_defect_estimate(&f, &Interval::point(int(3)), &int(2), &sched()).unwrap();
        assert_eq!(weak.final_estimate(), &int(0));
    }

    #[test]
    fn identity_on_unit_interval_approaches_half() {
        let f = FunctionModel::expr("x").unwrap();
        let region = Interval::new(int(0), int(1)).unwrap();
        let est = region_defect_estimate(&f, &region, &rat(1, 2), &sched()).unwrap();
        for l in &est.levels {
            assert_eq!(l.value, rat(1, 2) + &l.margin);
        }
        let est = region_defect_estimate(&f, &region, &int(2), &sched()).unwrap();
        for l in &est.levels {
            assert_eq!(l.value, int(2) + &l.margin);
        }
    }

    #[test]
    fn empty_sample_is_an_error() {
        let f = FunctionModel::Generator(
            Generator::new(Expr::X).with_domain(GeneratorDomain::Interval(Interval::new(int(10), int(11)).unwrap())),
        );
        assert_eq!(
            region_defect_estimate(&f, &Interval::point(int(0)), &int(0), &sched()),
            Err(Error::EmptySample)
        );
        assert_eq!(
            cluster_values_estimate(&f, &Interval::point(int(0)), &sched()),
            Err(Error::EmptySample)
        );
    }

    #[test]
    fn cluster_examples() {
        let sign = FunctionModel::expr("sign(x)").unwrap();
        let rep = cluster_values_estimate(&sign, &Interval::point(int(0)), &sched()).unwrap();
        assert_eq!(rep.values(), vec![int(-1), int(1)]);
        assert!(rep.clusters.iter().all(|c| c.converged && c.stable_from == Some(0)));

        let floor = FunctionModel::expr("floor(x)").unwrap();
        let rep = cluster_values_estimate(&floor, &Interval::point(int(3)), &sched()).unwrap();
        assert_eq!(rep.values(), vec![int(2), int(3)]);
        assert_eq!(rep.weak_defect(&rat(5, 2)), rat(1, 2));
        assert!(rep.is_weak_r_limit(&rat(5, 2), &rat(1, 2)));

        let seven = FunctionModel::expr("7").unwrap();
        let rep = cluster_values_estimate(&seven, &Interval::new(int(0), int(1)).unwrap(), &sched()).unwrap();
        assert_eq!(rep.values(), vec![int(7)]);
    }

    #[test]
    fn continuum_cluster_does_not_converge() {
        let f = FunctionModel::expr("x").unwrap();
        let rep = cluster_values_estimate(&f, &Interval::new(int(0), int(1)).unwrap(), &sched()).unwrap();
        assert_eq!(rep.clusters.len(), 1);
        let c = &rep.clusters[0];
        assert!(!c.converged);
        assert!(c.lo < int(0) && c.hi > int(1));
        // Every point of [0, 1] is a weak 0-limit.
        assert!(rep.is_weak_r_limit(&rat(1, 3), &int(0)));
    }

    #[test]
    fn almost_constant_examples() {
        let region = Interval::new(int(0), int(1)).unwrap();
        let seven = FunctionModel::expr("7").unwrap();
        assert_eq!(almost_constant_check(&seven, &region, &sched()).unwrap().value, Some(int(7)));
        let id = FunctionModel::expr("x").unwrap();
        assert!(!almost_constant_check(&id, &region, &sched()).unwrap().holds());
        let swapped = FunctionModel::Generator(
            Generator::new(Expr::X).with_overrides([(rat(1, 3), rat(2, 3)), (rat(2, 3), rat(1, 3))].into()),
        );
        assert!(!almost_constant_check(&swapped, &region, &sched()).unwrap().holds());
        // Isolated overrides are ignored.
        let spiked = FunctionModel::Generator(
            Generator::new(Expr::Const(int(7))).with_overrides([(rat(1, 2), int(100))].into()),
        );
        assert_eq!(almost_constant_check(&spiked, &region, &sched()).unwrap().value, Some(int(7)));
    }

    #[test]
    fn spread_examples() {
        let floor = FunctionModel::expr("floor(x)").unwrap();
        let s = local_spread(&floor, &rat(9, 10), &rat(1, 5), 41).unwrap();
        assert_eq!(s.spread, XScalar::Finite(int(1)));
        assert_eq!(s.witness(), Some((int(0), int(1))));
        let c = FunctionModel::expr("3/4").unwrap();
        assert_eq!(local_spread(&c, &int(5), &int(9), 11).unwrap().spread, XScalar::zero());
        let id = FunctionModel::expr("x").unwrap();
        assert_eq!(local_spread(&id, &int(0), &int(2), 11).unwrap().spread, XScalar::Finite(int(2)));
        let sign = FunctionModel::expr("sign(x)").unwrap();
        assert_eq!(local_spread(&sign, &int(0), &int(1), 11), Err(Error::PointNotInDomain(int(0))));
        assert!(local_spread(&id, &int(0), &int(0), 11).is_err());
    }
}
