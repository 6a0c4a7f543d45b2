use std::fmt;

use num_traits::{Signed, Zero};

use crate::certalg::term::Term;
use crate::error::{Error, Result};
use crate::funlim::Expr;
use crate::scalar::{fmt_rational, parse_rational, Interval, Scalar};

/// A continuous, strictly monotone, piecewise-linear map with exact inverse.
///
/// The piece left of the first breakpoint is `slopes[0] * x + intercept`;
/// later pieces are fixed by continuity. An optional domain restricts the map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    breakpoints: Vec<Scalar>,
    slopes: Vec<Scalar>,
    intercept: Scalar,
    domain: Option<Interval>,
}

impl MonotoneMap {
    pub fn new(breakpoints: Vec<Scalar>, slopes: Vec<Scalar>, intercept: Scalar, domain: Option<Interval>) -> Result<Self> {
        if slopes.len() != breakpoints.len() + 1 {
            return Err(Error::InvariantViolation("need exactly one more slope than breakpoints".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvariantViolation("breakpoints must be strictly increasing".into()));
        }
        let increasing = slopes[0].is_positive();
        if slopes.iter().any(|s| s.is_zero() || s.is_positive() != increasing) {
            return Err(Error::InvariantViolation("slopes must be nonzero and share one sign".into()));
        }
        if domain.as_ref().is_some_and(Interval::is_degenerate) {
            return Err(Error::InvariantViolation("map domain must have positive length".into()));
        }
        Ok(MonotoneMap { breakpoints, slopes, intercept, domain })
    }

    /// `x -> slope * x + intercept`.
    pub fn linear(slope: Scalar, intercept: Scalar) -> Result<Self> {
        MonotoneMap::new(Vec::new(), vec![slope], intercept, None)
    }

    pub fn identity() -> Self {
        MonotoneMap::linear(crate::scalar::one(), Scalar::zero()).expect("valid")
    }

    pub fn is_increasing(&self) -> bool {
        self.slopes[0].is_positive()
    }

    pub fn domain(&self) -> Option<&Interval> {
        self.domain.as_ref()
    }

    /// Intercept of every piece.
    fn intercepts(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.slopes.len());
        out.push(self.intercept.clone());
        for (j, b) in self.breakpoints.iter().enumerate() {
            let prev = &out[j];
            out.push(prev + (&self.slopes[j] - &self.slopes[j + 1]) * b);
        }
        out
    }

    fn piece_of(&self, x: &Scalar) -> usize {
        self.breakpoints.iter().take_while(|b| *b <= x).count()
    }

    /// `g(x)`, ignoring the domain restriction.
    pub fn apply(&self, x: &Scalar) -> Scalar {
        let j = self.piece_of(x);
        &self.slopes[j] * x + &self.intercepts()[j]
    }

    /// `g^{-1}(y)`, or `None` if `y` is not attained on the domain.
    pub fn inverse(&self, y: &Scalar) -> Option<Scalar> {
        let c = self.intercepts();
        let values: Vec<Scalar> = self.breakpoints.iter().map(|b| self.apply(b)).collect();
        // Count breakpoints whose image lies on the "left" of y in the map's direction.
        let j = if self.is_increasing() {
            values.iter().take_while(|v| *v <= y).count()
        } else {
            values.iter().take_while(|v| *v >= y).count()
        };
        let x = (y - &c[j]) / &self.slopes[j];
        match &self.domain {
            Some(d) if !d.contains(&x) => None,
            _ => Some(x),
        }
    }

    /// The image of the domain; `None` means all of R.
    pub fn range(&self) -> Option<Interval> {
        self.domain.as_ref().map(|d| self.image(d))
    }

    pub fn image(&self, i: &Interval) -> Interval {
        let (p, q) = (self.apply(i.lo()), self.apply(i.hi()));
        if p <= q { Interval::new(p, q) } else { Interval::new(q, p) }.expect("ordered")
    }

    /// `{x : g(x) in i}` intersected with the domain.
    pub fn preimage(&self, i: &Interval) -> Option<Interval> {
        let clipped = match self.range() {
            Some(r) => r.intersect(i)?,
            None => i.clone(),
        };
        let (p, q) = (self.inverse(clipped.lo())?, self.inverse(clipped.hi())?);
        Some(if p <= q { Interval::new(p, q) } else { Interval::new(q, p) }.expect("ordered"))
    }

    /// Whether `y` has a neighborhood inside the range.
    pub fn covers_neighborhood_of(&self, y: &Scalar) -> bool {
        match self.range() {
            None => true,
            Some(r) => r.lo() < y && y < r.hi(),
        }
    }

    /// `s0 * x + c0 + sum_j (s_j - s_{j-1}) * max(0, x - b_j)`.
    pub fn to_expr(&self) -> Expr {
        let mut e = Expr::plus(
            Expr::times(Expr::Const(self.slopes[0].clone()), Expr::X),
            Expr::Const(self.intercept.clone()),
        );
        for (j, b) in self.breakpoints.iter().enumerate() {
            let kink = &self.slopes[j + 1] - &self.slopes[j];
            let hinge = Expr::max(Expr::Const(Scalar::zero()), Expr::minus(Expr::X, Expr::Const(b.clone())));
            e = Expr::plus(e, Expr::times(Expr::Const(kink), hinge));
        }
        e
    }

    pub(crate) fn from_term(t: &Term) -> Result<Self> {
        let Term::Call(name, args) = t else {
            return Err(Error::invalid("expected pl(...)"));
        };
        if name != "pl" {
            return Err(Error::invalid(format!("expected pl(...), found `{name}`")));
        }
        let (mut intercept, mut slopes, mut breaks, mut domain) = (None, None, Some(Vec::new()), None);
        let rats = |t: &Term| -> Result<Vec<Scalar>> { t.list()?.iter().map(|x| parse_rational(x.atom()?)).collect() };
        for (key, value) in args {
            match key.as_deref() {
                Some("intercept") => intercept = Some(parse_rational(value.atom()?)?),
                Some("slopes") => slopes = Some(rats(value)?),
                Some("breaks") => breaks = Some(rats(value)?),
                Some("domain") => {
                    domain = match value {
                        Term::Atom(a) if a == "all" => None,
                        other => {
                            let ends = rats(other)?;
                            if ends.len() != 2 {
                                return Err(Error::invalid("map domain needs two endpoints"));
                            }
                            Some(Interval::new(ends[0].clone(), ends[1].clone())?)
                        }
                    }
                }
                _ => return Err(Error::invalid("pl(...) takes intercept=, slopes=, breaks=, domain=")),
            }
        }
        MonotoneMap::new(
            breaks.unwrap_or_default(),
            slopes.ok_or_else(|| Error::invalid("pl(...) needs slopes="))?,
            intercept.unwrap_or_else(Scalar::zero),
            domain,
        )
    }

    pub fn parse(src: &str) -> Result<Self> {
        MonotoneMap::from_term(&Term::parse(src)?)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Scalar]| v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "pl(intercept={}, slopes=[{}], breaks=[{}], domain=",
            fmt_rational(&self.intercept),
            list(&self.slopes),
            list(&self.breakpoints)
        )?;
        match &self.domain {
            None => f.write_str("all)"),
            Some(d) => write!(f, "[{}, {}])", fmt_rational(d.lo()), fmt_rational(d.hi())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn kinked() -> MonotoneMap {
        // 2x on x < 1, then slope 1/2, then slope 3 after x = 4.
        MonotoneMap::new(vec![int(1), int(4)], vec![int(2), rat(1, 2), int(3)], int(0), None).unwrap()
    }

    #[test]
    fn apply_is_continuous() {
        let g = kinked();
        assert_eq!(g.apply(&int(0)), int(0));
        assert_eq!(g.apply(&int(1)), int(2));
        assert_eq!(g.apply(&int(4)), rat(7, 2));
        assert_eq!(g.apply(&int(5)), rat(13, 2));
    }

    #[test]
    fn inverse_round_trips() {
        let g = kinked();
        for k in -20..40 {
            let x = rat(k, 4);
            assert_eq!(g.inverse(&g.apply(&x)), Some(x.clone()));
            assert_eq!(g.to_expr().eval(&x), Some(g.apply(&x)));
        }
        let d = MonotoneMap::new(vec![int(0)], vec![int(-1), int(-3)], int(1), None).unwrap();
        for k in -20..20 {
            let x = rat(k, 3);
            assert_eq!(d.inverse(&d.apply(&x)), Some(x.clone()));
            assert_eq!(d.to_expr().eval(&x), Some(d.apply(&x)));
        }
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(MonotoneMap::new(vec![], vec![int(0)], int(0), None).is_err());
        assert!(MonotoneMap::new(vec![int(0)], vec![int(1), int(-1)], int(0), None).is_err());
        assert!(MonotoneMap::new(vec![int(1), int(0)], vec![int(1), int(1), int(1)], int(0), None).is_err());
        assert!(MonotoneMap::new(vec![], vec![int(1), int(1)], int(0), None).is_err());
    }

    #[test]
    fn restricted_domain_limits_range() {
        let g = MonotoneMap::new(vec![], vec![int(2)], int(0), Some(Interval::new(int(0), int(1)).unwrap())).unwrap();
        assert_eq!(g.range(), Some(Interval::new(int(0), int(2)).unwrap()));
        assert!(g.covers_neighborhood_of(&int(1)));
        assert!(!g.covers_neighborhood_of(&int(2)));
        assert_eq!(g.inverse(&int(3)), None);
        assert_eq!(
            g.preimage(&Interval::new(int(1), int(5)).unwrap()),
            Some(Interval::new(rat(1, 2), int(1)).unwrap())
        );
    }

    #[test]
    fn text_round_trip() {
        for g in [kinked(), MonotoneMap::identity(), MonotoneMap::new(vec![], vec![int(-1)], int(5), Some(Interval::new(int(0), int(2)).unwrap())).unwrap()] {
            assert_eq!(MonotoneMap::parse(&g.to_string()).unwrap(), g);
        }
    }
}
