//! Issuing, deriving and re-checking limit certificates.
//!
//! Every certificate a [`Prover`] returns has been re-checked against its own
//! model, so a derivation rule can never emit something `verify` rejects.

use num_traits::{Signed, Zero};

use crate::certalg::certificate::{Evidence, LimitCertificate, LimitKind, Provenance, Rule};
use crate::certalg::map::MonotoneMap;
use crate::certalg::model_ref::{ModelRef, ModelRegistry};
use crate::error::{Error, Result};
use crate::funlim::schedule::sample_region;
use crate::funlim::{qr_defect_discrete, region_defect_estimate, weak_qr_defect_discrete, weak_region_defect_estimate};
use crate::funlim::{FunctionModel, GridSchedule, Table};
use crate::scalar::{Interval, Scalar, XScalar};

/// How strongly a lower-bound claim was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationLevel {
    /// Every admissible point was inspected.
    Exhaustive,
    /// Only the finest-level grid samples were inspected.
    Sampled,
}

/// `f(x) > bound` for the admissible points around `a` within `region`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundClaim {
    pub bound: Scalar,
    pub a: Scalar,
    pub region: Interval,
    pub level: VerificationLevel,
    pub points_checked: usize,
    /// First scanned point where the bound fails.
    pub violation: Option<Scalar>,
}

impl BoundClaim {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Plus,
    Minus,
}

pub struct Prover {
    registry: ModelRegistry,
    schedule: GridSchedule,
}

fn non_negative(name: &str, v: &Scalar) -> Result<()> {
    if v.is_negative() {
        return Err(Error::invalid(format!("{name} must be non-negative")));
    }
    Ok(())
}

impl Prover {
    pub fn new(registry: ModelRegistry, schedule: GridSchedule) -> Self {
        Prover { registry, schedule }
    }

    pub fn registry(&self) -> &ModelRegistry {
        &self.registry
    }

    pub fn schedule(&self) -> &GridSchedule {
        &self.schedule
    }

    /// The defect the certificate's judgment is checked against.
    pub fn defect(&self, model: &FunctionModel, a: &Scalar, q: &Scalar, b: &Scalar, kind: LimitKind) -> Result<Evidence> {
        non_negative("q", q)?;
        if let Some(points) = model.finite_points() {
            let table: &Table = points;
            let d = match kind {
                LimitKind::Strong => qr_defect_discrete(table, a, q, b)?,
                LimitKind::Weak => weak_qr_defect_discrete(table, a, q, b)?,
            };
            let XScalar::Finite(defect) = d else { unreachable!("finite table defects are finite") };
            return Ok(Evidence::Exact { defect });
        }
        let region = Interval::around(a, q)?;
        let est = match kind {
            LimitKind::Strong => region_defect_estimate(model, &region, b, &self.schedule)?,
            LimitKind::Weak => weak_region_defect_estimate(model, &region, b, &self.schedule)?,
        };
        let last = est.levels.last().expect("schedule is nonempty");
        Ok(Evidence::Sampled { defect: last.value.clone(), levels: est.levels.len(), samples: last.samples })
    }

    /// Issues a checked certificate iff the defect is at most `r`.
    pub fn check(&self, model: ModelRef, a: Scalar, q: Scalar, r: Scalar, b: Scalar, kind: LimitKind) -> Result<LimitCertificate> {
        non_negative("r", &r)?;
        let resolved = model.resolve(&self.registry)?;
        let evidence = self.defect(&resolved, &a, &q, &b, kind)?;
        if *evidence.defect() > r {
            return Err(Error::ClaimRefuted { defect: XScalar::Finite(evidence.defect().clone()) });
        }
        Ok(LimitCertificate { model, a, q, r, b, kind, provenance: Provenance::Checked(evidence) })
    }

    /// Recomputes the defect; `Ok(false)` when the claim does not hold.
    pub fn verify(&self, c: &LimitCertificate) -> Result<bool> {
        if c.q.is_negative() || c.r.is_negative() {
            return Ok(false);
        }
        let model = c.model.resolve(&self.registry);
        let model = match model {
            Err(Error::UnknownModel(n)) => return Err(Error::UnknownModel(n)),
            Err(_) => return Ok(false),
            Ok(m) => m,
        };
        match self.defect(&model, &c.a, &c.q, &c.b, c.kind) {
            Ok(ev) => Ok(*ev.defect() <= c.r),
            Err(Error::NoAdmissibleSequence | Error::EmptySample) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Verifies every node of the derivation tree and replays each rule's arithmetic.
    pub fn verify_tree(&self, c: &LimitCertificate) -> Result<bool> {
        if !self.verify(c)? || !rule_consistent(c) {
            return Ok(false);
        }
        for p in c.parents() {
            if !self.verify_tree(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn emit(&self, c: LimitCertificate) -> Result<LimitCertificate> {
        let model = c.model.resolve(&self.registry)?;
        let ev = self.defect(&model, &c.a, &c.q, &c.b, c.kind)?;
        if *ev.defect() > c.r {
            return Err(Error::DerivationRejected { defect: XScalar::Finite(ev.defect().clone()) });
        }
        Ok(c)
    }

    /// Moves to `(u, v)`: strong claims may shrink q, weak claims may grow it; r may only grow.
    pub fn widen(&self, c: &LimitCertificate, u: Scalar, v: Scalar) -> Result<LimitCertificate> {
        non_negative("q", &u)?;
        non_negative("r", &v)?;
        if v < c.r {
            return Err(Error::InvalidWidening("r may not decrease".into()));
        }
        match c.kind {
            LimitKind::Strong if u > c.q => return Err(Error::InvalidWidening("a strong claim may not grow q".into())),
            LimitKind::Weak if u < c.q => return Err(Error::InvalidWidening("a weak claim may not shrink q".into())),
            _ => {}
        }
        self.emit(LimitCertificate {
            model: c.model.clone(),
            a: c.a.clone(),
            q: u,
            r: v,
            b: c.b.clone(),
            kind: c.kind,
            provenance: Provenance::Derived { rule: Rule::Widen, parents: vec![c.clone()] },
        })
    }

    pub fn combine(&self, c1: &LimitCertificate, c2: &LimitCertificate, op: CombineOp) -> Result<LimitCertificate> {
        if c1.kind != LimitKind::Strong || c2.kind != LimitKind::Strong {
            return Err(Error::IncompatibleCertificates("arithmetic needs strong certificates".into()));
        }
        if c1.a != c2.a {
            return Err(Error::IncompatibleCertificates("certificates are at different points".into()));
        }
        let (model, b, rule) = match op {
            CombineOp::Plus => (ModelRef::sum(c1.model.clone(), c2.model.clone()), &c1.b + &c2.b, Rule::Plus),
            CombineOp::Minus => (ModelRef::difference(c1.model.clone(), c2.model.clone()), &c1.b - &c2.b, Rule::Minus),
        };
        self.emit(LimitCertificate {
            model,
            a: c1.a.clone(),
            q: c1.q.clone().min(c2.q.clone()),
            r: &c1.r + &c2.r,
            b,
            kind: LimitKind::Strong,
            provenance: Provenance::Derived { rule, parents: vec![c1.clone(), c2.clone()] },
        })
    }

    pub fn scale(&self, c: &LimitCertificate, k: Scalar) -> Result<LimitCertificate> {
        if c.kind != LimitKind::Strong {
            return Err(Error::IncompatibleCertificates("scaling needs a strong certificate".into()));
        }
        self.emit(LimitCertificate {
            model: ModelRef::scaled(k.clone(), c.model.clone()),
            a: c.a.clone(),
            q: c.q.clone(),
            r: &c.r * k.abs(),
            b: &c.b * &k,
            kind: LimitKind::Strong,
            provenance: Provenance::Derived { rule: Rule::Scale, parents: vec![c.clone()] },
        })
    }

    /// `g <= f <= h` near `a` with matching strong claims on `g` and `h` transfers to `f`.
    ///
    /// Domination is checked on every table entry in `[a - q, a + q]`, or on
    /// every scheduled sample of `f` for generators.
    pub fn squeeze(&self, cg: &LimitCertificate, ch: &LimitCertificate, f: ModelRef) -> Result<LimitCertificate> {
        if cg.kind != LimitKind::Strong || ch.kind != LimitKind::Strong {
            return Err(Error::IncompatibleCertificates("squeeze needs strong certificates".into()));
        }
        if (&cg.a, &cg.q, &cg.r, &cg.b) != (&ch.a, &ch.q, &ch.r, &ch.b) {
            return Err(Error::IncompatibleCertificates("bounding certificates must share a, q, r and b".into()));
        }
        let (g, h, fm) = (
            cg.model.resolve(&self.registry)?,
            ch.model.resolve(&self.registry)?,
            f.resolve(&self.registry)?,
        );
        let region = Interval::around(&cg.a, &cg.q)?;
        let points: Vec<(Scalar, Scalar)> = match fm.finite_points() {
            Some(t) => t.range(region.lo().clone()..=region.hi().clone()).map(|(x, y)| (x.clone(), y.clone())).collect(),
            None => self
                .schedule
                .levels()
                .iter()
                .flat_map(|m| sample_region(&fm, &region, m, self.schedule.samples_per_level()))
                .collect(),
        };
        for (x, y) in &points {
            match (g.eval(x), h.eval(x)) {
                (Some(lo), Some(hi)) if lo <= *y && *y <= hi => {}
                _ => return Err(Error::DominationFailure(x.clone())),
            }
        }
        self.emit(LimitCertificate {
            model: f,
            a: cg.a.clone(),
            q: cg.q.clone(),
            r: cg.r.clone(),
            b: cg.b.clone(),
            kind: LimitKind::Strong,
            provenance: Provenance::Derived { rule: Rule::Squeeze, parents: vec![cg.clone(), ch.clone()] },
        })
    }

    /// Point-case claim for `f` at `a` becomes a claim for `f(g(x))` at `g^{-1}(a)`.
    pub fn change_of_variable(&self, c: &LimitCertificate, g: MonotoneMap) -> Result<LimitCertificate> {
        if !c.q.is_zero() {
            return Err(Error::invalid("change of variable needs a point certificate (q = 0)"));
        }
        if !g.covers_neighborhood_of(&c.a) {
            return Err(Error::PointNotInRange(c.a.clone()));
        }
        let a = g.inverse(&c.a).ok_or_else(|| Error::PointNotInRange(c.a.clone()))?;
        self.emit(LimitCertificate {
            model: ModelRef::composed(c.model.clone(), g),
            a,
            q: c.q.clone(),
            r: c.r.clone(),
            b: c.b.clone(),
            kind: c.kind,
            provenance: Provenance::Derived { rule: Rule::ChangeOfVariable, parents: vec![c.clone()] },
        })
    }

    /// From `b > d + r`, claims `f > d` near `a` and scans the points to confirm it.
    pub fn lower_bound(&self, c: &LimitCertificate, d: Scalar) -> Result<BoundClaim> {
        if c.kind != LimitKind::Strong || c.b <= &d + &c.r {
            return Err(Error::BoundNotImplied);
        }
        let model = c.model.resolve(&self.registry)?;
        let region = Interval::around(&c.a, &c.q)?;
        let (level, points, region) = match model.finite_points() {
            Some(t) => {
                let pts = crate::funlim::admissible_set(t, &c.a, &c.q)
                    .into_iter()
                    .map(|(x, y)| (x.clone(), y.clone()))
                    .collect::<Vec<_>>();
                (VerificationLevel::Exhaustive, pts, region)
            }
            None => {
                let margin = self.schedule.finest();
                let pts = sample_region(&model, &region, margin, self.schedule.samples_per_level());
                (VerificationLevel::Sampled, pts, region.widen(margin))
            }
        };
        if points.is_empty() {
            return Err(Error::NoAdmissibleSequence);
        }
        let violation = points.iter().find(|(_, y)| *y <= d).map(|(x, _)| x.clone());
        Ok(BoundClaim { bound: d, a: c.a.clone(), region, level, points_checked: points.len(), violation })
    }
}

/// Whether a derived certificate's fields follow from its parents by its rule.
pub fn rule_consistent(c: &LimitCertificate) -> bool {
    let Provenance::Derived { rule, parents } = &c.provenance else {
        return true;
    };
    let strong = |x: &LimitCertificate| x.kind == LimitKind::Strong;
    match (rule, parents.as_slice()) {
        (Rule::Widen, [p]) => {
            let q_ok = match c.kind {
                LimitKind::Strong => c.q <= p.q,
                LimitKind::Weak => c.q >= p.q,
            };
            c.model == p.model && c.kind == p.kind && c.a == p.a && c.b == p.b && c.r >= p.r && q_ok
        }
        (Rule::Plus | Rule::Minus, [p1, p2]) => {
            let (model, b) = if *rule == Rule::Plus {
                (ModelRef::sum(p1.model.clone(), p2.model.clone()), &p1.b + &p2.b)
            } else {
                (ModelRef::difference(p1.model.clone(), p2.model.clone()), &p1.b - &p2.b)
            };
            strong(c) && strong(p1) && strong(p2)
                && c.model == model
                && c.a == p1.a
                && c.a == p2.a
                && c.q == p1.q.clone().min(p2.q.clone())
                && c.r == &p1.r + &p2.r
                && c.b == b
        }
        (Rule::Scale, [p]) => match &c.model {
            ModelRef::Scaled(k, inner) => {
                strong(c) && strong(p) && **inner == p.model && c.a == p.a && c.q == p.q && c.r == &p.r * k.abs() && c.b == &p.b * k
            }
            _ => false,
        },
        (Rule::Squeeze, [g, h]) => {
            strong(c) && strong(g) && strong(h)
                && [g, h].iter().all(|p| p.a == c.a && p.q == c.q && p.r == c.r && p.b == c.b)
        }
        (Rule::ChangeOfVariable, [p]) => match &c.model {
            ModelRef::Composed(inner, g) => {
                **inner == p.model
                    && c.kind == p.kind
                    && c.q.is_zero()
                    && p.q.is_zero()
                    && c.r == p.r
                    && c.b == p.b
                    && g.apply(&c.a) == p.a
            }
            _ => false,
        },
        _ => false,
    }
}
