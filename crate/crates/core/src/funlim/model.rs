use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::funlim::expr::Expr;
use crate::scalar::{Interval, Scalar};

/// The continuum part of a generator's domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneratorDomain {
    AllReals,
    Interval(Interval),
    /// Only the override points are in the domain.
    OverridesOnly,
}

impl GeneratorDomain {
    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            GeneratorDomain::AllReals => true,
            GeneratorDomain::Interval(i) => i.contains(x),
            GeneratorDomain::OverridesOnly => false,
        }
    }

    /// `None` when the continuum parts do not meet.
    pub fn intersect(&self, other: &GeneratorDomain) -> Option<GeneratorDomain> {
        use GeneratorDomain::*;
        match (self, other) {
            (OverridesOnly, _) | (_, OverridesOnly) => Some(OverridesOnly),
            (AllReals, d) | (d, AllReals) => Some(d.clone()),
            (Interval(a), Interval(b)) => a.intersect(b).map(Interval),
        }
    }
}

/// A guarded expression with finitely many overridden points.
///
/// `Dom f` is the set of continuum-domain points where `expr` is defined,
/// plus every override point. Overrides take precedence over `expr`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub expr: Expr,
    pub overrides: BTreeMap<Scalar, Scalar>,
    pub domain: GeneratorDomain,
}

impl Generator {
    pub fn new(expr: Expr) -> Self {
        Generator { expr, overrides: BTreeMap::new(), domain: GeneratorDomain::AllReals }
    }

    pub fn with_domain(mut self, domain: GeneratorDomain) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_overrides(mut self, overrides: BTreeMap<Scalar, Scalar>) -> Self {
        self.overrides = overrides;
        self
    }

    /// A finite table viewed as a generator whose domain is exactly the table keys.
    pub fn from_table(entries: BTreeMap<Scalar, Scalar>) -> Self {
        Generator {
            expr: Expr::Const(crate::scalar::zero()),
            overrides: entries,
            domain: GeneratorDomain::OverridesOnly,
        }
    }

    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        if let Some(v) = self.overrides.get(x) {
            return Some(v.clone());
        }
        self.eval_continuum(x)
    }

    /// Evaluation ignoring overrides; `None` outside the continuum domain.
    pub fn eval_continuum(&self, x: &Scalar) -> Option<Scalar> {
        if !self.domain.contains(x) {
            return None;
        }
        self.expr.eval(x)
    }
}

/// A partial function `R -> R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FunctionModel {
    /// A finite, nonempty table: the domain is exactly its keys.
    Discrete(BTreeMap<Scalar, Scalar>),
    Generator(Generator),
}

impl FunctionModel {
    pub fn table(entries: BTreeMap<Scalar, Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvariantViolation("a discrete table needs at least one entry".into()));
        }
        Ok(FunctionModel::Discrete(entries))
    }

    /// Tabulates `f` on the given points.
    pub fn tabulate(points: impl IntoIterator<Item = Scalar>, f: impl Fn(&Scalar) -> Scalar) -> Result<Self> {
        FunctionModel::table(points.into_iter().map(|x| {
            let y = f(&x);
            (x, y)
        }).collect())
    }

    pub fn expr(src: &str) -> Result<Self> {
        Ok(FunctionModel::Generator(Generator::new(Expr::parse(src)?)))
    }

    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        match self {
            FunctionModel::Discrete(t) => t.get(x).cloned(),
            FunctionModel::Generator(g) => g.eval(x),
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, FunctionModel::Discrete(_))
    }

    /// Finitely many explicitly listed points, when the domain is finite.
    pub fn finite_points(&self) -> Option<&BTreeMap<Scalar, Scalar>> {
        match self {
            FunctionModel::Discrete(t) => Some(t),
            FunctionModel::Generator(g) if g.domain == GeneratorDomain::OverridesOnly => Some(&g.overrides),
            FunctionModel::Generator(_) => None,
        }
    }
}
