use std::collections::BTreeMap;
use std::fmt;

use crate::certalg::map::MonotoneMap;
use crate::certalg::term::Term;
use crate::error::{Error, Result};
use crate::funlim::{Expr, FunctionModel, Generator, GeneratorDomain};
use crate::scalar::{fmt_rational, parse_rational, Scalar};

/// Names a function model: a registered one, or one built from others.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModelRef {
    Named(String),
    Sum(Box<ModelRef>, Box<ModelRef>),
    Difference(Box<ModelRef>, Box<ModelRef>),
    Scaled(Scalar, Box<ModelRef>),
    /// `x -> f(g(x))`.
    Composed(Box<ModelRef>, MonotoneMap),
}

impl ModelRef {
    pub fn named(name: impl Into<String>) -> Self {
        ModelRef::Named(name.into())
    }

    pub fn sum(a: ModelRef, b: ModelRef) -> Self {
        ModelRef::Sum(Box::new(a), Box::new(b))
    }

    pub fn difference(a: ModelRef, b: ModelRef) -> Self {
        ModelRef::Difference(Box::new(a), Box::new(b))
    }

    pub fn scaled(k: Scalar, f: ModelRef) -> Self {
        ModelRef::Scaled(k, Box::new(f))
    }

    pub fn composed(f: ModelRef, g: MonotoneMap) -> Self {
        ModelRef::Composed(Box::new(f), g)
    }

    pub fn parse(src: &str) -> Result<Self> {
        ModelRef::from_term(&Term::parse(src)?)
    }

    fn from_term(t: &Term) -> Result<Self> {
        match t {
            Term::Atom(name) => {
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c)) {
                    return Err(Error::invalid(format!("bad model name `{name}`")));
                }
                Ok(ModelRef::Named(name.clone()))
            }
            Term::Call(op, args) => {
                if args.iter().any(|(k, _)| k.is_some()) || args.len() != 2 {
                    return Err(Error::invalid(format!("{op}(...) takes two positional arguments")));
                }
                let (x, y) = (&args[0].1, &args[1].1);
                match op.as_str() {
                    "sum" => Ok(ModelRef::sum(Self::from_term(x)?, Self::from_term(y)?)),
                    "diff" => Ok(ModelRef::difference(Self::from_term(x)?, Self::from_term(y)?)),
                    "scale" => Ok(ModelRef::scaled(parse_rational(x.atom()?)?, Self::from_term(y)?)),
                    "compose" => Ok(ModelRef::composed(Self::from_term(x)?, MonotoneMap::from_term(y)?)),
                    other => Err(Error::invalid(format!("unknown model operation `{other}`"))),
                }
            }
            Term::List(_) => Err(Error::invalid("a model reference cannot be a list")),
        }
    }

    /// Builds the referenced model from the registry.
    pub fn resolve(&self, registry: &ModelRegistry) -> Result<FunctionModel> {
        match self {
            ModelRef::Named(n) => registry.get(n).cloned(),
            ModelRef::Sum(a, b) => pointwise(&a.resolve(registry)?, &b.resolve(registry)?, false),
            ModelRef::Difference(a, b) => pointwise(&a.resolve(registry)?, &b.resolve(registry)?, true),
            ModelRef::Scaled(k, f) => Ok(scale(k, f.resolve(registry)?)),
            ModelRef::Composed(f, g) => compose(f.resolve(registry)?, g),
        }
    }
}

impl fmt::Display for ModelRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelRef::Named(n) => f.write_str(n),
            ModelRef::Sum(a, b) => write!(f, "sum({a}, {b})"),
            ModelRef::Difference(a, b) => write!(f, "diff({a}, {b})"),
            ModelRef::Scaled(k, m) => write!(f, "scale({}, {m})", fmt_rational(k)),
            ModelRef::Composed(m, g) => write!(f, "compose({m}, {g})"),
        }
    }
}

/// Read-only name -> model map.
#[derive(Debug, Clone, Default)]
pub struct ModelRegistry {
    models: BTreeMap<String, FunctionModel>,
}

impl ModelRegistry {
    pub fn new() -> Self {
        ModelRegistry::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, model: FunctionModel) -> &mut Self {
        self.models.insert(name.into(), model);
        self
    }

    pub fn with(mut self, name: impl Into<String>, model: FunctionModel) -> Self {
        self.insert(name, model);
        self
    }

    pub fn get(&self, name: &str) -> Result<&FunctionModel> {
        self.models.get(name).ok_or_else(|| Error::UnknownModel(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.models.keys().map(String::as_str)
    }
}

fn finite_table(t: BTreeMap<Scalar, Scalar>) -> Result<FunctionModel> {
    if t.is_empty() {
        return Err(Error::NoAdmissibleSequence);
    }
    Ok(FunctionModel::Discrete(t))
}

fn pointwise(f: &FunctionModel, g: &FunctionModel, subtract: bool) -> Result<FunctionModel> {
    let op = |u: Scalar, v: Scalar| if subtract { u - v } else { u + v };
    // A finite domain on either side makes the result finite.
    if let Some(points) = f.finite_points().or_else(|| g.finite_points()) {
        let t = points
            .keys()
            .filter_map(|x| Some((x.clone(), op(f.eval(x)?, g.eval(x)?))))
            .collect();
        return finite_table(t);
    }
    let (FunctionModel::Generator(p), FunctionModel::Generator(q)) = (f, g) else {
        unreachable!("non-generator models have finite points")
    };
    let domain = p.domain.intersect(&q.domain).ok_or(Error::NoAdmissibleSequence)?;
    let expr = if subtract {
        Expr::minus(p.expr.clone(), q.expr.clone())
    } else {
        Expr::plus(p.expr.clone(), q.expr.clone())
    };
    let overrides = p
        .overrides
        .keys()
        .chain(q.overrides.keys())
        .filter_map(|x| Some((x.clone(), op(p.eval(x)?, q.eval(x)?))))
        .collect();
    Ok(FunctionModel::Generator(Generator { expr, overrides, domain }))
}

fn scale(k: &Scalar, f: FunctionModel) -> FunctionModel {
    match f {
        FunctionModel::Discrete(t) => FunctionModel::Discrete(t.into_iter().map(|(x, y)| (x, k * y)).collect()),
        FunctionModel::Generator(g) => FunctionModel::Generator(Generator {
            expr: Expr::times(Expr::Const(k.clone()), g.expr),
            overrides: g.overrides.into_iter().map(|(x, y)| (x, k * y)).collect(),
            domain: g.domain,
        }),
    }
}

fn compose(f: FunctionModel, g: &MonotoneMap) -> Result<FunctionModel> {
    let pull = |t: BTreeMap<Scalar, Scalar>| -> BTreeMap<Scalar, Scalar> {
        t.into_iter().filter_map(|(y, v)| Some((g.inverse(&y)?, v))).collect()
    };
    match f {
        FunctionModel::Discrete(t) => finite_table(pull(t)),
        FunctionModel::Generator(gen) => {
            let domain = match gen.domain {
                GeneratorDomain::OverridesOnly => GeneratorDomain::OverridesOnly,
                GeneratorDomain::AllReals => match g.domain() {
                    Some(d) => GeneratorDomain::Interval(d.clone()),
                    None => GeneratorDomain::AllReals,
                },
                GeneratorDomain::Interval(i) => {
                    GeneratorDomain::Interval(g.preimage(&i).ok_or(Error::NoAdmissibleSequence)?)
                }
            };
            let overrides = pull(gen.overrides);
            if domain == GeneratorDomain::OverridesOnly && overrides.is_empty() {
                return Err(Error::NoAdmissibleSequence);
            }
            Ok(FunctionModel::Generator(Generator { expr: gen.expr.substitute(&g.to_expr()), overrides, domain }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Interval};

    fn registry() -> ModelRegistry {
        ModelRegistry::new()
            .with("id", FunctionModel::tabulate((-10..=10).map(int), |x| x.clone()).unwrap())
            .with("sign", FunctionModel::expr("sign(x)").unwrap())
            .with("five", FunctionModel::expr("5").unwrap())
            .with("sq", FunctionModel::tabulate((0..=4).map(int), |x| x * x).unwrap())
    }

    #[test]
    fn text_round_trip() {
        let g = MonotoneMap::linear(int(2), int(-1)).unwrap();
        let m = ModelRef::composed(
            ModelRef::sum(ModelRef::named("sign"), ModelRef::scaled(rat(-1, 2), ModelRef::named("five"))),
            g,
        );
        assert_eq!(ModelRef::parse(&m.to_string()).unwrap(), m);
        assert_eq!(m.to_string(), "compose(sum(sign, scale(-1/2, five)), pl(intercept=-1/1, slopes=[2/1], breaks=[], domain=all))");
        assert!(ModelRef::parse("prod(a, b)").is_err());
        assert!(ModelRef::parse("sum(a)").is_err());
    }

    #[test]
    fn tables_combine_on_common_keys() {
        let r = registry();
        let m = ModelRef::difference(ModelRef::named("id"), ModelRef::named("sq")).resolve(&r).unwrap();
        let t = m.finite_points().unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t[&int(3)], int(-6));
        // A table plus a generator stays finite.
        let m = ModelRef::sum(ModelRef::named("sign"), ModelRef::named("id")).resolve(&r).unwrap();
        let t = m.finite_points().unwrap();
        assert_eq!(t.len(), 20);
        assert_eq!(t[&int(-2)], int(-3));
    }

    #[test]
    fn generators_combine_symbolically() {
        let r = registry();
        let m = ModelRef::sum(ModelRef::named("sign"), ModelRef::named("five")).resolve(&r).unwrap();
        assert_eq!(m.eval(&rat(1, 3)), Some(int(6)));
        assert_eq!(m.eval(&int(0)), None);
        let m = ModelRef::scaled(int(-2), ModelRef::named("sign")).resolve(&r).unwrap();
        assert_eq!(m.eval(&int(4)), Some(int(-2)));
    }

    #[test]
    fn composition_pulls_back_points_and_domains() {
        let r = registry();
        let shift = MonotoneMap::linear(int(1), int(5)).unwrap();
        let m = ModelRef::composed(ModelRef::named("id"), shift.clone()).resolve(&r).unwrap();
        assert_eq!(m.eval(&int(-2)), Some(int(3)));
        let reg = r.with(
            "boxed",
            FunctionModel::Generator(
                Generator::new(Expr::X).with_domain(GeneratorDomain::Interval(Interval::new(int(0), int(1)).unwrap())),
            ),
        );
        let m = ModelRef::composed(ModelRef::named("boxed"), shift).resolve(&reg).unwrap();
        assert_eq!(m.eval(&rat(-9, 2)), Some(rat(1, 2)));
        assert_eq!(m.eval(&int(0)), None);
        let far = MonotoneMap::new(vec![], vec![int(1)], int(0), Some(Interval::new(int(5), int(6)).unwrap())).unwrap();
        assert_eq!(
            ModelRef::composed(ModelRef::named("boxed"), far).resolve(&reg),
            Err(Error::NoAdmissibleSequence)
        );
    }

    #[test]
    fn unknown_names_are_reported() {
        assert_eq!(ModelRef::named("nope").resolve(&registry()), Err(Error::UnknownModel("nope".into())));
    }
}
