//! Exact (q,r)-limits of functions on finite domains.
//!
//! On a finite domain a sequence q-converges to `a` iff it eventually stays in
//! the admissible set `S = {x in Dom f : x != a, |x - a| <= q}`, and the set
//! of points it visits infinitely often can be any nonempty subset of `S`.
//! The worst case visits all of `S` and the best case sits on one point, which
//! gives the closed forms below.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{dist, int, Interval, Scalar, XScalar};

pub type Table = BTreeMap<Scalar, Scalar>;

fn check_non_negative(name: &str, v: &Scalar) -> Result<()> {
    if v.is_negative() {
        return Err(Error::invalid(format!("{name} must be non-negative")));
    }
    Ok(())
}

/// Domain points `x != a` with `|x - a| <= q`, as `(x, f(x))`.
pub fn admissible_set<'t>(f: &'t Table, a: &Scalar, q: &Scalar) -> Vec<(&'t Scalar, &'t Scalar)> {
    f.range(a - q..=a + q).filter(|(x, _)| *x != a).collect()
}

fn admissible_values<'t>(f: &'t Table, a: &Scalar, q: &Scalar) -> Result<Vec<&'t Scalar>> {
    check_non_negative("q", q)?;
    let s: Vec<_> = admissible_set(f, a, q).into_iter().map(|(_, y)| y).collect();
    if s.is_empty() {
        return Err(Error::NoAdmissibleSequence);
    }
    Ok(s)
}

/// Smallest `r` such that `b` is a (q,r)-limit of `f` at `a`.
pub fn qr_defect_discrete(f: &Table, a: &Scalar, q: &Scalar, b: &Scalar) -> Result<XScalar> {
    let values = admissible_values(f, a, q)?;
    Ok(XScalar::Finite(values.into_iter().map(|y| dist(y, b)).max().expect("nonempty")))
}

pub fn is_qr_limit_discrete(f: &Table, a: &Scalar, q: &Scalar, r: &Scalar, b: &Scalar) -> Result<bool> {
    check_non_negative("r", r)?;
    Ok(qr_defect_discrete(f, a, q, b)?.le(r))
}

/// Smallest `r` such that `b` is a weak (q,r)-limit of `f` at `a`.
pub fn weak_qr_defect_discrete(f: &Table, a: &Scalar, q: &Scalar, b: &Scalar) -> Result<XScalar> {
    let values = admissible_values(f, a, q)?;
    Ok(XScalar::Finite(values.into_iter().map(|y| dist(y, b)).min().expect("nonempty")))
}

pub fn is_weak_qr_limit_discrete(f: &Table, a: &Scalar, q: &Scalar, r: &Scalar, b: &Scalar) -> Result<bool> {
    check_non_negative("r", r)?;
    Ok(weak_qr_defect_discrete(f, a, q, b)?.le(r))
}

/// All `b` that are (q,r)-limits: `[max f(S) - r, min f(S) + r]`, or `None`.
pub fn qr_limit_set(f: &Table, a: &Scalar, q: &Scalar, r: &Scalar) -> Result<Option<Interval>> {
    check_non_negative("r", r)?;
    let values = admissible_values(f, a, q)?;
    let lo = values.iter().min().copied().expect("nonempty");
    let hi = values.iter().max().copied().expect("nonempty");
    let left = hi - r;
    let right = lo + r;
    Ok(if left <= right { Some(Interval::new(left, right)?) } else { None })
}

/// The `b` with least strong defect at `(a, q)`, and that defect.
pub fn best_limit(f: &Table, a: &Scalar, q: &Scalar) -> Result<(Scalar, Scalar)> {
    let values = admissible_values(f, a, q)?;
    let lo = values.iter().min().copied().expect("nonempty");
    let hi = values.iter().max().copied().expect("nonempty");
    Ok(((lo + hi) / int(2), (hi - lo) / int(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn identity_on_integers() -> Table {
        (-10..=10).map(|k| (int(k), int(k))).collect()
    }

    #[test]
    fn strong_defect_examples() {
        let f = identity_on_integers();
        assert_eq!(qr_defect_discrete(&f, &int(3), &int(1), &int(3)).unwrap(), XScalar::Finite(int(1)));
        assert_eq!(qr_defect_discrete(&f, &int(3), &int(1), &rat(5, 2)).unwrap(), XScalar::Finite(rat(3, 2)));
        assert_eq!(qr_defect_discrete(&f, &int(5), &rat(1, 2), &int(5)), Err(Error::NoAdmissibleSequence));
    }

    #[test]
    fn predicate_examples() {
        let f = identity_on_integers();
        assert!(is_qr_limit_discrete(&f, &int(3), &int(1), &rat(3, 2), &rat(5, 2)).unwrap());
        assert!(!is_qr_limit_discrete(&f, &int(3), &int(1), &int(1), &rat(5, 2)).unwrap());
        // q = 0 on a discrete domain: only the point itself is within 0 of a.
        assert_eq!(
            is_qr_limit_discrete(&f, &int(3), &int(0), &int(100), &int(3)),
            Err(Error::NoAdmissibleSequence)
        );
        assert!(is_qr_limit_discrete(&f, &int(3), &int(-1), &int(1), &int(3)).is_err());
        assert!(is_qr_limit_discrete(&f, &int(3), &int(1), &int(-1), &int(3)).is_err());
    }

    #[test]
    fn weak_defect_examples() {
        let f = identity_on_integers();
        assert_eq!(weak_qr_defect_discrete(&f, &int(3), &int(1), &int(4)).unwrap(), XScalar::Finite(int(0)));
        assert_eq!(weak_qr_defect_discrete(&f, &int(3), &int(1), &int(3)).unwrap(), XScalar::Finite(int(1)));
        assert_eq!(weak_qr_defect_discrete(&f, &int(3), &int(2), &int(5)).unwrap(), XScalar::Finite(int(0)));
    }

    #[test]
    fn boundary_points_are_admissible() {
        let f = identity_on_integers();
        let s: Vec<_> = admissible_set(&f, &int(3), &int(2)).into_iter().map(|(x, _)| x.clone()).collect();
        assert_eq!(s, vec![int(1), int(2), int(4), int(5)]);
    }

    #[test]
    fn limit_set_and_minimizer() {
        let f = identity_on_integers();
        assert_eq!(
            qr_limit_set(&f, &int(3), &int(1), &int(1)).unwrap(),
            Some(Interval::point(int(3)))
        );
        assert_eq!(
            qr_limit_set(&f, &int(3), &int(1), &int(2)).unwrap(),
            Some(Interval::new(int(2), int(4)).unwrap())
        );
        assert_eq!(qr_limit_set(&f, &int(3), &int(1), &rat(1, 2)).unwrap(), None);
        assert_eq!(best_limit(&f, &int(3), &int(2)).unwrap(), (int(3), int(2)));
    }
}
