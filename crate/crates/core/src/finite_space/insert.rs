use serde::{Deserialize, Serialize};

use super::FiniteFunc;
use crate::error::{Error, Result};
use crate::lattice::{ensure_le, AlgElement};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FiniteInsertion {
    Witness(FiniteFunc),
    /// On `component` the lower function peaks above the upper one's minimum.
    Infeasible { component: usize, max_lower: Scalar, min_upper: Scalar },
}

/// Least continuous `h` with `f <= h <= g`, for `f` usc and `g` lsc.
///
/// A continuous function is constant on every component `K`, so an
/// insertion exists iff `max_K f <= min_K g` everywhere, and then
/// `h|_K = max_K f` is the least one.
pub fn insert_finite(f: &FiniteFunc, g: &FiniteFunc) -> Result<FiniteInsertion> {
    ensure_le(f, g)?;
    if !f.is_usc() {
        return Err(Error::PreconditionViolation("lower function is not usc".into()));
    }
    if !g.is_lsc() {
        return Err(Error::PreconditionViolation("upper function is not lsc".into()));
    }
    let space = f.space();
    let k = space.component_count();
    let mut max_f: Vec<Option<Scalar>> = vec![None; k];
    let mut min_g: Vec<Option<Scalar>> = vec![None; k];
    for x in 0..space.len() {
        let c = space.component_of(x);
        let fx = f.value(x);
        let gx = g.value(x);
        max_f[c] = Some(max_f[c].as_ref().map_or(fx.clone(), |m| m.max(fx)));
        min_g[c] = Some(min_g[c].as_ref().map_or(gx.clone(), |m| m.min(gx)));
    }
    for c in 0..k {
        let (hi, lo) = (max_f[c].clone().unwrap(), min_g[c].clone().unwrap());
        if hi > lo {
            return Ok(FiniteInsertion::Infeasible { component: c, max_lower: hi, min_upper: lo });
        }
    }
    let values = (0..space.len())
        .map(|x| max_f[space.component_of(x)].clone().unwrap())
        .collect();
    let h = FiniteFunc::new(space.clone(), values)?;
    debug_assert!(f.le(&h) && h.le(g) && h.is_continuous());
    Ok(FiniteInsertion::Witness(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_space::{indicator, FiniteSpace, PointSet};
    use crate::scalar::q;
    use std::sync::Arc;

    #[test]
    fn continuous_function_inserts_itself() {
        let s = Arc::new(FiniteSpace::from_relation(4, &[(1, 0), (3, 2)]).unwrap());
        let h = FiniteFunc::new(s, vec![q(1, 2), q(1, 2), q(-2, 1), q(-2, 1)]).unwrap();
        assert!(h.is_continuous());
        assert_eq!(insert_finite(&h, &h), Ok(FiniteInsertion::Witness(h.clone())));
    }

    #[test]
    fn discrete_space_returns_lower() {
        let s = Arc::new(FiniteSpace::discrete(3));
        let f = FiniteFunc::from_ints(s.clone(), &[0, 4, -1]).unwrap();
        let g = FiniteFunc::from_ints(s, &[2, 4, 7]).unwrap();
        assert_eq!(insert_finite(&f, &g), Ok(FiniteInsertion::Witness(f)));
    }

    #[test]
    fn indiscrete_constants() {
        let s = Arc::new(FiniteSpace::indiscrete(2));
        let f = FiniteFunc::from_ints(s.clone(), &[0, 0]).unwrap();
        let g = FiniteFunc::from_ints(s.clone(), &[1, 1]).unwrap();
        assert_eq!(insert_finite(&f, &g), Ok(FiniteInsertion::Witness(f.clone())));
        let bad = FiniteFunc::from_ints(s, &[0, 1]).unwrap();
        assert!(matches!(insert_finite(&f, &bad), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn infeasible_on_connected_non_normal_space() {
        // 0 open, 1 and 2 closed points in its closure.
        let s = Arc::new(FiniteSpace::from_relation(3, &[(1, 0), (2, 0)]).unwrap());
        let f = indicator(&s, PointSet::singleton(1));
        let g = indicator(&s, PointSet::singleton(2).complement(3));
        assert!(f.is_usc() && g.is_lsc());
        assert_eq!(
            insert_finite(&f, &g),
            Ok(FiniteInsertion::Infeasible {
                component: 0,
                max_lower: Scalar::one(),
                min_upper: Scalar::zero()
            })
        );
    }

    #[test]
    fn order_violation_is_reported() {
        let s = Arc::new(FiniteSpace::discrete(2));
        let f = FiniteFunc::from_ints(s.clone(), &[0, 2]).unwrap();
        let g = FiniteFunc::from_ints(s, &[0, 1]).unwrap();
        assert_eq!(insert_finite(&f, &g), Err(Error::OrderViolation { at: "1".into() }));
    }
}
