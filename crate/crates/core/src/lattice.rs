//! Bounded lattice-ordered function algebras.
//!
//! [`AlgElement`] is the common surface of the two concrete carriers
//! ([`FiniteFunc`](crate::finite_space::FiniteFunc) and
//! [`SeqFunc`](crate::seq_model::SeqFunc)): pointwise ring and lattice
//! operations, evaluation, and a finite set of *decisive points* on which any
//! pointwise comparison between two elements can be decided exactly.
//!
//! Both carriers are bounded (every element takes finitely many values) and
//! archimedean by construction, so neither property is checked at runtime.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An element of a bounded archimedean function algebra with exact order.
///
/// Binary operations assume [`compatible`](AlgElement::compatible) operands
/// and panic otherwise; fallible entry points check compatibility first.
pub trait AlgElement: Clone + fmt::Debug + PartialEq {
    type Point: Clone + fmt::Debug + fmt::Display + PartialEq;

    fn compatible(&self, other: &Self) -> bool;
    fn constant_like(&self, c: &Scalar) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Scalar) -> Self;
    fn join(&self, other: &Self) -> Self;
    fn meet(&self, other: &Self) -> Self;

    /// Points that decide every pointwise comparison between `self` and `other`.
    fn decisive_points(&self, other: &Self) -> Vec<Self::Point>;
    fn eval(&self, p: &Self::Point) -> Scalar;

    /// Largest value taken anywhere on the carrier.
    fn values_sup(&self) -> Scalar;
    /// Smallest value taken anywhere on the carrier.
    fn values_inf(&self) -> Scalar;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn add_scalar(&self, r: &Scalar) -> Self {
        self.add(&self.constant_like(r))
    }

    fn zero_like(&self) -> Self {
        self.constant_like(&Scalar::zero())
    }

    fn one_like(&self) -> Self {
        self.constant_like(&Scalar::one())
    }

    /// `a ∨ (-a)`.
    fn abs(&self) -> Self {
        self.join(&self.neg())
    }

    /// Least `r` with `|a| <= r`.
    fn norm(&self) -> Scalar {
        self.abs().values_sup()
    }

    /// First decisive point where `self <= other` fails.
    fn first_violation(&self, other: &Self) -> Option<Self::Point> {
        self.decisive_points(other)
            .into_iter()
            .find(|p| self.eval(p) > other.eval(p))
    }

    /// Pointwise `self <= other`.
    fn le(&self, other: &Self) -> bool {
        self.first_violation(other).is_none()
    }

    /// `e * e == e`.
    fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }
}

/// `(|a|, ‖a‖)`.
pub fn abs_and_norm<E: AlgElement>(a: &E) -> (E, Scalar) {
    let abs = a.abs();
    let norm = abs.values_sup();
    (abs, norm)
}

/// Finite join; errors on an empty family.
pub fn join_all<E: AlgElement>(family: &[E]) -> Result<E> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    check_family(first, rest)?;
    Ok(rest.iter().fold(first.clone(), |acc, x| acc.join(x)))
}

/// Finite meet; errors on an empty family.
pub fn meet_all<E: AlgElement>(family: &[E]) -> Result<E> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    check_family(first, rest)?;
    Ok(rest.iter().fold(first.clone(), |acc, x| acc.meet(x)))
}

fn check_family<E: AlgElement>(first: &E, rest: &[E]) -> Result<()> {
    match rest.iter().position(|x| !first.compatible(x)) {
        Some(i) => Err(Error::CarrierMismatch(format!(
            "family member {} lives on a different carrier",
            i + 1
        ))),
        None => Ok(()),
    }
}

/// Checks `lower <= upper` and compatibility, naming the first failing point.
pub fn ensure_le<E: AlgElement>(lower: &E, upper: &E) -> Result<()> {
    if !lower.compatible(upper) {
        return Err(Error::CarrierMismatch(
            "operands live on different carriers".into(),
        ));
    }
    match lower.first_violation(upper) {
        Some(p) => Err(Error::OrderViolation { at: p.to_string() }),
        None => Ok(()),
    }
}

/// Result of [`rescale_to_unit`]: `lower = (f + shift) / scale` and likewise
/// for `upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rescaled<E> {
    pub lower: E,
    pub upper: E,
    pub shift: Scalar,
    pub scale: Scalar,
}

impl<E: AlgElement> Rescaled<E> {
    /// Maps an element from unit coordinates back: `h * scale - shift`.
    pub fn unscale(&self, h: &E) -> E {
        h.scale(&self.scale).add_scalar(&-&self.shift)
    }

    /// Maps an element into unit coordinates: `(h + shift) / scale`.
    pub fn rescale(&self, h: &E) -> E {
        h.add_scalar(&self.shift)
            .scale(&(Scalar::one() / &self.scale))
    }
}

/// Affinely moves `f <= g` into `0 <= f' <= g' <= 1`.
///
/// `shift = -inf f`, `scale = sup (g + shift)` (or 1 when that is 0).
pub fn rescale_to_unit<E: AlgElement>(f: &E, g: &E) -> Result<Rescaled<E>> {
    ensure_le(f, g)?;
    let shift = -f.values_inf();
    let top = g.add_scalar(&shift).values_sup();
    let scale = if top.is_zero() { Scalar::one() } else { top };
    let inv = Scalar::one() / &scale;
    Ok(Rescaled {
        lower: f.add_scalar(&shift).scale(&inv),
        upper: g.add_scalar(&shift).scale(&inv),
        shift,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_space::{FiniteFunc, FiniteSpace};
    use crate::scalar::q;
    use std::sync::Arc;

    fn discrete(n: usize) -> Arc<FiniteSpace> {
        Arc::new(FiniteSpace::discrete(n))
    }

    fn func(space: &Arc<FiniteSpace>, vals: &[Scalar]) -> FiniteFunc {
        FiniteFunc::new(space.clone(), vals.to_vec()).unwrap()
    }

    #[test]
    fn abs_norm_examples() {
        let s = discrete(2);
        let (a, n) = abs_and_norm(&func(&s, &[q(-3, 1), q(-3, 1)]));
        assert_eq!(a.values(), &[q(3, 1), q(3, 1)]);
        assert_eq!(n, q(3, 1));

        let (a, n) = abs_and_norm(&func(&s, &[Scalar::zero(), Scalar::zero()]));
        assert_eq!(a.values(), &[Scalar::zero(), Scalar::zero()]);
        assert_eq!(n, Scalar::zero());

        let (a, n) = abs_and_norm(&func(&s, &[q(-1, 2), q(2, 3)]));
        assert_eq!(a.values(), &[q(1, 2), q(2, 3)]);
        assert_eq!(n, q(2, 3));
    }

    #[test]
    fn rescale_examples() {
        let s = discrete(2);
        let five = func(&s, &[q(5, 1), q(5, 1)]);
        let r = rescale_to_unit(&five, &five).unwrap();
        assert_eq!(r.lower, five.zero_like());
        assert_eq!(r.upper, five.zero_like());
        assert_eq!((r.shift.clone(), r.scale.clone()), (q(-5, 1), q(1, 1)));
        assert_eq!(r.unscale(&r.lower), five);

        let f = func(&s, &[q(0, 1), q(1, 1)]);
        let g = func(&s, &[q(1, 1), q(2, 1)]);
        let r = rescale_to_unit(&f, &g).unwrap();
        assert_eq!(r.lower.values(), &[q(0, 1), q(1, 2)]);
        assert_eq!(r.upper.values(), &[q(1, 2), q(1, 1)]);
        assert_eq!((r.shift.clone(), r.scale.clone()), (q(0, 1), q(2, 1)));
        assert_eq!(r.rescale(&g), r.upper);

        let zero = s_const(&s, 0);
        let one = s_const(&s, 1);
        let r = rescale_to_unit(&zero, &one).unwrap();
        assert_eq!((r.lower, r.upper), (zero, one));
        assert_eq!((r.shift, r.scale), (q(0, 1), q(1, 1)));
    }

    fn s_const(s: &Arc<FiniteSpace>, c: i64) -> FiniteFunc {
        FiniteFunc::constant(s.clone(), Scalar::from_int(c))
    }

    #[test]
    fn rescale_rejects_order_violation() {
        let s = discrete(2);
        let f = func(&s, &[q(0, 1), q(3, 1)]);
        let g = func(&s, &[q(1, 1), q(2, 1)]);
        assert_eq!(
            rescale_to_unit(&f, &g),
            Err(Error::OrderViolation { at: "1".into() })
        );
    }

    #[test]
    fn empty_family_rejected() {
        let empty: Vec<FiniteFunc> = vec![];
        assert_eq!(join_all(&empty), Err(Error::EmptyFamily));
        assert_eq!(meet_all(&empty), Err(Error::EmptyFamily));
    }
}
