use std::fmt;

use serde::{Deserialize, Serialize};

use crate::finite_space::FiniteFunc;
use crate::lattice::AlgElement;
use crate::scalar::Scalar;
use crate::seq_model::{SeqFunc, SeqPoint};

/// An element of either concrete carrier.
///
/// Operations between different carriers panic like any other incompatible
/// pair; [`AlgElement::compatible`] is false for them.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "carrier", content = "value")]
pub enum AnyElement {
    Finite(FiniteFunc),
    Seq(SeqFunc),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnyPoint {
    Finite(usize),
    Seq(SeqPoint),
}

impl fmt::Display for AnyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyPoint::Finite(x) => write!(f, "{x}"),
            AnyPoint::Seq(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for AnyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyElement::Finite(x) => fmt::Debug::fmt(x, f),
            AnyElement::Seq(x) => fmt::Debug::fmt(x, f),
        }
    }
}

impl From<FiniteFunc> for AnyElement {
    fn from(f: FiniteFunc) -> Self {
        AnyElement::Finite(f)
    }
}

impl From<SeqFunc> for AnyElement {
    fn from(f: SeqFunc) -> Self {
        AnyElement::Seq(f)
    }
}

impl AnyElement {
    pub fn as_finite(&self) -> Option<&FiniteFunc> {
        match self {
            AnyElement::Finite(f) => Some(f),
            AnyElement::Seq(_) => None,
        }
    }

    pub fn as_seq(&self) -> Option<&SeqFunc> {
        match self {
            AnyElement::Seq(f) => Some(f),
            AnyElement::Finite(_) => None,
        }
    }

    fn lift(&self, other: &Self, fin: fn(&FiniteFunc, &FiniteFunc) -> FiniteFunc, seq: fn(&SeqFunc, &SeqFunc) -> SeqFunc) -> Self {
        match (self, other) {
            (AnyElement::Finite(a), AnyElement::Finite(b)) => AnyElement::Finite(fin(a, b)),
            (AnyElement::Seq(a), AnyElement::Seq(b)) => AnyElement::Seq(seq(a, b)),
            _ => panic!("operands live on different carriers"),
        }
    }
}

impl AlgElement for AnyElement {
    type Point = AnyPoint;

    fn compatible(&self, other: &Self) -> bool {
        match (self, other) {
            (AnyElement::Finite(a), AnyElement::Finite(b)) => a.compatible(b),
            (AnyElement::Seq(a), AnyElement::Seq(b)) => a.compatible(b),
            _ => false,
        }
    }

    fn constant_like(&self, c: &Scalar) -> Self {
        match self {
            AnyElement::Finite(a) => AnyElement::Finite(a.constant_like(c)),
            AnyElement::Seq(a) => AnyElement::Seq(a.constant_like(c)),
        }
    }

    fn add(&self, other: &Self) -> Self {
        self.lift(other, FiniteFunc::add, SeqFunc::add)
    }

    fn neg(&self) -> Self {
        match self {
            AnyElement::Finite(a) => AnyElement::Finite(a.neg()),
            AnyElement::Seq(a) => AnyElement::Seq(a.neg()),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        self.lift(other, FiniteFunc::mul, SeqFunc::mul)
    }

    fn scale(&self, r: &Scalar) -> Self {
        match self {
            AnyElement::Finite(a) => AnyElement::Finite(a.scale(r)),
            AnyElement::Seq(a) => AnyElement::Seq(a.scale(r)),
        }
    }

    fn join(&self, other: &Self) -> Self {
        self.lift(other, FiniteFunc::join, SeqFunc::join)
    }

    fn meet(&self, other: &Self) -> Self {
        self.lift(other, FiniteFunc::meet, SeqFunc::meet)
    }

    fn decisive_points(&self, other: &Self) -> Vec<AnyPoint> {
        match (self, other) {
            (AnyElement::Finite(a), AnyElement::Finite(b)) => {
                a.decisive_points(b).into_iter().map(AnyPoint::Finite).collect()
            }
            (AnyElement::Seq(a), AnyElement::Seq(b)) => {
                a.decisive_points(b).into_iter().map(AnyPoint::Seq).collect()
            }
            _ => panic!("operands live on different carriers"),
        }
    }

    fn eval(&self, p: &AnyPoint) -> Scalar {
        match (self, p) {
            (AnyElement::Finite(a), AnyPoint::Finite(x)) => a.eval(x),
            (AnyElement::Seq(a), AnyPoint::Seq(x)) => a.eval(x),
            _ => panic!("point from another carrier"),
        }
    }

    fn values_sup(&self) -> Scalar {
        match self {
            AnyElement::Finite(a) => a.values_sup(),
            AnyElement::Seq(a) => a.values_sup(),
        }
    }

    fn values_inf(&self) -> Scalar {
        match self {
            AnyElement::Finite(a) => a.values_inf(),
            AnyElement::Seq(a) => a.values_inf(),
        }
    }
}
