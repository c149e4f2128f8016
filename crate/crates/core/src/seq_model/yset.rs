use std::fmt;

use serde::{Deserialize, Serialize};

use super::{SeqFunc, SeqPoint};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An eventually periodic subset of `Y`, stored as its 0/1 indicator.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "YSetKind", into = "YSetKind")]
pub struct YSet {
    chi: SeqFunc,
}

/// Literal forms of a [`YSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "points")]
pub enum YSetKind {
    FiniteSubsetOfN(Vec<usize>),
    FiniteWithOmega(Vec<usize>),
    /// Listed points are the ones excluded.
    CofiniteWithOmega(Vec<usize>),
    CofiniteWithoutOmega(Vec<usize>),
    /// Anything else: an eventually periodic pattern of membership.
    Periodic { prefix: Vec<bool>, cycle: Vec<bool>, omega: bool },
}

fn bit(b: bool) -> Scalar {
    if b {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

impl YSet {
    pub fn finite(points: &[usize]) -> Self {
        YSet { chi: SeqFunc::indicator_finite(points, true) }
    }

    pub fn finite_with_omega(points: &[usize]) -> Self {
        Self::finite(points).with_omega_member(true)
    }

    pub fn cofinite_with_omega(excluded: &[usize]) -> Self {
        Self::finite(excluded).complement()
    }

    pub fn cofinite_without_omega(excluded: &[usize]) -> Self {
        Self::cofinite_with_omega(excluded).with_omega_member(false)
    }

    pub fn periodic(prefix: &[bool], cycle: &[bool], omega: bool) -> Result<Self> {
        let chi = SeqFunc::new(
            prefix.iter().map(|&b| bit(b)).collect(),
            cycle.iter().map(|&b| bit(b)).collect(),
            Some(bit(omega)),
        )?;
        Ok(YSet { chi })
    }

    pub fn empty() -> Self {
        Self::finite(&[])
    }

    pub fn omega_only() -> Self {
        Self::finite_with_omega(&[])
    }

    /// Set where a function on `Y` satisfies `pred`.
    pub fn level_set(f: &SeqFunc, pred: impl Fn(&Scalar) -> bool) -> Result<Self> {
        if !f.has_omega() {
            return Err(Error::OmegaMissing);
        }
        Ok(YSet { chi: f.map(|v| bit(pred(v))) })
    }

    fn with_omega_member(&self, omega: bool) -> Self {
        YSet { chi: self.chi.with_omega(Some(bit(omega))) }
    }

    /// Indicator on `Y`.
    pub fn indicator(&self) -> &SeqFunc {
        &self.chi
    }

    pub fn contains(&self, p: SeqPoint) -> bool {
        self.chi.eval_point(p).expect("ω-value present").is_one()
    }

    pub fn contains_omega(&self) -> bool {
        self.contains(SeqPoint::Omega)
    }

    /// Finitely many points of `ℕ`.
    pub fn is_finite_in_n(&self) -> bool {
        self.chi.has_finite_support()
    }

    pub fn is_cofinite_in_n(&self) -> bool {
        self.chi.cycle().len() == 1 && self.chi.cycle()[0].is_one()
    }

    pub fn complement(&self) -> Self {
        YSet { chi: self.chi.map(|v| Scalar::one() - v) }
    }

    pub fn union(&self, other: &Self) -> Self {
        YSet { chi: SeqFunc::pointwise_op(super::SeqOp::Join, &self.chi, &other.chi).unwrap() }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        YSet { chi: SeqFunc::pointwise_op(super::SeqOp::Meet, &self.chi, &other.chi).unwrap() }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other) == Self::empty()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.intersection(other) == *self
    }

    /// Open iff it omits `ω` or is a cofinite set containing `ω`.
    pub fn is_open(&self) -> bool {
        !self.contains_omega() || self.is_cofinite_in_n()
    }

    pub fn is_closed(&self) -> bool {
        self.complement().is_open()
    }

    /// Closure in `Y`: adds `ω` to sets with infinitely many naturals.
    pub fn closure(&self) -> Self {
        if self.is_finite_in_n() {
            self.clone()
        } else {
            self.with_omega_member(true)
        }
    }

    /// Naturals in the set below `bound`.
    pub fn naturals_below(&self, bound: usize) -> Vec<usize> {
        (0..bound).filter(|&k| self.contains(SeqPoint::Index(k))).collect()
    }

    /// Smallest member of `ℕ` at or above `from`, if any.
    pub fn next_natural(&self, from: usize) -> Option<usize> {
        if self.is_finite_in_n() {
            (from..from.max(self.chi.prefix().len())).find(|&k| self.contains(SeqPoint::Index(k)))
        } else {
            (from..).find(|&k| self.contains(SeqPoint::Index(k)))
        }
    }

    pub fn kind(&self) -> YSetKind {
        let bound = self.chi.prefix().len();
        let members = || self.naturals_below(bound);
        let gaps = || (0..bound).filter(|&k| !self.contains(SeqPoint::Index(k))).collect();
        match (self.is_finite_in_n(), self.is_cofinite_in_n(), self.contains_omega()) {
            (true, _, false) => YSetKind::FiniteSubsetOfN(members()),
            (true, _, true) => YSetKind::FiniteWithOmega(members()),
            (_, true, true) => YSetKind::CofiniteWithOmega(gaps()),
            (_, true, false) => YSetKind::CofiniteWithoutOmega(gaps()),
            _ => YSetKind::Periodic {
                prefix: self.chi.prefix().iter().map(Scalar::is_one).collect(),
                cycle: self.chi.cycle().iter().map(Scalar::is_one).collect(),
                omega: self.contains_omega(),
            },
        }
    }
}

impl TryFrom<YSetKind> for YSet {
    type Error = Error;
    fn try_from(kind: YSetKind) -> Result<Self> {
        Ok(match kind {
            YSetKind::FiniteSubsetOfN(p) => YSet::finite(&p),
            YSetKind::FiniteWithOmega(p) => YSet::finite_with_omega(&p),
            YSetKind::CofiniteWithOmega(p) => YSet::cofinite_with_omega(&p),
            YSetKind::CofiniteWithoutOmega(p) => YSet::cofinite_without_omega(&p),
            YSetKind::Periodic { prefix, cycle, omega } => YSet::periodic(&prefix, &cycle, omega)?,
        })
    }
}

impl From<YSet> for YSetKind {
    fn from(s: YSet) -> Self {
        s.kind()
    }
}

impl fmt::Debug for YSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.kind(), f)
    }
}

/// `k ↦ q·λ^(k - |prefix|)` past a finite prefix, with limit 0.
///
/// Not closed under the algebra operations; only evaluation-level queries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeoTail {
    pub prefix: Vec<Scalar>,
    pub coefficient: Scalar,
    pub ratio: Scalar,
}

impl GeoTail {
    pub fn new(prefix: Vec<Scalar>, coefficient: Scalar, ratio: Scalar) -> Result<Self> {
        if !(ratio.is_positive() && ratio < 1) {
            return Err(Error::InvalidArgument(format!("ratio {ratio} is not in (0, 1)")));
        }
        Ok(GeoTail { prefix, coefficient, ratio })
    }

    pub fn value_at(&self, k: usize) -> Scalar {
        if k < self.prefix.len() {
            return self.prefix[k].clone();
        }
        let e = k - self.prefix.len();
        let mut v = self.coefficient.clone();
        for _ in 0..e {
            v = v * &self.ratio;
        }
        v
    }

    pub fn limit(&self) -> Scalar {
        Scalar::zero()
    }

    /// Nonzero only inside the prefix.
    pub fn has_finite_support(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// `Z(f)` on `Y`, with `f(ω) = 0`.
    pub fn zero_set(&self) -> YSet {
        let zeros: Vec<usize> = (0..self.prefix.len()).filter(|&k| self.prefix[k].is_zero()).collect();
        if self.coefficient.is_zero() {
            let nonzero: Vec<usize> =
                (0..self.prefix.len()).filter(|&k| !self.prefix[k].is_zero()).collect();
            YSet::cofinite_with_omega(&nonzero)
        } else {
            YSet::finite_with_omega(&zeros)
        }
    }
}
