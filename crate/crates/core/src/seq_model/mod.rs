//! The one-point compactification `Y = ℕ ∪ {ω}` of the discrete naturals.
//!
//! [`SeqFunc`] is an eventually periodic rational sequence, optionally
//! carrying a value at `ω`. Without an `ω`-value it is an element of the
//! representable part of `B(ℕ)`; with one it is a function on `Y`, continuous
//! exactly when the cycle is constant and equal to the `ω`-value.
//!
//! Because points of `ℕ` are isolated and the neighborhoods of `ω` are the
//! cofinite sets containing it, every semicontinuity and insertion question
//! reduces to comparing cycle extrema with the `ω`-value.

mod compact;
mod ideal;
mod insert;
mod yset;

pub use compact::{
    alpha_compact_defeat, alpha_compact_indicator, alpha_cover_member, alpha_compact_subcover, countable_join_family,
    countable_meet_family, lindelof_extract, local_compact_minorants, noncompact_family,
    subcover_extract, AlphaDefeat, CountableFamily, FamilySide, FamilyStream, FiniteFamily,
    LindelofPick, LindelofSelection, NoncompactDefeat, NoncompactFamily, Subcover,
};
pub use ideal::{
    ideal_membership, ideal_zero_set, maximality_witness, seq_ideal_membership, CozeroView,
    IdealMembership,
    MaximalityWitness, ZeroSetOfIdeal,
};
pub use insert::{
    insert_convergent, insert_on_y, kt_threshold_separation_on_y, nearest_convergent_insertion,
    strict_insert, ConvergentInsertion, NoInsertionCertificate, YKtSeparation,
};
pub use yset::{GeoTail, YSet, YSetKind};

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::AlgElement;
use crate::scalar::Scalar;

/// A point of `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeqPoint {
    Index(usize),
    Omega,
}

impl fmt::Display for SeqPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqPoint::Index(k) => write!(f, "{k}"),
            SeqPoint::Omega => f.write_str("ω"),
        }
    }
}

/// Eventually periodic rational sequence in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeqLiteral", into = "SeqLiteral")]
pub struct SeqFunc {
    prefix: Vec<Scalar>,
    cycle: Vec<Scalar>,
    omega: Option<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct SeqLiteral {
    #[serde(default)]
    prefix: Vec<Scalar>,
    cycle: Vec<Scalar>,
    #[serde(default)]
    omega: Option<Scalar>,
}

impl TryFrom<SeqLiteral> for SeqFunc {
    type Error = Error;
    fn try_from(lit: SeqLiteral) -> Result<Self> {
        SeqFunc::new(lit.prefix, lit.cycle, lit.omega)
    }
}

impl From<SeqFunc> for SeqLiteral {
    fn from(f: SeqFunc) -> Self {
        SeqLiteral { prefix: f.prefix, cycle: f.cycle, omega: f.omega }
    }
}

/// Binary pointwise operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeqOp {
    Add,
    Mul,
    Join,
    Meet,
}

impl SeqOp {
    fn apply(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            SeqOp::Add => a + b,
            SeqOp::Mul => a * b,
            SeqOp::Join => a.max(b),
            SeqOp::Meet => a.min(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitData {
    pub liminf: Scalar,
    pub limsup: Scalar,
    pub limit: Option<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semicontinuity {
    pub usc: bool,
    pub lsc: bool,
    pub continuous: bool,
}

impl SeqFunc {
    pub fn new(prefix: Vec<Scalar>, cycle: Vec<Scalar>, omega: Option<Scalar>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidArgument("cycle must be nonempty".into()));
        }
        let mut f = SeqFunc { prefix, cycle, omega };
        f.canonicalize();
        Ok(f)
    }

    /// Sequence on `ℕ` with no value at `ω`.
    pub fn on_n(prefix: Vec<Scalar>, cycle: Vec<Scalar>) -> Self {
        Self::new(prefix, cycle, None).expect("nonempty cycle")
    }

    pub fn constant(c: Scalar) -> Self {
        SeqFunc { prefix: vec![], cycle: vec![c], omega: None }
    }

    /// The constant `c` on `Y`, continuous.
    pub fn constant_on_y(c: Scalar) -> Self {
        SeqFunc { prefix: vec![], cycle: vec![c.clone()], omega: Some(c) }
    }

    /// Integer-valued shorthand: `from_ints(&[1, 2], &[0], Some(0))`.
    pub fn from_ints(prefix: &[i64], cycle: &[i64], omega: Option<i64>) -> Self {
        let s = |v: &[i64]| v.iter().map(|&a| Scalar::from_int(a)).collect();
        Self::new(s(prefix), s(cycle), omega.map(Scalar::from_int)).expect("nonempty cycle")
    }

    /// `χ_S` for a finite `S ⊂ ℕ`, with `ω`-value 0 when `on_y`.
    pub fn indicator_finite(points: &[usize], on_y: bool) -> Self {
        let len = points.iter().max().map_or(0, |&m| m + 1);
        let prefix = (0..len)
            .map(|k| if points.contains(&k) { Scalar::one() } else { Scalar::zero() })
            .collect();
        Self::new(prefix, vec![Scalar::zero()], on_y.then(Scalar::zero)).unwrap()
    }

    /// `χ_{0..=n}`.
    pub fn indicator_upto(n: usize, on_y: bool) -> Self {
        Self::new(vec![Scalar::one(); n + 1], vec![Scalar::zero()], on_y.then(Scalar::zero))
            .unwrap()
    }

    /// `χ_evens`; `omega` sets the value at `ω` if any.
    pub fn evens(omega: Option<Scalar>) -> Self {
        Self::new(vec![], vec![Scalar::one(), Scalar::zero()], omega).unwrap()
    }

    pub fn odds(omega: Option<Scalar>) -> Self {
        Self::new(vec![], vec![Scalar::zero(), Scalar::one()], omega).unwrap()
    }

    pub fn prefix(&self) -> &[Scalar] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Scalar] {
        &self.cycle
    }

    pub fn omega(&self) -> Option<&Scalar> {
        self.omega.as_ref()
    }

    pub fn has_omega(&self) -> bool {
        self.omega.is_some()
    }

    /// Same values on `ℕ`, `ω`-value replaced.
    pub fn with_omega(&self, omega: Option<Scalar>) -> Self {
        SeqFunc { omega, ..self.clone() }
    }

    /// Restriction to `ℕ`.
    pub fn on_naturals(&self) -> Self {
        self.with_omega(None)
    }

    /// For a convergent sequence, the continuous extension to `Y`.
    pub fn extend_to_y(&self) -> Result<Self> {
        if !self.is_convergent() {
            return Err(Error::NotConvergent);
        }
        Ok(self.with_omega(Some(self.cycle[0].clone())))
    }

    pub fn value_at(&self, k: usize) -> &Scalar {
        if k < self.prefix.len() {
            &self.prefix[k]
        } else {
            &self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub fn eval_point(&self, p: SeqPoint) -> Result<Scalar> {
        match p {
            SeqPoint::Index(k) => Ok(self.value_at(k).clone()),
            SeqPoint::Omega => self.omega.clone().ok_or(Error::OmegaMissing),
        }
    }

    /// Indices `0..prefix + cycle`: every value on `ℕ` shows up there.
    pub fn window(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    fn canonicalize(&mut self) {
        let n = self.cycle.len();
        if let Some(p) = (1..=n).find(|&p| n % p == 0 && (p..n).all(|i| self.cycle[i] == self.cycle[i - p])) {
            self.cycle.truncate(p);
        }
        // Fold trailing prefix entries into the cycle by rotating it.
        while self.prefix.last().is_some_and(|v| v == self.cycle.last().unwrap()) {
            self.prefix.pop();
            self.cycle.rotate_right(1);
        }
    }

    /// Exact pointwise `op`; both operands must agree on carrying `ω`.
    pub fn pointwise_op(op: SeqOp, f: &SeqFunc, g: &SeqFunc) -> Result<SeqFunc> {
        if f.has_omega() != g.has_omega() {
            return Err(Error::CarrierMismatch(
                "one operand lives on Y and the other on ℕ".into(),
            ));
        }
        Ok(f.zip(g, |a, b| op.apply(a, b)))
    }

    fn zip(&self, g: &SeqFunc, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> SeqFunc {
        assert_eq!(self.has_omega(), g.has_omega(), "SeqFunc operands on different carriers");
        let start = self.prefix.len().max(g.prefix.len());
        let period = self.cycle.len().lcm(&g.cycle.len());
        let at = |k: usize| op(self.value_at(k), g.value_at(k));
        let prefix = (0..start).map(at).collect();
        let cycle = (start..start + period).map(at).collect();
        let omega = match (&self.omega, &g.omega) {
            (Some(a), Some(b)) => Some(op(a, b)),
            _ => None,
        };
        let mut out = SeqFunc { prefix, cycle, omega };
        out.canonicalize();
        out
    }

    pub fn map(&self, op: impl Fn(&Scalar) -> Scalar) -> SeqFunc {
        let mut out = SeqFunc {
            prefix: self.prefix.iter().map(&op).collect(),
            cycle: self.cycle.iter().map(&op).collect(),
            omega: self.omega.as_ref().map(&op),
        };
        out.canonicalize();
        out
    }

    pub fn limit_data(&self) -> LimitData {
        let liminf = self.cycle.iter().min().unwrap().clone();
        let limsup = self.cycle.iter().max().unwrap().clone();
        let limit = (liminf == limsup).then(|| liminf.clone());
        LimitData { liminf, limsup, limit }
    }

    /// Convergent: constant cycle, equal to the `ω`-value when there is one.
    pub fn is_convergent(&self) -> bool {
        self.cycle.len() == 1 && self.omega.as_ref().is_none_or(|w| *w == self.cycle[0])
    }

    /// Finitely many nonzero values on `ℕ`.
    pub fn has_finite_support(&self) -> bool {
        self.cycle.len() == 1 && self.cycle[0].is_zero()
    }

    /// Semicontinuity on `Y`, decided at `ω`.
    pub fn semicontinuity_on_y(&self) -> Result<Semicontinuity> {
        let w = self.omega.as_ref().ok_or(Error::OmegaMissing)?;
        let data = self.limit_data();
        let usc = *w >= data.limsup;
        let lsc = *w <= data.liminf;
        Ok(Semicontinuity { usc, lsc, continuous: usc && lsc })
    }
}

impl fmt::Debug for SeqFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?})*", self.prefix, self.cycle)?;
        if let Some(w) = &self.omega {
            write!(f, " ω↦{w}")?;
        }
        Ok(())
    }
}

impl AlgElement for SeqFunc {
    type Point = SeqPoint;

    fn compatible(&self, other: &Self) -> bool {
        self.has_omega() == other.has_omega()
    }

    fn constant_like(&self, c: &Scalar) -> Self {
        if self.has_omega() {
            SeqFunc::constant_on_y(c.clone())
        } else {
            SeqFunc::constant(c.clone())
        }
    }

    fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    fn scale(&self, r: &Scalar) -> Self {
        self.map(|a| a * r)
    }

    fn join(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.max(b))
    }

    fn meet(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.min(b))
    }

    /// Indices up to the aligned prefix plus one common period, then `ω`.
    fn decisive_points(&self, other: &Self) -> Vec<SeqPoint> {
        let start = self.prefix.len().max(other.prefix.len());
        let period = self.cycle.len().lcm(&other.cycle.len());
        let mut pts: Vec<SeqPoint> = (0..start + period).map(SeqPoint::Index).collect();
        if self.has_omega() && other.has_omega() {
            pts.push(SeqPoint::Omega);
        }
        pts
    }

    fn eval(&self, p: &SeqPoint) -> Scalar {
        self.eval_point(*p).expect("ω-value present")
    }

    fn values_sup(&self) -> Scalar {
        self.prefix
            .iter()
            .chain(&self.cycle)
            .chain(&self.omega)
            .max()
            .unwrap()
            .clone()
    }

    fn values_inf(&self) -> Scalar {
        self.prefix
            .iter()
            .chain(&self.cycle)
            .chain(&self.omega)
            .min()
            .unwrap()
            .clone()
    }
}
