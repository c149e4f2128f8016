//! Finite topological spaces and rational-valued functions on them.
//!
//! A topology is stored as its full family of open sets. The minimal open
//! neighborhood `U_x` of each point (the intersection of all opens containing
//! `x`) is cached; since it is the least neighborhood of `x`, every "inf/sup
//! over neighborhoods of `x`" reduces to a single evaluation over `U_x`.
//!
//! Non-T1 finite spaces fall outside the completely regular setting where the
//! classical insertion theorems live (a finite Hausdorff space is discrete).
//! They are used here as a brute-force laboratory whose ground truth is
//! enumeration.

mod enumerate;
mod insert;
mod normality;
mod stone_weierstrass;
mod survey;

pub use enumerate::{count_topologies_brute_force, enumerate_spaces, enumerate_spaces_bounded, ENUMERATION_BOUND};
pub use insert::{insert_finite, FiniteInsertion};
pub use normality::{
    is_normal, kt_threshold_separation, separate, urysohn, KtSeparation, NormalityVerdict,
    SeparationCertificate,
};
pub use survey::{first_infeasible_pair, survey_space, thresholds_separate, InfeasiblePair, SurveyRow};
pub use stone_weierstrass::{
    block_indicators, separating_step, BlockIndicators, BlockStep, GeneratedCombination,
};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::AlgElement;
use crate::scalar::Scalar;

/// Largest point count a [`FiniteSpace`] accepts.
pub const MAX_POINTS: usize = 16;

/// A subset of `{0..n-1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> Self {
        if n == 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        PointSet(1u64 << x)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        PointSet(points.into_iter().fold(0, |m, x| m | (1u64 << x)))
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1 << x;
    }

    pub fn union(self, o: Self) -> Self {
        PointSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        PointSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        PointSet(self.0 & !o.0)
    }

    pub fn complement(self, n: usize) -> Self {
        PointSet::full(n).difference(self)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: Self) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&x| self.contains(x))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pts = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = pts.iter().find(|&&x| x >= 64) {
            return Err(serde::de::Error::custom(format!("point {bad} out of range")));
        }
        Ok(PointSet::from_points(pts))
    }
}

/// A finite topological space on the points `0..n`.
#[derive(Clone)]
pub struct FiniteSpace {
    n: usize,
    opens: Vec<PointSet>,
    min_nbhd: Vec<PointSet>,
    component: Vec<usize>,
    component_count: usize,
}

#[derive(Serialize, Deserialize)]
struct SpaceLiteral {
    points: usize,
    opens: Vec<PointSet>,
}

impl FiniteSpace {
    /// Builds a space from its open sets, verifying the topology axioms.
    pub fn new<I: IntoIterator<Item = PointSet>>(n: usize, opens: I) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpace("a space needs at least one point".into()));
        }
        if n > MAX_POINTS {
            return Err(Error::BoundExceeded { n, limit: MAX_POINTS });
        }
        let full = PointSet::full(n);
        let mut opens: Vec<PointSet> = opens.into_iter().collect();
        if let Some(bad) = opens.iter().find(|u| !u.is_subset(full)) {
            return Err(Error::InvalidSpace(format!("open set {bad} has points outside 0..{n}")));
        }
        opens.sort();
        opens.dedup();
        if opens.binary_search(&PointSet::EMPTY).is_err() {
            return Err(Error::InvalidSpace("the empty set must be open".into()));
        }
        if opens.binary_search(&full).is_err() {
            return Err(Error::InvalidSpace("the whole space must be open".into()));
        }
        for (i, &u) in opens.iter().enumerate() {
            for &v in &opens[i + 1..] {
                if opens.binary_search(&u.union(v)).is_err() {
                    return Err(Error::InvalidSpace(format!("{u} ∪ {v} is not open")));
                }
                if opens.binary_search(&u.intersection(v)).is_err() {
                    return Err(Error::InvalidSpace(format!("{u} ∩ {v} is not open")));
                }
            }
        }
        Ok(Self::with_opens(n, opens))
    }

    fn with_opens(n: usize, opens: Vec<PointSet>) -> Self {
        let min_nbhd: Vec<PointSet> = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|u| u.contains(x))
                    .fold(PointSet::full(n), |acc, &u| acc.intersection(u))
            })
            .collect();
        let (component, component_count) = components(n, &min_nbhd);
        FiniteSpace { n, opens, min_nbhd, component, component_count }
    }

    /// The Alexandrov topology of the reflexive-transitive closure of `rel`,
    /// where `(x, y)` means `y` lies in every neighborhood of `x`.
    pub fn from_relation(n: usize, rel: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > MAX_POINTS {
            return Err(Error::BoundExceeded { n, limit: MAX_POINTS });
        }
        let mut reach: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for &(x, y) in rel {
            if x >= n || y >= n {
                return Err(Error::InvalidArgument(format!("pair ({x}, {y}) out of range")));
            }
            reach[x].insert(y);
        }
        // Warshall closure.
        for k in 0..n {
            for x in 0..n {
                if reach[x].contains(k) {
                    reach[x] = reach[x].union(reach[k]);
                }
            }
        }
        let opens = (0..1u64 << n)
            .map(PointSet)
            .filter(|s| s.iter().all(|x| reach[x].is_subset(*s)))
            .collect();
        Ok(Self::with_opens(n, opens))
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_relation(n, &[]).expect("valid size")
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::new(n, [PointSet::EMPTY, PointSet::full(n)]).expect("valid size")
    }

    /// Points `{0, 1}` with opens `∅, {0}, {0, 1}`: point 0 is open, point 1 closed.
    pub fn sierpinski() -> Self {
        Self::new(2, [PointSet::EMPTY, PointSet::singleton(0), PointSet::full(2)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.n)
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    /// Complements of the open sets, in the same order.
    pub fn closeds(&self) -> Vec<PointSet> {
        self.opens.iter().map(|u| u.complement(self.n)).collect()
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        s.is_subset(self.full()) && self.is_open(s.complement(self.n))
    }

    /// Minimal open neighborhood `U_x`.
    pub fn min_nbhd(&self, x: usize) -> PointSet {
        self.min_nbhd[x]
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |acc, x| acc.union(self.min_nbhd[x]))
    }

    /// Closure of `s`: points whose minimal neighborhood meets `s`.
    pub fn closure(&self, s: PointSet) -> PointSet {
        PointSet::from_points((0..self.n).filter(|&x| !self.min_nbhd[x].is_disjoint(s)))
    }

    /// Specialization preorder: `x ⤳ y` iff every open containing `x` contains `y`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.min_nbhd[x].contains(y)
    }

    /// Connected component id of `x`.
    pub fn component_of(&self, x: usize) -> usize {
        self.component[x]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component_set(&self, id: usize) -> PointSet {
        PointSet::from_points((0..self.n).filter(|&x| self.component[x] == id))
    }

    pub fn is_t1(&self) -> bool {
        (0..self.n).all(|x| self.min_nbhd[x] == PointSet::singleton(x))
    }
}

fn components(n: usize, min_nbhd: &[PointSet]) -> (Vec<usize>, usize) {
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                let adjacent = min_nbhd[x].contains(y) || min_nbhd[y].contains(x);
                if adjacent && comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    (comp, next)
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.opens == other.opens
    }
}

impl Eq for FiniteSpace {}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSpace")
            .field("points", &self.n)
            .field("opens", &self.opens)
            .finish()
    }
}

impl Serialize for FiniteSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceLiteral { points: self.n, opens: self.opens.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = SpaceLiteral::deserialize(d)?;
        FiniteSpace::new(lit.points, lit.opens).map_err(serde::de::Error::custom)
    }
}

/// A rational-valued function on a [`FiniteSpace`].
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "FuncLiteral", into = "FuncLiteral")]
pub struct FiniteFunc {
    space: Arc<FiniteSpace>,
    values: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct FuncLiteral {
    space: FiniteSpace,
    values: Vec<Scalar>,
}

impl TryFrom<FuncLiteral> for FiniteFunc {
    type Error = Error;
    fn try_from(lit: FuncLiteral) -> Result<Self> {
        FiniteFunc::new(Arc::new(lit.space), lit.values)
    }
}

impl From<FiniteFunc> for FuncLiteral {
    fn from(f: FiniteFunc) -> Self {
        FuncLiteral { space: (*f.space).clone(), values: f.values }
    }
}

impl FiniteFunc {
    pub fn new(space: Arc<FiniteSpace>, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::CarrierMismatch(format!(
                "{} values for a {}-point space",
                values.len(),
                space.len()
            )));
        }
        Ok(FiniteFunc { space, values })
    }

    pub fn from_ints(space: Arc<FiniteSpace>, values: &[i64]) -> Result<Self> {
        Self::new(space, values.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    pub fn constant(space: Arc<FiniteSpace>, c: Scalar) -> Self {
        let values = vec![c; space.len()];
        FiniteFunc { space, values }
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Scalar {
        &self.values[x]
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        FiniteFunc { space: self.space.clone(), values: self.values.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        assert!(self.compatible(other), "FiniteFunc operands on different spaces");
        FiniteFunc {
            space: self.space.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `{x : pred(f(x))}`.
    pub fn level_set(&self, pred: impl Fn(&Scalar) -> bool) -> PointSet {
        PointSet::from_points((0..self.values.len()).filter(|&x| pred(&self.values[x])))
    }

    /// Upper envelope `f*(x) = sup f(U_x)`.
    pub fn upper_envelope(&self) -> Self {
        self.envelope(|a, b| a.max(b))
    }

    /// Lower envelope `f_*(x) = inf f(U_x)`.
    pub fn lower_envelope(&self) -> Self {
        self.envelope(|a, b| a.min(b))
    }

    fn envelope(&self, pick: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        let values = (0..self.space.len())
            .map(|x| {
                let mut pts = self.space.min_nbhd(x).iter();
                let first = self.values[pts.next().expect("x ∈ U_x")].clone();
                pts.fold(first, |acc, y| pick(&acc, &self.values[y]))
            })
            .collect();
        FiniteFunc { space: self.space.clone(), values }
    }

    pub fn is_usc(&self) -> bool {
        self.upper_envelope() == *self
    }

    pub fn is_lsc(&self) -> bool {
        self.lower_envelope() == *self
    }

    pub fn is_continuous(&self) -> bool {
        self.is_usc() && self.is_lsc()
    }
}

impl PartialEq for FiniteFunc {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.compatible(other)
    }
}

impl fmt::Debug for FiniteFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

impl AlgElement for FiniteFunc {
    type Point = usize;

    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space
    }

    fn constant_like(&self, c: &Scalar) -> Self {
        FiniteFunc::constant(self.space.clone(), c.clone())
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

    fn decisive_points(&self, _other: &Self) -> Vec<usize> {
        (0..self.values.len()).collect()
    }

    fn eval(&self, p: &usize) -> Scalar {
        self.values[*p].clone()
    }

    fn values_sup(&self) -> Scalar {
        self.values.iter().max().expect("nonempty space").clone()
    }

    fn values_inf(&self) -> Scalar {
        self.values.iter().min().expect("nonempty space").clone()
    }
}

/// Upper and lower envelopes of a function together with the semicontinuity
/// verdicts they decide.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelopes {
    pub upper: FiniteFunc,
    pub lower: FiniteFunc,
    pub usc: bool,
    pub lsc: bool,
}

impl Envelopes {
    pub fn continuous(&self) -> bool {
        self.usc && self.lsc
    }
}

pub fn envelopes(f: &FiniteFunc) -> Envelopes {
    let upper = f.upper_envelope();
    let lower = f.lower_envelope();
    let usc = upper == *f;
    let lsc = lower == *f;
    Envelopes { upper, lower, usc, lsc }
}

/// `χ_S` on the space.
pub fn indicator(space: &Arc<FiniteSpace>, s: PointSet) -> FiniteFunc {
    let values = (0..space.len())
        .map(|x| if s.contains(x) { Scalar::one() } else { Scalar::zero() })
        .collect();
    FiniteFunc { space: space.clone(), values }
}
