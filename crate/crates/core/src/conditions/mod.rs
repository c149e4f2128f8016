//! Extension conditions as checks against pluggable extension models.
//!
//! An [`ExtensionModel`] describes an embedding `α: A → B` of a function
//! algebra into a larger one, which elements of `B` count as closed or open,
//! and whichever oracles the model can supply. [`check_condition`] turns a
//! condition and an instance into a [`ConditionReport`] whose certificate
//! can be replayed independently.
//!
//! Countable quantifiers are bounded by an explicit depth, so a verdict is
//! one of `Holds`, `Fails` or `UnknownAtDepth`. Maximality of an extension
//! is not checked here: it quantifies over all compatible extensions, and is
//! only witnessed negatively through failures of (N).

mod any;
mod harness;
mod models;

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use serde::{Deserialize, Serialize};

pub use any::{AnyElement, AnyPoint};
pub use harness::{equivalence_harness, ImplicationMatrix, ImplicationRow};
pub use models::{FiniteFullModel, SeqXEndModel, SeqYEndModel, StubModel};

use crate::certificate::{Certificate, InterpolationForm};
use crate::error::{Error, Result};
use crate::insertion::StrictInsertionOracle;
use crate::lattice::ensure_le;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    T,
    BS,
    S,
    N,
    D,
    C,
    L,
    SL,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::T,
        Condition::BS,
        Condition::S,
        Condition::N,
        Condition::D,
        Condition::C,
        Condition::L,
        Condition::SL,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Condition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Condition::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown condition {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    UnknownAtDepth(usize),
}

/// The data a condition is checked on. `f` is the closed side and `g` the
/// open side; `family` and `eps` describe a cover `eps <= ⋁ α[family]`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<AnyElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<AnyElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<AnyElement>>,
}

impl Instance {
    pub fn pair(f: impl Into<AnyElement>, g: impl Into<AnyElement>) -> Self {
        Instance { f: Some(f.into()), g: Some(g.into()), ..Default::default() }
    }

    pub fn with_eps(mut self, eps: Scalar) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn with_family(mut self, family: Vec<AnyElement>) -> Self {
        self.family = Some(family);
        self
    }

    pub fn cover(eps: Scalar, family: Vec<AnyElement>) -> Self {
        Instance { eps: Some(eps), family: Some(family), ..Default::default() }
    }

    fn bounds(&self) -> Result<(&AnyElement, &AnyElement)> {
        Ok((self.f.as_ref().ok_or(Error::InstanceMissing("f"))?, self.g.as_ref().ok_or(Error::InstanceMissing("g"))?))
    }

    fn eps(&self) -> Result<&Scalar> {
        let e = self.eps.as_ref().ok_or(Error::InstanceMissing("eps"))?;
        if !e.is_positive() {
            return Err(Error::InvalidArgument(format!("eps {e} is not positive")));
        }
        Ok(e)
    }

    fn family(&self) -> Result<&[AnyElement]> {
        let fam = self.family.as_deref().ok_or(Error::InstanceMissing("family"))?;
        if fam.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(fam)
    }
}

/// A verdict together with its evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

impl Outcome {
    pub fn holds(c: Certificate) -> Self {
        Outcome { verdict: Verdict::Holds, certificate: Some(c) }
    }

    pub fn fails(c: Certificate) -> Self {
        Outcome { verdict: Verdict::Fails, certificate: Some(c) }
    }

    pub fn unknown(depth: usize) -> Self {
        Outcome { verdict: Verdict::UnknownAtDepth(depth), certificate: None }
    }
}

/// JSON shape: `{condition, model, instance, verdict, certificate, depth}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub model: String,
    pub instance: Instance,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub depth: usize,
}

/// An embedding `α: A → B` with the oracles it supports.
///
/// Capability methods return `None` when the model has no such oracle.
pub trait ExtensionModel: Send + Sync {
    fn name(&self) -> &str;

    /// `α` on an element of `A`.
    fn embed(&self, a: &AnyElement) -> Result<AnyElement>;
    /// Whether `a` is (the image of) an element of `A`.
    fn is_representable(&self, a: &AnyElement) -> bool;
    /// Meet of elements of `α[A]`.
    fn is_closed(&self, f: &AnyElement) -> bool;
    /// Join of elements of `α[A]`.
    fn is_open(&self, g: &AnyElement) -> bool;

    fn interpolate(
        &self,
        _form: InterpolationForm,
        _f: &AnyElement,
        _g: &AnyElement,
        _depth: usize,
    ) -> Option<Result<Outcome>> {
        None
    }

    fn insert(&self, _f: &AnyElement, _g: &AnyElement) -> Option<Result<Outcome>> {
        None
    }

    fn strict_insert(&self, _f: &AnyElement, _g: &AnyElement, _eps: &Scalar) -> Option<Result<Outcome>> {
        None
    }

    fn strict_oracle(&self) -> Option<Box<dyn StrictInsertionOracle<AnyElement> + '_>> {
        None
    }

    /// Finite subfamily with nonnegative join.
    fn subcover(&self, _eps: &Scalar, _family: &[AnyElement], _depth: usize) -> Option<Result<Outcome>> {
        None
    }

    /// Countable subfamily with nonnegative join.
    fn countable_subcover(
        &self,
        _eps: &Scalar,
        _family: &[AnyElement],
        _depth: usize,
    ) -> Option<Result<Outcome>> {
        None
    }

    /// Whether the constant 1 is α-compact.
    fn unit_alpha_compact(&self) -> Option<bool> {
        None
    }

    /// A random well-formed instance: closed `f`, open `g` with a gap
    /// `eps`, and a cover family reaching `eps`.
    fn generate(&self, _rng: &mut dyn RngCore) -> Option<Instance> {
        None
    }
}

fn missing(model: &dyn ExtensionModel, capability: &str) -> Error {
    Error::ModelCapabilityMissing { model: model.name().to_string(), capability: capability.to_string() }
}

fn checked_bounds<'a>(model: &dyn ExtensionModel, inst: &'a Instance) -> Result<(&'a AnyElement, &'a AnyElement)> {
    let (f, g) = inst.bounds()?;
    ensure_le(f, g)?;
    if !model.is_closed(f) {
        return Err(Error::PreconditionViolation("f is not closed in this model".into()));
    }
    if !model.is_open(g) {
        return Err(Error::PreconditionViolation("g is not open in this model".into()));
    }
    Ok((f, g))
}

fn checked_family<'a>(model: &dyn ExtensionModel, inst: &'a Instance) -> Result<(&'a Scalar, &'a [AnyElement])> {
    let eps = inst.eps()?;
    let family = inst.family()?;
    if let Some(i) = family.iter().position(|t| !model.is_representable(t)) {
        return Err(Error::PreconditionViolation(format!("family member {i} is not representable")));
    }
    Ok((eps, family))
}

fn run(model: &dyn ExtensionModel, cond: Condition, inst: &Instance, depth: usize) -> Result<Outcome> {
    let form = |form, cap: &str| -> Result<Outcome> {
        let (f, g) = checked_bounds(model, inst)?;
        model.interpolate(form, f, g, depth).ok_or_else(|| missing(model, cap))?
    };
    match cond {
        Condition::T => form(InterpolationForm::MeetThenJoin, "interpolation"),
        Condition::BS => form(InterpolationForm::JoinThenMeet, "interpolation"),
        Condition::S => form(InterpolationForm::Equal, "interpolation"),
        Condition::N => {
            let (f, g) = checked_bounds(model, inst)?;
            model.insert(f, g).ok_or_else(|| missing(model, "insertion"))?
        }
        Condition::D => {
            let (f, g) = checked_bounds(model, inst)?;
            let eps = inst.eps()?;
            model.strict_insert(f, g, eps).ok_or_else(|| missing(model, "strict insertion"))?
        }
        Condition::C => {
            let (eps, family) = checked_family(model, inst)?;
            model.subcover(eps, family, depth).ok_or_else(|| missing(model, "subcover"))?
        }
        Condition::L => {
            let (eps, family) = checked_family(model, inst)?;
            model
                .countable_subcover(eps, family, depth)
                .ok_or_else(|| missing(model, "countable selection"))?
        }
        Condition::SL => {
            let l = run(model, Condition::L, inst, depth)?;
            let n = run(model, Condition::N, inst, depth)?;
            Ok(conjunction(l, n, depth))
        }
    }
}

/// Both parts must hold; either failing refutes.
fn conjunction(a: Outcome, b: Outcome, depth: usize) -> Outcome {
    let parts: Vec<Certificate> = [&a, &b].iter().filter_map(|o| o.certificate.clone()).collect();
    let failed: Vec<Certificate> = [&a, &b]
        .iter()
        .filter(|o| o.verdict == Verdict::Fails)
        .filter_map(|o| o.certificate.clone())
        .collect();
    match (&a.verdict, &b.verdict) {
        (Verdict::Holds, Verdict::Holds) => Outcome::holds(Certificate::Conjunction { parts }),
        _ if !failed.is_empty() => Outcome::fails(Certificate::Conjunction { parts: failed }),
        _ => Outcome::unknown(depth),
    }
}

/// Checks one condition on one instance.
pub fn check_condition(
    model: &dyn ExtensionModel,
    cond: Condition,
    inst: &Instance,
    depth: usize,
) -> Result<ConditionReport> {
    let out = run(model, cond, inst, depth)?;
    Ok(ConditionReport {
        condition: cond,
        model: model.name().to_string(),
        instance: inst.clone(),
        verdict: out.verdict,
        certificate: out.certificate,
        depth,
    })
}

/// Looks up one of the provided models by name.
pub fn model_by_name(name: &str) -> Option<Box<dyn ExtensionModel>> {
    match name {
        "FiniteFullModel" => Some(Box::new(FiniteFullModel)),
        "SeqXEndModel" => Some(Box::new(SeqXEndModel)),
        "SeqYEndModel" => Some(Box::new(SeqYEndModel)),
        "StubModel" => Some(Box::new(StubModel)),
        _ => None,
    }
}

pub const MODEL_NAMES: [&str; 4] = ["FiniteFullModel", "SeqXEndModel", "SeqYEndModel", "StubModel"];

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finite_space::{FiniteFunc, FiniteSpace};
    use crate::lattice::AlgElement;
    use crate::replay::verify;
    use crate::scalar::q;
    use crate::seq_model::SeqFunc;

    fn all_reports(model: &dyn ExtensionModel, inst: &Instance, depth: usize) -> Vec<ConditionReport> {
        Condition::ALL.iter().map(|&c| check_condition(model, c, inst, depth).unwrap()).collect()
    }

    #[test]
    fn finite_full_model_holds_everywhere() {
        let space = Arc::new(FiniteSpace::sierpinski());
        let f = FiniteFunc::from_ints(space.clone(), &[0, 1]).unwrap();
        let g = FiniteFunc::from_ints(space.clone(), &[2, 2]).unwrap();
        let fam = vec![
            FiniteFunc::from_ints(space.clone(), &[1, -1]).unwrap().into(),
            FiniteFunc::from_ints(space, &[0, 1]).unwrap().into(),
        ];
        let inst = Instance::pair(f, g).with_eps(q(1, 2)).with_family(fam);
        for r in all_reports(&FiniteFullModel, &inst, 4) {
            assert_eq!(r.verdict, Verdict::Holds, "{}", r.condition);
            verify(r.certificate.as_ref().unwrap()).unwrap();
        }
    }

    #[test]
    fn x_end_separates_interpolation_from_insertion() {
        let e = SeqFunc::evens(None);
        let inst = Instance::pair(e.clone(), e.clone());
        let t = check_condition(&SeqXEndModel, Condition::T, &inst, 6).unwrap();
        let n = check_condition(&SeqXEndModel, Condition::N, &inst, 6).unwrap();
        let bs = check_condition(&SeqXEndModel, Condition::BS, &inst, 6).unwrap();
        assert_eq!((t.verdict, n.verdict), (Verdict::Holds, Verdict::Fails));
        assert_eq!(bs.verdict, Verdict::UnknownAtDepth(6));
        verify(&t.certificate.unwrap()).unwrap();
        verify(&n.certificate.unwrap()).unwrap();

        let f = e.scale(&q(2, 1));
        let d = Instance::pair(f.clone(), f.add_scalar(&q(1, 1))).with_eps(q(1, 1));
        let r = check_condition(&SeqXEndModel, Condition::D, &d, 6).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
    }

    #[test]
    fn x_end_covers() {
        let fam: Vec<AnyElement> =
            vec![SeqFunc::from_ints(&[1, -1], &[0], None).into(), SeqFunc::from_ints(&[0, 0], &[1], None).into(), SeqFunc::from_ints(&[-1], &[1], None).into()];
        let inst = Instance::cover(q(1, 1), fam).with_eps(q(1, 1));
        let c = check_condition(&SeqXEndModel, Condition::C, &inst, 6).unwrap();
        assert_eq!(c.verdict, Verdict::Fails);
        let Some(Certificate::NoncompactDefeats { defeats, .. }) = &c.certificate else { panic!() };
        assert_eq!(defeats.len(), 64);
        verify(c.certificate.as_ref().unwrap()).unwrap();
        let l = check_condition(&SeqXEndModel, Condition::L, &inst, 6).unwrap();
        assert_eq!(l.verdict, Verdict::Holds);
        verify(l.certificate.as_ref().unwrap()).unwrap();
        // SL needs an (f, g) pair too.
        assert_eq!(check_condition(&SeqXEndModel, Condition::SL, &inst, 6), Err(Error::InstanceMissing("f")));
    }

    #[test]
    fn y_end_holds() {
        let f = SeqFunc::evens(Some(q(1, 1)));
        let g = SeqFunc::constant_on_y(q(2, 1));
        let fam = vec![SeqFunc::indicator_upto(2, true).into(), SeqFunc::constant_on_y(q(1, 2)).into()];
        let inst = Instance::pair(f.clone(), g).with_eps(q(1, 4)).with_family(fam);
        let reports = all_reports(&SeqYEndModel, &inst, 5);
        assert!(reports.iter().all(|r| r.verdict == Verdict::Holds));
        for r in reports {
            verify(r.certificate.as_ref().unwrap()).unwrap();
        }
        // No room for a gap of 1/4 between equal bounds.
        let z = SeqFunc::constant_on_y(q(0, 1));
        let tight = Instance::pair(z.clone(), z).with_eps(q(1, 4));
        assert!(matches!(check_condition(&SeqYEndModel, Condition::D, &tight, 5), Err(Error::OrderViolation { .. })));
    }

    #[test]
    fn y_end_rejects_non_semicontinuous_bounds() {
        let f = SeqFunc::evens(Some(q(0, 1)));
        let g = SeqFunc::constant_on_y(q(1, 1));
        let r = check_condition(&SeqYEndModel, Condition::N, &Instance::pair(f, g), 5);
        assert!(matches!(r, Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn stub_reports_missing_capabilities() {
        let e = SeqFunc::constant(q(0, 1));
        let inst = Instance::pair(e.clone(), e.clone()).with_eps(q(1, 1)).with_family(vec![e.add_scalar(&q(1, 1)).into()]);
        for c in Condition::ALL {
            let r = check_condition(&StubModel, c, &inst, 3);
            assert!(matches!(r, Err(Error::ModelCapabilityMissing { .. })), "{c}: {r:?}");
        }
    }

    #[test]
    fn missing_fields_named() {
        let r = check_condition(&FiniteFullModel, Condition::N, &Instance::default(), 3);
        assert_eq!(r, Err(Error::InstanceMissing("f")));
        let space = Arc::new(FiniteSpace::discrete(1));
        let f = FiniteFunc::from_ints(space, &[0]).unwrap();
        let r = check_condition(&FiniteFullModel, Condition::D, &Instance::pair(f.clone(), f), 3);
        assert_eq!(r, Err(Error::InstanceMissing("eps")));
    }

    #[test]
    fn report_json_round_trip() {
        let e = SeqFunc::evens(None);
        let r = check_condition(&SeqXEndModel, Condition::N, &Instance::pair(e.clone(), e), 4).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        for key in ["condition", "model", "instance", "verdict", "certificate", "depth"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        let back: ConditionReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn harness_clean_on_every_model() {
        use crate::gen::{self, SeqShape};
        let mut rng = gen::rng(11);
        let shape = SeqShape::default();
        let eps = q(1, 2);

        let mut x = Vec::new();
        let mut y = Vec::new();
        let mut fin = Vec::new();
        for i in 0..12 {
            let (f, g) = if i % 2 == 0 { gen::feasible_pair_on_n(&mut rng, shape) } else { gen::pair_on_n(&mut rng, shape) };
            let fam = gen::cover_family(&mut rng, shape, &eps, 3, false).into_iter().map(Into::into).collect();
            x.push(Instance::pair(f, g).with_eps(eps.clone()).with_family(fam));
            let (f, g) = gen::usc_lsc_pair_on_y(&mut rng, shape);
            let fam = gen::cover_family(&mut rng, shape, &eps, 3, true).into_iter().map(Into::into).collect();
            y.push(Instance::pair(f, g).with_eps(eps.clone()).with_family(fam));
            let space = gen::finite_space(&mut rng, 4);
            let f = gen::finite_func(&mut rng, &space, 3);
            let g = f.add(&gen::finite_func(&mut rng, &space, 3).abs());
            let fam = vec![f.one_like().into()];
            fin.push(Instance::pair(f, g).with_eps(eps.clone()).with_family(fam));
        }
        for (model, insts) in [
            (&SeqXEndModel as &dyn ExtensionModel, &x),
            (&SeqYEndModel as &dyn ExtensionModel, &y),
            (&FiniteFullModel as &dyn ExtensionModel, &fin),
        ] {
            let m = equivalence_harness(model, insts, 8);
            assert!(m.all_pass(), "{m:#?}");
            assert!(m.rows.iter().any(|r| r.tested > 0));
        }
        let m = equivalence_harness(&SeqXEndModel, &x, 8);
        assert!(m.interpolation_without_insertion > 0);
        assert_eq!(m.row("C <=> 1 is α-compact").unwrap().tested, 12);
    }
}
