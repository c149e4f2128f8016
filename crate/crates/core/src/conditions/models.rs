use rand::{Rng, RngCore};

use super::{AnyElement, ExtensionModel, Instance, Outcome};
use crate::certificate::{Certificate, InterpolationForm};
use crate::error::{Error, Result};
use crate::gen::{self, SeqShape};
use crate::insertion::{tong_merge, LowerOracle, MidpointOracle, StrictInsertionOracle};
use crate::lattice::{ensure_le, AlgElement};
use crate::scalar::Scalar;
use crate::seq_model::{
    insert_convergent, insert_on_y, lindelof_extract, noncompact_family, seq_ideal_membership,
    strict_insert, subcover_extract, ConvergentInsertion, FiniteFamily, SeqFunc,
};

/// Largest index set whose subsets are refuted one by one.
const DEFEAT_POOL: usize = 6;

fn finite(a: &AnyElement) -> Result<&crate::finite_space::FiniteFunc> {
    a.as_finite().ok_or_else(|| Error::CarrierMismatch("expected a function on a finite space".into()))
}

fn seq(a: &AnyElement) -> Result<&SeqFunc> {
    a.as_seq().ok_or_else(|| Error::CarrierMismatch("expected a sequence".into()))
}

fn interpolation(form: InterpolationForm, f: &AnyElement, g: &AnyElement, a: AnyElement, b: AnyElement) -> Outcome {
    Outcome::holds(Certificate::Interpolation {
        form,
        lower: f.clone(),
        upper: g.clone(),
        a_seq: vec![a],
        b_seq: vec![b],
    })
}

fn merged(f: &AnyElement, g: &AnyElement, a: AnyElement, b: AnyElement) -> Result<Outcome> {
    let trace = tong_merge(&[a], &[b])?;
    Ok(Outcome::holds(Certificate::Merge { lower: f.clone(), upper: g.clone(), trace }))
}

fn insertion(f: &AnyElement, g: &AnyElement, gap: Option<&Scalar>, w: AnyElement) -> Outcome {
    Outcome::holds(Certificate::Insertion { lower: f.clone(), upper: g.clone(), gap: gap.cloned(), witness: w })
}

/// Index of a member reaching `eps` at each decisive point, in first-use order.
fn greedy_cover(eps: &Scalar, family: &[AnyElement]) -> Result<Vec<usize>> {
    let all = family[1..].iter().try_fold(family[0].clone(), |acc, t| {
        if acc.compatible(t) {
            Ok(acc.join(t))
        } else {
            Err(Error::CarrierMismatch("family mixes carriers".into()))
        }
    })?;
    let mut indices = Vec::new();
    for p in all.decisive_points(&all) {
        let j = family
            .iter()
            .position(|t| t.eval(&p) >= *eps)
            .ok_or_else(|| Error::CoverViolation { at: p.to_string() })?;
        if !indices.contains(&j) {
            indices.push(j);
        }
    }
    Ok(indices)
}

/// Every function on a finite space, embedded by the identity.
///
/// All elements are representable, so every condition holds with the
/// bounds themselves as witnesses.
#[derive(Debug, Clone, Copy, Default)]
pub struct FiniteFullModel;

impl ExtensionModel for FiniteFullModel {
    fn name(&self) -> &str {
        "FiniteFullModel"
    }

    fn embed(&self, a: &AnyElement) -> Result<AnyElement> {
        finite(a).map(|f| AnyElement::Finite(f.clone()))
    }

    fn is_representable(&self, a: &AnyElement) -> bool {
        a.as_finite().is_some()
    }

    fn is_closed(&self, f: &AnyElement) -> bool {
        self.is_representable(f)
    }

    fn is_open(&self, g: &AnyElement) -> bool {
        self.is_representable(g)
    }

    fn interpolate(&self, form: InterpolationForm, f: &AnyElement, g: &AnyElement, _depth: usize) -> Option<Result<Outcome>> {
        Some(match form {
            InterpolationForm::Equal => merged(f, g, f.clone(), g.clone()),
            _ => Ok(interpolation(form, f, g, f.clone(), g.clone())),
        })
    }

    fn insert(&self, f: &AnyElement, g: &AnyElement) -> Option<Result<Outcome>> {
        Some(Ok(insertion(f, g, None, f.clone())))
    }

    fn strict_insert(&self, f: &AnyElement, g: &AnyElement, eps: &Scalar) -> Option<Result<Outcome>> {
        Some(LowerOracle.insert(f, g, eps).map(|w| insertion(f, g, Some(eps), w)))
    }

    fn strict_oracle(&self) -> Option<Box<dyn StrictInsertionOracle<AnyElement> + '_>> {
        Some(Box::new(LowerOracle))
    }

    fn subcover(&self, eps: &Scalar, family: &[AnyElement], _depth: usize) -> Option<Result<Outcome>> {
        Some(greedy_cover(eps, family).map(|indices| {
            Outcome::holds(Certificate::Subcover { eps: eps.clone(), family: family.to_vec(), indices })
        }))
    }

    fn countable_subcover(&self, eps: &Scalar, family: &[AnyElement], depth: usize) -> Option<Result<Outcome>> {
        self.subcover(eps, family, depth)
    }

    fn unit_alpha_compact(&self) -> Option<bool> {
        Some(true)
    }

    fn generate(&self, mut rng: &mut dyn RngCore) -> Option<Instance> {
        let n = rng.gen_range(1..=5);
        let space = gen::finite_space(&mut rng, n);
        let eps = gen_eps(&mut rng);
        let f = gen::finite_func(&mut rng, &space, 3);
        let g = f.add(&gen::finite_func(&mut rng, &space, 3).abs()).add_scalar(&eps);
        let family = vec![gen::finite_func(&mut rng, &space, 3).into(), f.constant_like(&eps).into()];
        Some(Instance::pair(f, g).with_eps(eps).with_family(family))
    }
}

fn gen_eps(rng: &mut impl Rng) -> Scalar {
    Scalar::ratio(1, rng.gen_range(1..=4))
}

/// Convergent sequences inside the eventually periodic sequences on `ℕ`.
///
/// Elements carry no `ω`-value. Every element of `B` is both a countable
/// meet and a countable join of representable ones, so closed and open
/// are unrestricted.
#[derive(Debug, Clone, Copy, Default)]
pub struct SeqXEndModel;

impl SeqXEndModel {
    fn refute_finite_covers(eps: &Scalar, depth: usize) -> Result<Outcome> {
        let family = noncompact_family(eps, &Scalar::one())?;
        let pool = depth.clamp(1, DEFEAT_POOL);
        let defeats = (0u32..1 << pool)
            .map(|mask| {
                let chosen: Vec<usize> = (0..pool).filter(|i| mask >> i & 1 == 1).collect();
                family.defeat(&chosen)
            })
            .collect();
        Ok(Outcome::fails(Certificate::NoncompactDefeats { family, defeats }))
    }
}

fn on_n(a: &AnyElement) -> Result<&SeqFunc> {
    let s = seq(a)?;
    if s.has_omega() {
        return Err(Error::UnexpectedOmega);
    }
    Ok(s)
}

fn convergent_outcome(f: &SeqFunc, g: &SeqFunc, gap: Option<&Scalar>, r: ConvergentInsertion) -> Outcome {
    match r {
        ConvergentInsertion::Witness { witness } => {
            insertion(&f.clone().into(), &g.clone().into(), gap, witness.into())
        }
        ConvergentInsertion::Infeasible(c) => Outcome::fails(Certificate::NoConvergentInsertion {
            lower: c.lower,
            upper: c.upper,
            gap: gap.cloned(),
            limsup: c.limsup,
            liminf: c.liminf,
        }),
    }
}

/// The midpoint oracle lifted to [`AnyElement`].
struct SeqMidpoint;

impl StrictInsertionOracle<AnyElement> for SeqMidpoint {
    fn name(&self) -> &str {
        MidpointOracle.name()
    }

    fn insert(&self, lower: &AnyElement, upper: &AnyElement, eps: &Scalar) -> Result<AnyElement> {
        MidpointOracle.insert(on_n(lower)?, on_n(upper)?, eps).map(AnyElement::Seq)
    }
}

impl ExtensionModel for SeqXEndModel {
    fn name(&self) -> &str {
        "SeqXEndModel"
    }

    /// Restriction to `ℕ` of a convergent function on `Y`.
    fn embed(&self, a: &AnyElement) -> Result<AnyElement> {
        let s = seq(a)?;
        if !s.is_convergent() {
            return Err(Error::NotConvergent);
        }
        Ok(AnyElement::Seq(s.on_naturals()))
    }

    fn is_representable(&self, a: &AnyElement) -> bool {
        a.as_seq().is_some_and(|s| !s.has_omega() && s.is_convergent())
    }

    fn is_closed(&self, f: &AnyElement) -> bool {
        a_on_n(f)
    }

    fn is_open(&self, g: &AnyElement) -> bool {
        a_on_n(g)
    }

    fn interpolate(&self, form: InterpolationForm, f: &AnyElement, g: &AnyElement, depth: usize) -> Option<Result<Outcome>> {
        let (f, g) = match (on_n(f), on_n(g)) {
            (Ok(f), Ok(g)) => (f, g),
            (Err(e), _) | (_, Err(e)) => return Some(Err(e)),
        };
        let sandwich = |meet_target: &SeqFunc, join_target: &SeqFunc| {
            Outcome::holds(Certificate::CountableSandwich {
                lower: f.clone(),
                upper: g.clone(),
                meet_target: meet_target.clone(),
                join_target: join_target.clone(),
                depth: depth.max(1),
            })
        };
        Some(Ok(match form {
            InterpolationForm::MeetThenJoin => sandwich(f, g),
            InterpolationForm::Equal => sandwich(f, f),
            // A join of representables below a meet of representables needs a
            // decision about every tail at once; no finite depth settles it.
            InterpolationForm::JoinThenMeet => Outcome::unknown(depth),
        }))
    }

    fn insert(&self, f: &AnyElement, g: &AnyElement) -> Option<Result<Outcome>> {
        Some((|| {
            let (f, g) = (on_n(f)?, on_n(g)?);
            Ok(convergent_outcome(f, g, None, insert_convergent(f, g)?))
        })())
    }

    fn strict_insert(&self, f: &AnyElement, g: &AnyElement, eps: &Scalar) -> Option<Result<Outcome>> {
        Some((|| {
            let (f, g) = (on_n(f)?, on_n(g)?);
            Ok(convergent_outcome(f, g, Some(eps), strict_insert(f, g, eps)?))
        })())
    }

    fn strict_oracle(&self) -> Option<Box<dyn StrictInsertionOracle<AnyElement> + '_>> {
        Some(Box::new(SeqMidpoint))
    }

    /// The cover `(eps + 1)·χ_{0..=n} − χ_{n+1..}` escapes every finite
    /// subfamily, so finite subcovers fail regardless of the instance.
    fn subcover(&self, eps: &Scalar, family: &[AnyElement], depth: usize) -> Option<Result<Outcome>> {
        Some(collect_n(family).and_then(|_| Self::refute_finite_covers(eps, depth)))
    }

    fn countable_subcover(&self, eps: &Scalar, family: &[AnyElement], _depth: usize) -> Option<Result<Outcome>> {
        Some((|| {
            let members = collect_n(family)?;
            let horizon = members.iter().map(|t| t.prefix().len()).max().unwrap_or(0)
                + members.iter().map(|t| t.cycle().len()).fold(1, num_integer::lcm);
            let fam = FiniteFamily(members);
            let selection = lindelof_extract(eps, &fam, horizon, fam.0.len())?;
            Ok(Outcome::holds(Certificate::Lindelof { eps: eps.clone(), family: fam.0, selection }))
        })())
    }

    fn unit_alpha_compact(&self) -> Option<bool> {
        seq_ideal_membership(&SeqFunc::constant_on_y(Scalar::one())).ok().map(|m| m.in_i_alpha)
    }

    fn generate(&self, mut rng: &mut dyn RngCore) -> Option<Instance> {
        let shape = SeqShape::default();
        let eps = gen_eps(&mut rng);
        let (f, g) = if rng.gen_bool(0.5) {
            gen::feasible_pair_on_n(&mut rng, shape)
        } else {
            gen::pair_on_n(&mut rng, shape)
        };
        let family = gen::cover_family(&mut rng, shape, &eps, 3, false).into_iter().map(Into::into).collect();
        Some(Instance::pair(f, g.add_scalar(&eps)).with_eps(eps).with_family(family))
    }
}

fn a_on_n(a: &AnyElement) -> bool {
    a.as_seq().is_some_and(|s| !s.has_omega())
}

fn collect_n(family: &[AnyElement]) -> Result<Vec<SeqFunc>> {
    family.iter().map(|t| on_n(t).cloned()).collect()
}

/// Continuous functions on `Y` inside the eventually periodic functions on `Y`.
///
/// Closed elements are the usc ones and open elements the lsc ones; `Y` is
/// compact, so covers and insertions are settled at `ω`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SeqYEndModel;

fn on_y(a: &AnyElement) -> Result<&SeqFunc> {
    let s = seq(a)?;
    if !s.has_omega() {
        return Err(Error::OmegaMissing);
    }
    Ok(s)
}

fn y_insert(f: &AnyElement, g: &AnyElement) -> Result<AnyElement> {
    insert_on_y(on_y(f)?, on_y(g)?).map(AnyElement::Seq)
}

struct YOracle;

impl StrictInsertionOracle<AnyElement> for YOracle {
    fn name(&self) -> &str {
        "continuous-on-Y"
    }

    fn insert(&self, lower: &AnyElement, upper: &AnyElement, eps: &Scalar) -> Result<AnyElement> {
        ensure_le(&lower.add_scalar(eps), upper)?;
        y_insert(lower, upper)
    }
}

impl ExtensionModel for SeqYEndModel {
    fn name(&self) -> &str {
        "SeqYEndModel"
    }

    fn embed(&self, a: &AnyElement) -> Result<AnyElement> {
        let s = on_y(a)?;
        if !s.is_convergent() {
            return Err(Error::NotConvergent);
        }
        Ok(a.clone())
    }

    fn is_representable(&self, a: &AnyElement) -> bool {
        a.as_seq().is_some_and(|s| s.has_omega() && s.is_convergent())
    }

    fn is_closed(&self, f: &AnyElement) -> bool {
        f.as_seq().and_then(|s| s.semicontinuity_on_y().ok()).is_some_and(|s| s.usc)
    }

    fn is_open(&self, g: &AnyElement) -> bool {
        g.as_seq().and_then(|s| s.semicontinuity_on_y().ok()).is_some_and(|s| s.lsc)
    }

    fn interpolate(&self, form: InterpolationForm, f: &AnyElement, g: &AnyElement, _depth: usize) -> Option<Result<Outcome>> {
        Some(y_insert(f, g).and_then(|c| match form {
            InterpolationForm::Equal => merged(f, g, c.clone(), c),
            _ => Ok(interpolation(form, f, g, c.clone(), c)),
        }))
    }

    fn insert(&self, f: &AnyElement, g: &AnyElement) -> Option<Result<Outcome>> {
        Some(y_insert(f, g).map(|c| insertion(f, g, None, c)))
    }

    fn strict_insert(&self, f: &AnyElement, g: &AnyElement, eps: &Scalar) -> Option<Result<Outcome>> {
        Some(YOracle.insert(f, g, eps).map(|c| insertion(f, g, Some(eps), c)))
    }

    fn strict_oracle(&self) -> Option<Box<dyn StrictInsertionOracle<AnyElement> + '_>> {
        Some(Box::new(YOracle))
    }

    fn subcover(&self, eps: &Scalar, family: &[AnyElement], _depth: usize) -> Option<Result<Outcome>> {
        Some((|| {
            let members: Vec<SeqFunc> = family.iter().map(|t| on_y(t).cloned()).collect::<Result<_>>()?;
            let sub = subcover_extract(eps, &members)?;
            Ok(Outcome::holds(Certificate::Subcover { eps: eps.clone(), family: family.to_vec(), indices: sub.indices }))
        })())
    }

    fn countable_subcover(&self, eps: &Scalar, family: &[AnyElement], depth: usize) -> Option<Result<Outcome>> {
        self.subcover(eps, family, depth)
    }

    fn unit_alpha_compact(&self) -> Option<bool> {
        Some(true)
    }

    fn generate(&self, mut rng: &mut dyn RngCore) -> Option<Instance> {
        let shape = SeqShape::default();
        let eps = gen_eps(&mut rng);
        let (f, g) = gen::usc_lsc_pair_on_y(&mut rng, shape);
        let family = gen::cover_family(&mut rng, shape, &eps, 3, true).into_iter().map(Into::into).collect();
        Some(Instance::pair(f, g.add_scalar(&eps)).with_eps(eps).with_family(family))
    }
}

/// Declares nothing beyond the carrier checks; every condition reports a
/// missing capability.
#[derive(Debug, Clone, Copy, Default)]
pub struct StubModel;

impl ExtensionModel for StubModel {
    fn name(&self) -> &str {
        "StubModel"
    }

    fn embed(&self, a: &AnyElement) -> Result<AnyElement> {
        Ok(a.clone())
    }

    fn is_representable(&self, _a: &AnyElement) -> bool {
        true
    }

    fn is_closed(&self, _f: &AnyElement) -> bool {
        true
    }

    fn is_open(&self, _g: &AnyElement) -> bool {
        true
    }
}
