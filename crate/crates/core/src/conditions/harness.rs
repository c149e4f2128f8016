//! Cross-checks between conditions on a model, one row per implication.

use serde::{Deserialize, Serialize};

use super::{check_condition, AnyElement, Condition, ExtensionModel, Instance, Verdict};
use crate::certificate::{Certificate, InterpolationForm};
use crate::error::Result;
use crate::insertion::{dieudonne_iterate, tong_merge};
use crate::lattice::{meet_all, AlgElement};
use crate::replay::verify;
use crate::scalar::Scalar;
use crate::seq_model::nearest_convergent_insertion;

/// Iterations run for the strict-to-plain step.
const MAX_ITERATION_STEPS: usize = 24;
/// Largest `n` for the `1/n` shifts in the ε-removal row.
const MAX_SHIFT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationRow {
    pub implication: String,
    /// Instances on which both sides could be evaluated.
    pub tested: usize,
    /// Instances where the implication or a produced certificate failed.
    pub failures: usize,
    /// Instances lacking the data, capability or premise for the row.
    pub skipped: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationMatrix {
    pub model: String,
    pub depth: usize,
    pub rows: Vec<ImplicationRow>,
    /// Instances where (T) holds while (N) fails.
    pub interpolation_without_insertion: usize,
}

impl ImplicationMatrix {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.failures == 0)
    }

    pub fn row(&self, implication: &str) -> Option<&ImplicationRow> {
        self.rows.iter().find(|r| r.implication == implication)
    }
}

enum Step {
    Pass,
    Fail(String),
    Skip,
}

fn row(name: &str, instances: &[Instance], mut f: impl FnMut(&Instance) -> Step) -> ImplicationRow {
    let mut r = ImplicationRow { implication: name.to_string(), tested: 0, failures: 0, skipped: 0, notes: Vec::new() };
    for (i, inst) in instances.iter().enumerate() {
        match f(inst) {
            Step::Pass => r.tested += 1,
            Step::Fail(why) => {
                r.tested += 1;
                r.failures += 1;
                r.notes.push(format!("instance {i}: {why}"));
            }
            Step::Skip => r.skipped += 1,
        }
    }
    r
}

fn verified(cert: &Certificate) -> std::result::Result<(), String> {
    verify(cert).map_err(|e| e.to_string())
}

macro_rules! step {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Step::Fail(e.to_string()),
        }
    };
}

fn report(model: &dyn ExtensionModel, cond: Condition, inst: &Instance, depth: usize) -> Option<Result<super::ConditionReport>> {
    match check_condition(model, cond, inst, depth) {
        Err(crate::Error::ModelCapabilityMissing { .. } | crate::Error::InstanceMissing(_)) => None,
        r => Some(r),
    }
}

fn t_implies_s(model: &dyn ExtensionModel, inst: &Instance, depth: usize) -> Step {
    let Some(t) = report(model, Condition::T, inst, depth) else { return Step::Skip };
    let t = step!(t);
    if t.verdict != Verdict::Holds {
        return Step::Skip;
    }
    let cert = t.certificate.expect("holding verdicts carry certificates");
    step!(verified(&cert));
    match cert {
        Certificate::Interpolation { lower, upper, a_seq, b_seq, .. } => {
            let trace = step!(tong_merge(&a_seq, &b_seq));
            let merged = Certificate::Merge { lower: lower.clone(), upper: upper.clone(), trace: trace.clone() };
            step!(verified(&merged));
            if !(lower.le(&trace.result) && trace.result.le(&upper)) {
                return Step::Fail("merge leaves the bounds".into());
            }
            Step::Pass
        }
        _ => {
            // Countable families: the merge is carried out by the model.
            let Some(s) = report(model, Condition::S, inst, depth) else { return Step::Skip };
            let s = step!(s);
            match (&s.verdict, &s.certificate) {
                (Verdict::Holds, Some(c)) => {
                    step!(verified(c));
                    Step::Pass
                }
                _ => Step::Fail(format!("(T) holds but (S) reports {:?}", s.verdict)),
            }
        }
    }
}

fn bs_implies_t(model: &dyn ExtensionModel, inst: &Instance, depth: usize) -> Step {
    let Some(first) = report(model, Condition::BS, inst, depth) else { return Step::Skip };
    let first = step!(first);
    let Some(Certificate::Interpolation { lower, upper, b_seq: b, .. }) = first.certificate.clone() else {
        return Step::Skip;
    };
    if first.verdict != Verdict::Holds {
        return Step::Skip;
    }
    step!(verified(first.certificate.as_ref().unwrap()));
    // Apply again to (⋀b, g); the second join-side family completes the meet.
    let inner = step!(meet_all(&b));
    let again = Instance { f: Some(inner), g: Some(upper.clone()), ..Default::default() };
    let Some(second) = report(model, Condition::BS, &again, depth) else { return Step::Skip };
    let second = step!(second);
    let Some(Certificate::Interpolation { a_seq: c, .. }) = second.certificate else {
        return Step::Fail(format!("second application reports {:?}", second.verdict));
    };
    let cert = Certificate::Interpolation { form: InterpolationForm::MeetThenJoin, lower, upper, a_seq: b, b_seq: c };
    step!(verified(&cert));
    Step::Pass
}

fn d_implies_n(model: &dyn ExtensionModel, inst: &Instance, depth: usize) -> Step {
    let (Some(f), Some(g)) = (&inst.f, &inst.g) else { return Step::Skip };
    let Some(oracle) = model.strict_oracle() else { return Step::Skip };
    let Some(n) = report(model, Condition::N, inst, depth) else { return Step::Skip };
    let n = step!(n);
    let steps = depth.clamp(1, MAX_ITERATION_STEPS);
    match dieudonne_iterate(oracle.as_ref(), f, g, steps) {
        Ok(trace) => {
            if !trace.all_checks_pass() {
                return Step::Fail("iteration trace records a failed check".into());
            }
            let last = trace.a_seq.last().unwrap().clone();
            step!(verified(&Certificate::Iteration { trace }));
            if n.verdict != Verdict::Holds {
                return Step::Fail("iteration converged but (N) does not hold".into());
            }
            if let (AnyElement::Seq(fs), AnyElement::Seq(gs), AnyElement::Seq(a)) = (f, g, &last) {
                if !fs.has_omega() {
                    let h = step!(nearest_convergent_insertion(fs, gs, a));
                    let bound = Scalar::pow2_inv(steps as u32 - 1);
                    if !(fs.le(&h) && h.le(gs)) || h.sub(a).norm() > bound {
                        return Step::Fail("last iterate is far from every insertion".into());
                    }
                }
            }
            Step::Pass
        }
        // The oracle refuses only when no insertion exists at all.
        Err(crate::Error::PreconditionViolation(_)) if n.verdict == Verdict::Fails => Step::Pass,
        Err(e) => Step::Fail(format!("iteration failed ({e}) while (N) reports {:?}", n.verdict)),
    }
}

fn c_iff_unit_compact(model: &dyn ExtensionModel, inst: &Instance, depth: usize) -> Step {
    let Some(unit) = model.unit_alpha_compact() else { return Step::Skip };
    let Some(c) = report(model, Condition::C, inst, depth) else { return Step::Skip };
    let c = step!(c);
    if let Some(cert) = &c.certificate {
        step!(verified(cert));
    }
    match (&c.verdict, unit) {
        (Verdict::Holds, true) | (Verdict::Fails, false) => Step::Pass,
        (Verdict::UnknownAtDepth(_), _) => Step::Skip,
        (v, u) => Step::Fail(format!("(C) reports {v:?} but unit α-compactness is {u}")),
    }
}

/// Covers of `T + 1/n` by shifted members with `eps = 1/n`; the union of the
/// selections must have join at least `-1/N` on the evaluated window.
fn eps_removal(model: &dyn ExtensionModel, inst: &Instance, depth: usize) -> Step {
    let Some(family) = &inst.family else { return Step::Skip };
    if family.is_empty() {
        return Step::Skip;
    }
    let top = depth.clamp(1, MAX_SHIFT);
    let mut chosen: Vec<usize> = Vec::new();
    for n in 1..=top {
        let r = Scalar::ratio(1, n as i64);
        let shifted: Vec<AnyElement> = family.iter().map(|t| t.add_scalar(&r)).collect();
        let sub = Instance::cover(r.clone(), shifted.clone());
        let Some(rep) = report(model, Condition::L, &sub, depth) else { return Step::Skip };
        let rep = match rep {
            Ok(rep) => rep,
            // The shifted family need not reach 1/n everywhere.
            Err(crate::Error::CoverViolation { .. }) => return Step::Skip,
            Err(e) => return Step::Fail(e.to_string()),
        };
        let Some(cert) = rep.certificate else { return Step::Skip };
        step!(verified(&cert));
        let picked: Vec<usize> = match &cert {
            Certificate::Subcover { indices, .. } => indices.clone(),
            Certificate::Lindelof { selection, .. } => selection.picks.iter().map(|p| p.member).collect(),
            _ => return Step::Skip,
        };
        for j in picked {
            if !chosen.contains(&j) {
                chosen.push(j);
            }
        }
    }
    let members: Vec<AnyElement> = chosen.iter().map(|&j| family[j].clone()).collect();
    let join = members[1..].iter().fold(members[0].clone(), |acc, t| acc.join(t));
    let slack = Scalar::ratio(1, top as i64);
    let lifted = join.add_scalar(&slack);
    if lifted.zero_like().le(&lifted) {
        Step::Pass
    } else {
        Step::Fail("countable selection dips below -1/N".into())
    }
}

fn sl_iff_l_and_n(model: &dyn ExtensionModel, inst: &Instance, depth: usize) -> Step {
    let (Some(l), Some(n), Some(sl)) = (
        report(model, Condition::L, inst, depth),
        report(model, Condition::N, inst, depth),
        report(model, Condition::SL, inst, depth),
    ) else {
        return Step::Skip;
    };
    let (l, n, sl) = (step!(l), step!(n), step!(sl));
    if let Some(c) = &sl.certificate {
        step!(verified(c));
    }
    let expected = match (&l.verdict, &n.verdict) {
        (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
        (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
        _ => Verdict::UnknownAtDepth(depth),
    };
    if sl.verdict == expected {
        Step::Pass
    } else {
        Step::Fail(format!("(SL) reports {:?}, expected {expected:?}", sl.verdict))
    }
}

/// Runs every implication on every instance and tallies the outcomes.
pub fn equivalence_harness(model: &dyn ExtensionModel, instances: &[Instance], depth: usize) -> ImplicationMatrix {
    let rows = vec![
        row("T => S", instances, |i| t_implies_s(model, i, depth)),
        row("BS => T", instances, |i| bs_implies_t(model, i, depth)),
        row("D => N", instances, |i| d_implies_n(model, i, depth)),
        row("C <=> 1 is α-compact", instances, |i| c_iff_unit_compact(model, i, depth)),
        row("L without eps", instances, |i| eps_removal(model, i, depth)),
        row("SL <=> L and N", instances, |i| sl_iff_l_and_n(model, i, depth)),
    ];
    let interpolation_without_insertion = instances
        .iter()
        .filter(|i| {
            let verdict = |c| check_condition(model, c, i, depth).ok().map(|r| r.verdict);
            verdict(Condition::T) == Some(Verdict::Holds) && verdict(Condition::N) == Some(Verdict::Fails)
        })
        .count();
    ImplicationMatrix { model: model.name().to_string(), depth, rows, interpolation_without_insertion }
}
