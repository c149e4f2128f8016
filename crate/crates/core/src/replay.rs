//! Independent re-verification of [`Certificate`]s.
//!
//! Only the carrier data types and the lattice operations are shared with
//! the procedures that emit certificates; every limit, family value,
//! separating step and topology fact is recomputed here from scratch.

use thiserror::Error;

use crate::certificate::{Certificate, InterpolationForm};
use crate::conditions::AnyElement;
use crate::finite_space::{FiniteFunc, FiniteInsertion, FiniteSpace, PointSet, SeparationCertificate};
use crate::insertion::{IterationTrace, MergeTrace};
use crate::lattice::AlgElement;
use crate::scalar::Scalar;
use crate::seq_model::{SeqFunc, SeqPoint, YSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} certificate rejected: {reason}")]
pub struct ReplayError {
    pub kind: String,
    pub reason: String,
}

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub fn verify(cert: &Certificate) -> Result<(), ReplayError> {
    check(cert).map_err(|reason| ReplayError { kind: cert.kind().to_string(), reason })
}

fn check(cert: &Certificate) -> Check {
    match cert {
        Certificate::Interpolation { form, lower, upper, a_seq, b_seq } => {
            interpolation(*form, lower, upper, a_seq, b_seq)
        }
        Certificate::Merge { lower, upper, trace } => merge(lower, upper, trace),
        Certificate::CountableSandwich { lower, upper, meet_target, join_target, depth } => {
            countable_sandwich(lower, upper, meet_target, join_target, *depth)
        }
        Certificate::Insertion { lower, upper, gap, witness } => {
            same_carrier(&[lower, upper, witness])?;
            if let Some(e) = gap {
                ensure!(e.is_positive(), "gap {e} is not positive");
                ensure!(lower.add_scalar(e).le(upper), "lower + gap exceeds upper");
            }
            ensure!(representable(witness), "witness is not representable");
            ensure!(lower.le(witness), "witness dips below lower");
            ensure!(witness.le(upper), "witness exceeds upper");
            Ok(())
        }
        Certificate::NoConvergentInsertion { lower, upper, gap, limsup, liminf } => {
            ensure!(!lower.has_omega() && !upper.has_omega(), "bounds must live on ℕ");
            match gap {
                Some(e) => ensure!(lower.add_scalar(e).le(upper), "lower + gap exceeds upper"),
                None => ensure!(lower.le(upper), "lower exceeds upper"),
            }
            ensure!(&cycle_max(lower) == limsup, "recorded limsup differs");
            ensure!(&cycle_min(upper) == liminf, "recorded liminf differs");
            ensure!(limsup > liminf, "limsup does not exceed liminf");
            Ok(())
        }
        Certificate::Iteration { trace } => iteration(trace),
        Certificate::Subcover { eps, family, indices } => subcover(eps, family, indices),
        Certificate::Lindelof { eps, family, selection } => {
            ensure!(eps.is_positive(), "eps is not positive");
            ensure!(selection.unknown.is_empty(), "selection has unresolved indices");
            let half = eps / &Scalar::from_int(2);
            let horizon = family.iter().map(|t| t.prefix().len()).max().unwrap_or(0)
                + family.iter().map(|t| t.cycle().len()).fold(1, num_integer::lcm);
            ensure!(selection.picks.len() >= horizon, "selection stops before the period horizon");
            for (k, pick) in selection.picks.iter().enumerate() {
                ensure!(pick.index == k, "picks are not consecutive at {k}");
                let t = family.get(pick.member).ok_or("pick names a missing member")?;
                ensure!(representable(&AnyElement::Seq(t.clone())), "member {} is not convergent", pick.member);
                ensure!(t.value_at(k) == &pick.value, "recorded value differs at {k}");
                ensure!(pick.value > half, "picked value at {k} is not above eps/2");
            }
            Ok(())
        }
        Certificate::NoncompactDefeats { family, defeats } => {
            ensure!(family.eps.is_positive() && family.delta.is_positive(), "eps and delta must be positive");
            let top = &family.eps + &family.delta;
            let value = |n: usize, k: usize| if k <= n { top.clone() } else { -&family.delta };
            for d in defeats {
                ensure!(&d.family == family, "defeat refers to another family");
                ensure!(d.chosen.iter().all(|&n| n < d.index), "defeat index is not past the chosen members");
                let join = d.chosen.iter().map(|&n| value(n, d.index)).max();
                ensure!(join == d.join_value, "recorded join value differs");
                if let Some(v) = &join {
                    ensure!(v.is_negative(), "chosen join is nonnegative at {}", d.index);
                }
            }
            Ok(())
        }
        Certificate::Conjunction { parts } => {
            ensure!(!parts.is_empty(), "empty conjunction");
            parts.iter().try_for_each(check)
        }
        Certificate::IdealMembership { f, membership } => {
            ensure!(f.has_omega() && representable(&AnyElement::Seq(f.clone())), "f is not continuous on Y");
            let w = f.omega().unwrap();
            let finite_support = f.cycle().iter().all(Scalar::is_zero);
            ensure!(membership.in_i_alpha == finite_support, "I_α membership differs from finite support");
            ensure!(membership.in_j_radical == w.is_zero(), "radical membership differs from f(ω) = 0");
            let window = f.prefix().len() + f.cycle().len();
            for k in 0..window {
                let inside = membership.coz_closure.contains(SeqPoint::Index(k));
                ensure!(inside == !f.value_at(k).is_zero(), "cozero closure wrong at {k}");
            }
            ensure!(
                membership.coz_closure.contains_omega() == !finite_support,
                "cozero closure wrong at ω"
            );
            Ok(())
        }
        Certificate::TailMembership { f, membership } => {
            ensure!(f.ratio.is_positive() && f.ratio < 1, "ratio outside (0, 1)");
            let tail = !f.coefficient.is_zero();
            ensure!(membership.in_j_radical, "a decaying tail vanishes at ω");
            ensure!(membership.in_i_alpha == !tail, "I_α membership differs from finite support");
            ensure!(membership.coz_closure.contains_omega() == tail, "cozero closure wrong at ω");
            Ok(())
        }
        Certificate::ZeroSet(z) => {
            ensure!(z.zero_set == YSet::omega_only(), "zero set is not {{ω}}");
            ensure!(z.excluders.len() == z.depth, "excluder count differs from depth");
            for (k, e) in z.excluders.iter().enumerate() {
                ensure!(e.has_omega() && e.omega().unwrap().is_zero(), "excluder {k} is nonzero at ω");
                ensure!(e.cycle().iter().all(Scalar::is_zero), "excluder {k} lacks finite support");
                ensure!(!e.value_at(k).is_zero(), "excluder {k} vanishes at {k}");
            }
            Ok(())
        }
        Certificate::Maximality(m) => {
            ensure!(representable(&AnyElement::Seq(m.f.clone())) && m.f.has_omega(), "f is not continuous on Y");
            ensure!(!m.f.omega().unwrap().is_zero(), "f lies in M_ω");
            ensure!(m.m.has_omega() && m.m.omega().unwrap().is_zero(), "m is not in M_ω");
            ensure!(m.f.scale(&m.r).add(&m.m) == m.f.one_like(), "r·f + m is not 1");
            Ok(())
        }
        Certificate::Minorant { b, n, a } => {
            ensure!(representable(&AnyElement::Seq(b.clone())), "b is not convergent");
            ensure!(b.zero_like().le(b), "b is negative somewhere");
            ensure!(a.cycle().iter().all(Scalar::is_zero), "minorant lacks finite support");
            ensure!(a.omega().is_none_or(Scalar::is_zero), "minorant is nonzero at ω");
            ensure!(a.le(b), "minorant exceeds b");
            for k in 0..=*n {
                ensure!(a.value_at(k) == b.value_at(k), "minorant differs from b at {k}");
            }
            Ok(())
        }
        Certificate::Blocks { space, result } => blocks(space, result),
        Certificate::ThresholdRoundTrip { lower, upper, witness, u, v } => {
            ensure!(lower.has_omega() && upper.has_omega() && witness.has_omega(), "all functions live on Y");
            ensure!(lower.omega().unwrap() >= &cycle_max(lower), "lower is not usc");
            ensure!(upper.omega().unwrap() <= &cycle_min(upper), "upper is not lsc");
            ensure!(representable(&AnyElement::Seq(witness.clone())), "witness is not continuous");
            ensure!(lower.le(witness) && witness.le(upper), "witness leaves the sandwich");
            let third = Scalar::ratio(1, 3);
            let two_thirds = Scalar::ratio(2, 3);
            let expect_u = YSet::level_set(witness, |c| c > &third).map_err(|e| e.to_string())?;
            let band = YSet::level_set(witness, |c| c >= &two_thirds && c <= &Scalar::one())
                .map_err(|e| e.to_string())?;
            ensure!(u == &expect_u, "U is not the upper threshold set");
            ensure!(v == &band.complement(), "V is not the complement of the band");
            ensure!(u.is_open() && v.is_open(), "threshold sets must be open");
            ensure!(u.is_disjoint(v), "threshold sets overlap");
            let a = YSet::level_set(lower, |x| x >= &Scalar::one()).map_err(|e| e.to_string())?;
            let b = YSet::level_set(upper, |x| x <= &Scalar::zero()).map_err(|e| e.to_string())?;
            ensure!(a.is_subset(u), "{{lower = 1}} is not inside U");
            ensure!(b.is_subset(v), "{{upper = 0}} is not inside V");
            Ok(())
        }
        Certificate::FiniteInsertion { lower, upper, outcome } => finite_insertion(lower, upper, outcome),
        Certificate::Normality { space, normal, certificate } => normality(space, *normal, certificate.as_ref()),
    }
}

fn cycle_max(f: &SeqFunc) -> Scalar {
    f.cycle().iter().max().unwrap().clone()
}

fn cycle_min(f: &SeqFunc) -> Scalar {
    f.cycle().iter().min().unwrap().clone()
}

/// Member of the representable fragment of the domain algebra.
fn representable(a: &AnyElement) -> bool {
    match a {
        AnyElement::Finite(_) => true,
        AnyElement::Seq(f) => {
            let c = f.cycle();
            c.iter().all(|x| x == &c[0]) && f.omega().is_none_or(|w| w == &c[0])
        }
    }
}

fn same_carrier(xs: &[&AnyElement]) -> Check {
    ensure!(xs.windows(2).all(|w| w[0].compatible(w[1])), "elements live on different carriers");
    Ok(())
}

fn fold<'a>(xs: &'a [AnyElement], op: fn(&AnyElement, &AnyElement) -> AnyElement) -> Result<AnyElement, String> {
    let (first, rest) = xs.split_first().ok_or("empty family")?;
    for x in rest {
        ensure!(first.compatible(x), "family mixes carriers");
    }
    Ok(rest.iter().fold(first.clone(), |acc, x| op(&acc, x)))
}

fn interpolation(
    form: InterpolationForm,
    lower: &AnyElement,
    upper: &AnyElement,
    a_seq: &[AnyElement],
    b_seq: &[AnyElement],
) -> Check {
    for x in a_seq.iter().chain(b_seq) {
        ensure!(representable(x), "family member is not representable");
    }
    let meet_a = fold(a_seq, AnyElement::meet)?;
    let join_a = fold(a_seq, AnyElement::join)?;
    let meet_b = fold(b_seq, AnyElement::meet)?;
    let join_b = fold(b_seq, AnyElement::join)?;
    same_carrier(&[lower, upper, &meet_a, &meet_b])?;
    let (first, second) = match form {
        InterpolationForm::MeetThenJoin | InterpolationForm::Equal => (meet_a, join_b),
        InterpolationForm::JoinThenMeet => (join_a, meet_b),
    };
    ensure!(lower.le(&first), "lower exceeds the first family");
    ensure!(first.le(&second), "families are out of order");
    ensure!(second.le(upper), "second family exceeds upper");
    if form == InterpolationForm::Equal {
        ensure!(first == second, "meet and join differ");
    }
    Ok(())
}

fn merge(lower: &AnyElement, upper: &AnyElement, t: &MergeTrace<AnyElement>) -> Check {
    let len = t.a_seq.len().max(t.b_seq.len());
    ensure!(len > 0, "empty families");
    let mut a_norm = Vec::new();
    let mut b_norm = Vec::new();
    for n in 0..len {
        let a = &t.a_seq[n.min(t.a_seq.len() - 1)];
        let b = &t.b_seq[n.min(t.b_seq.len() - 1)];
        a_norm.push(if n == 0 { a.clone() } else { AnyElement::meet(&a_norm[n - 1], a) });
        b_norm.push(if n == 0 { b.clone() } else { AnyElement::join(&b_norm[n - 1], b) });
    }
    ensure!(a_norm == t.a_norm && b_norm == t.b_norm, "normalized families differ");
    let f = a_norm[len - 1].clone();
    let g = b_norm[len - 1].clone();
    ensure!(f == t.lower && g == t.upper, "recorded meet or join differs");
    ensure!(lower.le(&f) && g.le(upper), "families do not sit between the bounds");
    let mut u: Vec<AnyElement> = Vec::new();
    for n in 0..len {
        let piece = a_norm[n].meet(&b_norm[n]);
        u.push(if n == 0 { piece } else { u[n - 1].join(&piece) });
    }
    let v: Vec<AnyElement> = u.iter().zip(&a_norm).map(|(x, a)| x.join(a)).collect();
    ensure!(u == t.u_seq && v == t.v_seq, "u or v sequence differs");
    for n in 0..len {
        ensure!(u[n].le(&b_norm[n]), "u[{}] exceeds b'[{}]", n + 1, n + 1);
        ensure!(f.le(&v[n]), "f exceeds v[{}]", n + 1);
        for m in n..len {
            ensure!(u[m].le(&v[n]), "u[{}] exceeds v[{}]", m + 1, n + 1);
        }
    }
    let (un, vn) = (&u[len - 1], &v[len - 1]);
    ensure!(vn.le(&un.join(&f)), "v exceeds u ∨ f");
    ensure!(f.le(un) && un.le(&g), "u leaves [f, g]");
    ensure!(un == vn && un == &t.result, "u, v and the result differ");
    ensure!(t.checked_inequalities.iter().all(|(_, ok)| *ok), "a recorded check failed");
    Ok(())
}

fn countable_sandwich(lower: &SeqFunc, upper: &SeqFunc, meet_t: &SeqFunc, join_t: &SeqFunc, depth: usize) -> Check {
    ensure!(depth >= 1, "depth must be positive");
    for h in [lower, upper, meet_t, join_t] {
        ensure!(!h.has_omega(), "families live on ℕ");
    }
    ensure!(lower.le(meet_t), "lower exceeds the meet target");
    ensure!(meet_t.le(join_t), "meet target exceeds join target");
    ensure!(join_t.le(upper), "join target exceeds upper");
    let horizon = depth.max(lower.prefix().len() + lower.cycle().len());
    for (target, sign) in [(meet_t, 1i64), (join_t, -1i64)] {
        let s = Scalar::from_int(sign);
        let norm = target.prefix().iter().chain(target.cycle()).map(Scalar::abs).max().unwrap();
        for n in 0..depth {
            for m in 1..=depth {
                let bump = &s * &Scalar::ratio(1, m as i64);
                for k in 0..horizon {
                    let c = if k == n { target.value_at(k) + &bump } else { &s * &norm };
                    let t = target.value_at(k);
                    let ok = if sign > 0 { &c >= t } else { &c <= t };
                    ensure!(ok, "member ({n}, {m}) is on the wrong side at {k}");
                }
            }
            // Over m <= depth the members at n come within 1/depth of the target.
            let vals = (1..=depth).map(|m| target.value_at(n) + &(&s * &Scalar::ratio(1, m as i64)));
            let best = if sign > 0 { vals.min() } else { vals.max() }.unwrap();
            ensure!(
                (&best - target.value_at(n)).abs() <= Scalar::ratio(1, depth as i64),
                "truncated family does not approach the target at {n}"
            );
        }
    }
    Ok(())
}

fn iteration(t: &IterationTrace<AnyElement>) -> Check {
    let f = &t.lower;
    let g = &t.upper;
    ensure!(!t.a_seq.is_empty(), "empty trace");
    ensure!(t.step_bounds.len() == t.a_seq.len(), "bounds and iterates differ in length");
    ensure!(f.le(g), "lower exceeds upper");
    let mut bound = Scalar::one();
    let two = Scalar::from_int(2);
    for (i, a) in t.a_seq.iter().enumerate() {
        let n = i + 1;
        bound = &bound / &two;
        ensure!(t.step_bounds[i] == bound, "step bound {n} is not 2^-{n}");
        ensure!(representable(a), "a[{n}] is not representable");
        let (lo, hi) = if i == 0 {
            (f.add_scalar(&-&bound), g.clone())
        } else {
            let prev = &t.a_seq[i - 1];
            let d = &bound * &two;
            (f.add_scalar(&-&bound).join(&prev.add_scalar(&-&d)), g.meet(&prev.add_scalar(&d)))
        };
        ensure!(lo.le(a) && a.le(&hi), "a[{n}] leaves its step bounds");
        ensure!(f.add_scalar(&-&bound).le(a) && a.le(g), "invariant fails at {n}");
        if let Some(next) = t.a_seq.get(i + 1) {
            ensure!(next.sub(a).norm() <= bound, "step {n} moves more than 2^-{n}");
        }
        for (j, later) in t.a_seq.iter().enumerate().skip(i + 1) {
            ensure!(later.sub(a).norm() <= &bound * &two, "a[{}] is far from a[{n}]", j + 1);
        }
    }
    Ok(())
}

fn subcover(eps: &Scalar, family: &[AnyElement], indices: &[usize]) -> Check {
    ensure!(eps.is_positive(), "eps is not positive");
    for x in family {
        ensure!(representable(x), "family member is not representable");
    }
    let all = fold(family, AnyElement::join)?;
    ensure!(all.constant_like(eps).le(&all), "family does not reach eps everywhere");
    ensure!(!indices.is_empty(), "empty subfamily");
    let chosen: Vec<AnyElement> = indices
        .iter()
        .map(|&i| family.get(i).cloned().ok_or(format!("index {i} out of range")))
        .collect::<Result<_, _>>()?;
    let join = fold(&chosen, AnyElement::join)?;
    ensure!(join.zero_like().le(&join), "subfamily join is negative somewhere");
    Ok(())
}

fn blocks(space: &FiniteSpace, r: &crate::finite_space::BlockIndicators) -> Check {
    let n = space.len();
    let gens = &r.generators;
    ensure!(!gens.is_empty(), "no generators");
    let fiber = |x: usize, y: usize| gens.iter().all(|g| g.value(x) == g.value(y));
    let mut covered = PointSet::EMPTY;
    for b in &r.blocks {
        ensure!(b.block.is_disjoint(covered), "blocks overlap");
        covered = covered.union(b.block);
        let x = b.representative;
        ensure!(b.block.contains(x), "representative outside its block");
        for y in 0..n {
            ensure!(b.block.contains(y) == fiber(x, y), "block of {x} is not its fiber at {y}");
            let want = if b.block.contains(y) { Scalar::one() } else { Scalar::zero() };
            ensure!(b.indicator.value(y) == &want, "indicator of {x} wrong at {y}");
        }
        let mut acc: Option<FiniteFunc> = None;
        for step in &b.steps {
            let g = gens.get(step.generator).ok_or("step names a missing generator")?;
            ensure!(step.x == x && !b.block.contains(step.y), "step pair is not (block, outside)");
            let gx = g.value(step.x);
            let gy = g.value(step.y);
            ensure!(gx != gy, "generator does not separate the step pair");
            let slope = Scalar::one() / &(gx - gy);
            let vals: Vec<Scalar> = g
                .values()
                .iter()
                .map(|v| Scalar::clamp_to(&((v - gy) * &slope), &Scalar::zero(), &Scalar::one()))
                .collect();
            ensure!(step.h.values() == vals.as_slice(), "step ({}, {}) recomputes differently", step.x, step.y);
            acc = Some(match acc {
                Some(a) => a.meet(&step.h),
                None => step.h.clone(),
            });
        }
        let built = acc.unwrap_or_else(|| b.indicator.constant_like(&Scalar::one()));
        ensure!(built == b.indicator, "meet of steps is not the indicator of {x}");
    }
    ensure!(covered == space.full(), "blocks do not cover the space");
    Ok(())
}

/// `h` is continuous on a finite space iff it is constant on every minimal
/// neighborhood.
fn finite_continuous(h: &FiniteFunc) -> bool {
    let s = h.space();
    (0..s.len()).all(|x| s.min_nbhd(x).iter().all(|y| h.value(y) == h.value(x)))
}

fn finite_insertion(f: &FiniteFunc, g: &FiniteFunc, outcome: &FiniteInsertion) -> Check {
    ensure!(f.compatible(g), "bounds live on different spaces");
    ensure!(f.le(g), "lower exceeds upper");
    match outcome {
        FiniteInsertion::Witness(h) => {
            ensure!(h.compatible(f), "witness lives on another space");
            ensure!(finite_continuous(h), "witness is not continuous");
            ensure!(f.le(h) && h.le(g), "witness leaves the sandwich");
        }
        FiniteInsertion::Infeasible { component, max_lower, min_upper } => {
            let s = f.space();
            // Grow the component containing some point by chaining
            // minimal neighborhoods both ways.
            let start = (0..s.len()).find(|&x| s.component_of(x) == *component).ok_or("no such component")?;
            let mut comp = PointSet::singleton(start);
            loop {
                let mut next = comp;
                for x in 0..s.len() {
                    let u = s.min_nbhd(x);
                    if !u.is_disjoint(comp) {
                        next = next.union(u).union(PointSet::singleton(x));
                    }
                }
                if next == comp {
                    break;
                }
                comp = next;
            }
            let mx = comp.iter().map(|x| f.value(x).clone()).max().unwrap();
            let mn = comp.iter().map(|x| g.value(x).clone()).min().unwrap();
            ensure!(&mx == max_lower && &mn == min_upper, "recorded extrema differ");
            ensure!(mx > mn, "component admits a constant between the bounds");
        }
    }
    Ok(())
}

fn normality(space: &FiniteSpace, normal: bool, cert: Option<&SeparationCertificate>) -> Check {
    let n = space.len();
    let opens = space.opens();
    let closed = |s: PointSet| opens.contains(&s.complement(n));
    let separable = |c: PointSet, d: PointSet| {
        opens.iter().any(|&u| {
            c.is_subset(u) && opens.iter().any(|&v| d.is_subset(v) && u.is_disjoint(v))
        })
    };
    if normal {
        for &u in opens {
            for &v in opens {
                let (c, d) = (u.complement(n), v.complement(n));
                if c.is_disjoint(d) {
                    ensure!(separable(c, d), "closed sets {c} and {d} cannot be separated");
                }
            }
        }
        return Ok(());
    }
    match cert {
        Some(SeparationCertificate::NotSeparable { c, d }) => {
            ensure!(closed(*c) && closed(*d), "witness sets are not closed");
            ensure!(c.is_disjoint(*d), "witness sets intersect");
            ensure!(!separable(*c, *d), "witness sets can be separated");
            Ok(())
        }
        _ => Err("a non-normal verdict needs an inseparable pair".into()),
    }
}
