//! Inserting convergent sequences between two bounds.
//!
//! For `f <= g` on `ℕ`, a convergent `a` with `f <= a <= g` has some limit
//! `L`, and past all prefixes the cycles force `limsup f <= L <= liminf g`.
//! Conversely any such `L` works: `a = f ∨ (g ∧ L)` equals `L` on the common
//! tail and is squeezed between `f` and `g` everywhere. So an insertion exists
//! iff `limsup f <= liminf g`, and the midpoint of the two is the canonical
//! limit.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{SeqFunc, SeqPoint, YSet};
use crate::error::{Error, Result};
use crate::lattice::AlgElement;
use crate::scalar::{q, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ConvergentInsertion {
    Witness { witness: SeqFunc },
    Infeasible(NoInsertionCertificate),
}

impl ConvergentInsertion {
    pub fn witness(&self) -> Option<&SeqFunc> {
        match self {
            ConvergentInsertion::Witness { witness } => Some(witness),
            ConvergentInsertion::Infeasible(_) => None,
        }
    }
}

/// `limsup lower > liminf upper`: no convergent sequence fits between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoInsertionCertificate {
    pub lower: SeqFunc,
    pub upper: SeqFunc,
    pub limsup: Scalar,
    pub liminf: Scalar,
}

impl NoInsertionCertificate {
    /// An index where `lower <= candidate <= upper` fails.
    pub fn refute(&self, candidate: &SeqFunc) -> Result<usize> {
        if !candidate.is_convergent() {
            return Err(Error::NotConvergent);
        }
        let start = candidate
            .prefix()
            .len()
            .max(self.lower.prefix().len())
            .max(self.upper.prefix().len());
        let period = self.lower.cycle().len().lcm(&self.upper.cycle().len());
        (0..start + period)
            .find(|&k| {
                let a = candidate.value_at(k);
                self.lower.value_at(k) > a || a > self.upper.value_at(k)
            })
            .ok_or_else(|| Error::PreconditionViolation("certificate does not refute".into()))
    }
}

fn on_n_pair(f: &SeqFunc, g: &SeqFunc) -> Result<()> {
    if f.has_omega() || g.has_omega() {
        return Err(Error::UnexpectedOmega);
    }
    if let Some(p) = f.first_violation(g) {
        return Err(Error::PreconditionViolation(format!("lower > upper at {p}")));
    }
    Ok(())
}

/// Convergent `a` with `f <= a <= g` on `ℕ`, or a certificate that none exists.
pub fn insert_convergent(f: &SeqFunc, g: &SeqFunc) -> Result<ConvergentInsertion> {
    on_n_pair(f, g)?;
    let limsup = f.limit_data().limsup;
    let liminf = g.limit_data().liminf;
    if limsup > liminf {
        return Ok(ConvergentInsertion::Infeasible(NoInsertionCertificate {
            lower: f.clone(),
            upper: g.clone(),
            limsup,
            liminf,
        }));
    }
    let level = limsup.midpoint(&liminf);
    let witness = f.join(&g.meet(&f.constant_like(&level)));
    Ok(ConvergentInsertion::Witness { witness })
}

/// Insertion under a uniform gap `f + eps <= g`.
///
/// The gap alone does not make the cycles interleave (take `f = 2·χ_evens`,
/// `g = f + 1`, `eps = 1`), so this can still come back infeasible.
pub fn strict_insert(f: &SeqFunc, g: &SeqFunc, eps: &Scalar) -> Result<ConvergentInsertion> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("gap {eps} is not positive")));
    }
    if f.has_omega() || g.has_omega() {
        return Err(Error::UnexpectedOmega);
    }
    if let Some(p) = f.add_scalar(eps).first_violation(g) {
        let SeqPoint::Index(index) = p else { unreachable!("no ω on ℕ") };
        return Err(Error::GapViolation { index });
    }
    insert_convergent(f, g)
}

/// Continuous `c` on `Y` with `f <= c <= g`, for `f` usc and `g` lsc on `Y`.
///
/// Semicontinuity gives `limsup f <= f(ω) <= g(ω) <= liminf g`, so the
/// constant level `f(ω)` always fits on the tail.
pub fn insert_on_y(f: &SeqFunc, g: &SeqFunc) -> Result<SeqFunc> {
    let sf = f.semicontinuity_on_y()?;
    let sg = g.semicontinuity_on_y()?;
    if !sf.usc {
        return Err(Error::PreconditionViolation("lower function is not usc at ω".into()));
    }
    if !sg.lsc {
        return Err(Error::PreconditionViolation("upper function is not lsc at ω".into()));
    }
    if let Some(p) = f.first_violation(g) {
        return Err(Error::PreconditionViolation(format!("lower > upper at {p}")));
    }
    let level = f.omega().unwrap().clone();
    let c = f.join(&g.meet(&f.constant_like(&level)));
    debug_assert!(c.is_convergent());
    Ok(c)
}

/// A true insertion near an approximate one.
///
/// For convergent `a` with `f - δ <= a <= g` (and `f`, `g` admitting an
/// insertion), shifts `a`'s limit into `[limsup f, liminf g]` and clamps
/// into `[f, g]`; the result is within `2δ` of `a`.
pub fn nearest_convergent_insertion(f: &SeqFunc, g: &SeqFunc, a: &SeqFunc) -> Result<SeqFunc> {
    on_n_pair(f, g)?;
    let level = a.limit_data().limit.ok_or(Error::NotConvergent)?;
    let lo = f.limit_data().limsup;
    let hi = g.limit_data().liminf;
    if lo > hi {
        return Err(Error::PreconditionViolation("bounds admit no insertion".into()));
    }
    let target = level.clamp_to(&lo, &hi);
    let shifted = a.add_scalar(&(target - &level));
    Ok(f.join(&g.meet(&shifted)))
}

/// Threshold sets read off a continuous `c` on `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YKtSeparation {
    pub u: YSet,
    pub v: YSet,
}

/// `U = c⁻¹(1/3, ∞)`, `V = Y ∖ c⁻¹[2/3, 1]`; errors where they overlap.
pub fn kt_threshold_separation_on_y(c: &SeqFunc) -> Result<YKtSeparation> {
    let third = q(1, 3);
    let two_thirds = q(2, 3);
    let u = YSet::level_set(c, |v| v > &third)?;
    let v = YSet::level_set(c, |v| v >= &two_thirds && v <= &Scalar::one())?.complement();
    let both = u.intersection(&v);
    if both != YSet::empty() {
        let at = both.next_natural(0).map_or(SeqPoint::Omega, SeqPoint::Index);
        return Err(Error::ThresholdOverlap { at: at.to_string() });
    }
    Ok(YKtSeparation { u, v })
}
