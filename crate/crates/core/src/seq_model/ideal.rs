//! The ideal `I_α` of α-compact elements of `C(Y)` for the inclusion
//! `ℕ → Y`, and the maximal ideal `M_ω` it determines.
//!
//! An element lies in `I_α` iff the closure of its cozero set stays inside
//! `ℕ`, i.e. it has finite support. Every member vanishes at `ω`, and the
//! indicators `χ_{k}` are members, so the common zero set of `I_α` is `{ω}`
//! and the only maximal ideal containing it is `M_ω = {f : f(ω) = 0}`.

use serde::{Deserialize, Serialize};

use super::{GeoTail, SeqFunc, SeqPoint, YSet};
use crate::error::{Error, Result};
use crate::lattice::AlgElement;
use crate::scalar::Scalar;

/// Evaluation-level access to a continuous function on `Y`.
pub trait CozeroView {
    fn value_at_point(&self, p: SeqPoint) -> Scalar;
    /// `cl_Y(coz f)`.
    fn coz_closure(&self) -> YSet;
}

impl CozeroView for SeqFunc {
    fn value_at_point(&self, p: SeqPoint) -> Scalar {
        match p {
            SeqPoint::Index(k) => self.value_at(k).clone(),
            SeqPoint::Omega => self.limit_data().limit.expect("convergent"),
        }
    }

    fn coz_closure(&self) -> YSet {
        let y = self.extend_to_y().expect("convergent");
        YSet::level_set(&y, |v| !v.is_zero()).unwrap().closure()
    }
}

impl CozeroView for GeoTail {
    fn value_at_point(&self, p: SeqPoint) -> Scalar {
        match p {
            SeqPoint::Index(k) => self.value_at(k),
            SeqPoint::Omega => self.limit(),
        }
    }

    fn coz_closure(&self) -> YSet {
        self.zero_set().complement().closure()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealMembership {
    pub in_i_alpha: bool,
    pub in_j_radical: bool,
    pub coz_closure: YSet,
}

/// Membership in `I_α` and in its radical `J_ℓ(I_α) = M_ω`.
pub fn ideal_membership<V: CozeroView>(f: &V) -> IdealMembership {
    let coz_closure = f.coz_closure();
    IdealMembership {
        in_i_alpha: !coz_closure.contains_omega(),
        in_j_radical: f.value_at_point(SeqPoint::Omega).is_zero(),
        coz_closure,
    }
}

/// Checked entry point for sequences: they must be convergent.
pub fn seq_ideal_membership(f: &SeqFunc) -> Result<IdealMembership> {
    if !f.is_convergent() {
        return Err(Error::NotConvergent);
    }
    Ok(ideal_membership(f))
}

/// `Z(I_α)` together with the members that knock each natural out of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSetOfIdeal {
    pub zero_set: YSet,
    /// `excluders[k]` is a member of `I_α` that is nonzero at `k`.
    pub excluders: Vec<SeqFunc>,
    pub depth: usize,
}

/// Computes `Z(I_α) = {ω}`, certifying the naturals below `depth` and
/// recording that `ω` is a common zero (every finitely supported
/// convergent function vanishes there).
pub fn ideal_zero_set(depth: usize) -> ZeroSetOfIdeal {
    let excluders = (0..depth).map(|k| SeqFunc::indicator_finite(&[k], true)).collect();
    ZeroSetOfIdeal { zero_set: YSet::omega_only(), excluders, depth }
}

/// Witness that the ideal generated by `M_ω` and `f ∉ M_ω` contains 1:
/// `1 = r·f + m` with `m(ω) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximalityWitness {
    pub f: SeqFunc,
    pub r: Scalar,
    pub m: SeqFunc,
}

pub fn maximality_witness(f: &SeqFunc) -> Result<MaximalityWitness> {
    let f = f.extend_to_y()?;
    let w = f.omega().unwrap().clone();
    let r = w.recip().ok_or_else(|| {
        Error::PreconditionViolation("function lies in M_ω already".into())
    })?;
    let m = f.one_like().sub(&f.scale(&r));
    Ok(MaximalityWitness { f, r, m })
}
