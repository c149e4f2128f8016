use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_space::{urysohn, FiniteFunc};
use crate::lattice::{ensure_le, rescale_to_unit, AlgElement};
use crate::scalar::Scalar;
use crate::seq_model::{SeqFunc, YSet};

/// A carrier with semicontinuity predicates and 0/1 separating functions.
pub trait UrysohnCarrier: AlgElement {
    fn is_usc(&self) -> bool;
    fn is_lsc(&self) -> bool;

    /// Continuous `w ∈ {0, 1}` with `w = 1` on `{lower >= s}` and `w = 0` on
    /// `{upper <= r}`, for `lower` usc, `upper` lsc, `lower <= upper`, `r < s`.
    fn separating_function(lower: &Self, upper: &Self, r: &Scalar, s: &Scalar) -> Result<Self>;
}

impl UrysohnCarrier for FiniteFunc {
    fn is_usc(&self) -> bool {
        FiniteFunc::is_usc(self)
    }

    fn is_lsc(&self) -> bool {
        FiniteFunc::is_lsc(self)
    }

    fn separating_function(lower: &Self, upper: &Self, r: &Scalar, s: &Scalar) -> Result<Self> {
        let c = upper.level_set(|v| v <= r);
        let d = lower.level_set(|v| v >= s);
        urysohn(lower.space(), c, d)
    }
}

impl UrysohnCarrier for SeqFunc {
    fn is_usc(&self) -> bool {
        self.semicontinuity_on_y().is_ok_and(|s| s.usc)
    }

    fn is_lsc(&self) -> bool {
        self.semicontinuity_on_y().is_ok_and(|s| s.lsc)
    }

    /// On `Y` a closed set omitting `ω` is finite, hence clopen; so whichever
    /// of the two disjoint closed sets misses `ω` gives the witness.
    fn separating_function(lower: &Self, upper: &Self, r: &Scalar, s: &Scalar) -> Result<Self> {
        let c = YSet::level_set(upper, |v| v <= r)?;
        let d = YSet::level_set(lower, |v| v >= s)?;
        if !c.is_closed() || !d.is_closed() {
            return Err(Error::PreconditionViolation("both sets must be closed".into()));
        }
        if !c.is_disjoint(&d) {
            return Err(Error::PreconditionViolation("level sets intersect".into()));
        }
        if d.contains_omega() {
            Ok(c.complement().indicator().clone())
        } else {
            Ok(d.indicator().clone())
        }
    }
}

/// `[0, 1] ∩ ℚ` with denominators at most `q`, ordered by denominator then
/// numerator.
pub fn rational_grid(q: u32) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(), Scalar::one()];
    for den in 2..=q as i64 {
        for num in 1..den {
            if num_integer::gcd(num, den) == 1 {
                out.push(Scalar::ratio(num, den));
            }
        }
    }
    out
}

/// Join of the scaled separating functions, in original coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UrysohnJoin<E> {
    pub lower: E,
    pub upper: E,
    pub denominator_bound: u32,
    pub shift: Scalar,
    pub scale: Scalar,
    /// The `(r, s)` pairs in enumeration order.
    pub pairs: Vec<(Scalar, Scalar)>,
    pub join: E,
    /// `join >= lower - gap` holds everywhere.
    pub gap: Scalar,
}

/// Approximates an insertion between usc `f` and lsc `g` from below by
/// `⋁ r·w_rs` over grid pairs `r < s`, where `w_rs` separates `{f >= s}` from
/// `{g <= r}` in unit coordinates.
///
/// Each term is `<= g`. At a point with unit value `f(x)`, the best pair has
/// `s` the largest grid point `<= f(x)` and `r` the one below it, so the join
/// is within `2/q` of `f` (times the scale in original coordinates).
pub fn urysohn_join_stream<E: UrysohnCarrier>(f: &E, g: &E, q: u32) -> Result<UrysohnJoin<E>> {
    if q == 0 {
        return Err(Error::InvalidArgument("denominator bound must be positive".into()));
    }
    ensure_le(f, g)?;
    if !f.is_usc() {
        return Err(Error::PreconditionViolation("lower function is not usc".into()));
    }
    if !g.is_lsc() {
        return Err(Error::PreconditionViolation("upper function is not lsc".into()));
    }
    let unit = rescale_to_unit(f, g)?;
    let grid = rational_grid(q);
    let mut pairs = Vec::new();
    let mut acc = unit.lower.zero_like();
    for r in &grid {
        for s in grid.iter().filter(|s| *s > r) {
            let w = E::separating_function(&unit.lower, &unit.upper, r, s).map_err(|e| {
                Error::PairFailed { r: r.to_string(), s: s.to_string(), source: Box::new(e) }
            })?;
            acc = acc.join(&w.scale(r));
            pairs.push((r.clone(), s.clone()));
        }
    }
    let gap = Scalar::from_int(2) * &unit.scale / &Scalar::from_int(q as i64);
    Ok(UrysohnJoin {
        lower: f.clone(),
        upper: g.clone(),
        denominator_bound: q,
        join: unit.unscale(&acc),
        shift: unit.shift,
        scale: unit.scale,
        pairs,
        gap,
    })
}
