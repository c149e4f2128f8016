use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ensure_le, AlgElement};
use crate::scalar::Scalar;
use crate::seq_model::{strict_insert, ConvergentInsertion, SeqFunc};

/// Strict insertion: given `lower + eps <= upper`, some representable `a`
/// with `lower <= a <= upper`.
pub trait StrictInsertionOracle<E> {
    fn name(&self) -> &str;
    fn insert(&self, lower: &E, upper: &E, eps: &Scalar) -> Result<E>;
}

/// The sequence-model oracle: `lower ∨ (upper ∧ L)` for the midpoint limit
/// `L`. Operates on `ℕ` (no `ω`-values).
#[derive(Debug, Clone, Copy, Default)]
pub struct MidpointOracle;

impl StrictInsertionOracle<SeqFunc> for MidpointOracle {
    fn name(&self) -> &str {
        "midpoint"
    }

    fn insert(&self, lower: &SeqFunc, upper: &SeqFunc, eps: &Scalar) -> Result<SeqFunc> {
        match strict_insert(lower, upper, eps)? {
            ConvergentInsertion::Witness { witness } => Ok(witness),
            ConvergentInsertion::Infeasible(c) => Err(Error::PreconditionViolation(format!(
                "no convergent insertion: limsup {} > liminf {}",
                c.limsup, c.liminf
            ))),
        }
    }
}

/// When every element is representable, the lower bound is its own witness.
#[derive(Debug, Clone, Copy, Default)]
pub struct LowerOracle;

impl<E: AlgElement> StrictInsertionOracle<E> for LowerOracle {
    fn name(&self) -> &str {
        "lower"
    }

    fn insert(&self, lower: &E, upper: &E, eps: &Scalar) -> Result<E> {
        ensure_le(&lower.add_scalar(eps), upper)?;
        Ok(lower.clone())
    }
}

/// Iterates of the successive strict insertions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace<E> {
    pub oracle: String,
    pub lower: E,
    pub upper: E,
    /// `a_seq[n - 1]` is `a_n`.
    pub a_seq: Vec<E>,
    /// `step_bounds[n - 1] = 2^-n`.
    pub step_bounds: Vec<Scalar>,
    pub checked_inequalities: Vec<(String, bool)>,
}

impl<E> IterationTrace<E> {
    pub fn all_checks_pass(&self) -> bool {
        self.checked_inequalities.iter().all(|(_, ok)| *ok)
    }

    /// The same trace with every element passed through `f`.
    pub fn map<F>(self, f: impl Fn(E) -> F) -> IterationTrace<F> {
        IterationTrace {
            oracle: self.oracle,
            lower: f(self.lower),
            upper: f(self.upper),
            a_seq: self.a_seq.into_iter().map(&f).collect(),
            step_bounds: self.step_bounds,
            checked_inequalities: self.checked_inequalities,
        }
    }
}

/// Bounds handed to the oracle at step `n + 1` (1-based `n >= 1`), and the
/// gap between them.
pub fn step_bounds<E: AlgElement>(f: &E, g: &E, prev: &E, n: u32) -> (E, E, Scalar) {
    let d = Scalar::pow2_inv(n);
    let half = Scalar::pow2_inv(n + 1);
    let lo = f.add_scalar(&-&half).join(&prev.add_scalar(&-&d));
    let hi = g.meet(&prev.add_scalar(&d));
    (lo, hi, half)
}

fn check_sandwich<E: AlgElement>(lo: &E, a: &E, hi: &E, step: usize, oracle: &str) -> Result<()> {
    if !a.compatible(lo) {
        return Err(Error::OracleContractViolation {
            step,
            detail: format!("{oracle} returned an element on another carrier"),
        });
    }
    if let Some(p) = lo.first_violation(a) {
        return Err(Error::OracleContractViolation {
            step,
            detail: format!("{oracle} returned a_{step} below its lower bound at {p}"),
        });
    }
    if let Some(p) = a.first_violation(hi) {
        return Err(Error::OracleContractViolation {
            step,
            detail: format!("{oracle} returned a_{step} above its upper bound at {p}"),
        });
    }
    Ok(())
}

/// Builds a Cauchy sequence of representable elements converging to an
/// insertion between `f` and `g`.
///
/// `a_1` fits between `f - 1/2` and `g`; `a_{n+1}` between
/// `(f - 2^-(n+1)) ∨ (a_n - 2^-n)` and `g ∧ (a_n + 2^-n)`, which are
/// `2^-(n+1)` apart. So `f - 2^-n <= a_n <= g` and consecutive iterates
/// differ by at most `2^-n`.
pub fn dieudonne_iterate<E, O>(oracle: &O, f: &E, g: &E, steps: usize) -> Result<IterationTrace<E>>
where
    E: AlgElement,
    O: StrictInsertionOracle<E> + ?Sized,
{
    if steps == 0 {
        return Err(Error::InvalidArgument("at least one step is required".into()));
    }
    if steps > 60 {
        return Err(Error::BoundExceeded { n: steps, limit: 60 });
    }
    ensure_le(f, g)?;
    let name = oracle.name().to_string();

    let half = Scalar::pow2_inv(1);
    let lo = f.add_scalar(&-&half);
    let a1 = oracle.insert(&lo, g, &half)?;
    check_sandwich(&lo, &a1, g, 1, &name)?;
    let mut a_seq = vec![a1];
    for n in 1..steps as u32 {
        let (lo, hi, gap) = step_bounds(f, g, a_seq.last().unwrap(), n);
        let next = oracle.insert(&lo, &hi, &gap)?;
        check_sandwich(&lo, &next, &hi, n as usize + 1, &name)?;
        a_seq.push(next);
    }

    let step_bounds: Vec<Scalar> = (1..=steps as u32).map(Scalar::pow2_inv).collect();
    let mut checks = Vec::new();
    for (i, a) in a_seq.iter().enumerate() {
        let n = i + 1;
        let b = &step_bounds[i];
        checks.push((format!("f - 2^-{n} <= a[{n}]"), f.add_scalar(&-b).le(a)));
        checks.push((format!("a[{n}] <= g"), a.le(g)));
        if let Some(next) = a_seq.get(i + 1) {
            checks.push((format!("|a[{}] - a[{n}]| <= 2^-{n}", n + 1), &next.sub(a).norm() <= b));
        }
    }
    for i in 0..a_seq.len() {
        let tail = Scalar::from_int(2) * &step_bounds[i];
        for j in i + 1..a_seq.len() {
            let ok = a_seq[j].sub(&a_seq[i]).norm() <= tail;
            checks.push((format!("‖a[{}] - a[{}]‖ <= 2^{}", j + 1, i + 1, -(i as i64)), ok));
        }
    }

    Ok(IterationTrace {
        oracle: name,
        lower: f.clone(),
        upper: g.clone(),
        a_seq,
        step_bounds,
        checked_inequalities: checks,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finite_space::{FiniteFunc, FiniteSpace};
    use crate::scalar::q;
    use crate::seq_model::insert_convergent;

    /// Pushes every witness up by a fixed amount.
    struct Faulty(Scalar);

    impl StrictInsertionOracle<SeqFunc> for Faulty {
        fn name(&self) -> &str {
            "faulty"
        }
        fn insert(&self, lower: &SeqFunc, upper: &SeqFunc, eps: &Scalar) -> Result<SeqFunc> {
            Ok(MidpointOracle.insert(lower, upper, eps)?.add_scalar(&self.0))
        }
    }

    #[test]
    fn constant_one() {
        let one = SeqFunc::constant(Scalar::one());
        let t = dieudonne_iterate(&MidpointOracle, &one, &one, 12).unwrap();
        assert!(t.all_checks_pass());
        for (i, a) in t.a_seq.iter().enumerate() {
            assert!(a.sub(&one).norm() <= Scalar::pow2_inv(i as u32));
        }
    }

    #[test]
    fn finite_support_twenty_steps() {
        let f = SeqFunc::indicator_finite(&[0], false);
        let g = SeqFunc::constant(Scalar::one());
        let t = dieudonne_iterate(&MidpointOracle, &f, &g, 20).unwrap();
        assert_eq!(t.a_seq.len(), 20);
        assert!(t.all_checks_pass());
        assert!(t.a_seq[19].sub(&t.a_seq[9]).norm() <= Scalar::pow2_inv(9));
        let last = &t.a_seq[19];
        let h = insert_convergent(&f, &g).unwrap();
        assert!(h.witness().is_some());
        assert!(f.add_scalar(&-Scalar::pow2_inv(20)).le(last) && last.le(&g));
    }

    #[test]
    fn single_step() {
        let f = SeqFunc::from_ints(&[2], &[0], None);
        let g = f.add_scalar(&Scalar::one());
        let t = dieudonne_iterate(&MidpointOracle, &f, &g, 1).unwrap();
        assert_eq!(t.a_seq.len(), 1);
        assert!(f.add_scalar(&-q(1, 2)).le(&t.a_seq[0]) && t.a_seq[0].le(&g));
    }

    #[test]
    fn faulty_oracle_is_caught() {
        let f = SeqFunc::constant(Scalar::zero());
        let g = SeqFunc::constant(Scalar::one());
        let err = dieudonne_iterate(&Faulty(Scalar::from_int(3)), &f, &g, 5).unwrap_err();
        assert!(matches!(err, Error::OracleContractViolation { step: 1, .. }));
        let err = dieudonne_iterate(&Faulty(q(1, 16)), &f, &g, 8).unwrap_err();
        assert!(matches!(err, Error::OracleContractViolation { step, .. } if step > 1));
    }

    #[test]
    fn lower_oracle_on_finite_space() {
        let s = Arc::new(FiniteSpace::discrete(3));
        let f = FiniteFunc::from_ints(s.clone(), &[0, 2, -1]).unwrap();
        let g = FiniteFunc::from_ints(s, &[1, 2, 4]).unwrap();
        let t = dieudonne_iterate(&LowerOracle, &f, &g, 10).unwrap();
        assert!(t.all_checks_pass());
        assert!(t.a_seq[9].sub(&f).norm() <= Scalar::pow2_inv(9));
    }

    #[test]
    fn argument_checks() {
        let f = SeqFunc::constant(Scalar::one());
        let g = SeqFunc::constant(Scalar::zero());
        assert!(dieudonne_iterate(&MidpointOracle, &f, &g, 3).is_err());
        assert!(dieudonne_iterate(&MidpointOracle, &g, &f, 0).is_err());
    }
}
