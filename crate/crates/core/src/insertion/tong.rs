use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{join_all, meet_all, AlgElement};

/// Every intermediate of a merge, enough to re-check each inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeTrace<E> {
    pub a_seq: Vec<E>,
    pub b_seq: Vec<E>,
    /// Running meets of `a_seq` and running joins of `b_seq`, padded to a
    /// common length with their last entries.
    pub a_norm: Vec<E>,
    pub b_norm: Vec<E>,
    /// `⋀ a_seq`.
    pub lower: E,
    /// `⋁ b_seq`.
    pub upper: E,
    pub u_seq: Vec<E>,
    pub v_seq: Vec<E>,
    pub result: E,
    pub checked_inequalities: Vec<(String, bool)>,
}

impl<E> MergeTrace<E> {
    pub fn all_checks_pass(&self) -> bool {
        self.checked_inequalities.iter().all(|(_, ok)| *ok)
    }

    /// The same trace with every element passed through `f`.
    pub fn map<F>(self, f: impl Fn(E) -> F) -> MergeTrace<F> {
        let all = |v: Vec<E>| v.into_iter().map(&f).collect();
        MergeTrace {
            a_seq: all(self.a_seq),
            b_seq: all(self.b_seq),
            a_norm: all(self.a_norm),
            b_norm: all(self.b_norm),
            lower: f(self.lower),
            upper: f(self.upper),
            u_seq: all(self.u_seq),
            v_seq: all(self.v_seq),
            result: f(self.result),
            checked_inequalities: self.checked_inequalities,
        }
    }
}

fn running<E: AlgElement>(xs: &[E], op: impl Fn(&E, &E) -> E, len: usize) -> Vec<E> {
    let mut out: Vec<E> = Vec::with_capacity(len);
    for x in xs {
        let next = match out.last() {
            Some(prev) => op(prev, x),
            None => x.clone(),
        };
        out.push(next);
    }
    while out.len() < len {
        out.push(out.last().unwrap().clone());
    }
    out
}

/// Merges a decreasing meet and an increasing join into one element that is
/// both.
///
/// With `a'_n = a_1 ∧ … ∧ a_n` and `b'_n = b_1 ∨ … ∨ b_n`, sets
/// `u_n = ⋁_{i ≤ n} (a'_i ∧ b'_i)` and `v_n = u_n ∨ a'_n`. Finite lists
/// stabilize, so `u = u_N` and `v = v_N` coincide and sit between
/// `⋀ a` and `⋁ b`.
pub fn tong_merge<E: AlgElement>(a_seq: &[E], b_seq: &[E]) -> Result<MergeTrace<E>> {
    let lower = meet_all(a_seq)?;
    let upper = join_all(b_seq)?;
    if !lower.compatible(&upper) {
        return Err(Error::CarrierMismatch("a and b families live on different carriers".into()));
    }
    if let Some(p) = lower.first_violation(&upper) {
        return Err(Error::PreconditionViolation(format!("⋀a > ⋁b at {p}")));
    }

    let len = a_seq.len().max(b_seq.len());
    let a_norm = running(a_seq, E::meet, len);
    let b_norm = running(b_seq, E::join, len);

    let mut u_seq: Vec<E> = Vec::with_capacity(len);
    for (a, b) in a_norm.iter().zip(&b_norm) {
        let piece = a.meet(b);
        let u = match u_seq.last() {
            Some(prev) => prev.join(&piece),
            None => piece,
        };
        u_seq.push(u);
    }
    let v_seq: Vec<E> = u_seq.iter().zip(&a_norm).map(|(u, a)| u.join(a)).collect();

    let u = u_seq[len - 1].clone();
    let v = v_seq[len - 1].clone();

    let mut checks = Vec::new();
    for n in 0..len {
        let i = n + 1;
        checks.push((format!("u[{i}] <= b'[{i}]"), u_seq[n].le(&b_norm[n])));
        checks.push((format!("f <= v[{i}]"), lower.le(&v_seq[n])));
        for m in n..len {
            checks.push((format!("u[{}] <= v[{i}]", m + 1), u_seq[m].le(&v_seq[n])));
        }
        if n > 0 {
            checks.push((format!("u[{n}] <= u[{i}]"), u_seq[n - 1].le(&u_seq[n])));
            checks.push((format!("v[{i}] <= v[{n}]"), v_seq[n].le(&v_seq[n - 1])));
        }
    }
    checks.push(("v <= u ∨ f".into(), v.le(&u.join(&lower))));
    checks.push(("f <= u".into(), lower.le(&u)));
    checks.push(("u <= g".into(), u.le(&upper)));
    checks.push(("u = v".into(), u == v));

    Ok(MergeTrace {
        a_seq: a_seq.to_vec(),
        b_seq: b_seq.to_vec(),
        a_norm,
        b_norm,
        lower,
        upper,
        u_seq,
        v_seq,
        result: u,
        checked_inequalities: checks,
    })
}
