//! Shared oracles and generators for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use insertion_core::finite_space::{FiniteFunc, FiniteSpace};
use insertion_core::seq_model::SeqFunc;
use insertion_core::{AlgElement, Scalar};
use rand::Rng;

/// Indices read by the truncation oracle.
pub const TRUNCATION_DEPTH: usize = 64;
/// Start of the tail window, past every generated prefix.
pub const TAIL_START: usize = 32;

/// Brute-force insertion on `ℕ` from values alone.
///
/// A convergent insertion has some limit `L` that it takes on a tail, so it
/// must satisfy `f(k) <= L <= g(k)` there. Tries every value and midpoint
/// seen before the depth as `L` over `[TAIL_START, TRUNCATION_DEPTH)`,
/// then checks the clamped sequence on the whole window. Returns the first
/// limit that works.
pub fn brute_force_level(f: &SeqFunc, g: &SeqFunc) -> Option<Scalar> {
    let mut seen = BTreeSet::new();
    for k in 0..TRUNCATION_DEPTH {
        seen.insert(f.value_at(k).clone());
        seen.insert(g.value_at(k).clone());
    }
    let sorted: Vec<Scalar> = seen.into_iter().collect();
    let mut candidates = sorted.clone();
    for w in sorted.windows(2) {
        candidates.push((&w[0] + &w[1]) / &Scalar::from_int(2));
    }
    candidates.into_iter().find(|l| {
        let tail_ok = (TAIL_START..TRUNCATION_DEPTH).all(|k| f.value_at(k) <= l && l <= g.value_at(k));
        let clamped_ok = (0..TRUNCATION_DEPTH).all(|k| {
            let a = if l < f.value_at(k) {
                f.value_at(k)
            } else if l > g.value_at(k) {
                g.value_at(k)
            } else {
                l
            };
            f.value_at(k) <= a && a <= g.value_at(k)
        });
        tail_ok && clamped_ok
    })
}

/// `p/q` with `|p| <= range·q` and `1 <= q <= max_den`.
pub fn ratio<R: Rng>(rng: &mut R, range: i64, max_den: i64) -> Scalar {
    let q = rng.gen_range(1..=max_den);
    Scalar::ratio(rng.gen_range(-range * q..=range * q), q)
}

pub fn ratios<R: Rng>(rng: &mut R, len: usize, range: i64, max_den: i64) -> Vec<Scalar> {
    (0..len).map(|_| ratio(rng, range, max_den)).collect()
}

/// A sequence on `ℕ` with `prefix + cycle <= total`.
pub fn bounded_seq<R: Rng>(rng: &mut R, total: usize, max_den: i64) -> SeqFunc {
    let cycle = rng.gen_range(1..=total);
    let prefix = rng.gen_range(0..=total - cycle);
    SeqFunc::on_n(ratios(rng, prefix, 3, max_den), ratios(rng, cycle, 3, max_den))
}

/// `f <= g` on `ℕ`, both with `prefix + cycle <= total`.
pub fn bounded_pair<R: Rng>(rng: &mut R, total: usize, max_den: i64) -> (SeqFunc, SeqFunc) {
    let cycle = rng.gen_range(1..=total);
    let prefix = rng.gen_range(0..=total - cycle);
    let shaped = |rng: &mut R| SeqFunc::on_n(ratios(rng, prefix, 3, max_den), ratios(rng, cycle, 3, max_den));
    let f = shaped(rng);
    let d = shaped(rng).abs();
    (f.clone(), f.add(&d))
}

pub fn finite_func<R: Rng>(rng: &mut R, space: &Arc<FiniteSpace>, max_den: i64) -> FiniteFunc {
    FiniteFunc::new(space.clone(), ratios(rng, space.len(), 3, max_den)).unwrap()
}

/// Exact values `f(k)` for `k` below the window and `f(ω)` when present.
pub fn values(f: &SeqFunc, window: usize) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = (0..window).map(|k| f.value_at(k).clone()).collect();
    v.extend(f.omega().cloned());
    v
}
