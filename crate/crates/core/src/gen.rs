//! Seeded random instances for both carriers.
//!
//! Every generator takes the RNG by reference so a single seed drives a
//! whole batch; [`rng`] builds the ChaCha stream used throughout.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::finite_space::{FiniteFunc, FiniteSpace};
use crate::lattice::AlgElement;
use crate::scalar::Scalar;
use crate::seq_model::SeqFunc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape limits for generated sequences.
#[derive(Debug, Clone, Copy)]
pub struct SeqShape {
    pub max_prefix: usize,
    pub max_cycle: usize,
    /// Numerators are drawn from `-range..=range`.
    pub range: i64,
}

impl Default for SeqShape {
    fn default() -> Self {
        SeqShape { max_prefix: 4, max_cycle: 3, range: 4 }
    }
}

pub fn scalar<R: Rng>(rng: &mut R, range: i64) -> Scalar {
    let den = *[1i64, 2, 4].choose(rng).unwrap();
    Scalar::ratio(rng.gen_range(-range..=range), den)
}

fn nonneg<R: Rng>(rng: &mut R, range: i64) -> Scalar {
    scalar(rng, range).abs()
}

fn values<R: Rng>(rng: &mut R, len: usize, range: i64) -> Vec<Scalar> {
    (0..len).map(|_| scalar(rng, range)).collect()
}

/// An eventually periodic sequence on `ℕ`.
pub fn seq_on_n<R: Rng>(rng: &mut R, shape: SeqShape) -> SeqFunc {
    let p = rng.gen_range(0..=shape.max_prefix);
    let c = rng.gen_range(1..=shape.max_cycle);
    SeqFunc::on_n(values(rng, p, shape.range), values(rng, c, shape.range))
}

/// A convergent sequence on `ℕ`.
pub fn convergent_on_n<R: Rng>(rng: &mut R, shape: SeqShape) -> SeqFunc {
    let p = rng.gen_range(0..=shape.max_prefix);
    SeqFunc::on_n(values(rng, p, shape.range), values(rng, 1, shape.range))
}

/// A continuous function on `Y`.
pub fn continuous_on_y<R: Rng>(rng: &mut R, shape: SeqShape) -> SeqFunc {
    let a = convergent_on_n(rng, shape);
    a.extend_to_y().expect("convergent")
}

/// `f <= g` on `ℕ`, with no constraint on the tails.
pub fn pair_on_n<R: Rng>(rng: &mut R, shape: SeqShape) -> (SeqFunc, SeqFunc) {
    let f = seq_on_n(rng, shape);
    let d = seq_on_n(rng, shape).abs();
    let g = f.add(&d);
    (f, g)
}

/// `f <= g` on `ℕ` with `limsup f <= liminf g`.
pub fn feasible_pair_on_n<R: Rng>(rng: &mut R, shape: SeqShape) -> (SeqFunc, SeqFunc) {
    let (f, g) = pair_on_n(rng, shape);
    let top = f.limit_data().limsup;
    (f, g.join(&SeqFunc::constant(top)))
}

/// `f + eps <= g` on `ℕ`.
pub fn gapped_pair_on_n<R: Rng>(rng: &mut R, shape: SeqShape, eps: &Scalar) -> (SeqFunc, SeqFunc) {
    let (f, g) = pair_on_n(rng, shape);
    (f, g.add_scalar(eps))
}

/// `f` usc and `g` lsc on `Y` with `f <= g`.
pub fn usc_lsc_pair_on_y<R: Rng>(rng: &mut R, shape: SeqShape) -> (SeqFunc, SeqFunc) {
    let f0 = seq_on_n(rng, shape);
    let fw = f0.limit_data().limsup + nonneg(rng, 2);
    let f = f0.with_omega(Some(fw.clone()));
    let d = seq_on_n(rng, shape).abs();
    // ω-value of g at f(ω), with the tail of g kept above it.
    let g = f0.add(&d).join(&SeqFunc::constant(fw.clone())).with_omega(Some(fw));
    (f, g)
}

/// Members that are convergent (on `Y` when `on_y`), joined with one
/// patch member so the family reaches `eps` everywhere.
pub fn cover_family<R: Rng>(rng: &mut R, shape: SeqShape, eps: &Scalar, size: usize, on_y: bool) -> Vec<SeqFunc> {
    let mut family: Vec<SeqFunc> = (0..size.max(1))
        .map(|_| {
            let a = convergent_on_n(rng, shape);
            if on_y {
                a.extend_to_y().unwrap()
            } else {
                a
            }
        })
        .collect();
    let window = family.iter().map(|t| t.prefix().len()).max().unwrap_or(0);
    let reaches = |k: usize, fam: &[SeqFunc]| fam.iter().any(|t| t.value_at(k) >= eps);
    let prefix: Vec<Scalar> = (0..window)
        .map(|k| if reaches(k, &family) { scalar(rng, shape.range) } else { eps.clone() })
        .collect();
    let tail_ok = family.iter().any(|t| t.value_at(window) >= eps);
    let tail = if tail_ok { scalar(rng, shape.range) } else { eps.clone() };
    let patch = SeqFunc::on_n(prefix, vec![tail]);
    let patch = if on_y { patch.extend_to_y().unwrap() } else { patch };
    let at = rng.gen_range(0..=family.len());
    family.insert(at, patch);
    family
}

/// A random finite space on `n` points from a random specialization relation.
pub fn finite_space<R: Rng>(rng: &mut R, n: usize) -> Arc<FiniteSpace> {
    let mut rel = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.gen_bool(0.25) {
                rel.push((x, y));
            }
        }
    }
    Arc::new(FiniteSpace::from_relation(n, &rel).expect("any relation generates a preorder"))
}

pub fn finite_func<R: Rng>(rng: &mut R, space: &Arc<FiniteSpace>, range: i64) -> FiniteFunc {
    FiniteFunc::new(space.clone(), values(rng, space.len(), range)).expect("length matches")
}

/// `f` usc and `g` lsc on the space with `f <= g`.
pub fn usc_lsc_pair<R: Rng>(rng: &mut R, space: &Arc<FiniteSpace>, range: i64) -> (FiniteFunc, FiniteFunc) {
    let f = finite_func(rng, space, range).upper_envelope();
    let g0 = finite_func(rng, space, range).lower_envelope();
    let lift = Ord::max(f.sub(&g0).values_sup(), Scalar::zero());
    let g = g0.add_scalar(&(lift + nonneg(rng, 2)));
    (f, g)
}
