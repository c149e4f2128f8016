//! Exhaustive checks over every topology on at most five points.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use insertion_core::finite_space::{
    enumerate_spaces, indicator, insert_finite, is_normal, survey_space, thresholds_separate, FiniteFunc,
    FiniteInsertion, FiniteSpace, PointSet,
};
use insertion_core::{AlgElement, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_spaces(max: usize) -> Vec<Arc<FiniteSpace>> {
    (1..=max).flat_map(|n| enumerate_spaces(n).unwrap()).map(Arc::new).collect()
}

fn open_by_list(space: &FiniteSpace, s: PointSet) -> bool {
    space.opens().contains(&s)
}

/// Every superlevel set `{f >= t}` is closed.
fn usc_by_levels(f: &FiniteFunc) -> bool {
    let n = f.space().len();
    f.values().iter().all(|t| open_by_list(f.space(), f.level_set(|v| v >= t).complement(n)))
}

/// Every sublevel set `{f <= t}` is closed.
fn lsc_by_levels(f: &FiniteFunc) -> bool {
    let n = f.space().len();
    f.values().iter().all(|t| open_by_list(f.space(), f.level_set(|v| v <= t).complement(n)))
}

fn continuous_by_preimages(f: &FiniteFunc) -> bool {
    f.values().iter().all(|t| open_by_list(f.space(), f.level_set(|v| v == t)))
}

/// Some pair of disjoint opens holds the two sets.
fn separable_by_search(space: &FiniteSpace, c: PointSet, d: PointSet) -> bool {
    space.opens().iter().any(|&u| {
        c.is_subset(u) && space.opens().iter().any(|&v| d.is_subset(v) && u.is_disjoint(v))
    })
}

fn normal_by_search(space: &FiniteSpace) -> bool {
    let closeds = space.closeds();
    closeds.iter().all(|&c| {
        closeds.iter().all(|&d| !c.is_disjoint(d) || separable_by_search(space, c, d))
    })
}

/// Tries every function into the values of `f` and `g`; a continuous
/// insertion exists iff one exists with those values.
fn insertion_by_search(f: &FiniteFunc, g: &FiniteFunc) -> bool {
    let levels: Vec<Scalar> =
        f.values().iter().chain(g.values()).cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = f.space().len();
    let total = levels.len().pow(n as u32);
    (0..total).any(|mut code| {
        let vals: Vec<Scalar> = (0..n)
            .map(|_| {
                let v = levels[code % levels.len()].clone();
                code /= levels.len();
                v
            })
            .collect();
        let h = FiniteFunc::new(f.space().clone(), vals).unwrap();
        f.le(&h) && h.le(g) && continuous_by_preimages(&h)
    })
}

#[test]
fn indicators_are_semicontinuous_exactly_on_closed_and_open_sets() {
    for space in all_spaces(5) {
        let n = space.len();
        for bits in 0..1u64 << n {
            let s = PointSet(bits);
            let chi = indicator(&space, s);
            let closed = open_by_list(&space, s.complement(n));
            let open = open_by_list(&space, s);
            assert_eq!(chi.is_usc(), closed, "usc of χ_{s} on {space:?}");
            assert_eq!(chi.is_lsc(), open, "lsc of χ_{s} on {space:?}");
            assert_eq!(usc_by_levels(&chi), closed);
            assert_eq!(lsc_by_levels(&chi), open);
        }
    }
}

#[test]
fn normality_matches_open_pair_search() {
    for space in all_spaces(4) {
        assert_eq!(is_normal(&space).normal, normal_by_search(&space), "{space:?}");
    }
}

#[test]
fn feasible_insertion_gives_threshold_separation() {
    let mut feasible = 0;
    for space in all_spaces(4) {
        let row = survey_space(&space).unwrap();
        if row.insertion_always_feasible {
            feasible += 1;
            assert!(row.normal, "{space:?}");
            assert!(thresholds_separate(&space).unwrap(), "{space:?}");
        }
    }
    assert!(feasible > 0);
}

#[test]
fn non_normal_three_point_space_has_no_insertion() {
    // Points 1 and 2 are closed; every neighborhood of either contains 0.
    let v = Arc::new(FiniteSpace::from_relation(3, &[(1, 0), (2, 0)]).unwrap());
    assert!(!is_normal(&v).normal);
    let f = indicator(&v, PointSet::singleton(1));
    let g = indicator(&v, PointSet::singleton(2).complement(3));
    assert!(matches!(insert_finite(&f, &g).unwrap(), FiniteInsertion::Infeasible { .. }));
    assert!(!insertion_by_search(&f, &g));
}

#[test]
fn least_insertion_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let spaces = all_spaces(4);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..600 {
        let space = &spaces[rng.gen_range(0..spaces.len())];
        let (f, g) = if rng.gen_bool(0.5) {
            let f = common::finite_func(&mut rng, space, 2).upper_envelope();
            let g0 = common::finite_func(&mut rng, space, 2).lower_envelope();
            (f.clone(), g0.join(&f.lower_envelope()).lower_envelope())
        } else {
            // A closed set inside an open one, as indicators.
            let closeds = space.closeds();
            let c = closeds[rng.gen_range(0..closeds.len())];
            let opens: Vec<PointSet> = space.opens().iter().copied().filter(|u| c.is_subset(*u)).collect();
            let u = opens[rng.gen_range(0..opens.len())];
            (indicator(space, c), indicator(space, u))
        };
        if !f.le(&g) {
            continue;
        }
        assert!(usc_by_levels(&f) && lsc_by_levels(&g));
        match insert_finite(&f, &g).unwrap() {
            FiniteInsertion::Witness(h) => {
                assert!(f.le(&h) && h.le(&g) && continuous_by_preimages(&h));
                assert!(insertion_by_search(&f, &g));
                yes += 1;
            }
            FiniteInsertion::Infeasible { .. } => {
                assert!(!insertion_by_search(&f, &g));
                no += 1;
            }
        }
    }
    assert!(yes > 50 && no > 5, "feasible {yes}, infeasible {no}");
}
