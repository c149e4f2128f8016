use super::{FiniteSpace, PointSet};
use crate::error::{Error, Result};

/// Default largest point count for [`enumerate_spaces`].
pub const ENUMERATION_BOUND: usize = 5;

/// Every topology on `n` labeled points, each exactly once.
///
/// Finite topologies correspond one-to-one with preorders (via minimal
/// neighborhoods), so this walks all transitive reflexive relations.
pub fn enumerate_spaces(n: usize) -> Result<Vec<FiniteSpace>> {
    enumerate_spaces_bounded(n, ENUMERATION_BOUND)
}

pub fn enumerate_spaces_bounded(n: usize, limit: usize) -> Result<Vec<FiniteSpace>> {
    if n > limit || n > super::MAX_POINTS {
        return Err(Error::BoundExceeded { n, limit });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("spaces need at least one point".into()));
    }
    let mut out = Vec::new();
    let mut reach = vec![PointSet::EMPTY; n];
    extend(n, 0, &mut reach, &mut out);
    Ok(out)
}

/// Chooses `reach[x]` (the minimal neighborhood) point by point, pruning as
/// soon as transitivity fails among the points already fixed.
fn extend(n: usize, x: usize, reach: &mut [PointSet], out: &mut Vec<FiniteSpace>) {
    if x == n {
        let opens = (0..1u64 << n)
            .map(PointSet)
            .filter(|s| s.iter().all(|y| reach[y].is_subset(*s)))
            .collect();
        out.push(FiniteSpace::with_opens(n, opens));
        return;
    }
    let others = PointSet::full(n).difference(PointSet::singleton(x));
    let mut sub = 0u64;
    loop {
        let candidate = PointSet(sub).union(PointSet::singleton(x));
        reach[x] = candidate;
        if consistent(x, reach) {
            extend(n, x + 1, reach, out);
        }
        // Next subset of `others`.
        sub = (sub.wrapping_sub(others.0)) & others.0;
        if sub == 0 {
            break;
        }
    }
}

fn consistent(x: usize, reach: &[PointSet]) -> bool {
    let fixed = PointSet::full(x + 1);
    (0..=x).all(|a| {
        reach[a].intersection(fixed).iter().all(|b| {
            // Transitivity restricted to the points chosen so far.
            reach[b].intersection(fixed).is_subset(reach[a])
        })
    })
}

/// Counts topologies on `n` points by testing every family of subsets for the
/// axioms. Exponential in `2^n`; only for cross-checking small `n`.
pub fn count_topologies_brute_force(n: usize) -> Result<usize> {
    if n == 0 || n > 4 {
        return Err(Error::BoundExceeded { n, limit: 4 });
    }
    let subsets = 1usize << n;
    let full = subsets - 1;
    let mut count = 0;
    for family in 0u64..(1u64 << subsets) {
        let has = |s: usize| family >> s & 1 == 1;
        if !has(0) || !has(full) {
            continue;
        }
        let closed = (0..subsets).filter(|&s| has(s)).all(|s| {
            (0..subsets).filter(|&t| has(t)).all(|t| has(s | t) && has(s & t))
        });
        if closed {
            count += 1;
        }
    }
    Ok(count)
}
