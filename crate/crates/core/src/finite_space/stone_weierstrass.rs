//! Finite-scale Stone-Weierstrass: the unital ℓ-subalgebra generated by a
//! family `G` of functions contains the indicator of every fiber of `G`,
//! built explicitly from `G` with `+`, scalars, `∨`, `∧` and constants.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteFunc, FiniteSpace, PointSet};
use crate::error::{Error, Result};
use crate::lattice::{meet_all, AlgElement};
use crate::scalar::Scalar;

/// One separating function `h_xy = ((g - g(y)) / (g(x) - g(y)) ∨ 0) ∧ 1`,
/// equal to 1 at `x` and 0 at `y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockStep {
    pub x: usize,
    pub y: usize,
    pub generator: usize,
    pub h: FiniteFunc,
}

/// A block indicator together with the steps whose meet produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedCombination {
    pub block: PointSet,
    pub representative: usize,
    pub steps: Vec<BlockStep>,
    pub indicator: FiniteFunc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockIndicators {
    pub generators: Vec<FiniteFunc>,
    pub blocks: Vec<GeneratedCombination>,
}

impl BlockIndicators {
    pub fn partition(&self) -> Vec<PointSet> {
        self.blocks.iter().map(|b| b.block).collect()
    }

    pub fn indicators(&self) -> Vec<FiniteFunc> {
        self.blocks.iter().map(|b| b.indicator.clone()).collect()
    }

    /// Whether every point sits alone in its block.
    pub fn separates_points(&self) -> bool {
        self.blocks.iter().all(|b| b.block.len() == 1)
    }
}

/// `h_xy` built from generator `g`; requires `g(x) != g(y)`.
pub fn separating_step(g: &FiniteFunc, x: usize, y: usize) -> FiniteFunc {
    let gy = g.value(y).clone();
    let slope = Scalar::one() / &(g.value(x) - &gy);
    g.add_scalar(&-gy)
        .scale(&slope)
        .join(&g.zero_like())
        .meet(&g.one_like())
}

/// Fiber partition of `generators` and the exact indicator of each fiber.
pub fn block_indicators(
    space: &Arc<FiniteSpace>,
    generators: &[FiniteFunc],
) -> Result<BlockIndicators> {
    if generators.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if let Some(i) = generators.iter().position(|g| **g.space() != **space) {
        return Err(Error::CarrierMismatch(format!("generator {i} lives on another space")));
    }
    let n = space.len();
    let same = |x: usize, y: usize| generators.iter().all(|g| g.value(x) == g.value(y));
    let mut assigned = PointSet::EMPTY;
    let mut blocks = Vec::new();
    for x in 0..n {
        if assigned.contains(x) {
            continue;
        }
        let block = PointSet::from_points((x..n).filter(|&y| same(x, y)));
        assigned = assigned.union(block);
        let steps: Vec<BlockStep> = (0..n)
            .filter(|&y| !block.contains(y))
            .map(|y| {
                let generator = generators
                    .iter()
                    .position(|g| g.value(x) != g.value(y))
                    .expect("y lies outside x's fiber");
                let h = separating_step(&generators[generator], x, y);
                BlockStep { x, y, generator, h }
            })
            .collect();
        let indicator = if steps.is_empty() {
            FiniteFunc::constant(space.clone(), Scalar::one())
        } else {
            let hs: Vec<FiniteFunc> = steps.iter().map(|s| s.h.clone()).collect();
            meet_all(&hs)?
        };
        blocks.push(GeneratedCombination { block, representative: x, steps, indicator });
    }
    Ok(BlockIndicators { generators: generators.to_vec(), blocks })
}
