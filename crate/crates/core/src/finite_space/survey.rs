//! Insertion feasibility against normality, one enumerated space at a time.
//!
//! Feasibility is tested on the exhaustive 0/1 family: `χ_C <= χ_U` for
//! every closed `C` inside every open `U`. The spaces here need not be T1,
//! so the outcome is ground truth from enumeration, not a consequence of
//! any insertion theorem.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{indicator, insert_finite, is_normal, kt_threshold_separation, FiniteInsertion, FiniteSpace, PointSet};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub n: usize,
    pub open_count: usize,
    pub normal: bool,
    pub insertion_always_feasible: bool,
    pub agreement: bool,
}

/// A closed pair `C ⊆ U` with no continuous insertion between the indicators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfeasiblePair {
    pub closed: PointSet,
    pub open: PointSet,
}

/// First 0/1 pair without an insertion, if any.
pub fn first_infeasible_pair(space: &Arc<FiniteSpace>) -> Result<Option<InfeasiblePair>> {
    for closed in space.closeds() {
        let f = indicator(space, closed);
        for &open in space.opens() {
            if !closed.is_subset(open) {
                continue;
            }
            if let FiniteInsertion::Infeasible { .. } = insert_finite(&f, &indicator(space, open))? {
                return Ok(Some(InfeasiblePair { closed, open }));
            }
        }
    }
    Ok(None)
}

/// Separates each disjoint closed pair by the thresholds of an inserted
/// function; `false` when some pair has no insertion or the thresholds fail.
pub fn thresholds_separate(space: &Arc<FiniteSpace>) -> Result<bool> {
    let n = space.len();
    let closeds = space.closeds();
    for &c in &closeds {
        for &d in &closeds {
            if !c.is_disjoint(d) {
                continue;
            }
            let f = indicator(space, c);
            let g = indicator(space, d.complement(n));
            let FiniteInsertion::Witness(h) = insert_finite(&f, &g)? else { return Ok(false) };
            let Ok(sep) = kt_threshold_separation(&h) else { return Ok(false) };
            let ok = c.is_subset(sep.u)
                && d.is_subset(sep.v)
                && sep.u.is_disjoint(sep.v)
                && space.is_open(sep.u)
                && space.is_open(sep.v);
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn survey_space(space: &Arc<FiniteSpace>) -> Result<SurveyRow> {
    let normal = is_normal(space).normal;
    let feasible = first_infeasible_pair(space)?.is_none();
    Ok(SurveyRow {
        n: space.len(),
        open_count: space.opens().len(),
        normal,
        insertion_always_feasible: feasible,
        agreement: normal == feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_space::enumerate_spaces;

    #[test]
    fn discrete_spaces_agree() {
        let row = survey_space(&Arc::new(FiniteSpace::discrete(3))).unwrap();
        assert!(row.normal && row.insertion_always_feasible && row.agreement);
    }

    #[test]
    fn sierpinski_and_v_space() {
        let s = Arc::new(FiniteSpace::sierpinski());
        let row = survey_space(&s).unwrap();
        assert!(row.normal && row.insertion_always_feasible);
        // Two closed points sharing the open point 0 in every neighborhood.
        let v = Arc::new(FiniteSpace::from_relation(3, &[(1, 0), (2, 0)]).unwrap());
        let row = survey_space(&v).unwrap();
        assert!(first_infeasible_pair(&v).unwrap().is_some());
        assert!(!row.insertion_always_feasible && !row.normal && row.agreement);
    }

    #[test]
    fn feasible_spaces_are_normal_up_to_three_points() {
        for n in 1..=3 {
            for space in enumerate_spaces(n).unwrap() {
                let space = Arc::new(space);
                let row = survey_space(&space).unwrap();
                if row.insertion_always_feasible {
                    assert!(row.normal);
                    assert!(thresholds_separate(&space).unwrap());
                }
            }
        }
    }
}
