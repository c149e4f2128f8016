use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteFunc, FiniteSpace, PointSet};
use crate::error::{Error, Result};
use crate::scalar::{q, Scalar};

/// Outcome of trying to separate two disjoint closed sets by open sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SeparationCertificate {
    Separated { c: PointSet, d: PointSet, u: PointSet, v: PointSet },
    NotSeparable { c: PointSet, d: PointSet },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityVerdict {
    pub normal: bool,
    /// The first inseparable closed pair, when there is one.
    pub certificate: Option<SeparationCertificate>,
}

/// Separates `c` and `d` by their open hulls, the least opens containing
/// them. Any other separating pair contains the hulls, so the hulls meet
/// exactly when no separation exists.
pub fn separate(space: &FiniteSpace, c: PointSet, d: PointSet) -> SeparationCertificate {
    let u = space.open_hull(c);
    let v = space.open_hull(d);
    if u.is_disjoint(v) {
        SeparationCertificate::Separated { c, d, u, v }
    } else {
        SeparationCertificate::NotSeparable { c, d }
    }
}

pub fn is_normal(space: &FiniteSpace) -> NormalityVerdict {
    let closeds = space.closeds();
    for (i, &c) in closeds.iter().enumerate() {
        for &d in &closeds[i..] {
            if !c.is_disjoint(d) {
                continue;
            }
            let cert = separate(space, c, d);
            if matches!(cert, SeparationCertificate::NotSeparable { .. }) {
                return NormalityVerdict { normal: false, certificate: Some(cert) };
            }
        }
    }
    NormalityVerdict { normal: true, certificate: None }
}

/// Continuous `h` with `0 <= h <= 1`, `h = 0` on `c` and `h = 1` on `d`.
///
/// Continuous functions are constant on connected components, so the witness
/// is 1 on components meeting `d` and 0 elsewhere.
pub fn urysohn(space: &Arc<FiniteSpace>, c: PointSet, d: PointSet) -> Result<FiniteFunc> {
    if !space.is_closed(c) || !space.is_closed(d) {
        return Err(Error::PreconditionViolation("both sets must be closed".into()));
    }
    if !c.is_disjoint(d) {
        return Err(Error::PreconditionViolation(format!("{c} and {d} intersect")));
    }
    let mut meets_c = vec![false; space.component_count()];
    let mut meets_d = vec![false; space.component_count()];
    for x in c.iter() {
        meets_c[space.component_of(x)] = true;
    }
    for x in d.iter() {
        meets_d[space.component_of(x)] = true;
    }
    if let Some(k) = (0..space.component_count()).find(|&k| meets_c[k] && meets_d[k]) {
        return Err(Error::NotSeparable { component: k });
    }
    let values = (0..space.len())
        .map(|x| if meets_d[space.component_of(x)] { Scalar::one() } else { Scalar::zero() })
        .collect();
    FiniteFunc::new(space.clone(), values)
}

/// Open sets read off an inserted `c` with `χ_A <= c <= χ_{X∖B}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KtSeparation {
    pub u: PointSet,
    pub v: PointSet,
}

/// `U = c⁻¹(1/3, ∞)` and `V = X ∖ c⁻¹[2/3, 1]`.
///
/// The two sets overlap wherever `1/3 < c < 2/3`; that is reported as
/// [`Error::ThresholdOverlap`] rather than returned.
pub fn kt_threshold_separation(c: &FiniteFunc) -> Result<KtSeparation> {
    let third = q(1, 3);
    let two_thirds = q(2, 3);
    let u = c.level_set(|v| v > &third);
    let band = c.level_set(|v| v >= &two_thirds && v <= &Scalar::one());
    let v = band.complement(c.space().len());
    match u.intersection(v).iter().next() {
        Some(x) => Err(Error::ThresholdOverlap { at: x.to_string() }),
        None => Ok(KtSeparation { u, v }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_space::{enumerate_spaces, indicator, insert_finite, FiniteInsertion};

    /// Reference check that tries every pair of opens.
    fn separable_by_search(space: &FiniteSpace, c: PointSet, d: PointSet) -> bool {
        space.opens().iter().any(|&u| {
            c.is_subset(u)
                && space.opens().iter().any(|&v| d.is_subset(v) && u.is_disjoint(v))
        })
    }

    fn normal_by_search(space: &FiniteSpace) -> bool {
        let closeds = space.closeds();
        closeds.iter().all(|&c| {
            closeds
                .iter()
                .all(|&d| !c.is_disjoint(d) || separable_by_search(space, c, d))
        })
    }

    #[test]
    fn normality_examples() {
        assert!(is_normal(&FiniteSpace::discrete(4)).normal);
        assert!(is_normal(&FiniteSpace::sierpinski()).normal);
        assert!(is_normal(&FiniteSpace::indiscrete(2)).normal);
        // Two closed points below a shared open point.
        let v = FiniteSpace::from_relation(3, &[(1, 0), (2, 0)]).unwrap();
        let verdict = is_normal(&v);
        assert!(!verdict.normal);
        assert_eq!(
            verdict.certificate,
            Some(SeparationCertificate::NotSeparable {
                c: PointSet::singleton(2),
                d: PointSet::singleton(1)
            })
        );
    }

    #[test]
    fn hull_separation_matches_search() {
        for n in 1..=4 {
            for s in enumerate_spaces(n).unwrap() {
                assert_eq!(is_normal(&s).normal, normal_by_search(&s), "{s:?}");
            }
        }
    }

    #[test]
    fn urysohn_examples() {
        let d2 = Arc::new(FiniteSpace::discrete(2));
        let h = urysohn(&d2, PointSet::singleton(0), PointSet::singleton(1)).unwrap();
        assert_eq!(h.values(), &[Scalar::zero(), Scalar::one()]);
        let h = urysohn(&d2, PointSet::EMPTY, PointSet::EMPTY).unwrap();
        assert_eq!(h.values(), &[Scalar::zero(), Scalar::zero()]);
        let ind = Arc::new(FiniteSpace::indiscrete(2));
        assert_eq!(
            urysohn(&ind, PointSet::EMPTY, ind.full()),
            Ok(FiniteFunc::from_ints(ind.clone(), &[1, 1]).unwrap())
        );
        let s = Arc::new(FiniteSpace::from_relation(3, &[(1, 0), (2, 0)]).unwrap());
        assert_eq!(
            urysohn(&s, PointSet::singleton(1), PointSet::singleton(2)),
            Err(Error::NotSeparable { component: 0 })
        );
    }

    #[test]
    fn urysohn_rejects_non_closed() {
        let s = Arc::new(FiniteSpace::sierpinski());
        assert!(matches!(
            urysohn(&s, PointSet::singleton(0), PointSet::EMPTY),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn thresholds_on_zero_one_witness() {
        let s = Arc::new(FiniteSpace::discrete(3));
        let a = PointSet::singleton(0);
        let b = PointSet::singleton(2);
        let f = indicator(&s, a);
        let g = indicator(&s, b.complement(3));
        let FiniteInsertion::Witness(c) = insert_finite(&f, &g).unwrap() else {
            panic!("discrete spaces always admit insertion");
        };
        let sep = kt_threshold_separation(&c).unwrap();
        assert!(a.is_subset(sep.u) && b.is_subset(sep.v));
        assert!(s.is_open(sep.u) && s.is_open(sep.v));
    }

    #[test]
    fn thresholds_overlap_in_the_middle_band() {
        let s = Arc::new(FiniteSpace::discrete(2));
        let c = FiniteFunc::new(s, vec![q(1, 2), Scalar::one()]).unwrap();
        assert_eq!(
            kt_threshold_separation(&c),
            Err(Error::ThresholdOverlap { at: "0".into() })
        );
    }
}
