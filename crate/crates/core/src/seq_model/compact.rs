//! Compactness on both ends of `ℕ → Y`.
//!
//! On `Y` every cover by convergent functions has a finite subcover, read off
//! at `ω`. On `ℕ` the truncated indicators escape every finite subfamily, and
//! countable families are the most one can extract.

use serde::{Deserialize, Serialize};

use super::{SeqFunc, SeqPoint, YSet};
use crate::error::{Error, Result};
use crate::lattice::AlgElement;
use crate::scalar::Scalar;

/// A restartable, possibly infinite, indexed family of functions.
pub trait FamilyStream {
    /// `None` for an infinite family.
    fn len(&self) -> Option<usize>;
    fn member(&self, j: usize) -> SeqFunc;

    fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteFamily(pub Vec<SeqFunc>);

impl FamilyStream for FiniteFamily {
    fn len(&self) -> Option<usize> {
        Some(self.0.len())
    }

    fn member(&self, j: usize) -> SeqFunc {
        self.0[j].clone()
    }
}

/// `a_n = b·χ_{0..=n}`: finitely supported, below `b`, equal to `b` up to `n`.
pub fn local_compact_minorants(b: &SeqFunc, n: usize) -> Result<SeqFunc> {
    if !b.is_convergent() {
        return Err(Error::NotConvergent);
    }
    if let Some(p) = b.decisive_points(b).into_iter().find(|p| b.eval(p).is_negative()) {
        return Err(Error::NegativeInput { at: p.to_string() });
    }
    Ok(b.mul(&SeqFunc::indicator_upto(n, b.has_omega())))
}

/// Whether `χ_F` is α-compact for `F ⊆ ℕ`: exactly when `F` is finite.
pub fn alpha_compact_indicator(f: &YSet) -> Result<bool> {
    if f.contains_omega() {
        return Err(Error::ContainsOmega);
    }
    Ok(f.is_finite_in_n())
}

/// `(1 + eps)·χ_{0..=n}` on `Y`: nonnegative, convergent, and its members
/// join to `1 + eps` on `ℕ`.
pub fn alpha_cover_member(eps: &Scalar, n: usize) -> SeqFunc {
    SeqFunc::indicator_upto(n, true).scale(&(Scalar::one() + eps))
}

/// A point of an infinite `F` left uncovered by a finite subfamily of
/// [`alpha_cover_member`]s.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaDefeat {
    pub set: YSet,
    pub eps: Scalar,
    pub chosen: Vec<usize>,
    /// A member of `F` where the chosen join is 0 but `χ_F` is 1.
    pub index: usize,
}

pub fn alpha_compact_defeat(f: &YSet, eps: &Scalar, chosen: &[usize]) -> Result<AlphaDefeat> {
    if f.contains_omega() {
        return Err(Error::ContainsOmega);
    }
    if f.is_finite_in_n() {
        return Err(Error::PreconditionViolation("finite sets are α-compact".into()));
    }
    let from = chosen.iter().max().map_or(0, |&m| m + 1);
    let index = f.next_natural(from).expect("infinite set");
    Ok(AlphaDefeat { set: f.clone(), eps: eps.clone(), chosen: chosen.to_vec(), index })
}

/// For finite `F` and a nonnegative family whose join exceeds `χ_F + eps`,
/// finitely many members already dominate `χ_F`: one per point of `F`.
/// `Ok(None)` when `budget` members were searched without success.
pub fn alpha_compact_subcover(
    f: &YSet,
    family: &dyn FamilyStream,
    budget: usize,
) -> Result<Option<Vec<usize>>> {
    if f.contains_omega() {
        return Err(Error::ContainsOmega);
    }
    if !f.is_finite_in_n() {
        return Err(Error::PreconditionViolation("infinite sets have no finite subcover".into()));
    }
    let limit = family.len().map_or(budget, |n| n.min(budget));
    let points = f.naturals_below(f.indicator().prefix().len());
    let mut chosen = Vec::new();
    for k in points {
        let hit = (0..limit).find(|&j| *family.member(j).value_at(k) >= 1);
        match hit {
            Some(j) => {
                if !chosen.contains(&j) {
                    chosen.push(j);
                }
            }
            None if family.len().is_some_and(|n| n <= budget) => {
                return Err(Error::CoverViolation { at: k.to_string() });
            }
            None => return Ok(None),
        }
    }
    Ok(Some(chosen))
}

/// Finite subfamily of a cover of `Y` with join `>= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subcover {
    pub eps: Scalar,
    /// Index of the member positive on a neighborhood of `ω`.
    pub anchor: usize,
    /// Indices into the family, anchor first, then patches in index order.
    pub indices: Vec<usize>,
    /// `(k, j)`: member `j` patches index `k`.
    pub patches: Vec<(usize, usize)>,
}

/// Greedy finite subcover for a family of convergent functions on `Y` whose
/// pointwise sup is at least `eps`.
pub fn subcover_extract(eps: &Scalar, family: &[SeqFunc]) -> Result<Subcover> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("eps {eps} is not positive")));
    }
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for t in family {
        if !t.has_omega() {
            return Err(Error::OmegaMissing);
        }
        if !t.is_convergent() {
            return Err(Error::NotConvergent);
        }
    }
    // Past the longest prefix every member is at its ω-value.
    let horizon = family.iter().map(|t| t.prefix().len()).max().unwrap();
    let points = (0..=horizon).map(SeqPoint::Index).chain([SeqPoint::Omega]);
    for p in points {
        if !family.iter().any(|t| t.eval(&p) >= *eps) {
            return Err(Error::CoverViolation { at: p.to_string() });
        }
    }
    let half = eps / &Scalar::from_int(2);
    let anchor = family
        .iter()
        .position(|t| *t.omega().unwrap() > half)
        .expect("some member reaches eps at ω");
    let star = &family[anchor];
    let mut indices = vec![anchor];
    let mut patches = Vec::new();
    for k in 0..star.prefix().len() {
        if star.value_at(k).is_positive() {
            continue;
        }
        let j = family
            .iter()
            .position(|t| *t.value_at(k) >= half)
            .expect("some member reaches eps at k");
        patches.push((k, j));
        if !indices.contains(&j) {
            indices.push(j);
        }
    }
    Ok(Subcover { eps: eps.clone(), anchor, indices, patches })
}

/// `t_n = (eps + delta)·χ_{0..=n} − delta·χ_{n+1..}`, limit `−delta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoncompactFamily {
    pub eps: Scalar,
    pub delta: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoncompactDefeat {
    pub family: NoncompactFamily,
    pub chosen: Vec<usize>,
    pub index: usize,
    /// Value of the chosen join at `index`; `None` for the empty join.
    pub join_value: Option<Scalar>,
}

pub fn noncompact_family(eps: &Scalar, delta: &Scalar) -> Result<NoncompactFamily> {
    if !eps.is_positive() || !delta.is_positive() {
        return Err(Error::InvalidArgument("eps and delta must be positive".into()));
    }
    Ok(NoncompactFamily { eps: eps.clone(), delta: delta.clone() })
}

impl NoncompactFamily {
    pub fn member_at(&self, n: usize) -> SeqFunc {
        let top = &self.eps + &self.delta;
        SeqFunc::new(vec![top; n + 1], vec![-&self.delta], Some(-&self.delta)).unwrap()
    }

    /// Index past every chosen truncation, where the finite join is `−delta`.
    pub fn defeat(&self, chosen: &[usize]) -> NoncompactDefeat {
        let index = chosen.iter().max().map_or(0, |&m| m + 1);
        let join_value = chosen
            .iter()
            .map(|&n| self.member_at(n).value_at(index).clone())
            .max();
        NoncompactDefeat { family: self.clone(), chosen: chosen.to_vec(), index, join_value }
    }
}

impl FamilyStream for NoncompactFamily {
    fn len(&self) -> Option<usize> {
        None
    }

    fn member(&self, j: usize) -> SeqFunc {
        self.member_at(j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySide {
    /// Members lie above the target and meet down to it.
    Meet,
    /// Members lie below the target and join up to it.
    Join,
}

/// The doubly indexed family `c_{nm}` whose meet (or join) is `target`:
/// `c_{nm}` is `target(n) ± 1/m` at `n` and `±‖target‖` elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountableFamily {
    pub target: SeqFunc,
    pub side: FamilySide,
    pub norm: Scalar,
}

pub fn countable_meet_family(f: &SeqFunc) -> CountableFamily {
    CountableFamily { target: f.on_naturals(), side: FamilySide::Meet, norm: f.norm() }
}

pub fn countable_join_family(g: &SeqFunc) -> CountableFamily {
    CountableFamily { target: g.on_naturals(), side: FamilySide::Join, norm: g.norm() }
}

impl CountableFamily {
    fn sign(&self) -> Scalar {
        match self.side {
            FamilySide::Meet => Scalar::one(),
            FamilySide::Join => -Scalar::one(),
        }
    }

    /// `c_{nm}` for `n >= 0`, `m >= 1`, eventually constant.
    pub fn member(&self, n: usize, m: usize) -> SeqFunc {
        assert!(m >= 1, "m starts at 1");
        let s = self.sign();
        let peak = self.target.value_at(n) + &(&s * &Scalar::ratio(1, m as i64));
        let rest = &s * &self.norm;
        let mut prefix = vec![rest.clone(); n];
        prefix.push(peak);
        SeqFunc::on_n(prefix, vec![rest])
    }

    /// Meet (or join) of `c_{km}` over `m <= m_max`, evaluated at `k`:
    /// `target(k) ± 1/m_max`.
    pub fn truncated_at(&self, k: usize, m_max: usize) -> Scalar {
        let vals = (1..=m_max).map(|m| self.member(k, m).value_at(k).clone());
        self.fold(vals)
    }

    /// Meet (or join) of all `c_{nm}` with `n <= n_max`, `m <= m_max`, at `k`.
    pub fn family_at(&self, k: usize, n_max: usize, m_max: usize) -> Scalar {
        let vals = (0..=n_max)
            .flat_map(|n| (1..=m_max).map(move |m| (n, m)))
            .map(|(n, m)| self.member(n, m).value_at(k).clone());
        self.fold(vals)
    }

    fn fold(&self, vals: impl Iterator<Item = Scalar>) -> Scalar {
        match self.side {
            FamilySide::Meet => vals.min().expect("nonempty"),
            FamilySide::Join => vals.max().expect("nonempty"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LindelofPick {
    pub index: usize,
    pub member: usize,
    pub value: Scalar,
}

/// Countable selection: one member above `eps/2` per evaluated index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LindelofSelection {
    pub eps: Scalar,
    pub picks: Vec<LindelofPick>,
    /// Indices where `budget` members were searched without success.
    pub unknown: Vec<usize>,
    pub budget: usize,
}

/// For indices `0..k_max`, finds a member above `eps/2`, searching at most
/// `budget` members. A finite family that is exhausted without one violates
/// the cover hypothesis at that index.
pub fn lindelof_extract(
    eps: &Scalar,
    family: &dyn FamilyStream,
    k_max: usize,
    budget: usize,
) -> Result<LindelofSelection> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("eps {eps} is not positive")));
    }
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let half = eps / &Scalar::from_int(2);
    let limit = family.len().map_or(budget, |n| n.min(budget));
    let mut picks = Vec::new();
    let mut unknown = Vec::new();
    for k in 0..k_max {
        let hit = (0..limit)
            .map(|j| (j, family.member(j).value_at(k).clone()))
            .find(|(_, v)| *v > half);
        match hit {
            Some((member, value)) => picks.push(LindelofPick { index: k, member, value }),
            None if family.len().is_some_and(|n| n <= budget) => {
                return Err(Error::CoverViolation { at: k.to_string() });
            }
            None => unknown.push(k),
        }
    }
    Ok(LindelofSelection { eps: eps.clone(), picks, unknown, budget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn minorant_examples() {
        let one = SeqFunc::constant_on_y(int(1));
        assert_eq!(local_compact_minorants(&one, 3).unwrap(), SeqFunc::indicator_upto(3, true));
        let zero = SeqFunc::constant_on_y(int(0));
        assert_eq!(local_compact_minorants(&zero, 7).unwrap(), zero);
        let b = SeqFunc::indicator_finite(&[0, 2], true);
        assert_eq!(local_compact_minorants(&b, 1).unwrap(), SeqFunc::indicator_finite(&[0], true));
        let neg = SeqFunc::from_ints(&[0, -1], &[0], Some(0));
        assert_eq!(
            local_compact_minorants(&neg, 2),
            Err(Error::NegativeInput { at: "1".into() })
        );
    }

    #[test]
    fn alpha_compact_examples() {
        assert_eq!(alpha_compact_indicator(&YSet::finite(&(0..10).collect::<Vec<_>>())), Ok(true));
        let evens = YSet::periodic(&[], &[true, false], false).unwrap();
        assert_eq!(alpha_compact_indicator(&evens), Ok(false));
        assert_eq!(alpha_compact_indicator(&YSet::empty()), Ok(true));
        assert_eq!(alpha_compact_indicator(&YSet::omega_only()), Err(Error::ContainsOmega));

        let d = alpha_compact_defeat(&evens, &q(1, 2), &[0, 3]).unwrap();
        assert_eq!(d.index, 4);
        let finite = YSet::finite(&[1, 5]);
        let fam = FiniteFamily((0..8).map(|n| alpha_cover_member(&q(1, 2), n)).collect());
        assert_eq!(alpha_compact_subcover(&finite, &fam, 8), Ok(Some(vec![1, 5])));
    }

    #[test]
    fn subcover_examples() {
        let eps = q(1, 2);
        let c = SeqFunc::constant_on_y(eps.clone());
        let s = subcover_extract(&eps, &[c]).unwrap();
        assert_eq!(s.indices, vec![0]);

        let t1 = SeqFunc::new(vec![int(-1)], vec![eps.clone()], Some(eps.clone())).unwrap();
        let t2 = SeqFunc::indicator_finite(&[0], true).scale(&eps);
        let s = subcover_extract(&eps, &[t1, t2]).unwrap();
        assert_eq!(s.indices, vec![0, 1]);
        assert_eq!(s.patches, vec![(0, 1)]);

        let low = SeqFunc::constant_on_y(q(1, 4));
        assert_eq!(
            subcover_extract(&eps, &[low]),
            Err(Error::CoverViolation { at: "0".into() })
        );
    }

    #[test]
    fn noncompact_examples() {
        let fam = noncompact_family(&q(1, 2), &q(1, 4)).unwrap();
        let d = fam.defeat(&[0, 3]);
        assert_eq!((d.index, d.join_value), (4, Some(q(-1, 4))));
        for k in 0..10 {
            let sup = (k..k + 5).map(|n| fam.member_at(n).value_at(k).clone()).max().unwrap();
            assert_eq!(sup, q(3, 4));
        }
        let d = fam.defeat(&[]);
        assert_eq!((d.index, d.join_value), (0, None));
    }

    #[test]
    fn countable_meet_examples() {
        let e = SeqFunc::evens(None);
        let fam = countable_meet_family(&e);
        let c01 = fam.member(0, 1);
        assert_eq!(c01.value_at(0), &int(2));
        assert_eq!(c01.value_at(5), &int(1));
        assert!(e.le(&c01));
        assert_eq!(fam.truncated_at(4, 8), q(9, 8));
        assert_eq!(fam.family_at(4, 6, 8), int(1));
        assert_eq!(fam.family_at(3, 6, 8), q(1, 8));

        let c = SeqFunc::constant(q(2, 3));
        let fam = countable_meet_family(&c);
        assert_eq!(fam.member(2, 5).value_at(2), &(q(2, 3) + q(1, 5)));
        assert!(c.le(&fam.member(2, 5)));

        let jf = countable_join_family(&e);
        assert!(jf.member(1, 2).le(&e));
        assert_eq!(jf.truncated_at(2, 4), q(3, 4));
    }

    #[test]
    fn lindelof_examples() {
        let eps = q(1, 2);
        let c = FiniteFamily(vec![SeqFunc::constant_on_y(eps.clone())]);
        let s = lindelof_extract(&eps, &c, 5, 10).unwrap();
        assert!(s.picks.iter().all(|p| p.member == 0));

        let fam = noncompact_family(&eps, &q(1, 4)).unwrap();
        let s = lindelof_extract(&eps, &fam, 6, 100).unwrap();
        assert!(s.picks.iter().all(|p| p.member == p.index));
        assert!(s.unknown.is_empty());

        let low = FiniteFamily(vec![SeqFunc::from_ints(&[1, 0], &[1], Some(1))]);
        assert_eq!(
            lindelof_extract(&int(1), &low, 3, 10),
            Err(Error::CoverViolation { at: "1".into() })
        );
    }
}
