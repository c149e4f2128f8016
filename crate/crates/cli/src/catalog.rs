//! Canned examples with golden verdicts, reproduced by id.

use std::sync::Arc;

use insertion_core::certificate::Certificate;
use insertion_core::conditions::{check_condition, AnyElement, Condition, ExtensionModel, Instance, SeqXEndModel, Verdict};
use insertion_core::finite_space::{FiniteFunc, FiniteSpace};
use insertion_core::insertion::{dieudonne_iterate, tong_merge, MidpointOracle};
use insertion_core::lattice::{join_all, meet_all};
use insertion_core::replay::verify;
use insertion_core::seq_model::{
    ideal_membership, ideal_zero_set, insert_convergent, insert_on_y, kt_threshold_separation_on_y,
    local_compact_minorants, maximality_witness, noncompact_family, seq_ideal_membership, ConvergentInsertion,
    GeoTail, SeqFunc, YSet,
};
use insertion_core::{q, AlgElement, Scalar};

use crate::error::CliError;
use crate::report::Entry;

pub const CATALOG: [&str; 9] = [
    "tong-merge",
    "chi-evens-no-insertion",
    "noncompact-C-failure",
    "I-alpha-finite-support",
    "radical-gap",
    "local-compact-witness",
    "one-point-minimality-criteria",
    "KT-thresholds",
    "dieudonne-rate",
];

/// Golden checks of one example: failed expectations and the evidence.
#[derive(Default)]
struct Golden {
    failed: Vec<String>,
    notes: Vec<String>,
    certificates: Vec<Certificate>,
}

impl Golden {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failed.push(what);
        }
    }

    fn verdict(&mut self, model: &dyn ExtensionModel, cond: Condition, inst: &Instance, want: Verdict, depth: usize) -> Result<(), CliError> {
        let r = check_condition(model, cond, inst, depth)?;
        self.expect(r.verdict == want, format!("{cond} on {} is {:?}", model.name(), want));
        self.certificates.extend(r.certificate);
        Ok(())
    }
}

fn seq(prefix: &[Scalar], cycle: &[Scalar], omega: Option<Scalar>) -> SeqFunc {
    SeqFunc::new(prefix.to_vec(), cycle.to_vec(), omega).expect("nonempty cycle")
}

fn tong(g: &mut Golden) -> Result<(), CliError> {
    // 0 and 1 specialize to 2.
    let space = Arc::new(FiniteSpace::from_relation(3, &[(0, 2), (1, 2)])?);
    let f = |v: &[i64]| FiniteFunc::from_ints(space.clone(), v);
    let a = vec![f(&[3, 1, 2])?, f(&[1, 2, 2])?, f(&[2, 2, 1])?];
    let b = vec![f(&[2, 2, 3])?, f(&[3, 3, 2])?];
    let lower = meet_all(&a)?;
    let upper = join_all(&b)?;
    let t = tong_merge(&a, &b)?;
    g.expect(t.u_seq.last() == t.v_seq.last(), "merged meet and join sides agree");
    g.expect(lower.le(&t.result) && t.result.le(&upper), "merge lies between ⋀a and ⋁b");
    g.expect(t.all_checks_pass(), "every recorded inequality holds");
    g.certificates.push(Certificate::Merge { lower: lower.into(), upper: upper.into(), trace: t.map(AnyElement::Finite) });
    Ok(())
}

fn chi_evens(g: &mut Golden, depth: usize) -> Result<(), CliError> {
    let evens = SeqFunc::evens(None);
    let inst = Instance::pair(evens.clone(), evens.clone());
    g.verdict(&SeqXEndModel, Condition::N, &inst, Verdict::Fails, depth)?;
    g.verdict(&SeqXEndModel, Condition::T, &inst, Verdict::Holds, depth)?;
    match insert_convergent(&evens, &evens)? {
        ConvergentInsertion::Infeasible(c) => {
            g.expect(c.limsup == Scalar::one() && c.liminf.is_zero(), "limsup 1 exceeds liminf 0")
        }
        ConvergentInsertion::Witness { .. } => g.expect(false, "no convergent insertion exists"),
    }
    Ok(())
}

fn noncompact(g: &mut Golden, depth: usize) -> Result<(), CliError> {
    let eps = q(1, 2);
    let fam = noncompact_family(&eps, &Scalar::one())?;
    let mut all_defeated = true;
    let mut defeats = Vec::new();
    for mask in 0u32..1 << 6 {
        let chosen: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
        let d = fam.defeat(&chosen);
        all_defeated &= d.join_value.as_ref().map_or(true, |v| *v < eps);
        defeats.push(d);
    }
    g.expect(all_defeated, "every subfamily of the first six members misses eps somewhere");
    g.certificates.push(Certificate::NoncompactDefeats { family: fam, defeats });
    g.expect(SeqXEndModel.unit_alpha_compact() == Some(false), "1 is not α-compact");
    let cover = Instance::cover(eps, vec![SeqFunc::constant(Scalar::one()).into()]);
    g.verdict(&SeqXEndModel, Condition::C, &cover, Verdict::Fails, depth)
}

fn finite_support(g: &mut Golden) -> Result<(), CliError> {
    let bump = SeqFunc::indicator_upto(3, true).scale(&q(5, 2));
    let m = seq_ideal_membership(&bump)?;
    g.expect(m.in_i_alpha && m.coz_closure == YSet::finite(&[0, 1, 2, 3]), "finitely supported bump lies in I_α");
    g.certificates.push(Certificate::IdealMembership { f: bump, membership: m });
    let tail = seq(&[Scalar::zero()], &[q(1, 3)], Some(q(1, 3)));
    let m = seq_ideal_membership(&tail)?;
    g.expect(!m.in_i_alpha && !m.in_j_radical, "nonzero limit keeps a function out of I_α");
    g.certificates.push(Certificate::IdealMembership { f: tail, membership: m });
    Ok(())
}

fn radical_gap(g: &mut Golden) -> Result<(), CliError> {
    let tail = GeoTail::new(vec![], Scalar::one(), q(1, 2))?;
    let m = ideal_membership(&tail);
    g.expect(m.in_j_radical, "2^-k vanishes at ω, so it lies in the radical");
    g.expect(!m.in_i_alpha, "2^-k has infinite support, so it lies outside I_α");
    g.certificates.push(Certificate::TailMembership { f: tail, membership: m });
    Ok(())
}

fn local_compact(g: &mut Golden) -> Result<(), CliError> {
    let b = seq(&[q(3, 2), Scalar::zero()], &[q(1, 2)], Some(q(1, 2)));
    for n in 0..6 {
        let a = local_compact_minorants(&b, n)?;
        let agrees = (0..=n).all(|k| a.value_at(k) == b.value_at(k));
        g.expect(
            seq_ideal_membership(&a)?.in_i_alpha && a.le(&b) && agrees,
            format!("minorant {n} is finitely supported, below b and equal to b up to {n}"),
        );
        g.certificates.push(Certificate::Minorant { b: b.clone(), n, a });
    }
    Ok(())
}

fn minimality(g: &mut Golden) -> Result<(), CliError> {
    let z = ideal_zero_set(8);
    g.expect(z.zero_set == YSet::omega_only(), "common zero set of I_α is {ω}");
    g.certificates.push(Certificate::ZeroSet(z));
    let f = seq(&[q(3, 1), Scalar::zero()], &[Scalar::from_int(2)], None);
    let w = maximality_witness(&f)?;
    g.expect(w.f.scale(&w.r).add(&w.m) == w.f.one_like() && w.m.omega().is_some_and(Scalar::is_zero), "r·f + m = 1 with m(ω) = 0");
    g.certificates.push(Certificate::Maximality(w));
    Ok(())
}

fn thresholds(g: &mut Golden) -> Result<(), CliError> {
    let a = YSet::finite(&[0, 2]);
    let b = YSet::cofinite_with_omega(&[0, 1, 2, 3]);
    let lower = a.indicator().clone();
    let upper = b.complement().indicator().clone();
    let c = insert_on_y(&lower, &upper)?;
    let sep = kt_threshold_separation_on_y(&c)?;
    g.expect(a.is_subset(&sep.u) && b.is_subset(&sep.v), "threshold sets contain the closed sets");
    g.expect(sep.u.is_disjoint(&sep.v) && sep.u.is_open() && sep.v.is_open(), "threshold sets are disjoint and open");
    g.certificates.push(Certificate::ThresholdRoundTrip { lower, upper, witness: c, u: sep.u, v: sep.v });
    Ok(())
}

fn dieudonne(g: &mut Golden) -> Result<(), CliError> {
    let f = seq(&[Scalar::one()], &[Scalar::zero(), q(1, 2)], None);
    let upper = seq(&[Scalar::from_int(2)], &[q(3, 4), Scalar::one()], None);
    let t = dieudonne_iterate(&MidpointOracle, &f, &upper, 20)?;
    g.expect(t.a_seq.len() == 20, "twenty iterates");
    g.expect(t.all_checks_pass(), "f - 2^-n <= a_n <= g and |a_(n+1) - a_n| <= 2^-n at every step");
    g.expect(t.a_seq[19].sub(&t.a_seq[9]).norm() <= Scalar::pow2_inv(9), "‖a_20 - a_10‖ <= 2^-9");
    g.certificates.push(Certificate::Iteration { trace: t.map(AnyElement::Seq) });
    Ok(())
}

/// Runs example `id` and checks its golden verdicts and certificates.
pub fn reproduce(id: &str, depth: usize) -> Result<Entry, CliError> {
    let mut g = Golden::default();
    match id {
        "tong-merge" => tong(&mut g)?,
        "chi-evens-no-insertion" => chi_evens(&mut g, depth)?,
        "noncompact-C-failure" => noncompact(&mut g, depth)?,
        "I-alpha-finite-support" => finite_support(&mut g)?,
        "radical-gap" => radical_gap(&mut g)?,
        "local-compact-witness" => local_compact(&mut g)?,
        "one-point-minimality-criteria" => minimality(&mut g)?,
        "KT-thresholds" => thresholds(&mut g)?,
        "dieudonne-rate" => dieudonne(&mut g)?,
        _ => {
            return Err(CliError::UnknownExampleId {
                id: id.to_string(),
                catalog: CATALOG.iter().map(|s| s.to_string()).collect(),
            })
        }
    }
    for c in &g.certificates {
        if let Err(e) = verify(c) {
            g.failed.push(format!("{} certificate does not replay: {e}", c.kind()));
        }
    }
    let matches = g.failed.is_empty();
    let mut notes = g.failed;
    if matches {
        notes = g.notes;
    }
    Ok(Entry {
        id: id.to_string(),
        task: "reproduce".into(),
        model: None,
        expected: Some("golden".into()),
        observed: if matches { "golden".into() } else { "deviates".into() },
        matches,
        notes,
        report: None,
        matrix: None,
        certificates: g.certificates,
    })
}
