//! Order and algebra laws checked on both concrete carriers.

use std::sync::Arc;

use insertion_core::finite_space::{FiniteFunc, FiniteSpace};
use insertion_core::lattice::{join_all, meet_all};
use insertion_core::seq_model::SeqFunc;
use insertion_core::{AlgElement, Scalar};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-8i64..=8, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn seq(omega: bool) -> impl Strategy<Value = SeqFunc> {
    (
        prop::collection::vec(scalar(), 0..4),
        prop::collection::vec(scalar(), 1..4),
        scalar(),
    )
        .prop_map(move |(p, c, w)| SeqFunc::new(p, c, omega.then_some(w)).unwrap())
}

fn space() -> Arc<FiniteSpace> {
    // 0 and 1 specialize to 2; 3 is isolated.
    Arc::new(FiniteSpace::from_relation(4, &[(0, 2), (1, 2)]).unwrap())
}

fn finite() -> impl Strategy<Value = FiniteFunc> {
    prop::collection::vec(scalar(), 4).prop_map(|v| FiniteFunc::new(space(), v).unwrap())
}

fn family<E: std::fmt::Debug>(elem: impl Strategy<Value = E>) -> impl Strategy<Value = Vec<E>> {
    prop::collection::vec(elem, 1..4)
}

fn meet_sum_law<E: AlgElement>(s: &[E], t: &[E]) {
    let pairs: Vec<E> = s.iter().flat_map(|x| t.iter().map(move |y| x.add(y))).collect();
    assert_eq!(meet_all(s).unwrap().add(&meet_all(t).unwrap()), meet_all(&pairs).unwrap());
    assert_eq!(join_all(s).unwrap().add(&join_all(t).unwrap()), join_all(&pairs).unwrap());
}

fn negation_law<E: AlgElement>(s: &[E]) {
    let negs: Vec<E> = s.iter().map(E::neg).collect();
    assert_eq!(meet_all(s).unwrap().neg(), join_all(&negs).unwrap());
    assert_eq!(join_all(s).unwrap().neg(), meet_all(&negs).unwrap());
}

fn distributive_law<E: AlgElement>(a: &E, t: &[E]) {
    let meets: Vec<E> = t.iter().map(|x| a.meet(x)).collect();
    let joins: Vec<E> = t.iter().map(|x| a.join(x)).collect();
    assert_eq!(a.meet(&join_all(t).unwrap()), join_all(&meets).unwrap());
    assert_eq!(a.join(&meet_all(t).unwrap()), meet_all(&joins).unwrap());
}

fn unit_gap_law<E: AlgElement>(a: &E, b: &E) {
    let one = Scalar::one();
    if a.le(&b.join(&a.sub(&a.constant_like(&one)))) {
        assert!(a.le(b));
    }
    // With b = a the premise always holds.
    assert!(a.le(&a.join(&a.sub(&a.one_like()))));
}

fn abs_sum_law<E: AlgElement>(a: &E, b: &E) {
    let bound = a.abs().join(&b.abs()).scale(&Scalar::from_int(2));
    assert!(a.add(b).abs().le(&bound));
}

fn norm_laws<E: AlgElement>(a: &E, b: &E, r: &Scalar) {
    let n = a.norm();
    assert!(!n.is_negative());
    assert_eq!(n.is_zero(), *a == a.zero_like());
    assert_eq!(a.scale(r).norm(), &r.abs() * &n);
    assert!(a.add(b).norm() <= &n + &b.norm());
    assert!(a.mul(b).norm() <= &n * &b.norm());
    assert!(a.abs().le(&a.constant_like(&n)));
}

fn idempotent_law<E: AlgElement>(e: &E, points: &[E::Point]) {
    let zero_one = points.iter().all(|p| {
        let v = e.eval(p);
        v.is_zero() || v.is_one()
    });
    assert_eq!(e.is_idempotent(), zero_one);
}

fn seq_points(e: &SeqFunc) -> Vec<<SeqFunc as AlgElement>::Point> {
    e.decisive_points(e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn meets_and_joins_add_termwise_on_sequences(
        (s, t) in any::<bool>().prop_flat_map(|w| (family(seq(w)), family(seq(w))))
    ) {
        meet_sum_law(&s, &t);
        negation_law(&s);
        distributive_law(&s[0], &t);
    }

    #[test]
    fn meets_and_joins_add_termwise_on_finite_spaces(s in family(finite()), t in family(finite())) {
        meet_sum_law(&s, &t);
        negation_law(&s);
        distributive_law(&s[0], &t);
    }

    #[test]
    fn unit_gap_and_abs_on_sequences(a in seq(false), b in seq(false), aw in seq(true), bw in seq(true)) {
        unit_gap_law(&a, &b);
        unit_gap_law(&aw, &bw);
        abs_sum_law(&a, &b);
        abs_sum_law(&aw, &bw);
    }

    #[test]
    fn unit_gap_and_abs_on_finite_spaces(a in finite(), b in finite()) {
        unit_gap_law(&a, &b);
        abs_sum_law(&a, &b);
    }

    #[test]
    fn norm_laws_on_both_carriers(a in seq(true), b in seq(true), x in finite(), y in finite(), r in scalar()) {
        norm_laws(&a, &b, &r);
        norm_laws(&x, &y, &r);
    }

    #[test]
    fn idempotents_take_values_zero_and_one(
        vals in prop::collection::vec(prop::sample::select(vec![0i64, 1, 1, 0, 2, -1]), 4),
        cyc in prop::collection::vec(prop::sample::select(vec![0i64, 1, 1, 0, -1]), 1..3),
        w in prop::sample::select(vec![0i64, 1, 3]),
    ) {
        let f = FiniteFunc::from_ints(space(), &vals).unwrap();
        let points: Vec<usize> = (0..4).collect();
        idempotent_law(&f, &points);
        let s = SeqFunc::from_ints(&vals, &cyc, Some(w));
        idempotent_law(&s, &seq_points(&s));
    }
}

#[test]
fn unit_gap_premise_fails_only_when_order_fails() {
    // a = 2, b = 0: b ∨ (a − 1) = 1 < 2.
    let a = SeqFunc::constant(Scalar::from_int(2));
    let b = SeqFunc::constant(Scalar::zero());
    assert!(!a.le(&b.join(&a.sub(&a.one_like()))));
    assert!(!a.le(&b));
}
