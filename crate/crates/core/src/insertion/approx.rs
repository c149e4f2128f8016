use crate::error::{Error, Result};
use crate::lattice::AlgElement;
use crate::scalar::Scalar;

/// Increasing approximation of a target known only through approximants.
///
/// Given `c_n` with `‖t - c_n‖ <= r_n`, returns `a_n = (c_1 - r_1) ∨ … ∨
/// (c_n - r_n)`. Each `c_i - r_i` lies below `t`, so the `a_n` increase,
/// stay below `t`, and satisfy `‖t - a_n‖ <= 2·min_{i<=n} r_i`.
///
/// `t` only checks the bounds; the output never reads it otherwise.
pub fn increasing_approx<E: AlgElement>(c_seq: &[E], r_seq: &[Scalar], t: &E) -> Result<Vec<E>> {
    if c_seq.len() != r_seq.len() {
        return Err(Error::InvalidArgument(format!(
            "{} approximants but {} bounds",
            c_seq.len(),
            r_seq.len()
        )));
    }
    let mut out: Vec<E> = Vec::with_capacity(c_seq.len());
    for (i, (c, r)) in c_seq.iter().zip(r_seq).enumerate() {
        let n = i + 1;
        if !c.compatible(t) {
            return Err(Error::CarrierMismatch(format!("approximant {n} lives on another carrier")));
        }
        if r.is_negative() || t.sub(c).norm() > *r {
            return Err(Error::BoundViolation { n });
        }
        let b = c.add_scalar(&-r);
        let a = match out.last() {
            Some(prev) => prev.join(&b),
            None => b,
        };
        out.push(a);
    }
    Ok(out)
}

/// `2·min_{i<=n} r_i` for each `n`.
pub fn approx_rates(r_seq: &[Scalar]) -> Vec<Scalar> {
    let mut best: Option<Scalar> = None;
    r_seq
        .iter()
        .map(|r| {
            let m = match &best {
                Some(b) => b.min(r),
                None => r.clone(),
            };
            best = Some(m.clone());
            Scalar::from_int(2) * &m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::scalar::q;
    use crate::seq_model::SeqFunc;

    #[test]
    fn exact_approximants() {
        let t = SeqFunc::from_ints(&[1, 3], &[2, 0], None);
        let out = increasing_approx(&[t.clone(), t.clone()], &[Scalar::zero(), Scalar::zero()], &t);
        assert_eq!(out.unwrap(), vec![t.clone(), t]);
    }

    #[test]
    fn alternating_approximants() {
        let one = SeqFunc::constant(Scalar::one());
        let n = 6;
        let rs: Vec<Scalar> = (1..=n).map(Scalar::pow2_inv).collect();
        let cs: Vec<SeqFunc> = rs
            .iter()
            .enumerate()
            .map(|(i, r)| one.add_scalar(&if i % 2 == 0 { -r } else { r.clone() }))
            .collect();
        let out = increasing_approx(&cs, &rs, &one).unwrap();
        // b_n = 1 - 2^(1-n) for odd n and 1 for even n.
        let levels: Vec<Scalar> = out.iter().map(|a| a.value_at(0).clone()).collect();
        assert_eq!(levels, vec![q(0, 1), q(1, 1), q(1, 1), q(1, 1), q(1, 1), q(1, 1)]);
        for (a, rate) in out.iter().zip(approx_rates(&rs)) {
            assert!(a.le(&one) && one.sub(a).norm() <= rate);
        }

        // Undershooting approximants: a_n = 1 - 2^(1-n).
        let cs: Vec<SeqFunc> = rs.iter().map(|r| one.add_scalar(&-r)).collect();
        let out = increasing_approx(&cs, &rs, &one).unwrap();
        for (i, a) in out.iter().enumerate() {
            assert_eq!(a, &one.add_scalar(&-Scalar::pow2_inv(i as u32)));
        }
    }

    #[test]
    fn bad_bound_named() {
        let one = SeqFunc::constant(Scalar::one());
        let cs = vec![one.add_scalar(&q(1, 2)), one.add_scalar(&q(1, 4))];
        let rs = vec![q(1, 2), q(1, 8)];
        assert_eq!(increasing_approx(&cs, &rs, &one), Err(Error::BoundViolation { n: 2 }));
    }

    proptest! {
        #[test]
        fn monotone_bounded_with_rate(
            t in prop::collection::vec(-8i64..8, 1..4),
            noise in prop::collection::vec((prop::collection::vec(-4i64..5, 3), 1i64..5), 1..6),
        ) {
            let t = SeqFunc::from_ints(&[], &t, None);
            let mut cs = Vec::new();
            let mut rs = Vec::new();
            for (d, r) in &noise {
                let c = t.add(&SeqFunc::from_ints(&[], d, None).scale(&q(1, 4 * r)));
                rs.push(c.sub(&t).norm());
                cs.push(c);
            }
            let out = increasing_approx(&cs, &rs, &t).unwrap();
            for (i, (a, rate)) in out.iter().zip(approx_rates(&rs)).enumerate() {
                prop_assert!(a.le(&t));
                prop_assert!(t.sub(a).norm() <= rate);
                if i > 0 {
                    prop_assert!(out[i - 1].le(a));
                }
            }
        }
    }
}
