mod common;

use common::{arb_poly, arb_rat};
use proptest::prelude::*;
use surfsym::arith::gcd::gcd;
use surfsym::arith::roots::{cauchy_bound, isolate_upoly, Sturm};
use surfsym::arith::{resultant, vars, MPoly, Rat, UPoly};

fn uv() -> surfsym::arith::Vars {
    vars(&["u", "v"])
}

fn distinct_rats(max: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::btree_set((-40i64..=40, 1i64..=9), 1..=max).prop_map(|s| {
        let mut r: Vec<Rat> = s.into_iter().map(|(n, d)| Rat::new(n.into(), d.into())).collect();
        r.sort();
        r.dedup();
        r
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in arb_poly(uv(), 3, 5), q in arb_poly(uv(), 3, 5), r in arb_poly(uv(), 3, 5)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(
        p in arb_poly(uv(), 2, 4),
        q in arb_poly(uv(), 2, 4),
        f in arb_poly(uv(), 1, 3),
        shared in any::<bool>(),
    ) {
        let (p, q) = if shared { (&p * &f, &q * &f) } else { (p, q) };
        prop_assume!(p.degree_in_var("v") > 0 && q.degree_in_var("v") > 0);
        let r = resultant(&p, &q, "v").unwrap();
        let g = gcd(&p, &q);
        prop_assert_eq!(r.is_zero(), g.degree_in_var("v") > 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn planted_roots_are_isolated_exactly(roots in distinct_rats(12), scale in arb_rat(7)) {
        prop_assume!(scale != Rat::from_integer(0.into()));
        let p = roots
            .iter()
            .fold(UPoly::constant(scale), |acc, r| &acc * &UPoly::linear_root(r));
        let found = isolate_upoly(&p).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (f, r) in found.iter().zip(&roots) {
            prop_assert_eq!(f.exact.as_ref(), Some(r));
        }
    }

    #[test]
    fn sturm_count_matches_isolation(roots in distinct_rats(6), extra in arb_poly(uv(), 4, 4)) {
        // Mix planted rational roots with a random factor that may add irrational ones.
        let planted = roots
            .iter()
            .fold(UPoly::one(), |acc, r| &acc * &UPoly::linear_root(r));
        let h = match extra.eval_var(1, &Rat::from_integer(1.into())).to_upoly(0) {
            Ok(h) if !h.is_zero() => h,
            _ => UPoly::one(),
        };
        let p = (&planted * &h).squarefree_part();
        prop_assume!(!p.is_constant());
        let ints = p.to_primitive_ints();
        let b = cauchy_bound(&ints);
        let sturm = Sturm::new(&ints);
        let found = isolate_upoly(&p).unwrap();
        prop_assert_eq!(sturm.count(&-b.clone(), &b), found.len());
        for f in &found {
            if f.exact.is_none() {
                prop_assert_eq!(sturm.count(&f.lo, &f.hi), 1);
            }
        }
    }
}

#[test]
fn substitution_agrees_with_evaluation() {
    let v = uv();
    let p = MPoly::parse("u^3 - 2*u*v + v^2 - 7", &v).unwrap();
    let at = p.eval_var(0, &Rat::new(3.into(), 2.into()));
    let direct = p.eval(&[Rat::new(3.into(), 2.into()), Rat::from_integer(5.into())]);
    assert_eq!(at.eval(&[Rat::from_integer(0.into()), Rat::from_integer(5.into())]), direct);
}
