#![allow(dead_code)]

use proptest::prelude::*;
use surfsym::arith::rat::{int, rat};
use surfsym::arith::{Exponents, MPoly, Rat, Vars};

pub fn poly(vars: &Vars, terms: &[(u32, u32, i64)]) -> MPoly {
    MPoly::from_terms(
        vars,
        terms
            .iter()
            .map(|&(i, j, c)| (Exponents::from_vec(vec![i, j]), int(c)))
            .collect(),
    )
}

/// Bivariate polynomials with small integer coefficients.
pub fn arb_poly(vars: Vars, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -6i64..=6), 0..=max_terms)
        .prop_map(move |t| poly(&vars, &t))
}

pub fn arb_rat(height: i64) -> impl Strategy<Value = Rat> {
    (-height..=height, 1..=height).prop_map(|(n, d)| rat(n, d))
}
