mod common;

use proptest::prelude::*;
use surfsym::arith::rat::int;
use surfsym::arith::{MPoly, Rat};
use surfsym::candidates::uv;
use surfsym::solver::{solve_equations, SolutionSet};

/// `a u + b v + c` as integer triples.
type Line = (i64, i64, i64);

fn arb_line() -> impl Strategy<Value = Line> {
    (-6i64..=6, -6i64..=6, -12i64..=12).prop_filter("not constant", |l| l.0 != 0 || l.1 != 0)
}

fn line_poly(l: &Line) -> MPoly {
    let u = MPoly::var("u", uv()).unwrap();
    let v = MPoly::var("v", uv()).unwrap();
    &(&u.scale(&int(l.0)) + &v.scale(&int(l.1))) + &MPoly::constant(int(l.2), uv())
}

fn product(ls: &[Line]) -> MPoly {
    ls.iter().fold(MPoly::one(uv()), |acc, l| &acc * &line_poly(l))
}

fn parallel(l: &Line, m: &Line) -> bool {
    l.0 * m.1 == l.1 * m.0
}

fn same_line(l: &Line, m: &Line) -> bool {
    parallel(l, m) && l.0 * m.2 == l.2 * m.0 && l.1 * m.2 == l.2 * m.1
}

fn meet(l: &Line, m: &Line) -> (Rat, Rat) {
    let det = int(l.0 * m.1 - l.1 * m.0);
    let u = int(l.1 * m.2 - l.2 * m.1) / &det;
    let v = int(l.2 * m.0 - l.0 * m.2) / &det;
    (u, v)
}

/// Two products of lines with `k1 * k2 <= 8` and no shared component.
fn arb_planted() -> impl Strategy<Value = (Vec<Line>, Vec<Line>)> {
    (1usize..=4, 1usize..=4)
        .prop_filter("at most 8 intersections", |(a, b)| a * b <= 8)
        .prop_flat_map(|(a, b)| (prop::collection::vec(arb_line(), a), prop::collection::vec(arb_line(), b)))
        .prop_filter("no common line", |(f, g)| {
            f.iter().all(|l| g.iter().all(|m| !same_line(l, m)))
        })
}

fn oracle(f: &[Line], g: &[Line]) -> Vec<(Rat, Rat)> {
    let mut pts: Vec<(Rat, Rat)> = f
        .iter()
        .flat_map(|l| g.iter().filter(|m| !parallel(l, m)).map(move |m| meet(l, m)))
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

fn exact_roots(set: &SolutionSet) -> Vec<(Rat, Rat)> {
    let mut out: Vec<(Rat, Rat)> = set.roots().iter().map(|r| r.exact().expect("rational root")).collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn planted_line_arrangements((f, g) in arb_planted()) {
        let eqs = [product(&f), product(&g)];
        let set = solve_equations(&eqs, &[]).unwrap();
        let curve = matches!(set, SolutionSet::PositiveDimensional { .. });
        prop_assert!(!curve);
        prop_assert_eq!(exact_roots(&set), oracle(&f, &g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn equation_order_does_not_matter((f, g) in arb_planted(), h in arb_line()) {
        let a = product(&f);
        let b = product(&g);
        let c = &(&a * &line_poly(&h)) + &b;
        let forward = solve_equations(&[a.clone(), b.clone(), c.clone()], &[]).unwrap();
        let backward = solve_equations(&[c, b, a], &[]).unwrap();
        prop_assert_eq!(exact_roots(&forward), exact_roots(&backward));
    }

    #[test]
    fn side_conditions_remove_exactly_their_zeros((f, g) in arb_planted(), h in arb_line()) {
        let eqs = [product(&f), product(&g)];
        let side = line_poly(&h);
        let set = solve_equations(&eqs, std::slice::from_ref(&side)).unwrap();
        let expected: Vec<(Rat, Rat)> = oracle(&f, &g)
            .into_iter()
            .filter(|(u, v)| !side.eval(&[u.clone(), v.clone()]).eq(&int(0)))
            .collect();
        prop_assert_eq!(exact_roots(&set), expected);
    }
}
