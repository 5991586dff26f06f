//! Real solutions of the bivariate systems produced by [`crate::systems`].
//!
//! The unknown `v` is eliminated with resultants, the real roots of the
//! eliminant are isolated, and each `u`-root is lifted by taking the gcd of
//! all equations at that root. Lifting is exact: rational roots use
//! polynomial arithmetic over Q, irrational ones arithmetic in `Q(α)`.

mod atroot;
pub mod curve;

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::gcd::{gcd_many, squarefree_part};
use crate::arith::roots::isolate_upoly;
use crate::arith::{resultant, ArithError, MPoly, Rat, RootInterval, UPoly};
use crate::candidates::uv;
use crate::error::{Error, Result};
use crate::systems::PolySystem;

use atroot::{to_mpoly, AtRoot, VPoly};
pub use curve::has_real_curve;

/// A real solution `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root2D {
    pub u: RootInterval,
    pub v: RootInterval,
    /// Every equation vanishes and every side condition is nonzero here.
    pub certified: bool,
}

impl Root2D {
    pub fn is_exact(&self) -> bool {
        self.u.is_exact() && self.v.is_exact()
    }

    /// The point itself when both coordinates are rational.
    pub fn exact(&self) -> Option<(Rat, Rat)> {
        Some((self.u.exact.clone()?, self.v.exact.clone()?))
    }

    fn cmp(&self, other: &Root2D) -> Ordering {
        self.u.cmp_root(&other.u).then_with(|| self.v.cmp_root(&other.v))
    }
}

impl std::fmt::Display for Root2D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionSet {
    Empty,
    Finite(Vec<Root2D>),
    /// A common factor of all equations with infinitely many real points,
    /// plus any solutions off its locus.
    PositiveDimensional { witness: MPoly, residual: Vec<Root2D> },
}

impl SolutionSet {
    fn from_roots(roots: Vec<Root2D>) -> Self {
        if roots.is_empty() {
            SolutionSet::Empty
        } else {
            SolutionSet::Finite(roots)
        }
    }

    /// The isolated solutions.
    pub fn roots(&self) -> &[Root2D] {
        match self {
            SolutionSet::Empty => &[],
            SolutionSet::Finite(r) => r,
            SolutionSet::PositiveDimensional { residual, .. } => residual,
        }
    }
}

/// Narrows both coordinates below `width`; exact coordinates are unchanged.
pub fn refine(root: &Root2D, width: &Rat) -> Result<Root2D> {
    Ok(Root2D {
        u: root.u.refine(width)?,
        v: root.v.refine(width)?,
        certified: root.certified,
    })
}

pub fn solve_real(sys: &PolySystem) -> Result<SolutionSet> {
    solve_equations(&sys.equations, &sys.side_conditions)
}

/// Solves `equations = 0` subject to `side ≠ 0`, all in the `(u, v)` context.
pub fn solve_equations(equations: &[MPoly], side: &[MPoly]) -> Result<SolutionSet> {
    let ctx = uv();
    let eqs: Vec<MPoly> = equations
        .iter()
        .filter(|e| !e.is_zero())
        .map(|e| e.with_vars(ctx))
        .collect::<std::result::Result<_, _>>()?;
    if eqs.is_empty() {
        return Err(Error::Internal("empty system".into()));
    }
    let side: Vec<MPoly> = side
        .iter()
        .map(|s| s.with_vars(ctx))
        .collect::<std::result::Result<_, _>>()?;
    if eqs.iter().any(|e| e.is_constant()) {
        return Ok(SolutionSet::Empty);
    }
    let g = gcd_many(&eqs).expect("nonempty");
    if g.is_constant() {
        return Ok(SolutionSet::from_roots(solve_finite(&eqs, &side)?));
    }

    let gs = squarefree_part(&g);
    let rest: Vec<MPoly> = eqs
        .iter()
        .map(|e| e.div_exact(&g))
        .collect::<std::result::Result<Vec<_>, _>>()?
        .into_iter()
        .map(|e| e.primitive())
        .collect();
    let mut residual = Vec::new();
    if !rest.iter().any(|e| e.is_constant()) {
        for r in solve_finite(&rest, &side)? {
            if !vanishes_at(&gs, &r) {
                residual.push(r);
            }
        }
    }
    if has_real_curve(&gs)? {
        return Ok(SolutionSet::PositiveDimensional {
            witness: gs,
            residual,
        });
    }
    // the real points of gs are isolated, hence singular
    let mut sing = vec![gs.clone()];
    for name in ["u", "v"] {
        let d = gs.partial(name)?;
        if !d.is_zero() {
            sing.push(d.primitive());
        }
    }
    let mut roots = residual;
    if !sing.iter().any(|e| e.is_constant()) {
        roots.extend(solve_finite(&sing, &side)?);
    }
    roots.sort_by(Root2D::cmp);
    Ok(SolutionSet::from_roots(roots))
}

fn vanishes_at(p: &MPoly, r: &Root2D) -> bool {
    let at = AtRoot::new(r.u.clone());
    let pv = at.specialize(p);
    match &r.v.exact {
        Some(x) => at.sign(&at.eval_v(&pv, x)) == 0,
        None => {
            // the interval isolates v among the roots of its defining polynomial
            let defining: VPoly = r.v.poly.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect();
            let g = at.gcd(&pv, &defining);
            g.len() > 1 && at.count(&at.sturm(&g), &r.v.lo, &r.v.hi) > 0
        }
    }
}

fn upoly_u(p: &MPoly) -> std::result::Result<UPoly, ArithError> {
    p.to_upoly(0)
}

/// The eliminant in `u`: a nonzero polynomial vanishing at the `u`-coordinate
/// of every common complex solution.
fn eliminant(eqs: &[MPoly]) -> Result<UPoly> {
    let mut acc: Option<UPoly> = None;
    let tighten = |r: UPoly, acc: &mut Option<UPoly>| {
        *acc = Some(match acc.take() {
            None => r,
            Some(a) => a.gcd(&r),
        });
    };
    let with_v: Vec<&MPoly> = eqs.iter().filter(|e| e.degree_in(1) > 0).collect();
    for e in eqs.iter().filter(|e| e.degree_in(1) == 0) {
        tighten(upoly_u(e)?, &mut acc);
    }
    if acc.as_ref().is_some_and(|a| a.is_constant()) {
        return Ok(acc.unwrap());
    }

    // resultants of the cheapest pairs, until three succeed
    let window = with_v.len().min(6);
    let mut found = 0;
    'pairs: for i in 0..window {
        for j in i + 1..window {
            let r = upoly_u(&resultant(with_v[i], with_v[j], "v")?)?;
            if r.is_zero() {
                continue;
            }
            tighten(r, &mut acc);
            found += 1;
            if found >= 3 || acc.as_ref().unwrap().is_constant() {
                break 'pairs;
            }
        }
    }
    if let Some(a) = acc {
        return Ok(a);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let ctx = uv();
    for _ in 0..8 {
        let mut combo = || {
            with_v.iter().fold(MPoly::zero(ctx), |acc, e| {
                &acc + &e.scale(&Rat::from_integer(rng.gen_range(-7i64..=7).into()))
            })
        };
        let (a, b) = (combo(), combo());
        if a.degree_in(1) == 0 || b.degree_in(1) == 0 {
            continue;
        }
        let r = upoly_u(&resultant(&a, &b, "v")?)?;
        if !r.is_zero() {
            return Ok(r);
        }
    }
    Err(Error::EliminationDegenerate)
}

/// Isolated real solutions of a system whose equations have no common factor.
fn solve_finite(eqs: &[MPoly], side: &[MPoly]) -> Result<Vec<Root2D>> {
    let r = eliminant(eqs)?;
    if r.is_constant() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for alpha in isolate_upoly(&r)? {
        let lifted = if alpha.is_exact() {
            lift_rational(eqs, side, &alpha)?
        } else {
            lift_algebraic(eqs, side, &alpha)?
        };
        out.extend(lifted);
    }
    out.sort_by(Root2D::cmp);
    Ok(out)
}

fn lift_rational(eqs: &[MPoly], side: &[MPoly], alpha: &RootInterval) -> Result<Vec<Root2D>> {
    let a = alpha.exact.as_ref().expect("rational root");
    let mut h: Option<UPoly> = None;
    for e in eqs {
        let hi = e.eval_var(0, a).to_upoly(1)?;
        if hi.is_zero() {
            continue;
        }
        let next = match h {
            None => hi,
            Some(g) => g.gcd(&hi),
        };
        let done = next.is_constant();
        h = Some(next);
        if done {
            break;
        }
    }
    let Some(h) = h else {
        return Err(Error::Internal(format!("all equations vanish on u = {a}")));
    };
    if h.is_constant() {
        return Ok(Vec::new());
    }
    let side_at: Vec<UPoly> = side
        .iter()
        .map(|s| s.eval_var(0, a).to_upoly(1))
        .collect::<std::result::Result<_, _>>()?;
    let mut out = Vec::new();
    for beta in isolate_upoly(&h)? {
        if side_at.iter().all(|s| beta.sign_of(s) != 0) {
            out.push(Root2D {
                u: alpha.clone(),
                v: beta,
                certified: true,
            });
        }
    }
    Ok(out)
}

fn lift_algebraic(eqs: &[MPoly], side: &[MPoly], alpha: &RootInterval) -> Result<Vec<Root2D>> {
    let at = AtRoot::new(alpha.clone());
    let mut h: Option<VPoly> = None;
    for e in eqs {
        let ev = at.specialize(e);
        if ev.is_empty() {
            continue;
        }
        let next = match h {
            None => ev,
            Some(g) => at.gcd(&g, &ev),
        };
        let done = next.len() <= 1;
        h = Some(next);
        if done {
            break;
        }
    }
    let Some(h) = h else {
        return Err(Error::Internal("all equations vanish on an algebraic u-line".into()));
    };
    if h.len() <= 1 {
        return Ok(Vec::new());
    }

    // drop the conjugates of α at which h vanishes identically, so that the
    // norm below is nonzero
    let ctx = uv();
    let coeff_gcd = h
        .iter()
        .filter(|c| !c.is_zero())
        .fold(UPoly::zero(), |g, c| if g.is_zero() { c.clone() } else { g.gcd(c) });
    let p = if coeff_gcd.is_constant() {
        alpha.poly.clone()
    } else {
        alpha
            .poly
            .div_exact(&alpha.poly.gcd(&coeff_gcd))
            .ok_or_else(|| Error::Internal("gcd does not divide".into()))?
    };
    let hm = to_mpoly(&h, ctx);
    let pm = MPoly::from_upoly(&p, 0, ctx);
    let norm = if hm.degree_in(0) == 0 {
        hm.to_upoly(1)?
    } else {
        resultant(&pm, &hm, "u")?.to_upoly(1)?
    };
    if norm.is_zero() {
        return Err(Error::Internal("vanishing norm while lifting".into()));
    }
    let seq = at.sturm(&h);
    let side_v: Vec<VPoly> = side.iter().map(|s| at.specialize(s)).collect();

    let mut out = Vec::new();
    for beta in isolate_upoly(&norm)? {
        let on_h = match &beta.exact {
            Some(x) => at.sign(&at.eval_v(&h, x)) == 0,
            None => at.count(&seq, &beta.lo, &beta.hi) == 1,
        };
        if !on_h {
            continue;
        }
        let side_ok = side_v.iter().all(|s| match &beta.exact {
            Some(x) => at.sign(&at.eval_v(s, x)) != 0,
            None => {
                let g = at.gcd(&h, s);
                g.len() <= 1 || at.count(&at.sturm(&g), &beta.lo, &beta.hi) == 0
            }
        });
        if side_ok {
            out.push(Root2D {
                u: alpha.clone(),
                v: beta,
                certified: true,
            });
        }
    }
    Ok(out)
}

/// Real points of `witness = 0` off the side conditions, with rational
/// coordinates, for sampling a positive-dimensional family.
pub fn witness_points(witness: &MPoly, side: &[MPoly], count: usize) -> Result<Vec<(Rat, Rat)>> {
    let ctx = uv();
    let side: Vec<MPoly> = side.iter().map(|s| s.with_vars(ctx)).collect::<std::result::Result<_, _>>()?;
    curve::rational_points(&witness.with_vars(ctx)?, count, &side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};
    use num_traits::Signed;

    fn p(s: &str) -> MPoly {
        MPoly::parse(s, uv()).unwrap()
    }

    fn exact_points(set: &SolutionSet) -> Vec<(Rat, Rat)> {
        set.roots().iter().map(|r| r.exact().expect("exact root")).collect()
    }

    #[test]
    fn planted_pair() {
        let s = solve_equations(&[p("(u-1)*(u+2)"), p("v-u")], &[]).unwrap();
        assert_eq!(exact_points(&s), vec![(int(-2), int(-2)), (int(1), int(1))]);
        assert!(s.roots().iter().all(|r| r.certified));
    }

    #[test]
    fn ordering_independent() {
        let a = [p("u^2+v^2-5"), p("u*v-2"), p("u-v+1")];
        let mut b = a.clone();
        b.reverse();
        let sa = solve_equations(&a, &[]).unwrap();
        assert_eq!(sa, solve_equations(&b, &[]).unwrap());
        assert_eq!(exact_points(&sa), vec![(int(-2), int(-1)), (int(1), int(2))]);
    }

    #[test]
    fn side_conditions_filter() {
        let s = solve_equations(&[p("u*(u-1)"), p("v-1")], &[p("u")]).unwrap();
        assert_eq!(exact_points(&s), vec![(int(1), int(1))]);
        let s = solve_equations(&[p("u"), p("v")], &[p("u+v")]).unwrap();
        assert_eq!(s, SolutionSet::Empty);
    }

    #[test]
    fn algebraic_roots() {
        // u = v = ±sqrt(2)/2 and the rational point stays exact
        let s = solve_equations(&[p("u^2+v^2-1"), p("u-v")], &[]).unwrap();
        let roots = s.roots();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!(!r.u.is_exact() && !r.v.is_exact());
            let w = refine(r, &rat(1, 1000)).unwrap();
            assert!(w.u.width() < rat(1, 1000) && w.v.width() < rat(1, 1000));
            let x = w.u.approx();
            assert!((&x * &x - rat(1, 2)).abs() < rat(1, 100));
        }
        assert!(roots[0].u.cmp_rat(&int(0)) == Ordering::Less);
        // v irrational over rational u
        let s = solve_equations(&[p("u-1"), p("v^2-3")], &[]).unwrap();
        assert_eq!(s.roots().len(), 2);
        assert!(s.roots()[0].u.is_exact() && !s.roots()[0].v.is_exact());
        // v rational over irrational u
        let s = solve_equations(&[p("u^2-2"), p("v-1"), p("(v-1)*(u+v)")], &[]).unwrap();
        assert_eq!(s.roots().len(), 2);
        assert!(s.roots().iter().all(|r| r.v.exact == Some(int(1))));
    }

    #[test]
    fn algebraic_side_condition() {
        // (sqrt 2, sqrt 2) violates u - v ≠ 0; (sqrt 2, -sqrt 2) does not
        let s = solve_equations(&[p("u^2-2"), p("v^2-2")], &[p("u-v")]).unwrap();
        assert_eq!(s.roots().len(), 2);
        for r in s.roots() {
            assert_ne!(r.u.cmp_root(&r.v), Ordering::Equal);
        }
    }

    #[test]
    fn zero_width_request() {
        let s = solve_equations(&[p("u^2-2"), p("v")], &[]).unwrap();
        let r = &s.roots()[0];
        assert_eq!(refine(r, &int(0)), Err(Error::Arith(ArithError::ZeroWidthRequest)));
        let e = solve_equations(&[p("u-1"), p("v")], &[]).unwrap();
        assert_eq!(refine(&e.roots()[0], &int(0)).unwrap(), e.roots()[0]);
    }

    #[test]
    fn positive_dimensional() {
        let circle = p("u^2+v^2-1");
        let s = solve_equations(&[&circle * &p("u"), &circle * &p("v-3")], &[p("v")]).unwrap();
        match s {
            SolutionSet::PositiveDimensional { witness, residual } => {
                assert_eq!(witness, circle);
                let pts: Vec<_> = residual.iter().map(|r| r.exact().unwrap()).collect();
                assert_eq!(pts, vec![(int(0), int(3))]);
            }
            other => panic!("expected a curve, got {other:?}"),
        }
    }

    #[test]
    fn empty_real_curve_keeps_isolated_points() {
        // u^2 + v^2 = 0 contributes only the origin
        let g = p("u^2+v^2");
        let s = solve_equations(&[&g * &p("u-1"), &g * &p("v-2")], &[]).unwrap();
        assert_eq!(exact_points(&s), vec![(int(0), int(0)), (int(1), int(2))]);
        let s = solve_equations(&[p("u^2+v^2+1")], &[]).unwrap();
        assert_eq!(s, SolutionSet::Empty);
    }

    #[test]
    fn degenerate_pairs_use_combinations() {
        // every pair shares a factor but the triple does not
        let s = solve_equations(&[p("u*v"), p("u*(u+v-1)"), p("v*(u+v-1)")], &[]).unwrap();
        assert_eq!(
            exact_points(&s),
            vec![(int(0), int(0)), (int(0), int(1)), (int(1), int(0))]
        );
    }
}
