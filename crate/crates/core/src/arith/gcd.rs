//! Multivariate gcd over the rationals.
//!
//! Recursive primitive remainder sequences with content taken in a main
//! variable, plus an evaluation shortcut that proves coprimality cheaply in
//! the common case.

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::rat::{int, Rat};

/// Monic gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let ctx = (MPoly::zero(a.vars()) + MPoly::zero(b.vars())).vars().clone();
    let a = a.with_vars(&ctx).expect("union context");
    let b = b.with_vars(&ctx).expect("union context");
    gcd_rec(&a, &b).monic()
}

/// Gcd of a family; stops early once it reaches one.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a MPoly>) -> Option<MPoly> {
    let mut acc: Option<MPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(g) => gcd(&g, p),
        });
        if acc.as_ref().is_some_and(|g| g.is_constant() && !g.is_zero()) {
            break;
        }
    }
    acc
}

/// `p / gcd(p, all partials)`, primitive; removes repeated factors.
pub fn squarefree_part(p: &MPoly) -> MPoly {
    if p.is_constant() {
        return if p.is_zero() { p.clone() } else { MPoly::one(p.vars()) };
    }
    let mut g = p.clone();
    for idx in p.used_vars() {
        let d = p.partial(&p.vars()[idx].clone()).expect("variable in context");
        g = gcd(&g, &d);
        if g.is_constant() {
            return p.primitive();
        }
    }
    p.try_div(&g).expect("gcd divides").primitive()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `idx`.
pub fn content_in(p: &MPoly, idx: usize) -> MPoly {
    let coeffs: Vec<MPoly> = p
        .coefficients_in(idx)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    let mut g: Option<MPoly> = None;
    for c in &coeffs {
        g = Some(match g {
            None => c.monic(),
            Some(h) => gcd_rec(&h, c).monic(),
        });
        if g.as_ref().is_some_and(|h| h.is_constant()) {
            break;
        }
    }
    g.unwrap_or_else(|| MPoly::zero(p.vars()))
}

pub fn primitive_part_in(p: &MPoly, idx: usize) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, idx);
    p.try_div(&c).expect("content divides")
}

fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.vars());
    }
    let used_a = a.used_vars();
    let used_b = b.used_vars();
    if used_a.len() == 1 && used_a == used_b {
        let idx = used_a[0];
        let g = a
            .to_upoly(idx)
            .expect("univariate")
            .gcd(&b.to_upoly(idx).expect("univariate"));
        return MPoly::from_upoly(&g, idx, a.vars());
    }
    // A variable present in only one operand cannot occur in the gcd.
    if let Some(&x) = used_a.iter().find(|i| !used_b.contains(i)) {
        return gcd_rec(&content_in(a, x), b);
    }
    if let Some(&x) = used_b.iter().find(|i| !used_a.contains(i)) {
        return gcd_rec(a, &content_in(b, x));
    }
    let x = *used_a.last().unwrap();
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let c = gcd_rec(&ca, &cb);
    let pa = a.try_div(&ca).expect("content divides");
    let pb = b.try_div(&cb).expect("content divides");
    if likely_coprime_in(&pa, &pb, x) {
        return c;
    }
    let mut r0 = pa;
    let mut r1 = pb;
    if r0.degree_in(x) < r1.degree_in(x) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r = prem_in(&r0, &r1, x);
        if r.is_zero() {
            return &c * &r1.primitive();
        }
        if r.degree_in(x) == 0 {
            return c;
        }
        r0 = r1;
        r1 = primitive_part_in(&r, x).primitive();
    }
}

/// Proves that `a` and `b` share no factor of positive degree in `x` by
/// specializing the other variables at a point keeping both leading
/// coefficients nonzero. A `false` answer is inconclusive.
fn likely_coprime_in(a: &MPoly, b: &MPoly, x: usize) -> bool {
    let others: Vec<usize> = (0..a.vars().len()).filter(|&i| i != x).collect();
    let la = a.coefficients_in(x).pop().unwrap();
    let lb = b.coefficients_in(x).pop().unwrap();
    let samples = [3i64, -5, 7, 2, -11, 13];
    for attempt in 0..4 {
        let point: Vec<Rat> = (0..a.vars().len())
            .map(|i| int(samples[(i + attempt) % samples.len()] + attempt as i64))
            .collect();
        let spec = |p: &MPoly| {
            let mut q = p.clone();
            for &i in &others {
                q = q.eval_var(i, &point[i]);
            }
            q
        };
        if spec(&la).is_zero() || spec(&lb).is_zero() {
            continue;
        }
        let ua = spec(a).to_upoly(x).expect("specialized");
        let ub = spec(b).to_upoly(x).expect("specialized");
        return ua.gcd(&ub).degree() == Some(0);
    }
    false
}

/// Pseudo-remainder in variable `x`.
pub(crate) fn prem_in(a: &MPoly, b: &MPoly, x: usize) -> MPoly {
    let db = b.degree_in(x);
    let bc = b.coefficients_in(x);
    let lb = bc.last().unwrap().clone();
    let vars = a.vars().clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = r.coefficients_in(x).pop().unwrap();
        let shift = MPoly::monomial(x, dr - db, Rat::one(), &vars);
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
    }
    // Strip rational content so coefficients stay integral and small.
    if r.is_zero() {
        r
    } else {
        let c = r.content();
        if c.is_zero() || c.is_one() {
            r
        } else {
            r.scale(&c.recip())
        }
    }
}
