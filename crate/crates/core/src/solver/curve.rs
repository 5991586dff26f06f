//! Does a plane curve `g(u, v) = 0` have infinitely many real points?

use num_traits::Zero;

use crate::arith::gcd::content_in;
use crate::arith::roots::isolate_upoly;
use crate::arith::{resultant, MPoly, Rat, RootInterval};
use crate::error::Result;

/// Rational points separating the given sorted roots, one per open cell.
pub(crate) fn cell_samples(roots: &[RootInterval]) -> Vec<Rat> {
    let one = Rat::from_integer(1.into());
    let two = Rat::from_integer(2.into());
    if roots.is_empty() {
        return vec![Rat::from_integer(0.into())];
    }
    let mut out = vec![&roots[0].lo - &one];
    for w in roots.windows(2) {
        let (a, b) = (&w[0].hi, &w[1].lo);
        out.push(if a < b { (a + b) / &two } else { a.clone() });
    }
    out.push(&roots[roots.len() - 1].hi + &one);
    out
}

/// Decides whether the square-free `g` has a one-dimensional real locus.
///
/// Vertical lines come from the content in `v`. Otherwise the number of real
/// `v`-roots is constant between consecutive real roots of
/// `lc_v(g) · disc_v(g)`, so one sample per cell decides.
pub fn has_real_curve(g: &MPoly) -> Result<bool> {
    if g.is_constant() {
        return Ok(false);
    }
    let c = content_in(g, 1);
    if !c.is_constant() && !isolate_upoly(&c.to_upoly(0)?)?.is_empty() {
        return Ok(true);
    }
    let h = if c.is_constant() { g.clone() } else { g.div_exact(&c)? };
    if h.degree_in(1) == 0 {
        return Ok(false);
    }
    let coeffs = h.coefficients_in(1);
    let mut d = coeffs.last().unwrap().to_upoly(0)?;
    if h.degree_in(1) >= 2 {
        let hv = h.partial("v")?;
        let disc = resultant(&h, &hv, "v")?.to_upoly(0)?;
        d = &d * &disc;
    }
    let crit = if d.is_constant() { Vec::new() } else { isolate_upoly(&d)? };
    for u0 in cell_samples(&crit) {
        let hv = h.eval_var(0, &u0).to_upoly(1)?;
        if !hv.is_zero() && !isolate_upoly(&hv)?.is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Up to `count` rational points on `g = 0` where no polynomial in `avoid`
/// vanishes, searched over abscissae of increasing height.
pub(crate) fn rational_points(g: &MPoly, count: usize, avoid: &[MPoly]) -> Result<Vec<(Rat, Rat)>> {
    let mut out = Vec::new();
    let c = content_in(g, 1);
    let h = if c.is_constant() { g.clone() } else { g.div_exact(&c)? };
    // vertical lines first: every rational root of the content gives a line
    if !c.is_constant() {
        for r in isolate_upoly(&c.to_upoly(0)?)? {
            if let Some(u0) = r.exact {
                for k in 0..64i64 {
                    let v0 = Rat::from_integer(((k + 1) / 2 * if k % 2 == 0 { 1 } else { -1 }).into());
                    if avoid.iter().all(|a| !a.eval(&[u0.clone(), v0.clone()]).is_zero()) {
                        out.push((u0.clone(), v0));
                        if out.len() >= count {
                            return Ok(out);
                        }
                    }
                }
            }
        }
    }
    if h.degree_in(1) == 0 {
        return Ok(out);
    }
    // small rationals p/q ordered by height
    for height in 1..=24i64 {
        for q in 1..=height {
            for p in -height..=height {
                if num_integer::gcd(p, q) != 1 || (p.abs() != height && q != height) {
                    continue;
                }
                let u0 = Rat::new(p.into(), q.into());
                let hv = h.eval_var(0, &u0).to_upoly(1)?;
                if hv.is_zero() || hv.is_constant() {
                    continue;
                }
                for r in isolate_upoly(&hv)? {
                    let Some(v0) = r.exact else { continue };
                    let pt = [u0.clone(), v0.clone()];
                    if avoid.iter().all(|a| !a.eval(&pt).is_zero())
                        && !out.contains(&(u0.clone(), v0.clone()))
                    {
                        out.push((u0.clone(), v0));
                        if out.len() >= count {
                            return Ok(out);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::uv;


    fn p(s: &str) -> MPoly {
        MPoly::parse(s, uv()).unwrap()
    }

    #[test]
    fn real_and_empty_curves() {
        assert!(has_real_curve(&p("u^2+v^2-1")).unwrap());
        assert!(!has_real_curve(&p("u^2+v^2+1")).unwrap());
        // a single real point
        assert!(!has_real_curve(&p("u^2+v^2")).unwrap());
        assert!(has_real_curve(&p("u-3")).unwrap());
        assert!(!has_real_curve(&p("u^2+1")).unwrap());
        assert!(has_real_curve(&p("(u^2+1)*(v-u^3)")).unwrap());
        // real part confined to u in [-1, 1]
        assert!(has_real_curve(&p("v^2+u^2-1")).unwrap());
        assert!(!has_real_curve(&p("(u^2+v^2)*(u^2+v^2+4)+1")).unwrap());
    }

    #[test]
    fn rational_points_on_circle() {
        let pts = rational_points(&p("u^2+v^2-1"), 2, &[p("v")]).unwrap();
        assert_eq!(pts.len(), 2);
        for (a, b) in pts {
            assert_eq!(&a * &a + &b * &b, Rat::from_integer(1.into()));
            assert!(!b.is_zero());
        }
    }
}
