//! Sylvester resultants.
//!
//! Convention: the determinant of the Sylvester matrix whose first rows hold
//! the shifted coefficients of `p`, highest degree first.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mpoly::{MPoly, Vars};
use super::rat::{common_denominator, Rat};
use super::upoly::UPoly;
use super::ArithError;

pub fn resultant(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly, ArithError> {
    let ctx: Vars = (MPoly::zero(p.vars()) + MPoly::zero(q.vars())).vars().clone();
    let p = p.with_vars(&ctx)?;
    let q = q.with_vars(&ctx)?;
    let x = ctx
        .iter()
        .position(|v| v == var)
        .ok_or_else(|| ArithError::UnknownVariable(var.to_string()))?;
    if p.degree_in(x) == 0 || q.degree_in(x) == 0 {
        return Err(ArithError::ZeroDegree(var.to_string()));
    }
    let mut others: Vec<usize> = p.used_vars();
    others.extend(q.used_vars());
    others.sort_unstable();
    others.dedup();
    others.retain(|&i| i != x);
    match others.as_slice() {
        [] => {
            let r = sylvester_det_rat(&p.coefficients_in(x), &q.coefficients_in(x));
            Ok(MPoly::constant(r, &ctx))
        }
        [w] => Ok(resultant_interp(&p, &q, x, *w, &ctx)),
        _ => Ok(resultant_bareiss(&p, &q, x, &ctx)),
    }
}

/// Rows of the Sylvester matrix as indices into a coefficient list; `None`
/// marks a structural zero.
fn sylvester_layout(m: usize, n: usize) -> Vec<Vec<Option<(bool, usize)>>> {
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![None; size];
        for k in 0..=m {
            row[r + k] = Some((true, m - k));
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![None; size];
        for k in 0..=n {
            row[r + k] = Some((false, n - k));
        }
        rows.push(row);
    }
    rows
}

fn sylvester_det_rat(pc: &[MPoly], qc: &[MPoly]) -> Rat {
    let pv: Vec<Rat> = pc.iter().map(|c| c.constant_value().unwrap()).collect();
    let qv: Vec<Rat> = qc.iter().map(|c| c.constant_value().unwrap()).collect();
    let dp = common_denominator(pv.iter());
    let dq = common_denominator(qv.iter());
    let pi: Vec<BigInt> = pv
        .iter()
        .map(|c| (c * Rat::from_integer(dp.clone())).to_integer())
        .collect();
    let qi: Vec<BigInt> = qv
        .iter()
        .map(|c| (c * Rat::from_integer(dq.clone())).to_integer())
        .collect();
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let det = int_det(build_int(&pi, &qi, m, n));
    let scale = Rat::from_integer(dp.pow(n as u32) * dq.pow(m as u32));
    Rat::from_integer(det) / scale
}

fn build_int(pi: &[BigInt], qi: &[BigInt], m: usize, n: usize) -> Vec<Vec<BigInt>> {
    sylvester_layout(m, n)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|cell| match cell {
                    None => BigInt::zero(),
                    Some((true, k)) => pi[k].clone(),
                    Some((false, k)) => qi[k].clone(),
                })
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination over the integers.
pub(crate) fn int_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Resultant with a single remaining variable `w`, by evaluation at integer
/// points, integer determinants and Newton interpolation.
fn resultant_interp(p: &MPoly, q: &MPoly, x: usize, w: usize, ctx: &Vars) -> MPoly {
    let dp = common_denominator(p.terms().iter().map(|(_, c)| c));
    let dq = common_denominator(q.terms().iter().map(|(_, c)| c));
    let ps = p.scale(&Rat::from_integer(dp.clone()));
    let qs = q.scale(&Rat::from_integer(dq.clone()));
    let m = p.degree_in(x) as usize;
    let n = q.degree_in(x) as usize;
    let pc: Vec<UPoly> = ps
        .coefficients_in(x)
        .iter()
        .map(|c| c.to_upoly(w).expect("one variable left"))
        .collect();
    let qc: Vec<UPoly> = qs
        .coefficients_in(x)
        .iter()
        .map(|c| c.to_upoly(w).expect("one variable left"))
        .collect();
    let maxdeg = |cs: &[UPoly]| cs.iter().map(|c| c.deg()).max().unwrap_or(0);
    let bound_sylv = n * maxdeg(&pc) + m * maxdeg(&qc);
    let bound_bezout = (p.total_degree() as usize) * (q.total_degree() as usize);
    let bound = bound_sylv.min(bound_bezout);
    let mut xs: Vec<Rat> = Vec::with_capacity(bound + 1);
    let mut ys: Vec<Rat> = Vec::with_capacity(bound + 1);
    for k in 0..=bound {
        let t = if k % 2 == 0 {
            -(k as i64 / 2)
        } else {
            (k as i64 + 1) / 2
        };
        let tv = Rat::from_integer(BigInt::from(t));
        let pi: Vec<BigInt> = pc.iter().map(|c| c.eval(&tv).to_integer()).collect();
        let qi: Vec<BigInt> = qc.iter().map(|c| c.eval(&tv).to_integer()).collect();
        xs.push(tv);
        ys.push(Rat::from_integer(int_det(build_int(&pi, &qi, m, n))));
    }
    let poly = newton_interpolate(&xs, &ys);
    let scale = Rat::from_integer(dp.pow(n as u32) * dq.pow(m as u32));
    MPoly::from_upoly(&poly.scale(&scale.recip()), w, ctx)
}

pub(crate) fn newton_interpolate(xs: &[Rat], ys: &[Rat]) -> UPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut poly = UPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        poly = &(&poly * &UPoly::linear_root(&xs[i])) + &UPoly::constant(coef[i].clone());
    }
    poly
}

/// Bareiss elimination directly on polynomial entries.
fn resultant_bareiss(p: &MPoly, q: &MPoly, x: usize, ctx: &Vars) -> MPoly {
    let pc = p.coefficients_in(x);
    let qc = q.coefficients_in(x);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let mut a: Vec<Vec<MPoly>> = sylvester_layout(m, n)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|cell| match cell {
                    None => MPoly::zero(ctx),
                    Some((true, k)) => pc[k].clone(),
                    Some((false, k)) => qc[k].clone(),
                })
                .collect()
        })
        .collect();
    let size = m + n;
    let mut negate = false;
    let mut prev = MPoly::one(ctx);
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return MPoly::zero(ctx),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.try_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[size - 1][size - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
