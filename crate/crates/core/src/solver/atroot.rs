//! Polynomials in `v` with coefficients in `Q[u]`, read at a fixed real
//! algebraic value `u = α`.
//!
//! Coefficients are kept reduced modulo the defining polynomial of `α`, and
//! every zero test is exact, so the Euclidean and Sturm computations below
//! are computations in `Q(α)[v]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{MPoly, Rat, RootInterval, UPoly};

/// Coefficients in `u`, lowest power of `v` first.
pub(crate) type VPoly = Vec<UPoly>;

pub(crate) struct AtRoot {
    alpha: RootInterval,
}

impl AtRoot {
    pub fn new(alpha: RootInterval) -> Self {
        AtRoot { alpha }
    }

    fn reduce(&self, c: &UPoly) -> UPoly {
        match &self.alpha.exact {
            Some(r) => UPoly::constant(c.eval(r)),
            None => c.rem(&self.alpha.poly),
        }
    }

    pub fn sign(&self, c: &UPoly) -> i8 {
        self.alpha.sign_of(&self.reduce(c))
    }

    /// Reads an `MPoly` in `(u, v)` as a polynomial in `v`.
    pub fn specialize(&self, e: &MPoly) -> VPoly {
        let coeffs = e
            .coefficients_in(1)
            .iter()
            .map(|c| self.reduce(&c.to_upoly(0).expect("coefficient in u")))
            .collect();
        self.trim(coeffs)
    }

    /// Drops leading coefficients that vanish at `α`.
    pub fn trim(&self, mut a: VPoly) -> VPoly {
        while let Some(l) = a.last() {
            if l.is_zero() || self.sign(l) == 0 {
                a.pop();
            } else {
                break;
            }
        }
        a
    }

    /// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonempty) and the sign
    /// at `α` of the factor it was multiplied by.
    fn prem(&self, a: &VPoly, b: &VPoly) -> (VPoly, i8) {
        let lb = b.last().expect("nonzero divisor").clone();
        let sb = self.sign(&lb);
        let mut r = a.clone();
        let mut steps = 0u32;
        while !r.is_empty() && r.len() >= b.len() {
            let shift = r.len() - b.len();
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c = self.reduce(&(&*c * &lb));
            }
            for (k, bk) in b.iter().enumerate() {
                let t = self.reduce(&(&lr * bk));
                r[k + shift] = &r[k + shift] - &t;
            }
            r.pop();
            steps += 1;
            r = self.trim(r);
        }
        let mult = if steps % 2 == 1 { sb } else { 1 };
        (normalize(r), mult)
    }

    /// A gcd in `Q(α)[v]`, up to a unit.
    pub fn gcd(&self, a: &VPoly, b: &VPoly) -> VPoly {
        let (mut a, mut b) = (self.trim(a.clone()), self.trim(b.clone()));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_empty() {
                return a;
            }
            if b.len() == 1 {
                return vec![UPoly::one()];
            }
            let (r, _) = self.prem(&a, &b);
            a = b;
            b = r;
        }
    }

    pub fn sturm(&self, a: &VPoly) -> Vec<VPoly> {
        let a = self.trim(a.clone());
        let mut seq = vec![a.clone()];
        if a.len() <= 1 {
            return seq;
        }
        let d: VPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rat::from_integer(BigInt::from(k))))
            .collect();
        seq.push(self.trim(d));
        loop {
            let n = seq.len();
            if seq[n - 1].len() <= 1 {
                break;
            }
            let (r, s) = self.prem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            let m = Rat::from_integer(BigInt::from(-s));
            seq.push(r.iter().map(|c| c.scale(&m)).collect());
        }
        seq
    }

    /// Value at `v = x` as an element of `Q[u]`.
    pub fn eval_v(&self, a: &VPoly, x: &Rat) -> UPoly {
        let mut acc = UPoly::zero();
        for c in a.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    fn variations(&self, seq: &[VPoly], x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in seq {
            let v = self.sign(&self.eval_v(s, x));
            if v != 0 {
                if last != 0 && v != last {
                    count += 1;
                }
                last = v;
            }
        }
        count
    }

    /// Distinct real roots of `seq[0](α, v)` in `(lo, hi]`.
    pub fn count(&self, seq: &[VPoly], lo: &Rat, hi: &Rat) -> usize {
        self.variations(seq, lo)
            .saturating_sub(self.variations(seq, hi))
    }
}

/// Divides out the positive rational content of all coefficients.
fn normalize(a: VPoly) -> VPoly {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in a.iter().flat_map(|p| p.coeffs()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return a;
    }
    let k = Rat::new(den, num.abs());
    a.iter().map(|p| p.scale(&k)).collect()
}

/// Assembles a polynomial in `(u, v)` from its coefficients in `v`.
pub(crate) fn to_mpoly(a: &VPoly, ctx: &crate::arith::Vars) -> MPoly {
    let coeffs: Vec<MPoly> = a.iter().map(|c| MPoly::from_upoly(c, 0, ctx)).collect();
    MPoly::from_coefficients_in(1, &coeffs, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::roots::isolate_upoly;
    use crate::arith::rat::int;
    use crate::candidates::uv;

    fn sqrt2() -> RootInterval {
        isolate_upoly(&UPoly::from_ints(&[-2, 0, 1])).unwrap().pop().unwrap()
    }

    #[test]
    fn gcd_over_sqrt2() {
        // (v - u)(v + 1) and (v - u)(v - 3) share v - u at u = sqrt 2
        let at = AtRoot::new(sqrt2());
        let a = at.specialize(&MPoly::parse("(v-u)*(v+1)", uv()).unwrap());
        let b = at.specialize(&MPoly::parse("(v-u)*(v-3)", uv()).unwrap());
        let g = at.gcd(&a, &b);
        assert_eq!(g.len(), 2);
        let seq = at.sturm(&g);
        assert_eq!(at.count(&seq, &int(1), &int(2)), 1);
        assert_eq!(at.count(&seq, &int(-2), &int(1)), 0);
    }

    #[test]
    fn trims_vanishing_leading_coefficient() {
        // (u^2 - 2) v^2 + v - 1 is linear at u = sqrt 2
        let at = AtRoot::new(sqrt2());
        let a = at.specialize(&MPoly::parse("(u^2-2)*v^2 + v - 1", uv()).unwrap());
        assert_eq!(a.len(), 2);
        let seq = at.sturm(&a);
        assert_eq!(at.count(&seq, &int(0), &int(2)), 1);
    }

    #[test]
    fn coprime_at_root() {
        let at = AtRoot::new(sqrt2());
        let a = at.specialize(&MPoly::parse("v^2 - u", uv()).unwrap());
        let b = at.specialize(&MPoly::parse("v - 1", uv()).unwrap());
        assert_eq!(at.gcd(&a, &b).len(), 1);
    }
}
