//! Real root isolation with Sturm sequences.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::MPoly;
use super::rat::{to_decimal, Rat};
use super::upoly::{zderivative, zprem, zprimitive, zsign_at_rat, ztrim, UPoly};
use super::ArithError;

/// A real algebraic number given by a square-free polynomial and an
/// isolating interval, or an exact rational.
///
/// For irrational roots `lo < hi`, neither endpoint is a root, and `poly`
/// changes sign across the interval with exactly one root inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub poly: UPoly,
    pub lo: Rat,
    pub hi: Rat,
    pub exact: Option<Rat>,
}

/// Sturm sequence of a square-free integer polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<Vec<BigInt>>,
}

impl Sturm {
    pub fn new(p: &[BigInt]) -> Self {
        let p = zprimitive(p);
        let mut seq = vec![p.clone()];
        if p.len() <= 1 {
            return Sturm { seq };
        }
        let d = zprimitive(&zderivative(&p));
        seq.push(d);
        loop {
            let n = seq.len();
            let a = &seq[n - 2];
            let b = &seq[n - 1];
            if b.len() <= 1 {
                break;
            }
            // prem by a positive-leading divisor keeps the sign of the remainder
            let bpos: Vec<BigInt> = if b.last().unwrap().is_negative() {
                b.iter().map(|c| -c).collect()
            } else {
                b.clone()
            };
            let r = ztrim(zprem(a, &bpos));
            if r.is_empty() {
                break;
            }
            let g = super::upoly::zcontent(&r);
            seq.push(r.iter().map(|c| -(c / &g)).collect());
        }
        Sturm { seq }
    }

    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for s in &self.seq {
            let v = zsign_at_rat(s, x);
            if v != 0 {
                if last != 0 && v != last {
                    count += 1;
                }
                last = v;
            }
        }
        count
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rat, hi: &Rat) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Cauchy bound `ceil(1 + max |a_i / a_n|)`.
pub fn cauchy_bound(p: &[BigInt]) -> Rat {
    let lead = p.last().expect("nonzero polynomial").abs();
    let max = p[..p.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let q = Integer::div_ceil(&max, &lead);
    Rat::from_integer(q + BigInt::one())
}

fn sign_at(p: &[BigInt], x: &Rat) -> i8 {
    zsign_at_rat(p, x)
}

/// Isolates the real roots of a univariate polynomial given as `MPoly`.
pub fn isolate_real_roots(p: &MPoly) -> Result<Vec<RootInterval>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let up = match p.univariate_index()? {
        None => return Ok(Vec::new()),
        Some(i) => p.to_upoly(i)?,
    };
    isolate_upoly(&up)
}

pub fn isolate_upoly(p: &UPoly) -> Result<Vec<RootInterval>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let q = p.squarefree_part().to_primitive_ints();
    if q.len() <= 1 {
        return Ok(Vec::new());
    }
    let sturm = Sturm::new(&q);
    let b = cauchy_bound(&q);
    let mut raw: Vec<(Rat, Rat)> = Vec::new();
    bisect(&sturm, -b.clone(), b, &mut raw);

    let lead = q.last().unwrap().abs();
    let mut rationals: Vec<Rat> = Vec::new();
    let mut pending: Vec<(Rat, Rat)> = Vec::new();
    for (lo, hi) in raw {
        if sign_at(&q, &hi) == 0 {
            rationals.push(hi);
            continue;
        }
        let (lo, hi) = match shrink_off_root(&sturm, &q, lo, hi) {
            Ok(iv) => iv,
            Err(r) => {
                rationals.push(r);
                continue;
            }
        };
        match sieve(&q, &lead, lo, hi) {
            Ok(r) => rationals.push(r),
            Err(iv) => pending.push(iv),
        }
    }
    let mut reduced = UPoly::from_bigints(&q);
    for r in &rationals {
        reduced = reduced.div_exact(&UPoly::linear_root(r)).expect("rational root divides");
    }
    let reduced = reduced.primitive();
    let mut out: Vec<RootInterval> = rationals.into_iter().map(RootInterval::exact).collect();
    for (lo, hi) in pending {
        out.push(RootInterval {
            poly: reduced.clone(),
            lo,
            hi,
            exact: None,
        });
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

fn bisect(sturm: &Sturm, lo: Rat, hi: Rat, out: &mut Vec<(Rat, Rat)>) {
    let n = sturm.count(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push((lo, hi));
        return;
    }
    let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
    bisect(sturm, lo, mid.clone(), out);
    bisect(sturm, mid, hi, out);
}

/// Moves `lo` off a root of `q` while keeping the single root of `(lo, hi)`;
/// may land on that root exactly.
fn shrink_off_root(sturm: &Sturm, q: &[BigInt], mut lo: Rat, mut hi: Rat) -> Result<(Rat, Rat), Rat> {
    while sign_at(q, &lo) == 0 {
        let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
        if sign_at(q, &mid) == 0 {
            return Err(mid);
        }
        if sturm.count(&mid, &hi) == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Looks for a rational root `k / |lc|` inside a sign-change interval.
fn sieve(q: &[BigInt], lead: &BigInt, mut lo: Rat, mut hi: Rat) -> Result<Rat, (Rat, Rat)> {
    let step = Rat::new(BigInt::one(), lead.clone());
    let slo = sign_at(q, &lo);
    while &hi - &lo >= step {
        let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
        let s = sign_at(q, &mid);
        if s == 0 {
            return Ok(mid);
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k = (&lo * Rat::from_integer(lead.clone())).ceil();
    let mut cand = k / Rat::from_integer(lead.clone());
    if cand == lo {
        cand += &step;
    }
    if cand < hi && sign_at(q, &cand) == 0 {
        return Ok(cand);
    }
    Err((lo, hi))
}

impl RootInterval {
    pub fn exact(r: Rat) -> Self {
        RootInterval {
            poly: UPoly::linear_root(&r).primitive(),
            lo: r.clone(),
            hi: r.clone(),
            exact: Some(r),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    fn ints(&self) -> Vec<BigInt> {
        self.poly.to_primitive_ints()
    }

    /// Halves the interval once.
    pub fn bisect_once(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let q = self.ints();
        let slo = sign_at(&q, &self.lo);
        let mid = (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2));
        match sign_at(&q, &mid) {
            0 => {
                // only possible for a reducible poly; keep the exact value
                *self = RootInterval::exact(mid);
            }
            s if s == slo => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    /// Narrows the interval below `width`.
    pub fn refine(&self, width: &Rat) -> Result<RootInterval, ArithError> {
        if self.exact.is_some() {
            return Ok(self.clone());
        }
        if !width.is_positive() {
            return Err(ArithError::ZeroWidthRequest);
        }
        let mut r = self.clone();
        while r.exact.is_none() && &r.width() >= width {
            r.bisect_once();
        }
        Ok(r)
    }

    /// Midpoint of the current interval (the value itself when exact).
    pub fn approx(&self) -> Rat {
        match &self.exact {
            Some(r) => r.clone(),
            None => (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2)),
        }
    }

    /// Exact sign of `f` at this root.
    pub fn sign_of(&self, f: &UPoly) -> i8 {
        if let Some(r) = &self.exact {
            return super::rat::sign(&f.eval(r));
        }
        if f.is_zero() {
            return 0;
        }
        let g = self.poly.gcd(f);
        if !g.is_constant() {
            let gi = g.to_primitive_ints();
            if sign_at(&gi, &self.lo) * sign_at(&gi, &self.hi) < 0 {
                return 0;
            }
        }
        let fi = f.squarefree_part().to_primitive_ints();
        let sturm = Sturm::new(&fi);
        let mut r = self.clone();
        loop {
            if sign_at(&fi, &r.lo) != 0 && sturm.count(&r.lo, &r.hi) == 0 {
                return sign_at(&f.to_primitive_ints(), &r.lo) * lc_sign(f);
            }
            r.bisect_once();
            if let Some(x) = &r.exact {
                return super::rat::sign(&f.eval(x));
            }
        }
    }

    /// Compares two real algebraic numbers exactly.
    pub fn cmp_root(&self, other: &RootInterval) -> Ordering {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => return a.cmp(b),
            (Some(a), None) => return other.cmp_rat(a).reverse(),
            (None, Some(b)) => return self.cmp_rat(b),
            _ => {}
        }
        let g = self.poly.gcd(&other.poly);
        let gi = (!g.is_constant()).then(|| g.to_primitive_ints());
        let gs = gi.as_ref().map(|q| Sturm::new(q));
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if let (Some(gi), Some(gs)) = (&gi, &gs) {
                let on_a = sign_at(gi, &a.lo) * sign_at(gi, &a.hi) < 0;
                let on_b = sign_at(gi, &b.lo) * sign_at(gi, &b.hi) < 0;
                let lo = (&a.lo).min(&b.lo).clone();
                let hi = (&a.hi).max(&b.hi).clone();
                if on_a && on_b && gs.count(&lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
            a.bisect_once();
            b.bisect_once();
            if a.exact.is_some() || b.exact.is_some() {
                return a.cmp_root(&b);
            }
        }
    }

    /// Compares this root with a rational.
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        if let Some(r) = &self.exact {
            return r.cmp(x);
        }
        if x <= &self.lo {
            return Ordering::Greater;
        }
        if x >= &self.hi {
            return Ordering::Less;
        }
        let q = self.ints();
        let sx = sign_at(&q, x);
        if sx == 0 {
            return Ordering::Equal;
        }
        if sx == sign_at(&q, &self.lo) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Decimal rendering of the midpoint after refining below `10^-digits`.
    pub fn to_decimal(&self, digits: u32) -> String {
        match &self.exact {
            Some(r) => to_decimal(r, digits),
            None => {
                let w = Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits + 1));
                let r = self.refine(&w).expect("positive width");
                to_decimal(&r.approx(), digits)
            }
        }
    }
}

fn lc_sign(f: &UPoly) -> i8 {
    // sign of the primitive integer multiple relative to f
    if f.lc().is_negative() {
        -1
    } else {
        1
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{}", r),
            None => write!(f, "root of {} in [{}, {}]", self.poly.display_in("x"), self.lo, self.hi),
        }
    }
}
