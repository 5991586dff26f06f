use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rat::{bit_size, common_denominator, Rat};
use super::upoly::UPoly;
use super::ArithError;

/// Exponent vector, one entry per variable of the owning context.
pub type Exponents = SmallVec<[u32; 4]>;

/// Ordered variable names shared between polynomials of one computation.
pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept strictly descending in lexicographic exponent order with no
/// zero coefficients, so two polynomials over the same variables are equal
/// exactly when their term lists are.
#[derive(Clone, Debug)]
pub struct MPoly {
    vars: Vars,
    terms: Vec<(Exponents, Rat)>,
}

fn zero_exps(n: usize) -> Exponents {
    SmallVec::from_elem(0, n)
}

fn union_vars(a: &Vars, b: &Vars) -> Vars {
    if Arc::ptr_eq(a, b) || a[..] == b[..] {
        return a.clone();
    }
    let mut out = a.to_vec();
    for name in b.iter() {
        if !out.contains(name) {
            out.push(name.clone());
        }
    }
    out.into()
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Rat, vars: &Vars) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.push((zero_exps(vars.len()), c));
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        MPoly::constant(Rat::one(), vars)
    }

    pub fn var(name: &str, vars: &Vars) -> Result<Self, ArithError> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ArithError::UnknownVariable(name.to_string()))?;
        Ok(MPoly::monomial(idx, 1, Rat::one(), vars))
    }

    /// All variables of `names` as polynomials over that context.
    pub fn variables(names: &[&str]) -> Vec<MPoly> {
        let ctx = vars(names);
        (0..names.len())
            .map(|i| MPoly::monomial(i, 1, Rat::one(), &ctx))
            .collect()
    }

    /// `c * x_idx^e`.
    pub fn monomial(idx: usize, e: u32, c: Rat, vars: &Vars) -> Self {
        let mut exps = zero_exps(vars.len());
        exps[idx] = e;
        MPoly::from_terms(vars, vec![(exps, c)])
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(vars: &Vars, terms: Vec<(Exponents, Rat)>) -> Self {
        let mut map: HashMap<Exponents, Rat> = HashMap::with_capacity(terms.len());
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            *map.entry(e).or_insert_with(Rat::zero) += c;
        }
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> &[(Exponents, Rat)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[idx]).max().unwrap_or(0)
    }

    pub fn degree_in_var(&self, name: &str) -> u32 {
        self.var_index(name).map_or(0, |i| self.degree_in(i))
    }

    /// Coefficient of the first term in canonical order.
    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .binary_search_by(|(e, _)| exps.cmp(&e[..]))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rat::zero())
    }

    /// Sum of coefficient bit sizes.
    pub fn bit_size(&self) -> u64 {
        self.terms.iter().map(|(_, c)| bit_size(c)).sum()
    }

    /// Indices of variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.iter().any(|(e, _)| e[i] > 0))
            .collect()
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable that occurs in `self`.
    pub fn with_vars(&self, target: &Vars) -> Result<MPoly, ArithError> {
        if Arc::ptr_eq(&self.vars, target) || self.vars[..] == target[..] {
            return Ok(MPoly {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == name) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.degree_in(i) > 0 {
                        return Err(ArithError::UnknownVariable(name.clone()));
                    }
                    map.push(None);
                }
            }
        }
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = zero_exps(target.len());
                for (i, &k) in e.iter().enumerate() {
                    if let Some(j) = map[i] {
                        ne[j] = k;
                    }
                }
                (ne, c.clone())
            })
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Ok(MPoly {
            vars: target.clone(),
            terms,
        })
    }

    fn aligned<'a>(a: &'a MPoly, b: &'a MPoly) -> (std::borrow::Cow<'a, MPoly>, std::borrow::Cow<'a, MPoly>) {
        use std::borrow::Cow;
        if Arc::ptr_eq(&a.vars, &b.vars) || a.vars[..] == b.vars[..] {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let u = union_vars(&a.vars, &b.vars);
        let a2 = if a.vars[..] == u[..] {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.with_vars(&u).expect("union contains all variables"))
        };
        let b2 = Cow::Owned(b.with_vars(&u).expect("union contains all variables"));
        (a2, b2)
    }

    fn add_impl(a: &MPoly, b: &MPoly, negate_b: bool) -> MPoly {
        let (a, b) = MPoly::aligned(a, b);
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match a.terms[i].0.cmp(&b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (e, c) = &b.terms[j];
                    out.push((e.clone(), if negate_b { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b {
                        &a.terms[i].1 - &b.terms[j].1
                    } else {
                        &a.terms[i].1 + &b.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        for (e, c) in &b.terms[j..] {
            out.push((e.clone(), if negate_b { -c } else { c.clone() }));
        }
        MPoly {
            vars: a.vars.clone(),
            terms: out,
        }
    }

    fn mul_impl(a: &MPoly, b: &MPoly) -> MPoly {
        let (a, b) = MPoly::aligned(a, b);
        if a.is_zero() || b.is_zero() {
            return MPoly::zero(&a.vars);
        }
        let (small, big) = if a.terms.len() <= b.terms.len() {
            (&*a, &*b)
        } else {
            (&*b, &*a)
        };
        if small.terms.len() == 1 {
            let (se, sc) = &small.terms[0];
            let terms = big
                .terms
                .iter()
                .map(|(e, c)| {
                    let ne: Exponents = e.iter().zip(se.iter()).map(|(x, y)| x + y).collect();
                    (ne, c * sc)
                })
                .collect();
            return MPoly {
                vars: a.vars.clone(),
                terms,
            };
        }
        // Integer accumulation avoids a gcd per coefficient operation.
        let da = common_denominator(small.terms.iter().map(|(_, c)| c));
        let db = common_denominator(big.terms.iter().map(|(_, c)| c));
        let ai: Vec<BigInt> = small
            .terms
            .iter()
            .map(|(_, c)| (c * Rat::from_integer(da.clone())).to_integer())
            .collect();
        let bi: Vec<BigInt> = big
            .terms
            .iter()
            .map(|(_, c)| (c * Rat::from_integer(db.clone())).to_integer())
            .collect();
        let mut acc: HashMap<Exponents, BigInt> =
            HashMap::with_capacity(small.terms.len() * big.terms.len() / 2 + 1);
        for (k, (ea, _)) in small.terms.iter().enumerate() {
            for (l, (eb, _)) in big.terms.iter().enumerate() {
                let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let prod = &ai[k] * &bi[l];
                match acc.get_mut(&e) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        let den = Rat::from_integer(da * db);
        let mut terms: Vec<_> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, Rat::from_integer(c) / &den))
            .collect();
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        MPoly {
            vars: a.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut k: u32) -> MPoly {
        let mut result = MPoly::one(&self.vars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial(&self, name: &str) -> Result<MPoly, ArithError> {
        let idx = self
            .var_index(name)
            .ok_or_else(|| ArithError::UnknownVariable(name.to_string()))?;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[idx] > 0)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[idx] -= 1;
                (ne, c * Rat::from_integer(BigInt::from(e[idx])))
            })
            .collect();
        // Lowering one exponent by one keeps lex order among the survivors.
        Ok(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Substitutes the constant `value` for variable `idx`; the context is kept.
    pub fn eval_var(&self, idx: usize, value: &Rat) -> MPoly {
        let deg = self.degree_in(idx) as usize;
        let mut powers = Vec::with_capacity(deg + 1);
        powers.push(Rat::one());
        for i in 1..=deg {
            let next = &powers[i - 1] * value;
            powers.push(next);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[idx] = 0;
                (ne, c * &powers[e[idx] as usize])
            })
            .collect();
        MPoly::from_terms(&self.vars, terms)
    }

    /// Full evaluation; `point` is indexed like the context.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut cache: Vec<Vec<Rat>> = point.iter().map(|p| vec![Rat::one(), p.clone()]).collect();
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap() * &point[i];
                    cache[i].push(next);
                }
                term *= &cache[i][k];
            }
            acc += term;
        }
        acc
    }

    /// Replaces each variable `i` with `subs[i]` (or keeps it when `None`),
    /// producing a polynomial over `target`.
    pub fn substitute(&self, subs: &[Option<MPoly>], target: &Vars) -> Result<MPoly, ArithError> {
        assert_eq!(subs.len(), self.vars.len());
        let mut images = Vec::with_capacity(subs.len());
        for (i, s) in subs.iter().enumerate() {
            let img = match s {
                Some(p) => p.with_vars(target)?,
                None => MPoly::var(&self.vars[i], target)?,
            };
            images.push(img);
        }
        let mut powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::one(target), p.clone()])
            .collect();
        let mut acc = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(c.clone(), target);
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Coefficients with respect to variable `idx`, lowest power first; each
    /// coefficient lives in the same context with exponent `idx` zeroed.
    pub fn coefficients_in(&self, idx: usize) -> Vec<MPoly> {
        let deg = self.degree_in(idx) as usize;
        let mut buckets: Vec<Vec<(Exponents, Rat)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[idx] = 0;
            buckets[e[idx] as usize].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MPoly {
                    vars: self.vars.clone(),
                    terms: t,
                }
            })
            .collect()
    }

    pub fn from_coefficients_in(idx: usize, coeffs: &[MPoly], vars: &Vars) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let c = c.with_vars(vars).expect("coefficient context");
            for (e, v) in c.terms {
                let mut ne = e;
                ne[idx] += k as u32;
                terms.push((ne, v));
            }
        }
        MPoly::from_terms(vars, terms)
    }

    /// Dense univariate view in variable `idx`; fails if another variable occurs.
    pub fn to_upoly(&self, idx: usize) -> Result<UPoly, ArithError> {
        let deg = self.degree_in(idx) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != idx && k > 0) {
                return Err(ArithError::NotUnivariate);
            }
            coeffs[e[idx] as usize] = c.clone();
        }
        Ok(UPoly::new(coeffs))
    }

    pub fn from_upoly(p: &UPoly, idx: usize, vars: &Vars) -> MPoly {
        let mut terms: Vec<_> = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mut e = zero_exps(vars.len());
                e[idx] = k as u32;
                (e, c.clone())
            })
            .collect();
        terms.reverse();
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The single variable this polynomial depends on, if any.
    /// `Ok(None)` means constant.
    pub fn univariate_index(&self) -> Result<Option<usize>, ArithError> {
        match self.used_vars().as_slice() {
            [] => Ok(None),
            [i] => Ok(Some(*i)),
            _ => Err(ArithError::NotUnivariate),
        }
    }

    /// Positive rational `c` with `self / c` integral and primitive; zero for zero.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let den = common_denominator(self.terms.iter().map(|(_, c)| c));
        let num = self
            .terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()));
        Rat::new(num, den)
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Leading coefficient scaled to one.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn try_div(&self, d: &MPoly) -> Option<MPoly> {
        let (a, d) = MPoly::aligned(self, d);
        if d.is_zero() {
            return None;
        }
        if a.is_zero() {
            return Some(MPoly::zero(&a.vars));
        }
        if let Some(c) = d.constant_value() {
            return Some(a.scale(&c.recip()));
        }
        let (de, dc) = d.terms[0].clone();
        let mut rem = a.into_owned();
        let mut quot: Vec<(Exponents, Rat)> = Vec::new();
        while !rem.is_zero() {
            let (re, rc) = &rem.terms[0];
            if re.iter().zip(de.iter()).any(|(x, y)| x < y) {
                return None;
            }
            let qe: Exponents = re.iter().zip(de.iter()).map(|(x, y)| x - y).collect();
            let qc = rc / &dc;
            let t = MPoly {
                vars: rem.vars.clone(),
                terms: vec![(qe.clone(), qc.clone())],
            };
            rem = &rem - &(&t * &*d);
            quot.push((qe, qc));
        }
        Some(MPoly {
            vars: rem.vars.clone(),
            terms: quot,
        })
    }

    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly, ArithError> {
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        self.try_div(d).ok_or(ArithError::InexactDivision)
    }

    /// Removes every power of `d` dividing `self`; returns the quotient and the
    /// multiplicity removed.
    pub fn saturate_by(&self, d: &MPoly) -> (MPoly, u32) {
        let mut cur = self.clone();
        let mut k = 0;
        if d.is_constant() || cur.is_zero() {
            return (cur, 0);
        }
        while let Some(q) = cur.try_div(d) {
            cur = q;
            k += 1;
        }
        (cur, k)
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars[..] == other.vars[..] {
            return self.terms == other.terms;
        }
        (self - other).is_zero()
    }
}

impl Eq for MPoly {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                $body(self, rhs)
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| MPoly::add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| MPoly::add_impl(a, b, true));
forward_binop!(Mul, mul, MPoly::mul_impl);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], p)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}
