use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mpoly::{MPoly, Vars};
use super::rat::Rat;
use super::ArithError;

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let ctx = (&num + &den).vars().clone();
        let num = num.with_vars(&ctx)?;
        let den = den.with_vars(&ctx)?;
        if num.is_zero() {
            return Ok(RatFn {
                num,
                den: MPoly::one(&ctx),
            });
        }
        if let Some(c) = den.constant_value() {
            return Ok(RatFn {
                num: num.scale(&c.recip()),
                den: MPoly::one(&ctx),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.try_div(&g).unwrap(), den.try_div(&g).unwrap())
        };
        let lc = den.leading_coeff().unwrap().clone();
        Ok(RatFn {
            num: num.scale(&lc.recip()).with_vars(&ctx)?,
            den: den.monic().with_vars(&ctx)?,
        })
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.vars());
        RatFn { num: p, den }
    }

    pub fn constant(c: Rat, vars: &Vars) -> Self {
        RatFn::from_poly(MPoly::constant(c, vars))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn with_vars(&self, target: &Vars) -> Result<RatFn, ArithError> {
        Ok(RatFn {
            num: self.num.with_vars(target)?,
            den: self.den.with_vars(target)?,
        })
    }

    pub fn recip(&self) -> Result<RatFn, ArithError> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: u32) -> RatFn {
        RatFn {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        RatFn {
            num: self.num.scale(c),
            den: if c.is_zero() {
                MPoly::one(self.den.vars())
            } else {
                self.den.clone()
            },
        }
    }

    /// Evaluates at a point of the full context; `None` if the denominator vanishes.
    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Substitutes constants for some variables, keeping the context.
    pub fn eval_vars(&self, assign: &[(usize, Rat)]) -> Result<RatFn, ArithError> {
        let mut n = self.num.clone();
        let mut d = self.den.clone();
        for (i, x) in assign {
            n = n.eval_var(*i, x);
            d = d.eval_var(*i, x);
        }
        RatFn::new(n, d)
    }
}

/// Substitutes a rational function for every variable of `p`.
///
/// The result is reduced; when all substitutions are polynomial the denominator
/// is the constant one.
pub fn compose(p: &MPoly, subs: &BTreeMap<String, RatFn>) -> Result<RatFn, ArithError> {
    let mut target: Option<Vars> = None;
    for name in p.used_vars().iter().map(|&i| &p.vars()[i]) {
        let r = subs
            .get(name)
            .ok_or_else(|| ArithError::MissingSubstitution(name.clone()))?;
        target = Some(match target {
            None => r.vars().clone(),
            Some(t) => (MPoly::zero(&t) + MPoly::zero(r.vars())).vars().clone(),
        });
    }
    let target = match target {
        Some(t) => t,
        None => {
            let c = p.constant_value().unwrap_or_else(Rat::zero);
            return Ok(RatFn::constant(c, p.vars()));
        }
    };
    let images: Vec<Option<RatFn>> = p
        .vars()
        .iter()
        .enumerate()
        .map(|(i, name)| {
            if p.degree_in(i) == 0 {
                Ok(None)
            } else {
                subs[name].with_vars(&target).map(Some)
            }
        })
        .collect::<Result<_, _>>()?;
    // Common denominator: each variable's denominator to its maximal degree.
    let mut den = MPoly::one(&target);
    let mut num_pows: Vec<Vec<MPoly>> = Vec::new();
    let mut den_pows: Vec<Vec<MPoly>> = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let deg = p.degree_in(i) as usize;
        match img {
            None => {
                num_pows.push(Vec::new());
                den_pows.push(Vec::new());
            }
            Some(r) => {
                let mut np = vec![MPoly::one(&target)];
                let mut dp = vec![MPoly::one(&target)];
                for k in 1..=deg {
                    np.push(&np[k - 1] * r.num());
                    dp.push(&dp[k - 1] * r.den());
                }
                den = &den * &dp[deg];
                num_pows.push(np);
                den_pows.push(dp);
            }
        }
    }
    let mut acc = MPoly::zero(&target);
    for (e, c) in p.terms() {
        let mut term = MPoly::constant(c.clone(), &target);
        for (i, &k) in e.iter().enumerate() {
            if images[i].is_none() {
                continue;
            }
            let deg = p.degree_in(i) as usize;
            let k = k as usize;
            term = &term * &num_pows[i][k];
            if k < deg {
                term = &term * &den_pows[i][deg - k];
            }
        }
        acc = &acc + &term;
    }
    RatFn::new(acc, den)
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone()).expect("nonzero den");
        }
        RatFn::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .expect("nonzero den")
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + &(-o)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        if self.is_polynomial() && o.is_polynomial() {
            let n = &self.num * &o.num;
            let d = &self.den * &o.den;
            return RatFn::new(n, d).expect("nonzero den");
        }
        RatFn::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero den")
    }
}

impl Div for &RatFn {
    type Output = Result<RatFn, ArithError>;
    fn div(self, o: &RatFn) -> Result<RatFn, ArithError> {
        if o.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        RatFn::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> Self {
        RatFn::from_poly(p)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
