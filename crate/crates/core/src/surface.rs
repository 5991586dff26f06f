//! Parametrized surfaces and their first fundamental form.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{vars, MPoly, Rat, Vars};
use crate::error::{Error, Result};

pub type Vec3<T> = [T; 3];

/// The parameter context `(t, s)`.
pub fn ts() -> &'static Vars {
    static TS: OnceLock<Vars> = OnceLock::new();
    TS.get_or_init(|| vars(&["t", "s"]))
}

pub fn cross(a: &Vec3<MPoly>, b: &Vec3<MPoly>) -> Vec3<MPoly> {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot(a: &Vec3<MPoly>, b: &Vec3<MPoly>) -> MPoly {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn cross_rat(a: &Vec3<Rat>, b: &Vec3<Rat>) -> Vec3<Rat> {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Affine reparametrization `(t, s) -> (αt + βs + γ, δt + εs + ζ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubstitution {
    pub rows: [[Rat; 3]; 2],
}

/// A polynomial parametrization `x(t, s)` with cached partials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub x: Vec3<MPoly>,
    pub n: u32,
    pub xt: Vec3<MPoly>,
    pub xs: Vec3<MPoly>,
    pub origin_point: Vec3<Rat>,
    pub origin_normal: Vec3<Rat>,
    /// Substitution applied by [`prepare`], if any.
    pub substitution: Option<AffineSubstitution>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalForm {
    pub e: MPoly,
    pub f: MPoly,
    pub g: MPoly,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

fn eval0(p: &MPoly) -> Rat {
    p.eval(&[Rat::zero(), Rat::zero()])
}

impl Parametrization {
    /// Builds a parametrization from three polynomials in `t` and `s`.
    pub fn new(x: MPoly, y: MPoly, z: MPoly) -> Result<Self> {
        let comps = [x, y, z].map(|p| p.with_vars(ts()));
        let [x, y, z] = comps;
        Ok(Self::from_components([x?, y?, z?]))
    }

    /// Parses three expressions in `t` and `s`.
    pub fn parse(x: &str, y: &str, z: &str) -> Result<Self> {
        Self::new(
            MPoly::parse(x, ts())?,
            MPoly::parse(y, ts())?,
            MPoly::parse(z, ts())?,
        )
    }

    fn from_components(x: Vec3<MPoly>) -> Self {
        let n = x.iter().map(|p| p.total_degree()).max().unwrap_or(0);
        let xt = x.clone().map(|p| p.partial("t").expect("t in context"));
        let xs = x.clone().map(|p| p.partial("s").expect("s in context"));
        let origin_point = x.clone().map(|p| eval0(&p));
        let ot = xt.clone().map(|p| eval0(&p));
        let os = xs.clone().map(|p| eval0(&p));
        let origin_normal = cross_rat(&ot, &os);
        Parametrization {
            x,
            n,
            xt,
            xs,
            origin_point,
            origin_normal,
            substitution: None,
        }
    }

    /// `xt × xs` as polynomials.
    pub fn normal(&self) -> Vec3<MPoly> {
        cross(&self.xt, &self.xs)
    }

    pub fn is_regular_at_origin(&self) -> bool {
        self.origin_normal.iter().any(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &Rat, s: &Rat) -> Vec3<Rat> {
        let pt = [t.clone(), s.clone()];
        self.x.clone().map(|p| p.eval(&pt))
    }

    /// Applies `(t, s) -> (αt + βs + γ, δt + εs + ζ)`.
    pub fn substitute(&self, sub: &AffineSubstitution) -> Self {
        let t = MPoly::var("t", ts()).unwrap();
        let s = MPoly::var("s", ts()).unwrap();
        let row = |r: &[Rat; 3]| {
            &(&t.scale(&r[0]) + &s.scale(&r[1])) + &MPoly::constant(r[2].clone(), ts())
        };
        let subs = [Some(row(&sub.rows[0])), Some(row(&sub.rows[1]))];
        let x = self
            .x
            .clone()
            .map(|p| p.substitute(&subs, ts()).expect("context is (t, s)"));
        let mut out = Self::from_components(x);
        out.substitution = Some(sub.clone());
        out
    }

    /// The rigid image `R·x + w` (R need not be orthogonal).
    pub fn transform(&self, r: &[[Rat; 3]; 3], w: &Vec3<Rat>) -> Self {
        let x = std::array::from_fn(|i| {
            let mut acc = MPoly::constant(w[i].clone(), ts());
            for j in 0..3 {
                acc = &acc + &self.x[j].scale(&r[i][j]);
            }
            acc
        });
        Self::from_components(x)
    }
}

/// True iff `xt × xs` is a nonzero constant direction, i.e. the input is a plane.
pub fn plane_check(p: &Parametrization) -> bool {
    let n = p.normal();
    let Some(k) = (0..3).find(|&i| !n[i].is_zero()) else {
        return false;
    };
    let lk = n[k].leading_coeff().unwrap().clone();
    n.iter().all(|ni| {
        let li = ni.leading_coeff().cloned().unwrap_or_else(Rat::zero);
        ni.scale(&lk) == n[k].scale(&li)
    })
}

/// Moves the base point to a regular point of the parametrization.
///
/// Returns the input unchanged when `x(0, 0)` is already regular; otherwise
/// tries up to 16 random affine substitutions with coefficients in `-5..=5`.
pub fn prepare(raw: &Parametrization, seed: u64) -> Result<Parametrization> {
    if raw.normal().iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateSurface);
    }
    if raw.is_regular_at_origin() {
        return Ok(raw.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let mut draw = || Rat::from_integer(rng.gen_range(-5i64..=5).into());
        let rows = [[draw(), draw(), draw()], [draw(), draw(), draw()]];
        let det = &rows[0][0] * &rows[1][1] - &rows[0][1] * &rows[1][0];
        if det.is_zero() {
            continue;
        }
        let p = raw.substitute(&AffineSubstitution { rows });
        if p.is_regular_at_origin() {
            return Ok(p);
        }
    }
    Err(Error::RetriesExhausted)
}

pub fn fundamental_form(p: &Parametrization) -> Result<FundamentalForm> {
    let e = dot(&p.xt, &p.xt);
    let f = dot(&p.xt, &p.xs);
    let g = dot(&p.xs, &p.xs);
    let (a, b, c) = (eval0(&e), eval0(&f), eval0(&g));
    let gram = &a * &c - &b * &b;
    if !(a.is_positive() && c.is_positive() && gram.is_positive()) {
        return Err(Error::Internal(
            "first fundamental form is not positive definite at the base point".into(),
        ));
    }
    Ok(FundamentalForm { e, f, g, a, b, c })
}
