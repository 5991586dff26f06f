//! The six solvable shapes of the parameter-plane involution and the
//! symbolic frame `(Q, b)` they induce.
//!
//! A surface involution `f(x) = Qx + b` restricts to an affine involution
//! `φ(t, s) = 𝒜 (t, s) + 𝐜` of the parameter plane. Each configuration fixes
//! the shape of `𝒜` and `𝐜` up to two unknowns `(u, v)`; together with a sign
//! for `det Q` this gives twelve cases.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::arith::ratfn::compose;
use crate::arith::rat::int;
use crate::arith::{vars, MPoly, Rat, RatFn, Vars};
use crate::error::{Error, Result};
use crate::surface::{cross_rat, FundamentalForm, Parametrization};

/// The unknown context `(u, v)`.
pub fn uv() -> &'static Vars {
    static UV: OnceLock<Vars> = OnceLock::new();
    UV.get_or_init(|| vars(&["u", "v"]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Config {
    A,
    B,
    C,
    D1,
    D2i,
    D2ii,
}

impl Config {
    pub const ALL: [Config; 6] = [
        Config::A,
        Config::B,
        Config::C,
        Config::D1,
        Config::D2i,
        Config::D2ii,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Config::A => "A",
            Config::B => "B",
            Config::C => "C",
            Config::D1 => "D1",
            Config::D2i => "D2i",
            Config::D2ii => "D2ii",
        }
    }

    /// Names of the unknowns `(u, v)` in the usual notation, where `m21` is
    /// the lower-left entry of `𝒜` and `c1, c2` the shift.
    pub fn unknowns(self) -> (&'static str, &'static str) {
        match self {
            Config::A => ("c1", "c2"),
            Config::B => ("m12", "c2"),
            Config::C => ("m12", "c1"),
            Config::D1 => ("m11", "m21"),
            Config::D2i => ("m21", "c2"),
            Config::D2ii => ("c1", "c2"),
        }
    }
}

/// One of the twelve (configuration, sign of det Q) pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseId {
    pub config: Config,
    pub det_sign: i8,
}

impl CaseId {
    pub fn new(config: Config, det_sign: i8) -> Self {
        assert!(det_sign == 1 || det_sign == -1);
        CaseId { config, det_sign }
    }

    /// All cases, direct before opposite within each configuration.
    pub fn all() -> Vec<CaseId> {
        Config::ALL
            .iter()
            .flat_map(|&c| [CaseId::new(c, 1), CaseId::new(c, -1)])
            .collect()
    }

    pub fn index(self) -> usize {
        CaseId::all().iter().position(|c| *c == self).unwrap()
    }
}

impl PartialOrd for CaseId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CaseId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.config, -self.det_sign).cmp(&(other.config, -other.det_sign))
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.det_sign > 0 { '+' } else { '-' };
        write!(f, "{}{}", self.config.name(), s)
    }
}

impl FromStr for CaseId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (body, sign) = match s.chars().last() {
            Some('+') => (&s[..s.len() - 1], 1),
            Some('-') => (&s[..s.len() - 1], -1),
            _ => return Err(format!("case `{}` needs a trailing + or -", s)),
        };
        let config = Config::ALL
            .iter()
            .find(|c| c.name().eq_ignore_ascii_case(body))
            .ok_or_else(|| format!("unknown case `{}`", s))?;
        Ok(CaseId::new(*config, sign))
    }
}

/// `φ(t, s) = 𝒜 (t, s) + 𝐜` with entries rational in `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTemplate {
    pub config: Config,
    /// `𝒜` as `[[m11, m12], [m21, m22]]`.
    pub m: [[RatFn; 2]; 2],
    pub shift: [RatFn; 2],
    pub delta: RatFn,
    /// Polynomials in `(u, v)` that must not vanish.
    pub side_conditions: Vec<MPoly>,
}

fn rf(p: MPoly) -> RatFn {
    RatFn::from_poly(p)
}

fn rc(k: i64) -> RatFn {
    RatFn::constant(int(k), uv())
}

/// Substitutes `t -> c1, s -> c2` in a polynomial of `(t, s)`.
pub fn at_shift(p: &MPoly, shift: &[RatFn; 2]) -> RatFn {
    let mut subs = BTreeMap::new();
    subs.insert("t".to_string(), shift[0].clone());
    subs.insert("s".to_string(), shift[1].clone());
    compose(p, &subs)
        .expect("substitution covers t and s")
        .with_vars(uv())
        .expect("result lives in (u, v)")
}

pub fn phi_template(config: Config, form: &FundamentalForm) -> PhiTemplate {
    let u = MPoly::var("u", uv()).unwrap();
    let v = MPoly::var("v", uv()).unwrap();
    let (ru, rv) = (rf(u.clone()), rf(v.clone()));
    let zero = rc(0);
    let one = rc(1);
    let minus_one = rc(-1);
    let half = RatFn::constant(Rat::new(1.into(), 2.into()), uv());
    let (m, shift, side) = match config {
        Config::A => (
            [[minus_one.clone(), zero.clone()], [zero.clone(), minus_one.clone()]],
            [ru, rv],
            vec![],
        ),
        Config::B => (
            [[one.clone(), ru.clone()], [zero.clone(), minus_one.clone()]],
            [&(&(-&ru) * &rv) * &half, rv],
            vec![],
        ),
        Config::C => (
            [[minus_one.clone(), ru], [zero.clone(), one.clone()]],
            [rv, zero.clone()],
            vec![],
        ),
        Config::D1 => {
            let m12 = RatFn::new(&MPoly::one(uv()) - &u.pow(2), v.clone()).unwrap();
            (
                [[ru.clone(), m12], [rv, -&ru]],
                [zero.clone(), zero.clone()],
                vec![v.clone()],
            )
        }
        Config::D2i => (
            [[one.clone(), zero.clone()], [ru, minus_one.clone()]],
            [zero.clone(), rv],
            vec![u.clone(), v.clone()],
        ),
        Config::D2ii => {
            let shift = [ru.clone(), rv.clone()];
            let e_c = at_shift(&form.e, &shift);
            let f_c = at_shift(&form.f, &shift);
            let (a0, b0, c0) = (
                RatFn::constant(form.a.clone(), uv()),
                RatFn::constant(form.b.clone(), uv()),
                RatFn::constant(form.c.clone(), uv()),
            );
            let uu = &ru * &ru;
            let vv = &rv * &rv;
            let uvp = &ru * &rv;
            let num = &(&(-&(&uu * &e_c)) - &(&uvp * &(&f_c - &b0))) + &(&c0 * &vv);
            let den = &(&(&a0 * &uu) + &(&uvp * &b0.scale(&int(2)))) + &(&c0 * &vv);
            let a = (&num / &den).expect("denominator is nonzero");
            let c = (&(&rv * &(&a - &one)) / &ru).expect("u is a variable");
            let b = (&(-&(&(&one + &a) * &ru)) / &rv).expect("v is a variable");
            let num_p = num.num().clone();
            let den_p = den.num().clone();
            let a_minus_1 = &num_p - &den_p;
            (
                [[a.clone(), b], [c, -&a]],
                shift,
                vec![u.clone(), v.clone(), a_minus_1.primitive(), den_p.primitive()],
            )
        }
    };
    let delta = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    PhiTemplate {
        config,
        m,
        shift,
        delta,
        side_conditions: side,
    }
}

/// The three metric relations at the shift, with denominators cleared.
///
/// An involution preserves the first fundamental form, so
/// `𝒜ᵀ I(𝐜) 𝒜 = I(0)`, which yields
/// `E(𝐜)Δ² = C m21² + A m22² − 2B m21 m22`,
/// `F(𝐜)Δ² = B(m12 m21 + m11 m22) − A m12 m22 − C m11 m21`,
/// `G(𝐜)Δ² = A m12² − 2B m11 m12 + C m11²`.
pub fn fff_constraints(form: &FundamentalForm, phi: &PhiTemplate) -> Vec<MPoly> {
    let [[a, b], [c, d]] = &phi.m;
    let k = |r: &Rat| RatFn::constant(r.clone(), uv());
    let (ca, cb, cc) = (k(&form.a), k(&form.b), k(&form.c));
    let d2 = &phi.delta * &phi.delta;
    let two = rc(2);
    let e_rel = &(&(&cc * &(c * c)) + &(&ca * &(d * d))) - &(&(&two * &cb) * &(c * d));
    let f_rel = &(&(&cb * &(&(b * c) + &(a * d))) - &(&ca * &(b * d))) - &(&cc * &(a * c));
    let g_rel = &(&(&ca * &(b * b)) - &(&(&two * &cb) * &(a * b))) + &(&cc * &(a * a));
    let lhs = [&form.e, &form.f, &form.g].map(|p| &at_shift(p, &phi.shift) * &d2);
    lhs.iter()
        .zip([e_rel, f_rel, g_rel])
        .map(|(l, r)| (l - &r).num().clone())
        .filter(|p| !p.is_zero())
        .map(|p| p.primitive())
        .collect()
}

pub type Mat3<T> = [[T; 3]; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateFrame {
    pub case: CaseId,
    pub phi: PhiTemplate,
    /// Columns `xt(0)`, `xs(0)`, `(xt × xs)(0)`.
    pub m: Mat3<Rat>,
    pub l: Mat3<RatFn>,
    pub q: Mat3<RatFn>,
    pub b: [RatFn; 3],
}

pub fn inverse3(m: &Mat3<Rat>) -> Option<Mat3<Rat>> {
    let cof = |i: usize, j: usize| {
        let r = |k: usize| (i + k) % 3;
        let c = |k: usize| (j + k) % 3;
        &m[r(1)][c(1)] * &m[r(2)][c(2)] - &m[r(1)][c(2)] * &m[r(2)][c(1)]
    };
    let det = (0..3).fold(Rat::zero(), |acc, j| acc + &m[0][j] * cof(0, j));
    if det.is_zero() {
        return None;
    }
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| cof(j, i) / &det)
    }))
}

pub fn det3<T>(m: &Mat3<T>) -> T
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T> + std::ops::Sub<&'a T, Output = T>,
    T: std::ops::Add<T, Output = T>,
{
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
    let t0 = &m[0][0] * &minor(1, 2, 2, 1);
    let t1 = &m[0][1] * &minor(2, 0, 0, 2);
    let t2 = &m[0][2] * &minor(0, 1, 1, 0);
    t0 + t1 + t2
}

pub fn frame(p: &Parametrization, form: &FundamentalForm, case: CaseId) -> Result<CandidateFrame> {
    let phi = phi_template(case.config, form);
    let z = [Rat::zero(), Rat::zero()];
    let xt0 = p.xt.clone().map(|c| c.eval(&z));
    let xs0 = p.xs.clone().map(|c| c.eval(&z));
    let n0 = cross_rat(&xt0, &xs0);
    let m: Mat3<Rat> = std::array::from_fn(|i| [xt0[i].clone(), xs0[i].clone(), n0[i].clone()]);
    let minv = inverse3(&m).ok_or_else(|| Error::Internal("base point is singular".into()))?;

    let xt_c = p.xt.clone().map(|c| at_shift(&c, &phi.shift));
    let xs_c = p.xs.clone().map(|c| at_shift(&c, &phi.shift));
    let n_c = p.normal().map(|c| at_shift(&c, &phi.shift));
    let sd = phi.delta.scale(&int(case.det_sign as i64));
    let [[a, b], [c, d]] = &phi.m;
    let l: Mat3<RatFn> = std::array::from_fn(|i| {
        [
            &(&xt_c[i] * a) + &(&xs_c[i] * c),
            &(&xt_c[i] * b) + &(&xs_c[i] * d),
            &sd * &n_c[i],
        ]
    });
    let q: Mat3<RatFn> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(rc(0), |acc, k| &acc + &l[i][k].scale(&minv[k][j]))
        })
    });
    let x_c = p.x.clone().map(|c| at_shift(&c, &phi.shift));
    let b: [RatFn; 3] = std::array::from_fn(|i| {
        (0..3).fold(x_c[i].clone(), |acc, j| &acc - &q[i][j].scale(&p.origin_point[j]))
    });
    Ok(CandidateFrame {
        case,
        phi,
        m,
        l,
        q,
        b,
    })
}

impl PhiTemplate {
    /// Checks `𝒜² = I` and `(𝒜 + I)𝐜 = 0` symbolically.
    pub fn is_involutive(&self) -> bool {
        let m = &self.m;
        let one = rc(1);
        let sq = |i: usize, j: usize| &(&m[i][0] * &m[0][j]) + &(&m[i][1] * &m[1][j]);
        let id_ok = (0..2).all(|i| {
            (0..2).all(|j| {
                let want = if i == j { one.clone() } else { rc(0) };
                sq(i, j) == want
            })
        });
        let shift_ok = (0..2).all(|i| {
            let s = &(&(&m[i][0] * &self.shift[0]) + &(&m[i][1] * &self.shift[1])) + &self.shift[i];
            s.is_zero()
        });
        id_ok && shift_ok
    }
}

/// `Δ` as a constant, if it is one.
pub fn constant_delta(phi: &PhiTemplate) -> Option<Rat> {
    if phi.delta.is_polynomial() {
        phi.delta.num().constant_value()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::int;
    use crate::surface::fundamental_form;

    fn paraboloid() -> Parametrization {
        Parametrization::parse("t", "s", "t^2+s^2").unwrap()
    }

    fn enneper() -> Parametrization {
        Parametrization::parse("-s^3+3*s*t^2+3*s", "3*s^2*t-t^3+3*t", "3*s^2-3*t^2").unwrap()
    }

    #[test]
    fn templates_are_involutions() {
        for p in [paraboloid(), enneper()] {
            let form = fundamental_form(&p).unwrap();
            for c in Config::ALL {
                let phi = phi_template(c, &form);
                assert!(phi.is_involutive(), "{:?}", c);
                let want = if c == Config::A { 1 } else { -1 };
                assert_eq!(constant_delta(&phi), Some(int(want)), "{:?}", c);
            }
        }
    }

    #[test]
    fn case_a_shape() {
        let form = fundamental_form(&paraboloid()).unwrap();
        let phi = phi_template(Config::A, &form);
        assert_eq!(phi.m[0][0], rc(-1));
        assert_eq!(phi.m[0][1], rc(0));
        assert_eq!(phi.shift[0], rf(MPoly::var("u", uv()).unwrap()));
        let cons = fff_constraints(&form, &phi);
        let want: Vec<MPoly> = ["4*u^2", "4*u*v", "4*v^2"]
            .iter()
            .map(|s| MPoly::parse(s, uv()).unwrap().primitive())
            .collect();
        assert_eq!(cons, want);
    }

    #[test]
    fn case_c_constraints() {
        // F(c) = -A b - B and G(c) = A b^2 + 2 B b + C with c = (c1, 0)
        let form = fundamental_form(&enneper()).unwrap();
        let phi = phi_template(Config::C, &form);
        let cons = fff_constraints(&form, &phi);
        let f_c = at_shift(&form.f, &phi.shift);
        let g_c = at_shift(&form.g, &phi.shift);
        let b = rf(MPoly::var("u", uv()).unwrap());
        let a9 = rc(9);
        let f_rel = &f_c + &(&a9 * &b);
        let g_rel = &g_c - &(&(&a9 * &(&b * &b)) + &a9);
        assert!(cons.contains(&f_rel.num().primitive()));
        assert!(cons.contains(&g_rel.num().primitive()));
    }

    #[test]
    fn case_b_g_relation() {
        // G(c) = A b^2 - 2 B b + C, with A != 1 so the leading factor matters
        let p = Parametrization::parse("2*t+s", "2*s", "t^2").unwrap();
        let form = fundamental_form(&p).unwrap();
        assert_eq!((form.a.clone(), form.b.clone(), form.c.clone()), (int(4), int(2), int(5)));
        let phi = phi_template(Config::B, &form);
        let g_c = at_shift(&form.g, &phi.shift);
        let b = rf(MPoly::var("u", uv()).unwrap());
        let rel = &g_c - &(&(&(&b * &b).scale(&int(4)) - &b.scale(&int(4))) + &rc(5));
        assert!(fff_constraints(&form, &phi).contains(&rel.num().primitive()));
    }

    #[test]
    fn d2ii_paraboloid_quotient() {
        let form = fundamental_form(&paraboloid()).unwrap();
        let phi = phi_template(Config::D2ii, &form);
        let want = RatFn::new(
            MPoly::parse("-u^2*(1+4*u^2) - u*v*(4*u*v) + v^2", uv()).unwrap(),
            MPoly::parse("u^2+v^2", uv()).unwrap(),
        )
        .unwrap();
        assert_eq!(phi.m[0][0], want);
    }

    #[test]
    fn frames() {
        let p = paraboloid();
        let form = fundamental_form(&p).unwrap();
        let f = frame(&p, &form, CaseId::new(Config::D1, 1)).unwrap();
        let id: Mat3<Rat> = std::array::from_fn(|i| std::array::from_fn(|j| int((i == j) as i64)));
        assert_eq!(f.m, id);
        let e = enneper();
        let form = fundamental_form(&e).unwrap();
        let f = frame(&e, &form, CaseId::new(Config::D1, 1)).unwrap();
        let want = [[0, 3, 0], [3, 0, 0], [0, 0, -9]].map(|r| r.map(int));
        assert_eq!(f.m, want);
        // shift zero: b = x(0) - Q x(0)
        for i in 0..3 {
            let mut expect = RatFn::constant(e.origin_point[i].clone(), uv());
            for j in 0..3 {
                expect = &expect - &f.q[i][j].scale(&e.origin_point[j]);
            }
            assert_eq!(f.b[i], expect);
        }
        for case in CaseId::all() {
            let f = frame(&e, &form, case).unwrap();
            let n = e.normal().map(|c| at_shift(&c, &f.phi.shift));
            for i in 0..3 {
                assert_eq!(f.l[i][2], &f.phi.delta.scale(&int(case.det_sign as i64)) * &n[i]);
            }
        }
    }

    #[test]
    fn case_ids() {
        assert_eq!(CaseId::all().len(), 12);
        assert_eq!("D2ii-".parse::<CaseId>().unwrap(), CaseId::new(Config::D2ii, -1));
        assert_eq!(CaseId::new(Config::B, 1).to_string(), "B+");
        assert!("D3+".parse::<CaseId>().is_err());
        let mut v = CaseId::all();
        v.reverse();
        v.sort();
        assert_eq!(v, CaseId::all());
    }
}
