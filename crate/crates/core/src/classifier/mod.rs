//! Verified involutions, their type and their fixed-point sets.
//!
//! Data of an involution is held as rational intervals throughout. For
//! rational solutions every interval is a point and all checks are exact;
//! for algebraic solutions the intervals are certified enclosures.

pub mod linalg;
pub mod report;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{eval_mpoly, MPoly, Rat, RatFn, RatInterval};
use crate::candidates::{det3, CandidateFrame, CaseId, Mat3};
use crate::error::{Error, Result};
use crate::solver::{refine, Root2D};
use crate::surface::{ts, Parametrization};

use linalg::{dot, primitive, project_origin, solve_affine, Vec3};

pub use report::{
    aggregate, detect, CaseDiagnostic, CaseOutcome, CaseResult, DetectOptions, Revolution, StageTimes,
    SymmetryReport,
};

pub type IVec3 = [RatInterval; 3];
pub type IMat3 = [[RatInterval; 3]; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Axial,
    Planar,
    Central,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Axial => "axial",
            Kind::Planar => "planar",
            Kind::Central => "central",
        }
    }

    pub fn det_sign(self) -> i8 {
        match self {
            Kind::Axial => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `φ(t, s) = 𝒜 (t, s) + 𝐜` with numbers substituted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcretePhi {
    pub m: [[RatInterval; 2]; 2],
    pub shift: [RatInterval; 2],
}

impl ConcretePhi {
    pub fn exact(&self) -> Option<([[Rat; 2]; 2], [Rat; 2])> {
        let pt = |x: &RatInterval| x.is_point().then(|| x.lo.clone());
        let m = [
            [pt(&self.m[0][0])?, pt(&self.m[0][1])?],
            [pt(&self.m[1][0])?, pt(&self.m[1][1])?],
        ];
        Some((m, [pt(&self.shift[0])?, pt(&self.shift[1])?]))
    }
}

/// The fixed-point set of an involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryElement {
    Point { center: IVec3 },
    Line { point: IVec3, direction: IVec3 },
    /// `normal · x = offset`.
    Plane { normal: IVec3, offset: RatInterval },
}

/// Fixed points of `φ` in the parameter plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedLocus {
    Point([Rat; 2]),
    /// `a t + b s + c = 0` with coprime integers and leading entry positive.
    Line([Rat; 3]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    pub case: CaseId,
    pub root: Root2D,
    pub kind: Kind,
    pub q: IMat3,
    pub b: IVec3,
    pub phi: ConcretePhi,
    /// True when every entry above is an exact rational.
    pub exact: bool,
    pub element: SymmetryElement,
    pub locus: Option<FixedLocus>,
}

fn point_vec(v: &Vec3) -> IVec3 {
    v.clone().map(RatInterval::point)
}

fn exact_vec(v: &IVec3) -> Option<Vec3> {
    v.iter().all(|x| x.is_point()).then(|| v.clone().map(|x| x.lo))
}

impl Involution {
    pub fn det_q(&self) -> i8 {
        self.kind.det_sign()
    }

    pub fn exact_q(&self) -> Option<Mat3<Rat>> {
        let rows: Vec<Vec3> = self.q.iter().filter_map(exact_vec).collect();
        (rows.len() == 3).then(|| [rows[0].clone(), rows[1].clone(), rows[2].clone()])
    }

    pub fn exact_b(&self) -> Option<Vec3> {
        exact_vec(&self.b)
    }

    /// `Q p + b` for an exact involution.
    pub fn apply(&self, p: &Vec3) -> Option<Vec3> {
        let q = self.exact_q()?;
        let b = self.exact_b()?;
        Some(std::array::from_fn(|i| dot(&q[i], p) + &b[i]))
    }
}

impl SymmetryElement {
    pub fn exact_point(&self) -> Option<Vec3> {
        match self {
            SymmetryElement::Point { center } => exact_vec(center),
            SymmetryElement::Line { point, .. } => exact_vec(point),
            SymmetryElement::Plane { normal, offset } => {
                let n = exact_vec(normal)?;
                let d = offset.is_point().then(|| offset.lo.clone())?;
                let k = d / dot(&n, &n);
                Some(n.map(|c| c * &k))
            }
        }
    }

    /// Up to three exact points spanning the element.
    pub fn sample_points(&self) -> Vec<Vec3> {
        let Some(p) = self.exact_point() else {
            return Vec::new();
        };
        let add = |a: &Vec3, b: &Vec3| -> Vec3 { std::array::from_fn(|i| &a[i] + &b[i]) };
        match self {
            SymmetryElement::Point { .. } => vec![p],
            SymmetryElement::Line { direction, .. } => match exact_vec(direction) {
                Some(d) => vec![p.clone(), add(&p, &d)],
                None => vec![p],
            },
            SymmetryElement::Plane { normal, .. } => {
                let Some(n) = exact_vec(normal) else {
                    return vec![p];
                };
                let axis = (0..3).find(|&i| n[i].is_zero()).unwrap_or(2);
                let mut e: Vec3 = std::array::from_fn(|_| Rat::zero());
                e[axis] = Rat::one();
                let t1 = cross(&n, &e);
                let t2 = cross(&n, &t1);
                vec![p.clone(), add(&p, &t1), add(&p, &t2)]
            }
        }
    }

    /// Exact membership test.
    pub fn contains(&self, x: &Vec3) -> Option<bool> {
        Some(match self {
            SymmetryElement::Point { center } => exact_vec(center)? == *x,
            SymmetryElement::Line { point, direction } => {
                let p = exact_vec(point)?;
                let d = exact_vec(direction)?;
                let w: Vec3 = std::array::from_fn(|i| &x[i] - &p[i]);
                cross(&w, &d).iter().all(|c| c.is_zero())
            }
            SymmetryElement::Plane { normal, offset } => {
                let n = exact_vec(normal)?;
                offset.is_point() && dot(&n, x) == offset.lo
            }
        })
    }
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    crate::surface::cross_rat(a, b)
}

fn vfail(msg: impl Into<String>) -> Error {
    Error::VerificationFailed(msg.into())
}

fn identity(i: usize, j: usize) -> Rat {
    if i == j {
        Rat::one()
    } else {
        Rat::zero()
    }
}

/// Type of an involution from its linear part.
///
/// Exact data uses `det Q` and `det(Q − I)`; enclosures use the trace, which
/// is `−1` for half-turns, `1` for reflections and `−3` for the central
/// inversion. `None` while an enclosure is too wide to decide.
pub fn classify(q: &IMat3) -> Option<Kind> {
    if let Some(qe) = exact_mat(q) {
        let det = det3(&qe);
        if det == Rat::one() {
            return Some(Kind::Axial);
        }
        let qmi: Mat3<Rat> = std::array::from_fn(|i| std::array::from_fn(|j| &qe[i][j] - identity(i, j)));
        return Some(if det3(&qmi).is_zero() { Kind::Planar } else { Kind::Central });
    }
    let tr = &(&q[0][0] + &q[1][1]) + &q[2][2];
    let hits: Vec<i64> = [-3, -1, 1]
        .into_iter()
        .filter(|k| tr.contains(&Rat::from_integer((*k).into())))
        .collect();
    match hits.as_slice() {
        [-3] => Some(Kind::Central),
        [-1] => Some(Kind::Axial),
        [1] if !tr.contains(&Rat::from_integer(3.into())) => Some(Kind::Planar),
        _ => None,
    }
}

fn exact_mat(q: &IMat3) -> Option<Mat3<Rat>> {
    let rows: Vec<Vec3> = q.iter().filter_map(exact_vec).collect();
    (rows.len() == 3).then(|| [rows[0].clone(), rows[1].clone(), rows[2].clone()])
}

/// Fixed points of a concrete `φ`: solves `(𝒜 − I) t = −𝐜`.
pub fn fixed_locus(m: &[[Rat; 2]; 2], c: &[Rat; 2]) -> Option<FixedLocus> {
    let a = [
        [&m[0][0] - Rat::one(), m[0][1].clone()],
        [m[1][0].clone(), &m[1][1] - Rat::one()],
    ];
    let rhs = [-&c[0], -&c[1]];
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    if !det.is_zero() {
        let t = (&rhs[0] * &a[1][1] - &a[0][1] * &rhs[1]) / &det;
        let s = (&a[0][0] * &rhs[1] - &rhs[0] * &a[1][0]) / &det;
        return Some(FixedLocus::Point([t, s]));
    }
    let i = (0..2).find(|&i| !a[i][0].is_zero() || !a[i][1].is_zero())?;
    let line = primitive(&[a[i][0].clone(), a[i][1].clone(), -&rhs[i]]);
    // the other row must describe the same line
    let k = 1 - i;
    let other = [a[k][0].clone(), a[k][1].clone(), -&rhs[k]];
    if !cross(&line, &other).iter().all(|x| x.is_zero()) {
        return None;
    }
    Some(FixedLocus::Line(line))
}

impl FixedLocus {
    /// One or two rational parameter points on the locus.
    pub fn sample_points(&self) -> Vec<[Rat; 2]> {
        match self {
            FixedLocus::Point(p) => vec![p.clone()],
            FixedLocus::Line([a, b, c]) => {
                if !a.is_zero() {
                    [Rat::zero(), Rat::one()]
                        .into_iter()
                        .map(|s| [-(b * &s + c) / a, s])
                        .collect()
                } else {
                    let s = -c / b;
                    vec![[Rat::zero(), s.clone()], [Rat::one(), s]]
                }
            }
        }
    }
}

/// The fixed-point set of an exact involution, from `(Q − I) x = −b`.
pub fn element_exact(kind: Kind, q: &Mat3<Rat>, b: &Vec3) -> Result<SymmetryElement> {
    let rows: Vec<Vec3> = (0..3)
        .map(|i| std::array::from_fn(|j| &q[i][j] - identity(i, j)))
        .collect();
    let rhs: Vec<Rat> = b.iter().map(|x| -x).collect();
    let sol = solve_affine(&rows, &rhs)
        .ok_or_else(|| Error::Internal("an involution without fixed points".into()))?;
    let el = match sol.basis.len() {
        0 => SymmetryElement::Point {
            center: point_vec(&sol.point),
        },
        1 => {
            let d = primitive(&sol.basis[0]);
            SymmetryElement::Line {
                point: point_vec(&project_origin(&sol.point, &d)),
                direction: point_vec(&d),
            }
        }
        2 => {
            let n = primitive(&cross(&sol.basis[0], &sol.basis[1]));
            SymmetryElement::Plane {
                offset: RatInterval::point(dot(&n, &sol.point)),
                normal: point_vec(&n),
            }
        }
        _ => return Err(Error::Internal("identity passed as an involution".into())),
    };
    let expected = match kind {
        Kind::Central => 0,
        Kind::Axial => 1,
        Kind::Planar => 2,
    };
    if sol.basis.len() != expected {
        return Err(Error::Internal(format!(
            "{kind} involution with a {}-dimensional fixed set",
            sol.basis.len()
        )));
    }
    Ok(el)
}

/// The fixed-point set from enclosures: the center `b/2`, or the line or
/// plane through it spanned by a column of `Q + I` or normal to a column of
/// `I − Q`.
fn element_interval(kind: Kind, q: &IMat3, b: &IVec3) -> Option<SymmetryElement> {
    let half = RatInterval::point(Rat::new(BigInt::one(), BigInt::from(2)));
    let mid: IVec3 = b.clone().map(|x| &x * &half);
    let col = |sign: i64| -> Option<IVec3> {
        let s = RatInterval::point(Rat::from_integer(sign.into()));
        let m: IMat3 = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let id = RatInterval::point(identity(i, j));
                &id + &(&s * &q[i][j])
            })
        });
        let j = (0..3).max_by(|&x, &y| m[x][x].mid().abs().cmp(&m[y][y].mid().abs()))?;
        let inv = m[j][j].recip()?;
        Some(std::array::from_fn(|i| {
            if i == j {
                RatInterval::point(Rat::one())
            } else {
                &m[i][j] * &inv
            }
        }))
    };
    let idot = |a: &IVec3, c: &IVec3| &(&(&a[0] * &c[0]) + &(&a[1] * &c[1])) + &(&a[2] * &c[2]);
    Some(match kind {
        Kind::Central => SymmetryElement::Point { center: mid },
        Kind::Axial => {
            let d = col(1)?;
            let lam = &idot(&mid, &d) * &idot(&d, &d).recip()?;
            let point = std::array::from_fn(|i| &mid[i] - &(&lam * &d[i]));
            SymmetryElement::Line { point, direction: d }
        }
        Kind::Planar => {
            let n = col(-1)?;
            SymmetryElement::Plane {
                offset: idot(&n, &mid),
                normal: n,
            }
        }
    })
}

fn eval_exact(r: &RatFn, pt: &[Rat; 2]) -> Result<Rat> {
    r.eval(pt).ok_or_else(|| vfail("a denominator vanishes at the solution"))
}

fn eval_box(r: &RatFn, bx: &[RatInterval; 2]) -> Option<RatInterval> {
    let num = eval_mpoly(r.num(), bx);
    let den = eval_mpoly(r.den(), bx);
    Some(&num * &den.recip()?)
}

/// `Q x(t, s) + b − x(φ(t, s))`, which must vanish identically.
pub fn identity_defect(p: &Parametrization, q: &Mat3<Rat>, b: &Vec3, m: &[[Rat; 2]; 2], c: &[Rat; 2]) -> [MPoly; 3] {
    let t = MPoly::var("t", ts()).unwrap();
    let s = MPoly::var("s", ts()).unwrap();
    let row = |i: usize| {
        &(&t.scale(&m[i][0]) + &s.scale(&m[i][1])) + &MPoly::constant(c[i].clone(), ts())
    };
    let subs = [Some(row(0)), Some(row(1))];
    std::array::from_fn(|i| {
        let mut lhs = MPoly::constant(b[i].clone(), ts());
        for j in 0..3 {
            lhs = &lhs + &p.x[j].scale(&q[i][j]);
        }
        let rhs = p.x[i].substitute(&subs, ts()).expect("context is (t, s)");
        &lhs - &rhs
    })
}

/// Substitutes a certified root into the frame and verifies the result.
pub fn instantiate(frame: &CandidateFrame, root: &Root2D, p: &Parametrization) -> Result<Involution> {
    instantiate_with(frame, root, p, 12)
}

/// As [`instantiate`], refining enclosures of algebraic data below `10^-digits`.
pub fn instantiate_with(
    frame: &CandidateFrame,
    root: &Root2D,
    p: &Parametrization,
    digits: u32,
) -> Result<Involution> {
    if !root.certified {
        return Err(vfail("root is not certified"));
    }
    match root.exact() {
        Some((u, v)) => instantiate_exact(frame, root, p, [u, v]),
        None => instantiate_interval(frame, root, digits),
    }
}

fn instantiate_exact(frame: &CandidateFrame, root: &Root2D, p: &Parametrization, pt: [Rat; 2]) -> Result<Involution> {
    let q: Mat3<Rat> = {
        let mut out: Mat3<Rat> = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = eval_exact(&frame.q[i][j], &pt)?;
            }
        }
        out
    };
    let b: Vec3 = {
        let mut out: Vec3 = Default::default();
        for i in 0..3 {
            out[i] = eval_exact(&frame.b[i], &pt)?;
        }
        out
    };
    let mut m: [[Rat; 2]; 2] = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = eval_exact(&frame.phi.m[i][j], &pt)?;
        }
    }
    let c = [eval_exact(&frame.phi.shift[0], &pt)?, eval_exact(&frame.phi.shift[1], &pt)?];

    for i in 0..3 {
        for j in 0..3 {
            let qtq = (0..3).fold(Rat::zero(), |acc, k| acc + &q[k][i] * &q[k][j]);
            if qtq != identity(i, j) {
                return Err(vfail("Q is not orthogonal"));
            }
            let qq = (0..3).fold(Rat::zero(), |acc, k| acc + &q[i][k] * &q[k][j]);
            if qq != identity(i, j) {
                return Err(vfail("Q² ≠ I"));
            }
        }
        let qb = (0..3).fold(b[i].clone(), |acc, k| acc + &q[i][k] * &b[k]);
        if !qb.is_zero() {
            return Err(vfail("b is not in ker(Q + I)"));
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            if &m[i][0] * &m[0][j] + &m[i][1] * &m[1][j] != identity(i, j) {
                return Err(vfail("𝒜² ≠ I"));
            }
        }
    }
    let det = det3(&q);
    if det != Rat::from_integer(frame.case.det_sign.into()) {
        return Err(vfail("det Q does not match the case sign"));
    }
    if identity_defect(p, &q, &b, &m, &c).iter().any(|d| !d.is_zero()) {
        return Err(vfail("Q·x + b ≠ x∘φ"));
    }
    let qi: IMat3 = q.clone().map(|r| point_vec(&r));
    let kind = classify(&qi).expect("exact data classifies");
    let element = element_exact(kind, &q, &b)?;
    let locus = fixed_locus(&m, &c);
    if let Some(l) = &locus {
        for st in l.sample_points() {
            let x = p.eval(&st[0], &st[1]);
            if element.contains(&x) != Some(true) {
                return Err(vfail("image of the fixed locus lies outside the symmetry element"));
            }
        }
    }
    Ok(Involution {
        case: frame.case,
        root: root.clone(),
        kind,
        q: qi,
        b: point_vec(&b),
        phi: ConcretePhi {
            m: m.map(|r| r.map(RatInterval::point)),
            shift: c.map(RatInterval::point),
        },
        exact: true,
        element,
        locus,
    })
}

fn instantiate_interval(frame: &CandidateFrame, root: &Root2D, digits: u32) -> Result<Involution> {
    let target = Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let mut last_err = "precision cap reached".to_string();
    for bits in [32u32, 64, 128, 256, 512, 1024, 2048] {
        let w = Rat::new(BigInt::one(), BigInt::one() << bits);
        let r = refine(root, &w)?;
        let bx = [
            RatInterval::new(r.u.lo.clone(), r.u.hi.clone()),
            RatInterval::new(r.v.lo.clone(), r.v.hi.clone()),
        ];
        let ev = |f: &RatFn| eval_box(f, &bx);
        let Some(q) = try_mat3(|i, j| ev(&frame.q[i][j])) else {
            continue;
        };
        let Some(b) = try_vec3(|i| ev(&frame.b[i])) else {
            continue;
        };
        let (Some(m00), Some(m01), Some(m10), Some(m11), Some(c0), Some(c1)) = (
            ev(&frame.phi.m[0][0]),
            ev(&frame.phi.m[0][1]),
            ev(&frame.phi.m[1][0]),
            ev(&frame.phi.m[1][1]),
            ev(&frame.phi.shift[0]),
            ev(&frame.phi.shift[1]),
        ) else {
            continue;
        };
        let m = [[m00, m01], [m10, m11]];
        // an enclosure that excludes the expected value disproves it
        for i in 0..3 {
            for j in 0..3 {
                let id = identity(i, j);
                let qtq = (0..3).fold(RatInterval::point(Rat::zero()), |acc, k| &acc + &(&q[k][i] * &q[k][j]));
                let qq = (0..3).fold(RatInterval::point(Rat::zero()), |acc, k| &acc + &(&q[i][k] * &q[k][j]));
                if !qtq.contains(&id) || !qq.contains(&id) {
                    return Err(vfail("enclosure of Q excludes an orthogonal involution"));
                }
            }
            let qb = (0..3).fold(b[i].clone(), |acc, k| &acc + &(&q[i][k] * &b[k]));
            if !qb.contains_zero() {
                return Err(vfail("enclosure excludes (Q + I) b = 0"));
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                let sq = &(&m[i][0] * &m[0][j]) + &(&m[i][1] * &m[1][j]);
                if !sq.contains(&identity(i, j)) {
                    return Err(vfail("enclosure excludes 𝒜² = I"));
                }
            }
        }
        let Some(kind) = classify(&q) else {
            last_err = "trace enclosure too wide to classify".into();
            continue;
        };
        if kind.det_sign() != frame.case.det_sign {
            return Err(vfail("det Q does not match the case sign"));
        }
        let wide = q.iter().flatten().chain(b.iter()).any(|x| x.width() >= target);
        if wide {
            last_err = "enclosures wider than the requested precision".into();
            continue;
        }
        let Some(element) = element_interval(kind, &q, &b) else {
            continue;
        };
        return Ok(Involution {
            case: frame.case,
            root: r,
            kind,
            q,
            b,
            phi: ConcretePhi {
                m,
                shift: [c0, c1],
            },
            exact: false,
            element,
            locus: None,
        });
    }
    Err(vfail(last_err))
}

fn try_vec3(f: impl Fn(usize) -> Option<RatInterval>) -> Option<IVec3> {
    Some([f(0)?, f(1)?, f(2)?])
}

fn try_mat3(f: impl Fn(usize, usize) -> Option<RatInterval>) -> Option<IMat3> {
    Some([
        try_vec3(|j| f(0, j))?,
        try_vec3(|j| f(1, j))?,
        try_vec3(|j| f(2, j))?,
    ])
}
