//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 7 asks for an empty report on a surface that keeps a mirror
//! symmetry. It is run and printed like the others, but a failure there does
//! not change the exit status.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfsym::arith::rat::{int, rat};
use surfsym::arith::{vars, MPoly, Rat, RatInterval};
use surfsym::candidates::{det3, CaseId, Config};
use surfsym::classifier::{detect, identity_defect, CaseOutcome, DetectOptions, Involution, Kind, SymmetryElement, SymmetryReport};
use surfsym::solver::{solve_real, SolutionSet};
use surfsym::surface::Parametrization;
use surfsym::systems::{PolySystem, Provenance};

type Vec3 = [Rat; 3];
type Mat = [[Rat; 3]; 3];
type Check = Result<String, String>;

struct Criterion {
    n: u32,
    name: &'static str,
    check: fn() -> Check,
    /// Expected to fail; reported but not counted.
    known: bool,
}

fn enneper() -> Parametrization {
    Parametrization::parse("-s^3+3*s*t^2+3*s", "3*s^2*t-t^3+3*t", "3*s^2-3*t^2").unwrap()
}

fn paraboloid() -> Parametrization {
    Parametrization::parse("t", "s", "t^2+s^2").unwrap()
}

fn saddle() -> Parametrization {
    Parametrization::parse("t", "s", "t*s").unwrap()
}

fn run(p: &Parametrization) -> Result<(SymmetryReport, Duration), String> {
    let start = Instant::now();
    let r = detect(p, &DetectOptions::default()).map_err(|e| e.to_string())?;
    Ok((r, start.elapsed()))
}

fn v3(a: i64, b: i64, c: i64) -> Vec3 {
    [int(a), int(b), int(c)]
}

fn identity() -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() }))
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

fn apply(a: &Mat, x: &Vec3) -> Vec3 {
    std::array::from_fn(|i| (0..3).map(|k| &a[i][k] * &x[k]).sum())
}

fn transpose(a: &Mat) -> Mat {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    std::array::from_fn(|i| &a[i] + &b[i])
}

fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    std::array::from_fn(|i| &a[i] - &b[i])
}

fn is_zero(v: &Vec3) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Rational rotation from the Cayley transform of the skew matrix of `v`.
fn cayley(v: [i64; 3]) -> Mat {
    let [a, b, c] = v.map(int);
    let n = Rat::one() + &a * &a + &b * &b + &c * &c;
    let w = [a, b, c];
    let skew: Mat = [
        [Rat::zero(), -w[2].clone(), w[1].clone()],
        [w[2].clone(), Rat::zero(), -w[0].clone()],
        [-w[1].clone(), w[0].clone(), Rat::zero()],
    ];
    let k = Rat::one() - (&n - Rat::one());
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let diag = if i == j { k.clone() } else { Rat::zero() };
            (diag + int(2) * &w[i] * &w[j] + int(2) * &skew[i][j]) / &n
        })
    })
}

/// `(Q, b)` of every involution, all of which must be exact.
fn motions(r: &SymmetryReport) -> Result<Vec<(Mat, Vec3)>, String> {
    let mut out = Vec::new();
    for inv in &r.involutions {
        match (inv.exact_q(), inv.exact_b()) {
            (Some(q), Some(b)) => out.push((q, b)),
            _ => return Err(format!("{} is not exact", inv.case)),
        }
    }
    out.sort();
    Ok(out)
}

fn pt(v: &Vec3) -> [RatInterval; 3] {
    v.clone().map(RatInterval::point)
}

fn line(p: Vec3, d: Vec3) -> SymmetryElement {
    SymmetryElement::Line {
        point: pt(&p),
        direction: pt(&d),
    }
}

fn plane(n: Vec3, offset: i64) -> SymmetryElement {
    SymmetryElement::Plane {
        normal: pt(&n),
        offset: RatInterval::point(int(offset)),
    }
}

fn same_element(a: &SymmetryElement, b: &SymmetryElement) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
        && b.sample_points().iter().all(|x| a.contains(x) == Some(true))
        && a.sample_points().iter().all(|x| b.contains(x) == Some(true))
}

/// The involutions of `kind` have exactly the elements `expected`.
fn elements_match(r: &SymmetryReport, kind: Kind, expected: &[SymmetryElement]) -> Result<(), String> {
    let found: Vec<&Involution> = r.involutions.iter().filter(|i| i.kind == kind).collect();
    if found.len() != expected.len() {
        return Err(format!("{} {} involutions, expected {}", found.len(), kind, expected.len()));
    }
    for e in expected {
        let hits = found.iter().filter(|i| same_element(&i.element, e)).count();
        if hits != 1 {
            return Err(format!("{:?} matched {} times", e, hits));
        }
    }
    Ok(())
}

fn criterion_1() -> Check {
    let (r, dt) = run(&enneper())?;
    motions(&r)?;
    elements_match(
        &r,
        Kind::Axial,
        &[
            line(v3(0, 0, 0), v3(0, 0, 1)),
            line(v3(0, 0, 0), v3(1, 1, 0)),
            line(v3(0, 0, 0), v3(1, -1, 0)),
        ],
    )?;
    elements_match(&r, Kind::Planar, &[plane(v3(1, 0, 0), 0), plane(v3(0, 1, 0), 0)])?;
    elements_match(&r, Kind::Central, &[])?;
    if r.revolution.is_some() {
        return Err("flagged as a surface of revolution".into());
    }
    if dt > Duration::from_secs(10) {
        return Err(format!("took {:.2?}", dt));
    }
    Ok(format!("3 axes, 2 planes, all exact, {:.2?}", dt))
}

fn criterion_2() -> Check {
    let (r, dt) = run(&paraboloid())?;
    motions(&r)?;
    let z_axis = line(v3(0, 0, 0), v3(0, 0, 1));
    elements_match(&r, Kind::Axial, std::slice::from_ref(&z_axis))?;
    elements_match(&r, Kind::Planar, &[plane(v3(1, 0, 0), 0), plane(v3(0, 1, 0), 0)])?;
    elements_match(&r, Kind::Central, &[])?;
    for inv in &r.involutions {
        if inv.root.exact() != Some((Rat::zero(), Rat::zero())) {
            return Err(format!("{} solved at {}", inv.case, inv.root));
        }
    }
    let axial_case = r.involutions.iter().find(|i| i.kind == Kind::Axial).unwrap().case;
    if axial_case != CaseId::new(Config::A, 1) {
        return Err(format!("axis came from {}", axial_case));
    }
    let rev = r.revolution.as_ref().ok_or("no revolution flag")?;
    if rev.case.config != Config::D1 {
        return Err(format!("revolution from {}", rev.case));
    }
    match &rev.axis {
        Some(a) if same_element(a, &z_axis) => {}
        other => return Err(format!("revolution axis {:?}", other)),
    }
    let uv = vars(&["u", "v"]);
    let circle = MPoly::parse("u^2+v^2-1", &uv).unwrap();
    let diag = r.diagnostics.iter().find(|d| d.case == rev.case).unwrap();
    match &diag.outcome {
        CaseOutcome::PositiveDimensional { witness, .. } if witness.primitive() == circle => {}
        other => return Err(format!("{} outcome {:?}", rev.case, other)),
    }
    if dt > Duration::from_secs(5) {
        return Err(format!("took {:.2?}", dt));
    }
    Ok(format!("z-axis, planes x = 0 and y = 0, revolution via a^2 + c^2 = 1 in {}, {:.2?}", rev.case, dt))
}

/// Signed permutation matrices, each also composed with the two diagonal mirrors.
fn signed_permutation_candidates() -> Vec<Mat> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mirror_xy: Mat = [[int(0), int(1), int(0)], [int(1), int(0), int(0)], [int(0), int(0), int(1)]];
    let mirror_anti: Mat = [[int(0), int(-1), int(0)], [int(-1), int(0), int(0)], [int(0), int(0), int(1)]];
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..8 {
            let m: Mat = std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    if p[i] == j {
                        int(if signs >> i & 1 == 1 { -1 } else { 1 })
                    } else {
                        int(0)
                    }
                })
            });
            for d in [identity(), mirror_xy.clone(), mirror_anti.clone()] {
                out.push(mul(&m, &d));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `F(Q p + b)` for a polynomial `F` in `x, y, z`.
fn compose(f: &MPoly, q: &Mat, b: &Vec3) -> MPoly {
    let xyz = f.vars().clone();
    let coords = ["x", "y", "z"].map(|n| MPoly::var(n, &xyz).unwrap());
    let images: Vec<Option<MPoly>> = (0..3)
        .map(|i| {
            let mut acc = MPoly::constant(b[i].clone(), &xyz);
            for k in 0..3 {
                acc = &acc + &coords[k].scale(&q[i][k]);
            }
            Some(acc)
        })
        .collect();
    f.substitute(&images, &xyz).unwrap()
}

fn criterion_3() -> Check {
    let (r, dt) = run(&saddle())?;
    let xyz = vars(&["x", "y", "z"]);
    let f = MPoly::parse("z - x*y", &xyz).unwrap();
    let neg = f.scale(&int(-1));
    let zero = v3(0, 0, 0);
    let mut oracle: Vec<(Mat, Vec3)> = signed_permutation_candidates()
        .into_iter()
        .filter(|q| *q != identity() && mul(q, q) == identity())
        .filter(|q| {
            let g = compose(&f, q, &zero);
            g == f || g == neg
        })
        .map(|q| (q, zero.clone()))
        .collect();
    oracle.sort();
    let found = motions(&r)?;
    if found != oracle {
        return Err(format!("engine found {} motions, oracle {}", found.len(), oracle.len()));
    }
    elements_match(
        &r,
        Kind::Axial,
        &[
            line(zero.clone(), v3(1, 0, 0)),
            line(zero.clone(), v3(0, 1, 0)),
            line(zero.clone(), v3(0, 0, 1)),
        ],
    )?;
    elements_match(&r, Kind::Planar, &[plane(v3(1, -1, 0), 0), plane(v3(1, 1, 0), 0)])?;
    elements_match(&r, Kind::Central, &[])?;
    if dt > Duration::from_secs(5) {
        return Err(format!("took {:.2?}", dt));
    }
    Ok(format!("{} motions agree with the z - xy oracle, {:.2?}", oracle.len(), dt))
}

fn verify_exactly(p: &Parametrization, inv: &Involution) -> Result<(), String> {
    let tag = inv.case.to_string();
    let q = inv.exact_q().ok_or_else(|| format!("{}: Q not exact", tag))?;
    let b = inv.exact_b().ok_or_else(|| format!("{}: b not exact", tag))?;
    let (m, c) = inv.phi.exact().ok_or_else(|| format!("{}: phi not exact", tag))?;
    if mul(&transpose(&q), &q) != identity() {
        return Err(format!("{}: Q not orthogonal", tag));
    }
    if mul(&q, &q) != identity() {
        return Err(format!("{}: Q^2 != I", tag));
    }
    if !is_zero(&add(&apply(&q, &b), &b)) {
        return Err(format!("{}: (Q + I) b != 0", tag));
    }
    let det = det3(&q);
    if det != int(inv.det_q() as i64) || det.abs() != Rat::one() {
        return Err(format!("{}: det Q = {}", tag, det));
    }
    if identity_defect(p, &q, &b, &m, &c).iter().any(|d| !d.is_zero()) {
        return Err(format!("{}: coefficientwise identity fails", tag));
    }
    let m2: [[Rat; 2]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| &m[i][0] * &m[0][j] + &m[i][1] * &m[1][j]));
    let fixed_shift = (0..2).all(|i| (&m[i][0] * &c[0] + &m[i][1] * &c[1] + &c[i]).is_zero());
    if m2 != [[int(1), int(0)], [int(0), int(1)]] || !fixed_shift {
        return Err(format!("{}: phi o phi != id", tag));
    }
    for x in inv.element.sample_points() {
        if add(&apply(&q, &x), &b) != x {
            return Err(format!("{}: element point not fixed", tag));
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let rotations = [[1, 2, 0], [0, 1, 1], [2, -1, 1], [1, 1, 1], [0, 0, 2], [3, 1, -2]];
    let shifts = [v3(0, 0, 0), v3(1, -2, 3), v3(-4, 0, 1), v3(2, 5, -1)];
    let mut corpus = Vec::new();
    for (k, base) in [enneper(), paraboloid(), saddle()].into_iter().enumerate() {
        for j in 0..3 {
            let r = cayley(rotations[(2 * k + j) % rotations.len()]);
            let w = shifts[(k + j) % shifts.len()].clone();
            corpus.push((base.transform(&r, &w), Some(base.clone())));
        }
        corpus.push((base, None));
    }
    let mut checked = 0;
    for (p, base) in &corpus {
        let (r, _) = run(p)?;
        for inv in &r.involutions {
            verify_exactly(p, inv)?;
            checked += 1;
        }
        if let Some(b) = base {
            let (rb, _) = run(b)?;
            if rb.involutions.len() != r.involutions.len() {
                return Err(format!("conjugate has {} involutions, original {}", r.involutions.len(), rb.involutions.len()));
            }
        }
    }
    Ok(format!("{} involutions on {} surfaces verified exactly", checked, corpus.len()))
}

fn criterion_5() -> Check {
    let r: Mat = [
        [rat(3, 5), rat(-4, 5), int(0)],
        [rat(4, 5), rat(3, 5), int(0)],
        [int(0), int(0), int(1)],
    ];
    let w = v3(1, -2, 3);
    let (base, _) = run(&enneper())?;
    let (moved, _) = run(&enneper().transform(&r, &w))?;
    let rt = transpose(&r);
    let mut expected: Vec<(Mat, Vec3)> = motions(&base)?
        .into_iter()
        .map(|(q, b)| {
            let q2 = mul(&mul(&r, &q), &rt);
            let b2 = sub(&add(&apply(&r, &b), &w), &apply(&q2, &w));
            (q2, b2)
        })
        .collect();
    expected.sort();
    let found = motions(&moved)?;
    if found != expected {
        return Err(format!("{} motions after the rigid motion, {} conjugates expected", found.len(), expected.len()));
    }
    Ok(format!("{} conjugated motions match exactly", found.len()))
}

/// `a u + b v + c`.
type Form = [i64; 3];

fn height(p: &MPoly) -> i64 {
    p.terms()
        .iter()
        .map(|(_, c)| {
            let n = c.numer().abs().max(c.denom().abs());
            i64::try_from(n).unwrap_or(i64::MAX)
        })
        .max()
        .unwrap_or(0)
}

fn criterion_6() -> Check {
    let uv = vars(&["u", "v"]);
    let form = |f: &Form| MPoly::parse(&format!("({})*u + ({})*v + ({})", f[0], f[1], f[2]), &uv).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    let mut roots_seen = 0;
    while done < 100 {
        let k1 = rng.gen_range(1..=8usize);
        let k2 = rng.gen_range(1..=8 / k1);
        let mut draw = |k: usize| -> Vec<Form> {
            (0..k)
                .map(|_| loop {
                    let f = [rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-9..=9)];
                    if f[0] != 0 || f[1] != 0 {
                        break f;
                    }
                })
                .collect()
        };
        let (f, g) = (draw(k1), draw(k2));
        let parallel = |a: &Form, b: &Form| a[0] * b[1] == a[1] * b[0];
        let same = |a: &Form, b: &Form| parallel(a, b) && a[0] * b[2] == a[2] * b[0] && a[1] * b[2] == a[2] * b[1];
        if f.iter().any(|a| g.iter().any(|b| same(a, b))) {
            continue;
        }
        let e1 = f.iter().fold(MPoly::one(&uv), |acc, l| &acc * &form(l));
        let e2 = g.iter().fold(MPoly::one(&uv), |acc, l| &acc * &form(l));
        if height(&e1) > 1000 || height(&e2) > 1000 {
            continue;
        }
        let mut planted: Vec<(Rat, Rat)> = f
            .iter()
            .flat_map(|a| {
                g.iter().filter(|b| !parallel(a, b)).map(move |b| {
                    let det = int(a[0] * b[1] - a[1] * b[0]);
                    (int(a[1] * b[2] - a[2] * b[1]) / &det, int(a[2] * b[0] - a[0] * b[2]) / &det)
                })
            })
            .collect();
        planted.sort();
        planted.dedup();
        let sys = PolySystem {
            case: CaseId::new(Config::A, 1),
            equations: vec![e1.primitive(), e2.primitive()],
            provenance: vec![Provenance::Metric(0), Provenance::Metric(1)],
            side_conditions: Vec::new(),
        };
        let set = solve_real(&sys).map_err(|e| format!("instance {}: {}", done, e))?;
        if matches!(set, SolutionSet::PositiveDimensional { .. }) {
            return Err(format!("instance {}: reported a curve", done));
        }
        let mut got = Vec::new();
        for root in set.roots() {
            if !root.certified {
                return Err(format!("instance {}: uncertified root {}", done, root));
            }
            got.push(root.exact().ok_or_else(|| format!("instance {}: root {} not exact", done, root))?);
        }
        got.sort();
        if got != planted {
            return Err(format!("instance {}: {} roots, {} planted", done, got.len(), planted.len()));
        }
        roots_seen += planted.len();
        done += 1;
    }
    Ok(format!("100 planted systems, {} roots recovered exactly", roots_seen))
}

fn criterion_7() -> Check {
    let raw = enneper();
    let [x, y, z] = raw.x.clone();
    let t4 = MPoly::parse("t^4", x.vars()).unwrap();
    let p = Parametrization::new(&x + &t4, y, z).unwrap();
    let (r, _) = run(&p)?;
    // Cross-check three Enneper motions that the engine dropped: each must
    // fail the coefficientwise identity on the perturbed surface.
    let (base, _) = run(&raw)?;
    let kept = motions(&r)?;
    let mut rejected = 0;
    for inv in base.involutions.iter().filter(|i| !kept.contains(&(i.exact_q().unwrap(), i.exact_b().unwrap()))).take(3) {
        let (q, b) = (inv.exact_q().unwrap(), inv.exact_b().unwrap());
        let (m, c) = inv.phi.exact().unwrap();
        if identity_defect(&p, &q, &b, &m, &c).iter().any(|d| !d.is_zero()) {
            rejected += 1;
        }
    }
    if r.involutions.is_empty() {
        return Ok(format!("no involutions; {} of 3 Enneper motions fail the identity exactly", rejected));
    }
    let survivors: Vec<String> = r
        .involutions
        .iter()
        .map(|i| {
            let exact = verify_exactly(&p, i).is_ok();
            format!("{} {} [{}]", i.case, i.kind, if exact { "verified exactly" } else { "unverified" })
        })
        .collect();
    Err(format!(
        "expected none, found {}: x + t^4 is even in t, so (t, s) -> (-t, s) still maps the surface to its reflection in y = 0 ({} of 3 Enneper motions fail the identity exactly)",
        survivors.join(", "),
        rejected
    ))
}

fn main() -> ExitCode {
    let c = |n, name, check, known| Criterion { n, name, check, known };
    let criteria = [
        c(1, "Enneper surface", criterion_1 as fn() -> Check, false),
        c(2, "circular paraboloid", criterion_2, false),
        c(3, "hyperbolic paraboloid", criterion_3, false),
        c(4, "exact verification corpus", criterion_4, false),
        c(5, "equivariance under a rigid motion", criterion_5, false),
        c(6, "planted solver systems", criterion_6, false),
        c(7, "perturbed Enneper negative control", criterion_7, true),
    ];
    let mut unexpected = 0;
    for Criterion { n, name, check, known } in criteria {
        let start = Instant::now();
        let outcome = check();
        let dt = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {}: {} ({:.2?})", n, name, detail, dt),
            Err(why) => {
                let note = if known { " [known, not counted]" } else { "" };
                println!("FAIL {} {}: {} ({:.2?}){}", n, name, why, dt, note);
                if !known {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
