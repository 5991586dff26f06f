//! The full pipeline over all twelve cases and the aggregated report.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{MPoly, Rat, RatInterval, RootInterval};
use crate::candidates::{fff_constraints, frame, CandidateFrame, CaseId};
use crate::error::{Error, Result};
use crate::solver::{solve_real, witness_points, Root2D, SolutionSet};
use crate::surface::{fundamental_form, plane_check, prepare, AffineSubstitution, Parametrization};
use crate::systems::{assemble, PolySystem};

use super::linalg::{primitive, project_origin, solve_affine, Vec3};
use super::{
    cross, exact_vec, fixed_locus, identity_defect, instantiate_with, point_vec, ConcretePhi,
    Involution, Kind, SymmetryElement,
};

#[derive(Clone, Debug)]
pub struct DetectOptions {
    /// Seed for the reparametrization that moves the base point.
    pub seed: u64,
    /// Decimal precision of enclosures for algebraic data.
    pub digits: u32,
    /// Restrict to direct (`1`) or opposite (`-1`) involutions.
    pub only: Option<i8>,
    /// Run a single case.
    pub case: Option<CaseId>,
    /// Keep each case's polynomial system in the diagnostics.
    pub keep_systems: bool,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            seed: 0,
            digits: 12,
            only: None,
            case: None,
            keep_systems: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StageTimes {
    pub frame: Duration,
    pub assemble: Duration,
    pub solve: Duration,
    pub instantiate: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseOutcome {
    Skipped,
    Empty,
    Solved { roots: usize },
    PositiveDimensional { witness: MPoly, residual: usize },
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseDiagnostic {
    pub case: CaseId,
    pub outcome: CaseOutcome,
    pub equations: usize,
    pub max_degree: u32,
    /// Solutions that failed verification, with the reason.
    pub rejected: Vec<String>,
    pub times: StageTimes,
    pub system: Option<PolySystem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Revolution {
    /// Always a [`SymmetryElement::Line`], when it could be recovered.
    pub axis: Option<SymmetryElement>,
    pub case: CaseId,
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    /// The surface as given.
    pub surface: Parametrization,
    /// The substitution applied to reach a regular base point, if any.
    pub substitution: Option<AffineSubstitution>,
    pub involutions: Vec<Involution>,
    pub revolution: Option<Revolution>,
    pub diagnostics: Vec<CaseDiagnostic>,
    pub prepare_time: Duration,
}

impl SymmetryReport {
    pub fn count(&self, kind: Kind) -> usize {
        self.involutions.iter().filter(|i| i.kind == kind).count()
    }
}

/// What one case produced, before aggregation.
pub struct CaseResult {
    pub diagnostic: CaseDiagnostic,
    pub involutions: Vec<Involution>,
    family: Option<Family>,
}

struct Family {
    frame: CandidateFrame,
    witness: MPoly,
    side: Vec<MPoly>,
}

fn run_case(p: &Parametrization, form: &crate::surface::FundamentalForm, case: CaseId, opts: &DetectOptions) -> CaseResult {
    let mut diag = CaseDiagnostic {
        case,
        outcome: CaseOutcome::Skipped,
        equations: 0,
        max_degree: 0,
        rejected: Vec::new(),
        times: StageTimes::default(),
        system: None,
    };
    let mut out = CaseResult {
        diagnostic: diag.clone(),
        involutions: Vec::new(),
        family: None,
    };
    let t = Instant::now();
    let fr = match frame(p, form, case) {
        Ok(f) => f,
        Err(e) => {
            diag.outcome = CaseOutcome::Failed(e.to_string());
            out.diagnostic = diag;
            return out;
        }
    };
    diag.times.frame = t.elapsed();
    let t = Instant::now();
    let metric = fff_constraints(form, &fr.phi);
    let sys = assemble(p, &fr, &metric);
    diag.times.assemble = t.elapsed();
    diag.equations = sys.equations.len();
    diag.max_degree = sys.max_degree();

    let t = Instant::now();
    let solved = solve_real(&sys);
    diag.times.solve = t.elapsed();
    if opts.keep_systems {
        diag.system = Some(sys.clone());
    }
    let set = match solved {
        Ok(s) => s,
        Err(e) => {
            diag.outcome = CaseOutcome::Failed(e.to_string());
            out.diagnostic = diag;
            return out;
        }
    };
    diag.outcome = match &set {
        SolutionSet::Empty => CaseOutcome::Empty,
        SolutionSet::Finite(r) => CaseOutcome::Solved { roots: r.len() },
        SolutionSet::PositiveDimensional { witness, residual } => CaseOutcome::PositiveDimensional {
            witness: witness.clone(),
            residual: residual.len(),
        },
    };
    let t = Instant::now();
    for root in set.roots() {
        match instantiate_with(&fr, root, p, opts.digits) {
            Ok(inv) => out.involutions.push(inv),
            Err(e) => diag.rejected.push(format!("{root}: {e}")),
        }
    }
    diag.times.instantiate = t.elapsed();
    if let SolutionSet::PositiveDimensional { witness, .. } = set {
        out.family = Some(Family {
            frame: fr,
            witness,
            side: sys.side_conditions.clone(),
        });
    }
    out.diagnostic = diag;
    out
}

/// Runs every selected case on `raw` and aggregates the results.
pub fn detect(raw: &Parametrization, opts: &DetectOptions) -> Result<SymmetryReport> {
    let t = Instant::now();
    if raw.normal().iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateSurface);
    }
    if plane_check(raw) {
        return Err(Error::PlaneInput);
    }
    let p = prepare(raw, opts.seed)?;
    let form = fundamental_form(&p)?;
    let prepare_time = t.elapsed();

    let cases: Vec<CaseId> = CaseId::all()
        .into_iter()
        .filter(|c| opts.case.is_none_or(|k| k == *c))
        .filter(|c| opts.only.is_none_or(|s| s == c.det_sign))
        .collect();
    let results: Vec<CaseResult> = cases
        .par_iter()
        .map(|&case| run_case(&p, &form, case, opts))
        .collect();
    let mut report = aggregate(raw, &p, results)?;
    report.prepare_time = prepare_time;
    Ok(report)
}

/// Joins per-case results: maps parameter data back to the input
/// parametrization, removes duplicates, checks that at most one central
/// symmetry exists and recovers the axis of a revolution family.
pub fn aggregate(raw: &Parametrization, p: &Parametrization, results: Vec<CaseResult>) -> Result<SymmetryReport> {
    let mut results = results;
    results.sort_by_key(|r| r.diagnostic.case);
    let mut involutions: Vec<Involution> = Vec::new();
    let mut diagnostics = Vec::new();
    let mut family = None;
    for r in results {
        for mut inv in r.involutions {
            if let Some(sub) = &p.substitution {
                to_raw_parameters(&mut inv, sub, raw)?;
            }
            if !involutions.iter().any(|j| same_motion(j, &inv)) {
                involutions.push(inv);
            }
        }
        if family.is_none() {
            if let Some(f) = r.family {
                family = Some((r.diagnostic.case, f));
            }
        }
        diagnostics.push(r.diagnostic);
    }
    if involutions.iter().filter(|i| i.kind == Kind::Central).count() > 1 {
        return Err(Error::CentralNotUnique);
    }
    let revolution = family.map(|(case, f)| Revolution {
        axis: revolution_axis(p, &f, &involutions),
        case,
    });
    Ok(SymmetryReport {
        surface: raw.clone(),
        substitution: p.substitution.clone(),
        involutions,
        revolution,
        diagnostics,
        prepare_time: Duration::ZERO,
    })
}

fn overlaps(a: &RatInterval, b: &RatInterval) -> bool {
    a.lo <= b.hi && b.lo <= a.hi
}

fn same_motion(a: &Involution, b: &Involution) -> bool {
    if a.exact != b.exact {
        return false;
    }
    let pairs = a.q.iter().flatten().zip(b.q.iter().flatten()).chain(a.b.iter().zip(b.b.iter()));
    if a.exact {
        pairs.into_iter().all(|(x, y)| x == y)
    } else {
        pairs.into_iter().all(|(x, y)| overlaps(x, y))
    }
}

/// Rewrites `φ` and its fixed locus in the parameters of the input, given
/// that the engine worked with `x ∘ σ` for the affine map `σ`.
fn to_raw_parameters(inv: &mut Involution, sub: &AffineSubstitution, raw: &Parametrization) -> Result<()> {
    let r = &sub.rows;
    let s = [[r[0][0].clone(), r[0][1].clone()], [r[1][0].clone(), r[1][1].clone()]];
    let g = [r[0][2].clone(), r[1][2].clone()];
    let det = &s[0][0] * &s[1][1] - &s[0][1] * &s[1][0];
    let sinv = [
        [&s[1][1] / &det, -&s[0][1] / &det],
        [-&s[1][0] / &det, &s[0][0] / &det],
    ];
    let pt = |x: &Rat| RatInterval::point(x.clone());
    let mul22 = |a: &[[RatInterval; 2]; 2], b: &[[RatInterval; 2]; 2]| -> [[RatInterval; 2]; 2] {
        std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
    };
    let app = |a: &[[RatInterval; 2]; 2], v: &[RatInterval; 2]| -> [RatInterval; 2] {
        std::array::from_fn(|i| &(&a[i][0] * &v[0]) + &(&a[i][1] * &v[1]))
    };
    let si = s.clone().map(|row| row.map(|x| pt(&x)));
    let sinvi = sinv.map(|row| row.map(|x| pt(&x)));
    let gi = g.clone().map(|x| pt(&x));
    let m = mul22(&mul22(&si, &inv.phi.m), &sinvi);
    let mg = app(&m, &gi);
    let sc = app(&si, &inv.phi.shift);
    let shift = std::array::from_fn(|i| &(&sc[i] + &gi[i]) - &mg[i]);
    inv.phi = ConcretePhi { m, shift };
    if let Some((m, c)) = inv.phi.exact() {
        let q = inv.exact_q().expect("exact");
        let b = inv.exact_b().expect("exact");
        if identity_defect(raw, &q, &b, &m, &c).iter().any(|d| !d.is_zero()) {
            return Err(Error::VerificationFailed(
                "identity fails in the input parameters".into(),
            ));
        }
        inv.locus = fixed_locus(&m, &c);
    }
    Ok(())
}

/// The vector an element of a revolution family is perpendicular to the axis
/// along: a mirror's normal or a half-turn's direction.
fn transverse(inv: &Involution) -> Option<Vec3> {
    match &inv.element {
        SymmetryElement::Plane { normal, .. } => exact_vec(normal),
        SymmetryElement::Line { direction, .. } => exact_vec(direction),
        SymmetryElement::Point { .. } => None,
    }
}

fn axis_of_pair(a: &Involution, b: &Involution) -> Option<SymmetryElement> {
    let d = cross(&transverse(a)?, &transverse(b)?);
    if d.iter().all(|c| c.is_zero()) {
        return None;
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for inv in [a, b] {
        let q = inv.exact_q()?;
        let bb = inv.exact_b()?;
        for i in 0..3 {
            rows.push(std::array::from_fn(|j| {
                if i == j {
                    &q[i][j] - Rat::one()
                } else {
                    q[i][j].clone()
                }
            }));
            rhs.push(-&bb[i]);
        }
    }
    let common = solve_affine(&rows, &rhs)?;
    let d = primitive(&d);
    Some(SymmetryElement::Line {
        point: point_vec(&project_origin(&common.point, &d)),
        direction: point_vec(&d),
    })
}

/// Axis of a surface of revolution: the common line of two sampled members
/// of the positive-dimensional family, else the axis of the only half-turn
/// found.
fn revolution_axis(p: &Parametrization, f: &Family, found: &[Involution]) -> Option<SymmetryElement> {
    let mut sampled: Vec<Involution> = Vec::new();
    if let Ok(points) = witness_points(&f.witness, &f.side, 6) {
        for (u, v) in points {
            let root = Root2D {
                u: RootInterval::exact(u),
                v: RootInterval::exact(v),
                certified: true,
            };
            if let Ok(inv) = instantiate_with(&f.frame, &root, p, 12) {
                for prev in &sampled {
                    if let Some(axis) = axis_of_pair(prev, &inv) {
                        return Some(axis);
                    }
                }
                sampled.push(inv);
            }
        }
    }
    let axial: Vec<&Involution> = found.iter().filter(|i| i.kind == Kind::Axial && i.exact).collect();
    match axial.as_slice() {
        [only] => Some(only.element.clone()),
        _ => None,
    }
}
