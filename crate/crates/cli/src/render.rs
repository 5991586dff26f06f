//! Text and JSON reports.

use std::fmt::Write as _;

use serde::Serialize;
use surfsym::arith::rat::{sign, to_decimal};
use surfsym::arith::{RatInterval, RootInterval};
use surfsym::classifier::{CaseOutcome, FixedLocus, Involution, Kind, SymmetryElement, SymmetryReport};

pub const SCHEMA: u32 = 1;

#[derive(Serialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum Number {
    Exact(String),
    Interval {
        lo: String,
        hi: String,
        minpoly: Option<String>,
    },
}

impl Number {
    fn from_interval(x: &RatInterval) -> Number {
        if x.is_point() {
            Number::Exact(x.lo.to_string())
        } else {
            Number::Interval {
                lo: x.lo.to_string(),
                hi: x.hi.to_string(),
                minpoly: None,
            }
        }
    }

    fn from_root(x: &RootInterval, var: &str) -> Number {
        match &x.exact {
            Some(r) => Number::Exact(r.to_string()),
            None => Number::Interval {
                lo: x.lo.to_string(),
                hi: x.hi.to_string(),
                minpoly: Some(x.poly.display_in(var)),
            },
        }
    }
}

fn nums<const N: usize>(v: &[RatInterval; N]) -> [Number; N] {
    std::array::from_fn(|i| Number::from_interval(&v[i]))
}

#[derive(Serialize, Debug)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Element {
    Point { center: [Number; 3] },
    Line { point: [Number; 3], direction: [Number; 3] },
    Plane { normal: [Number; 3], offset: Number },
}

impl From<&SymmetryElement> for Element {
    fn from(e: &SymmetryElement) -> Self {
        match e {
            SymmetryElement::Point { center } => Element::Point { center: nums(center) },
            SymmetryElement::Line { point, direction } => Element::Line {
                point: nums(point),
                direction: nums(direction),
            },
            SymmetryElement::Plane { normal, offset } => Element::Plane {
                normal: nums(normal),
                offset: Number::from_interval(offset),
            },
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Phi {
    pub matrix: [[Number; 2]; 2],
    pub shift: [Number; 2],
}

#[derive(Serialize, Debug)]
pub struct Root {
    pub u: Number,
    pub v: Number,
}

#[derive(Serialize, Debug)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Locus {
    Point { t: String, s: String },
    /// `a t + b s + c = 0`.
    Line { a: String, b: String, c: String },
}

#[derive(Serialize, Debug)]
pub struct InvolutionJson {
    pub kind: &'static str,
    pub case: String,
    #[serde(rename = "detQ")]
    pub det_q: i8,
    #[serde(rename = "Q")]
    pub q: [[Number; 3]; 3],
    pub b: [Number; 3],
    pub phi: Phi,
    pub element: Element,
    pub exact: bool,
    pub root: Root,
    pub fixed_locus: Option<Locus>,
}

#[derive(Serialize, Debug)]
pub struct RevolutionJson {
    pub axis: Option<Element>,
    pub case: String,
}

#[derive(Serialize, Debug)]
pub struct DiagnosticJson {
    pub case: String,
    pub outcome: &'static str,
    pub equations: usize,
    pub max_degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub rejected: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct Surface {
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Serialize, Debug)]
pub struct ReportJson {
    pub schema: u32,
    pub surface: Surface,
    pub involutions: Vec<InvolutionJson>,
    pub revolution: Option<RevolutionJson>,
    pub diagnostics: Vec<DiagnosticJson>,
}

fn involution_json(inv: &Involution) -> InvolutionJson {
    let (un, vn) = inv.case.config.unknowns();
    InvolutionJson {
        kind: inv.kind.name(),
        case: inv.case.to_string(),
        det_q: inv.det_q(),
        q: std::array::from_fn(|i| nums(&inv.q[i])),
        b: nums(&inv.b),
        phi: Phi {
            matrix: std::array::from_fn(|i| nums(&inv.phi.m[i])),
            shift: nums(&inv.phi.shift),
        },
        element: (&inv.element).into(),
        exact: inv.exact,
        root: Root {
            u: Number::from_root(&inv.root.u, un),
            v: Number::from_root(&inv.root.v, vn),
        },
        fixed_locus: inv.locus.as_ref().map(|l| match l {
            FixedLocus::Point([t, s]) => Locus::Point {
                t: t.to_string(),
                s: s.to_string(),
            },
            FixedLocus::Line([a, b, c]) => Locus::Line {
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
            },
        }),
    }
}

pub fn report_json(r: &SymmetryReport) -> ReportJson {
    let [x, y, z] = r.surface.x.clone().map(|p| p.to_string());
    ReportJson {
        schema: SCHEMA,
        surface: Surface { x, y, z },
        involutions: r.involutions.iter().map(involution_json).collect(),
        revolution: r.revolution.as_ref().map(|rev| RevolutionJson {
            axis: rev.axis.as_ref().map(Element::from),
            case: rev.case.to_string(),
        }),
        diagnostics: r
            .diagnostics
            .iter()
            .map(|d| {
                let (outcome, roots, witness, error) = match &d.outcome {
                    CaseOutcome::Skipped => ("skipped", None, None, None),
                    CaseOutcome::Empty => ("empty", Some(0), None, None),
                    CaseOutcome::Solved { roots } => ("finite", Some(*roots), None, None),
                    CaseOutcome::PositiveDimensional { witness, residual } => {
                        ("positive-dimensional", Some(*residual), Some(witness.to_string()), None)
                    }
                    CaseOutcome::Failed(e) => ("failed", None, None, Some(e.clone())),
                };
                DiagnosticJson {
                    case: d.case.to_string(),
                    outcome,
                    equations: d.equations,
                    max_degree: d.max_degree,
                    roots,
                    witness,
                    error,
                    rejected: d.rejected.clone(),
                }
            })
            .collect(),
    }
}

pub fn to_json(r: &SymmetryReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(r)).expect("report serializes");
    s.push('\n');
    s
}

fn num(x: &RatInterval, digits: u32) -> String {
    if x.is_point() {
        x.lo.to_string()
    } else {
        format!("~{}", to_decimal(&x.mid(), digits))
    }
}

fn tuple(v: &[RatInterval], digits: u32) -> String {
    let parts: Vec<String> = v.iter().map(|x| num(x, digits)).collect();
    format!("({})", parts.join(", "))
}

/// `a*t + b*s + c` style rendering; an empty name marks the constant term.
fn linear(terms: &[(&RatInterval, &str)], digits: u32) -> String {
    let mut out = String::new();
    for (c, name) in terms {
        if c.is_point() && sign(&c.lo) == 0 {
            continue;
        }
        let negative = sign(&c.mid()) < 0;
        let mag = if c.is_point() {
            let a = if negative { -c.lo.clone() } else { c.lo.clone() };
            a.to_string()
        } else {
            let m = c.mid();
            format!("~{}", to_decimal(&if negative { -m } else { m }, digits))
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match (mag.as_str(), name.is_empty()) {
            (_, true) => out.push_str(&mag),
            ("1", false) => out.push_str(name),
            _ => {
                let _ = write!(out, "{}*{}", mag, name);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn element_text(e: &SymmetryElement, digits: u32) -> String {
    match e {
        SymmetryElement::Point { center } => format!("point {}", tuple(center, digits)),
        SymmetryElement::Line { point, direction } => {
            format!("line through {} direction {}", tuple(point, digits), tuple(direction, digits))
        }
        SymmetryElement::Plane { normal, offset } => {
            let lhs = linear(&[(&normal[0], "x"), (&normal[1], "y"), (&normal[2], "z")], digits);
            format!("plane {} = {}", lhs, num(offset, digits))
        }
    }
}

fn phi_text(inv: &Involution, digits: u32) -> String {
    let row = |i: usize| {
        linear(
            &[(&inv.phi.m[i][0], "t"), (&inv.phi.m[i][1], "s"), (&inv.phi.shift[i], "")],
            digits,
        )
    };
    format!("(t, s) -> ({}, {})", row(0), row(1))
}

fn matrix_text(q: &[[RatInterval; 3]; 3], digits: u32) -> String {
    let rows: Vec<String> = q
        .iter()
        .map(|r| r.iter().map(|x| num(x, digits)).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

pub fn to_text(r: &SymmetryReport, digits: u32) -> String {
    let mut out = String::new();
    let names = ["x", "y", "z"];
    for (n, p) in names.iter().zip(&r.surface.x) {
        let _ = writeln!(out, "{} = {}", n, p);
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{} involution(s): {} axial, {} planar, {} central",
        r.involutions.len(),
        r.count(Kind::Axial),
        r.count(Kind::Planar),
        r.count(Kind::Central)
    );
    for inv in &r.involutions {
        let tag = if inv.exact { "exact" } else { "algebraic" };
        let _ = writeln!(out, "  {:<5} {:<7} {} [{}]", inv.case.to_string(), inv.kind.name(), element_text(&inv.element, digits), tag);
        let _ = writeln!(out, "        Q = {}, b = {}", matrix_text(&inv.q, digits), tuple(&inv.b, digits));
        let _ = writeln!(out, "        phi: {}", phi_text(inv, digits));
    }
    match &r.revolution {
        Some(rev) => match &rev.axis {
            Some(axis) => {
                let _ = writeln!(out, "surface of revolution ({}), axis: {}", rev.case, element_text(axis, digits));
            }
            None => {
                let _ = writeln!(out, "surface of revolution ({}), axis not recovered", rev.case);
            }
        },
        None => {
            let _ = writeln!(out, "not a surface of revolution");
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "cases:");
    for d in &r.diagnostics {
        let what = match &d.outcome {
            CaseOutcome::Skipped => "skipped".to_string(),
            CaseOutcome::Empty => "no real solutions".to_string(),
            CaseOutcome::Solved { roots } => format!("{} real solution(s)", roots),
            CaseOutcome::PositiveDimensional { witness, residual } => {
                format!("curve of solutions {} = 0, {} isolated", witness, residual)
            }
            CaseOutcome::Failed(e) => format!("failed: {}", e),
        };
        let _ = writeln!(out, "  {:<5} {:>3} equations, degree {:>2}: {}", d.case.to_string(), d.equations, d.max_degree, what);
        for why in &d.rejected {
            let _ = writeln!(out, "        rejected: {}", why);
        }
    }
    out
}

/// Per-stage wall times, one line per case.
pub fn timings(r: &SymmetryReport) -> String {
    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
    let mut out = String::new();
    let _ = writeln!(out, "prepare {:>10.3} ms", ms(r.prepare_time));
    let _ = writeln!(out, "case     frame   assemble      solve  instantiate  (ms)");
    for d in &r.diagnostics {
        let t = &d.times;
        let _ = writeln!(
            out,
            "{:<5} {:>8.3} {:>10.3} {:>10.3} {:>12.3}",
            d.case.to_string(),
            ms(t.frame),
            ms(t.assemble),
            ms(t.solve),
            ms(t.instantiate)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use surfsym::arith::rat::{int, rat};

    #[test]
    fn linear_forms() {
        let one = RatInterval::point(int(1));
        let minus = RatInterval::point(int(-1));
        let half = RatInterval::point(rat(1, 2));
        let zero = RatInterval::point(int(0));
        assert_eq!(linear(&[(&minus, "t"), (&zero, "s"), (&half, "")], 6), "-t + 1/2");
        assert_eq!(linear(&[(&zero, "t"), (&one, "s"), (&zero, "")], 6), "s");
        assert_eq!(linear(&[(&zero, "x")], 6), "0");
        let approx = RatInterval::new(rat(-867, 1000), rat(-866, 1000));
        assert_eq!(linear(&[(&approx, "y")], 2), "-~0.86*y");
    }

    #[test]
    fn numbers_serialize() {
        let n = Number::from_interval(&RatInterval::point(rat(-3, 4)));
        assert_eq!(serde_json::to_string(&n).unwrap(), "\"-3/4\"");
        let n = Number::from_interval(&RatInterval::new(rat(1, 3), rat(1, 2)));
        assert_eq!(serde_json::to_string(&n).unwrap(), r#"{"lo":"1/3","hi":"1/2","minpoly":null}"#);
    }
}
