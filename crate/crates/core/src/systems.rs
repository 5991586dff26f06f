//! Assembly of the polynomial system `Q·x(t, s) + b = x(φ(t, s))`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::arith::gcd::gcd;
use crate::arith::{vars, Exponents, MPoly, RatFn, Vars};
use crate::candidates::{uv, CandidateFrame, CaseId};
use crate::surface::Parametrization;

fn tsuv() -> &'static Vars {
    static CTX: OnceLock<Vars> = OnceLock::new();
    CTX.get_or_init(|| vars(&["t", "s", "u", "v"]))
}

/// Where an equation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// Coefficient of `t^t_exp s^s_exp` in component `component` (0, 1, 2 = x, y, z).
    Coefficient { component: usize, t_exp: u32, s_exp: u32 },
    /// One of the three metric relations (0, 1, 2 = E, F, G).
    Metric(usize),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Coefficient {
                component,
                t_exp,
                s_exp,
            } => write!(f, "{}[t^{} s^{}]", ["x", "y", "z"][*component], t_exp, s_exp),
            Provenance::Metric(i) => write!(f, "{}", ["E", "F", "G"][*i]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub case: CaseId,
    /// Primitive, pairwise distinct, sorted by total degree then bit size.
    pub equations: Vec<MPoly>,
    pub provenance: Vec<Provenance>,
    /// Polynomials that must not vanish at a solution.
    pub side_conditions: Vec<MPoly>,
}

fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() {
        return b.clone();
    }
    if b.is_constant() {
        return a.clone();
    }
    let g = gcd(a, b);
    (a * b).try_div(&g).expect("gcd divides").monic()
}

fn lift(p: &MPoly) -> MPoly {
    p.with_vars(tsuv()).expect("(u, v) embeds")
}

/// `r * w` as a polynomial, for a multiple `w` of the denominator of `r`.
fn scaled(r: &RatFn, w: &MPoly) -> MPoly {
    let k = w.try_div(r.den()).expect("common denominator");
    r.num() * &k
}

/// Builds the case's system with metric relations appended.
pub fn assemble(p: &Parametrization, frame: &CandidateFrame, metric: &[MPoly]) -> PolySystem {
    let phi = &frame.phi;
    let one = MPoly::one(uv());
    let w = frame
        .q
        .iter()
        .flatten()
        .chain(frame.b.iter())
        .fold(one.clone(), |acc, r| lcm(&acc, r.den()));
    let wphi = phi
        .m
        .iter()
        .flatten()
        .chain(phi.shift.iter())
        .fold(one.clone(), |acc, r| lcm(&acc, r.den()));

    let t = MPoly::var("t", tsuv()).unwrap();
    let s = MPoly::var("s", tsuv()).unwrap();
    let lifted = |r: &RatFn| lift(&scaled(r, &wphi));
    let p1 = &(&(&lifted(&phi.m[0][0]) * &t) + &(&lifted(&phi.m[0][1]) * &s)) + &lifted(&phi.shift[0]);
    let p2 = &(&(&lifted(&phi.m[1][0]) * &t) + &(&lifted(&phi.m[1][1]) * &s)) + &lifted(&phi.shift[1]);
    let n = p.n;
    let wphi4 = lift(&wphi);
    let mut pow1 = vec![MPoly::one(tsuv())];
    let mut pow2 = vec![MPoly::one(tsuv())];
    let mut poww = vec![MPoly::one(tsuv())];
    for k in 1..=n as usize {
        pow1.push(&pow1[k - 1] * &p1);
        pow2.push(&pow2[k - 1] * &p2);
        poww.push(&poww[k - 1] * &wphi4);
    }
    let w4 = lift(&w);
    let x4 = p.x.clone().map(|c| c.with_vars(tsuv()).unwrap());

    let mut raw: Vec<(MPoly, Provenance)> = Vec::new();
    for k in 0..3 {
        let mut lhs = lift(&scaled(&frame.b[k], &w));
        for j in 0..3 {
            lhs = &lhs + &(&lift(&scaled(&frame.q[k][j], &w)) * &x4[j]);
        }
        let lhs = &lhs * &poww[n as usize];
        let mut rhs = MPoly::zero(tsuv());
        for (e, c) in p.x[k].terms() {
            let (i, j) = (e[0] as usize, e[1] as usize);
            let term = &(&pow1[i] * &pow2[j]) * &poww[n as usize - i - j];
            rhs = &rhs + &term.scale(c);
        }
        let diff = &lhs - &(&w4 * &rhs);
        for ((te, se), coeff) in split_ts(&diff) {
            raw.push((
                coeff,
                Provenance::Coefficient {
                    component: k,
                    t_exp: te,
                    s_exp: se,
                },
            ));
        }
    }
    for (i, m) in metric.iter().enumerate() {
        raw.push((m.clone(), Provenance::Metric(i)));
    }

    let mut side: Vec<MPoly> = phi.side_conditions.clone();
    for d in [&w, &wphi] {
        if !d.is_constant() {
            side.push(d.primitive());
        }
    }
    let mut dedup_side: Vec<MPoly> = Vec::new();
    for sc in side {
        if !sc.is_constant() && !dedup_side.contains(&sc) {
            dedup_side.push(sc);
        }
    }
    let atoms = split_atoms(&phi.side_conditions);

    let mut eqs: Vec<(MPoly, Provenance)> = Vec::new();
    for (e, prov) in raw {
        if e.is_zero() {
            continue;
        }
        let mut e = e.primitive();
        for a in &atoms {
            e = e.saturate_by(a).0;
        }
        let e = e.primitive();
        if !eqs.iter().any(|(f, _)| *f == e) {
            eqs.push((e, prov));
        }
    }
    eqs.sort_by_key(|(e, _)| (e.total_degree(), e.bit_size()));
    let (equations, provenance) = eqs.into_iter().unzip();
    PolySystem {
        case: frame.case,
        equations,
        provenance,
        side_conditions: dedup_side,
    }
}

/// Side conditions with the factors they share divided out, so that
/// saturation by each piece removes every nonvanishing factor.
fn split_atoms(side: &[MPoly]) -> Vec<MPoly> {
    let mut atoms: Vec<MPoly> = Vec::new();
    let mut sorted: Vec<&MPoly> = side.iter().filter(|a| !a.is_constant()).collect();
    sorted.sort_by_key(|a| (a.total_degree(), a.num_terms()));
    for a in sorted {
        let mut rest = a.clone();
        for b in &atoms {
            rest = rest.saturate_by(b).0;
        }
        let rest = rest.primitive();
        if !rest.is_constant() && !atoms.contains(&rest) {
            atoms.push(rest);
        }
    }
    atoms
}

/// Groups a polynomial in `(t, s, u, v)` by its `(t, s)` monomials.
fn split_ts(p: &MPoly) -> BTreeMap<(u32, u32), MPoly> {
    let mut groups: BTreeMap<(u32, u32), Vec<(Exponents, crate::arith::Rat)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let inner: Exponents = [e[2], e[3]].into_iter().collect();
        groups.entry((e[0], e[1])).or_default().push((inner, c.clone()));
    }
    groups
        .into_iter()
        .map(|(k, terms)| (k, MPoly::from_terms(uv(), terms)))
        .collect()
}

impl PolySystem {
    /// Plain-text form: one equation per line, then `# side:` lines.
    pub fn dump(&self) -> String {
        let (un, vn) = self.case.config.unknowns();
        let mut out = String::new();
        let _ = writeln!(out, "# case {}", self.case);
        let _ = writeln!(out, "# unknowns: u = {}, v = {}", un, vn);
        for e in &self.equations {
            let _ = writeln!(out, "{}", e);
        }
        for s in &self.side_conditions {
            let _ = writeln!(out, "# side: {}", s);
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.equations.iter().map(|e| e.total_degree()).max().unwrap_or(0)
    }
}
