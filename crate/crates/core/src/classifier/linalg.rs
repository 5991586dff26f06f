//! Exact linear algebra on small rational systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;

pub type Vec3 = [Rat; 3];

/// Affine solution set `p + span(basis)` of `rows · x = rhs`, or `None` when
/// inconsistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub point: Vec3,
    pub basis: Vec<Vec3>,
}

pub fn solve_affine(rows: &[Vec3], rhs: &[Rat]) -> Option<AffineSolution> {
    let mut a: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| vec![r[0].clone(), r[1].clone(), r[2].clone(), b.clone()])
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Rat::one() / &a[row][col];
        for k in 0..4 {
            a[row][k] = &a[row][k] * &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for k in 0..4 {
                    let t = &f * &a[row][k];
                    a[i][k] = &a[i][k] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[3].is_zero()) {
        return None;
    }
    let mut point: Vec3 = std::array::from_fn(|_| Rat::zero());
    for (i, &c) in pivots.iter().enumerate() {
        point[c] = a[i][3].clone();
    }
    let mut basis = Vec::new();
    for free in (0..3).filter(|c| !pivots.contains(c)) {
        let mut v: Vec3 = std::array::from_fn(|_| Rat::zero());
        v[free] = Rat::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -&a[i][free];
        }
        basis.push(v);
    }
    Some(AffineSolution { point, basis })
}

pub fn dot(a: &Vec3, b: &Vec3) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

/// Scales a nonzero vector to coprime integers with first nonzero entry positive.
pub fn primitive(v: &Vec3) -> Vec3 {
    let den = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return v.clone();
    }
    let lead_neg = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    let g = if lead_neg { -g } else { g };
    std::array::from_fn(|i| Rat::from_integer(&ints[i] / &g))
}

/// The point of the line `p + λ d` closest to the origin.
pub fn project_origin(p: &Vec3, d: &Vec3) -> Vec3 {
    let lam = dot(p, d) / dot(d, d);
    std::array::from_fn(|i| &p[i] - &lam * &d[i])
}
