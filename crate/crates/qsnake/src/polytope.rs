//! The polytope `P(a) = conv(B(a))`: exact hull membership, the lattice
//! convexity check, and the half-space separating `B•(a)` from `B∘(a)`.
//!
//! Membership is decided on the dual side. `c ∉ conv(B)` iff some `h`
//! satisfies `h·(b − c) ≤ −1` for every generator `b`; that system has only
//! `k` unknowns, which Fourier–Motzkin elimination removes one at a time.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::cf::CfExpansion;
use crate::error::Error;
use crate::numeration::{enumerate_admissible, is_admissible, is_filled, Digits};

/// `Σ coef_j h_j ≤ rhs`, scaled to coprime integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Row {
    coef: Vec<i128>,
    rhs: i128,
    /// Generators combined into this row; `None` once there are too many to track.
    history: Option<u128>,
}

impl Row {
    fn normalized(mut self) -> Row {
        let g = self.coef.iter().fold(self.rhs.abs(), |g, c| g.gcd(&c.abs()));
        if g > 1 {
            self.coef.iter_mut().for_each(|c| *c /= g);
            self.rhs /= g;
        }
        self
    }
}

/// Generators of a hull, all of the same dimension.
#[derive(Clone, Debug)]
pub struct HullSystem {
    generators: Vec<Vec<i64>>,
    dim: usize,
}

impl HullSystem {
    pub fn new(generators: Vec<Vec<i64>>) -> Self {
        let dim = generators.first().map_or(0, Vec::len);
        assert!(generators.iter().all(|g| g.len() == dim), "mixed dimensions");
        HullSystem { generators, dim }
    }

    pub fn of_expansion(a: &CfExpansion) -> Self {
        HullSystem::new(
            enumerate_admissible(a).into_iter().map(|b| b.0.into_iter().map(|d| d as i64).collect()).collect(),
        )
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Exact test of `c ∈ conv(generators)`.
    pub fn in_hull(&self, c: &[i64]) -> Result<bool, Error> {
        if self.generators.is_empty() {
            return Ok(false);
        }
        let track = self.generators.len() <= 128;
        let rows: Vec<Row> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, b)| {
                Row {
                    coef: b.iter().zip(c).map(|(&bi, &ci)| (bi - ci) as i128).collect(),
                    rhs: -1,
                    history: track.then(|| 1u128 << i),
                }
                .normalized()
            })
            .collect();
        Ok(!feasible(rows, self.dim)?)
    }
}

/// Fourier–Motzkin feasibility of `rows` over the rationals.
fn feasible(mut rows: Vec<Row>, dim: usize) -> Result<bool, Error> {
    for j in 0..dim {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in rows {
            match r.coef[j].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => {
                    if seen.insert((r.coef.clone(), r.rhs)) {
                        next.push(r);
                    }
                }
            }
        }
        for p in &pos {
            for n in &neg {
                let history = match (p.history, n.history) {
                    (Some(a), Some(b)) => {
                        let h = a | b;
                        // Chernikov: after j+1 eliminations a useful row
                        // combines at most j+2 originals.
                        if h.count_ones() as usize > j + 2 {
                            continue;
                        }
                        Some(h)
                    }
                    _ => None,
                };
                let (sp, sn) = (-n.coef[j], p.coef[j]);
                let mul = |a: i128, b: i128| a.checked_mul(b).ok_or(Error::TooLarge);
                let mut coef = Vec::with_capacity(p.coef.len());
                for (a, b) in p.coef.iter().zip(&n.coef) {
                    coef.push(mul(sp, *a)?.checked_add(mul(sn, *b)?).ok_or(Error::TooLarge)?);
                }
                let rhs = mul(sp, p.rhs)?.checked_add(mul(sn, n.rhs)?).ok_or(Error::TooLarge)?;
                let r = Row { coef, rhs, history }.normalized();
                if r.coef.iter().all(|&c| c == 0) {
                    if r.rhs < 0 {
                        return Ok(false);
                    }
                    continue;
                }
                if seen.insert((r.coef.clone(), r.rhs)) {
                    next.push(r);
                }
            }
        }
        rows = next;
    }
    Ok(rows.iter().all(|r| r.rhs >= 0))
}

/// `H⁺ = {δ_{a0}(1−x0) + (1−δ_{a0})(a1−x1) > 0}` with `δ_x = [x ≠ 0]`:
/// `x0 < 1` when `a0 ≠ 0`, otherwise `x1 < a1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfSpace {
    /// `normal · x < offset` (or `≤` when not strict)
    pub normal: Vec<i64>,
    pub offset: i64,
    pub strict: bool,
}

impl HalfSpace {
    pub fn of_expansion(a: &CfExpansion) -> HalfSpace {
        let q = a.quotients();
        let mut normal = vec![0; q.len()];
        if q[0] != 0 || q.len() == 1 {
            normal[0] = 1;
            HalfSpace { normal, offset: 1, strict: true }
        } else {
            normal[1] = 1;
            HalfSpace { normal, offset: q[1] as i64, strict: true }
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let lhs = self.normal.iter().zip(x).map(|(n, v)| n * v).sum::<i64>();
        if self.strict {
            lhs < self.offset
        } else {
            lhs <= self.offset
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityReport {
    pub expansion: CfExpansion,
    pub dimension: usize,
    pub generators: usize,
    pub box_size: usize,
    /// Box points where hull membership and admissibility disagree.
    pub violations: Vec<Vec<i64>>,
}

impl ConvexityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scans the box `∏[0, a_i]` comparing `in_hull` with `is_admissible`.
pub fn verify_lattice_convexity(a: &CfExpansion) -> Result<ConvexityReport, Error> {
    let hull = HullSystem::of_expansion(a);
    let q = a.quotients();
    let mut violations = Vec::new();
    let mut point = vec![0u64; q.len()];
    let mut box_size = 0;
    loop {
        box_size += 1;
        let c: Vec<i64> = point.iter().map(|&d| d as i64).collect();
        if hull.in_hull(&c)? != is_admissible(&Digits(point.clone()), a)? {
            violations.push(c);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == q.len() {
                return Ok(ConvexityReport {
                    expansion: a.clone(),
                    dimension: q.len(),
                    generators: hull.generators.len(),
                    box_size,
                    violations,
                });
            }
            if point[i] < q[i] {
                point[i] += 1;
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

/// `B∘ = B ∩ H⁺` and `B• = B ∖ H⁺`, elementwise.
pub fn verify_halfspace_split(a: &CfExpansion) -> bool {
    let h = HalfSpace::of_expansion(a);
    enumerate_admissible(a).iter().all(|b| {
        let x: Vec<i64> = b.0.iter().map(|&d| d as i64).collect();
        h.contains(&x) != is_filled(b, a)
    })
}

/// `(#(B ∖ H⁺), #(B ∩ H⁺))`.
pub fn halfspace_counts(a: &CfExpansion) -> (usize, usize) {
    let h = HalfSpace::of_expansion(a);
    let inside = enumerate_admissible(a)
        .iter()
        .filter(|b| h.contains(&b.0.iter().map(|&d| d as i64).collect::<Vec<_>>()))
        .count();
    (enumerate_admissible(a).len() - inside, inside)
}

/// Sizes of the slices `‖b‖₁ = 0, 1, …, Σa_i`.
pub fn slice_counts(a: &CfExpansion) -> Vec<usize> {
    let mut counts = vec![0; a.sum() as usize + 1];
    for b in enumerate_admissible(a) {
        counts[b.norm1() as usize] += 1;
    }
    counts
}

/// Generators not in the hull of the others (reported, not asserted on).
pub fn observed_vertices(a: &CfExpansion) -> Result<Vec<Vec<i64>>, Error> {
    let all = HullSystem::of_expansion(a).generators;
    let mut out = Vec::new();
    for (i, g) in all.iter().enumerate() {
        let rest: Vec<Vec<i64>> = all.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        if !HullSystem::new(rest).in_hull(g)? {
            out.push(g.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> CfExpansion {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        let h = HullSystem::of_expansion(&a("[0;1,3,1]"));
        assert!(h.generators().iter().all(|g| h.in_hull(g).unwrap()));
        assert!(!h.in_hull(&[0, 0, 0, 1]).unwrap());
        let h = HullSystem::of_expansion(&a("[2;2,2]"));
        assert!(h.in_hull(&[1, 1, 1]).unwrap());
        let tri = HullSystem::new(vec![vec![0, 0], vec![2, 0], vec![0, 2]]);
        assert!(tri.in_hull(&[1, 1]).unwrap());
        assert!(!tri.in_hull(&[2, 1]).unwrap());
        let seg = HullSystem::new(vec![vec![0, 0], vec![2, 2]]);
        assert!(seg.in_hull(&[1, 1]).unwrap());
        assert!(!seg.in_hull(&[1, 0]).unwrap());
    }

    /// Rational points of a triangle in the plane against a direct
    /// barycentric test (scaled by 2 to stay integral).
    #[test]
    fn fm_matches_barycentric() {
        let verts = [(0i64, 0i64), (6, 2), (2, 6)];
        let hull = HullSystem::new(verts.iter().map(|&(x, y)| vec![x, y]).collect());
        let cross = |o: (i64, i64), p: (i64, i64), q: (i64, i64)| (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0);
        for x in -1..=7 {
            for y in -1..=7 {
                let p = (x, y);
                let s = [cross(verts[0], verts[1], p), cross(verts[1], verts[2], p), cross(verts[2], verts[0], p)];
                let inside = s.iter().all(|&v| v >= 0) || s.iter().all(|&v| v <= 0);
                assert_eq!(hull.in_hull(&[x, y]).unwrap(), inside, "{p:?}");
            }
        }
    }

    #[test]
    fn convexity_examples() {
        for s in ["[0;1,3,1]", "[2;2,2]", "[1;1]"] {
            let r = verify_lattice_convexity(&a(s)).unwrap();
            assert!(r.holds(), "{s}: {:?}", r.violations);
        }
        let r = verify_lattice_convexity(&a("[2;2,2]")).unwrap();
        assert_eq!((r.box_size, r.generators), (27, 17));
    }

    #[test]
    fn halfspace_examples() {
        assert_eq!(
            HalfSpace::of_expansion(&a("[0;1,3,1]")),
            HalfSpace { normal: vec![0, 1, 0, 0], offset: 1, strict: true }
        );
        assert_eq!(halfspace_counts(&a("[0;1,3,1]")), (4, 5));
        assert_eq!(HalfSpace::of_expansion(&a("[1;1]")), HalfSpace { normal: vec![1, 0], offset: 1, strict: true });
        assert_eq!(halfspace_counts(&a("[1;1]")), (2, 1));
        assert_eq!(halfspace_counts(&a("[2;2,2]")), (12, 5));
        for e in CfExpansion::all_bounded(10, 10) {
            assert!(verify_halfspace_split(&e), "{e}");
        }
    }

    #[test]
    fn unimodal_slices() {
        for e in CfExpansion::all_bounded(10, 10) {
            let c = slice_counts(&e);
            let peak = c.iter().position(|v| v == c.iter().max().unwrap()).unwrap();
            assert!(c[..=peak].windows(2).all(|w| w[0] <= w[1]), "{e}: {c:?}");
            assert!(c[peak..].windows(2).all(|w| w[0] >= w[1]), "{e}: {c:?}");
        }
    }

    #[test]
    fn vertices_are_generators() {
        let v = observed_vertices(&a("[1;1]")).unwrap();
        assert_eq!(v, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
    }
}
