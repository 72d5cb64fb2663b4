//! Built-in models: the Hirzebruch surfaces as K*-surfaces, the smooth quadric
//! threefold, the projectivized cotangent bundle of P2, and small toric fans.
//!
//! These are the standard desk examples. Each model validates cleanly and the
//! divisors returned here are the anticanonical / ample divisors used in the
//! test suites.

use std::collections::BTreeMap;

use crate::fan::Fan;
use crate::fansy::{CurvePoint, DivisorKey, FansyDivisor, Splitting, WeilDivisor};
use crate::linalg::{ivec, qvec, IVec, QVec};
use crate::poly::{Cone, Polyhedron};
use crate::rat::{rat, ratio, Rat};

fn cone2(a: &[i64], b: &[i64]) -> Cone {
    Cone::from_rays(2, &[ivec(a), ivec(b)]).unwrap()
}

fn ray1(sign: i64) -> Cone {
    Cone::from_rays(1, &[ivec(&[sign])]).unwrap()
}

fn seg1(a: Rat, b: Rat) -> Polyhedron {
    Polyhedron::from_vertices(1, &[vec![a], vec![b]]).unwrap()
}

fn halfline(v: Rat, dir: i64) -> Polyhedron {
    Polyhedron::from_generators(1, &[vec![v]], &[ivec(&[dir])]).unwrap()
}

/// The fan of the Hirzebruch surface F_n: rays (1,0), (0,1), (-1,n), (0,-1).
pub fn hirzebruch_fan(n: i64) -> Fan {
    Fan::new(
        2,
        vec![
            cone2(&[1, 0], &[0, 1]),
            cone2(&[0, 1], &[-1, n]),
            cone2(&[-1, n], &[0, -1]),
            cone2(&[0, -1], &[1, 0]),
        ],
    )
}

/// The splitting used for the standard downgrade of F_n.
pub fn hirzebruch_splitting() -> Splitting {
    Splitting { f: vec![ivec(&[1, 0])], proj: ivec(&[0, 1]), s: vec![ivec(&[1, 0])] }
}

/// F_n as a K*-surface: slices over 0 and infinity on the fan of P1,
/// marked cone (-inf, 0].
pub fn hirzebruch(n: i64) -> FansyDivisor {
    let mut slices = BTreeMap::new();
    slices.insert(
        CurvePoint::zero(),
        vec![
            halfline(rat(0), 1),
            seg1(ratio(-1, n), rat(0)),
            halfline(ratio(-1, n), -1),
        ],
    );
    slices.insert(
        CurvePoint::Infinity,
        vec![halfline(rat(0), 1), halfline(rat(0), -1)],
    );
    FansyDivisor {
        rank: 1,
        slices,
        tailfan: Fan::new(1, vec![ray1(1), ray1(-1)]),
        marked: vec![ray1(-1)],
    }
}

/// The downgrade of the ample O(D_{rho2} + D_{rho3}) on F_n:
/// coefficient 1 at (0, -1/n) and 1 at (inf, 0).
pub fn hirzebruch_ample(n: i64) -> WeilDivisor {
    let mut c = WeilDivisor::new();
    c.insert(DivisorKey::Vertical(CurvePoint::zero(), vec![ratio(-1, n)]), rat(1));
    c.insert(DivisorKey::Vertical(CurvePoint::Infinity, vec![rat(0)]), rat(1));
    c
}

/// The linearly equivalent (n+1) D_{rho0} + D_{rho1}.
pub fn hirzebruch_ample_alt(n: i64) -> WeilDivisor {
    let mut c = WeilDivisor::new();
    c.insert(DivisorKey::Horizontal(ivec(&[1])), rat(n + 1));
    c.insert(DivisorKey::Vertical(CurvePoint::zero(), vec![rat(0)]), rat(1));
    c
}

/// The smooth quadric threefold in P4 as a complexity-one T-variety.
/// Tail fan: the four cones on the rays (1,1), (1,-1), (-1,1), (-1,-1);
/// everything marked. Slices over 0, 1, infinity.
pub fn quadric() -> FansyDivisor {
    let right = cone2(&[1, 1], &[1, -1]);
    let top = cone2(&[1, 1], &[-1, 1]);
    let left = cone2(&[-1, 1], &[-1, -1]);
    let bottom = cone2(&[1, -1], &[-1, -1]);
    let tailfan = Fan::new(2, vec![right.clone(), top.clone(), left.clone(), bottom.clone()]);
    let v = |a: i64, b: i64| -> QVec { qvec(&[a, b]) };
    let seg = |p: QVec, q: QVec, c: &Cone| -> Polyhedron {
        Polyhedron::from_generators(2, &[p, q], &c.rays).unwrap()
    };
    let at = |p: QVec, c: &Cone| -> Polyhedron {
        Polyhedron::from_generators(2, &[p], &c.rays).unwrap()
    };
    let mut slices = BTreeMap::new();
    // slice over 0: split along the segment from (0,0) to (0,-1)
    slices.insert(
        CurvePoint::zero(),
        vec![
            seg(v(0, 0), v(0, -1), &right),
            at(v(0, 0), &top),
            seg(v(0, 0), v(0, -1), &left),
            at(v(0, -1), &bottom),
        ],
    );
    // slice over 1: split along the segment from (0,0) to (-1,0)
    slices.insert(
        CurvePoint::finite(1),
        vec![
            at(v(0, 0), &right),
            seg(v(0, 0), v(-1, 0), &top),
            at(v(-1, 0), &left),
            seg(v(0, 0), v(-1, 0), &bottom),
        ],
    );
    // slice over infinity: the fan translated to (1/2, 1/2)
    let half = vec![ratio(1, 2), ratio(1, 2)];
    slices.insert(
        CurvePoint::Infinity,
        vec![
            at(half.clone(), &right),
            at(half.clone(), &top),
            at(half.clone(), &left),
            at(half.clone(), &bottom),
        ],
    );
    let mut marked = vec![right, top, left, bottom];
    for r in [[1i64, 1], [1, -1], [-1, 1], [-1, -1]] {
        marked.push(Cone::from_rays(2, &[ivec(&r)]).unwrap());
    }
    FansyDivisor { rank: 2, slices, tailfan, marked }
}

/// -K on the quadric: 3 D_{(inf, (1/2,1/2))}.
pub fn quadric_anticanonical() -> WeilDivisor {
    let mut c = WeilDivisor::new();
    c.insert(
        DivisorKey::Vertical(CurvePoint::Infinity, vec![ratio(1, 2), ratio(1, 2)]),
        rat(3),
    );
    c
}

/// P(Omega_P2): the projectivized cotangent bundle of P2. Hexagon tail fan,
/// everything marked, slices over 0, 1, infinity split along segments to
/// (0,1), (1,0) and (-1,-1) respectively.
pub fn cotangent() -> FansyDivisor {
    let s1 = cone2(&[1, 0], &[1, 1]);
    let s2 = cone2(&[1, 1], &[0, 1]);
    let s3 = cone2(&[0, 1], &[-1, 0]);
    let s4 = cone2(&[-1, 0], &[-1, -1]);
    let s5 = cone2(&[-1, -1], &[0, -1]);
    let s6 = cone2(&[0, -1], &[1, 0]);
    let cones = [&s1, &s2, &s3, &s4, &s5, &s6];
    let tailfan = Fan::new(2, cones.iter().map(|c| (*c).clone()).collect());
    let v = |a: i64, b: i64| -> QVec { qvec(&[a, b]) };
    let seg = |p: QVec, q: QVec, c: &Cone| -> Polyhedron {
        Polyhedron::from_generators(2, &[p, q], &c.rays).unwrap()
    };
    let at = |p: QVec, c: &Cone| -> Polyhedron {
        Polyhedron::from_generators(2, &[p], &c.rays).unwrap()
    };
    let mut slices = BTreeMap::new();
    slices.insert(
        CurvePoint::zero(),
        vec![
            seg(v(0, 0), v(0, 1), &s1),
            at(v(0, 1), &s2),
            at(v(0, 1), &s3),
            seg(v(0, 0), v(0, 1), &s4),
            at(v(0, 0), &s5),
            at(v(0, 0), &s6),
        ],
    );
    slices.insert(
        CurvePoint::finite(1),
        vec![
            at(v(1, 0), &s1),
            seg(v(0, 0), v(1, 0), &s2),
            at(v(0, 0), &s3),
            at(v(0, 0), &s4),
            seg(v(0, 0), v(1, 0), &s5),
            at(v(1, 0), &s6),
        ],
    );
    slices.insert(
        CurvePoint::Infinity,
        vec![
            at(v(0, 0), &s1),
            at(v(0, 0), &s2),
            seg(v(0, 0), v(-1, -1), &s3),
            at(v(-1, -1), &s4),
            at(v(-1, -1), &s5),
            seg(v(0, 0), v(-1, -1), &s6),
        ],
    );
    let mut marked: Vec<Cone> = cones.iter().map(|c| (*c).clone()).collect();
    for r in [[1i64, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]] {
        marked.push(Cone::from_rays(2, &[ivec(&r)]).unwrap());
    }
    FansyDivisor { rank: 2, slices, tailfan, marked }
}

/// -K on P(Omega_P2): 2 D_{(0,(0,0))} + 2 D_{(0,(0,1))}.
pub fn cotangent_anticanonical() -> WeilDivisor {
    let mut c = WeilDivisor::new();
    c.insert(DivisorKey::Vertical(CurvePoint::zero(), qvec(&[0, 0])), rat(2));
    c.insert(DivisorKey::Vertical(CurvePoint::zero(), qvec(&[0, 1])), rat(2));
    c
}

/// The trivial fansy divisor P1 x P1 (rank one, trivial slice stored over 0).
pub fn p1_times_p1() -> FansyDivisor {
    let mut slices = BTreeMap::new();
    slices.insert(
        CurvePoint::zero(),
        vec![halfline(rat(0), 1), halfline(rat(0), -1)],
    );
    FansyDivisor {
        rank: 1,
        slices,
        tailfan: Fan::new(1, vec![ray1(1), ray1(-1)]),
        marked: vec![],
    }
}

/// The fan of P1 x P1 (rays +-e1, +-e2).
pub fn square_fan() -> Fan {
    Fan::new(
        2,
        vec![
            cone2(&[1, 0], &[0, 1]),
            cone2(&[0, 1], &[-1, 0]),
            cone2(&[-1, 0], &[0, -1]),
            cone2(&[0, -1], &[1, 0]),
        ],
    )
}

/// The singular projective surface with rays (1,1), (-1,1), (-1,-1), (1,-1).
pub fn diamond_fan() -> Fan {
    Fan::new(
        2,
        vec![
            cone2(&[1, 1], &[-1, 1]),
            cone2(&[-1, 1], &[-1, -1]),
            cone2(&[-1, -1], &[1, -1]),
            cone2(&[1, -1], &[1, 1]),
        ],
    )
}

/// Toric divisor coefficients listed in `fan.rays()` order.
pub fn toric_divisor(fan: &Fan, entries: &[(IVec, i64)]) -> Vec<Rat> {
    let rays = fan.rays();
    let mut out = vec![rat(0); rays.len()];
    for (r, a) in entries {
        let i = rays.iter().position(|x| x == r).expect("ray in fan");
        out[i] = rat(*a);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn models_validate() {
        assert!(hirzebruch(1).validate().is_empty());
        assert!(hirzebruch(2).validate().is_empty());
        assert!(hirzebruch(3).validate().is_empty());
        assert!(quadric().validate().is_empty());
        assert!(cotangent().validate().is_empty());
        assert!(p1_times_p1().validate().is_empty());
    }

    #[test]
    fn quadric_shape() {
        let q = quadric();
        assert_eq!(q.vertex_set().len(), 5);
        assert!(q.extremal_rays().is_empty());
    }

    #[test]
    fn cotangent_shape() {
        let c = cotangent();
        assert_eq!(c.vertex_set().len(), 6);
        assert!(c.extremal_rays().is_empty());
    }
}
