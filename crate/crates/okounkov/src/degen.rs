//! Degeneration toolkit: value semigroups and their Newton-Okounkov bodies,
//! divisorial polytopes, one-parameter decompositions, and the degeneration
//! chain of a K*-surface down to a weighted projective plane.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::body::{okounkov_body, OkounkovBody};
use crate::error::{Error, Result};
use crate::fan::inner_normal_fan;
use crate::fansy::{downgrade, downgrade_divisor, CurvePoint, FansyDivisor, Splitting};
use crate::flag::{make_flag, Flag, FlagKind, FlagSpec};
use crate::linalg::{self, dot, egcd, is_integer_vec, primitive, to_qvec, IVec, QVec};
use crate::poly::{Cone, Polyhedron};
use crate::rat::{floor_rat, is_integer, Int, Rat};
use crate::support::{hstar, support_from_weil, SupportFn};

/// Valuation vectors of the homogeneous sections of O(m D_h), per level m.
#[derive(Clone, Debug)]
pub struct ValueSemigroup {
    pub levels: BTreeMap<u32, BTreeSet<IVec>>,
    pub generated_up_to: u32,
}

/// Level-one enumeration: for each integral weight u of the box with
/// nonnegative rounded degree e(u), the achievable first coordinates are the
/// integer interval of admissible vanishing orders at the flag point, and the
/// remaining coordinates are the pairing of the weight with the flag rays.
fn level_one(h: &SupportFn, flag: &Flag) -> Result<BTreeSet<IVec>> {
    let hs = hstar(h)?;
    if !hs.complete {
        return Err(Error::NotComplete);
    }
    let mut out = BTreeSet::new();
    for u in hs.bx.lattice_points()? {
        let uq = to_qvec(&u);
        let e: Int = hs.rounded_degree(&uq);
        if e < Int::zero() {
            continue;
        }
        let (lo, hi) = match flag.kind {
            FlagKind::G1 | FlagKind::G2 => (Int::zero(), e.clone()),
            FlagKind::T1 | FlagKind::T2 => {
                let p1 = flag.base_point().unwrap();
                let e1 = floor_rat(&hs.eval(&p1, &uq));
                (-e1.clone(), &e - &e1)
            }
        };
        let mut k = lo.clone();
        while k <= hi {
            let nu = match flag.kind {
                FlagKind::G1 | FlagKind::G2 => {
                    let mut v = vec![k.clone()];
                    for r in &flag.ray_order {
                        let val = crate::linalg::dot_qi(&uq, r);
                        v.push(val.to_integer());
                    }
                    v
                }
                FlagKind::T1 | FlagKind::T2 => {
                    let mut w = vec![Rat::from_integer(k.clone())];
                    w.extend(uq.iter().cloned());
                    flag.ray_order
                        .iter()
                        .map(|n| crate::linalg::dot_qi(&w, n).to_integer())
                        .collect()
                }
            };
            out.insert(nu);
            k += 1;
        }
    }
    Ok(out)
}

/// Value semigroup up to level `m_max`; levels beyond one are m-fold sumsets
/// of level one (exact on P1).
pub fn value_semigroup(h: &SupportFn, flag: &Flag, m_max: u32) -> Result<ValueSemigroup> {
    let hn = crate::flag::normalize(h, flag)?;
    let l1 = level_one(&hn, flag)?;
    if l1.is_empty() {
        return Err(Error::NotBig);
    }
    let mut levels = BTreeMap::new();
    levels.insert(1, l1.clone());
    let mut prev = l1.clone();
    for m in 2..=m_max {
        let mut next = BTreeSet::new();
        for a in &prev {
            for b in &l1 {
                let sum: IVec = a.iter().zip(b).map(|(x, y)| x + y).collect();
                next.insert(sum);
            }
        }
        levels.insert(m, next.clone());
        prev = next;
    }
    Ok(ValueSemigroup { levels, generated_up_to: m_max })
}

/// Direct enumeration of level m (sections of O(m D_h)); the independent
/// check of the sumset identity.
pub fn level_direct(h: &SupportFn, flag: &Flag, m: u32) -> Result<BTreeSet<IVec>> {
    let hn = crate::flag::normalize(h, flag)?;
    let scaled = hn.scale(&Rat::from_integer(Int::from(m as i64)));
    level_one(&scaled, flag)
}

/// The Newton-Okounkov body conv({1} x level 1) projected to R^d.
pub fn newton_okounkov(v: &ValueSemigroup) -> Result<Polyhedron> {
    let l1 = v.levels.get(&1).ok_or(Error::Validation("no level-one data".into()))?;
    let verts: Vec<QVec> = l1.iter().map(|x| to_qvec(x)).collect();
    let rank = verts.first().map(|v| v.len()).unwrap_or(0);
    Polyhedron::from_vertices(rank, &verts)
}

/// A divisorial polytope: a lattice polytope with finitely many concave
/// piecewise affine coordinate functions whose graphs have lattice vertices.
#[derive(Clone, Debug)]
pub struct DivisorialPolytope {
    pub bx: Polyhedron,
    /// per point: h*-style min-of-affine pieces
    pub psi: BTreeMap<CurvePoint, Vec<crate::support::AffinePiece>>,
}

impl DivisorialPolytope {
    pub fn eval(&self, p: &CurvePoint, u: &[Rat]) -> Rat {
        match self.psi.get(p) {
            None => Rat::zero(),
            Some(pieces) => pieces
                .iter()
                .map(|a| dot(&a.slope, u) + &a.constant)
                .min()
                .unwrap_or_else(Rat::zero),
        }
    }

    pub fn degree(&self, u: &[Rat]) -> Rat {
        self.psi.keys().map(|p| self.eval(p, u)).sum()
    }

    /// Linearity regions of Psi_P inside the box, one per active piece.
    pub fn linearity_cells(&self, p: &CurvePoint) -> Result<Vec<(Polyhedron, crate::support::AffinePiece)>> {
        let pieces = match self.psi.get(p) {
            Some(x) => x.clone(),
            None => return Ok(vec![]),
        };
        let mut out = Vec::new();
        for (i, a) in pieces.iter().enumerate() {
            let mut facets = self.bx.facets.clone();
            for (j, b) in pieces.iter().enumerate() {
                if i == j {
                    continue;
                }
                // a <= b on the cell of a
                facets.push(crate::poly::Facet {
                    normal: linalg::sub(&b.slope, &a.slope),
                    offset: &a.constant - &b.constant,
                });
            }
            let cell = Polyhedron::from_constraints(self.bx.rank, &facets, &self.bx.affine_equations)?;
            if cell.dim() == self.bx.dim() {
                out.push((cell, a.clone()));
            }
        }
        Ok(out)
    }
}

/// The divisorial polytope (Box_h, h*) of an ample normalized divisor for a
/// general flag; rejects data violating the defining conditions.
pub fn divisorial_polytope_of(h: &SupportFn, flag: &Flag) -> Result<DivisorialPolytope> {
    if !flag.is_general() {
        return Err(Error::Validation("divisorial polytopes need a general flag".into()));
    }
    let hn = crate::flag::normalize(h, flag)?;
    let hs = hstar(&hn)?;
    if !hs.complete {
        return Err(Error::NotDivisorialPolytope("box is unbounded".into()));
    }
    let dp = DivisorialPolytope { bx: hs.bx.clone(), psi: hs.pieces.clone() };
    // box must be a full-dimensional lattice polytope
    if dp.bx.dim() < dp.bx.rank as isize {
        return Err(Error::NotDivisorialPolytope("box has empty interior".into()));
    }
    for v in &dp.bx.vertices {
        if !is_integer_vec(v) {
            return Err(Error::NotDivisorialPolytope("box vertex not integral".into()));
        }
    }
    // deg Psi >= 0 on the box (concavity: check the box vertices), > 0 inside
    let mut positive_somewhere = false;
    for v in &dp.bx.vertices {
        let d = dp.degree(v);
        if d.is_negative() {
            return Err(Error::NotDivisorialPolytope(format!(
                "deg Psi < 0 at the vertex {v:?}"
            )));
        }
        if d.is_positive() {
            positive_somewhere = true;
        }
    }
    // interior positivity also holds when some interior point is positive
    if !positive_somewhere {
        let centroid = centroid(&dp.bx);
        if !dp.degree(&centroid).is_positive() {
            return Err(Error::NotDivisorialPolytope("deg Psi vanishes identically".into()));
        }
    }
    // integral graph vertices
    for p in dp.psi.keys().cloned().collect::<Vec<_>>() {
        for (cell, piece) in dp.linearity_cells(&p)? {
            for v in &cell.vertices {
                let val = dot(&piece.slope, v) + &piece.constant;
                if !is_integer_vec(v) || !is_integer(&val) {
                    return Err(Error::NotDivisorialPolytope(format!(
                        "graph vertex over {p} at {v:?} is not integral"
                    )));
                }
            }
        }
    }
    Ok(dp)
}

fn centroid(p: &Polyhedron) -> QVec {
    let n = Rat::from_integer(Int::from(p.vertices.len() as i64));
    let mut acc = vec![Rat::zero(); p.rank];
    for v in &p.vertices {
        acc = linalg::add(&acc, v);
    }
    acc.iter().map(|x| x / &n).collect()
}

/// A piecewise affine function given by affine pieces on polyhedral cells.
#[derive(Clone, Debug)]
pub struct PiecewiseAffine {
    pub pieces: Vec<(Polyhedron, crate::support::AffinePiece)>,
}

impl PiecewiseAffine {
    pub fn eval(&self, u: &[Rat]) -> Option<Rat> {
        for (cell, a) in &self.pieces {
            if cell.contains_point(u) {
                return Some(dot(&a.slope, u) + &a.constant);
            }
        }
        None
    }
}

/// An alpha-admissible one-parameter decomposition candidate of Psi_0.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub psi0_0: PiecewiseAffine,
    pub psi0_1: PiecewiseAffine,
    pub alpha: Rat,
}

/// Check the four admissibility conditions; violations come back as data.
pub fn check_decomposition(
    psi: &DivisorialPolytope,
    zero_point: &CurvePoint,
    dec: &Decomposition,
) -> Result<Vec<String>> {
    let mut out = Vec::new();
    if !dec.alpha.is_positive() {
        out.push("alpha must be positive".into());
    }
    // (1) lattice graph vertices of each part
    for (name, part) in [("Psi_0^0", &dec.psi0_0), ("Psi_0^1", &dec.psi0_1)] {
        for (cell, piece) in &part.pieces {
            let clipped = cell.intersect(&psi.bx)?;
            if clipped.empty {
                continue;
            }
            for v in &clipped.vertices {
                let val = dot(&piece.slope, v) + &piece.constant;
                if !is_integer_vec(v) || !is_integer(&val) {
                    out.push(format!("{name}: graph vertex at {v:?} is not integral"));
                }
            }
        }
    }
    // (2) the sum identity on the box: check on the common refinement cells
    let cells0 = psi.linearity_cells(zero_point)?;
    for (c0, piece) in &cells0 {
        for (c1, a1) in &dec.psi0_0.pieces {
            for (c2, a2) in &dec.psi0_1.pieces {
                let cell = c0.intersect(c1)?.intersect(c2)?;
                if cell.empty || cell.dim() < psi.bx.dim() {
                    continue;
                }
                // affine identity: test at the cell vertices
                for v in &cell.vertices {
                    let lhs = dot(&piece.slope, v) + &piece.constant;
                    let rhs = dot(&a1.slope, v)
                        + &a1.constant
                        + &dec.alpha * (dot(&a2.slope, v) + &a2.constant);
                    if lhs != rhs {
                        out.push(format!(
                            "sum identity fails at {v:?}: {lhs} != {rhs}"
                        ));
                    }
                }
                // (3) at most one non-integral slope over each linearity cell
                let n0 = !is_integer_vec(&a1.slope);
                let n1 = !is_integer_vec(&a2.slope);
                if n0 && n1 {
                    out.push(format!(
                        "both parts have non-integral slope on a cell of {:?}",
                        cell.vertices
                    ));
                }
            }
        }
    }
    // (4) alpha != 1 forces integral slopes of Psi_0^1
    if dec.alpha != Rat::one() {
        for (_, a) in &dec.psi0_1.pieces {
            if !is_integer_vec(&a.slope) {
                out.push("alpha != 1 but Psi_0^1 has a non-integral slope".into());
            }
        }
    }
    Ok(out)
}

/// One step of the degeneration chain: pick the lexicographically least
/// extremal point w and its two boundary neighbours, downgrade the normal-fan
/// surface along the primitive direction fixing the neighbours' difference,
/// and compute the Okounkov body at the elliptic fixed point over w.
pub struct WpsStep {
    pub polytope: Polyhedron,
    pub model: FansyDivisor,
    pub body: OkounkovBody,
}

pub fn wps_degeneration_step(p: &Polyhedron) -> Result<WpsStep> {
    if p.rank != 2 || p.dim() != 2 || !p.is_bounded() {
        return Err(Error::NotLatticePolytope);
    }
    for v in &p.vertices {
        if !is_integer_vec(v) {
            return Err(Error::NotLatticePolytope);
        }
    }
    let cyclic = boundary_cycle(p);
    if cyclic.len() < 4 {
        return Err(Error::NoDistance2Pair);
    }
    let wi = cyclic
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    let w = cyclic[wi].clone();
    let u1 = cyclic[(wi + 1) % cyclic.len()].clone();
    let u2 = cyclic[(wi + cyclic.len() - 1) % cyclic.len()].clone();
    let diff = linalg::sub(&u1, &u2);
    // v primitive with <u1 - u2, v> = 0, oriented so that w is the strict
    // minimizer of <., v> (this lands v inside the cone of w)
    let mut v = primitive(&[diff[1].clone(), -diff[0].clone()]);
    let vq = to_qvec(&v);
    if dot(&vq, &w) >= dot(&vq, &u1) {
        v = v.iter().map(|x| -x).collect();
    }
    let fan = inner_normal_fan(p)?;
    let split = splitting_along(&v)?;
    let dg = downgrade(&fan, &split)?;
    // ample coefficients from the polytope: a_rho = -min <., n_rho>
    let rays = fan.rays();
    let coeffs: Vec<Rat> = rays
        .iter()
        .map(|r| {
            -p.vertices
                .iter()
                .map(|vx| crate::linalg::dot_qi(vx, r))
                .min()
                .unwrap()
        })
        .collect();
    let c = downgrade_divisor(&dg, &fan, &coeffs);
    let model = Arc::new(dg.fansy.clone());
    let h = support_from_weil(&model, &c)?;
    // the elliptic fixed point over w: the marked cone ray(+1)
    let plus = Cone::from_rays(1, &[vec![Int::one()]]).unwrap();
    if !model.is_marked(&plus) {
        return Err(Error::MarkingMismatch);
    }
    let q = general_point(&model);
    let flag = make_flag(
        &model,
        FlagSpec::G2 { sigma_fix: plus, q, ray_order: vec![vec![Int::one()]] },
    )?;
    let body = okounkov_body(&h, &flag)?;
    for vx in &body.polytope.vertices {
        if !is_integer_vec(vx) {
            return Err(Error::NotLatticePolytope);
        }
    }
    Ok(WpsStep { polytope: body.polytope.clone(), model: dg.fansy, body })
}

/// Iterate degeneration steps until the polytope is a triangle (a weighted
/// projective plane). The chain starts with the input.
pub fn wps_degeneration_chain(p: &Polyhedron) -> Result<Vec<Polyhedron>> {
    let mut chain = vec![p.clone()];
    let mut current = p.clone();
    while current.vertices.len() > 3 {
        let before = current.vertices.len();
        let step = wps_degeneration_step(&current)?;
        current = step.polytope;
        if current.vertices.len() >= before {
            return Err(Error::Validation(
                "degeneration step did not reduce the number of extremal points".into(),
            ));
        }
        chain.push(current.clone());
    }
    Ok(chain)
}

fn general_point(model: &FansyDivisor) -> CurvePoint {
    let pts = model.slice_points();
    let mut k: i64 = 1;
    loop {
        let cand = CurvePoint::finite(k);
        if !pts.contains(&cand) {
            return cand;
        }
        k += 1;
    }
}

/// The vertices of a 2D polytope in counterclockwise boundary order.
pub fn boundary_cycle(p: &Polyhedron) -> Vec<QVec> {
    let c = centroid(p);
    let mut verts = p.vertices.clone();
    // sort by angle around the centroid using exact cross-product comparisons
    let half = |v: &QVec| -> u8 {
        let d = linalg::sub(v, &c);
        if d[1].is_positive() || (d[1].is_zero() && d[0].is_positive()) {
            0
        } else {
            1
        }
    };
    verts.sort_by(|a, b| {
        let ha = half(a);
        let hb = half(b);
        if ha != hb {
            return ha.cmp(&hb);
        }
        let da = linalg::sub(a, &c);
        let db = linalg::sub(b, &c);
        let cross = &da[0] * &db[1] - &da[1] * &db[0];
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    verts
}

/// A splitting with F = v for a primitive v: P = (-v2, v1), s from the
/// extended gcd.
pub fn splitting_along(v: &IVec) -> Result<Splitting> {
    if v.len() != 2 {
        return Err(Error::NotASplitting);
    }
    let proj = vec![-v[1].clone(), v[0].clone()];
    let (g, x, y) = egcd(&v[0], &v[1]);
    if g != Int::one() {
        return Err(Error::NotASplitting);
    }
    Ok(Splitting { f: vec![v.clone()], proj, s: vec![vec![x, y]] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, qvec};
    use crate::rat::{rat, ratio};
    use crate::zoo;

    fn hull(pts: &[Vec<i64>]) -> Polyhedron {
        let verts: Vec<QVec> = pts.iter().map(|p| qvec(p)).collect();
        Polyhedron::from_vertices(2, &verts).unwrap()
    }

    fn f2_z1() -> (Arc<FansyDivisor>, SupportFn, Flag) {
        let m = Arc::new(zoo::hirzebruch(2));
        let h = support_from_weil(&m, &zoo::hirzebruch_ample(2)).unwrap();
        let flag = make_flag(
            &m,
            FlagSpec::G1 {
                sigma_fix: Cone::from_rays(1, &[ivec(&[1])]).unwrap(),
                q: CurvePoint::finite(1),
                ray_order: vec![ivec(&[1])],
            },
        )
        .unwrap();
        (m, h, flag)
    }

    #[test]
    fn f2_value_semigroup() {
        let (_, h, flag) = f2_z1();
        let v = value_semigroup(&h, &flag, 3).unwrap();
        let l1: Vec<IVec> = v.levels[&1].iter().cloned().collect();
        assert_eq!(
            l1,
            vec![
                ivec(&[0, 0]),
                ivec(&[0, 1]),
                ivec(&[0, 2]),
                ivec(&[0, 3]),
                ivec(&[1, 0]),
                ivec(&[1, 1]),
            ]
        );
        // sumset identity against direct enumeration
        for m in [2u32, 3] {
            assert_eq!(v.levels[&m], level_direct(&h, &flag, m).unwrap());
        }
        // Newton-Okounkov body equals the Okounkov body
        let nb = newton_okounkov(&v).unwrap();
        let ob = okounkov_body(&h, &flag).unwrap();
        assert!(nb.set_eq(&ob.polytope));
    }

    #[test]
    fn zero_divisor_semigroup() {
        let (m, _, flag) = f2_z1();
        let z = SupportFn::zero(m);
        let v = value_semigroup(&z, &flag, 2).unwrap();
        assert_eq!(v.levels[&1].len(), 1);
        assert!(v.levels[&1].contains(&ivec(&[0, 0])));
        let nb = newton_okounkov(&v).unwrap();
        assert_eq!(nb.vertices, vec![qvec(&[0, 0])]);
    }

    #[test]
    fn scaled_semigroup() {
        let (_, h, flag) = f2_z1();
        let v1 = value_semigroup(&h, &flag, 1).unwrap();
        let h2 = h.scale(&rat(2));
        let v2 = value_semigroup(&h2, &flag, 1).unwrap();
        let nb1 = newton_okounkov(&v1).unwrap();
        let nb2 = newton_okounkov(&v2).unwrap();
        assert!(nb2.set_eq(&nb1.scale(&rat(2))));
    }

    #[test]
    fn f2_divisorial_polytope() {
        let (_, h, flag) = f2_z1();
        let dp = divisorial_polytope_of(&h, &flag).unwrap();
        assert_eq!(dp.bx.vertices, vec![vec![rat(0)], vec![rat(3)]]);
        assert_eq!(dp.eval(&CurvePoint::zero(), &[rat(0)]), rat(0));
        assert_eq!(dp.eval(&CurvePoint::zero(), &[rat(3)]), rat(-1));
        assert_eq!(dp.eval(&CurvePoint::Infinity, &[rat(1)]), rat(1));
        // zero divisor: the box degenerates to a point and is rejected
        let (m, _, _) = f2_z1();
        let z = SupportFn::zero(m);
        assert!(matches!(
            divisorial_polytope_of(&z, &flag),
            Err(Error::NotDivisorialPolytope(_))
        ));
    }

    #[test]
    fn decomposition_of_the_wps_example() {
        // the degeneration F_n -> P(1,1,n+2): box [0, n+2], Psi_0 with pieces
        // u on [0,1] and (n+2-u)/(n+1) on [1, n+2]
        let n: i64 = 2;
        let seg = |a: i64, b: i64| {
            Polyhedron::from_vertices(1, &[vec![rat(a)], vec![rat(b)]]).unwrap()
        };
        let bx = seg(0, n + 2);
        let psi0 = vec![
            crate::support::AffinePiece { slope: vec![rat(1)], constant: rat(0) },
            crate::support::AffinePiece {
                slope: vec![ratio(-1, n + 1)],
                constant: ratio(n + 2, n + 1),
            },
        ];
        let mut psi = BTreeMap::new();
        psi.insert(CurvePoint::zero(), psi0);
        let dp = DivisorialPolytope { bx: bx.clone(), psi };
        // Psi_0^0 = min(u, 1), Psi_0^1 = min(0, 1-u), alpha = 1/(n+1)
        let dec = Decomposition {
            psi0_0: PiecewiseAffine {
                pieces: vec![
                    (seg(0, 1), crate::support::AffinePiece { slope: vec![rat(1)], constant: rat(0) }),
                    (seg(1, n + 2), crate::support::AffinePiece { slope: vec![rat(0)], constant: rat(1) }),
                ],
            },
            psi0_1: PiecewiseAffine {
                pieces: vec![
                    (seg(0, 1), crate::support::AffinePiece { slope: vec![rat(0)], constant: rat(0) }),
                    (seg(1, n + 2), crate::support::AffinePiece { slope: vec![rat(-1)], constant: rat(1) }),
                ],
            },
            alpha: ratio(1, n + 1),
        };
        assert!(check_decomposition(&dp, &CurvePoint::zero(), &dec).unwrap().is_empty());
        // breaking the sum identity at one vertex is reported
        let mut bad = dec.clone();
        bad.psi0_0.pieces[1].1.constant = rat(2);
        let viol = check_decomposition(&dp, &CurvePoint::zero(), &bad).unwrap();
        assert!(!viol.is_empty());
        assert!(viol.iter().any(|v| v.contains("sum identity")));
        // the trivial decomposition of an integral Psi_0 is admissible
        let mut psi_int = BTreeMap::new();
        psi_int.insert(
            CurvePoint::zero(),
            vec![crate::support::AffinePiece { slope: vec![rat(1)], constant: rat(0) }],
        );
        let dp_int = DivisorialPolytope { bx: seg(0, 2), psi: psi_int };
        let trivial = Decomposition {
            psi0_0: PiecewiseAffine {
                pieces: vec![(
                    seg(0, 2),
                    crate::support::AffinePiece { slope: vec![rat(1)], constant: rat(0) },
                )],
            },
            psi0_1: PiecewiseAffine {
                pieces: vec![(
                    seg(0, 2),
                    crate::support::AffinePiece { slope: vec![rat(0)], constant: rat(0) },
                )],
            },
            alpha: rat(1),
        };
        assert!(check_decomposition(&dp_int, &CurvePoint::zero(), &trivial)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn wps_chain_examples() {
        // a triangle is already a weighted projective plane
        let tri = hull(&[vec![0, 0], vec![2, 0], vec![0, 2]]);
        assert_eq!(wps_degeneration_chain(&tri).unwrap().len(), 1);
        // the unit square degenerates in one step to a triangle of area 1
        let sq = hull(&[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]);
        let chain = wps_degeneration_chain(&sq).unwrap();
        assert_eq!(chain.len(), 2);
        let last = chain.last().unwrap();
        assert_eq!(last.vertices.len(), 3);
        assert_eq!(last.volume().unwrap(), rat(1));
        // F2 ample polytope: ends in a triangle, area preserved throughout
        let f2 = hull(&[vec![0, 0], vec![1, 0], vec![3, 1], vec![0, 1]]);
        let chain = wps_degeneration_chain(&f2).unwrap();
        let last = chain.last().unwrap();
        assert_eq!(last.vertices.len(), 3);
        for p in &chain {
            assert_eq!(p.volume().unwrap(), rat(2));
        }
        // the first step goes to P(1,1,n+2) with n = 2
        let weights = crate::fan::triangle_weights(&chain[1]).unwrap();
        assert_eq!(weights, vec![Int::from(1), Int::from(1), Int::from(4)]);
    }
}
