//! The variety model: marked fansy divisors over P1, p-divisor extraction,
//! degree and properness, and toric downgrades along corank-one subtori.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{tiles_space, Fan};
use crate::linalg::{dot_qi, primitive, to_qvec, IVec, QVec};
use crate::poly::{cone_hull, minkowski_sum, Cone, Facet, Polyhedron};
use crate::rat::{format_rat, mu, Int, Rat};

/// A point of P1: an exact rational or infinity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurvePoint {
    Finite(Rat),
    Infinity,
}

impl CurvePoint {
    pub fn zero() -> CurvePoint {
        CurvePoint::Finite(Rat::zero())
    }

    pub fn finite(n: i64) -> CurvePoint {
        CurvePoint::Finite(Rat::from_integer(Int::from(n)))
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Finite(r) => write!(f, "{}", format_rat(r)),
            CurvePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// The full-dimensional cells of a complete polyhedral subdivision of N_Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub point: CurvePoint,
    pub cells: Vec<Polyhedron>,
}

/// Slices over finitely many points of P1 plus a complete tail fan and the
/// set of marked cones. Points without a stored slice implicitly carry the
/// tail fan itself.
#[derive(Clone, Debug)]
pub struct FansyDivisor {
    pub rank: usize,
    pub slices: BTreeMap<CurvePoint, Vec<Polyhedron>>,
    pub tailfan: Fan,
    pub marked: Vec<Cone>,
}

/// A polyhedral divisor on P1: finitely many non-trivial coefficients with a
/// common tail cone; `None` is the empty coefficient.
#[derive(Clone, Debug)]
pub struct PDivisor {
    pub tail: Cone,
    pub coefficients: BTreeMap<CurvePoint, Option<Polyhedron>>,
}

impl PDivisor {
    pub fn coefficient(&self, p: &CurvePoint) -> Option<Polyhedron> {
        match self.coefficients.get(p) {
            Some(c) => c.clone(),
            None => Some(self.tail.as_polyhedron()),
        }
    }

    /// deg D = sum of the coefficients (deg [P] = 1 on P1); empty coefficients absorb.
    pub fn degree(&self) -> Result<Polyhedron> {
        let mut acc = self.tail.as_polyhedron();
        for c in self.coefficients.values() {
            match c {
                None => return Ok(Polyhedron::empty(self.tail.rank)),
                Some(p) => acc = minkowski_sum(&acc, p)?,
            }
        }
        Ok(acc)
    }

    /// Properness on P1: deg D is a proper subset of tail D (empty counts as proper).
    pub fn is_proper(&self) -> Result<bool> {
        let deg = self.degree()?;
        if deg.empty {
            return Ok(true);
        }
        let tail_poly = self.tail.as_polyhedron();
        Ok(tail_poly.contains(&deg) && !deg.contains(&tail_poly))
    }
}

impl FansyDivisor {
    pub fn slice_points(&self) -> Vec<CurvePoint> {
        self.slices.keys().cloned().collect()
    }

    /// Cells of the slice over `p`; the trivial slice is the tail fan.
    pub fn slice_cells(&self, p: &CurvePoint) -> Vec<Polyhedron> {
        match self.slices.get(p) {
            Some(cells) => cells.clone(),
            None => self.tailfan.maximal.iter().map(|c| c.as_polyhedron()).collect(),
        }
    }

    /// The unique cell of the slice over `p` whose tail cone is `sigma`.
    pub fn cell_with_tail(&self, p: &CurvePoint, sigma: &Cone) -> Result<Polyhedron> {
        for cell in self.slice_cells(p) {
            if cell.tail_cone()? == *sigma {
                return Ok(cell);
            }
        }
        Err(Error::NoCellWithTail { point: p.to_string(), cone: format!("{:?}", sigma.rays) })
    }

    pub fn is_marked(&self, c: &Cone) -> bool {
        self.marked.contains(c)
    }

    /// All slice vertices, tagged by their point, in (point, lex) order.
    pub fn vertex_set(&self) -> Vec<(CurvePoint, QVec)> {
        let mut out = Vec::new();
        for (p, cells) in &self.slices {
            let mut vs: Vec<QVec> = Vec::new();
            for c in cells {
                for v in &c.vertices {
                    if !vs.contains(v) {
                        vs.push(v.clone());
                    }
                }
            }
            vs.sort();
            for v in vs {
                out.push((p.clone(), v));
            }
        }
        out
    }

    /// Unmarked rays of the tail fan.
    pub fn extremal_rays(&self) -> Vec<IVec> {
        self.tailfan
            .rays()
            .into_iter()
            .filter(|r| {
                let ray_cone = Cone::from_rays(self.rank, std::slice::from_ref(r)).unwrap();
                !self.is_marked(&ray_cone)
            })
            .collect()
    }

    /// The p-divisor of a maximal tail cone. For an unmarked cone the locus is
    /// made affine by an empty coefficient: at infinity when the cell there is
    /// trivial, else at the first point (0, 1, 2, ...) with a trivial cell.
    pub fn extract_pdivisor(&self, sigma: &Cone) -> Result<PDivisor> {
        if self.tailfan.cone_index(sigma).is_none() {
            return Err(Error::NotMaximalCone);
        }
        let mut coefficients: BTreeMap<CurvePoint, Option<Polyhedron>> = BTreeMap::new();
        for p in self.slice_points() {
            coefficients.insert(p.clone(), Some(self.cell_with_tail(&p, sigma)?));
        }
        if !self.is_marked(sigma) {
            let trivial = sigma.as_polyhedron();
            let mut split = None;
            let mut candidates = vec![CurvePoint::Infinity];
            let mut k: i64 = 0;
            while candidates.len() < 64 {
                candidates.push(CurvePoint::finite(k));
                k += 1;
            }
            for cand in candidates {
                let cell = match coefficients.get(&cand) {
                    Some(Some(c)) => c.clone(),
                    Some(None) => continue,
                    None => trivial.clone(),
                };
                if cell.set_eq(&trivial) {
                    split = Some(cand);
                    break;
                }
            }
            let at = split.ok_or_else(|| Error::Validation("no split point found".into()))?;
            coefficients.insert(at, None);
        }
        Ok(PDivisor { tail: sigma.clone(), coefficients })
    }

    /// The marked-fansy-divisor conditions; violations are returned as data.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = self.tailfan.validate() {
            out.push(format!("tailfan: {e}"));
        }
        let maximal_dim = self.rank;
        for (p, cells) in &self.slices {
            // all tails belong to the fan, slices are complete subdivisions
            let all = self.tailfan.all_cones();
            for c in cells {
                match c.tail_cone() {
                    Ok(t) => {
                        if !all.contains(&t) {
                            out.push(format!("slice {p}: cell tail {:?} not in tail fan", t.rays));
                        }
                    }
                    Err(_) => out.push(format!("slice {p}: empty cell")),
                }
                if c.dim() != self.rank as isize {
                    out.push(format!("slice {p}: cell of dimension {} is not full", c.dim()));
                }
            }
            for sigma in &self.tailfan.maximal {
                let n = cells
                    .iter()
                    .filter(|c| c.tail_cone().map(|t| t == *sigma).unwrap_or(false))
                    .count();
                if n != 1 {
                    out.push(format!(
                        "slice {p}: {n} cells with tail {:?} (need exactly one)",
                        sigma.rays
                    ));
                }
            }
            for (i, a) in cells.iter().enumerate() {
                for b in cells.iter().skip(i + 1) {
                    if let Ok(int) = a.intersect(b) {
                        if !(int.is_face_of(a) && int.is_face_of(b)) {
                            out.push(format!("slice {p}: cells intersect in a non-face"));
                        }
                    }
                }
            }
            match tiles_space(self.rank, cells, &Rat::one()) {
                Ok(true) => {}
                _ => out.push(format!("slice {p}: cells do not tile N_Q")),
            }
        }
        // markings
        for m in &self.marked {
            if !self.tailfan.all_cones().contains(m) {
                out.push(format!("marked cone {:?} not in tail fan", m.rays));
            }
        }
        for sigma in &self.tailfan.maximal {
            if sigma.dim() != maximal_dim {
                out.push(format!("maximal cone {:?} is not full-dimensional", sigma.rays));
            }
            if !self.is_marked(sigma) {
                continue;
            }
            let d = match self.extract_pdivisor(sigma) {
                Ok(d) => d,
                Err(e) => {
                    out.push(format!("cone {:?}: {e}", sigma.rays));
                    continue;
                }
            };
            // marked: complete locus, so properness is required outright
            let deg = match d.degree() {
                Ok(x) => x,
                Err(e) => {
                    out.push(format!("cone {:?}: {e}", sigma.rays));
                    continue;
                }
            };
            if deg.empty {
                out.push(format!("marked cone {:?} has empty degree", sigma.rays));
                continue;
            }
            let tail_poly = sigma.as_polyhedron();
            if !(tail_poly.contains(&deg) && !deg.contains(&tail_poly)) {
                out.push(format!("marked cone {:?}: p-divisor not proper", sigma.rays));
            }
            // condition (3): a face is marked iff the degree touches it
            for tau in sigma.faces() {
                if tau == *sigma {
                    continue;
                }
                let touches = intersects_cone(&deg, &tau);
                if touches != self.is_marked(&tau) {
                    out.push(format!(
                        "face {:?} of {:?}: marked={} but degree-intersection={}",
                        tau.rays,
                        sigma.rays,
                        self.is_marked(&tau),
                        touches
                    ));
                }
            }
        }
        // condition (4): upward closure
        for tau in &self.marked {
            for sigma in &self.tailfan.maximal {
                if tau.is_face_of(sigma) && !self.is_marked(sigma) {
                    out.push(format!(
                        "marked {:?} is a face of unmarked maximal {:?}",
                        tau.rays, sigma.rays
                    ));
                }
            }
        }
        out
    }
}

fn intersects_cone(p: &Polyhedron, c: &Cone) -> bool {
    if p.empty {
        return false;
    }
    let eqs: Vec<Facet> =
        c.equations.iter().map(|e| Facet { normal: e.clone(), offset: Rat::zero() }).collect();
    let ineqs: Vec<Facet> =
        c.inequalities.iter().map(|e| Facet { normal: e.clone(), offset: Rat::zero() }).collect();
    let mut facets = p.facets.clone();
    facets.extend(ineqs);
    let mut es = p.affine_equations.clone();
    es.extend(eqs);
    match Polyhedron::from_constraints(p.rank, &facets, &es) {
        Ok(q) => !q.empty,
        Err(_) => true, // unbounded intersection certainly non-empty
    }
}

/// A corank-one splitting 0 -> N' -> N -> Z -> 0 with a chosen cosection.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// inclusion N' = Z^(d-1) -> N = Z^d, columns
    pub f: Vec<IVec>,
    /// projection N -> Z, one row
    pub proj: IVec,
    /// cosection N -> N', rows
    pub s: Vec<IVec>,
}

/// Where a toric prime divisor lands after the downgrade.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DivisorKey {
    Vertical(CurvePoint, QVec),
    Horizontal(IVec),
}

/// Downgrade output: the fansy divisor, the per-cone p-divisors of the input
/// fan, and the ray-to-prime-divisor correspondence.
#[derive(Clone, Debug)]
pub struct Downgrade {
    pub fansy: FansyDivisor,
    pub cone_divisors: Vec<PDivisor>,
    pub ray_keys: Vec<DivisorKey>,
}

/// Downgrade a complete fan along a corank-one subtorus: every maximal cone
/// yields a p-divisor with coefficients s(P^{-1}(+-1) cap sigma) over 0 and
/// infinity, and the slices assemble into a marked fansy divisor.
pub fn downgrade(fan: &Fan, split: &Splitting) -> Result<Downgrade> {
    let d = fan.rank;
    let small = d - 1;
    if split.f.len() != small
        || split.f.iter().any(|col| col.len() != d)
        || split.proj.len() != d
        || split.s.len() != small
        || split.s.iter().any(|row| row.len() != d)
    {
        return Err(Error::NotASplitting);
    }
    // P o F = 0 and s o F = id_{N'}
    for fcol in &split.f {
        let pf: Int = split.proj.iter().zip(fcol).map(|(a, b)| a * b).sum();
        if !pf.is_zero() {
            return Err(Error::NotASplitting);
        }
    }
    for (i, srow) in split.s.iter().enumerate() {
        for (j, fcol) in split.f.iter().enumerate() {
            let sf: Int = srow.iter().zip(fcol).map(|(a, b)| a * b).sum();
            let want = if i == j { Int::one() } else { Int::zero() };
            if sf != want {
                return Err(Error::NotASplitting);
            }
        }
    }
    // surjectivity of the projection
    let mut g = Int::zero();
    for x in &split.proj {
        g = num::Integer::gcd(&g, x);
    }
    if g != Int::one() {
        return Err(Error::NotASplitting);
    }
    fan.validate()?;

    let proj_q: QVec = to_qvec(&split.proj);
    let s_rows: Vec<QVec> = split.s.iter().map(|r| to_qvec(r)).collect();
    let apply_s = |x: &QVec| -> QVec { s_rows.iter().map(|r| crate::linalg::dot(r, x)).collect() };

    let mut cone_divisors = Vec::new();
    let mut slice0: Vec<Polyhedron> = Vec::new();
    let mut slice_inf: Vec<Polyhedron> = Vec::new();
    let mut tails: Vec<Cone> = Vec::new();
    let mut marked: Vec<Cone> = Vec::new();
    for sigma in &fan.maximal {
        let cut = |level: i64| -> Result<Option<Polyhedron>> {
            let ineqs: Vec<Facet> = sigma
                .inequalities
                .iter()
                .map(|n| Facet { normal: n.clone(), offset: Rat::zero() })
                .collect();
            let eq = Facet {
                normal: proj_q.clone(),
                offset: Rat::from_integer(Int::from(level)),
            };
            let slab = Polyhedron::from_constraints(d, &ineqs, &[eq])?;
            if slab.empty {
                return Ok(None);
            }
            let verts: Vec<QVec> = slab.vertices.iter().map(|v| apply_s(v)).collect();
            let rays: Vec<IVec> = slab
                .rays
                .iter()
                .map(|r| primitive(&apply_s(&to_qvec(r))))
                .filter(|r| r.iter().any(|c| !c.is_zero()))
                .collect();
            Ok(Some(Polyhedron::from_generators(small, &verts, &rays)?))
        };
        let c0 = cut(1)?;
        let cinf = cut(-1)?;
        // common tail: s(sigma cap ker P)
        let mut eqs = vec![Facet { normal: proj_q.clone(), offset: Rat::zero() }];
        let ineqs: Vec<Facet> = sigma
            .inequalities
            .iter()
            .map(|n| Facet { normal: n.clone(), offset: Rat::zero() })
            .collect();
        eqs.extend(
            sigma.equations.iter().map(|n| Facet { normal: n.clone(), offset: Rat::zero() }),
        );
        let ker = Polyhedron::from_constraints(d, &ineqs, &eqs)?;
        let tail_gens: Vec<QVec> = ker.rays.iter().map(|r| apply_s(&to_qvec(r))).collect();
        let tail = cone_hull(small, &tail_gens)?;
        let complete_locus = c0.is_some() && cinf.is_some();
        if let Some(ref c) = c0 {
            if !slice0.iter().any(|x| x.set_eq(c)) {
                slice0.push(c.clone());
            }
        }
        if let Some(ref c) = cinf {
            if !slice_inf.iter().any(|x| x.set_eq(c)) {
                slice_inf.push(c.clone());
            }
        }
        if tail.dim() == small && !tails.contains(&tail) {
            tails.push(tail.clone());
        }
        if complete_locus && !marked.contains(&tail) {
            marked.push(tail.clone());
        }
        let mut coeff_map = BTreeMap::new();
        coeff_map.insert(CurvePoint::zero(), c0.clone());
        coeff_map.insert(CurvePoint::Infinity, cinf.clone());
        cone_divisors.push(PDivisor { tail, coefficients: coeff_map });
    }
    // tail fan: the full-dimensional tails; in corank one these are the images
    // of the maximal cones meeting ker P in dimension d-1, and they tile N'_Q.
    let mut tailfan_cones = tails;
    if tailfan_cones.is_empty() {
        return Err(Error::NotComplete);
    }
    tailfan_cones.sort_by(|a, b| a.rays.cmp(&b.rays));
    let tailfan = Fan::new(small, tailfan_cones);
    // close the markings downwards per condition (3)
    let mut marked_all = marked.clone();
    for sigma in &tailfan.maximal {
        if !marked.contains(sigma) {
            continue;
        }
        let deg = {
            // degree of the p-divisor with this tail, read from the slices
            let model_tmp = FansyDivisor {
                rank: small,
                slices: {
                    let mut m = BTreeMap::new();
                    m.insert(CurvePoint::zero(), slice0.clone());
                    m.insert(CurvePoint::Infinity, slice_inf.clone());
                    m
                },
                tailfan: tailfan.clone(),
                marked: marked.clone(),
            };
            model_tmp.extract_pdivisor(sigma)?.degree()?
        };
        for tau in sigma.faces() {
            if tau == *sigma || marked_all.contains(&tau) {
                continue;
            }
            if intersects_cone(&deg, &tau) {
                marked_all.push(tau);
            }
        }
    }
    let mut slices = BTreeMap::new();
    slices.insert(CurvePoint::zero(), slice0);
    slices.insert(CurvePoint::Infinity, slice_inf);
    let fansy = FansyDivisor { rank: small, slices, tailfan, marked: marked_all };
    let violations = fansy.validate();
    if !violations.is_empty() {
        return Err(Error::Validation(violations.join("; ")));
    }
    // ray correspondence
    let mut ray_keys = Vec::new();
    for r in fan.rays() {
        let level = dot_qi(&proj_q, &r);
        if level.is_zero() {
            ray_keys.push(DivisorKey::Horizontal(primitive(&apply_s(&to_qvec(&r)))));
        } else {
            let point =
                if level.is_positive() { CurvePoint::zero() } else { CurvePoint::Infinity };
            let m = level.abs();
            let v: QVec = apply_s(&to_qvec(&r)).iter().map(|x| x / &m).collect();
            ray_keys.push(DivisorKey::Vertical(point, v));
        }
    }
    Ok(Downgrade { fansy, cone_divisors, ray_keys })
}

/// Vertical multiplicities: mu(v) for a slice vertex.
pub fn vertex_mu(v: &QVec) -> Int {
    mu(v)
}

/// Keys of the invariant prime divisors that survive on TV(S):
/// all (point, vertex) pairs plus the unmarked (extremal) rays.
pub fn divisor_keys(x: &FansyDivisor) -> Vec<DivisorKey> {
    let mut keys: Vec<DivisorKey> = x
        .vertex_set()
        .into_iter()
        .map(|(p, v)| DivisorKey::Vertical(p, v))
        .collect();
    for r in x.extremal_rays() {
        keys.push(DivisorKey::Horizontal(r));
    }
    keys
}

impl fmt::Display for DivisorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorKey::Vertical(p, v) => {
                let coords: Vec<String> = v.iter().map(format_rat).collect();
                write!(f, "D_({p},({}))", coords.join(","))
            }
            DivisorKey::Horizontal(r) => {
                let coords: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                write!(f, "D_ray({})", coords.join(","))
            }
        }
    }
}

/// A formal Z-linear combination of prime divisor keys.
pub type WeilDivisor = BTreeMap<DivisorKey, Rat>;

pub fn weil_coeff(c: &WeilDivisor, k: &DivisorKey) -> Rat {
    c.get(k).cloned().unwrap_or_else(Rat::zero)
}

/// Push a toric invariant divisor (coefficients listed in `fan.rays()` order)
/// through a downgrade.
pub fn downgrade_divisor(dg: &Downgrade, fan: &Fan, coeffs: &[Rat]) -> WeilDivisor {
    let mut out = WeilDivisor::new();
    for (idx, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let key = dg.ray_keys[idx].clone();
        *out.entry(key).or_insert_with(Rat::zero) += a.clone();
    }
    let _ = fan;
    out
}
