//! Divisorial support functions, the Cartier criterion, Weil expansions,
//! weight polytopes and section-space dimensions over P1.
//!
//! A support function is stored as a slope per maximal tail cone plus its
//! values at all slice vertices; constants at auxiliary points (with trivial
//! slices) cover the corrections that normalization introduces. Pieces on
//! cells with smaller tail cones are reconstructed by affine interpolation,
//! which doubles as the continuity check.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::fansy::{CurvePoint, DivisorKey, FansyDivisor, WeilDivisor};
use crate::linalg::{self, dot, dot_qi, is_integer_vec, lcm_denoms, solve, to_qvec, QVec};
use crate::poly::{Facet, Polyhedron};
use crate::rat::{floor_rat, is_integer, mu, Int, Rat};

/// A divisorial support function on a marked fansy divisor. Rational slopes
/// and values are allowed (Q-Cartier data); `clearing_denominator` reports the
/// smallest k making k*h integral.
#[derive(Clone, Debug)]
pub struct SupportFn {
    pub model: Arc<FansyDivisor>,
    /// slope on the cell with maximal tail cone i, indexed like the tail fan
    pub slopes: Vec<QVec>,
    /// value at every slice vertex
    pub vertex_values: BTreeMap<(CurvePoint, QVec), Rat>,
    /// constant shift at points with trivial slices (normalization residue)
    pub aux_constants: BTreeMap<CurvePoint, Rat>,
}

/// One affine piece: u |-> <slope, u> + constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    pub slope: QVec,
    pub constant: Rat,
}

impl SupportFn {
    pub fn zero(model: Arc<FansyDivisor>) -> SupportFn {
        let slopes = vec![vec![Rat::zero(); model.rank]; model.tailfan.maximal.len()];
        let vertex_values =
            model.vertex_set().into_iter().map(|k| (k, Rat::zero())).collect();
        SupportFn { model, slopes, vertex_values, aux_constants: BTreeMap::new() }
    }

    pub fn value(&self, p: &CurvePoint, v: &QVec) -> Rat {
        if let Some(x) = self.vertex_values.get(&(p.clone(), v.clone())) {
            return x.clone();
        }
        // not a slice vertex: evaluate through the piece of the cell containing v
        let cells = self.model.slice_cells(p);
        for (i, cell) in cells.iter().enumerate() {
            if cell.contains_point(v) {
                if let Ok(piece) = self.piece(p, i) {
                    return dot(&piece.slope, v) + &piece.constant;
                }
            }
        }
        Rat::zero()
    }

    fn aux_constant(&self, p: &CurvePoint) -> Rat {
        self.aux_constants.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    /// Points carrying data beyond the common linear part.
    pub fn support_points(&self) -> Vec<CurvePoint> {
        let mut pts = self.model.slice_points();
        for p in self.aux_constants.keys() {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        pts.sort();
        pts
    }

    /// The affine piece on cell `i` of the slice over `p`, reconstructed from
    /// the slope data and the vertex values. Fails if the data is not an
    /// honest continuous support function.
    pub fn piece(&self, p: &CurvePoint, cell_index: usize) -> Result<AffinePiece> {
        let rank = self.model.rank;
        if self.model.slices.get(p).is_none() {
            // trivial slice: cells are the maximal tail cones
            let slope = self.slopes[cell_index].clone();
            return Ok(AffinePiece { slope, constant: self.aux_constant(p) });
        }
        let cell = &self.model.slice_cells(p)[cell_index];
        let tail = cell.tail_cone()?;
        if let Some(i) = self.model.tailfan.cone_index(&tail) {
            let slope = self.slopes[i].clone();
            let mut constant: Option<Rat> = None;
            for v in &cell.vertices {
                let val = self
                    .vertex_values
                    .get(&(p.clone(), v.clone()))
                    .cloned()
                    .ok_or_else(|| Error::Validation(format!("missing value at {p}, {v:?}")))?;
                let c = val - dot(&slope, v);
                match &constant {
                    None => constant = Some(c),
                    Some(prev) if *prev == c => {}
                    Some(_) => {
                        return Err(Error::Validation(format!(
                            "values on the cell with tail {:?} over {p} are not affine",
                            tail.rays
                        )))
                    }
                }
            }
            return Ok(AffinePiece { slope, constant: constant.unwrap() });
        }
        // smaller tail: interpolate from vertex values and tail-ray slopes
        let v0 = cell.vertices[0].clone();
        let val0 = self
            .vertex_values
            .get(&(p.clone(), v0.clone()))
            .cloned()
            .ok_or_else(|| Error::Validation(format!("missing value at {p}, {v0:?}")))?;
        let mut rows: Vec<QVec> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        for v in &cell.vertices[1..] {
            rows.push(linalg::sub(v, &v0));
            let val = self
                .vertex_values
                .get(&(p.clone(), v.clone()))
                .cloned()
                .ok_or_else(|| Error::Validation(format!("missing value at {p}, {v:?}")))?;
            rhs.push(val - &val0);
        }
        for r in &cell.rays {
            // the slope along a tail direction is the linear part
            let hbar = self.linear_part_at(&to_qvec(r))?;
            rows.push(to_qvec(r));
            rhs.push(hbar);
        }
        let (slope, ker) = solve(&rows, &rhs).ok_or_else(|| {
            Error::Validation(format!("no affine piece on a cell over {p}"))
        })?;
        if rows.is_empty() || linalg::rank(&rows) < rank {
            // cell not full-dimensional in the stored data; reject
            if !ker.is_empty() {
                return Err(Error::Validation(format!("underdetermined piece over {p}")));
            }
        }
        Ok(AffinePiece { slope: slope.clone(), constant: val0 - dot(&slope, &v0) })
    }

    /// h-bar evaluated at a point of N_Q (piecewise linear on the tail fan).
    pub fn linear_part_at(&self, x: &QVec) -> Result<Rat> {
        for (i, c) in self.model.tailfan.maximal.iter().enumerate() {
            if c.contains(x) {
                return Ok(dot(&self.slopes[i], x));
            }
        }
        Err(Error::Validation("point outside the complete tail fan".into()))
    }

    /// Smallest k >= 1 such that k*h has integral slopes and constants.
    pub fn clearing_denominator(&self) -> Result<Int> {
        let mut vals: Vec<Rat> = Vec::new();
        for s in &self.slopes {
            vals.extend(s.iter().cloned());
        }
        for p in self.support_points() {
            let cells = self.model.slice_cells(&p);
            for i in 0..cells.len() {
                let piece = self.piece(&p, i)?;
                vals.extend(piece.slope.iter().cloned());
                vals.push(piece.constant.clone());
            }
        }
        Ok(lcm_denoms(vals.into_iter()))
    }

    pub fn scale(&self, k: &Rat) -> SupportFn {
        SupportFn {
            model: self.model.clone(),
            slopes: self.slopes.iter().map(|s| linalg::scale(s, k)).collect(),
            vertex_values: self
                .vertex_values
                .iter()
                .map(|(key, v)| (key.clone(), v * k))
                .collect(),
            aux_constants: self.aux_constants.iter().map(|(p, v)| (p.clone(), v * k)).collect(),
        }
    }

    pub fn add(&self, other: &SupportFn) -> SupportFn {
        let mut vertex_values = self.vertex_values.clone();
        for (k, v) in &other.vertex_values {
            *vertex_values.entry(k.clone()).or_insert_with(Rat::zero) += v.clone();
        }
        let mut aux_constants = self.aux_constants.clone();
        for (k, v) in &other.aux_constants {
            *aux_constants.entry(k.clone()).or_insert_with(Rat::zero) += v.clone();
        }
        SupportFn {
            model: self.model.clone(),
            slopes: self
                .slopes
                .iter()
                .zip(&other.slopes)
                .map(|(a, b)| linalg::add(a, b))
                .collect(),
            vertex_values,
            aux_constants,
        }
    }

    /// Subtract the principal support function SF(u): h_P -= <u, .> everywhere.
    pub fn sub_character(&self, u: &QVec) -> SupportFn {
        let mut out = self.clone();
        for s in out.slopes.iter_mut() {
            *s = linalg::sub(s, u);
        }
        for ((_, v), val) in out.vertex_values.iter_mut() {
            *val -= dot(u, v);
        }
        out
    }

    /// Subtract the principal support function SF(div f) for a point divisor
    /// of degree zero: h_P -= ord_P f.
    pub fn sub_point_divisor(&self, div_f: &BTreeMap<CurvePoint, Rat>) -> SupportFn {
        let mut out = self.clone();
        for (p, ord) in div_f {
            if ord.is_zero() {
                continue;
            }
            if out.model.slices.contains_key(p) {
                for ((pt, _), val) in out.vertex_values.iter_mut() {
                    if pt == p {
                        *val -= ord.clone();
                    }
                }
            } else {
                *out.aux_constants.entry(p.clone()).or_insert_with(Rat::zero) -= ord.clone();
                if out.aux_constants.get(p).map(|x| x.is_zero()).unwrap_or(false) {
                    out.aux_constants.remove(p);
                }
            }
        }
        out
    }

    /// Type invariants plus the Cartier condition. Violations come back as data.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, c) in self.model.tailfan.maximal.iter().enumerate() {
            if !is_integer_vec(&self.slopes[i]) {
                out.push(format!("slope on cone {:?} is not integral", c.rays));
            }
        }
        // piece reconstruction (continuity) and integrality of pieces
        for p in self.support_points() {
            let cells = self.model.slice_cells(&p);
            for i in 0..cells.len() {
                match self.piece(&p, i) {
                    Err(e) => out.push(format!("{e}")),
                    Ok(piece) => {
                        if !is_integer_vec(&piece.slope) || !is_integer(&piece.constant) {
                            out.push(format!(
                                "piece over {p} on cell {i} is not integral (slope {:?}, constant {})",
                                piece.slope, piece.constant
                            ));
                        }
                    }
                }
            }
        }
        // slope compatibility across shared rays
        let maximal = &self.model.tailfan.maximal;
        for (i, a) in maximal.iter().enumerate() {
            for (j, b) in maximal.iter().enumerate().skip(i + 1) {
                if let Ok(shared) = a.intersect(b) {
                    for r in &shared.rays {
                        let da = dot_qi(&self.slopes[i], r);
                        let db = dot_qi(&self.slopes[j], r);
                        if da != db {
                            out.push(format!(
                                "linear parts of cones {i} and {j} disagree on the shared ray {r:?}"
                            ));
                        }
                    }
                }
            }
        }
        // Cartier: principality on every marked maximal cone
        for sigma in &self.model.tailfan.maximal {
            if !self.model.is_marked(sigma) {
                continue;
            }
            let mut total = Rat::zero();
            let mut ok = true;
            for p in self.support_points() {
                match self.cell_constant(&p, sigma) {
                    Ok(c) => total += c,
                    Err(e) => {
                        out.push(format!("{e}"));
                        ok = false;
                    }
                }
            }
            if ok && !total.is_zero() {
                out.push(format!(
                    "restriction to the marked cone {:?} is not principal (constants sum to {total})",
                    sigma.rays
                ));
            }
        }
        out
    }

    /// Constant of the affine piece on the sigma-cell over p.
    pub fn cell_constant(&self, p: &CurvePoint, sigma: &crate::poly::Cone) -> Result<Rat> {
        let cells = self.model.slice_cells(p);
        for (i, cell) in cells.iter().enumerate() {
            if cell.tail_cone()? == *sigma {
                return Ok(self.piece(p, i)?.constant);
            }
        }
        Err(Error::NoCellWithTail { point: p.to_string(), cone: format!("{:?}", sigma.rays) })
    }

    /// The Weil divisor of h: coefficient -mu(v) h_P(v) at (P, v) and
    /// -h_bar(n_rho) at every unmarked ray rho.
    pub fn weil(&self) -> WeilDivisor {
        let mut c = WeilDivisor::new();
        for ((p, v), val) in &self.vertex_values {
            let m = Rat::from_integer(mu(v));
            let coeff = -(val * &m);
            if !coeff.is_zero() {
                c.insert(DivisorKey::Vertical(p.clone(), v.clone()), coeff);
            }
        }
        for r in self.model.extremal_rays() {
            let coeff = -self.linear_part_at(&to_qvec(&r)).expect("complete fan");
            if !coeff.is_zero() {
                c.insert(DivisorKey::Horizontal(r), coeff);
            }
        }
        c
    }
}

/// Solve for the Q-support function with a prescribed Weil divisor.
///
/// Unknowns are the slope of every maximal tail cone and one constant per
/// (cone, slice point); equations are the vertex values, the prescribed
/// pairings on unmarked rays, slope agreement on shared rays, and degree-zero
/// constants on marked cones.
pub fn support_from_weil(model: &Arc<FansyDivisor>, c: &WeilDivisor) -> Result<SupportFn> {
    let rank = model.rank;
    let pts = model.slice_points();
    let m = model.tailfan.maximal.len();
    let cols = m * rank + m * pts.len();
    let ucol = |i: usize, k: usize| i * rank + k;
    let acol = |i: usize, j: usize| m * rank + i * pts.len() + j;
    let mut rows: Vec<QVec> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let coeff = |key: &DivisorKey| -> Rat { c.get(key).cloned().unwrap_or_else(Rat::zero) };

    for (i, sigma) in model.tailfan.maximal.iter().enumerate() {
        for (j, p) in pts.iter().enumerate() {
            let cell = model.cell_with_tail(p, sigma)?;
            for v in &cell.vertices {
                let mut row = vec![Rat::zero(); cols];
                for k in 0..rank {
                    row[ucol(i, k)] = v[k].clone();
                }
                row[acol(i, j)] = Rat::one();
                rows.push(row);
                let mv = Rat::from_integer(mu(v));
                rhs.push(-coeff(&DivisorKey::Vertical(p.clone(), v.clone())) / mv);
            }
        }
    }
    for r in model.extremal_rays() {
        for i in model.tailfan.cones_with_ray(&r) {
            let mut row = vec![Rat::zero(); cols];
            for k in 0..rank {
                row[ucol(i, k)] = Rat::from_integer(r[k].clone());
            }
            rows.push(row);
            rhs.push(-coeff(&DivisorKey::Horizontal(r.clone())));
        }
    }
    // slope agreement on shared rays
    for ray in model.tailfan.rays() {
        let cones = model.tailfan.cones_with_ray(&ray);
        for w in cones.windows(2) {
            let mut row = vec![Rat::zero(); cols];
            for k in 0..rank {
                row[ucol(w[0], k)] = Rat::from_integer(ray[k].clone());
                row[ucol(w[1], k)] -= Rat::from_integer(ray[k].clone());
            }
            rows.push(row);
            rhs.push(Rat::zero());
        }
    }
    for (i, sigma) in model.tailfan.maximal.iter().enumerate() {
        if !model.is_marked(sigma) {
            continue;
        }
        let mut row = vec![Rat::zero(); cols];
        for j in 0..pts.len() {
            row[acol(i, j)] = Rat::one();
        }
        rows.push(row);
        rhs.push(Rat::zero());
    }
    let (sol, ker) = solve(&rows, &rhs)
        .ok_or_else(|| Error::NotQCartier("inconsistent linear system".into()))?;
    if !ker.is_empty() {
        return Err(Error::Underdetermined);
    }
    let slopes: Vec<QVec> =
        (0..m).map(|i| (0..rank).map(|k| sol[ucol(i, k)].clone()).collect()).collect();
    let mut vertex_values = BTreeMap::new();
    for (p, v) in model.vertex_set() {
        let mv = Rat::from_integer(mu(&v));
        vertex_values
            .insert((p.clone(), v.clone()), -coeff(&DivisorKey::Vertical(p, v.clone())) / mv);
    }
    let h = SupportFn {
        model: model.clone(),
        slopes,
        vertex_values,
        aux_constants: BTreeMap::new(),
    };
    // consistency: the pieces must reconstruct and reproduce the divisor
    for p in h.support_points() {
        let cells = h.model.slice_cells(&p);
        for i in 0..cells.len() {
            h.piece(&p, i).map_err(|e| Error::NotQCartier(format!("{e}")))?;
        }
    }
    if &h.weil() != c {
        // keys with zero coefficient are allowed to differ
        let mut a = h.weil();
        let mut b = c.clone();
        a.retain(|_, v| !v.is_zero());
        b.retain(|_, v| !v.is_zero());
        if a != b {
            return Err(Error::NotQCartier("solved data does not reproduce the divisor".into()));
        }
    }
    Ok(h)
}

/// The canonical T-Weil divisor with K_P1 represented as -2[0].
pub fn canonical_divisor(model: &FansyDivisor) -> WeilDivisor {
    let mut c = WeilDivisor::new();
    for r in model.extremal_rays() {
        c.insert(DivisorKey::Horizontal(r), -Rat::one());
    }
    for (p, v) in model.vertex_set() {
        let m = Rat::from_integer(mu(&v));
        let kc = if p == CurvePoint::zero() { -Rat::from_integer(Int::from(2)) } else { Rat::zero() };
        let coeff = &m * &kc + &m - Rat::one();
        if !coeff.is_zero() {
            c.insert(DivisorKey::Vertical(p, v), coeff);
        }
    }
    c
}

/// div(f chi^u) restricted to the surviving prime divisors; f is a formal
/// degree-zero combination of points of P1.
pub fn principal_divisor(
    model: &FansyDivisor,
    div_f: &BTreeMap<CurvePoint, Rat>,
    u: &QVec,
) -> Result<WeilDivisor> {
    let total: Rat = div_f.values().cloned().sum();
    if !total.is_zero() {
        return Err(Error::NonzeroDegree);
    }
    let mut c = WeilDivisor::new();
    for r in model.extremal_rays() {
        let coeff = dot_qi(u, &r);
        if !coeff.is_zero() {
            c.insert(DivisorKey::Horizontal(r), coeff);
        }
    }
    for (p, v) in model.vertex_set() {
        let ord = div_f.get(&p).cloned().unwrap_or_else(Rat::zero);
        let coeff = Rat::from_integer(mu(&v)) * (dot(v.as_slice(), u) + ord);
        if !coeff.is_zero() {
            c.insert(DivisorKey::Vertical(p, v), coeff);
        }
    }
    Ok(c)
}

/// The weight polytope Box_h and the concave functions h*_P as min-of-affine
/// pieces, one piece per slice vertex.
#[derive(Clone, Debug)]
pub struct HStar {
    pub bx: Polyhedron,
    pub complete: bool,
    /// per point: the affine pieces  u |-> <u, v> - h_P(v)
    pub pieces: BTreeMap<CurvePoint, Vec<AffinePiece>>,
}

impl HStar {
    pub fn eval(&self, p: &CurvePoint, u: &[Rat]) -> Rat {
        match self.pieces.get(p) {
            None => Rat::zero(),
            Some(list) => list
                .iter()
                .map(|a| dot(&a.slope, u) + &a.constant)
                .min()
                .unwrap_or_else(Rat::zero),
        }
    }

    pub fn degree(&self, u: &[Rat]) -> Rat {
        self.pieces.keys().map(|p| self.eval(p, u)).sum()
    }

    /// deg floor(h*(u)) as used by Riemann-Roch on P1.
    pub fn rounded_degree(&self, u: &[Rat]) -> Int {
        self.pieces.keys().map(|p| floor_rat(&self.eval(p, u))).sum()
    }
}

/// Box_h = { u : <u - u_sigma, n_rho> >= 0 for all maximal sigma, rho in sigma }
/// together with the vertex pieces of h*_P.
pub fn hstar(h: &SupportFn) -> Result<HStar> {
    let model = &h.model;
    let mut facets = Vec::new();
    for (i, sigma) in model.tailfan.maximal.iter().enumerate() {
        for r in &sigma.rays {
            let normal = to_qvec(r);
            let offset = dot(&h.slopes[i], &normal);
            facets.push(Facet { normal, offset });
        }
    }
    let bx = Polyhedron::from_constraints(model.rank, &facets, &[])?;
    let complete = !bx.empty && bx.is_bounded();
    let mut pieces: BTreeMap<CurvePoint, Vec<AffinePiece>> = BTreeMap::new();
    for p in h.support_points() {
        let mut list = Vec::new();
        if model.slices.contains_key(&p) {
            let mut seen: Vec<QVec> = Vec::new();
            for cell in model.slice_cells(&p) {
                for v in &cell.vertices {
                    if seen.contains(v) {
                        continue;
                    }
                    seen.push(v.clone());
                    list.push(AffinePiece { slope: v.clone(), constant: -h.value(&p, v) });
                }
            }
        } else {
            // trivial slice: single vertex at the origin
            list.push(AffinePiece {
                slope: vec![Rat::zero(); model.rank],
                constant: -h.aux_constants.get(&p).cloned().unwrap_or_else(Rat::zero),
            });
        }
        pieces.insert(p, list);
    }
    Ok(HStar { bx, complete, pieces })
}

/// dim Gamma(X, O(D_h))_u: zero outside the box, else deg floor(h*(u)) + 1
/// when that degree is nonnegative (Riemann-Roch on P1).
pub fn section_dimension(h: &SupportFn, u: &[Rat]) -> Result<Int> {
    let hs = hstar(h)?;
    Ok(section_dimension_at(&hs, u))
}

pub fn section_dimension_at(hs: &HStar, u: &[Rat]) -> Int {
    if !hs.bx.contains_point(u) {
        return Int::zero();
    }
    let e = hs.rounded_degree(u);
    if e >= Int::zero() {
        e + Int::one()
    } else {
        Int::zero()
    }
}

/// Total dimension of the section space: sum over the lattice points of the box.
pub fn total_sections(h: &SupportFn) -> Result<Int> {
    let hs = hstar(h)?;
    if !hs.complete {
        return Err(Error::NotComplete);
    }
    let mut total = Int::zero();
    for u in hs.bx.lattice_points()? {
        total += section_dimension_at(&hs, &to_qvec(&u));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use crate::zoo;
    use crate::linalg::qvec;

    fn model(n: i64) -> Arc<FansyDivisor> {
        Arc::new(zoo::hirzebruch(n))
    }

    #[test]
    fn hirzebruch_ample_support() {
        // F2: D = D_{(0,-1/2)} + D_{(inf,0)} solves to slopes (0, 3),
        // box [0,3], h*_0 = min(0, (1-u)/2), h*_inf = 1
        let m = model(2);
        let h = support_from_weil(&m, &zoo::hirzebruch_ample(2)).unwrap();
        assert!(h.validate().is_empty());
        let plus = crate::poly::Cone::from_rays(1, &[crate::linalg::ivec(&[1])]).unwrap();
        let iplus = m.tailfan.cone_index(&plus).unwrap();
        assert_eq!(h.slopes[iplus], vec![rat(0)]);
        let iminus = 1 - iplus;
        assert_eq!(h.slopes[iminus], vec![rat(3)]);
        let hs = hstar(&h).unwrap();
        assert!(hs.complete);
        assert_eq!(hs.bx.vertices, vec![vec![rat(0)], vec![rat(3)]]);
        for (u, expect) in [(0, rat(0)), (1, rat(0)), (2, ratio(-1, 2)), (3, rat(-1))] {
            assert_eq!(hs.eval(&CurvePoint::zero(), &[rat(u)]), expect);
            assert_eq!(hs.eval(&CurvePoint::Infinity, &[rat(u)]), rat(1));
        }
        // round trip through the Weil expansion
        assert_eq!(h.weil(), zoo::hirzebruch_ample(2));
    }

    #[test]
    fn section_dimensions_f2() {
        let m = model(2);
        let h = support_from_weil(&m, &zoo::hirzebruch_ample(2)).unwrap();
        let dims: Vec<Int> = (0..4)
            .map(|u| section_dimension(&h, &[rat(u)]).unwrap())
            .collect();
        assert_eq!(dims, vec![Int::from(2), Int::from(2), Int::from(1), Int::from(1)]);
        assert_eq!(section_dimension(&h, &[rat(5)]).unwrap(), Int::from(0));
        assert_eq!(total_sections(&h).unwrap(), Int::from(6));
    }

    #[test]
    fn zero_support_function() {
        let m = model(2);
        let z = SupportFn::zero(m.clone());
        assert!(z.validate().is_empty());
        assert!(z.weil().is_empty());
        let hs = hstar(&z).unwrap();
        assert_eq!(hs.bx.vertices, vec![vec![rat(0)]]);
        assert_eq!(total_sections(&z).unwrap(), Int::from(1));
        // round trip of the zero divisor
        let h = support_from_weil(&m, &WeilDivisor::new()).unwrap();
        assert!(h.weil().is_empty());
    }

    #[test]
    fn principality_violation_detected() {
        let m = model(2);
        let mut h = support_from_weil(&m, &zoo::hirzebruch_ample(2)).unwrap();
        // shift the constant on the marked cone's cell at 0 by 1:
        // bump both vertex values over 0 on the sigma-minus cell
        *h.vertex_values
            .get_mut(&(CurvePoint::zero(), vec![ratio(-1, 2)]))
            .unwrap() -= rat(1);
        let viol = h.validate();
        assert!(viol.iter().any(|v| v.contains("not principal") || v.contains("not affine")));
    }

    #[test]
    fn canonical_divisors() {
        // cotangent: -K = 2 D_{(0,(0,0))} + 2 D_{(0,(0,1))}
        let k = canonical_divisor(&zoo::cotangent());
        let mut minus_k = WeilDivisor::new();
        for (key, v) in k {
            minus_k.insert(key, -v);
        }
        assert_eq!(minus_k, zoo::cotangent_anticanonical());
        // trivial P1 x P1 model: K = -D_rho+ - D_rho- - 2 D_{(0,0)}
        let k = canonical_divisor(&zoo::p1_times_p1());
        assert_eq!(k.len(), 3);
        assert_eq!(
            k.get(&DivisorKey::Vertical(CurvePoint::zero(), vec![rat(0)])),
            Some(&rat(-2))
        );
        // quadric: -K is linearly equivalent to 3 D_{(inf,(1/2,1/2))}
        // via div(t^2): difference must be the principal divisor of (t^2, u=0)
        let q = zoo::quadric();
        let k = canonical_divisor(&q);
        let mut diff = zoo::quadric_anticanonical();
        for (key, v) in &k {
            *diff.entry(key.clone()).or_insert_with(Rat::zero) += v.clone();
        }
        diff.retain(|_, v| !v.is_zero());
        let mut div_f = BTreeMap::new();
        div_f.insert(CurvePoint::zero(), rat(-2));
        div_f.insert(CurvePoint::Infinity, rat(2));
        let mut principal = principal_divisor(&q, &div_f, &qvec(&[0, 0])).unwrap();
        principal.retain(|_, v| !v.is_zero());
        assert_eq!(diff, principal);
    }

    #[test]
    fn principal_divisor_examples() {
        let m = zoo::hirzebruch(2);
        // f = 1, u = 0 -> zero divisor
        assert!(principal_divisor(&m, &BTreeMap::new(), &qvec(&[0])).unwrap().is_empty());
        // f = 1, u = 1: coefficient 1 on ray(+1), -1 at (0,-1/2) (mu=2 times -1/2), 0 elsewhere
        let d = principal_divisor(&m, &BTreeMap::new(), &qvec(&[1])).unwrap();
        assert_eq!(d.get(&DivisorKey::Horizontal(crate::linalg::ivec(&[1]))), Some(&rat(1)));
        assert_eq!(
            d.get(&DivisorKey::Vertical(CurvePoint::zero(), vec![ratio(-1, 2)])),
            Some(&rat(-1))
        );
        assert_eq!(d.len(), 2);
        // f = t: +mu(v) over 0, -mu(v) over infinity
        let mut div_f = BTreeMap::new();
        div_f.insert(CurvePoint::zero(), rat(1));
        div_f.insert(CurvePoint::Infinity, rat(-1));
        let d = principal_divisor(&m, &div_f, &qvec(&[0])).unwrap();
        assert_eq!(
            d.get(&DivisorKey::Vertical(CurvePoint::zero(), vec![rat(0)])),
            Some(&rat(1))
        );
        assert_eq!(
            d.get(&DivisorKey::Vertical(CurvePoint::zero(), vec![ratio(-1, 2)])),
            Some(&rat(2))
        );
        assert_eq!(
            d.get(&DivisorKey::Vertical(CurvePoint::Infinity, vec![rat(0)])),
            Some(&rat(-1))
        );
        // degree must vanish
        div_f.insert(CurvePoint::Infinity, rat(2));
        assert!(matches!(
            principal_divisor(&m, &div_f, &qvec(&[0])),
            Err(Error::NonzeroDegree)
        ));
    }

    #[test]
    fn quadric_anticanonical_sections() {
        let m = Arc::new(zoo::quadric());
        let h = support_from_weil(&m, &zoo::quadric_anticanonical()).unwrap();
        assert!(h.validate().is_empty());
        let hs = hstar(&h).unwrap();
        // box = {|u1 +- u2| <= 3}
        let mut vs = hs.bx.vertices.clone();
        vs.sort();
        assert_eq!(
            vs,
            vec![qvec(&[-3, 0]), qvec(&[0, -3]), qvec(&[0, 3]), qvec(&[3, 0])]
        );
        assert_eq!(total_sections(&h).unwrap(), Int::from(30));
    }

    #[test]
    fn cotangent_anticanonical_sections() {
        let m = Arc::new(zoo::cotangent());
        let h = support_from_weil(&m, &zoo::cotangent_anticanonical()).unwrap();
        assert!(h.validate().is_empty());
        assert_eq!(total_sections(&h).unwrap(), Int::from(27));
    }

    #[test]
    fn alt_ample_is_linearly_equivalent() {
        // (n+1) D_rho0 + D_rho1 ~ D_rho2 + D_rho3 on F_n
        let n = 2;
        let m = model(n);
        let h1 = support_from_weil(&m, &zoo::hirzebruch_ample(n)).unwrap();
        let h2 = support_from_weil(&m, &zoo::hirzebruch_ample_alt(n)).unwrap();
        assert_eq!(total_sections(&h1).unwrap(), total_sections(&h2).unwrap());
    }
}
