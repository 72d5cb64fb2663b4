//! Okounkov bodies of big invariant divisors, the toric reference
//! computation, class group data, the effective cone and the global
//! Okounkov body.
//!
//! The local body is cut out in (x, u)-coordinates: the weight u runs over
//! the box of the normalized divisor, and x is bounded by the concave
//! piecewise linear degree of h*, expanded into one inequality per choice of
//! a slice vertex at every point. The flag's coordinate vectors then move the
//! body into the nonnegative orthant of Z^d.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::fansy::{divisor_keys, CurvePoint, DivisorKey, FansyDivisor, WeilDivisor};
use crate::flag::{normalize, Flag, FlagKind};
use crate::linalg::{self, dot_qi, invert, to_qvec, IVec, QVec};
use crate::poly::{fourier_motzkin_project, Cone, Facet, Polyhedron};
use crate::rat::{mu, Int, Rat};
use crate::support::{hstar, support_from_weil, SupportFn};

#[derive(Clone, Debug)]
pub struct OkounkovBody {
    /// the body in the flag coordinates, inside the nonnegative orthant
    pub polytope: Polyhedron,
    /// the (x, u)-region before the coordinate change (the set W(h))
    pub pre_transform: Polyhedron,
    /// the normalized support function actually used
    pub normalized: SupportFn,
}

/// All (point, vertex-list) data of the normalized divisor, including the
/// auxiliary points introduced by normalization. Trivial general points are
/// omitted: they contribute zero.
fn point_vertex_data(h: &SupportFn) -> Vec<(CurvePoint, Vec<(QVec, Rat)>)> {
    let mut out = Vec::new();
    for p in h.support_points() {
        if h.model.slices.contains_key(&p) {
            let mut list: Vec<(QVec, Rat)> = Vec::new();
            for cell in h.model.slice_cells(&p) {
                for v in &cell.vertices {
                    if !list.iter().any(|(w, _)| w == v) {
                        list.push((v.clone(), h.value(&p, v)));
                    }
                }
            }
            out.push((p, list));
        } else {
            let c = h.aux_constants.get(&p).cloned().unwrap_or_else(Rat::zero);
            if !c.is_zero() {
                out.push((p, vec![(vec![Rat::zero(); h.model.rank], c)]));
            }
        }
    }
    out
}

/// H-representation of { (x, u) : u in Box, lower(u) <= x <= upper(u) } where
/// the bounds come from the vertex expansion of h*.
fn body_region(h: &SupportFn, flag: &Flag) -> Result<Polyhedron> {
    let rank = h.model.rank;
    let hs = hstar(h)?;
    if !hs.complete {
        return Err(Error::NotComplete);
    }
    let mut facets: Vec<Facet> = Vec::new();
    // box constraints, lifted to (x, u)
    for f in &hs.bx.facets {
        let mut normal = vec![Rat::zero()];
        normal.extend(f.normal.iter().cloned());
        facets.push(Facet { normal, offset: f.offset.clone() });
    }
    let data = point_vertex_data(h);
    let base = flag.base_point();
    // lower bounds
    match &base {
        None => {
            // general flags: x >= 0
            let mut normal = vec![Rat::one()];
            normal.extend(vec![Rat::zero(); rank]);
            facets.push(Facet { normal, offset: Rat::zero() });
        }
        Some(p1) => {
            // toric flags: x >= -(<u,v> - h(v)) for each vertex v over p1
            let empty = Vec::new();
            let list = data
                .iter()
                .find(|(p, _)| p == p1)
                .map(|(_, l)| l)
                .unwrap_or(&empty);
            if list.is_empty() {
                let mut normal = vec![Rat::one()];
                normal.extend(vec![Rat::zero(); rank]);
                facets.push(Facet { normal, offset: Rat::zero() });
            }
            for (v, val) in list {
                // x + <u,v> >= h(v)
                let mut normal = vec![Rat::one()];
                normal.extend(v.iter().cloned());
                facets.push(Facet { normal, offset: val.clone() });
            }
        }
    }
    // upper bounds: x <= sum over points != base of (<u, v_P> - h_P(v_P)),
    // one inequality per tuple of vertices
    let upper_data: Vec<&(CurvePoint, Vec<(QVec, Rat)>)> =
        data.iter().filter(|(p, _)| Some(p) != base.as_ref()).collect();
    let mut tuples: Vec<(QVec, Rat)> = vec![(vec![Rat::zero(); rank], Rat::zero())];
    for (_, list) in &upper_data {
        let mut next = Vec::new();
        for (acc_v, acc_c) in &tuples {
            for (v, val) in list.iter() {
                next.push((linalg::add(acc_v, v.as_slice()), acc_c + val));
            }
        }
        tuples = next;
    }
    for (vsum, csum) in tuples {
        // x <= <u, vsum> - csum  <=>  -x + <u, vsum> >= csum
        let mut normal = vec![-Rat::one()];
        normal.extend(vsum.iter().cloned());
        facets.push(Facet { normal, offset: csum });
    }
    Polyhedron::from_constraints(rank + 1, &facets, &[])
}

/// The unimodular coordinate change of a flag on (x, u)-space: row i is the
/// pairing with the i-th coordinate vector.
pub fn flag_matrix(flag: &Flag) -> Vec<QVec> {
    let rank = flag.model.rank;
    match flag.kind {
        FlagKind::G1 | FlagKind::G2 => {
            let mut rows = Vec::new();
            let mut first = vec![Rat::one()];
            first.extend(vec![Rat::zero(); rank]);
            rows.push(first);
            for r in &flag.ray_order {
                let mut row = vec![Rat::zero()];
                row.extend(to_qvec(r));
                rows.push(row);
            }
            rows
        }
        FlagKind::T1 | FlagKind::T2 => {
            flag.ray_order.iter().map(|r| to_qvec(r)).collect()
        }
    }
}

/// The Okounkov body of D_h with respect to the flag. Rational (Q-Cartier)
/// input is handled by clearing denominators and scaling back.
pub fn okounkov_body(h: &SupportFn, flag: &Flag) -> Result<OkounkovBody> {
    let k = h.clearing_denominator()?;
    if k != Int::one() {
        let scaled = h.scale(&Rat::from_integer(k.clone()));
        let body = okounkov_body_integral(&scaled, flag)?;
        let inv = Rat::from_integer(k).recip();
        return Ok(OkounkovBody {
            polytope: body.polytope.scale(&inv),
            pre_transform: body.pre_transform.scale(&inv),
            normalized: body.normalized,
        });
    }
    okounkov_body_integral(h, flag)
}

fn okounkov_body_integral(h: &SupportFn, flag: &Flag) -> Result<OkounkovBody> {
    let hn = normalize(h, flag)?;
    let region = body_region(&hn, flag)?;
    if region.empty {
        return Err(Error::NotBig);
    }
    let rows = flag_matrix(flag);
    let polytope = region.linear_image(&rows)?;
    if polytope.dim() < (h.model.rank + 1) as isize {
        return Err(Error::NotBig);
    }
    Ok(OkounkovBody { polytope, pre_transform: region, normalized: hn })
}

/// Toric reference: OB(O(D)) = phi(P_D - u_sigma) for a smooth maximal cone
/// with an ordered set of rays. Used as an independent oracle for downgraded
/// computations; deliberately bypasses the fansy machinery.
pub fn toric_okounkov_reference(
    fan: &Fan,
    coeffs: &[Rat],
    sigma: &Cone,
    ray_order: &[IVec],
) -> Result<Polyhedron> {
    if !sigma.is_smooth() || sigma.dim() != fan.rank {
        return Err(Error::NotSmooth);
    }
    let rays = fan.rays();
    if coeffs.len() != rays.len() {
        return Err(Error::RankMismatch { expected: rays.len(), got: coeffs.len() });
    }
    // trivialize on U_sigma: u_sigma with <u_sigma, n_rho> = -a_rho on sigma's rays
    let rows: Vec<QVec> = sigma.rays.iter().map(|r| to_qvec(r)).collect();
    let rhs: Vec<Rat> = sigma
        .rays
        .iter()
        .map(|r| -coeffs[rays.iter().position(|x| x == r).unwrap()].clone())
        .collect();
    let (u_sigma, ker) = linalg::solve(&rows, &rhs).ok_or(Error::NotSmooth)?;
    if !ker.is_empty() {
        return Err(Error::NotSmooth);
    }
    let facets: Vec<Facet> = rays
        .iter()
        .zip(coeffs)
        .map(|(r, a)| Facet { normal: to_qvec(r), offset: -a.clone() })
        .collect();
    let pd = Polyhedron::from_constraints(fan.rank, &facets, &[])?;
    if pd.empty {
        return Err(Error::NotBig);
    }
    let shifted = pd.translate(&linalg::neg(&u_sigma));
    let phi: Vec<QVec> = ray_order.iter().map(|r| to_qvec(r)).collect();
    shifted.linear_image(&phi)
}

/// Class group presentation: keys are the surviving prime divisors, the
/// relation lattice is spanned by the principal divisors div(f chi^u) with f
/// supported on the slice points, and `projection` maps coefficient vectors
/// onto coordinates for Cl_Q.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub keys: Vec<DivisorKey>,
    pub relations: Vec<QVec>,
    pub projection: Vec<QVec>,
}

impl ClassGroup {
    pub fn rank(&self) -> usize {
        self.projection.len()
    }

    pub fn coefficient_vector(&self, c: &WeilDivisor) -> QVec {
        self.keys
            .iter()
            .map(|k| c.get(k).cloned().unwrap_or_else(Rat::zero))
            .collect()
    }

    pub fn class_of(&self, c: &WeilDivisor) -> QVec {
        linalg::mat_vec(&self.projection, &self.coefficient_vector(c))
    }

    pub fn divisor_from_vector(&self, v: &[Rat]) -> WeilDivisor {
        let mut out = WeilDivisor::new();
        for (k, x) in self.keys.iter().zip(v) {
            if !x.is_zero() {
                out.insert(k.clone(), x.clone());
            }
        }
        out
    }
}

pub fn class_group(model: &FansyDivisor) -> Result<ClassGroup> {
    let keys = divisor_keys(model);
    let pts = model.slice_points();
    if pts.is_empty() {
        return Err(Error::Validation("no designated points".into()));
    }
    let n = keys.len();
    let mut relations: Vec<QVec> = Vec::new();
    // point relations: w = e_{P_i} - e_{P_last}
    for i in 0..pts.len().saturating_sub(1) {
        let mut row = vec![Rat::zero(); n];
        for (j, k) in keys.iter().enumerate() {
            if let DivisorKey::Vertical(p, v) = k {
                let m = Rat::from_integer(mu(v));
                if *p == pts[i] {
                    row[j] = m;
                } else if *p == pts[pts.len() - 1] {
                    row[j] = -m;
                }
            }
        }
        relations.push(row);
    }
    // character relations
    for k in 0..model.rank {
        let mut row = vec![Rat::zero(); n];
        for (j, key) in keys.iter().enumerate() {
            match key {
                DivisorKey::Vertical(_, v) => {
                    row[j] = Rat::from_integer(mu(v)) * &v[k];
                }
                DivisorKey::Horizontal(r) => {
                    row[j] = Rat::from_integer(r[k].clone());
                }
            }
        }
        relations.push(row);
    }
    // projection onto the non-pivot coordinates, correcting by the rref rows
    let mut reduced = relations.clone();
    let pivots = linalg::rref(&mut reduced);
    let mut projection: Vec<QVec> = Vec::new();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    for &c in &free {
        let mut row = vec![Rat::zero(); n];
        row[c] = Rat::one();
        for (r, &pc) in reduced.iter().zip(&pivots) {
            row[pc] = -r[c].clone();
        }
        projection.push(row);
    }
    Ok(ClassGroup { keys, relations, projection })
}

/// The pseudoeffective cone: image of the coefficient orthant in Cl_Q.
pub fn eff_cone(cg: &ClassGroup) -> Result<Cone> {
    let gens: Vec<QVec> = (0..cg.keys.len())
        .map(|i| cg.projection.iter().map(|row| row[i].clone()).collect())
        .collect();
    crate::poly::cone_hull(cg.rank(), &gens)
}

/// The effective representative of a class used for fiber computations:
/// lexicographically least vertex of the fiber polytope { c >= 0, pr c = class }.
pub fn divisor_from_class(cg: &ClassGroup, class: &[Rat]) -> Result<WeilDivisor> {
    let n = cg.keys.len();
    let facets: Vec<Facet> = (0..n)
        .map(|i| {
            let mut normal = vec![Rat::zero(); n];
            normal[i] = Rat::one();
            Facet { normal, offset: Rat::zero() }
        })
        .collect();
    let eqs: Vec<Facet> = cg
        .projection
        .iter()
        .zip(class)
        .map(|(row, b)| Facet { normal: row.clone(), offset: b.clone() })
        .collect();
    let fiber = Polyhedron::from_constraints(n, &facets, &eqs)?;
    if fiber.empty {
        return Err(Error::NotEffectiveClass);
    }
    let v = fiber.vertices.iter().min().unwrap();
    Ok(cg.divisor_from_vector(v))
}

#[derive(Clone, Debug)]
pub struct GlobalOkounkovBody {
    /// cone in (flag coordinates, class coordinates)
    pub cone: Polyhedron,
    pub class_group: ClassGroup,
    pub flag_dim: usize,
}

/// Linear solve of the support function as a function of the coefficient
/// vector: returns matrices U_i (rank x n) and A_{i,P} (1 x n) such that for a
/// coefficient vector c the solution has u_i = U_i c and a_{i,P} = A_{i,P} c.
struct SymbolicSupport {
    /// rows: for each maximal cone, `rank` rows of length n
    u_rows: Vec<Vec<QVec>>,
    /// rows: for each maximal cone, per slice point, one row of length n
    a_rows: Vec<Vec<QVec>>,
    pts: Vec<CurvePoint>,
}

fn symbolic_support(model: &FansyDivisor, cg: &ClassGroup) -> Result<SymbolicSupport> {
    let rank = model.rank;
    let pts = model.slice_points();
    let m = model.tailfan.maximal.len();
    let nkeys = cg.keys.len();
    let cols = m * rank + m * pts.len();
    let ucol = |i: usize, k: usize| i * rank + k;
    let acol = |i: usize, j: usize| m * rank + i * pts.len() + j;
    let mut rows: Vec<QVec> = Vec::new();
    // right-hand sides as rows over the coefficient vector
    let mut rhs_rows: Vec<QVec> = Vec::new();
    let key_index = |key: &DivisorKey| cg.keys.iter().position(|k| k == key);
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
                let mut rhs = vec![Rat::zero(); nkeys];
                let key = DivisorKey::Vertical(p.clone(), v.clone());
                if let Some(idx) = key_index(&key) {
                    rhs[idx] = -Rat::from_integer(mu(v)).recip();
                }
                rhs_rows.push(rhs);
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
            let mut rhs = vec![Rat::zero(); nkeys];
            if let Some(idx) = key_index(&DivisorKey::Horizontal(r.clone())) {
                rhs[idx] = -Rat::one();
            }
            rhs_rows.push(rhs);
        }
    }
    for ray in model.tailfan.rays() {
        let cones = model.tailfan.cones_with_ray(&ray);
        for w in cones.windows(2) {
            let mut row = vec![Rat::zero(); cols];
            for k in 0..rank {
                row[ucol(w[0], k)] = Rat::from_integer(ray[k].clone());
                row[ucol(w[1], k)] -= Rat::from_integer(ray[k].clone());
            }
            rows.push(row);
            rhs_rows.push(vec![Rat::zero(); nkeys]);
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
        rhs_rows.push(vec![Rat::zero(); nkeys]);
    }
    // solve column by column of the rhs matrix
    let mut solution_cols: Vec<QVec> = Vec::new();
    for c in 0..nkeys {
        let rhs: Vec<Rat> = rhs_rows.iter().map(|r| r[c].clone()).collect();
        let (sol, ker) = linalg::solve(&rows, &rhs).ok_or(Error::NotSimplicial)?;
        if !ker.is_empty() {
            return Err(Error::Underdetermined);
        }
        solution_cols.push(sol);
    }
    let entry = |row: usize, key: usize| solution_cols[key][row].clone();
    let mut u_rows = Vec::new();
    let mut a_rows = Vec::new();
    for i in 0..m {
        let mut ui = Vec::new();
        for k in 0..rank {
            ui.push((0..nkeys).map(|c| entry(ucol(i, k), c)).collect());
        }
        u_rows.push(ui);
        let mut ai = Vec::new();
        for j in 0..pts.len() {
            ai.push((0..nkeys).map(|c| entry(acol(i, j), c)).collect());
        }
        a_rows.push(ai);
    }
    Ok(SymbolicSupport { u_rows, a_rows, pts })
}

/// The global Okounkov body: the rational polyhedral cone over the effective
/// cone whose fiber over every big class is the local body of that class.
pub fn global_okounkov(model: &Arc<FansyDivisor>, flag: &Flag) -> Result<GlobalOkounkovBody> {
    for sigma in &model.tailfan.maximal {
        if !sigma.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
    }
    let rank = model.rank;
    let d = rank + 1;
    let cg = class_group(model)?;
    let nkeys = cg.keys.len();
    let sym = symbolic_support(model, &cg)?;
    let fan = &model.tailfan;
    // normalization data as linear maps in c
    let fix_index = match flag.kind {
        FlagKind::T1 => None,
        _ => Some(fan.cone_index(&flag.sigma_fix).ok_or(Error::NotMaximalCone)?),
    };
    // slope to subtract: u_fix(c)
    let u_fix: Vec<QVec> = match flag.kind {
        FlagKind::G1 | FlagKind::G2 | FlagKind::T2 => sym.u_rows[fix_index.unwrap()].clone(),
        FlagKind::T1 => {
            // slope of the flag cell: interpolation as a linear map in c
            let p = flag.base_point().unwrap();
            let cell = flag.cell.as_ref().unwrap();
            cell_slope_rows(model, &cg, &sym, &p, cell)?
        }
    };
    // value of the normalized function at (P, v) as a row over c:
    //   h_P(v)(c) - <u_fix(c), v> - f_P(c)
    let vertex_row = |p: &CurvePoint, v: &QVec| -> QVec {
        let mut row = vec![Rat::zero(); nkeys];
        if let Some(idx) = cg.keys.iter().position(|k| k == &DivisorKey::Vertical(p.clone(), v.clone())) {
            row[idx] = -Rat::from_integer(mu(v)).recip();
        }
        for (k, coord) in v.iter().enumerate() {
            row = linalg::sub(&row, &linalg::scale(&u_fix[k], coord));
        }
        row
    };
    // constant corrections f_P(c) for the toric kinds
    let mut f_rows: BTreeMap<CurvePoint, QVec> = BTreeMap::new();
    let mut aux_row: Option<(CurvePoint, QVec)> = None;
    match flag.kind {
        FlagKind::G1 | FlagKind::G2 => {}
        FlagKind::T2 => {
            // the constant of the sigma-fix piece is invariant under the
            // slope subtraction, so it is the solved a_{fix,P} itself
            let i = fix_index.unwrap();
            for (j, p) in sym.pts.iter().enumerate() {
                f_rows.insert(p.clone(), sym.a_rows[i][j].clone());
            }
        }
        FlagKind::T1 => {
            let p1 = flag.base_point().unwrap();
            let cell = flag.cell.as_ref().unwrap();
            let v0 = &cell.vertices[0];
            // value at v0 after slope subtraction: that is the constant
            let row = vertex_row(&p1, v0);
            // the slope of the cell is exactly u_fix, so no extra term
            f_rows.insert(p1.clone(), row.clone());
            let aux = flag.aux_point();
            aux_row = Some((aux, linalg::neg(&row)));
        }
    }
    let normalized_value = |p: &CurvePoint, v: &QVec| -> QVec {
        let mut row = vertex_row(p, v);
        if let Some(f) = f_rows.get(p) {
            row = linalg::sub(&row, f);
        }
        row
    };
    // assemble the H-representation in coordinates (x, u, c)
    let mut facets: Vec<Facet> = Vec::new();
    let put = |x: Rat, u_part: QVec, c_part: QVec| -> QVec {
        let mut row = vec![x];
        row.extend(u_part);
        row.extend(c_part);
        row
    };
    // c >= 0
    for i in 0..nkeys {
        let mut cpart = vec![Rat::zero(); nkeys];
        cpart[i] = Rat::one();
        facets.push(Facet {
            normal: put(Rat::zero(), vec![Rat::zero(); rank], cpart),
            offset: Rat::zero(),
        });
    }
    // box of the normalized divisor: <u - (u_sigma(c) - u_fix(c)), n_rho> >= 0
    for (i, sigma) in fan.maximal.iter().enumerate() {
        for r in &sigma.rays {
            let rq = to_qvec(r);
            let mut cpart = vec![Rat::zero(); nkeys];
            for (k, coord) in rq.iter().enumerate() {
                let diff = linalg::sub(&sym.u_rows[i][k], &u_fix[k]);
                cpart = linalg::sub(&cpart, &linalg::scale(&diff, coord));
            }
            facets.push(Facet { normal: put(Rat::zero(), rq, cpart), offset: Rat::zero() });
        }
    }
    // vertex data of the normalized divisor at every relevant point
    let mut data: Vec<(CurvePoint, Vec<(QVec, QVec)>)> = Vec::new();
    for p in model.slice_points() {
        let mut list: Vec<(QVec, QVec)> = Vec::new();
        for cell in model.slice_cells(&p) {
            for v in &cell.vertices {
                if !list.iter().any(|(w, _)| w == v) {
                    list.push((v.clone(), normalized_value(&p, v)));
                }
            }
        }
        data.push((p, list));
    }
    if let Some((aux, row)) = aux_row {
        data.push((aux, vec![(vec![Rat::zero(); rank], row)]));
    }
    let base = flag.base_point();
    match &base {
        None => {
            let mut normal = vec![Rat::one()];
            normal.extend(vec![Rat::zero(); rank + nkeys]);
            facets.push(Facet { normal, offset: Rat::zero() });
        }
        Some(p1) => {
            let list = data.iter().find(|(p, _)| p == p1).map(|(_, l)| l.clone()).unwrap_or_default();
            for (v, val_row) in &list {
                // x + <u, v> - val(c) >= 0
                facets.push(Facet {
                    normal: put(Rat::one(), v.clone(), linalg::neg(val_row)),
                    offset: Rat::zero(),
                });
            }
        }
    }
    let upper: Vec<&(CurvePoint, Vec<(QVec, QVec)>)> =
        data.iter().filter(|(p, _)| Some(p) != base.as_ref()).collect();
    let mut tuples: Vec<(QVec, QVec)> =
        vec![(vec![Rat::zero(); rank], vec![Rat::zero(); nkeys])];
    for (_, list) in &upper {
        let mut next = Vec::new();
        for (acc_v, acc_c) in &tuples {
            for (v, val_row) in list.iter() {
                next.push((linalg::add(acc_v, v.as_slice()), linalg::add(acc_c, val_row.as_slice())));
            }
        }
        tuples = next;
    }
    for (vsum, csum) in tuples {
        // -x + <u, vsum> - csum(c)... >= 0  i.e. x <= <u,vsum> - sum of values
        facets.push(Facet {
            normal: put(-Rat::one(), vsum, linalg::neg(&csum)),
            offset: Rat::zero(),
        });
    }
    // coordinate change: y = Phi (x,u); class = Pr c; t = pivot coords of c
    let phi = flag_matrix(flag);
    let clrank = cg.rank();
    let mut change: Vec<QVec> = Vec::new();
    for row in &phi {
        let mut r = row.clone();
        r.extend(vec![Rat::zero(); nkeys]);
        change.push(r);
    }
    for row in &cg.projection {
        let mut r = vec![Rat::zero(); d];
        r.extend(row.clone());
        change.push(r);
    }
    // completion rows: pick key coordinates that make the map invertible
    let mut completion: Vec<usize> = Vec::new();
    {
        let mut trial = change.clone();
        for i in 0..nkeys {
            let mut r = vec![Rat::zero(); d + nkeys];
            r[d + i] = Rat::one();
            trial.push(r);
            if linalg::rank(&trial) == trial.len() {
                completion.push(i);
            } else {
                trial.pop();
            }
            if trial.len() == d + nkeys {
                break;
            }
        }
        change = trial;
    }
    let inv = invert(&change).ok_or(Error::Underdetermined)?;
    // substitute (x,u,c) = inv * (y, class, t) into the facet normals
    let substituted: Vec<Facet> = facets
        .iter()
        .map(|f| {
            let normal: QVec = (0..d + nkeys)
                .map(|j| {
                    (0..d + nkeys).map(|i| &f.normal[i] * &inv[i][j]).sum::<Rat>()
                })
                .collect();
            Facet { normal, offset: f.offset.clone() }
        })
        .collect();
    let big = Polyhedron::from_constraints(d + nkeys, &substituted, &[])?;
    let keep: Vec<usize> = (0..d + clrank).collect();
    let cone = fourier_motzkin_project(&big, &keep)?;
    Ok(GlobalOkounkovBody { cone, class_group: cg, flag_dim: d })
}

/// Slope of a (possibly lower-tail) cell as rows over the coefficient vector.
fn cell_slope_rows(
    model: &FansyDivisor,
    cg: &ClassGroup,
    sym: &SymbolicSupport,
    p: &CurvePoint,
    cell: &Polyhedron,
) -> Result<Vec<QVec>> {
    let rank = model.rank;
    let nkeys = cg.keys.len();
    let tail = cell.tail_cone()?;
    if let Some(i) = model.tailfan.cone_index(&tail) {
        return Ok(sym.u_rows[i].clone());
    }
    // interpolation: rows of the linear system depend on the cell geometry;
    // solve once per unit coefficient vector
    let mut rows: Vec<QVec> = Vec::new();
    let v0 = cell.vertices[0].clone();
    for v in &cell.vertices[1..] {
        rows.push(linalg::sub(v, &v0));
    }
    let mut ray_cones: Vec<usize> = Vec::new();
    for r in &cell.rays {
        rows.push(to_qvec(r));
        let holder = model
            .tailfan
            .maximal
            .iter()
            .position(|c| c.contains(&to_qvec(r)))
            .ok_or(Error::NotComplete)?;
        ray_cones.push(holder);
    }
    let value_row = |v: &QVec| -> QVec {
        let mut row = vec![Rat::zero(); nkeys];
        if let Some(idx) =
            cg.keys.iter().position(|k| k == &DivisorKey::Vertical(p.clone(), v.clone()))
        {
            row[idx] = -Rat::from_integer(mu(v)).recip();
        }
        row
    };
    let mut out: Vec<QVec> = vec![vec![Rat::zero(); nkeys]; rank];
    for c in 0..nkeys {
        let mut rhs: Vec<Rat> = Vec::new();
        for v in &cell.vertices[1..] {
            let a = value_row(v)[c].clone();
            let b = value_row(&v0)[c].clone();
            rhs.push(a - b);
        }
        for (r, &holder) in cell.rays.iter().zip(&ray_cones) {
            rhs.push(dot_qi(&sym.u_rows[holder].iter().map(|row| row[c].clone()).collect::<QVec>(), r));
        }
        let (sol, ker) = linalg::solve(&rows, &rhs).ok_or(Error::Underdetermined)?;
        if !ker.is_empty() {
            return Err(Error::Underdetermined);
        }
        for k in 0..rank {
            out[k][c] = sol[k].clone();
        }
    }
    Ok(out)
}

/// The fiber of a global body over a rational class: substitute the class
/// coordinates and read off the polytope in flag coordinates.
pub fn global_fiber(body: &GlobalOkounkovBody, class: &[Rat]) -> Result<Polyhedron> {
    let d = body.flag_dim;
    let facets: Vec<Facet> = body
        .cone
        .facets
        .iter()
        .map(|f| {
            let shift: Rat = f.normal[d..].iter().zip(class).map(|(a, b)| a * b).sum();
            Facet { normal: f.normal[..d].to_vec(), offset: &f.offset - &shift }
        })
        .collect();
    let eqs: Vec<Facet> = body
        .cone
        .affine_equations
        .iter()
        .map(|f| {
            let shift: Rat = f.normal[d..].iter().zip(class).map(|(a, b)| a * b).sum();
            Facet { normal: f.normal[..d].to_vec(), offset: &f.offset - &shift }
        })
        .collect();
    Polyhedron::from_constraints(d, &facets, &eqs)
}

/// Convenience: local body of a Weil divisor.
pub fn okounkov_body_of_divisor(
    model: &Arc<FansyDivisor>,
    c: &WeilDivisor,
    flag: &Flag,
) -> Result<OkounkovBody> {
    let h = support_from_weil(model, c)?;
    okounkov_body(&h, flag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{make_flag, FlagSpec};
    use crate::linalg::{ivec, qvec};
    use crate::rat::{rat, ratio};
    use crate::zoo;

    fn ray(s: i64) -> Cone {
        Cone::from_rays(1, &[ivec(&[s])]).unwrap()
    }

    fn hull(rank: usize, pts: &[Vec<i64>]) -> Polyhedron {
        let verts: Vec<QVec> = pts.iter().map(|p| qvec(p)).collect();
        Polyhedron::from_vertices(rank, &verts).unwrap()
    }

    fn z1(m: &Arc<FansyDivisor>) -> Flag {
        make_flag(
            m,
            FlagSpec::G1 {
                sigma_fix: ray(1),
                q: CurvePoint::finite(1),
                ray_order: vec![ivec(&[1])],
            },
        )
        .unwrap()
    }

    fn z2(m: &Arc<FansyDivisor>) -> Flag {
        make_flag(
            m,
            FlagSpec::G2 {
                sigma_fix: ray(-1),
                q: CurvePoint::finite(1),
                ray_order: vec![ivec(&[-1])],
            },
        )
        .unwrap()
    }

    fn z3(m: &Arc<FansyDivisor>, n: i64) -> Flag {
        make_flag(
            m,
            FlagSpec::T1 {
                point: CurvePoint::zero(),
                cell_vertex: vec![rat(0)],
                tail: Cone::zero(1),
                ray_order: vec![ivec(&[1, 0]), ivec(&[n, -1])],
            },
        )
        .unwrap()
    }

    fn z4(m: &Arc<FansyDivisor>) -> Flag {
        make_flag(
            m,
            FlagSpec::T2 {
                sigma_fix: ray(-1),
                p1: CurvePoint::zero(),
                p2: CurvePoint::Infinity,
                ray_order: vec![ivec(&[1, -1]), ivec(&[-1, 0])],
            },
        )
        .unwrap()
    }

    #[test]
    fn hirzebruch_bodies_all_flags() {
        for n in [1i64, 2, 3] {
            let m = Arc::new(zoo::hirzebruch(n));
            let h = support_from_weil(&m, &zoo::hirzebruch_ample(n)).unwrap();
            let b1 = okounkov_body(&h, &z1(&m)).unwrap();
            assert!(b1.polytope.set_eq(&hull(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, n + 1]])));
            let b2 = okounkov_body(&h, &z2(&m)).unwrap();
            assert!(b2.polytope.set_eq(&hull(2, &[vec![0, 0], vec![0, n + 1], vec![1, n], vec![1, n + 1]])));
            let b3 = okounkov_body(&h, &z3(&m, n)).unwrap();
            assert!(b3.polytope.set_eq(&hull(2, &[vec![0, 1], vec![0, 0], vec![1, n + 1], vec![1, 0]])));
            // intermediate W(h) for Z3
            assert!(b3.pre_transform.set_eq(&hull(
                2,
                &[vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0], vec![1, n]]
            )));
            let b4 = okounkov_body(&h, &z4(&m)).unwrap();
            assert!(b4.polytope.set_eq(&hull(2, &[vec![n + 1, 0], vec![0, 0], vec![n, 1], vec![n - 1, 1]])));
            // flag-invariance of the area
            let area = ratio(n + 2, 2);
            for b in [&b1, &b2, &b3, &b4] {
                assert_eq!(b.polytope.volume().unwrap(), area);
            }
        }
    }

    #[test]
    fn quadric_anticanonical_body() {
        let m = Arc::new(zoo::quadric());
        let sigma = Cone::from_rays(2, &[ivec(&[1, 1]), ivec(&[1, -1])]).unwrap();
        let flag = make_flag(
            &m,
            FlagSpec::T2 {
                sigma_fix: sigma,
                p1: CurvePoint::zero(),
                p2: CurvePoint::Infinity,
                ray_order: vec![ivec(&[1, 0, 0]), ivec(&[1, 0, -1]), ivec(&[-2, 1, 1])],
            },
        )
        .unwrap();
        let h = support_from_weil(&m, &zoo::quadric_anticanonical()).unwrap();
        let b = okounkov_body(&h, &flag).unwrap();
        assert!(b.polytope.set_eq(&hull(
            3,
            &[vec![0, 0, 0], vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 6]]
        )));
        assert_eq!(b.polytope.volume().unwrap(), rat(9));
    }

    #[test]
    fn cotangent_bodies() {
        let m = Arc::new(zoo::cotangent());
        let h = support_from_weil(&m, &zoo::cotangent_anticanonical()).unwrap();
        let sigma = Cone::from_rays(2, &[ivec(&[1, 0]), ivec(&[1, 1])]).unwrap();
        // toric flag of type T2
        let t2 = make_flag(
            &m,
            FlagSpec::T2 {
                sigma_fix: sigma.clone(),
                p1: CurvePoint::zero(),
                p2: CurvePoint::finite(1),
                ray_order: vec![ivec(&[1, 0, 0]), ivec(&[1, 0, 1]), ivec(&[-1, 1, 0])],
            },
        )
        .unwrap();
        let bt = okounkov_body(&h, &t2).unwrap();
        assert!(bt.polytope.set_eq(&hull(
            3,
            &[
                vec![0, 0, 0],
                vec![2, 0, 0],
                vec![0, 2, 0],
                vec![2, 2, 0],
                vec![2, 0, 2],
                vec![0, 2, 2],
                vec![0, 0, 4]
            ]
        )));
        assert_eq!(bt.polytope.volume().unwrap(), rat(8));
        // general flag of type G2
        let g2 = make_flag(
            &m,
            FlagSpec::G2 {
                sigma_fix: sigma,
                q: CurvePoint::finite(2),
                ray_order: vec![ivec(&[1, 0]), ivec(&[1, 1])],
            },
        )
        .unwrap();
        let bg = okounkov_body(&h, &g2).unwrap();
        assert!(bg.polytope.set_eq(&hull(
            3,
            &[
                vec![0, 0, 0],
                vec![0, 2, 0],
                vec![0, 0, 2],
                vec![2, 2, 2],
                vec![0, 4, 2],
                vec![0, 2, 4],
                vec![0, 4, 4]
            ]
        )));
        assert_eq!(bg.polytope.volume().unwrap(), rat(8));
    }

    #[test]
    fn toric_reference_examples() {
        // F2, D of the ample bundle, sigma0 = <(1,0),(0,1)>:
        // image of conv{(0,0),(1,0),(3,1),(0,1)} under the identity pairing
        let fan = zoo::hirzebruch_fan(2);
        let coeffs = zoo::toric_divisor(&fan, &[(ivec(&[-1, 2]), 1), (ivec(&[0, -1]), 1)]);
        let sigma = Cone::from_rays(2, &[ivec(&[1, 0]), ivec(&[0, 1])]).unwrap();
        let ob =
            toric_okounkov_reference(&fan, &coeffs, &sigma, &[ivec(&[1, 0]), ivec(&[0, 1])])
                .unwrap();
        assert!(ob.set_eq(&hull(2, &[vec![0, 0], vec![1, 0], vec![3, 1], vec![0, 1]])));
        // P2, O(1): unit simplex
        let p2 = Fan::new(
            2,
            vec![
                Cone::from_rays(2, &[ivec(&[1, 0]), ivec(&[0, 1])]).unwrap(),
                Cone::from_rays(2, &[ivec(&[0, 1]), ivec(&[-1, -1])]).unwrap(),
                Cone::from_rays(2, &[ivec(&[-1, -1]), ivec(&[1, 0])]).unwrap(),
            ],
        );
        let coeffs = zoo::toric_divisor(&p2, &[(ivec(&[-1, -1]), 1)]);
        let sigma = Cone::from_rays(2, &[ivec(&[1, 0]), ivec(&[0, 1])]).unwrap();
        let ob = toric_okounkov_reference(&p2, &coeffs, &sigma, &[ivec(&[1, 0]), ivec(&[0, 1])])
            .unwrap();
        assert!(ob.set_eq(&hull(2, &[vec![0, 0], vec![1, 0], vec![0, 1]])));
        // singular cone rejected
        let diamond = zoo::diamond_fan();
        let sing = Cone::from_rays(2, &[ivec(&[1, 1]), ivec(&[-1, 1])]).unwrap();
        assert!(matches!(
            toric_okounkov_reference(&diamond, &vec![rat(0); 4], &sing, &[ivec(&[1, 1]), ivec(&[-1, 1])]),
            Err(Error::NotSmooth)
        ));
    }

    #[test]
    fn class_group_ranks() {
        assert_eq!(class_group(&zoo::hirzebruch(2)).unwrap().rank(), 2);
        assert_eq!(class_group(&zoo::quadric()).unwrap().rank(), 1);
        assert_eq!(class_group(&zoo::cotangent()).unwrap().rank(), 2);
        assert_eq!(class_group(&zoo::p1_times_p1()).unwrap().rank(), 2);
    }

    #[test]
    fn principal_divisors_have_class_zero() {
        let m = zoo::hirzebruch(2);
        let cg = class_group(&m).unwrap();
        let mut div_f = std::collections::BTreeMap::new();
        div_f.insert(CurvePoint::zero(), rat(2));
        div_f.insert(CurvePoint::Infinity, rat(-2));
        let p = crate::support::principal_divisor(&m, &div_f, &qvec(&[3])).unwrap();
        assert!(cg.class_of(&p).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn eff_cone_examples() {
        let m = zoo::hirzebruch(2);
        let cg = class_group(&m).unwrap();
        let eff = eff_cone(&cg).unwrap();
        assert_eq!(eff.dim(), 2);
        // the zero class is in the effective cone
        assert!(eff.contains(&qvec(&[0, 0])));
        // quadric: a single ray
        let cgq = class_group(&zoo::quadric()).unwrap();
        let effq = eff_cone(&cgq).unwrap();
        assert_eq!(effq.dim(), 1);
        assert_eq!(effq.rays.len(), 1);
    }

    #[test]
    fn global_body_fiber_matches_local() {
        let n = 2;
        let m = Arc::new(zoo::hirzebruch(n));
        let flag = z1(&m);
        let g = global_okounkov(&m, &flag).unwrap();
        let cg = &g.class_group;
        let xi = cg.class_of(&zoo::hirzebruch_ample(n));
        let fiber = global_fiber(&g, &xi).unwrap();
        assert!(fiber.set_eq(&hull(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, n + 1]])));
        // fiber over the zero class is the origin
        let zero_fiber = global_fiber(&g, &qvec(&[0, 0])).unwrap();
        assert_eq!(zero_fiber.vertices, vec![qvec(&[0, 0])]);
        assert!(zero_fiber.rays.is_empty());
    }
}
