//! Exact rational cones and polyhedra with synchronized V- and H-representations.
//!
//! All polyhedra here are pointed (no line is contained in them); the distinguished
//! empty polyhedron is a first-class value. Conversions run through the double
//! description kernel and canonicalize both representations, so structural
//! equality of canonical forms is set equality.

use std::fmt;

use num::{One, Signed, Zero};

use crate::dd::dd_cone;
use crate::error::{Error, Result};
use crate::linalg::{
    self, dot, dot_qi, is_zero_vec, primitive, rank, sub, to_qvec, IVec, QVec,
};
use crate::rat::{Int, Rat};

/// A pointed rational polyhedral cone, canonical V- and H-representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Cone {
    pub rank: usize,
    /// primitive generators of the extreme rays, sorted
    pub rays: Vec<IVec>,
    /// H-rep:  x with  <eq, x> = 0  and  <ineq, x> >= 0
    pub equations: Vec<QVec>,
    pub inequalities: Vec<QVec>,
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.rays)
    }
}

impl Cone {
    pub fn from_rays(rank: usize, gens: &[IVec]) -> Result<Cone> {
        for g in gens {
            if g.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: g.len() });
            }
        }
        // dual description: functionals nonnegative on all generators
        let ineqs: Vec<QVec> = gens.iter().map(|g| to_qvec(g)).collect();
        let dual = dd_cone(rank, &[], &ineqs);
        let equations = dual.lineality;
        let inequalities = dual.rays;
        // primal pass canonicalizes the extreme rays
        let primal = dd_cone(rank, &equations, &inequalities);
        if !primal.lineality.is_empty() {
            return Err(Error::UnboundedWithoutRays);
        }
        let mut rays: Vec<IVec> = primal.rays.iter().map(|r| primitive(r)).collect();
        rays.sort();
        Ok(Cone { rank, rays, equations, inequalities })
    }

    pub fn from_hrep(rank: usize, equations: &[QVec], inequalities: &[QVec]) -> Result<Cone> {
        let primal = dd_cone(rank, equations, inequalities);
        if !primal.lineality.is_empty() {
            return Err(Error::UnboundedWithoutRays);
        }
        let rays: Vec<IVec> = primal.rays.iter().map(|r| primitive(r)).collect();
        Cone::from_rays(rank, &rays)
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::from_rays(rank, &[]).expect("zero cone")
    }

    pub fn dim(&self) -> usize {
        rank(&self.rays.iter().map(|r| to_qvec(r)).collect::<Vec<_>>())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.inequalities.iter().all(|a| !dot(a, x).is_negative())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(&to_qvec(r)))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.clone());
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.clone());
        Cone::from_hrep(self.rank, &eqs, &ineqs)
    }

    /// All faces, including the cone itself and its minimal face {0}.
    pub fn faces(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = Vec::new();
        let m = self.inequalities.len();
        for mask in 0..(1u32 << m.min(20)) {
            let extra: Vec<QVec> = (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.inequalities[i].clone())
                .collect();
            let mut eqs = self.equations.clone();
            eqs.extend(extra);
            if let Ok(f) = Cone::from_hrep(self.rank, &eqs, &self.inequalities) {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        // tight inequalities of `other` on all of self
        let tight: Vec<QVec> = other
            .inequalities
            .iter()
            .filter(|a| self.rays.iter().all(|r| dot_qi(a, r).is_zero()))
            .cloned()
            .collect();
        let mut eqs = other.equations.clone();
        eqs.extend(tight);
        match Cone::from_hrep(self.rank, &eqs, &other.inequalities) {
            Ok(f) => f == *self,
            Err(_) => false,
        }
    }

    /// Simplicial of full rank with |det| = 1, or lower-dimensional with
    /// generators extending to a lattice basis.
    pub fn is_smooth(&self) -> bool {
        let k = self.rays.len();
        if k == 0 {
            return true;
        }
        if self.dim() != k {
            return false;
        }
        linalg::minor_gcd(&self.rays, self.rank) == Int::one()
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.rays.len()
    }

    pub fn as_polyhedron(&self) -> Polyhedron {
        Polyhedron::from_generators(self.rank, &[vec![Rat::zero(); self.rank]], &self.rays)
            .expect("cone as polyhedron")
    }
}

/// One linear constraint `<normal, x> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: QVec,
    pub offset: Rat,
}

/// A pointed rational polyhedron, or the distinguished empty value.
#[derive(Clone, PartialEq, Eq)]
pub struct Polyhedron {
    pub rank: usize,
    pub empty: bool,
    pub vertices: Vec<QVec>,
    pub rays: Vec<IVec>,
    pub facets: Vec<Facet>,
    /// affine equations  <normal, x> = offset
    pub affine_equations: Vec<Facet>,
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "Polyhedron(empty)");
        }
        write!(f, "Polyhedron(v={:?}, r={:?})", self.vertices, self.rays)
    }
}

impl Polyhedron {
    pub fn empty(rank: usize) -> Polyhedron {
        Polyhedron {
            rank,
            empty: true,
            vertices: vec![],
            rays: vec![],
            facets: vec![],
            affine_equations: vec![],
        }
    }

    /// conv(vertices) + cone(rays); canonicalizes both representations.
    pub fn from_generators(rank: usize, verts: &[QVec], rays: &[IVec]) -> Result<Polyhedron> {
        if verts.is_empty() {
            return Ok(Polyhedron::empty(rank));
        }
        for v in verts {
            if v.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: v.len() });
            }
        }
        for r in rays {
            if r.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: r.len() });
            }
        }
        // homogenize: cone over {(1,v)} u {(0,r)} in rank+1
        let mut gens: Vec<QVec> = Vec::new();
        for v in verts {
            let mut g = vec![Rat::one()];
            g.extend(v.iter().cloned());
            gens.push(g);
        }
        for r in rays {
            let mut g = vec![Rat::zero()];
            g.extend(to_qvec(r));
            gens.push(g);
        }
        let dual = dd_cone(rank + 1, &[], &gens.clone());
        // rows (c0, c): c0*x0 + <c,x> >= 0  <=>  <c,x> >= -c0
        let e0_axis = |row: &QVec| row[1..].iter().all(|x| x.is_zero());
        let hom_eqs: Vec<QVec> = dual.lineality.clone();
        let mut hom_ineqs: Vec<QVec> = dual.rays.clone();
        hom_ineqs.retain(|r| !e0_axis(r));
        // primal DD to canonicalize generators
        let mut sys_ineqs = hom_ineqs.clone();
        let mut x0 = vec![Rat::zero(); rank + 1];
        x0[0] = Rat::one();
        sys_ineqs.push(x0);
        let primal = dd_cone(rank + 1, &hom_eqs, &sys_ineqs);
        if !primal.lineality.is_empty() {
            return Err(Error::UnboundedWithoutRays);
        }
        Self::assemble(rank, primal.rays, hom_eqs, hom_ineqs)
    }

    /// Build from constraints; errors with `unbounded-without-rays` if the
    /// constrained set contains a line.
    pub fn from_constraints(rank: usize, facets: &[Facet], eqs: &[Facet]) -> Result<Polyhedron> {
        let hom = |f: &Facet| {
            let mut row = vec![-f.offset.clone()];
            row.extend(f.normal.iter().cloned());
            row
        };
        let hom_eqs: Vec<QVec> = eqs.iter().map(hom).collect();
        let mut hom_ineqs: Vec<QVec> = facets.iter().map(hom).collect();
        let mut x0 = vec![Rat::zero(); rank + 1];
        x0[0] = Rat::one();
        hom_ineqs.push(x0);
        let primal = dd_cone(rank + 1, &hom_eqs, &hom_ineqs);
        if !primal.lineality.is_empty() {
            return Err(Error::UnboundedWithoutRays);
        }
        let has_vertex = primal.rays.iter().any(|g| g[0].is_positive());
        if !has_vertex {
            return Ok(Polyhedron::empty(rank));
        }
        // canonical H-rep from the canonical generators
        let dual = dd_cone(rank + 1, &[], &primal.rays.clone());
        let e0_axis = |row: &QVec| row[1..].iter().all(|x| x.is_zero());
        let mut ineqs = dual.rays.clone();
        ineqs.retain(|r| !e0_axis(r));
        Self::assemble(rank, primal.rays, dual.lineality, ineqs)
    }

    fn assemble(
        rank: usize,
        hom_gens: Vec<QVec>,
        hom_eqs: Vec<QVec>,
        hom_ineqs: Vec<QVec>,
    ) -> Result<Polyhedron> {
        let mut vertices: Vec<QVec> = Vec::new();
        let mut rays: Vec<IVec> = Vec::new();
        for g in &hom_gens {
            if g[0].is_positive() {
                let inv = g[0].recip();
                vertices.push(g[1..].iter().map(|x| x * &inv).collect());
            } else if g[0].is_zero() {
                rays.push(primitive(&g[1..]));
            } else {
                return Err(Error::UnboundedWithoutRays);
            }
        }
        if vertices.is_empty() {
            return Ok(Polyhedron::empty(rank));
        }
        vertices.sort();
        vertices.dedup();
        rays.sort();
        rays.dedup();
        let to_facet = |row: &QVec| Facet { normal: row[1..].to_vec(), offset: -row[0].clone() };
        let mut facets: Vec<Facet> = hom_ineqs.iter().map(to_facet).collect();
        facets.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
        facets.dedup();
        let mut affine_equations: Vec<Facet> = hom_eqs.iter().map(to_facet).collect();
        affine_equations.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
        Ok(Polyhedron { rank, empty: false, vertices, rays, facets, affine_equations })
    }

    pub fn from_vertices(rank: usize, verts: &[QVec]) -> Result<Polyhedron> {
        Polyhedron::from_generators(rank, verts, &[])
    }

    pub fn point(v: &[Rat]) -> Polyhedron {
        Polyhedron::from_vertices(v.len(), &[v.to_vec()]).expect("point")
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        !self.empty
            && self.facets.iter().all(|f| dot(&f.normal, x) >= f.offset)
            && self.affine_equations.iter().all(|f| dot(&f.normal, x) == f.offset)
    }

    pub fn contains(&self, other: &Polyhedron) -> bool {
        if other.empty {
            return true;
        }
        if self.empty {
            return false;
        }
        other.vertices.iter().all(|v| self.contains_point(v))
            && other.rays.iter().all(|r| {
                self.facets.iter().all(|f| !dot_qi(&f.normal, r).is_negative())
                    && self.affine_equations.iter().all(|f| dot_qi(&f.normal, r).is_zero())
            })
    }

    pub fn set_eq(&self, other: &Polyhedron) -> bool {
        self.contains(other) && other.contains(self)
    }

    pub fn dim(&self) -> isize {
        if self.empty {
            return -1;
        }
        let v0 = &self.vertices[0];
        let mut rows: Vec<QVec> = self.vertices[1..].iter().map(|v| sub(v, v0)).collect();
        rows.extend(self.rays.iter().map(|r| to_qvec(r)));
        rank(&rows) as isize
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// The tail cone: recession directions. Errors on the empty polyhedron.
    pub fn tail_cone(&self) -> Result<Cone> {
        if self.empty {
            return Err(Error::EmptyPolyhedron);
        }
        Cone::from_rays(self.rank, &self.rays)
    }

    pub fn translate(&self, t: &[Rat]) -> Polyhedron {
        if self.empty {
            return self.clone();
        }
        let verts: Vec<QVec> = self.vertices.iter().map(|v| linalg::add(v, t)).collect();
        Polyhedron::from_generators(self.rank, &verts, &self.rays).expect("translate")
    }

    pub fn scale(&self, c: &Rat) -> Polyhedron {
        if self.empty {
            return self.clone();
        }
        assert!(c.is_positive());
        let verts: Vec<QVec> = self.vertices.iter().map(|v| linalg::scale(v, c)).collect();
        Polyhedron::from_generators(self.rank, &verts, &self.rays).expect("scale")
    }

    /// Image under a linear map given by rows (output coord i = <row_i, x>).
    pub fn linear_image(&self, rows: &[QVec]) -> Result<Polyhedron> {
        if self.empty {
            return Ok(Polyhedron::empty(rows.len()));
        }
        let verts: Vec<QVec> = self.vertices.iter().map(|v| linalg::mat_vec(rows, v)).collect();
        let rays: Vec<IVec> = self
            .rays
            .iter()
            .map(|r| primitive(&linalg::mat_vec(rows, &to_qvec(r))))
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        Polyhedron::from_generators(rows.len(), &verts, &rays)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.empty || other.empty {
            return Ok(Polyhedron::empty(self.rank));
        }
        let mut facets = self.facets.clone();
        facets.extend(other.facets.clone());
        let mut eqs = self.affine_equations.clone();
        eqs.extend(other.affine_equations.clone());
        Polyhedron::from_constraints(self.rank, &facets, &eqs)
    }

    /// Is `other` a face of `self`?
    pub fn is_face_of(&self, other: &Polyhedron) -> bool {
        if self.empty {
            return true;
        }
        if !other.contains(self) {
            return false;
        }
        let tight: Vec<Facet> = other
            .facets
            .iter()
            .filter(|f| {
                self.vertices.iter().all(|v| dot(&f.normal, v) == f.offset)
                    && self.rays.iter().all(|r| dot_qi(&f.normal, r).is_zero())
            })
            .cloned()
            .collect();
        let mut eqs = other.affine_equations.clone();
        eqs.extend(tight);
        match Polyhedron::from_constraints(self.rank, &other.facets, &eqs) {
            Ok(f) => f.set_eq(self),
            Err(_) => false,
        }
    }

    /// Exact Euclidean volume of a bounded polyhedron; 0 if lower-dimensional.
    pub fn volume(&self) -> Result<Rat> {
        if self.empty {
            return Ok(Rat::zero());
        }
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let d = self.rank;
        if self.dim() < d as isize {
            return Ok(Rat::zero());
        }
        let simplices = self.triangulate()?;
        let mut vol = Rat::zero();
        let mut dfact = Rat::one();
        for k in 1..=d {
            dfact *= Rat::from_integer(Int::from(k as i64));
        }
        for s in simplices {
            let v0 = &s[0];
            let mat: Vec<QVec> = s[1..].iter().map(|v| sub(v, v0)).collect();
            vol += linalg::det(&mat).abs();
        }
        Ok(vol / dfact)
    }

    /// Triangulation into full-dimensional simplices given by vertex lists.
    /// Apex rule: lexicographically smallest vertex, for deterministic output.
    pub fn triangulate(&self) -> Result<Vec<Vec<QVec>>> {
        if self.empty || !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        Ok(triangulate_rec(self.rank, &self.vertices))
    }

    /// Integral points of a bounded polyhedron.
    pub fn lattice_points(&self) -> Result<Vec<IVec>> {
        if self.empty {
            return Ok(vec![]);
        }
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let d = self.rank;
        let mut lo = vec![Int::zero(); d];
        let mut hi = vec![Int::zero(); d];
        for i in 0..d {
            let min = self.vertices.iter().map(|v| v[i].clone()).min().unwrap();
            let max = self.vertices.iter().map(|v| v[i].clone()).max().unwrap();
            lo[i] = min.ceil().to_integer();
            hi[i] = max.floor().to_integer();
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            let q: QVec = to_qvec(&cur);
            if self.contains_point(&q) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == d {
                    break 'outer;
                }
                cur[i] += 1;
                if cur[i] <= hi[i] {
                    break;
                }
                cur[i] = lo[i].clone();
                i += 1;
            }
            if d == 0 {
                break;
            }
        }
        out.sort();
        Ok(out)
    }
}

fn triangulate_rec(ambient: usize, verts: &[QVec]) -> Vec<Vec<QVec>> {
    // affine dimension
    let v0 = &verts[0];
    let rows: Vec<QVec> = verts[1..].iter().map(|v| sub(v, v0)).collect();
    let adim = rank(&rows);
    if verts.len() == adim + 1 {
        return vec![verts.to_vec()];
    }
    let apex = verts.iter().min().unwrap().clone();
    // facets of conv(verts)
    let poly = Polyhedron::from_vertices(ambient, verts).expect("triangulate hull");
    let mut out = Vec::new();
    for f in &poly.facets {
        if dot(&f.normal, &apex) == f.offset {
            continue;
        }
        let fv: Vec<QVec> = poly
            .vertices
            .iter()
            .filter(|v| dot(&f.normal, v) == f.offset)
            .cloned()
            .collect();
        for sub_simplex in triangulate_rec(ambient, &fv) {
            let mut s = vec![apex.clone()];
            s.extend(sub_simplex);
            out.push(s);
        }
    }
    out
}

/// Exact Minkowski sum. The empty polyhedron is absorbing.
pub fn minkowski_sum(a: &Polyhedron, b: &Polyhedron) -> Result<Polyhedron> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch { expected: a.rank, got: b.rank });
    }
    if a.empty || b.empty {
        return Ok(Polyhedron::empty(a.rank));
    }
    let mut verts = Vec::new();
    for va in &a.vertices {
        for vb in &b.vertices {
            verts.push(linalg::add(va, vb));
        }
    }
    let mut rays = a.rays.clone();
    rays.extend(b.rays.clone());
    Polyhedron::from_generators(a.rank, &verts, &rays)
}

/// Fourier-Motzkin elimination of the coordinates not in `keep`, on the H-rep.
/// Returns the projection with coordinates reordered as listed in `keep`.
pub fn fourier_motzkin_project(p: &Polyhedron, keep: &[usize]) -> Result<Polyhedron> {
    if p.empty {
        return Ok(Polyhedron::empty(keep.len()));
    }
    // rows: (normal, offset) meaning <normal,x> >= offset; equations tracked separately
    let mut ineqs: Vec<(QVec, Rat)> =
        p.facets.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
    let mut eqs: Vec<(QVec, Rat)> =
        p.affine_equations.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
    let eliminate: Vec<usize> = (0..p.rank).filter(|i| !keep.contains(i)).collect();
    for &j in &eliminate {
        // prefer Gaussian elimination via an equation
        if let Some(k) = eqs.iter().position(|(n, _)| !n[j].is_zero()) {
            let (en, eo) = eqs.remove(k);
            let pivot = en[j].clone();
            let reduce = |(n, o): &mut (QVec, Rat)| {
                if !n[j].is_zero() {
                    let f = &n[j] / &pivot;
                    *n = sub(n, &linalg::scale(&en, &f));
                    *o = &*o - &(&eo * &f);
                }
            };
            ineqs.iter_mut().for_each(reduce);
            eqs.iter_mut().for_each(reduce);
            continue;
        }
        let mut kept: Vec<(QVec, Rat)> = Vec::new();
        let mut plus: Vec<(QVec, Rat)> = Vec::new();
        let mut minus: Vec<(QVec, Rat)> = Vec::new();
        for row in ineqs.drain(..) {
            if row.0[j].is_zero() {
                kept.push(row);
            } else if row.0[j].is_positive() {
                plus.push(row);
            } else {
                minus.push(row);
            }
        }
        for (pn, po) in &plus {
            for (mn, mo) in &minus {
                // pn[j] > 0, mn[j] < 0: combine to kill coordinate j
                let cp = -mn[j].clone();
                let cm = pn[j].clone();
                let n = linalg::add(&linalg::scale(pn, &cp), &linalg::scale(mn, &cm));
                let o = &(po * &cp) + &(mo * &cm);
                if is_zero_vec(&n) {
                    if o.is_positive() {
                        return Ok(Polyhedron::empty(keep.len()));
                    }
                    continue;
                }
                kept.push((n, o));
            }
        }
        // cheap dedup between rounds
        for row in kept.iter_mut() {
            let mut joint = row.0.clone();
            joint.push(row.1.clone());
            let prim = to_qvec(&primitive(&joint));
            row.1 = prim[p.rank].clone();
            row.0 = prim[..p.rank].to_vec();
        }
        kept.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        kept.dedup();
        ineqs = kept;
    }
    let select = |n: &QVec| -> QVec { keep.iter().map(|&i| n[i].clone()).collect() };
    let facets: Vec<Facet> =
        ineqs.iter().map(|(n, o)| Facet { normal: select(n), offset: o.clone() }).collect();
    let equations: Vec<Facet> =
        eqs.iter().map(|(n, o)| Facet { normal: select(n), offset: o.clone() }).collect();
    Polyhedron::from_constraints(keep.len(), &facets, &equations)
}

/// Convenience: cone hull of a set of rational points and rays, as a `Cone`.
pub fn cone_hull(rank: usize, gens: &[QVec]) -> Result<Cone> {
    let prim: Vec<IVec> = gens.iter().filter(|g| !is_zero_vec(g)).map(|g| primitive(g)).collect();
    Cone::from_rays(rank, &prim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, qvec};
    use crate::rat::{rat, ratio};

    #[test]
    fn standard_simplex_hrep() {
        let p = Polyhedron::from_vertices(2, &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
        assert_eq!(p.facets.len(), 3);
        assert!(p.contains_point(&[ratio(1, 4), ratio(1, 4)]));
        assert!(!p.contains_point(&[rat(1), rat(1)]));
    }

    #[test]
    fn halfline_from_hrep() {
        let p = Polyhedron::from_constraints(
            1,
            &[Facet { normal: qvec(&[1]), offset: rat(0) }],
            &[],
        )
        .unwrap();
        assert_eq!(p.vertices, vec![qvec(&[0])]);
        assert_eq!(p.rays, vec![ivec(&[1])]);
    }

    #[test]
    fn quadrilateral_extremality() {
        // vertices {(0,0),(1,0),(1,1),(0,n+1)} for n=2: all four extremal, 4 facets
        let verts = [qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[0, 3])];
        let p = Polyhedron::from_vertices(2, &verts).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.facets.len(), 4);
        // brute-force extremality oracle: no vertex is in the hull of the others
        for i in 0..4 {
            let others: Vec<QVec> = (0..4).filter(|&j| j != i).map(|j| verts[j].clone()).collect();
            let hull = Polyhedron::from_vertices(2, &others).unwrap();
            assert!(!hull.contains_point(&verts[i]));
        }
    }

    #[test]
    fn minkowski_examples() {
        // [0, inf) + empty = empty
        let ray = Polyhedron::from_generators(1, &[qvec(&[0])], &[ivec(&[1])]).unwrap();
        let e = Polyhedron::empty(1);
        assert!(minkowski_sum(&ray, &e).unwrap().empty);
        // [-1/n, 0] + [0, inf) = [-1/n, inf), here n = 4
        let seg = Polyhedron::from_vertices(1, &[vec![ratio(-1, 4)], vec![rat(0)]]).unwrap();
        let sum = minkowski_sum(&seg, &ray).unwrap();
        assert_eq!(sum.vertices, vec![vec![ratio(-1, 4)]]);
        assert_eq!(sum.rays, vec![ivec(&[1])]);
        // segment + segment = unit square
        let sx = Polyhedron::from_vertices(2, &[qvec(&[0, 0]), qvec(&[1, 0])]).unwrap();
        let sy = Polyhedron::from_vertices(2, &[qvec(&[0, 0]), qvec(&[0, 1])]).unwrap();
        let sq = minkowski_sum(&sx, &sy).unwrap();
        assert_eq!(sq.vertices.len(), 4);
        assert_eq!(sq.volume().unwrap(), rat(1));
    }

    #[test]
    fn tail_cone_examples() {
        let seg = Polyhedron::from_vertices(1, &[vec![ratio(-1, 3)], vec![rat(0)]]).unwrap();
        assert!(seg.tail_cone().unwrap().rays.is_empty());
        let ray = Polyhedron::from_generators(1, &[qvec(&[0])], &[ivec(&[1])]).unwrap();
        assert_eq!(ray.tail_cone().unwrap().rays, vec![ivec(&[1])]);
        // translation invariance: v + cone has tail cone = cone
        let c = Cone::from_rays(2, &[ivec(&[1, 0]), ivec(&[1, 2])]).unwrap();
        let shifted = c.as_polyhedron().translate(&qvec(&[5, -7]));
        assert_eq!(shifted.tail_cone().unwrap(), c);
        assert!(Polyhedron::empty(1).tail_cone().is_err());
    }

    #[test]
    fn smooth_cone_examples() {
        assert!(Cone::from_rays(2, &[ivec(&[1, 0]), ivec(&[0, 1])]).unwrap().is_smooth());
        assert!(!Cone::from_rays(2, &[ivec(&[1, 1]), ivec(&[1, -1])]).unwrap().is_smooth());
        let quadric_flag =
            Cone::from_rays(3, &[ivec(&[1, 0, 0]), ivec(&[1, 0, -1]), ivec(&[-2, 1, 1])]).unwrap();
        assert!(quadric_flag.is_smooth());
        // face of smooth data: lower-dimensional but extends to a basis
        assert!(Cone::from_rays(3, &[ivec(&[1, 0, -1])]).unwrap().is_smooth());
        assert!(!Cone::from_rays(3, &[ivec(&[1, 1, 0]), ivec(&[1, -1, 0])]).unwrap().is_smooth());
    }

    #[test]
    fn volume_examples() {
        let t = Polyhedron::from_vertices(
            3,
            &[qvec(&[0, 0, 0]), qvec(&[3, 0, 0]), qvec(&[0, 3, 0]), qvec(&[0, 0, 6])],
        )
        .unwrap();
        assert_eq!(t.volume().unwrap(), rat(9));
        let sq = Polyhedron::from_vertices(
            2,
            &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[0, 1])],
        )
        .unwrap();
        assert_eq!(sq.volume().unwrap(), rat(1));
        // shoelace oracle: conv{(0,0),(1,0),(1,1),(0,n+1)} has area (n+2)/2, n=2
        let q = Polyhedron::from_vertices(
            2,
            &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[0, 3])],
        )
        .unwrap();
        assert_eq!(q.volume().unwrap(), rat(2));
        let ray = Polyhedron::from_generators(1, &[qvec(&[0])], &[ivec(&[1])]).unwrap();
        assert!(matches!(ray.volume(), Err(Error::Unbounded)));
        // lower-dimensional: zero
        let seg = Polyhedron::from_vertices(2, &[qvec(&[0, 0]), qvec(&[1, 0])]).unwrap();
        assert_eq!(seg.volume().unwrap(), rat(0));
    }

    #[test]
    fn projection_examples() {
        let unit_sq = Polyhedron::from_vertices(
            2,
            &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[0, 1])],
        )
        .unwrap();
        let px = fourier_motzkin_project(&unit_sq, &[0]).unwrap();
        assert_eq!(px.vertices, vec![vec![rat(0)], vec![rat(1)]]);
        let tri = Polyhedron::from_vertices(2, &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
        let py = fourier_motzkin_project(&tri, &[1]).unwrap();
        assert_eq!(py.vertices, vec![vec![rat(0)], vec![rat(1)]]);
        // rank-3 cone {a,b,c >= 0, a = b + c} projected to (b,c): nonnegative quadrant
        let cone = Polyhedron::from_constraints(
            3,
            &[
                Facet { normal: qvec(&[1, 0, 0]), offset: rat(0) },
                Facet { normal: qvec(&[0, 1, 0]), offset: rat(0) },
                Facet { normal: qvec(&[0, 0, 1]), offset: rat(0) },
            ],
            &[Facet { normal: qvec(&[1, -1, -1]), offset: rat(0) }],
        )
        .unwrap();
        let pbc = fourier_motzkin_project(&cone, &[1, 2]).unwrap();
        let quadrant =
            Polyhedron::from_generators(2, &[qvec(&[0, 0])], &[ivec(&[1, 0]), ivec(&[0, 1])]).unwrap();
        assert!(pbc.set_eq(&quadrant));
    }

    #[test]
    fn empty_and_roundtrip() {
        // infeasible constraints yield the empty polyhedron
        let p = Polyhedron::from_constraints(
            1,
            &[
                Facet { normal: qvec(&[1]), offset: rat(1) },
                Facet { normal: qvec(&[-1]), offset: rat(0) },
            ],
            &[],
        )
        .unwrap();
        assert!(p.empty);
        // H -> V -> H round trip is set equality
        let q = Polyhedron::from_vertices(
            2,
            &[qvec(&[0, 0]), qvec(&[2, 0]), qvec(&[0, 3]), qvec(&[1, 1])],
        )
        .unwrap();
        let back = Polyhedron::from_constraints(2, &q.facets, &q.affine_equations).unwrap();
        assert!(back.set_eq(&q));
        assert_eq!(back.vertices.len(), 3); // (1,1) was interior
    }
}
