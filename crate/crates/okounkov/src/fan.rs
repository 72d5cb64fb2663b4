//! Complete fans, given by their maximal cones.

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{IVec, QVec};
use crate::poly::{Cone, Facet, Polyhedron};
use crate::rat::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub rank: usize,
    pub maximal: Vec<Cone>,
}

impl Fan {
    pub fn new(rank: usize, maximal: Vec<Cone>) -> Fan {
        Fan { rank, maximal }
    }

    /// Primitive generators of all rays of the fan, sorted.
    pub fn rays(&self) -> Vec<IVec> {
        let mut out: Vec<IVec> = Vec::new();
        for c in &self.maximal {
            for r in &c.rays {
                if !out.contains(r) {
                    out.push(r.clone());
                }
            }
        }
        out.sort();
        out
    }

    pub fn all_cones(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = Vec::new();
        for c in &self.maximal {
            for f in c.faces() {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out
    }

    pub fn cone_index(&self, c: &Cone) -> Option<usize> {
        self.maximal.iter().position(|m| m == c)
    }

    /// Pairwise intersections are common faces and the support tiles a box
    /// around the origin exactly.
    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.maximal.iter().enumerate() {
            for b in self.maximal.iter().skip(i + 1) {
                let int = a.intersect(b)?;
                if !int.is_face_of(a) || !int.is_face_of(b) {
                    return Err(Error::Validation(format!(
                        "fan cones {:?} and {:?} do not meet in a common face",
                        a, b
                    )));
                }
            }
        }
        let cells: Vec<Polyhedron> = self.maximal.iter().map(|c| c.as_polyhedron()).collect();
        if !tiles_space(self.rank, &cells, &Rat::from_integer(Int::from(1)))? {
            return Err(Error::NotComplete);
        }
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.validate().is_ok()
    }

    /// Maximal cones sharing a given ray.
    pub fn cones_with_ray(&self, ray: &IVec) -> Vec<usize> {
        self.maximal
            .iter()
            .enumerate()
            .filter(|(_, c)| c.rays.contains(ray))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Exact tiling test: the cells, cut to the box [-r, r]^rank, fill its volume
/// and overlap only in measure zero.
pub fn tiles_space(rank: usize, cells: &[Polyhedron], radius_hint: &Rat) -> Result<bool> {
    let mut radius = radius_hint.clone();
    for c in cells {
        for v in &c.vertices {
            for x in v {
                let a = if x < &Rat::zero() { -x.clone() } else { x.clone() };
                if a > radius {
                    radius = a;
                }
            }
        }
    }
    radius += Rat::from_integer(Int::from(1));
    let mut box_facets = Vec::new();
    for i in 0..rank {
        let mut n = vec![Rat::zero(); rank];
        n[i] = Rat::from_integer(Int::from(1));
        box_facets.push(Facet { normal: n.clone(), offset: -radius.clone() });
        let neg: QVec = n.iter().map(|x| -x).collect();
        box_facets.push(Facet { normal: neg, offset: -radius.clone() });
    }
    let bx = Polyhedron::from_constraints(rank, &box_facets, &[])?;
    let total = bx.volume()?;
    let mut acc = Rat::zero();
    for (i, c) in cells.iter().enumerate() {
        let cut = c.intersect(&bx)?;
        acc += cut.volume()?;
        for d in cells.iter().skip(i + 1) {
            let overlap = c.intersect(d)?;
            if overlap.dim() == rank as isize {
                return Ok(false);
            }
        }
    }
    Ok(acc == total)
}

/// The complete fan of P1: rays +1 and -1.
pub fn p1_fan() -> Fan {
    let plus = Cone::from_rays(1, &[vec![Int::from(1)]]).unwrap();
    let minus = Cone::from_rays(1, &[vec![Int::from(-1)]]).unwrap();
    Fan::new(1, vec![plus, minus])
}

/// Normal fan data of a full-dimensional lattice polytope: for each vertex the
/// cone spanned by the primitive inner normals of the facets through it.
pub fn inner_normal_fan(p: &Polyhedron) -> Result<Fan> {
    if p.empty || !p.is_bounded() || p.dim() != p.rank as isize {
        return Err(Error::Validation("normal fan needs a full-dimensional polytope".into()));
    }
    let mut maximal = Vec::new();
    for v in &p.vertices {
        let tight: Vec<IVec> = p
            .facets
            .iter()
            .filter(|f| crate::linalg::dot(&f.normal, v) == f.offset)
            .map(|f| crate::linalg::primitive(&f.normal))
            .collect();
        maximal.push(Cone::from_rays(p.rank, &tight)?);
    }
    let mut dedup: Vec<Cone> = Vec::new();
    for c in maximal {
        if !dedup.contains(&c) {
            dedup.push(c);
        }
    }
    Ok(Fan::new(p.rank, dedup))
}

/// For a 2D lattice triangle: weights (a, b, c), coprime and positive, of the
/// weighted projective plane its inner normal fan defines.
pub fn triangle_weights(p: &Polyhedron) -> Result<Vec<Int>> {
    if p.vertices.len() != 3 || p.rank != 2 {
        return Err(Error::Validation("weights need a triangle".into()));
    }
    let rays: Vec<IVec> = inner_normal_fan(p)?.rays();
    if rays.len() != 3 {
        return Err(Error::Validation("degenerate triangle".into()));
    }
    // positive relation a0 r0 + a1 r1 + a2 r2 = 0
    let rows: Vec<QVec> = (0..2)
        .map(|i| rays.iter().map(|r| Rat::from_integer(r[i].clone())).collect())
        .collect();
    let ker = crate::linalg::kernel_basis(&rows, 3);
    if ker.len() != 1 {
        return Err(Error::Validation("no unique relation".into()));
    }
    let mut w = crate::linalg::primitive_signed(&ker[0]);
    if w.iter().any(|x| x <= &Int::zero()) {
        return Err(Error::Validation("relation not positive".into()));
    }
    w.sort();
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, qvec};

    #[test]
    fn p1_fan_complete() {
        assert!(p1_fan().validate().is_ok());
    }

    #[test]
    fn quadrant_fan_complete() {
        let mk = |a: &[i64], b: &[i64]| Cone::from_rays(2, &[ivec(a), ivec(b)]).unwrap();
        let fan = Fan::new(
            2,
            vec![mk(&[1, 0], &[0, 1]), mk(&[0, 1], &[-1, 0]), mk(&[-1, 0], &[0, -1]), mk(&[0, -1], &[1, 0])],
        );
        fan.validate().unwrap();
        assert_eq!(fan.rays().len(), 4);
        let missing = Fan::new(2, vec![mk(&[1, 0], &[0, 1]), mk(&[0, 1], &[-1, 0])]);
        assert!(matches!(missing.validate(), Err(Error::NotComplete)));
    }

    #[test]
    fn weights_of_unit_triangle() {
        let t = Polyhedron::from_vertices(2, &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1])]).unwrap();
        assert_eq!(triangle_weights(&t).unwrap(), vec![Int::from(1), Int::from(1), Int::from(1)]);
    }
}
