//! Incremental double description for rational cones, with explicit lineality
//! handling so that dual cones of low-dimensional cones come out right.

use num::{One, Signed, Zero};

use crate::linalg::{dot, is_zero_vec, kernel_basis, neg, primitive_signed, rank, scale, sub, QVec};
use crate::rat::Rat;

/// Extreme rays and lineality space of `{x : E x = 0, A x >= 0}`.
#[derive(Debug, Clone)]
pub struct DdOutput {
    pub lineality: Vec<QVec>,
    pub rays: Vec<QVec>,
}

pub fn dd_cone(n: usize, equations: &[QVec], inequalities: &[QVec]) -> DdOutput {
    let mut lin: Vec<QVec> = if equations.is_empty() {
        (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                v
            })
            .collect()
    } else {
        kernel_basis(equations, n)
    };
    let mut rays: Vec<QVec> = Vec::new();
    // processed inequality rows, for tightness bookkeeping
    let mut done: Vec<QVec> = Vec::new();
    let lin_dim_of = |lin: &Vec<QVec>| lin.len();

    for a in inequalities {
        if is_zero_vec(a) {
            continue;
        }
        if let Some(i0) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            // cut the lineality: one basis vector becomes a ray
            let mut l0 = lin.remove(i0);
            if dot(a, &l0).is_negative() {
                l0 = neg(&l0);
            }
            let d0 = dot(a, &l0);
            for l in lin.iter_mut() {
                let f = &dot(a, l) / &d0;
                *l = sub(l, &scale(&l0, &f));
            }
            for r in rays.iter_mut() {
                let f = &dot(a, r) / &d0;
                *r = sub(r, &scale(&l0, &f));
            }
            rays.push(l0);
        } else {
            let evals: Vec<Rat> = rays.iter().map(|r| dot(a, r)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_positive()).collect();
            let zero: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_zero()).collect();
            let negs: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_negative()).collect();
            if negs.is_empty() {
                done.push(a.clone());
                continue;
            }
            let mut new_rays: Vec<QVec> = Vec::new();
            for &i in pos.iter().chain(&zero) {
                new_rays.push(rays[i].clone());
            }
            for &ip in &pos {
                for &im in &negs {
                    if adjacent(&rays, &done, equations, &lin, ip, im, lin_dim_of(&lin)) {
                        // <a, combo> = 0 by construction
                        let combo = sub(
                            &scale(&rays[im], &evals[ip]),
                            &scale(&rays[ip], &evals[im]),
                        );
                        if !is_zero_vec(&combo) {
                            new_rays.push(combo);
                        }
                    }
                }
            }
            rays = new_rays;
        }
        done.push(a.clone());
    }
    // canonicalize: primitive integer representatives, deduplicated, sorted
    let mut canon: Vec<QVec> = rays
        .iter()
        .filter(|r| !is_zero_vec(r))
        .map(|r| {
            crate::linalg::to_qvec(&crate::linalg::primitive(r))
        })
        .collect();
    canon.sort();
    canon.dedup();
    let mut lin_canon: Vec<QVec> = lin.iter().map(|l| crate::linalg::to_qvec(&primitive_signed(l))).collect();
    lin_canon.sort();
    DdOutput { lineality: lin_canon, rays: canon }
}

/// Rays i and j are adjacent iff the minimal face containing them both has
/// dimension lineality + 2. Rank test: unconditionally correct.
fn adjacent(
    rays: &[QVec],
    done: &[QVec],
    equations: &[QVec],
    lin: &[QVec],
    i: usize,
    j: usize,
    lin_dim: usize,
) -> bool {
    let tight: Vec<QVec> = done
        .iter()
        .filter(|a| dot(a, &rays[i]).is_zero() && dot(a, &rays[j]).is_zero())
        .cloned()
        .collect();
    let n = rays[i].len();
    let mut rows: Vec<QVec> = equations.to_vec();
    rows.extend(tight);
    let nullity = n - rank(&rows);
    let _ = lin;
    nullity == lin_dim + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qvec;

    #[test]
    fn quadrant() {
        let out = dd_cone(2, &[], &[qvec(&[1, 0]), qvec(&[0, 1])]);
        assert!(out.lineality.is_empty());
        assert_eq!(out.rays, vec![qvec(&[0, 1]), qvec(&[1, 0])]);
    }

    #[test]
    fn halfplane_keeps_lineality() {
        let out = dd_cone(2, &[], &[qvec(&[1, 0])]);
        assert_eq!(out.lineality, vec![qvec(&[0, 1])]);
        assert_eq!(out.rays, vec![qvec(&[1, 0])]);
    }

    #[test]
    fn simplex_cone_3d() {
        let out = dd_cone(
            3,
            &[],
            &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[0, 0, 1]), qvec(&[1, 1, 1])],
        );
        assert_eq!(out.rays.len(), 3);
        assert!(out.lineality.is_empty());
    }

    #[test]
    fn equation_slice() {
        // x + y + z = 0, x,y >= 0
        let out = dd_cone(3, &[qvec(&[1, 1, 1])], &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0])]);
        assert!(out.lineality.is_empty());
        assert_eq!(out.rays.len(), 2);
        for r in &out.rays {
            assert!(dot(&qvec(&[1, 1, 1]), r).is_zero());
        }
    }

    #[test]
    fn infeasible_strict() {
        // x >= 0 and -x >= 0 and then x >= 1-homogeneous style: cone {0}
        let out = dd_cone(1, &[], &[qvec(&[1]), qvec(&[-1])]);
        assert!(out.rays.is_empty() || out.rays == vec![qvec(&[0])]);
    }
}
