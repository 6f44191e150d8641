//! Exact Euclidean volume by coning a boundary triangulation from an apex.

use super::{PolytopeError, RationalPolytope};
use crate::linalg::{det, rank};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Which triangulation to build. Both give the same volume.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triangulation {
    /// Cone from the vertex centroid; faces pulled from their first vertex.
    CentroidFirstVertex,
    /// Cone from the last vertex; faces pulled from their last vertex.
    LastVertex,
}

pub fn volume(p: &RationalPolytope) -> Result<BigRational, PolytopeError> {
    volume_with(p, Triangulation::CentroidFirstVertex)
}

pub fn volume_with(p: &RationalPolytope, mode: Triangulation) -> Result<BigRational, PolytopeError> {
    let n = p.dim;
    let verts = &p.vertices;
    if verts.len() <= n || affine_dim(verts, &(0..verts.len()).collect::<Vec<_>>()) != n {
        return Err(PolytopeError::NotFullDimensional);
    }
    let incidence: Vec<Vec<usize>> = p
        .facets
        .iter()
        .map(|f| (0..verts.len()).filter(|&i| f.value(&verts[i]) == f.offset).collect())
        .collect();

    let apex: Vec<BigRational> = match mode {
        Triangulation::CentroidFirstVertex => {
            let k = BigRational::from_integer((verts.len() as i64).into());
            (0..n).map(|i| verts.iter().map(|v| v[i].clone()).sum::<BigRational>() / &k).collect()
        }
        Triangulation::LastVertex => verts[verts.len() - 1].clone(),
    };

    let mut total = BigRational::zero();
    for facet in &incidence {
        for simplex in triangulate_face(verts, &incidence, facet, n - 1, mode) {
            let rows: Vec<Vec<BigRational>> =
                simplex.iter().map(|&i| verts[i].iter().zip(&apex).map(|(a, b)| a - b).collect()).collect();
            total += det(&rows).abs();
        }
    }
    let fact: i64 = (1..=n as i64).product();
    Ok(total / BigRational::from_integer(fact.into()))
}

fn affine_dim(verts: &[Vec<BigRational>], idx: &[usize]) -> usize {
    if idx.is_empty() {
        return 0;
    }
    let base = &verts[idx[0]];
    let rows: Vec<Vec<BigRational>> =
        idx[1..].iter().map(|&i| verts[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    if rows.is_empty() {
        0
    } else {
        rank(&rows, base.len())
    }
}

/// Pulling triangulation of the face spanned by `face` (of dimension `d`).
/// Subfaces are intersections with facets that drop the dimension by one.
fn triangulate_face(
    verts: &[Vec<BigRational>],
    incidence: &[Vec<usize>],
    face: &[usize],
    d: usize,
    mode: Triangulation,
) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![face[0]]];
    }
    let pivot = match mode {
        Triangulation::CentroidFirstVertex => face[0],
        Triangulation::LastVertex => face[face.len() - 1],
    };
    if face.len() == d + 1 {
        return vec![face.to_vec()];
    }
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for inc in incidence {
        let sub: Vec<usize> = face.iter().copied().filter(|i| inc.contains(i)).collect();
        if sub.len() < d || sub.len() == face.len() || sub.contains(&pivot) {
            continue;
        }
        if affine_dim(verts, &sub) == d - 1 {
            subfaces.insert(sub);
        }
    }
    let mut out = Vec::new();
    for sub in subfaces {
        for mut s in triangulate_face(verts, incidence, &sub, d - 1, mode) {
            s.push(pivot);
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{convex_hull, dual_lattice};
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn known_volumes() {
        assert_eq!(volume(&cube().to_rational()).unwrap(), q(8, 1));
        let unit = convex_hull(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(volume(&unit.to_rational()).unwrap(), q(1, 6));
        assert_eq!(volume(&dual_lattice(&p3_simplex()).unwrap()).unwrap(), q(32, 3));
        assert_eq!(volume(&octahedron().to_rational()).unwrap(), q(4, 3));
    }

    #[test]
    fn triangulations_agree() {
        for p in [cube(), octahedron(), p3_simplex(), long_simplex()] {
            let r = p.to_rational();
            assert_eq!(
                volume_with(&r, Triangulation::CentroidFirstVertex).unwrap(),
                volume_with(&r, Triangulation::LastVertex).unwrap()
            );
        }
    }

    #[test]
    fn square_area() {
        let sq = convex_hull(&[vec![0, 0], vec![2, 0], vec![0, 3], vec![2, 3]]).unwrap();
        assert_eq!(volume(&sq.to_rational()).unwrap(), q(6, 1));
    }
}
