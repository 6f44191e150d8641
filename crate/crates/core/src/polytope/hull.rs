//! Exact facet enumeration for integer point sets.
//!
//! Every affinely independent `n`-subset spans a candidate hyperplane; it is
//! a facet exactly when all points lie on one side. Quadratic-ish in the
//! number of points, which is fine for the small polytopes handled here.

use super::{Facet, LatticePolytope, PolytopeError};
use num_integer::Integer;
use num_rational::BigRational;
use std::collections::BTreeSet;

pub fn convex_hull(points: &[Vec<i64>]) -> Result<LatticePolytope, PolytopeError> {
    let pts: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let dim = pts.first().map(Vec::len).ok_or(PolytopeError::NotFullDimensional)?;
    if dim == 0 || pts.iter().any(|p| p.len() != dim) {
        return Err(PolytopeError::DimensionMismatch);
    }
    if affine_rank(&pts) != dim {
        return Err(PolytopeError::NotFullDimensional);
    }

    let mut facets: BTreeSet<(Vec<i64>, i64)> = BTreeSet::new();
    for combo in Combinations::new(pts.len(), dim) {
        let base = &pts[combo[0]];
        let edges: Vec<Vec<i128>> = combo[1..]
            .iter()
            .map(|&i| pts[i].iter().zip(base).map(|(a, b)| (a - b) as i128).collect())
            .collect();
        let Some(normal) = primitive_normal(&edges, dim) else {
            continue;
        };
        let offset = dot(&normal, base);
        if facets.contains(&(normal.clone(), offset)) {
            continue;
        }
        let mut above = false;
        let mut below = false;
        for p in &pts {
            let v = dot(&normal, p);
            above |= v > offset;
            below |= v < offset;
            if above && below {
                break;
            }
        }
        match (above, below) {
            (false, _) => {
                facets.insert((normal, offset));
            }
            (true, false) => {
                facets.insert((normal.iter().map(|a| -a).collect(), -offset));
            }
            _ => {}
        }
    }

    let facets: Vec<Facet> = facets
        .into_iter()
        .map(|(normal, offset)| Facet { normal, offset: BigRational::from_integer(offset.into()) })
        .collect();
    let vertices: Vec<Vec<i64>> = pts
        .into_iter()
        .filter(|p| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|f| BigRational::from_integer(dot(&f.normal, p).into()) == f.offset)
                .map(|f| f.normal.clone())
                .collect();
            int_rank(&tight) == dim
        })
        .collect();
    Ok(LatticePolytope { dim, vertices, facets })
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Generalized cross product of `n - 1` vectors in `Z^n`, made primitive.
fn primitive_normal(edges: &[Vec<i128>], dim: usize) -> Option<Vec<i64>> {
    let mut normal = Vec::with_capacity(dim);
    for skip in 0..dim {
        let minor: Vec<Vec<i128>> = edges
            .iter()
            .map(|e| e.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect())
            .collect();
        let d = det_i128(minor);
        normal.push(if skip % 2 == 0 { d } else { -d });
    }
    let g = normal.iter().fold(0i128, |acc, v| acc.gcd(v));
    if g == 0 {
        return None;
    }
    Some(normal.into_iter().map(|v| (v / g) as i64).collect())
}

/// Bareiss determinant; exact for integer input.
fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(sel) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, sel);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn int_rank(rows: &[Vec<i64>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let q: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    crate::linalg::rank(&q, width)
}

fn affine_rank(pts: &[Vec<i64>]) -> usize {
    let base = &pts[0];
    let diffs: Vec<Vec<i64>> =
        pts[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    int_rank(&diffs)
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
