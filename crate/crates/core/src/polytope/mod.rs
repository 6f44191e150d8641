//! Lattice and rational polytopes and the toric invariants used to screen
//! degeneration candidates: canonicity, reflexivity, anticanonical degree,
//! number of anticanonical sections and Picard rank of the face fan.
//!
//! Facets are stored as `<a, x> <= c` with `a` a primitive integer vector.
//! When the origin is interior every `c` is positive and the dual polytope
//! has the vertices `-a / c`.

mod hull;
mod invariants;
mod volume;

pub use hull::convex_hull;
pub use invariants::{
    anticanonical_degree, anticanonical_sections, invariant_report, is_canonical, is_reflexive, picard_rank,
    InvariantReport,
};
pub use volume::{volume, volume_with, Triangulation};

use crate::laurent::LaurentPoly;
use crate::text::{content_lines, parse_int_token, ParseError};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("points do not span a full-dimensional polytope")]
    NotFullDimensional,
    #[error("points have inconsistent dimensions")]
    DimensionMismatch,
    #[error("origin is not in the interior")]
    OriginNotInterior,
    #[error("dimension {0} is not supported here (at most 3)")]
    DimensionTooLarge(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Supporting half-space `<normal, x> <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: BigRational,
}

impl Facet {
    fn value(&self, x: &[BigRational]) -> BigRational {
        self.normal.iter().zip(x).map(|(&a, v)| BigRational::from_integer(a.into()) * v).sum()
    }

    fn value_int(&self, x: &[i64]) -> BigRational {
        BigRational::from_integer(self.normal.iter().zip(x).map(|(a, b)| a * b).sum::<i64>().into())
    }
}

/// Full-dimensional polytope with integer vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub(crate) dim: usize,
    pub(crate) vertices: Vec<Vec<i64>>,
    pub(crate) facets: Vec<Facet>,
}

/// Full-dimensional polytope with rational vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub(crate) dim: usize,
    pub(crate) vertices: Vec<Vec<BigRational>>,
    pub(crate) facets: Vec<Facet>,
}

impl LatticePolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn to_rational(&self) -> RationalPolytope {
        RationalPolytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|&c| BigRational::from_integer(c.into())).collect())
                .collect(),
            facets: self.facets.clone(),
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.value_int(x) <= f.offset)
    }

    pub fn origin_is_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_positive())
    }

    /// Parses one vertex per line (space-separated integers) and takes the hull.
    pub fn parse(input: &str) -> Result<Self, PolytopeError> {
        let mut pts = Vec::new();
        let mut dim = None;
        for line in content_lines(input) {
            let toks = line.tokens();
            let p = toks.iter().map(|&t| parse_int_token::<i64>(&line, t)).collect::<Result<Vec<_>, _>>()?;
            match dim {
                None => dim = Some(p.len()),
                Some(d) if d != p.len() => {
                    return Err(line.error(1, format!("expected {d} coordinates")).into())
                }
                _ => {}
            }
            pts.push(p);
        }
        convex_hull(&pts)
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl RationalPolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.facets.iter().all(|f| f.value(x) <= f.offset)
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.value_int(x) <= f.offset)
    }

    pub fn origin_is_interior(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_positive())
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(BigRational::is_integer)
    }

    /// Integer-vertex view, when every vertex is integral.
    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        if !self.is_integral() {
            return None;
        }
        Some(LatticePolytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|c| i64::try_from(c.to_integer()).expect("small")).collect())
                .collect(),
            facets: self.facets.clone(),
        })
    }

    /// Vertices as a sorted set, for comparisons.
    pub fn vertex_set(&self) -> Vec<Vec<BigRational>> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }
}

/// `P^dual = { m : <m, x> >= -1 for all x in P }`.
pub fn dual(p: &RationalPolytope) -> Result<RationalPolytope, PolytopeError> {
    if !p.origin_is_interior() {
        return Err(PolytopeError::OriginNotInterior);
    }
    let mut vertices: Vec<Vec<BigRational>> = p
        .facets
        .iter()
        .map(|f| f.normal.iter().map(|&a| -BigRational::from_integer(a.into()) / &f.offset).collect())
        .collect();
    vertices.sort();
    let mut facets: Vec<Facet> = p.vertices.iter().map(|v| dual_facet(v)).collect();
    facets.sort();
    Ok(RationalPolytope { dim: p.dim, vertices, facets })
}

pub fn dual_lattice(p: &LatticePolytope) -> Result<RationalPolytope, PolytopeError> {
    dual(&p.to_rational())
}

/// Facet `<-v, m> <= 1` scaled to a primitive integer normal.
fn dual_facet(v: &[BigRational]) -> Facet {
    let l = v.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lq = BigRational::from_integer(l.clone());
    let w: Vec<num_bigint::BigInt> = v.iter().map(|c| -(c * &lq).to_integer()).collect();
    let g = w.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    let normal = w.iter().map(|c| i64::try_from(c / &g).expect("normal fits in i64")).collect();
    Facet { normal, offset: BigRational::new(l, g) }
}

pub fn newton_polytope(f: &LaurentPoly) -> Result<LatticePolytope, PolytopeError> {
    let pts: Vec<Vec<i64>> = f.support().iter().map(|m| m.exponents().to_vec()).collect();
    convex_hull(&pts)
}

/// True when the Newton polytope of `f` is full-dimensional and has the
/// origin strictly inside.
pub fn origin_in_newton_interior(f: &LaurentPoly) -> bool {
    newton_polytope(f).map(|p| p.origin_is_interior()).unwrap_or(false)
}

fn bounding_box(p: &RationalPolytope) -> Vec<(i64, i64)> {
    (0..p.dim)
        .map(|i| {
            let lo = p.vertices.iter().map(|v| v[i].floor()).min().unwrap();
            let hi = p.vertices.iter().map(|v| v[i].ceil()).max().unwrap();
            (
                i64::try_from(lo.to_integer()).expect("bounded"),
                i64::try_from(hi.to_integer()).expect("bounded"),
            )
        })
        .collect()
}

fn scan_box(p: &RationalPolytope, mut keep: impl FnMut(&[i64]) -> bool) -> Vec<Vec<i64>> {
    let bounds = bounding_box(p);
    let mut out = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        if keep(&x) {
            out.push(x.clone());
        }
        let mut i = p.dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < bounds[i].1 {
                x[i] += 1;
                break;
            }
            x[i] = bounds[i].0;
        }
    }
}

/// All lattice points of the closed polytope, lexicographically.
pub fn lattice_points(p: &RationalPolytope) -> Vec<Vec<i64>> {
    scan_box(p, |x| p.contains_int(x))
}

/// Lattice points strictly inside every facet, lexicographically.
pub fn interior_lattice_points(p: &LatticePolytope) -> Vec<Vec<i64>> {
    interior_lattice_points_rational(&p.to_rational())
}

pub fn interior_lattice_points_rational(p: &RationalPolytope) -> Vec<Vec<i64>> {
    scan_box(p, |x| p.facets.iter().all(|f| f.value_int(x) < f.offset))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn octahedron() -> LatticePolytope {
        convex_hull(&[
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ])
        .unwrap()
    }

    pub fn cube() -> LatticePolytope {
        let mut pts = Vec::new();
        for a in [-1, 1] {
            for b in [-1, 1] {
                for c in [-1, 1] {
                    pts.push(vec![a, b, c]);
                }
            }
        }
        convex_hull(&pts).unwrap()
    }

    pub fn p3_simplex() -> LatticePolytope {
        convex_hull(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]]).unwrap()
    }

    pub fn long_simplex() -> LatticePolytope {
        convex_hull(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-2, -2, -2]]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::catalog;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| q(c, 1)).collect()
    }

    #[test]
    fn octahedron_facets() {
        let p = octahedron();
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.facets().len(), 8);
        for f in p.facets() {
            assert!(f.normal.iter().all(|a| a.abs() == 1));
            assert_eq!(f.offset, q(1, 1));
        }
    }

    #[test]
    fn simplex_has_four_facets() {
        assert_eq!(p3_simplex().facets().len(), 4);
        assert_eq!(p3_simplex().vertices().len(), 4);
    }

    #[test]
    fn interior_points() {
        assert_eq!(interior_lattice_points(&cube()), vec![vec![0, 0, 0]]);
        assert_eq!(interior_lattice_points(&octahedron()), vec![vec![0, 0, 0]]);
        let pts = interior_lattice_points(&long_simplex());
        assert!(pts.contains(&vec![0, 0, 0]));
        assert!(pts.contains(&vec![-1, -1, -1]));
    }

    #[test]
    fn octahedron_dual_is_cube() {
        let d = dual_lattice(&octahedron()).unwrap();
        assert_eq!(d.to_lattice().unwrap().vertices(), cube().vertices());
    }

    #[test]
    fn p3_dual() {
        let d = dual_lattice(&p3_simplex()).unwrap();
        let expected = vec![qv(&[-1, -1, -1]), qv(&[-1, -1, 3]), qv(&[-1, 3, -1]), qv(&[3, -1, -1])];
        assert_eq!(d.vertex_set(), expected);
    }

    #[test]
    fn long_simplex_dual_not_integral() {
        let d = dual_lattice(&long_simplex()).unwrap();
        assert!(!d.is_integral());
        // facet through e1, e2, -(2,2,2): normal (-1,-1,3)... dual vertex has 5/2 entries
        assert!(d.vertices().iter().flatten().any(|c| *c == q(5, 2) || *c == q(-5, 2)));
    }

    #[test]
    fn dual_requires_interior_origin() {
        let p = convex_hull(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(dual_lattice(&p).unwrap_err(), PolytopeError::OriginNotInterior);
    }

    #[test]
    fn bidual_returns_original() {
        for p in [octahedron(), cube(), p3_simplex(), long_simplex()] {
            let dd = dual(&dual_lattice(&p).unwrap()).unwrap();
            assert_eq!(dd.vertex_set(), p.to_rational().vertex_set());
        }
    }

    #[test]
    fn newton_polytopes() {
        let seg = newton_polytope(&LaurentPoly::from_int_terms(1, [([1], 1), ([-1], 1)]).unwrap()).unwrap();
        assert_eq!(seg.vertices(), &[vec![-1], vec![1]]);
        let n18 = newton_polytope(&catalog::f18()).unwrap();
        for (m, _) in catalog::f18().terms() {
            assert!(n18.contains(m.exponents()));
        }
        // adding an interior term leaves the hull alone
        let f = catalog::f18();
        let g = f.add(&LaurentPoly::from_int_terms(3, [([0, 0, 0], 5)]).unwrap()).unwrap();
        assert_eq!(newton_polytope(&g).unwrap(), n18);
        assert!(newton_polytope(&LaurentPoly::from_int_terms(2, [([1, 0], 1)]).unwrap()).is_err());
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(lattice_points(&cube().to_rational()).len(), 27);
        assert_eq!(lattice_points(&octahedron().to_rational()).len(), 7);
    }

    #[test]
    fn polytope_file_parse() {
        let p =
            LatticePolytope::parse("# octahedron\n1 0 0\n-1 0 0\n0 1 0\n0 -1 0\n0 0 1\n0 0 -1\n").unwrap();
        assert_eq!(p, octahedron());
        assert_eq!(LatticePolytope::parse(&p.to_string()).unwrap(), p);
        assert!(matches!(LatticePolytope::parse("1 0\n0 1 1\n"), Err(PolytopeError::Parse(_))));
    }
}
