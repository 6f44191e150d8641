use super::{
    dual_lattice, interior_lattice_points, lattice_points, volume, LatticePolytope, PolytopeError,
    RationalPolytope,
};
use crate::catalog::FanoRecord;
use crate::linalg::rank;
use crate::text::KvDocument;
use num_rational::BigRational;
use num_traits::Zero;

/// Canonical iff the origin is the only interior lattice point.
pub fn is_canonical(p: &LatticePolytope) -> bool {
    interior_lattice_points(p) == vec![vec![0; p.dim]]
}

/// Reflexive iff every vertex of the dual is integral.
pub fn is_reflexive(p: &LatticePolytope) -> Result<bool, PolytopeError> {
    Ok(dual_lattice(p)?.is_integral())
}

/// `n! * vol(P^dual)`: the lattice-normalized volume of the dual.
pub fn anticanonical_degree(p: &LatticePolytope) -> Result<BigRational, PolytopeError> {
    let d = dual_lattice(p)?;
    let fact: i64 = (1..=p.dim as i64).product();
    Ok(volume(&d)? * BigRational::from_integer(fact.into()))
}

/// Number of lattice points in the closed dual polytope.
pub fn anticanonical_sections(p: &LatticePolytope) -> Result<usize, PolytopeError> {
    Ok(lattice_points(&dual_lattice(p)?).len())
}

/// Picard rank of the toric variety of the face fan of `p` (cones over
/// facets): dimension of piecewise-linear functions on the fan modulo
/// global linear functions.
pub fn picard_rank(p: &LatticePolytope) -> Result<usize, PolytopeError> {
    picard_rank_rational(&p.to_rational())
}

/// [`picard_rank`] for a rational polytope; only the cone structure matters.
pub fn picard_rank_rational(p: &RationalPolytope) -> Result<usize, PolytopeError> {
    let n = p.dim;
    if n > 3 {
        return Err(PolytopeError::DimensionTooLarge(n));
    }
    if !p.origin_is_interior() {
        return Err(PolytopeError::OriginNotInterior);
    }
    let incidence: Vec<Vec<usize>> = p
        .facets
        .iter()
        .map(|f| (0..p.vertices.len()).filter(|&i| f.value(&p.vertices[i]) == f.offset).collect())
        .collect();
    let k = incidence.len();
    let unknowns = n * k;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let shared: Vec<usize> =
                incidence[a].iter().copied().filter(|i| incidence[b].contains(i)).collect();
            if shared.len() < n - 1 || linear_rank(p, &shared) != n - 1 {
                continue;
            }
            // <m_a - m_b, v> = 0 on every vertex of the common ridge
            for &v in &shared {
                let mut row = vec![BigRational::zero(); unknowns];
                for i in 0..n {
                    row[a * n + i] = p.vertices[v][i].clone();
                    row[b * n + i] = -p.vertices[v][i].clone();
                }
                rows.push(row);
            }
        }
    }
    let solutions = unknowns - if rows.is_empty() { 0 } else { rank(&rows, unknowns) };
    Ok(solutions - n)
}

fn linear_rank(p: &RationalPolytope, idx: &[usize]) -> usize {
    let rows: Vec<Vec<BigRational>> = idx.iter().map(|&i| p.vertices[i].clone()).collect();
    rank(&rows, p.dim)
}

/// Numerical data of the toric variety attached to a polytope, optionally
/// compared against a Fano record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub canonical: bool,
    pub reflexive: bool,
    pub degree: BigRational,
    pub sections: usize,
    pub picard_rank: usize,
    /// Picard rank of the face fan of the dual polytope, reported when it
    /// differs from `picard_rank`.
    pub dual_fan_picard_rank: Option<usize>,
    pub mismatches: Vec<String>,
}

impl InvariantReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_kv(&self) -> KvDocument {
        let mut doc = KvDocument::new();
        doc.push("canonical", self.canonical);
        doc.push("reflexive", self.reflexive);
        doc.push("degree", &self.degree);
        doc.push("sections", self.sections);
        doc.push("picard_rank", self.picard_rank);
        if let Some(r) = self.dual_fan_picard_rank {
            doc.push("picard_rank.dual_fan", r);
        }
        doc.push(
            "mismatches",
            if self.mismatches.is_empty() { "none".to_string() } else { self.mismatches.join(", ") },
        );
        doc
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.to_kv().entries() {
            out.push_str(&format!("{k:<22} {v}\n"));
        }
        out
    }
}

pub fn invariant_report(
    p: &LatticePolytope,
    expected: Option<&FanoRecord>,
) -> Result<InvariantReport, PolytopeError> {
    let dual = dual_lattice(p)?;
    let degree = anticanonical_degree(p)?;
    let sections = anticanonical_sections(p)?;
    let rank = picard_rank(p)?;
    let dual_rank = picard_rank_rational(&dual)?;
    let mut mismatches = Vec::new();
    if let Some(rec) = expected {
        if degree != BigRational::from_integer(rec.degree.into()) {
            mismatches.push(format!("degree {degree} != {}", rec.degree));
        }
        if sections as i64 != rec.h0 {
            mismatches.push(format!("sections {sections} != {}", rec.h0));
        }
        if rank as i64 != rec.picard_rank {
            mismatches.push(format!("picard_rank {rank} != {}", rec.picard_rank));
        }
    }
    Ok(InvariantReport {
        canonical: is_canonical(p),
        reflexive: dual.is_integral(),
        degree,
        sections,
        picard_rank: rank,
        dual_fan_picard_rank: (dual_rank != rank).then_some(dual_rank),
        mismatches,
    })
}
