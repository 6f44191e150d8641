//! Parametrized supports: points, symmetry generators, orbits and per-orbit
//! coefficient domains.

use super::SearchError;
use crate::laurent::{LaurentPoly, Monomial};
use crate::text::{content_lines, parse_int_token, parse_rational, Line, ParseError};
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Where an orbit's shared coefficient may range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Fixed(BigRational),
    /// Unknown integer.
    Free,
    /// Unknown restricted to the listed integers (normalization constraints).
    OneOf(Vec<i64>),
}

impl Domain {
    pub fn is_free(&self) -> bool {
        !matches!(self, Domain::Fixed(_))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Fixed(c) => write!(f, "fixed {c}"),
            Domain::Free => write!(f, "free"),
            Domain::OneOf(v) => {
                write!(f, "oneof")?;
                for x in v {
                    write!(f, " {x}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted; `points[0]` is the lex-min representative.
    pub points: Vec<Monomial>,
    pub domain: Domain,
}

/// One support point as declared by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzPoint {
    pub exponents: Monomial,
    pub label: Option<String>,
    pub domain: Domain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportAnsatz {
    dim: usize,
    generators: Vec<Vec<Vec<i64>>>,
    orbits: Vec<Orbit>,
}

/// Apply an integer matrix to an exponent vector.
fn act(u: &[Vec<i64>], m: &Monomial) -> Monomial {
    Monomial::new(u.iter().map(|row| row.iter().zip(m.exponents()).map(|(a, e)| a * e).sum()))
}

/// Orbit partition of `support` under the group generated by `generators`.
/// Orbits are sorted internally and ordered by their lex-min point.
pub fn orbits(support: &[Monomial], generators: &[Vec<Vec<i64>>]) -> Result<Vec<Vec<Monomial>>, SearchError> {
    let points: Vec<Monomial> = support.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<&Monomial, usize> = points.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut uf = UnionFind::new(points.len());
    for (gi, g) in generators.iter().enumerate() {
        for (i, m) in points.iter().enumerate() {
            let image = act(g, m);
            let j = *index
                .get(&image)
                .ok_or_else(|| SearchError::GeneratorNotPreserving { generator: gi, point: m.clone() })?;
            uf.union(i, j);
        }
    }
    Ok(uf.groups(&points))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Points are sorted, so grouping by root in index order yields sorted
    /// orbits ordered by lex-min element.
    fn groups(&mut self, points: &[Monomial]) -> Vec<Vec<Monomial>> {
        let mut by_root: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
        for (i, m) in points.iter().enumerate() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(m.clone());
        }
        by_root.into_values().collect()
    }
}

/// Permutation matrix sending `m` to `m'` with `m'[i] = m[perm[i]]`.
pub fn permutation_matrix(perm: &[usize]) -> Vec<Vec<i64>> {
    let n = perm.len();
    (0..n).map(|i| (0..n).map(|j| i64::from(perm[i] == j)).collect()).collect()
}

/// Generators of the full symmetric group on the coordinates.
pub fn symmetric_group(n: usize) -> Vec<Vec<Vec<i64>>> {
    if n < 2 {
        return Vec::new();
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut gens = vec![permutation_matrix(&swap)];
    if n > 2 {
        gens.push(permutation_matrix(&cycle));
    }
    gens
}

impl SupportAnsatz {
    /// Builds orbits from generator images and shared labels; every orbit
    /// must carry one consistent domain.
    pub fn new(
        dim: usize,
        points: Vec<AnsatzPoint>,
        generators: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self, SearchError> {
        if dim == 0 {
            return Err(SearchError::InvalidAnsatz("dimension must be positive".into()));
        }
        for p in &points {
            if p.exponents.dim() != dim {
                return Err(SearchError::InvalidAnsatz(format!(
                    "point {:?} has dimension {}, expected {dim}",
                    p.exponents,
                    p.exponents.dim()
                )));
            }
        }
        for g in &generators {
            if g.len() != dim || g.iter().any(|r| r.len() != dim) {
                return Err(SearchError::InvalidAnsatz(format!("generator must be {dim}x{dim}")));
            }
            let det = crate::linalg::det_i64(g);
            if det != 1.into() && det != (-1).into() {
                return Err(SearchError::InvalidAnsatz("generator is not unimodular".into()));
            }
        }
        let mut by_point: BTreeMap<Monomial, &AnsatzPoint> = BTreeMap::new();
        for p in &points {
            if by_point.insert(p.exponents.clone(), p).is_some() {
                return Err(SearchError::InvalidAnsatz(format!("duplicate point {:?}", p.exponents)));
            }
        }
        let support: Vec<Monomial> = by_point.keys().cloned().collect();
        let gen_orbits = orbits(&support, &generators)?;

        // merge generator orbits that share a label
        let mut labels: BTreeMap<&str, usize> = BTreeMap::new();
        let mut uf = UnionFind::new(gen_orbits.len());
        for (oi, orbit) in gen_orbits.iter().enumerate() {
            for m in orbit {
                if let Some(l) = by_point[m].label.as_deref() {
                    match labels.get(l) {
                        Some(&other) => uf.union(oi, other),
                        None => {
                            labels.insert(l, oi);
                        }
                    }
                }
            }
        }
        let mut merged: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
        for (oi, orbit) in gen_orbits.into_iter().enumerate() {
            let r = uf.find(oi);
            merged.entry(r).or_default().extend(orbit);
        }
        let mut orbits_out = Vec::new();
        for (_, mut pts) in merged {
            pts.sort();
            let domain = by_point[&pts[0]].domain.clone();
            if let Some(bad) = pts.iter().find(|m| by_point[*m].domain != domain) {
                return Err(SearchError::InvalidAnsatz(format!(
                    "orbit of {:?} mixes domains `{domain}` and `{}`",
                    pts[0], by_point[bad].domain
                )));
            }
            orbits_out.push(Orbit { points: pts, domain });
        }
        orbits_out.sort_by(|a, b| a.points[0].cmp(&b.points[0]));
        Ok(SupportAnsatz { dim, generators, orbits: orbits_out })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Vec<i64>>] {
        &self.generators
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// Indices of orbits whose coefficient is unknown.
    pub fn free_orbits(&self) -> Vec<usize> {
        (0..self.orbits.len()).filter(|&i| self.orbits[i].domain.is_free()).collect()
    }

    /// True when every admissible polynomial has integer coefficients.
    pub fn is_integral(&self) -> bool {
        self.orbits.iter().all(|o| match &o.domain {
            Domain::Fixed(c) => c.is_integer(),
            _ => true,
        })
    }

    /// The polynomial with the given values on the free orbits (in
    /// [`Self::free_orbits`] order).
    pub fn instantiate(&self, free_values: &[BigRational]) -> LaurentPoly {
        let mut values = free_values.iter();
        let mut terms = Vec::new();
        for o in &self.orbits {
            let c = match &o.domain {
                Domain::Fixed(c) => c.clone(),
                _ => values.next().expect("one value per free orbit").clone(),
            };
            terms.extend(o.points.iter().map(|m| (m.clone(), c.clone())));
        }
        LaurentPoly::from_terms(self.dim, terms).expect("dimensions checked")
    }

    /// Parses the ansatz file format:
    ///
    /// ```text
    /// dim 3
    /// symmetric                 # full coordinate permutation group
    /// perm 1 2 0                # m'[i] = m[perm[i]]
    /// matrix 1 0 0 0 1 0 0 0 1  # row-major unimodular map
    /// 1 0 0 : x : oneof 0 1     # exponents : label (or -) : domain
    /// 0 0 0 : - : free
    /// -1 -1 -1 : - : fixed 1
    /// ```
    pub fn parse(input: &str) -> Result<Self, SearchError> {
        let mut dim: Option<usize> = None;
        let mut generators = Vec::new();
        let mut want_symmetric = false;
        let mut points = Vec::new();
        for line in content_lines(input) {
            let toks = line.tokens();
            let need_dim = |line: &Line<'_>| {
                dim.ok_or_else(|| SearchError::Parse(line.error(1, "`dim` must come first")))
            };
            match toks[0].text {
                "dim" => {
                    if toks.len() != 2 {
                        return Err(line.error(1, "expected `dim <n>`").into());
                    }
                    dim = Some(parse_int_token(&line, toks[1])?);
                }
                "symmetric" => want_symmetric = true,
                "perm" => {
                    let n = need_dim(&line)?;
                    let perm = toks[1..]
                        .iter()
                        .map(|&t| parse_int_token::<usize>(&line, t))
                        .collect::<Result<Vec<_>, _>>()?;
                    let sorted: BTreeSet<usize> = perm.iter().copied().collect();
                    if perm.len() != n || sorted != (0..n).collect() {
                        return Err(line.error(1, format!("`perm` needs a permutation of 0..{n}")).into());
                    }
                    generators.push(permutation_matrix(&perm));
                }
                "matrix" => {
                    let n = need_dim(&line)?;
                    let vals = toks[1..].iter().map(|&t| parse_int_token::<i64>(&line, t)).collect::<Result<
                        Vec<_>,
                        _,
                    >>(
                    )?;
                    if vals.len() != n * n {
                        return Err(line.error(1, format!("`matrix` needs {} entries", n * n)).into());
                    }
                    generators.push(vals.chunks(n).map(<[i64]>::to_vec).collect());
                }
                _ => {
                    let n = need_dim(&line)?;
                    points.push(parse_point(&line, n)?);
                }
            }
        }
        let dim = dim.ok_or_else(|| ParseError::new(1, 1, "missing `dim` line"))?;
        if want_symmetric {
            generators.extend(symmetric_group(dim));
        }
        SupportAnsatz::new(dim, points, generators)
    }
}

fn parse_point(line: &Line<'_>, n: usize) -> Result<AnsatzPoint, ParseError> {
    let parts: Vec<&str> = line.text.split(':').collect();
    if parts.len() != 3 {
        return Err(line.error(1, "expected `<exponents> : <label> : <domain>`"));
    }
    let exps = parts[0]
        .split_whitespace()
        .map(|s| s.parse::<i64>().map_err(|_| line.error(1, format!("bad exponent `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if exps.len() != n {
        return Err(line.error(1, format!("expected {n} exponents")));
    }
    let label_col = parts[0].len() + 2;
    let label = match parts[1].trim() {
        "" => return Err(line.error(label_col, "empty label (use `-` for none)")),
        "-" => None,
        l => Some(l.to_string()),
    };
    let dom_col = parts[0].len() + parts[1].len() + 3;
    let words: Vec<&str> = parts[2].split_whitespace().collect();
    let domain = match words.as_slice() {
        ["free"] => Domain::Free,
        ["fixed", v] => Domain::Fixed(parse_rational(v).map_err(|m| line.error(dom_col, m))?),
        ["oneof", vals @ ..] if !vals.is_empty() => Domain::OneOf(
            vals.iter()
                .map(|v| v.parse::<i64>().map_err(|_| line.error(dom_col, format!("bad value `{v}`"))))
                .collect::<Result<_, _>>()?,
        ),
        _ => return Err(line.error(dom_col, "domain must be `free`, `fixed <q>` or `oneof <ints>`")),
    };
    Ok(AnsatzPoint { exponents: Monomial::from(exps), label, domain })
}

impl fmt::Display for SupportAnsatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for g in &self.generators {
            let cells: Vec<String> = g.iter().flatten().map(ToString::to_string).collect();
            writeln!(f, "matrix {}", cells.join(" "))?;
        }
        for (i, o) in self.orbits.iter().enumerate() {
            for m in &o.points {
                let e: Vec<String> = m.exponents().iter().map(ToString::to_string).collect();
                writeln!(f, "{} : o{i} : {}", e.join(" "), o.domain)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn pt(e: &[i64], domain: Domain) -> AnsatzPoint {
        AnsatzPoint { exponents: Monomial::new(e.iter().copied()), label: None, domain }
    }

    #[test]
    fn f18_orbits_under_s3() {
        let support = catalog::f18().support();
        let orbs = orbits(&support, &symmetric_group(3)).unwrap();
        let sizes: Vec<usize> = orbs.iter().map(Vec::len).collect();
        // 1/x.., x/(yz).., x/y.., origin, x..
        assert_eq!(orbs.len(), 5);
        assert_eq!(sizes.iter().sum::<usize>(), 16);
        assert!(orbs.iter().any(|o| o == &vec![Monomial::new([0, 0, 0])]));
        assert!(orbs.iter().any(|o| o.len() == 6));
    }

    #[test]
    fn trivial_group_gives_singletons() {
        let support = catalog::f22().support();
        let orbs = orbits(&support, &[]).unwrap();
        assert_eq!(orbs.len(), 14);
        assert!(orbs.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn negation_in_one_dimension() {
        let support = vec![Monomial::new([1]), Monomial::new([-1])];
        let orbs = orbits(&support, &[vec![vec![-1]]]).unwrap();
        assert_eq!(orbs, vec![vec![Monomial::new([-1]), Monomial::new([1])]]);
    }

    #[test]
    fn non_preserving_generator_rejected() {
        let support = vec![Monomial::new([1, 0]), Monomial::new([0, 0])];
        let err = orbits(&support, &[permutation_matrix(&[1, 0])]).unwrap_err();
        assert!(matches!(err, SearchError::GeneratorNotPreserving { generator: 0, .. }));
    }

    #[test]
    fn labels_merge_and_domains_must_agree() {
        let pts = vec![
            AnsatzPoint { label: Some("a".into()), ..pt(&[1], Domain::Free) },
            AnsatzPoint { label: Some("a".into()), ..pt(&[-1], Domain::Free) },
            pt(&[0], Domain::Fixed(BigRational::from_integer(2.into()))),
        ];
        let a = SupportAnsatz::new(1, pts.clone(), vec![]).unwrap();
        assert_eq!(a.orbits().len(), 2);
        assert_eq!(a.free_orbits(), vec![0]);
        let f = a.instantiate(&[BigRational::from_integer(3.into())]);
        assert_eq!(f, LaurentPoly::from_int_terms(1, [([1], 3), ([-1], 3), ([0], 2)]).unwrap());

        let mut bad = pts;
        bad[1].domain = Domain::OneOf(vec![0, 1]);
        assert!(matches!(SupportAnsatz::new(1, bad, vec![]), Err(SearchError::InvalidAnsatz(_))));
    }

    #[test]
    fn file_format_round_trip() {
        let text = "dim 2\nperm 1 0\n1 0 : - : oneof 0 1\n0 1 : - : oneof 0 1\n-1 -1 : - : fixed 1\n0 0 : c : free\n";
        let a = SupportAnsatz::parse(text).unwrap();
        assert_eq!(a.orbits().len(), 3);
        let again = SupportAnsatz::parse(&a.to_string()).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn file_format_errors() {
        assert!(matches!(SupportAnsatz::parse("1 0 : - : free\n"), Err(SearchError::Parse(_))));
        match SupportAnsatz::parse("dim 1\n1 : - : fixed 3/\n") {
            Err(SearchError::Parse(e)) => assert_eq!(e.line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(SupportAnsatz::parse("dim 2\nperm 0 0\n").is_err());
        assert!(SupportAnsatz::parse("dim 1\n1 : - : maybe\n").is_err());
    }
}
