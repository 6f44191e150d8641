//! Searching parametrized supports for Laurent polynomials with a prescribed
//! constant-term series: enumeration over `Z/p` with level pruning, then
//! integer lifting and exact verification.

mod ansatz;

pub use ansatz::{orbits, permutation_matrix, symmetric_group, AnsatzPoint, Domain, Orbit, SupportAnsatz};

use crate::laurent::{constant_term_series, Laurent, LaurentPoly, Monomial, PowerSeries};
use crate::ring::ModP;
use crate::text::{KvDocument, ParseError};
use num_rational::BigRational;
use rayon::prelude::*;
use std::collections::{BTreeSet, HashSet};

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("prime {0} listed twice")]
    DuplicatePrime(u64),
    #[error("no primes given")]
    NoPrimes,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid ansatz: {0}")]
    InvalidAnsatz(String),
    #[error("generator {generator} maps {point:?} outside the support")]
    GeneratorNotPreserving { generator: usize, point: Monomial },
    #[error("target series has order {have}, need {need}")]
    TargetTooShort { have: usize, need: usize },
    #[error("fixed coefficient {value} cannot be reduced mod {p}")]
    FixedNotReducible { value: BigRational, p: u64 },
    #[error("target coefficient a_{index} = {value} cannot be reduced mod {p}")]
    TargetNotReducible { index: usize, value: BigRational, p: u64 },
    #[error("{count} surviving residue classes have no integer lift with |c| <= {height}")]
    HeightBoundExceeded { height: i64, count: usize },
    #[error("{0} assignments exceed the enumeration limit")]
    TooManyAssignments(u128),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Enumeration cap per prime.
pub const MAX_ASSIGNMENTS: u128 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Target series; must cover `verify_depth`.
    pub target: PowerSeries,
    pub primes: Vec<u64>,
    /// Integer lifts are taken from `[-height, height]`.
    pub height: i64,
    /// Number of coefficients `a_1..a_depth` matched mod p.
    pub depth: usize,
    /// Number of coefficients matched exactly after lifting.
    pub verify_depth: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl SearchConfig {
    pub fn new(target: PowerSeries) -> Self {
        let verify_depth = target.order().min(8);
        SearchConfig {
            target,
            primes: vec![5],
            height: 6,
            depth: verify_depth.min(4),
            verify_depth,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.primes.is_empty() {
            return Err(SearchError::NoPrimes);
        }
        let mut seen = BTreeSet::new();
        for &p in &self.primes {
            ModP::new(p).ok_or(SearchError::NotPrime(p))?;
            if !seen.insert(p) {
                return Err(SearchError::DuplicatePrime(p));
            }
        }
        if self.height < 1 {
            return Err(SearchError::InvalidConfig("height must be at least 1".into()));
        }
        if self.depth < 1 {
            return Err(SearchError::InvalidConfig("depth must be at least 1".into()));
        }
        if self.verify_depth < self.depth {
            return Err(SearchError::InvalidConfig("verify depth must be at least the mod-p depth".into()));
        }
        if self.target.order() < self.verify_depth {
            return Err(SearchError::TargetTooShort { have: self.target.order(), need: self.verify_depth });
        }
        if !self.target.coeff(0).is_integer() || self.target.coeff(0) != &BigRational::from_integer(1.into())
        {
            return Err(SearchError::InvalidConfig("target must start with a_0 = 1".into()));
        }
        Ok(())
    }
}

/// Residue tuples (one entry per free orbit) that survived a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSurvivors {
    pub p: u64,
    pub assignments: Vec<Vec<u64>>,
    pub stats: PrimeStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeStats {
    pub p: u64,
    pub enumerated: u64,
    /// `survivors[r - 1]` assignments matched `a_1..a_r`.
    pub survivors: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub per_prime: Vec<PrimeStats>,
    pub lifts_tried: u64,
    pub exact_matches: u64,
}

impl SearchStats {
    pub fn to_kv(&self) -> KvDocument {
        let mut doc = KvDocument::new();
        for s in &self.per_prime {
            doc.push(format!("p{}.enumerated", s.p), s.enumerated);
            for (i, n) in s.survivors.iter().enumerate() {
                doc.push(format!("p{}.level{}", s.p, i + 1), n);
            }
        }
        doc.push("lifts_tried", self.lifts_tried);
        doc.push("exact_matches", self.exact_matches);
        doc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Verified polynomials, sorted by serialized text.
    pub solutions: Vec<LaurentPoly>,
    pub stats: SearchStats,
}

/// Per-orbit candidate residues.
fn residue_domains(ansatz: &SupportAnsatz, ring: &ModP) -> Vec<Vec<u64>> {
    let p = ring.modulus();
    ansatz
        .free_orbits()
        .into_iter()
        .map(|i| match &ansatz.orbits()[i].domain {
            Domain::OneOf(vals) => {
                let set: BTreeSet<u64> = vals.iter().map(|&v| ring.from_i64(v)).collect();
                set.into_iter().collect()
            }
            _ => (0..p).collect(),
        })
        .collect()
}

/// What each level must match mod p; `None` means no assignment can match.
fn target_residues(
    ansatz: &SupportAnsatz,
    target: &PowerSeries,
    depth: usize,
    ring: &ModP,
) -> Result<Vec<Option<u64>>, SearchError> {
    let integral = ansatz.is_integral();
    (1..=depth)
        .map(|r| {
            let a = target.coeff(r);
            if integral && !a.is_integer() {
                return Ok(None);
            }
            ring.from_rational(a).map(Some).ok_or_else(|| SearchError::TargetNotReducible {
                index: r,
                value: a.clone(),
                p: ring.modulus(),
            })
        })
        .collect()
}

fn enumeration_size(domains: &[Vec<u64>]) -> Result<u64, SearchError> {
    let total: u128 = domains.iter().map(|d| d.len() as u128).product();
    if total > MAX_ASSIGNMENTS {
        return Err(SearchError::TooManyAssignments(total));
    }
    Ok(total as u64)
}

fn decode(mut index: u64, domains: &[Vec<u64>], out: &mut Vec<u64>) {
    out.clear();
    // last orbit varies fastest
    let mut digits = vec![0u64; domains.len()];
    for (i, d) in domains.iter().enumerate().rev() {
        let n = d.len() as u64;
        digits[i] = d[(index % n) as usize];
        index /= n;
    }
    out.extend(digits);
}

/// Enumerates residue assignments to the free orbits over `Z/p` and keeps
/// those whose constant terms match `a_1..a_depth`, checking levels in
/// ascending order. Output order is independent of the thread count.
pub fn search_mod_p(
    ansatz: &SupportAnsatz,
    target: &PowerSeries,
    depth: usize,
    p: u64,
) -> Result<PrimeSurvivors, SearchError> {
    let ring = ModP::new(p).ok_or(SearchError::NotPrime(p))?;
    if target.order() < depth {
        return Err(SearchError::TargetTooShort { have: target.order(), need: depth });
    }
    let domains = residue_domains(ansatz, &ring);
    let total = enumeration_size(&domains)?;
    let wanted = target_residues(ansatz, target, depth, &ring)?;

    // fixed part and the point lists of the free orbits
    let mut fixed_terms = Vec::new();
    let mut free_points = Vec::new();
    for o in ansatz.orbits() {
        match &o.domain {
            Domain::Fixed(c) => {
                let v = ring
                    .from_rational(c)
                    .ok_or_else(|| SearchError::FixedNotReducible { value: c.clone(), p })?;
                fixed_terms.extend(o.points.iter().map(|m| (m.clone(), v)));
            }
            _ => free_points.push(o.points.clone()),
        }
    }
    let dim = ansatz.dim();

    const CHUNK: u64 = 4096;
    let chunks = total.div_ceil(CHUNK);
    let results: Vec<(Vec<Vec<u64>>, Vec<u64>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut survivors = Vec::new();
            let mut counts = vec![0u64; depth];
            let mut values = Vec::with_capacity(domains.len());
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                decode(idx, &domains, &mut values);
                let terms = fixed_terms.iter().cloned().chain(
                    free_points
                        .iter()
                        .zip(&values)
                        .flat_map(|(pts, &v)| pts.iter().map(move |m| (m.clone(), v))),
                );
                let f = Laurent::from_terms_in(&ring, dim, terms).expect("dimensions checked");
                let passed = passes_levels(&ring, &f, &wanted);
                for n in counts.iter_mut().take(passed) {
                    *n += 1;
                }
                if passed == depth {
                    survivors.push(values.clone());
                }
            }
            (survivors, counts)
        })
        .collect();

    let mut assignments = Vec::new();
    let mut survivors = vec![0u64; depth];
    for (s, counts) in results {
        assignments.extend(s);
        for (acc, n) in survivors.iter_mut().zip(counts) {
            *acc += n;
        }
    }
    Ok(PrimeSurvivors { p, assignments, stats: PrimeStats { p, enumerated: total, survivors } })
}

/// Number of leading levels matched.
fn passes_levels(ring: &ModP, f: &Laurent<u64>, wanted: &[Option<u64>]) -> usize {
    let mut power = f.clone();
    for (i, w) in wanted.iter().enumerate() {
        if i > 0 {
            power = power.mul_unchecked(ring, f);
        }
        match w {
            Some(v) if power.constant_term_in(ring) == *v => {}
            _ => return i,
        }
    }
    wanted.len()
}

/// Integers in `[-height, height]` congruent to `r` mod `p`, smallest
/// absolute value first (negative before positive on ties), restricted to
/// `domain` when it is a finite set.
fn lifts(r: u64, ring: &ModP, height: i64, domain: &Domain) -> Vec<i64> {
    let p = ring.modulus() as i64;
    let s = ring.symmetric(r);
    let mut out = Vec::new();
    let mut k = 0i64;
    loop {
        let below = s - k * p;
        let above = s + k * p;
        if below.abs() > height && above.abs() > height && k > 0 {
            break;
        }
        let mut cand = vec![below];
        if k > 0 {
            cand.push(above);
        }
        for c in cand {
            if c.abs() <= height {
                out.push(c);
            }
        }
        k += 1;
    }
    out.sort_by_key(|&c| (c.abs(), c > 0));
    if let Domain::OneOf(vals) = domain {
        out.retain(|c| vals.contains(c));
    }
    out
}

/// Lifts residue tuples of the first prime to integers, keeps lifts that
/// reduce into the survivor sets of every other prime, and verifies the
/// remainder exactly against `a_0..a_{verify_depth}`.
pub fn lift_and_verify(
    ansatz: &SupportAnsatz,
    survivors: &[PrimeSurvivors],
    config: &SearchConfig,
) -> Result<(Vec<LaurentPoly>, SearchStats), SearchError> {
    let mut stats =
        SearchStats { per_prime: survivors.iter().map(|s| s.stats.clone()).collect(), ..Default::default() };
    let Some((first, rest)) = survivors.split_first() else {
        return Ok((Vec::new(), stats));
    };
    let ring = ModP::new(first.p).ok_or(SearchError::NotPrime(first.p))?;
    let others: Vec<(ModP, HashSet<&Vec<u64>>)> = rest
        .iter()
        .map(|s| Ok((ModP::new(s.p).ok_or(SearchError::NotPrime(s.p))?, s.assignments.iter().collect())))
        .collect::<Result<_, SearchError>>()?;
    let free = ansatz.free_orbits();
    let target = config.target.truncate(config.verify_depth);

    let mut unliftable = 0usize;
    let mut found: Vec<(String, LaurentPoly)> = Vec::new();
    let mut reduced = vec![0u64; free.len()];
    for tuple in &first.assignments {
        let options: Vec<Vec<i64>> = tuple
            .iter()
            .zip(&free)
            .map(|(&r, &oi)| lifts(r, &ring, config.height, &ansatz.orbits()[oi].domain))
            .collect();
        if options.iter().any(Vec::is_empty) {
            unliftable += 1;
            continue;
        }
        let mut idx = vec![0usize; options.len()];
        loop {
            let values: Vec<i64> = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
            let consistent = others.iter().all(|(q, set)| {
                for (slot, &v) in reduced.iter_mut().zip(&values) {
                    *slot = q.from_i64(v);
                }
                set.contains(&reduced)
            });
            if consistent {
                stats.lifts_tried += 1;
                let coeffs: Vec<BigRational> =
                    values.iter().map(|&v| BigRational::from_integer(v.into())).collect();
                let f = ansatz.instantiate(&coeffs);
                if constant_term_series(&f, config.verify_depth) == target {
                    stats.exact_matches += 1;
                    found.push((f.to_string(), f));
                }
            }
            if !advance(&mut idx, &options) {
                break;
            }
        }
    }
    if !first.assignments.is_empty() && unliftable == first.assignments.len() {
        return Err(SearchError::HeightBoundExceeded { height: config.height, count: unliftable });
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    Ok((found.into_iter().map(|(_, f)| f).collect(), stats))
}

fn advance(idx: &mut [usize], options: &[Vec<i64>]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < options[i].len() {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Full pipeline: every prime, then lifting and exact verification.
pub fn search(ansatz: &SupportAnsatz, config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    config.validate()?;
    let run = || -> Result<SearchOutcome, SearchError> {
        let survivors = config
            .primes
            .iter()
            .map(|&p| search_mod_p(ansatz, &config.target, config.depth, p))
            .collect::<Result<Vec<_>, _>>()?;
        let (solutions, stats) = lift_and_verify(ansatz, &survivors, config)?;
        Ok(SearchOutcome { solutions, stats })
    };
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| SearchError::InvalidConfig(e.to_string()))?
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dseries::solve_series;

    fn toy() -> SupportAnsatz {
        SupportAnsatz::parse("dim 1\n1 : b : free\n-1 : b : free\n").unwrap()
    }

    #[test]
    fn toy_residues_and_lift() {
        let target = PowerSeries::from_ints(&[1, 0, 2]);
        let s = search_mod_p(&toy(), &target, 2, 7).unwrap();
        assert_eq!(s.assignments, vec![vec![1], vec![6]]);
        assert_eq!(s.stats.enumerated, 7);
        assert_eq!(s.stats.survivors, vec![7, 2]);

        let mut config = SearchConfig::new(PowerSeries::from_ints(&[1, 0, 2, 0, 6, 0, 20]));
        config.primes = vec![7];
        config.depth = 2;
        let out = search(&toy(), &config).unwrap();
        let sols: Vec<String> = out.solutions.iter().map(ToString::to_string).collect();
        // both signs give the central binomials
        assert_eq!(out.solutions.len(), 2, "{sols:?}");
        assert!(out.solutions.contains(&LaurentPoly::from_int_terms(1, [([1], -1), ([-1], -1)]).unwrap()));
    }

    #[test]
    fn lifts_are_ordered_and_bounded() {
        let r = ModP::new(7).unwrap();
        assert_eq!(lifts(6, &r, 10, &Domain::Free), vec![-1, 6, -8]);
        assert_eq!(lifts(0, &r, 7, &Domain::Free), vec![0, -7, 7]);
        assert_eq!(lifts(3, &r, 2, &Domain::Free), Vec::<i64>::new());
        assert_eq!(lifts(1, &r, 10, &Domain::OneOf(vec![0, 1])), vec![1]);
    }

    #[test]
    fn missing_origin_with_nonzero_a1_is_empty() {
        let target = PowerSeries::from_ints(&[1, 1, 2]);
        let s = search_mod_p(&toy(), &target, 2, 5).unwrap();
        assert!(s.assignments.is_empty());
        assert_eq!(s.stats.survivors, vec![0, 0]);
        let mut config = SearchConfig::new(target);
        config.depth = 2;
        config.verify_depth = 2;
        assert!(search(&toy(), &config).unwrap().solutions.is_empty());
    }

    #[test]
    fn non_integral_target_prunes_everything() {
        let target =
            PowerSeries::new(vec![BigRational::from_integer(1.into()), BigRational::new(1.into(), 2.into())]);
        let s = search_mod_p(&toy(), &target, 1, 5).unwrap();
        assert!(s.assignments.is_empty());
    }

    #[test]
    fn height_bound_is_an_error() {
        // x + 1/x scaled by 3 needs |b| = 3
        let target = PowerSeries::from_ints(&[1, 0, 18, 0, 486]);
        let mut config = SearchConfig::new(target);
        config.primes = vec![7];
        config.depth = 2;
        config.verify_depth = 4;
        config.height = 2;
        assert!(matches!(search(&toy(), &config), Err(SearchError::HeightBoundExceeded { .. })));
        config.height = 3;
        assert_eq!(search(&toy(), &config).unwrap().solutions.len(), 2);
    }

    #[test]
    fn config_validation() {
        let mut config = SearchConfig::new(PowerSeries::from_ints(&[1, 0, 2]));
        config.primes = vec![4];
        assert!(matches!(config.validate(), Err(SearchError::NotPrime(4))));
        config.primes = vec![5, 5];
        assert!(matches!(config.validate(), Err(SearchError::DuplicatePrime(5))));
        config.primes = vec![];
        assert!(matches!(config.validate(), Err(SearchError::NoPrimes)));
        config.primes = vec![5];
        config.verify_depth = 9;
        assert!(matches!(config.validate(), Err(SearchError::TargetTooShort { .. })));
    }

    #[test]
    fn f16_survives_mod_5() {
        let f = catalog::f16();
        let points = f
            .terms()
            .map(|(m, _)| AnsatzPoint { exponents: m.clone(), label: None, domain: Domain::Free })
            .collect();
        let ansatz = SupportAnsatz::new(3, points, symmetric_group(3)).unwrap();
        let target = solve_series(&catalog::operator_v16(), 4).unwrap();
        let s = search_mod_p(&ansatz, &target, 4, 5).unwrap();
        let ring = ModP::new(5).unwrap();
        let expected: Vec<u64> = ansatz
            .free_orbits()
            .iter()
            .map(|&i| ring.from_rational(f.coeff(&ansatz.orbits()[i].points[0]).unwrap()).unwrap())
            .collect();
        assert!(s.assignments.contains(&expected));
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let f = catalog::f18();
        let points = f
            .terms()
            .map(|(m, _)| AnsatzPoint { exponents: m.clone(), label: None, domain: Domain::Free })
            .collect();
        let ansatz = SupportAnsatz::new(3, points, symmetric_group(3)).unwrap();
        let mut config = SearchConfig::new(solve_series(&catalog::operator_v18(), 8).unwrap());
        config.primes = vec![5, 7];
        config.height = 3;
        config.threads = Some(1);
        let one = search(&ansatz, &config).unwrap();
        config.threads = Some(4);
        let four = search(&ansatz, &config).unwrap();
        assert_eq!(one, four);
        assert!(one.solutions.contains(&f));
    }
}
