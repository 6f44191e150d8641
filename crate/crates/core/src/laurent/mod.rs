//! Sparse multivariate Laurent polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration and
//! serialization are lexicographic and deterministic. Zero coefficients are
//! never stored.

mod format;
mod series;
mod transform;

pub use series::{
    constant_term_series, constant_term_series_in, constant_term_series_mitm, constant_term_series_mitm_in,
    PowerSeries,
};
pub use transform::{quartic_compactification_check, QuarticReport};

use crate::ring::{CoeffRing, Rationals};
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("transformation matrix is not unimodular (det = {det})")]
    NotUnimodular { det: i64 },
    #[error("matrix must be {expected}x{expected}")]
    BadMatrixShape { expected: usize },
    #[error("scale factor {index} is zero")]
    ZeroScale { index: usize },
    #[error("polynomial has no terms")]
    Empty,
    #[error(transparent)]
    Parse(#[from] crate::text::ParseError),
}

/// An exponent vector in `Z^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(SmallVec<[i64; 4]>);

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = i64>) -> Self {
        Monomial(exps.into_iter().collect())
    }

    pub fn zero(dim: usize) -> Self {
        Monomial(SmallVec::from_elem(0, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<Vec<i64>> for Monomial {
    fn from(v: Vec<i64>) -> Self {
        Monomial(v.into())
    }
}

impl<const N: usize> From<[i64; N]> for Monomial {
    fn from(v: [i64; N]) -> Self {
        Monomial::new(v)
    }
}

/// A Laurent polynomial in `dim` variables over an arbitrary coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent<E> {
    dim: usize,
    terms: BTreeMap<Monomial, E>,
}

/// The exact-rational Laurent polynomial used throughout the toolkit.
pub type LaurentPoly = Laurent<BigRational>;

impl<E: Clone> Laurent<E> {
    pub fn zero(dim: usize) -> Self {
        Laurent { dim, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    /// Exponent vectors of the nonzero terms, in lexicographic order.
    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn map_coeffs<F, R: CoeffRing>(&self, ring: &R, mut f: F) -> Laurent<R::Elem>
    where
        F: FnMut(&Monomial, &E) -> R::Elem,
    {
        let terms =
            self.terms.iter().map(|(m, c)| (m.clone(), f(m, c))).filter(|(_, c)| !ring.is_zero(c)).collect();
        Laurent { dim: self.dim, terms }
    }

    pub fn map_monomials<F>(&self, mut f: F) -> Laurent<E>
    where
        F: FnMut(&Monomial) -> Monomial,
    {
        Laurent { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect() }
    }

    fn check_dim(&self, other: &Self) -> Result<(), LaurentError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(LaurentError::DimensionMismatch { left: self.dim, right: other.dim })
        }
    }
}

impl<E: Clone + PartialEq + fmt::Debug + Send + Sync> Laurent<E> {
    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms_in<R, I>(ring: &R, dim: usize, terms: I) -> Result<Self, LaurentError>
    where
        R: CoeffRing<Elem = E>,
        I: IntoIterator<Item = (Monomial, E)>,
    {
        if dim == 0 {
            return Err(LaurentError::ZeroDimension);
        }
        let mut map: BTreeMap<Monomial, E> = BTreeMap::new();
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(LaurentError::DimensionMismatch { left: dim, right: m.dim() });
            }
            match map.get_mut(&m) {
                Some(acc) => ring.add_assign(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !ring.is_zero(c));
        Ok(Laurent { dim, terms: map })
    }

    pub fn constant_in<R: CoeffRing<Elem = E>>(ring: &R, dim: usize, c: E) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(Monomial::zero(dim), c);
        }
        Laurent { dim, terms }
    }

    pub fn add_in<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self, LaurentError> {
        self.check_dim(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(acc) => ring.add_assign(acc, c),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !ring.is_zero(c));
        Ok(Laurent { dim: self.dim, terms })
    }

    pub fn mul_in<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self, LaurentError> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(ring, other))
    }

    pub(crate) fn mul_unchecked<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        // Outer loop over the smaller operand keeps the hash map hot.
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut acc: HashMap<Monomial, E> = HashMap::with_capacity(big.len() * 2);
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ms.add(mb);
                match acc.get_mut(&m) {
                    Some(slot) => ring.mul_add_assign(slot, cs, cb),
                    None => {
                        acc.insert(m, ring.mul(cs, cb));
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        Laurent { dim: self.dim, terms }
    }

    pub fn pow_in<R: CoeffRing<Elem = E>>(&self, ring: &R, exp: u32) -> Self {
        let mut acc = Laurent::constant_in(ring, self.dim, ring.one());
        for _ in 0..exp {
            acc = acc.mul_unchecked(ring, self);
        }
        acc
    }

    /// Coefficient of the zero monomial.
    pub fn constant_term_in<R: CoeffRing<Elem = E>>(&self, ring: &R) -> E {
        self.terms.get(&Monomial::zero(self.dim)).cloned().unwrap_or_else(|| ring.zero())
    }
}

impl LaurentPoly {
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        Laurent::from_terms_in(&Rationals, dim, terms)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms<I, M>(dim: usize, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (M, i64)>,
        M: Into<Monomial>,
    {
        Self::from_terms(dim, terms.into_iter().map(|(m, c)| (m.into(), BigRational::from_integer(c.into()))))
    }

    pub fn constant(dim: usize, c: BigRational) -> Self {
        Laurent::constant_in(&Rationals, dim, c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, BigRational::one())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.add_in(&Rationals, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.mul_in(&Rationals, other)
    }

    pub fn pow(&self, exp: u32) -> Self {
        self.pow_in(&Rationals, exp)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Laurent::zero(self.dim);
        }
        self.map_coeffs(&Rationals, |_, c| c * s)
    }

    pub fn constant_term(&self) -> BigRational {
        self.constant_term_in(&Rationals)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}
