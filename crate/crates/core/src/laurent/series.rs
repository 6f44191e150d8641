use super::{Laurent, LaurentPoly};
use crate::ring::{CoeffRing, Integers};
use crate::text::{content_lines, parse_int_token, parse_rational_token, ParseError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A power series in `t` truncated after `t^N`. All `N + 1` coefficients
/// are stored, zeros included.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Panics if `coeffs` is empty; a series always has `c_0`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "power series needs at least c_0");
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        PowerSeries::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    /// True when every coefficient up to `order` vanishes.
    pub fn is_zero_through(&self, order: usize) -> bool {
        self.coeffs.iter().take(order + 1).all(Zero::is_zero)
    }

    pub fn parse(input: &str) -> Result<Self, ParseError> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        for line in content_lines(input) {
            let toks = line.tokens();
            if toks.len() != 2 {
                return Err(line.error(1, "expected `<index> <coefficient>`"));
            }
            let idx: usize = parse_int_token(&line, toks[0])?;
            if idx != coeffs.len() {
                return Err(
                    line.error(toks[0].column, format!("expected index {}, found {idx}", coeffs.len()))
                );
            }
            coeffs.push(parse_rational_token(&line, toks[1])?);
        }
        if coeffs.is_empty() {
            return Err(ParseError::new(1, 1, "series has no coefficients"));
        }
        Ok(PowerSeries::new(coeffs))
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{i} {c}")?;
        }
        Ok(())
    }
}

/// `[f^i]_0` for `i = 0..=n` over any coefficient ring, by incremental
/// multiplication `f^i = f^{i-1} * f`.
pub fn constant_term_series_in<R: CoeffRing>(ring: &R, f: &Laurent<R::Elem>, n: usize) -> Vec<R::Elem> {
    let mut out = Vec::with_capacity(n + 1);
    let mut power = Laurent::constant_in(ring, f.dim(), ring.one());
    out.push(ring.one());
    for _ in 0..n {
        power = power.mul_unchecked(ring, f);
        out.push(power.constant_term_in(ring));
    }
    out
}

/// Same output as [`constant_term_series_in`], expanding only up to
/// `f^ceil(n/2)` and pairing opposite monomials of two powers.
pub fn constant_term_series_mitm_in<R: CoeffRing>(ring: &R, f: &Laurent<R::Elem>, n: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); n + 1];
    out[0] = ring.one();
    let mut lo = Laurent::constant_in(ring, f.dim(), ring.one());
    let mut k = 0;
    loop {
        // lo = f^k
        if 2 * k > n {
            break;
        }
        out[2 * k] = pair_sum(ring, &lo, &lo);
        if 2 * k + 1 > n {
            break;
        }
        let hi = lo.mul_unchecked(ring, f);
        out[2 * k + 1] = pair_sum(ring, &lo, &hi);
        lo = hi;
        k += 1;
    }
    out
}

/// `sum_m a_m * b_{-m}`.
fn pair_sum<R: CoeffRing>(ring: &R, a: &Laurent<R::Elem>, b: &Laurent<R::Elem>) -> R::Elem {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc = ring.zero();
    for (m, c) in small.terms() {
        if let Some(d) = big.coeff(&m.neg()) {
            ring.mul_add_assign(&mut acc, c, d);
        }
    }
    acc
}

/// Scales `f` to integer coefficients: returns `(g, d)` with `f = g / d`.
fn clear_denominators(f: &LaurentPoly) -> (Laurent<BigInt>, BigInt) {
    let d = f.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let g = f.map_coeffs(&Integers, |_, c| (c * BigRational::from_integer(d.clone())).to_integer());
    (g, d)
}

fn series_from_integer_route(
    f: &LaurentPoly,
    n: usize,
    route: impl Fn(&Integers, &Laurent<BigInt>, usize) -> Vec<BigInt>,
) -> PowerSeries {
    let (g, d) = clear_denominators(f);
    let raw = route(&Integers, &g, n);
    let mut scale = BigInt::one();
    let coeffs = raw
        .into_iter()
        .map(|c| {
            let v = BigRational::new(c, scale.clone());
            scale *= &d;
            v
        })
        .collect();
    PowerSeries::new(coeffs)
}

/// The constant terms series `sum_i [f^i]_0 t^i` through `t^n`.
pub fn constant_term_series(f: &LaurentPoly, n: usize) -> PowerSeries {
    series_from_integer_route(f, n, constant_term_series_in)
}

/// Meet-in-the-middle variant of [`constant_term_series`].
pub fn constant_term_series_mitm(f: &LaurentPoly, n: usize) -> PowerSeries {
    series_from_integer_route(f, n, constant_term_series_mitm_in)
}
