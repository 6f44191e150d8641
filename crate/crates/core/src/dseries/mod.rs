//! Differential operators `L = sum_j t^j P_j(D)` with `D = t d/dt`, their
//! power-series solutions, fitting and gauge transforms.
//!
//! `t^j P_j(D)` sends `t^i` to `P_j(i) t^(i+j)`, so `L` acts on a series
//! `sum a_i t^i` triangularly: the coefficient of `t^k` in `L s` is
//! `sum_j P_j(k - j) a_(k-j)`. Everything below is built on that identity.

mod fit;
mod verify;

pub use fit::fit_operator;
pub use verify::{verify_weak_lg, ComparisonRow, Verdict, VerificationReport};

use crate::laurent::PowerSeries;
use crate::text::{content_lines, parse_int_token, parse_rational_token, ParseError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OperatorError {
    #[error("indicial obstruction: P_0({k}) = 0")]
    IndicialObstruction { k: usize },
    #[error("coefficient table must be non-empty and rectangular")]
    BadTable,
    #[error("series of order {have} is too short; need at least {need}")]
    InsufficientPrefix { have: usize, need: usize },
    #[error("rescaling factor must be nonzero")]
    ZeroRescale,
    #[error("series order {order} is below the operator t-degree {tdeg}")]
    SeriesTooShort { order: usize, tdeg: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Expanded coefficient table `c[j][l]`: `P_j(D) = sum_l c[j][l] D^l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DOperator {
    table: Vec<Vec<BigRational>>,
}

impl DOperator {
    pub fn new(table: Vec<Vec<BigRational>>) -> Result<Self, OperatorError> {
        let width = table.first().map(Vec::len).ok_or(OperatorError::BadTable)?;
        if width == 0 || table.iter().any(|row| row.len() != width) {
            return Err(OperatorError::BadTable);
        }
        Ok(DOperator { table })
    }

    /// Builds an operator from the polynomials `P_0, ..., P_r` given as
    /// ascending coefficient lists of varying length.
    pub fn from_polys(polys: Vec<Vec<BigRational>>) -> Result<Self, OperatorError> {
        let width = polys.iter().map(Vec::len).max().ok_or(OperatorError::BadTable)?.max(1);
        let table = polys
            .into_iter()
            .map(|mut p| {
                p.resize(width, BigRational::zero());
                p
            })
            .collect();
        DOperator::new(table)
    }

    pub fn from_ints(table: &[&[i64]]) -> Result<Self, OperatorError> {
        DOperator::new(
            table.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect(),
        )
    }

    /// `D^m`.
    pub fn d_power(m: usize) -> Self {
        let mut row = vec![BigRational::zero(); m + 1];
        row[m] = BigRational::one();
        DOperator { table: vec![row] }
    }

    /// Order in `D`.
    pub fn order(&self) -> usize {
        self.table[0].len() - 1
    }

    /// Degree in `t`.
    pub fn t_degree(&self) -> usize {
        self.table.len() - 1
    }

    pub fn coeff(&self, j: usize, l: usize) -> &BigRational {
        &self.table[j][l]
    }

    pub fn table(&self) -> &[Vec<BigRational>] {
        &self.table
    }

    /// Coefficients flattened in `(j, l)` lexicographic order.
    pub fn flatten(&self) -> Vec<BigRational> {
        self.table.iter().flatten().cloned().collect()
    }

    /// Evaluates `P_j` at the integer `k` (Horner).
    pub fn eval_p(&self, j: usize, k: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(k));
        self.table[j].iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// True when `self = s * other` for some nonzero rational `s`.
    pub fn equals_up_to_scalar(&self, other: &DOperator) -> bool {
        let a = self.flatten();
        let b = other.flatten();
        if a.len() != b.len() {
            return false;
        }
        let Some(i) = a.iter().position(|c| !c.is_zero()) else {
            return b.iter().all(Zero::is_zero);
        };
        if b[i].is_zero() {
            return false;
        }
        let s = &b[i] / &a[i];
        a.iter().zip(&b).all(|(x, y)| &(x * &s) == y)
    }

    /// Parses `order m, tdeg r` followed by `r + 1` rows of `m + 1` rationals.
    pub fn parse(input: &str) -> Result<Self, OperatorError> {
        let mut lines = content_lines(input);
        let header = lines.next().ok_or_else(|| ParseError::new(1, 1, "missing `order m, tdeg r` header"))?;
        let toks = header.tokens();
        let shape_err = || header.error(1, "expected header `order m, tdeg r`");
        if toks.len() != 4 || toks[0].text != "order" || toks[2].text != "tdeg" {
            return Err(shape_err().into());
        }
        let m_tok = toks[1].text.strip_suffix(',').ok_or_else(shape_err)?;
        let m: usize = parse_int_token(&header, crate::text::Token { text: m_tok, ..toks[1] })?;
        let r: usize = parse_int_token(&header, toks[3])?;
        let mut table = Vec::with_capacity(r + 1);
        for line in lines {
            let toks = line.tokens();
            if table.len() == r + 1 {
                return Err(line.error(1, format!("expected {} coefficient rows", r + 1)).into());
            }
            if toks.len() != m + 1 {
                return Err(line
                    .error(1, format!("expected {} coefficients, found {}", m + 1, toks.len()))
                    .into());
            }
            let row = toks.iter().map(|&t| parse_rational_token(&line, t)).collect::<Result<Vec<_>, _>>()?;
            table.push(row);
        }
        if table.len() != r + 1 {
            return Err(ParseError::new(
                header.number,
                1,
                format!("expected {} coefficient rows, found {}", r + 1, table.len()),
            )
            .into());
        }
        DOperator::new(table)
    }
}

impl fmt::Display for DOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}, tdeg {}", self.order(), self.t_degree())?;
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The unique solution `1 + a_1 t + ... + a_n t^n` of `L I = 0`.
pub fn solve_series(op: &DOperator, n: usize) -> Result<PowerSeries, OperatorError> {
    let mut a = Vec::with_capacity(n + 1);
    a.push(BigRational::one());
    for k in 1..=n {
        let lead = op.eval_p(0, k as i64);
        if lead.is_zero() {
            return Err(OperatorError::IndicialObstruction { k });
        }
        let mut s = BigRational::zero();
        for j in 1..=k.min(op.t_degree()) {
            let pj = op.eval_p(j, (k - j) as i64);
            if !pj.is_zero() {
                s += pj * &a[k - j];
            }
        }
        a.push(-s / lead);
    }
    Ok(PowerSeries::new(a))
}

/// `L s`, exact through the truncation order of `s`.
pub fn apply(op: &DOperator, s: &PowerSeries) -> Result<PowerSeries, OperatorError> {
    let n = s.order();
    if n < op.t_degree() {
        return Err(OperatorError::SeriesTooShort { order: n, tdeg: op.t_degree() });
    }
    let out = (0..=n)
        .map(|k| (0..=k.min(op.t_degree())).map(|j| op.eval_p(j, (k - j) as i64) * s.coeff(k - j)).sum())
        .collect();
    Ok(PowerSeries::new(out))
}

/// `t -> lambda t` gauge: `c'[j][l] = lambda^j c[j][l]`.
pub fn rescale_t(op: &DOperator, lambda: &BigRational) -> Result<DOperator, OperatorError> {
    if lambda.is_zero() {
        return Err(OperatorError::ZeroRescale);
    }
    let mut scale = BigRational::one();
    let mut table = Vec::with_capacity(op.table.len());
    for row in &op.table {
        table.push(row.iter().map(|c| c * &scale).collect());
        scale *= lambda;
    }
    Ok(DOperator { table })
}

/// Series of `f + c` from the series of `f`:
/// `phi_{f+c}(k) = sum_i C(k, i) c^(k-i) phi_f(i)`.
pub fn shift_constant(s: &PowerSeries, c: &BigRational) -> PowerSeries {
    let n = s.order();
    let mut powers = Vec::with_capacity(n + 1);
    let mut p = BigRational::one();
    for _ in 0..=n {
        powers.push(p.clone());
        p *= c;
    }
    let mut binom_row = vec![BigInt::one()];
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            let mut next = vec![BigInt::one(); k + 1];
            for i in 1..k {
                next[i] = &binom_row[i - 1] + &binom_row[i];
            }
            binom_row = next;
        }
        let v: BigRational = (0..=k)
            .filter(|&i| !s.coeff(i).is_zero())
            .map(|i| BigRational::from_integer(binom_row[i].clone()) * &powers[k - i] * s.coeff(i))
            .sum();
        out.push(v);
    }
    PowerSeries::new(out)
}
