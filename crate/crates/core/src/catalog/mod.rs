//! Built-in Fano records (the genus 9, 10 and 12 threefolds plus two toric
//! sanity samples) and the sectioned record file format.

mod file;

pub use file::{load, save};

use crate::dseries::DOperator;
use crate::laurent::{LaurentPoly, Monomial};
use num_rational::BigRational;

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Parse(#[from] crate::text::ParseError),
    #[error("missing section [{0}]")]
    MissingSection(&'static str),
    #[error("missing key `{0}` in [meta]")]
    MissingKey(&'static str),
    #[error("invalid model: {0}")]
    Model(#[from] crate::laurent::LaurentError),
    #[error("invalid operator: {0}")]
    Operator(#[from] crate::dseries::OperatorError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoRecord {
    pub name: String,
    pub genus: i64,
    /// Anticanonical degree `(-K)^3`.
    pub degree: i64,
    pub h0: i64,
    pub picard_rank: i64,
    pub operator: DOperator,
    pub model: Option<LaurentPoly>,
    /// Machine-readable description of a known disagreement, if any.
    pub known_discrepancy: Option<String>,
    /// Operator fitted to the model series.
    pub derived_operator: Option<DOperator>,
    pub notes: Vec<String>,
}

impl FanoRecord {
    /// Human-readable warnings for violated record invariants.
    pub fn consistency_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.degree != 2 * self.genus - 2 {
            out.push(format!("degree {} differs from 2*genus-2 = {}", self.degree, 2 * self.genus - 2));
        }
        out
    }
}

pub const BUILTIN_NAMES: [&str; 5] = ["V16", "V18", "V22", "P3-sample", "product-of-lines-sample"];

pub fn builtin(name: &str) -> Result<FanoRecord, CatalogError> {
    let rec = match name {
        "V16" => FanoRecord {
            name: "V16".into(),
            genus: 9,
            degree: 16,
            h0: 11,
            picard_rank: 1,
            operator: operator_v16(),
            model: Some(f16()),
            known_discrepancy: None,
            derived_operator: None,
            notes: vec!["operator D^3 - 4t(2D+1)(3D^2+3D+1) + 16t^2(D+1)^3".into()],
        },
        "V18" => FanoRecord {
            name: "V18".into(),
            genus: 10,
            degree: 18,
            h0: 12,
            picard_rank: 1,
            operator: operator_v18(),
            model: Some(f18()),
            known_discrepancy: None,
            derived_operator: None,
            notes: vec!["operator D^3 - 3t(2D+1)(3D^2+3D+1) - 27t^2(D+1)^3".into()],
        },
        "V22" => FanoRecord {
            name: "V22".into(),
            genus: 12,
            degree: 22,
            h0: 14,
            picard_rank: 1,
            operator: operator_v22_recorded(),
            model: Some(f22()),
            known_discrepancy: Some("a1 operator=32/5 model=4".into()),
            derived_operator: Some(operator_v22_fitted()),
            notes: vec![
                "the stored operator has series 1 + 32/5 t + ... while the model gives 1 + 4t + ...".into(),
                "derived-operator is fitted to the model constant-term series with order 3 and t-degree 3"
                    .into(),
            ],
        },
        "P3-sample" => FanoRecord {
            name: "P3-sample".into(),
            genus: 33,
            degree: 64,
            h0: 35,
            picard_rank: 1,
            operator: operator_p3(),
            model: Some(
                LaurentPoly::from_int_terms(
                    3,
                    [([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1), ([-1, -1, -1], 1)],
                )
                .expect("valid"),
            ),
            known_discrepancy: None,
            derived_operator: None,
            notes: vec!["toric sample: projective space, period sum (4d)!/(d!)^4 t^(4d)".into()],
        },
        "product-of-lines-sample" => FanoRecord {
            name: "product-of-lines-sample".into(),
            genus: 25,
            degree: 48,
            h0: 27,
            picard_rank: 3,
            operator: operator_product_of_lines(),
            model: Some(
                LaurentPoly::from_int_terms(
                    3,
                    [
                        ([1, 0, 0], 1),
                        ([-1, 0, 0], 1),
                        ([0, 1, 0], 1),
                        ([0, -1, 0], 1),
                        ([0, 0, 1], 1),
                        ([0, 0, -1], 1),
                    ],
                )
                .expect("valid"),
            ),
            known_discrepancy: None,
            derived_operator: None,
            notes: vec!["toric sample: product of three projective lines".into()],
        },
        other => return Err(CatalogError::UnknownName(other.to_string())),
    };
    Ok(rec)
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Ascending coefficients of a product of polynomials in `D`, times `scale`.
fn dpoly(scale: BigRational, factors: &[&[i64]]) -> Vec<BigRational> {
    let mut acc = vec![scale];
    for f in factors {
        let mut next = vec![q(0, 1); acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, &b) in f.iter().enumerate() {
                next[i + j] += a * q(b, 1);
            }
        }
        acc = next;
    }
    acc
}

const D: &[i64] = &[0, 1];
const D_PLUS_1: &[i64] = &[1, 1];
const D_PLUS_2: &[i64] = &[2, 1];
const D_PLUS_3: &[i64] = &[3, 1];
const TWO_D_PLUS_1: &[i64] = &[1, 2];
const TWO_D_PLUS_3: &[i64] = &[3, 2];

fn d_cubed() -> Vec<BigRational> {
    dpoly(q(1, 1), &[D, D, D])
}

/// `D^3 - 4t(2D+1)(3D^2+3D+1) + 16t^2(D+1)^3`
pub fn operator_v16() -> DOperator {
    DOperator::from_polys(vec![
        d_cubed(),
        dpoly(q(-4, 1), &[TWO_D_PLUS_1, &[1, 3, 3]]),
        dpoly(q(16, 1), &[D_PLUS_1, D_PLUS_1, D_PLUS_1]),
    ])
    .expect("valid")
}

/// `D^3 - 3t(2D+1)(3D^2+3D+1) - 27t^2(D+1)^3`
pub fn operator_v18() -> DOperator {
    DOperator::from_polys(vec![
        d_cubed(),
        dpoly(q(-3, 1), &[TWO_D_PLUS_1, &[1, 3, 3]]),
        dpoly(q(-27, 1), &[D_PLUS_1, D_PLUS_1, D_PLUS_1]),
    ])
    .expect("valid")
}

/// The stored genus-12 operator. Its solution disagrees with the model's
/// series from `t^1` on.
pub fn operator_v22_recorded() -> DOperator {
    DOperator::from_polys(vec![
        d_cubed(),
        dpoly(q(-2, 5), &[TWO_D_PLUS_1, &[16, 17, 17]]),
        dpoly(q(-56, 25), &[D_PLUS_1, &[12, 22, 11]]),
        dpoly(q(-126, 125), &[D_PLUS_1, D_PLUS_2, TWO_D_PLUS_3]),
        dpoly(q(-1504, 625), &[D_PLUS_1, D_PLUS_2, D_PLUS_3]),
    ])
    .expect("valid")
}

/// `D^3 - 2t(2D+1)(5D^2+5D+2) + 8t^2(D+1)(7D^2+14D+8) - 22t^3(D+1)(D+2)(2D+3)`,
/// the unique (up to scalar) order-3, t-degree-3 annihilator of the
/// constant-term series of `f22`.
pub fn operator_v22_fitted() -> DOperator {
    DOperator::from_polys(vec![
        d_cubed(),
        dpoly(q(-2, 1), &[TWO_D_PLUS_1, &[2, 5, 5]]),
        dpoly(q(8, 1), &[D_PLUS_1, &[8, 14, 7]]),
        dpoly(q(-22, 1), &[D_PLUS_1, D_PLUS_2, TWO_D_PLUS_3]),
    ])
    .expect("valid")
}

/// `D^3 - 256 t^4 (D+1)(D+2)(D+3)`
pub fn operator_p3() -> DOperator {
    DOperator::from_polys(vec![
        d_cubed(),
        vec![],
        vec![],
        vec![],
        dpoly(q(-256, 1), &[D_PLUS_1, D_PLUS_2, D_PLUS_3]),
    ])
    .expect("valid")
}

/// `D^3 - 8t^2(D+1)(5D^2+10D+6) + 144t^4(D+1)(D+2)(D+3)`
pub fn operator_product_of_lines() -> DOperator {
    DOperator::from_polys(vec![
        d_cubed(),
        vec![],
        dpoly(q(-8, 1), &[D_PLUS_1, &[6, 10, 5]]),
        vec![],
        dpoly(q(144, 1), &[D_PLUS_1, D_PLUS_2, D_PLUS_3]),
    ])
    .expect("valid")
}

fn model(terms: &[([i64; 3], i64)]) -> LaurentPoly {
    LaurentPoly::from_int_terms(3, terms.iter().map(|&(m, c)| (Monomial::from(m), c))).expect("valid")
}

pub fn f16() -> LaurentPoly {
    model(&[
        ([-1, -1, -1], 1),
        ([-1, -1, 0], 2),
        ([-1, 0, -1], 2),
        ([0, -1, -1], 2),
        ([-1, 0, 0], 3),
        ([0, -1, 0], 3),
        ([0, 0, -1], 3),
        ([1, -1, -1], 1),
        ([-1, 1, -1], 1),
        ([-1, -1, 1], 1),
        ([1, -1, 0], 1),
        ([1, 0, -1], 1),
        ([-1, 1, 0], 1),
        ([0, 1, -1], 1),
        ([-1, 0, 1], 1),
        ([0, -1, 1], 1),
        ([0, 0, 0], 4),
        ([1, 0, 0], 1),
        ([0, 1, 0], 1),
        ([0, 0, 1], 1),
    ])
}

pub fn f18() -> LaurentPoly {
    model(&[
        ([-1, 0, 0], 2),
        ([0, -1, 0], 2),
        ([0, 0, -1], 2),
        ([1, -1, -1], 1),
        ([-1, 1, -1], 1),
        ([-1, -1, 1], 1),
        ([1, -1, 0], 1),
        ([1, 0, -1], 1),
        ([-1, 1, 0], 1),
        ([0, 1, -1], 1),
        ([-1, 0, 1], 1),
        ([0, -1, 1], 1),
        ([0, 0, 0], 3),
        ([1, 0, 0], 1),
        ([0, 1, 0], 1),
        ([0, 0, 1], 1),
    ])
}

pub fn f22() -> LaurentPoly {
    model(&[
        ([1, 1, -1], 1),
        ([0, 1, -1], 1),
        ([1, 0, -1], 1),
        ([1, 0, 0], 1),
        ([0, 1, 0], 1),
        ([0, 0, -1], 1),
        ([0, 0, 0], 4),
        ([-1, 0, 0], 1),
        ([0, -1, 0], 1),
        ([0, 0, 1], 1),
        ([-1, -1, 0], 1),
        ([-1, 0, 1], 1),
        ([0, -1, 1], 1),
        ([-1, -1, 1], 1),
    ])
}
