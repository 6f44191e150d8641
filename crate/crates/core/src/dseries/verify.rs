use super::{solve_series, DOperator, OperatorError};
use crate::laurent::{constant_term_series, quartic_compactification_check, LaurentPoly, QuarticReport};
use crate::polytope::origin_in_newton_interior;
use crate::text::KvDocument;
use num_rational::BigRational;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ConfirmedToOrder(usize),
    Mismatch,
}

impl Verdict {
    pub fn label(&self) -> String {
        match self {
            Verdict::ConfirmedToOrder(n) => format!("very-weak-confirmed-to-{n}"),
            Verdict::Mismatch => "mismatch".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonRow {
    pub index: usize,
    pub constant_term: BigRational,
    pub solution: BigRational,
}

impl ComparisonRow {
    pub fn matches(&self) -> bool {
        self.constant_term == self.solution
    }
}

/// Outcome of comparing `Phi_f` against the `a_0 = 1` solution of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub order: usize,
    pub operator_order: usize,
    pub operator_tdeg: usize,
    pub rows: Vec<ComparisonRow>,
    pub first_mismatch: Option<usize>,
    pub quartic: Option<QuarticReport>,
    pub newton_interior: bool,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn is_confirmed(&self) -> bool {
        matches!(self.verdict, Verdict::ConfirmedToOrder(_))
    }

    pub fn note(&self) -> String {
        format!(
            "agreement through t^{} fixes the annihilating operator within order {} and t-degree {} only when the order exceeds the fitting bound {}",
            self.order,
            self.operator_order,
            self.operator_tdeg,
            (self.operator_order + 1) * (self.operator_tdeg + 1) + self.operator_tdeg
        )
    }

    pub fn to_kv(&self) -> KvDocument {
        let mut doc = KvDocument::new();
        doc.push("verdict", self.verdict.label());
        doc.push("order", self.order);
        doc.push("first_mismatch", self.first_mismatch.map_or("none".to_string(), |i| i.to_string()));
        if let Some(i) = self.first_mismatch {
            let row = &self.rows[i];
            doc.push("mismatch.constant_term", &row.constant_term);
            doc.push("mismatch.solution", &row.solution);
        }
        match &self.quartic {
            Some(q) => {
                doc.push("quartic.passes", q.passes);
                doc.push("quartic.cleared_degree", q.cleared_degree);
                let shift: Vec<String> = q.shift.iter().map(ToString::to_string).collect();
                doc.push("quartic.shift", shift.join(" "));
            }
            None => doc.push("quartic.passes", "n/a"),
        }
        doc.push("newton_interior", self.newton_interior);
        doc.push("operator.order", self.operator_order);
        doc.push("operator.tdeg", self.operator_tdeg);
        for row in &self.rows {
            doc.push(format!("phi.{}", row.index), &row.constant_term);
            doc.push(format!("a.{}", row.index), &row.solution);
        }
        doc.push("note", self.note());
        doc
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let w = self
            .rows
            .iter()
            .map(|r| r.constant_term.to_string().len().max(r.solution.to_string().len()))
            .max()
            .unwrap_or(1)
            .max(6);
        let _ = writeln!(out, "{:>4}  {:>w$}  {:>w$}  ok", "i", "phi(i)", "a_i", w = w);
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>4}  {:>w$}  {:>w$}  {}",
                r.index,
                r.constant_term.to_string(),
                r.solution.to_string(),
                if r.matches() { "yes" } else { "NO" },
                w = w
            );
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.label());
        if let Some(q) = &self.quartic {
            let _ = writeln!(
                out,
                "compactified degree: {} ({})",
                q.cleared_degree,
                if q.passes { "passes" } else { "fails" }
            );
        }
        let _ = writeln!(out, "origin interior to Newton polytope: {}", self.newton_interior);
        out
    }
}

/// Compares `constant_term_series(f, n)` with `solve_series(op, n)` index by
/// index and attaches the compactification and Newton-interiority checks.
pub fn verify_weak_lg(
    f: &LaurentPoly,
    op: &DOperator,
    n: usize,
) -> Result<VerificationReport, OperatorError> {
    let solution = solve_series(op, n)?;
    let phi = constant_term_series(f, n);
    let rows: Vec<ComparisonRow> = (0..=n)
        .map(|i| ComparisonRow {
            index: i,
            constant_term: phi.coeff(i).clone(),
            solution: solution.coeff(i).clone(),
        })
        .collect();
    let first_mismatch = rows.iter().find(|r| !r.matches()).map(|r| r.index);
    let verdict = match first_mismatch {
        Some(_) => Verdict::Mismatch,
        None => Verdict::ConfirmedToOrder(n),
    };
    Ok(VerificationReport {
        order: n,
        operator_order: op.order(),
        operator_tdeg: op.t_degree(),
        rows,
        first_mismatch,
        quartic: quartic_compactification_check(f).ok(),
        newton_interior: origin_in_newton_interior(f),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn f16_confirmed() {
        let r = verify_weak_lg(&catalog::f16(), &catalog::operator_v16(), 8).unwrap();
        assert_eq!(r.verdict, Verdict::ConfirmedToOrder(8));
        assert!(r.quartic.as_ref().unwrap().passes);
        assert!(r.newton_interior);
        assert_eq!(r.to_kv().get("verdict"), Some("very-weak-confirmed-to-8"));
    }

    #[test]
    fn f22_recorded_operator_mismatch() {
        let r = verify_weak_lg(&catalog::f22(), &catalog::operator_v22_recorded(), 2).unwrap();
        assert_eq!(r.verdict, Verdict::Mismatch);
        assert_eq!(r.first_mismatch, Some(1));
        let row = &r.rows[1];
        assert_eq!(row.constant_term, BigRational::from_integer(4.into()));
        assert_eq!(row.solution, BigRational::new(32.into(), 5.into()));
        let kv = r.to_kv();
        assert_eq!(kv.get("first_mismatch"), Some("1"));
        assert_eq!(kv.get("mismatch.solution"), Some("32/5"));
        assert!(r.to_table().contains("NO"));
    }

    #[test]
    fn linear_polynomial_matches_but_not_interior() {
        let f = LaurentPoly::from_int_terms(3, [([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1)]).unwrap();
        let r = verify_weak_lg(&f, &DOperator::d_power(3), 10).unwrap();
        assert!(r.is_confirmed());
        assert!(!r.newton_interior);
        assert!(!r.quartic.unwrap().passes);
    }

    #[test]
    fn obstruction_propagates() {
        let op = DOperator::from_ints(&[&[-1, 1]]).unwrap();
        assert_eq!(verify_weak_lg(&catalog::f16(), &op, 3), Err(OperatorError::IndicialObstruction { k: 1 }));
    }
}
