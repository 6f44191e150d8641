//! `<coeff> : <e1> <e2> ... <en>`, one term per line, with `#` comments.

use super::{LaurentError, LaurentPoly, Monomial};
use crate::text::{content_lines, parse_int_token, parse_rational_token, ParseError};
use std::fmt;
use std::str::FromStr;

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in self.terms() {
            write!(f, "{c} :")?;
            for e in m.exponents() {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parses the term-per-line format. The dimension is taken from the
    /// first term; an input with no terms is rejected.
    pub fn parse(input: &str) -> Result<LaurentPoly, LaurentError> {
        let mut dim = None;
        let mut terms = Vec::new();
        for line in content_lines(input) {
            let toks = line.tokens();
            let Some(colon) = toks.iter().position(|t| t.text == ":") else {
                return Err(line.error(1, "expected `<coeff> : <exponents>`").into());
            };
            if colon != 1 {
                return Err(line.error(1, "expected a single coefficient before `:`").into());
            }
            let coeff = parse_rational_token(&line, toks[0])?;
            let exps = toks[colon + 1..]
                .iter()
                .map(|&t| parse_int_token::<i64>(&line, t))
                .collect::<Result<Vec<_>, ParseError>>()?;
            match dim {
                None if exps.is_empty() => {
                    return Err(line.error(toks[colon].column, "missing exponents").into())
                }
                None => dim = Some(exps.len()),
                Some(d) if d != exps.len() => {
                    return Err(line
                        .error(toks[colon].column, format!("expected {d} exponents, found {}", exps.len()))
                        .into())
                }
                _ => {}
            }
            terms.push((Monomial::from(exps), coeff));
        }
        let dim = dim.ok_or(LaurentError::Empty)?;
        LaurentPoly::from_terms(dim, terms)
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LaurentPoly::parse(s)
    }
}
