//! Record files: `[meta]` key/value lines, `[operator]` and
//! `[derived-operator]` in operator format, `[model]` in Laurent format,
//! `[notes]` free text.

use super::{CatalogError, FanoRecord};
use crate::dseries::DOperator;
use crate::laurent::LaurentPoly;
use crate::text::{content_lines, parse_int_token, ParseError, Token};
use std::fmt::Write as _;
use std::path::Path;

const SECTIONS: [&str; 5] = ["meta", "operator", "model", "notes", "derived-operator"];

impl FanoRecord {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[meta]");
        let _ = writeln!(out, "name = {}", self.name);
        let _ = writeln!(out, "genus = {}", self.genus);
        let _ = writeln!(out, "degree = {}", self.degree);
        let _ = writeln!(out, "h0 = {}", self.h0);
        let _ = writeln!(out, "picard_rank = {}", self.picard_rank);
        if let Some(d) = &self.known_discrepancy {
            let _ = writeln!(out, "known-discrepancy = {d}");
        }
        let _ = writeln!(out, "\n[operator]\n{}", self.operator);
        if let Some(m) = &self.model {
            let _ = writeln!(out, "[model]\n{m}");
        }
        if let Some(d) = &self.derived_operator {
            let _ = writeln!(out, "[derived-operator]\n{d}");
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "[notes]");
            for n in &self.notes {
                let _ = writeln!(out, "{n}");
            }
        }
        out
    }

    pub fn parse(input: &str) -> Result<FanoRecord, CatalogError> {
        let raw: Vec<&str> = input.lines().collect();
        // section name per line; header lines themselves belong to none
        let mut owner: Vec<Option<&str>> = vec![None; raw.len()];
        let mut current: Option<&str> = None;
        let mut seen = Vec::new();
        for (i, line) in raw.iter().enumerate() {
            let t = line.trim();
            if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let Some(&known) = SECTIONS.iter().find(|s| **s == name) else {
                    return Err(ParseError::new(i + 1, 1, format!("unknown section [{name}]")).into());
                };
                if seen.contains(&known) {
                    return Err(ParseError::new(i + 1, 1, format!("duplicate section [{name}]")).into());
                }
                seen.push(known);
                current = Some(known);
            } else if current.is_none() && !t.is_empty() && !t.starts_with('#') {
                return Err(ParseError::new(i + 1, 1, "content before the first section").into());
            } else {
                owner[i] = current;
            }
        }
        // Blank out foreign lines so sub-parsers report file line numbers.
        let section = |name: &str| -> Option<String> {
            seen.contains(&name).then(|| {
                raw.iter()
                    .zip(&owner)
                    .map(|(l, o)| if *o == Some(name) { *l } else { "" })
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        };

        let meta = section("meta").ok_or(CatalogError::MissingSection("meta"))?;
        let mut name = None;
        let mut genus = None;
        let mut degree = None;
        let mut h0 = None;
        let mut picard_rank = None;
        let mut known_discrepancy = None;
        for line in content_lines(&meta) {
            let (k, v) = line.text.split_once('=').ok_or_else(|| line.error(1, "expected `key = value`"))?;
            let key = k.trim();
            let value = v.trim();
            let column = line.text.find(value).map_or(1, |c| c + 1);
            let tok = Token { text: value, column };
            match key {
                "name" => name = Some(value.to_string()),
                "genus" => genus = Some(parse_int_token(&line, tok)?),
                "degree" => degree = Some(parse_int_token(&line, tok)?),
                "h0" => h0 = Some(parse_int_token(&line, tok)?),
                "picard_rank" => picard_rank = Some(parse_int_token(&line, tok)?),
                "known-discrepancy" => known_discrepancy = Some(value.to_string()),
                other => return Err(line.error(1, format!("unknown key `{other}`")).into()),
            }
        }

        let operator =
            DOperator::parse(&section("operator").ok_or(CatalogError::MissingSection("operator"))?)?;
        let derived_operator = section("derived-operator").map(|s| DOperator::parse(&s)).transpose()?;
        let model = section("model").map(|s| LaurentPoly::parse(&s)).transpose()?;
        let notes = section("notes")
            .map(|s| content_lines(&s).map(|l| l.text.trim().to_string()).collect())
            .unwrap_or_default();

        Ok(FanoRecord {
            name: name.ok_or(CatalogError::MissingKey("name"))?,
            genus: genus.ok_or(CatalogError::MissingKey("genus"))?,
            degree: degree.ok_or(CatalogError::MissingKey("degree"))?,
            h0: h0.ok_or(CatalogError::MissingKey("h0"))?,
            picard_rank: picard_rank.ok_or(CatalogError::MissingKey("picard_rank"))?,
            operator,
            model,
            known_discrepancy,
            derived_operator,
            notes,
        })
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<FanoRecord, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
    FanoRecord::parse(&text)
}

pub fn save(record: &FanoRecord, path: impl AsRef<Path>) -> Result<(), CatalogError> {
    let path = path.as_ref();
    std::fs::write(path, record.to_text())
        .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })
}
