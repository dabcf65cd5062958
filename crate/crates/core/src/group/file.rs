//! Line-oriented group definition files.
//!
//! ```text
//! # comment
//! name: S4
//! degree: 4
//! gen: (1,2,3,4)
//! gen: (1,2)
//! ```
//!
//! A catalog file holds several such records separated by blank lines and
//! may add assertion lines: `expect_order:`, `expect_nilpotent:`,
//! `expect_soluble:`, `expect_simple:` (`true`/`false`) and
//! `expect_fitting_height:` (an integer or `none`).

use thiserror::Error;

use super::{FiniteGroup, GroupError};
use crate::perm::{parse_cycles, ParseCyclesError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupFileError {
    #[error("line {line}: expected `key: value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value for `{key}`: {value}")]
    InvalidValue { line: usize, key: String, value: String },
    #[error("line {line}: {source}")]
    Cycles {
        line: usize,
        #[source]
        source: ParseCyclesError,
    },
    #[error("missing `degree:` line")]
    MissingDegree,
    #[error("missing `gen:` line")]
    MissingGenerator,
    #[error("file contains no group definition")]
    Empty,
}

/// Expected properties asserted by catalog records.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expectations {
    pub order: Option<usize>,
    pub nilpotent: Option<bool>,
    pub soluble: Option<bool>,
    pub simple: Option<bool>,
    /// `Some(None)` asserts the group is insoluble (no height).
    pub fitting_height: Option<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDefinition {
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub expect: Expectations,
}

impl GroupDefinition {
    pub fn enumerate(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        let g = FiniteGroup::enumerate_with_cap(&self.generators, self.degree, cap)?;
        Ok(match &self.name {
            Some(name) => g.with_name(name.clone()),
            None => g,
        })
    }
}

/// Parses a single group definition; `expect_*` keys are rejected.
pub fn parse_group_file(text: &str) -> Result<GroupDefinition, GroupFileError> {
    let mut records = parse_records(text, false)?;
    match records.len() {
        0 => Err(GroupFileError::Empty),
        1 => Ok(records.remove(0)),
        // a blank line inside a single-group file: treat as one record
        _ => parse_record(&text.lines().enumerate().collect::<Vec<_>>(), false),
    }
}

/// Parses a catalog file: blank-line separated records with `expect_*` lines.
pub fn parse_catalog_file(text: &str) -> Result<Vec<GroupDefinition>, GroupFileError> {
    parse_records(text, true)
}

fn parse_records(text: &str, allow_expect: bool) -> Result<Vec<GroupDefinition>, GroupFileError> {
    let mut records = Vec::new();
    let mut current: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if has_content(&current) {
                records.push(parse_record(&current, allow_expect)?);
            }
            current.clear();
        } else {
            current.push((i, line));
        }
    }
    if has_content(&current) {
        records.push(parse_record(&current, allow_expect)?);
    }
    Ok(records)
}

fn has_content(lines: &[(usize, &str)]) -> bool {
    lines.iter().any(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    })
}

fn parse_record(lines: &[(usize, &str)], allow_expect: bool) -> Result<GroupDefinition, GroupFileError> {
    let mut name = None;
    let mut degree: Option<usize> = None;
    let mut gens: Vec<(usize, String)> = Vec::new();
    let mut expect = Expectations::default();

    for &(idx, raw) in lines {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once(':').ok_or(GroupFileError::Syntax { line })?;
        let key = key.trim();
        let value = value.trim();
        let invalid = || GroupFileError::InvalidValue {
            line,
            key: key.to_string(),
            value: value.to_string(),
        };
        let duplicate = || GroupFileError::DuplicateKey {
            line,
            key: key.to_string(),
        };
        match key {
            "name" => {
                if name.replace(value.to_string()).is_some() {
                    return Err(duplicate());
                }
            }
            "degree" => {
                let d: usize = value.parse().map_err(|_| invalid())?;
                if d == 0 {
                    return Err(invalid());
                }
                if degree.replace(d).is_some() {
                    return Err(duplicate());
                }
            }
            "gen" => gens.push((line, value.to_string())),
            _ if allow_expect && key.starts_with("expect_") => {
                let slot_taken = match key {
                    "expect_order" => expect.order.replace(value.parse().map_err(|_| invalid())?).is_some(),
                    "expect_nilpotent" => expect
                        .nilpotent
                        .replace(parse_bool(value).ok_or_else(invalid)?)
                        .is_some(),
                    "expect_soluble" => expect.soluble.replace(parse_bool(value).ok_or_else(invalid)?).is_some(),
                    "expect_simple" => expect.simple.replace(parse_bool(value).ok_or_else(invalid)?).is_some(),
                    "expect_fitting_height" => {
                        let h = if value == "none" {
                            None
                        } else {
                            Some(value.parse().map_err(|_| invalid())?)
                        };
                        expect.fitting_height.replace(h).is_some()
                    }
                    _ => {
                        return Err(GroupFileError::UnknownKey {
                            line,
                            key: key.to_string(),
                        })
                    }
                };
                if slot_taken {
                    return Err(duplicate());
                }
            }
            _ => {
                return Err(GroupFileError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
    }

    let degree = degree.ok_or(GroupFileError::MissingDegree)?;
    if gens.is_empty() {
        return Err(GroupFileError::MissingGenerator);
    }
    let generators = gens
        .into_iter()
        .map(|(line, text)| parse_cycles(&text, degree).map_err(|source| GroupFileError::Cycles { line, source }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupDefinition {
        name,
        degree,
        generators,
        expect,
    })
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" => Some(true),
        "false" => Some(false),
        _ => None,
    }
}
