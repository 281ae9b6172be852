//! Line-oriented `name=value` parser shared by key files and grid configs.
//!
//! Blank lines and `#` comments are ignored. Grid configs additionally use
//! `[section]` headers; entries before the first header belong to the
//! anonymous root section `""`.

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub line: usize,
    pub name: String,
    pub entries: Vec<Entry>,
}

pub fn parse_sections(text: &str, path: &Path) -> Result<Vec<Section>> {
    let mut sections = vec![Section {
        line: 0,
        name: String::new(),
        entries: Vec::new(),
    }];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| Error::Config {
                path: path.to_path_buf(),
                line,
                detail: "unterminated section header".into(),
            })?;
            sections.push(Section {
                line,
                name: name.trim().to_string(),
                entries: Vec::new(),
            });
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| Error::Config {
            path: path.to_path_buf(),
            line,
            detail: format!("expected name=value, got {trimmed:?}"),
        })?;
        sections
            .last_mut()
            .expect("root section always present")
            .entries
            .push(Entry {
                line,
                key: key.trim().to_string(),
                value: value.trim().to_string(),
            });
    }
    Ok(sections)
}

/// Parses a sectionless file; any `[section]` header is an error.
pub fn parse_flat(text: &str, path: &Path) -> Result<Vec<Entry>> {
    let sections = parse_sections(text, path)?;
    if sections.len() > 1 {
        return Err(Error::Config {
            path: path.to_path_buf(),
            line: sections[1].line,
            detail: format!("unexpected section [{}]", sections[1].name),
        });
    }
    Ok(sections.into_iter().next().unwrap().entries)
}
