//! Input file formats: the complex description consumed by the CLI and the
//! user-supplied cosine table.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A complex description: `{"name": ..., "maximal_simplices": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexFile {
    pub name: String,
    pub maximal_simplices: Vec<Vec<u32>>,
}

pub fn parse_complex_file(text: &str) -> Result<ComplexFile, serde_json::Error> {
    serde_json::from_str(text)
}

#[derive(Debug, Error, PartialEq)]
pub enum TableParseError {
    #[error("line {0}: expected `vertex_id cos_value`, got {1:?}")]
    BadLine(usize, String),
    #[error("line {0}: cosine {1} outside [-1, 1]")]
    OutOfRange(usize, f64),
    #[error("line {0}: duplicate vertex {1}")]
    DuplicateVertex(usize, u32),
}

/// Parses a cosine table: one `vertex_id value` pair per line, `#` comments
/// and blank lines ignored.
pub fn parse_cos_table(text: &str) -> Result<HashMap<u32, f64>, TableParseError> {
    let mut table = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(id_str), Some(value_str), None) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(TableParseError::BadLine(line_no, raw.to_string()));
        };
        let id: u32 = id_str
            .parse()
            .map_err(|_| TableParseError::BadLine(line_no, raw.to_string()))?;
        let value: f64 = value_str
            .parse()
            .map_err(|_| TableParseError::BadLine(line_no, raw.to_string()))?;
        if !(-1.0..=1.0).contains(&value) {
            return Err(TableParseError::OutOfRange(line_no, value));
        }
        if table.insert(id, value).is_some() {
            return Err(TableParseError::DuplicateVertex(line_no, id));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_complex_file() {
        let text = r#"{"name": "tri", "maximal_simplices": [[0, 1, 2]]}"#;
        let file = parse_complex_file(text).unwrap();
        assert_eq!(file.name, "tri");
        assert_eq!(file.maximal_simplices, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn rejects_malformed_json() {
        assert!(parse_complex_file("{\"name\": 3}").is_err());
    }

    #[test]
    fn parses_cos_table_with_comments() {
        let text = "# vertex cosine\n0 0.4\n1 -0.25 # inline\n\n2 0\n";
        let table = parse_cos_table(text).unwrap();
        assert_eq!(table.len(), 3);
        assert_eq!(table[&1], -0.25);
    }

    #[test]
    fn cos_table_errors() {
        assert!(matches!(
            parse_cos_table("0 0.4 extra").unwrap_err(),
            TableParseError::BadLine(1, _)
        ));
        assert_eq!(
            parse_cos_table("0 1.5").unwrap_err(),
            TableParseError::OutOfRange(1, 1.5)
        );
        assert_eq!(
            parse_cos_table("0 0.1\n0 0.2").unwrap_err(),
            TableParseError::DuplicateVertex(2, 0)
        );
    }
}
