//! The query file schema: one surface, many queries. JSON is the canonical
//! format; TOML files with the same field layout are accepted as well.

use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    K3,
    Enriques,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Validate,
    Nef,
    Ample,
    Spanned,
    Kva,
    Kspanned,
    Birkva,
    Clifford,
    Gonality,
    Exceptional,
    Phi,
    Kmax,
    Scan,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Validate => "validate",
            Op::Nef => "nef",
            Op::Ample => "ample",
            Op::Spanned => "spanned",
            Op::Kva => "kva",
            Op::Kspanned => "kspanned",
            Op::Birkva => "birkva",
            Op::Clifford => "clifford",
            Op::Gonality => "gonality",
            Op::Exceptional => "exceptional",
            Op::Phi => "phi",
            Op::Kmax => "kmax",
            Op::Scan => "scan",
        }
    }

    pub fn requires_class(self) -> bool {
        self != Op::Validate
    }

    pub fn requires_k(self) -> bool {
        matches!(self, Op::Kva | Op::Kspanned | Op::Birkva)
    }

    /// `scan` accepts an optional k as the upper bound of the sweep.
    pub fn accepts_k(self) -> bool {
        self.requires_k() || self == Op::Scan
    }

    pub fn supported_on(self, kind: Kind) -> bool {
        match kind {
            Kind::K3 => !matches!(self, Op::Phi | Op::Kmax),
            Kind::Enriques => !matches!(
                self,
                Op::Ample | Op::Birkva | Op::Clifford | Op::Gonality | Op::Exceptional
            ),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    pub op: Op,
    #[serde(rename = "L", default)]
    pub l: Option<Vec<i64>>,
    #[serde(default)]
    pub k: Option<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryFile {
    pub kind: Kind,
    #[serde(default)]
    pub gram: Option<Vec<Vec<i64>>>,
    pub h: Vec<i64>,
    #[serde(default)]
    pub nodal_classes: Vec<Vec<i64>>,
    pub queries: Vec<QuerySpec>,
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("toml: {0}")]
    Toml(#[from] toml::de::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    Toml,
}

pub fn parse(text: &str, format: InputFormat) -> Result<QueryFile, ParseError> {
    Ok(match format {
        InputFormat::Json => serde_json::from_str(text)?,
        InputFormat::Toml => toml::from_str(text)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_json() {
        let file = parse(
            r#"{"kind": "k3", "gram": [[4]], "h": [1],
                "queries": [{"op": "kva", "L": [1], "k": 1}]}"#,
            InputFormat::Json,
        )
        .unwrap();
        assert_eq!(file.kind, Kind::K3);
        assert_eq!(file.queries[0].op, Op::Kva);
        assert_eq!(file.queries[0].k, Some(1));
    }

    #[test]
    fn parses_toml() {
        let file = parse(
            r#"
kind = "enriques"
h = [1, 1, 0, 0, 0, 0, 0, 0, 0, 0]

[[queries]]
op = "kmax"
L = [2, 2, 0, 0, 0, 0, 0, 0, 0, 0]
"#,
            InputFormat::Toml,
        )
        .unwrap();
        assert_eq!(file.kind, Kind::Enriques);
        assert_eq!(file.queries[0].op, Op::Kmax);
    }

    #[test]
    fn rejects_unknown_fields_and_ops() {
        assert!(parse(
            r#"{"kind": "k3", "gram": [[4]], "h": [1], "queries": [], "extra": 1}"#,
            InputFormat::Json
        )
        .is_err());
        assert!(parse(
            r#"{"kind": "k3", "gram": [[4]], "h": [1],
                "queries": [{"op": "frobnicate", "L": [1]}]}"#,
            InputFormat::Json
        )
        .is_err());
    }
}
