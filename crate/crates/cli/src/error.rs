use thiserror::Error;

/// Failures that stop a command before any verdict is produced.
///
/// All of them map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },

    /// Input that does not fit the schema, located by a JSON pointer.
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("unknown example id {id:?}; known ids: {}", catalog.join(", "))]
    UnknownExampleId { id: String, catalog: Vec<String> },

    #[error(transparent)]
    Core(#[from] insertion_core::Error),

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn schema(pointer: impl Into<String>, message: impl ToString) -> Self {
        CliError::Schema { pointer: pointer.into(), message: message.to_string() }
    }
}

/// Parses `text` as `T`, reporting the failing location as a JSON pointer.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = json_pointer(e.path());
        CliError::schema(pointer, e.into_inner())
    })
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", escape(key))),
            Segment::Enum { variant } => out.push_str(&format!("/{}", escape(variant))),
            Segment::Unknown => {}
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, serde::Deserialize)]
    #[allow(dead_code)]
    struct Doc {
        items: Vec<std::collections::BTreeMap<String, u8>>,
    }

    #[test]
    fn pointers_follow_the_failing_value() {
        let e = parse_json::<Doc>(r#"{"items": [{"a": 1}, {"b/c": 300}]}"#).unwrap_err();
        assert!(matches!(e, CliError::Schema { ref pointer, .. } if pointer == "/items/1/b~1c"), "{e}");
    }

    #[test]
    fn root_errors_point_at_the_root() {
        let e = parse_json::<Doc>("[]").unwrap_err();
        assert!(matches!(e, CliError::Schema { ref pointer, .. } if pointer == "/"), "{e}");
    }
}
