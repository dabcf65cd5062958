//! The output envelope and its two renderings.
//!
//! Every command produces one `serde_json::Value` of results. `--json` prints
//! the whole envelope; text mode prints the results through [`render_text`].

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub argv: Vec<String>,
    pub input_digest: String,
    pub results: Value,
    pub timing: Timing,
    pub version: &'static str,
}

/// SHA-256 over the inputs, each prefixed by its length.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object() && !i.is_array()),
        Value::Object(map) => map.is_empty(),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(",")),
        Value::Object(_) => "{}".to_string(),
        other => other.to_string(),
    }
}

/// Objects print their flat fields as `key=value` on one line, then each
/// nested field as a `key:` header with its contents indented below.
pub fn render_text(v: &Value) -> String {
    let mut lines = Vec::new();
    render(v, 0, &mut lines);
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

fn render(v: &Value, indent: usize, lines: &mut Vec<String>) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            let flat: Vec<String> = map
                .iter()
                .filter(|(_, v)| is_flat(v))
                .map(|(k, v)| format!("{k}={}", scalar(v)))
                .collect();
            if !flat.is_empty() {
                lines.push(format!("{pad}{}", flat.join(" ")));
            }
            for (k, v) in map.iter().filter(|(_, v)| !is_flat(v)) {
                lines.push(format!("{pad}{k}:"));
                render(v, indent + 2, lines);
            }
        }
        Value::Array(items) => {
            for item in items {
                render(item, indent, lines);
            }
        }
        other => lines.push(format!("{pad}{}", scalar(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering() {
        let v = json!({"order": 24, "soluble": true, "fitting_height": null, "primes": [2, 3],
                       "series": {"derived": [24, 12, 4, 1]}, "parts": [{"case": "a"}, {"case": "b"}]});
        assert_eq!(
            render_text(&v),
            "order=24 soluble=true fitting_height=none primes=[2,3]\nseries:\n  derived=[24,12,4,1]\nparts:\n  case=a\n  case=b\n"
        );
    }

    #[test]
    fn digest_is_stable_and_length_prefixed() {
        assert_eq!(digest(&[b"ab", b"c"]), digest(&[b"ab", b"c"]));
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert_eq!(digest(&[]).len(), 64);
    }
}
