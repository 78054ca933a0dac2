//! The JSON report written to stdout by every command.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Provenance note for a computed quantity.
pub fn computed(method: &str, precision: f64) -> String {
    format!("computed ({method}, {precision:e})")
}

/// Provenance note for an exact computation.
pub fn computed_exact(method: &str) -> String {
    format!("computed ({method}, exact)")
}

/// Result of one command before serialisation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    /// The arguments after the program name.
    pub command: Vec<String>,
    /// Parsed inputs, echoed.
    pub inputs: Value,
    /// Computed outputs.
    pub outputs: Value,
    /// "configured (...)" or "computed (method, precision)" for each output.
    pub provenance: BTreeMap<String, String>,
    /// Wall time; only present with `--timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl Report {
    /// An empty report for the given argument echo.
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            inputs: Value::Null,
            outputs: Value::Null,
            provenance: BTreeMap::new(),
            wall_time_seconds: None,
        }
    }

    /// Serialises with sorted keys; `indent = 0` gives a single line.
    pub fn to_json(&self, indent: usize) -> String {
        render(&serde_json::to_value(self).expect("report is serialisable"), indent)
    }
}

/// Renders a JSON value with sorted keys and the given indentation width.
pub fn render(value: &Value, indent: usize) -> String {
    if indent == 0 {
        return serde_json::to_string(value).expect("value is serialisable");
    }
    let pad = " ".repeat(indent);
    let mut buf = Vec::new();
    let formatter = serde_json::ser::PrettyFormatter::with_indent(pad.as_bytes());
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, formatter);
    value.serialize(&mut ser).expect("value is serialisable");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Converts any serialisable value to JSON, whose objects have sorted keys.
pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("value is serialisable")
}
