use serde_json::{json, Value};

use crate::config::COMMANDS;

pub const SCHEMA_VERSION: u64 = 1;

/// A failed run: exit code plus the machine-readable error.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub exit: i32,
    pub code: String,
    pub message: String,
    pub context: Value,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Failure { exit: 1, code: "invalid_config".into(), message: message.into(), context: json!({}) }
    }

    pub fn with_context(mut self, context: Value) -> Self {
        self.context = context;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "error": {"code": self.code, "message": self.message, "context": self.context},
        })
    }
}

impl From<berkovich::Error> for Failure {
    fn from(e: berkovich::Error) -> Self {
        Failure { exit: 1, code: e.code().into(), message: e.to_string(), context: json!({}) }
    }
}

/// What a command produced.
pub struct Outcome {
    pub result: Value,
    /// Header and rows, for commands with a tabular form.
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    /// Every invariant the command checks held.
    pub holds: bool,
}

/// Keys every result of a command carries.
fn required(command: &str) -> &'static [&'static str] {
    match command {
        "phi" => &["knots", "slopes", "values", "samples", "convex"],
        "julia-ray" => &["breakpoints", "ray_point"],
        "iterate" => &["orbit"],
        "annuli" => &["steps"],
        "enumerate" => &["maps", "summary"],
        "probe" => &["mode"],
        "cantor" => &["counts", "separation_level", "holds"],
        "fast-arc" => &["arc", "segment_degrees", "c", "bound_holds"],
        "degree-check" => &["targets", "all_hold"],
        "classify" => &["kind"],
        _ => &[],
    }
}

/// Checks a report against the published layout.
pub fn validate(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report must be an object")?;
    let keys = ["schema_version", "command", "field", "seed", "holds", "result"];
    if let Some(k) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(format!("unexpected key {k}"));
    }
    if obj.get("schema_version").and_then(|s| s.as_u64()) != Some(SCHEMA_VERSION) {
        return Err("wrong schema_version".into());
    }
    let command = obj.get("command").and_then(|c| c.as_str()).ok_or("missing command")?;
    if !COMMANDS.contains(&command) {
        return Err(format!("unknown command {command}"));
    }
    obj.get("field").and_then(|f| f.as_object()).ok_or("missing field")?;
    obj.get("seed").and_then(|s| s.as_u64()).ok_or("missing seed")?;
    obj.get("holds").and_then(|h| h.as_bool()).ok_or("missing holds")?;
    let result = obj.get("result").and_then(|r| r.as_object()).ok_or("missing result")?;
    match required(command).iter().find(|k| !result.contains_key(**k)) {
        Some(k) => Err(format!("result of {command} lacks {k}")),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Value {
        json!({
            "schema_version": 1, "command": "iterate", "field": {"kind": "laurent-q"},
            "seed": 0, "holds": true, "result": {"orbit": ["1"]},
        })
    }

    #[test]
    fn accepts_the_published_layout() {
        assert_eq!(validate(&sample()), Ok(()));
    }

    #[test]
    fn rejects_drift() {
        let mut v = sample();
        v["extra"] = json!(1);
        assert!(validate(&v).is_err());
        let mut v = sample();
        v["schema_version"] = json!(2);
        assert!(validate(&v).is_err());
        let mut v = sample();
        v["result"] = json!({});
        assert_eq!(validate(&v), Err("result of iterate lacks orbit".into()));
    }

    #[test]
    fn errors_serialize_with_context() {
        let f = Failure::config("nope").with_context(json!({"command": "phi"}));
        assert_eq!(f.exit, 1);
        assert_eq!(f.to_json()["error"]["context"]["command"], "phi");
    }
}
