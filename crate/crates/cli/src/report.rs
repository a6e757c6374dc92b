use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "floer-report/1";

pub const OK: u8 = 0;
pub const INVALID: u8 = 1;
pub const VIOLATION: u8 = 2;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: String,
    pub flags: Option<Value>,
    pub payload: Value,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub exit_code: u8,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Report {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            input: input.to_string(),
            flags: None,
            payload: Value::Null,
            warnings: Vec::new(),
            exit_code: OK,
        }
    }

    pub fn fail(mut self, code: u8, message: impl Into<String>) -> Report {
        self.payload = serde_json::json!({ "error": message.into() });
        self.exit_code = code;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.input);
        if let Some(f) = &self.flags {
            flatten("flags", f, &mut out);
        }
        flatten("", &self.payload, &mut out);
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, v) in a.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Null => {}
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}
