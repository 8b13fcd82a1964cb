use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Output of one command: human-readable lines, machine-readable data and
/// pass/fail verdicts.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub lines: Vec<String>,
    pub data: Map<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub elapsed: Duration,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.data.insert(key.to_string(), v.into());
    }

    pub fn verdict(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Looks up `a/b/c` in the data; arrays accept numeric segments.
    pub fn get(&self, key: &str) -> Option<&Value> {
        let mut parts = key.split('/');
        let mut cur = self.data.get(parts.next()?)?;
        for p in parts {
            cur = match cur {
                Value::Object(m) => m.get(p)?,
                Value::Array(a) => a.get(p.parse::<usize>().ok()?)?,
                _ => return None,
            };
        }
        Some(cur)
    }

    pub fn render_text(&self, timings: bool) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for v in &self.verdicts {
            let tag = if v.passed { "PASS" } else { "FAIL" };
            if v.detail.is_empty() {
                out.push_str(&format!("{tag} {}\n", v.name));
            } else {
                out.push_str(&format!("{tag} {}: {}\n", v.name, v.detail));
            }
        }
        if timings {
            out.push_str(&format!("elapsed {:.3} ms\n", self.elapsed.as_secs_f64() * 1e3));
        }
        out
    }

    pub fn render_json(&self, timings: bool) -> String {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("data".into(), Value::Object(self.data.clone()));
        m.insert("verdicts".into(), serde_json::to_value(&self.verdicts).expect("verdicts serialize"));
        m.insert("passed".into(), Value::Bool(self.passed()));
        if timings {
            m.insert("elapsed_ms".into(), Value::from(self.elapsed.as_secs_f64() * 1e3));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Renders a JSON value the way expectations are written: strings bare,
/// everything else as compact JSON.
pub fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
