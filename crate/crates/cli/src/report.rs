//! `KEY=VALUE` reports with a JSON mirror.

use std::fmt;

/// One output line: ordered key/value pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Line(pub Vec<(String, String)>);

impl Line {
    pub fn new() -> Line {
        Line(Vec::new())
    }

    pub fn kv(mut self, k: &str, v: impl ToString) -> Line {
        self.0.push((k.to_string(), v.to_string()));
        self
    }

    pub fn push(&mut self, k: &str, v: impl ToString) {
        self.0.push((k.to_string(), v.to_string()));
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Values with whitespace are quoted; newlines are escaped so every
/// report line stays on one physical line.
fn render_value(v: &str) -> String {
    let escaped = v.replace('\\', "\\\\").replace('\n', "\\n");
    if escaped.is_empty() || escaped.chars().any(char::is_whitespace) || escaped.contains('"') {
        format!("\"{}\"", escaped.replace('"', "\\\""))
    } else {
        escaped
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={}", render_value(v))).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Line {
    pub fn to_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .0
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        serde_json::Value::Object(map).to_string()
    }
}

/// A finished command: its lines and exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<Line>,
    pub code: i32,
}

impl Report {
    pub fn line(&mut self, l: Line) {
        self.lines.push(l);
    }

    /// Marks a falsified verdict; never lowers an input-error code.
    pub fn falsify(&mut self) {
        self.code = self.code.max(1);
    }

    pub fn render(&self, json: bool) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&if json { l.to_json() } else { l.to_string() });
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting_and_escaping() {
        let l = Line::new().kv("A", "x").kv("B", "TOP | 0 BOT").kv("C", "a\nb");
        assert_eq!(l.to_string(), "A=x B=\"TOP | 0 BOT\" C=a\\nb");
    }

    #[test]
    fn json_keeps_key_order() {
        let l = Line::new().kv("Z", 1).kv("A", "no");
        assert_eq!(l.to_json(), r#"{"Z":"1","A":"no"}"#);
    }
}
