use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// An ordered list of keys. In text form a list of strings or objects becomes
/// one line per item under the same key, so an empty list prints nothing;
/// a list of numbers stays on one line.
#[derive(Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.fields.push((key.to_string(), v));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let map: Map<String, Value> = self.fields.iter().cloned().collect();
                let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("json");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for (k, v) in &self.fields {
                    match v {
                        Value::Array(items) if items.iter().any(|i| i.is_string() || i.is_object()) || items.is_empty() => {
                            for item in items {
                                s.push_str(&format!("{k}: {}\n", inline(item)));
                            }
                        }
                        _ => s.push_str(&format!("{k}: {}\n", inline(v))),
                    }
                }
                s
            }
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(inline).collect::<Vec<_>>().join(","),
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}={}", inline(v))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_lines() {
        let mut r = Report::new();
        r.put("verdict", "decomposable").put("level", Some(1)).put("none", None::<i64>);
        r.put("graph", vec![serde_json::json!({"faces": [1, 4], "level": 0})]);
        r.put("empty", Vec::<i64>::new()).put("shifts", [0, 2]);
        assert_eq!(
            r.render(Format::Text),
            "verdict: decomposable\nlevel: 1\nnone: none\ngraph: faces=1,4 level=0\nshifts: 0,2\n"
        );
        let v: Value = serde_json::from_str(&r.render(Format::Structured)).unwrap();
        assert_eq!(v["level"], 1);
        assert_eq!(v["empty"], serde_json::json!([]));
    }
}
