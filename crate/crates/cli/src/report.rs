use mirrorci::exactalg::format_rational;
use mirrorci::{BigRational, TruncSeries};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Serialize, Debug)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub spec: Value,
    pub order: usize,
    pub seed: u64,
    pub results: Value,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(command: &str, spec: Value, order: usize, seed: u64) -> Self {
        Report { command: command.into(), spec, order, seed, results: json!({}), assertions: Vec::new() }
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results[key] = value;
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} {} order={} seed={}\n", self.command, self.spec["label"].as_str().unwrap_or(""), self.order, self.seed);
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                out.push_str(&format!("  {k}: {}\n", flatten(v)));
            }
        }
        for a in &self.assertions {
            let mark = if a.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{mark}] {}: {}\n", a.name, a.detail));
        }
        out
    }
}

fn flatten(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(flatten).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => {
            let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}={}", flatten(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

pub fn rational(q: &BigRational) -> Value {
    Value::String(format_rational(q))
}

pub fn series(s: &TruncSeries<BigRational>) -> Value {
    Value::Array(s.coeffs().iter().map(rational).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use mirrorci::exactalg::rat;

    #[test]
    fn one_failed_assertion_fails_the_report() {
        let mut r = Report::new("lines", json!({ "label": "(3;3)" }), 1, 0);
        r.check("a", true, "");
        assert!(r.passed());
        r.check("b", false, "mismatch");
        assert!(!r.passed());
        assert!(r.to_table().contains("[FAIL] b: mismatch"));
    }

    #[test]
    fn rationals_are_exact_strings() {
        assert_eq!(rational(&rat(-6, 4)), json!("-3/2"));
        assert_eq!(rational(&rat(5, 1)), json!("5/1"));
    }
}
