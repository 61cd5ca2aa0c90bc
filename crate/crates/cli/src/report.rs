//! The report every command prints, in JSON or as a plain table.

use hquat::{Error, LaurentData64, Quat};
use serde_json::{json, Map, Value};

/// Quaternion as a 12-significant-digit literal.
pub fn q(v: Quat) -> Value {
    Value::String(v.to_string())
}

pub fn laurent_json(d: &LaurentData64) -> Value {
    json!({
        "center": q(d.center),
        "axis": q(d.axis),
        "radius": d.radius,
        "a": d.a.iter().copied().map(q).collect::<Vec<_>>(),
        "b": d.b.iter().copied().map(q).collect::<Vec<_>>(),
        "err": d.err,
    })
}

pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub error_estimate: Option<f64>,
    pub n_evaluations: Option<usize>,
    pub wall_time_ms: f64,
    /// Present only for check commands.
    pub pass: Option<bool>,
    pub error: Option<Value>,
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: Map::new(),
            result: Value::Null,
            error_estimate: None,
            n_evaluations: None,
            wall_time_ms: 0.0,
            pass: None,
            error: None,
        }
    }

    pub fn input(&mut self, key: &str, value: Value) -> &mut Self {
        self.inputs.insert(key.into(), value);
        self
    }

    pub fn set_error(&mut self, e: &Error) {
        self.error = Some(json!({ "kind": error_kind(e), "message": e.to_string() }));
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("inputs".into(), Value::Object(self.inputs.clone()));
        if let Some(err) = &self.error {
            out.insert("error".into(), err.clone());
        } else {
            out.insert("result".into(), self.result.clone());
        }
        out.insert("error_estimate".into(), json!(self.error_estimate));
        out.insert("n_evaluations".into(), json!(self.n_evaluations));
        out.insert("wall_time_ms".into(), json!(self.wall_time_ms));
        if let Some(pass) = self.pass {
            out.insert("pass".into(), json!(pass));
        }
        Value::Object(out)
    }

    pub fn print_human(&self) {
        println!("command: {}", self.command);
        for (k, v) in &self.inputs {
            println!("  {k:<10} {}", plain(v));
        }
        if let Some(err) = &self.error {
            println!("error: {} ({})", plain(&err["message"]), plain(&err["kind"]));
            return;
        }
        if let Some(rows) = self.result.get("rows").and_then(Value::as_array) {
            println!("{:<6} {:<12} {:>12} {:>10}  case", "", "suite", "measured", "tol");
            for r in rows {
                let status = if r["pass"] == json!(true) { "PASS" } else { "FAIL" };
                println!(
                    "{status:<6} {:<12} {:>12} {:>10}  {}",
                    plain(&r["suite"]),
                    fmt_num(&r["measured"]),
                    fmt_num(&r["tolerance"]),
                    plain(&r["case"])
                );
                if let Some(e) = r["error"].as_str() {
                    println!("       error: {e}");
                }
            }
        } else if let Value::Object(map) = &self.result {
            for (k, v) in map {
                match v {
                    Value::Array(items) if items.len() > 4 || k == "a" || k == "b" => {
                        println!("{k}:");
                        let first = if k == "b" { 1 } else { 0 };
                        for (n, item) in items.iter().enumerate() {
                            println!("  [{:>2}] {}", n + first, plain(item));
                        }
                    }
                    _ => println!("{k}: {}", plain(v)),
                }
            }
        }
        if let Some(e) = self.error_estimate {
            println!("error_estimate: {e:.3e}");
        }
        if let Some(n) = self.n_evaluations {
            println!("n_evaluations: {n}");
        }
        if let Some(pass) = self.pass {
            println!("result: {}", if pass { "PASS" } else { "FAIL" });
        }
        println!("wall_time_ms: {:.1}", self.wall_time_ms);
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(_) => fmt_num(v),
        other => other.to_string(),
    }
}

fn fmt_num(v: &Value) -> String {
    match v.as_f64() {
        Some(x) if x != 0.0 && (x.abs() < 1e-3 || x.abs() >= 1e6) => format!("{x:.3e}"),
        Some(x) if x.fract() == 0.0 => format!("{x}"),
        Some(x) => format!("{x:.6}"),
        None => v.to_string(),
    }
}
