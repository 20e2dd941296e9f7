use serde::Serialize;
use serde_json::{json, Value};
use strongpoly_core::verdict::{Status, Verdict};
use strongpoly_core::Error;

/// Outcome of one command before it is printed.
pub struct Outcome {
    pub status: &'static str,
    pub exit_code: i32,
    pub result: Value,
}

impl Outcome {
    pub fn success(result: Value) -> Self {
        Outcome { status: "SUCCESS", exit_code: 0, result }
    }

    /// A certificate that did not go through.
    pub fn failed(result: Value) -> Self {
        Outcome { status: "FAILED", exit_code: 1, result }
    }

    pub fn checked(ok: bool, result: Value) -> Self {
        if ok {
            Self::success(result)
        } else {
            Self::failed(result)
        }
    }

    pub fn verdict(v: &Verdict, mut result: Value) -> Self {
        result["verdict"] = serde_json::to_value(v).expect("verdicts serialize");
        let (status, exit_code) = match v.status {
            Status::Proved => ("PROVED", 0),
            Status::Refuted => ("REFUTED", 1),
            Status::Undecided if v.resource_exhausted => ("UNDECIDED", 4),
            Status::Undecided => ("UNDECIDED", 2),
        };
        Outcome { status, exit_code, result }
    }

    pub fn error(e: &Error) -> Self {
        let (status, exit_code) = match e {
            Error::ResourceExhausted(_) => ("RESOURCE_EXHAUSTED", 4),
            _ => ("INPUT_ERROR", 3),
        };
        let mut err = json!({ "kind": error_kind(e), "message": e.to_string() });
        if let Error::Parse(p) = e {
            err["line"] = p.line.into();
            err["column"] = p.column.into();
        }
        Outcome { status, exit_code, result: json!({ "error": err }) }
    }

    pub fn usage(message: String) -> Self {
        Outcome {
            status: "INPUT_ERROR",
            exit_code: 3,
            result: json!({ "error": { "kind": "usage", "message": message } }),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::ResourceExhausted(_) => "resource",
        Error::Constraint(_) => "constraint",
        Error::Precondition(_) => "precondition",
        Error::NegativeExponent => "negative-exponent",
        Error::ZeroPolynomial | Error::UnitInput(_) | Error::ConstantInput => "degenerate-input",
        _ => "invalid-input",
    }
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    status: &'a str,
    exit_code: i32,
    result: &'a Value,
    timing: Timing,
}

pub fn to_json(command: &str, o: &Outcome, elapsed_ms: f64) -> String {
    let r = Report { command, status: o.status, exit_code: o.exit_code, result: &o.result, timing: Timing { elapsed_ms } };
    serde_json::to_string_pretty(&r).expect("reports serialize")
}

/// `key: value` lines, nested keys joined with dots.
pub fn to_text(command: &str, o: &Outcome) -> String {
    let mut out = format!("command: {command}\nstatus: {}\n", o.status);
    flatten("", &o.result, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::Null => {}
        _ => out.push_str(&format!("{prefix}: {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
