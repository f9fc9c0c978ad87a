//! Artifact rendering. Every float goes through [`round`] so that output is a
//! pure function of the configuration.

use serde_json::{Map, Number, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("exponent form parses")
}

/// CSV cell for a float: plain notation for moderate magnitudes, exponent
/// form otherwise.
pub fn cell(x: f64) -> String {
    let r = round(x);
    if r.is_nan() {
        "nan".into()
    } else if r.is_infinite() {
        if r > 0.0 { "inf" } else { "-inf" }.into()
    } else if r == 0.0 || (1e-4..1e15).contains(&r.abs()) {
        format!("{}", r + 0.0)
    } else {
        format!("{r:e}")
    }
}

/// Rounds every number in `v`. Non-finite values become `null`.
pub fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => Number::from_f64(round(x)).map_or(Value::Null, Value::Number),
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        v => v,
    }
}

/// Rows with a fixed header, for commands that support CSV.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Extra `# key: value` lines after the provenance header.
    pub notes: Vec<String>,
}

/// What a command produced, before formatting.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub results: Value,
    pub counterexamples: Vec<Value>,
    pub tolerances: Value,
    pub table: Option<Table>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

pub fn render_json(config: &Value, outcome: &Outcome) -> String {
    let mut doc = Map::new();
    doc.insert("config".into(), config.clone());
    doc.insert("results".into(), outcome.results.clone());
    doc.insert("counterexamples".into(), Value::Array(outcome.counterexamples.clone()));
    doc.insert("tolerances".into(), outcome.tolerances.clone());
    doc.insert("version".into(), Value::String(version().into()));
    let mut s = serde_json::to_string_pretty(&round_value(Value::Object(doc))).expect("json values serialize");
    s.push('\n');
    s
}

pub fn render_csv(config: &Value, table: &Table) -> String {
    let mut out = Vec::new();
    let config = serde_json::to_string(&round_value(config.clone())).expect("json values serialize");
    out.extend_from_slice(format!("# zic-dgr {}\n# config: {config}\n", version()).as_bytes());
    for n in &table.notes {
        out.extend_from_slice(format!("# {n}\n").as_bytes());
    }
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(&table.header).expect("in-memory write");
        for r in &table.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.flush().expect("in-memory write");
    }
    String::from_utf8(out).expect("csv output is utf-8")
}
