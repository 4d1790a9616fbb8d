use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::chartgeom::ChartRef;
use crate::distribution::CheckReport;

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// One report entry. Fixed fields first in the schema; `details` carries
/// command-specific data.
pub fn report_json(object: Option<&str>, r: &CheckReport) -> Value {
    let witness = r
        .witness
        .as_ref()
        .map(|w| w.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    let details: Map<String, Value> = r
        .details
        .iter()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    json!({
        "object": object,
        "chart": r.chart.name(),
        "property": r.property,
        "holds_generically": r.holds_generically,
        "ranks": r.ranks,
        "degeneracy": r.degeneracy_text(),
        "witness_point": witness,
        "kernel": r.kernel.as_ref().map(|k| k.to_text()),
        "details": Value::Object(details),
    })
}

/// A failed verdict that came from a domain error rather than a computation.
pub fn failure_json(
    object: Option<&str>,
    chart: &ChartRef,
    property: &str,
    message: &str,
) -> Value {
    let mut r = CheckReport::new(chart, property);
    r.details.insert("error".into(), json!(message));
    report_json(object, &r)
}

pub fn document(
    command: &str,
    input_digest: Option<String>,
    reports: Vec<Value>,
    timing_ms: Option<u128>,
) -> Value {
    json!({
        "tool": "engelkit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input_digest": input_digest,
        "reports": reports,
        "timing_ms": timing_ms.map(|t| t as u64),
    })
}

pub fn holds(report: &Value) -> bool {
    report["holds_generically"].as_bool().unwrap_or(false)
}
