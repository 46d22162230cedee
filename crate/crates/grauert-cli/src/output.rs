//! Serialization of table rows and claim results.
//!
//! CSV output uses a header row, comma delimiters, LF line endings, and
//! 17 significant digits per number (the round-trip precision of an IEEE
//! double), so identical inputs produce byte-identical files. JSON
//! output mirrors the row types field for field; non-finite numbers
//! become `null`.

use grauert::claims::ClaimResult;
use grauert::geometry::Cx;
use grauert::tables::{FlowRow, ProfileRow, ScanRow};
use serde_json::{json, Map, Value};

/// Render a float with 17 significant digits; non-finite values render
/// as lowercase words so the column stays parseable.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x:.16e}")
    }
}

/// Quote a CSV field only when it contains a delimiter, quote, or
/// newline, doubling interior quotes.
fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Finite floats map to JSON numbers, non-finite to `null`.
fn num(x: f64) -> Value {
    Value::from(x)
}

fn complex_json(c: Cx) -> Value {
    json!([num(c.re), num(c.im)])
}

/// Assemble the single top-level JSON object: config echo, the payload
/// under its named key, and the crate version.
pub fn document(config: Value, key: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("config".to_string(), config);
    m.insert(key.to_string(), body);
    m.insert("version".to_string(), Value::from(env!("CARGO_PKG_VERSION")));
    Value::Object(m)
}

pub fn profiles_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("t,u,v,eta,f_cn,f_cstar,f_ball\n");
    for r in rows {
        let f_ball = r.f_ball.map(fmt_f64).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt_f64(r.t),
            fmt_f64(r.u),
            fmt_f64(r.v),
            fmt_f64(r.eta),
            fmt_f64(r.f_cn),
            fmt_f64(r.f_cstar),
            f_ball
        ));
    }
    out
}

pub fn profiles_json(rows: &[ProfileRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "t": num(r.t),
                    "u": num(r.u),
                    "v": num(r.v),
                    "eta": num(r.eta),
                    "f_cn": num(r.f_cn),
                    "f_cstar": num(r.f_cstar),
                    "f_ball": r.f_ball.map_or(Value::Null, num),
                })
            })
            .collect(),
    )
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("t,k_minus,k_plus\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(r.t),
            fmt_f64(r.k_minus),
            fmt_f64(r.k_plus)
        ));
    }
    out
}

pub fn scan_json(rows: &[ScanRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "t": num(r.t),
                    "k_minus": num(r.k_minus),
                    "k_plus": num(r.k_plus),
                })
            })
            .collect(),
    )
}

pub fn flow_csv(rows: &[FlowRow], dim: usize) -> String {
    let mut out = String::from("t_param");
    for q in 0..dim {
        out.push_str(&format!(",z{q}_re,z{q}_im"));
    }
    out.push_str(",h,kappa_fd,status\n");
    for r in rows {
        out.push_str(&fmt_f64(r.t_param));
        for c in &r.z {
            out.push_str(&format!(",{},{}", fmt_f64(c.re), fmt_f64(c.im)));
        }
        out.push_str(&format!(
            ",{},{},{}\n",
            fmt_f64(r.h),
            fmt_f64(r.kappa_fd),
            r.status
        ));
    }
    out
}

pub fn flow_json(rows: &[FlowRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "t_param": num(r.t_param),
                    "z": r.z.iter().map(|&c| complex_json(c)).collect::<Vec<_>>(),
                    "h": num(r.h),
                    "kappa_fd": num(r.kappa_fd),
                    "status": r.status.to_string(),
                })
            })
            .collect(),
    )
}

pub fn claims_csv(results: &[ClaimResult]) -> String {
    let mut out = String::from("id,description,computed,threshold,status\n");
    for r in results {
        let computed = r
            .computed
            .iter()
            .map(|(k, v)| format!("{k}={}", fmt_f64(*v)))
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_quote(&r.id),
            csv_quote(&r.description),
            csv_quote(&computed),
            fmt_f64(r.threshold),
            r.status
        ));
    }
    out
}

pub fn claims_json(results: &[ClaimResult]) -> Value {
    Value::Array(
        results.iter()
            .map(|r| {
                let computed: Map<String, Value> = r
                    .computed
                    .iter()
                    .map(|(k, v)| (k.clone(), num(*v)))
                    .collect();
                json!({
                    "id": r.id,
                    "description": r.description,
                    "computed": computed,
                    "threshold": num(r.threshold),
                    "status": r.status.to_string(),
                })
            })
            .collect(),
    )
}
