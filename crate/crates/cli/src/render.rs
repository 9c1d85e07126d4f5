//! Plain-text rendering of the JSON reports.

use std::fmt::Write;

use serde_json::Value;

use crate::Command;

pub fn text(command: &Command, v: &Value) -> String {
    match command {
        Command::Identity { .. } => identity_csv(v),
        Command::Dims { .. } => dims_tables(v),
        _ => {
            let mut out = String::new();
            generic(&mut out, v, 0);
            out
        }
    }
}

fn identity_csv(v: &Value) -> String {
    let rows = match v {
        Value::Array(rows) => rows.clone(),
        other => vec![other.clone()],
    };
    let mut out = String::from("u,k,lhs,rhs,equal\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r["u"], r["k"], r["lhs"], r["rhs"], r["equal"]
        );
    }
    out
}

fn dims_tables(v: &Value) -> String {
    let mut out = String::new();
    let ctx = &v["ctx"];
    let _ = writeln!(
        out,
        "dim V = {}, dim W = {}, u = {}, flavor {}",
        ctx["dim_v"],
        ctx["dim_w"],
        ctx["u"],
        v["flavor"].as_str().unwrap_or("?")
    );
    let _ = writeln!(out, "dim Y_sigma      {}", v["dim_quotient"]);
    let _ = writeln!(out, "  via Gr_u V     {}", v["dim_quotient_via_v"]);
    let _ = writeln!(out, "  via Gr_u W     {}", v["dim_quotient_via_w"]);
    let walls: Vec<String> = v["walls"]
        .as_array()
        .map(|a| a.iter().map(Value::to_string).collect())
        .unwrap_or_default();
    let _ = writeln!(out, "walls            {}", walls.join(" "));
    let _ = writeln!(out, "\n{:>4} {:>8} {:>8} {:>8}", "k", "Z0", "Z-", "Z+");
    for w in v["wall_dims"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "{:>4} {:>8} {:>8} {:>8}",
            w["k"].to_string(),
            w["z0"].to_string(),
            w["z_minus"].to_string(),
            w["z_plus"].to_string()
        );
    }
    let _ = writeln!(out, "\n{:>4} {:>8}", "k", "Sec_k");
    for s in v["secant_dims"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "{:>4} {:>8}", s["k"].to_string(), s["dim"].to_string());
    }
    for e in v["end_chambers"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "\nsigma = {}: {} of dimension {}",
            e["sigma"],
            e["label"].as_str().unwrap_or("?"),
            e["dim"]
        );
    }
    out
}

fn is_matrix(v: &Value) -> bool {
    v.get("rows").is_some() && v.get("cols").is_some() && v.get("entries").is_some()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn matrix_lines(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    let rows = v["entries"].as_array().cloned().unwrap_or_default();
    if rows.is_empty() {
        let _ = writeln!(out, "{pad}(0 x {})", v["cols"]);
        return;
    }
    for row in rows {
        let cells: Vec<String> = row
            .as_array()
            .into_iter()
            .flatten()
            .map(|c| match c {
                Value::Array(coeffs) => {
                    let terms: Vec<String> = coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.as_str() != Some("0"))
                        .map(|(k, c)| match k {
                            0 => scalar(c),
                            1 => format!("{}t", scalar(c)),
                            _ => format!("{}t^{k}", scalar(c)),
                        })
                        .collect();
                    if terms.is_empty() {
                        "0".into()
                    } else {
                        terms.join("+")
                    }
                }
                other => scalar(other),
            })
            .collect();
        let _ = writeln!(out, "{pad}[{}]", cells.join(", "));
    }
}

fn generic(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                match val {
                    Value::Object(_) if is_matrix(val) => {
                        let _ = writeln!(out, "{pad}{key}:");
                        matrix_lines(out, val, indent + 2);
                    }
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{key}:");
                        generic(out, val, indent + 2);
                    }
                    Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                        let _ = writeln!(out, "{pad}{key}:");
                        for (i, item) in items.iter().enumerate() {
                            let _ = writeln!(out, "{pad}  [{}]", i + 1);
                            generic(out, item, indent + 4);
                        }
                    }
                    other => {
                        let _ = writeln!(out, "{pad}{key}: {}", compact(other));
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                let _ = writeln!(out, "{pad}[{}]", i + 1);
                generic(out, item, indent + 2);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", compact(other));
        }
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(compact).collect();
            format!("[{}]", parts.join(", "))
        }
        other => scalar(other),
    }
}
