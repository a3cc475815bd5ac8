//! Deterministic rendering: JSON machine output (sorted keys), aligned
//! tables, and CSV. All numbers are exact — slopes as "num/den" strings,
//! polygons as integer vertex lists.

use serde_json::{json, Value};
use taucrys::polygon::{NewtonPolygon, Slope};

pub fn slope_str(s: &Slope) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Slope segments as [["num/den", mult], ...].
pub fn polygon_json(p: &NewtonPolygon) -> Value {
    Value::Array(
        p.segments
            .iter()
            .map(|(s, m)| json!([slope_str(s), m]))
            .collect(),
    )
}

/// Compact single-cell form for tables/CSV: "0/1*1;1/1*1".
pub fn polygon_cell(p: &NewtonPolygon) -> String {
    p.segments
        .iter()
        .map(|(s, m)| format!("{}*{}", slope_str(s), m))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn vertices_json(v: &[(i64, i64)]) -> Value {
    Value::Array(v.iter().map(|(x, y)| json!([x, y])).collect())
}

/// A finished report: machine value plus row-oriented form for the human
/// formats, and whether every assertion the command makes held.
pub struct Rendered {
    pub json: Value,
    pub rows: Vec<Vec<String>>,
    pub ok: bool,
}

impl Rendered {
    pub fn to_string(&self, format: &str) -> taucrys::Result<String> {
        match format {
            "json" => Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&self.json).expect("serializable value")
            )),
            "table" => Ok(render_table(&self.rows)),
            "csv" => Ok(render_csv(&self.rows)),
            other => Err(taucrys::Error::parse(format!(
                "format `{other}` (expected json, table, or csv)"
            ))),
        }
    }
}

fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (i, c) in r.iter().enumerate() {
            line.push_str(c);
            if i + 1 < r.len() {
                for _ in c.chars().count()..widths[i] + 2 {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_csv(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .map(|c| {
                if c.contains(',') || c.contains('"') || c.contains('\n') {
                    format!("\"{}\"", c.replace('"', "\"\""))
                } else {
                    c.clone()
                }
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
