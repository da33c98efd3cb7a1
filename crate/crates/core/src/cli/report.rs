//! The report envelope and its three renderings.

use serde::Serialize;
use serde_json::Value;

use super::Format;

pub const REPORT_SCHEMA: &str = "arcring.report/1";

/// Rows for the CSV rendering.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Table { headers, rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = S>, S: ToString>(&mut self, row: I) {
        self.rows.push(row.into_iter().map(|s| s.to_string()).collect());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub parameters: Value,
    pub results: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn new(command: &'static str, parameters: Value, results: Value, pass: bool, table: Table) -> Self {
        Report { schema: REPORT_SCHEMA, command, parameters, results, pass, duration_ms: None, table }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.table.headers).expect("in-memory write");
        for row in &self.table.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    fn text(&self) -> String {
        let mut out = format!("{} ({})\n", self.command, if self.pass { "pass" } else { "FAIL" });
        let mut lines = Vec::new();
        flatten("parameters", &self.parameters, &mut lines);
        flatten("results", &self.results, &mut lines);
        if let Some(ms) = self.duration_ms {
            lines.push(format!("duration_ms = {ms}"));
        }
        for line in lines {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// One `path = value` line per leaf; arrays of scalars stay on one line.
fn flatten(path: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&format!("{path}.{k}"), x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array() && !is_scalar_array(x)) => {
            for (k, x) in items.iter().enumerate() {
                flatten(&format!("{path}[{k}]"), x, out);
            }
        }
        _ => out.push(format!("{path} = {v}")),
    }
}

fn is_scalar_array(v: &Value) -> bool {
    v.as_array().is_some_and(|items| items.iter().all(|x| !x.is_object() && (!x.is_array() || is_scalar_array(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut table = Table::new(vec!["degree", "rank"]);
        table.push([0, 1]);
        table.push([2, 1]);
        Report::new("betti", json!({"n": 1}), json!({"ranks": [1, 1], "m": {"a": [[1, 2]]}}), true, table)
    }

    #[test]
    fn renderings() {
        let r = sample();
        assert_eq!(r.render(Format::Csv), "degree,rank\n0,1\n2,1\n");
        assert_eq!(r.render(Format::Text), "betti (pass)\nparameters.n = 1\nresults.m.a = [[1,2]]\nresults.ranks = [1,1]\n");
        let json: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(json["schema"], REPORT_SCHEMA);
        assert!(json.get("duration_ms").is_none());
    }
}
