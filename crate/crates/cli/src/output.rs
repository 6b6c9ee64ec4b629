//! Byte-stable text formats: sweep CSV, matrix JSON and key/value reports.
//!
//! Every float goes through [`fmt_float`], 17 significant digits in
//! scientific notation, so output depends neither on locale nor on the
//! shortest-round-trip heuristics of a serialiser.

use std::fmt::Write as _;

use num_complex::Complex64;
use oscnet::charfn::GSeries;
use oscnet::{CMatrix, NetworkSpec};
use serde::Deserialize;

use crate::error::CliError;

/// 17 significant digits, `.` separator, negative zero printed as zero.
pub fn fmt_float(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// `t_over_tau,g` with one LF-terminated row per grid point.
pub fn g_series_csv(series: &GSeries) -> String {
    let mut out = String::from("t_over_tau,g\n");
    for (t, g) in series.scaled() {
        let _ = writeln!(out, "{},{}", fmt_float(t), fmt_float(g));
    }
    out
}

pub fn g_series_json(series: &GSeries) -> String {
    let rows: Vec<String> = series.scaled().map(|(t, g)| format!("[{},{}]", fmt_float(t), fmt_float(g))).collect();
    format!("{{\"site\":{},\"t_over_tau_g\":[{}]}}\n", series.site, rows.join(","))
}

/// `{"s":int,"tau":float,"m":[int],"re":[[float]],"im":[[float]]}`, rows
/// outermost.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub s: usize,
    pub tau: f64,
    pub m: Vec<u32>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixDoc {
    pub fn new(spec: &NetworkSpec, matrix: &CMatrix) -> Self {
        let rows = |f: fn(&Complex64) -> f64| matrix.row_iter().map(|r| r.iter().map(f).collect()).collect();
        Self { s: spec.s(), tau: spec.tau(), m: spec.m().to_vec(), re: rows(|z| z.re), im: rows(|z| z.im) }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))?;
        let square = |rows: &Vec<Vec<f64>>| rows.len() == doc.s && rows.iter().all(|r| r.len() == doc.s);
        if !square(&doc.re) || !square(&doc.im) {
            return Err(CliError::Format(format!("re/im must both be {0}×{0}", doc.s)));
        }
        Ok(doc)
    }

    pub fn spec(&self) -> Result<NetworkSpec, CliError> {
        Ok(NetworkSpec::new(self.s, self.tau, self.m.clone())?)
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.s, self.s, |r, c| Complex64::new(self.re[r][c], self.im[r][c]))
    }

    pub fn to_json(&self) -> String {
        let ints: Vec<String> = self.m.iter().map(u32::to_string).collect();
        let block = |rows: &Vec<Vec<f64>>| {
            let inner: Vec<String> = rows
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|&x| fmt_float(x)).collect::<Vec<_>>().join(",")))
                .collect();
            format!("[{}]", inner.join(","))
        };
        format!(
            "{{\"s\":{},\"tau\":{},\"m\":[{}],\"re\":{},\"im\":{}}}\n",
            self.s,
            fmt_float(self.tau),
            ints.join(","),
            block(&self.re),
            block(&self.im)
        )
    }

    /// `row,col,re,im` with 1-based indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,re,im\n");
        for r in 0..self.s {
            for c in 0..self.s {
                let _ = writeln!(out, "{},{},{},{}", r + 1, c + 1, fmt_float(self.re[r][c]), fmt_float(self.im[r][c]));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Floats(Vec<f64>),
}

impl Value {
    fn text(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Float(x) => fmt_float(*x),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::Floats(v) => v.iter().map(|&x| fmt_float(x)).collect::<Vec<_>>().join(","),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::Text(s) => serde_json::to_string(s).expect("strings serialise"),
            Value::Floats(_) => format!("[{}]", self.text()),
            other => other.text(),
        }
    }
}

/// Ordered key/value report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: Value) -> &mut Self {
        self.entries.push((key.into(), value));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// `key=value` per line.
    pub fn to_text(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}={}\n", v.text())).collect()
    }

    pub fn to_json(&self) -> String {
        let fields: Vec<String> = self
            .entries
            .iter()
            .map(|(k, v)| format!("{}:{}", serde_json::to_string(k).expect("strings serialise"), v.json()))
            .collect();
        format!("{{{}}}\n", fields.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_fixed() {
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_float(-0.0), "0.0000000000000000e0");
        assert_eq!(fmt_float(std::f64::consts::PI), "3.1415926535897931e0");
        assert_eq!(fmt_float(1.5e-300), "1.5000000000000001e-300");
        for x in [0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-17] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn matrix_json_round_trip() {
        let spec = NetworkSpec::new(2, 0.5, vec![0, 3]).unwrap();
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.1, 0.0),
                Complex64::new(-1.0 / 3.0, 2e-9),
                Complex64::new(7.0, -0.0),
                Complex64::new(1e10, 1.0),
            ],
        );
        let doc = MatrixDoc::new(&spec, &m);
        let text = doc.to_json();
        let back = MatrixDoc::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.matrix(), m);
        assert_eq!(back.spec().unwrap(), spec);
        // Valid JSON for generic consumers.
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["s"], 2);
    }

    #[test]
    fn matrix_json_rejects_ragged_input() {
        let bad = r#"{"s":2,"tau":1.0,"m":[0,0],"re":[[1.0,0.0],[0.0]],"im":[[0.0,0.0],[0.0,0.0]]}"#;
        assert!(MatrixDoc::parse(bad).is_err());
        let extra = r#"{"s":1,"tau":1.0,"m":[0],"re":[[1.0]],"im":[[0.0]],"x":1}"#;
        assert!(MatrixDoc::parse(extra).is_err());
    }

    #[test]
    fn report_renders_both_ways() {
        let mut r = Report::default();
        r.push("passed", Value::Bool(true))
            .push("residual", Value::Float(0.25))
            .push("label", Value::Text("a\"b".into()))
            .push("f", Value::Floats(vec![1.0, 0.5]))
            .push("empty", Value::Floats(vec![]));
        assert_eq!(
            r.to_text(),
            "passed=true\nresidual=2.5000000000000000e-1\nlabel=a\"b\nf=1.0000000000000000e0,5.0000000000000000e-1\nempty=\n"
        );
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["label"], "a\"b");
        assert_eq!(v["f"][1], 0.5);
        assert_eq!(v["empty"].as_array().unwrap().len(), 0);
    }
}
