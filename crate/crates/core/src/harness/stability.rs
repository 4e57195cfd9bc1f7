use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::commands::{build_algebra, gldim_over, homcheck_over};
use super::config::ExperimentConfig;
use super::probe::{auslander_over, probe_over};
use super::report::{strip_timing, Report, Status, Stopwatch};
use super::{algebra_over, header};
use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, PrimeField};

/// A command whose numbers are compared across characteristics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Gldim,
    Auslander,
    Probe,
    Homcheck,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Gldim, Check::Auslander, Check::Probe, Check::Homcheck];
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gldim" => Ok(Check::Gldim),
            "auslander" => Ok(Check::Auslander),
            "probe" => Ok(Check::Probe),
            "homcheck" => Ok(Check::Homcheck),
            _ => Err(Error::parse("--checks", format!("unknown check {s:?}"))),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serializable");
        f.write_str(s.as_str().expect("unit variant"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Anomaly {
    pub check: Check,
    /// JSON pointer into the check's result.
    pub path: String,
    pub values: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub primes: Vec<u64>,
    pub checks: Vec<Check>,
    /// Largest endomorphism algebra met; each prime must exceed it.
    pub max_end_dim: usize,
    /// `results[c][p]` is check `c` over prime `p`, timing removed.
    pub results: Vec<Vec<Value>>,
    pub anomalies: Vec<Anomaly>,
}

fn diff(path: String, a: &Value, b: &Value, out: &mut Vec<(String, Value, Value)>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) if x.len() == y.len() && x.keys().eq(y.keys()) => {
            for (k, v) in x {
                diff(format!("{path}/{k}"), v, &y[k], out);
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (v, w)) in x.iter().zip(y).enumerate() {
                diff(format!("{path}/{i}"), v, w, out);
            }
        }
        _ if a == b => {}
        _ => out.push((path, a.clone(), b.clone())),
    }
}

fn max_end_dim(v: &Value) -> usize {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| match (k.as_str(), x) {
                ("end_dim", Value::Number(d)) => d.as_u64().unwrap_or(0) as usize,
                _ => max_end_dim(x),
            })
            .max()
            .unwrap_or(0),
        Value::Array(xs) => xs.iter().map(max_end_dim).max().unwrap_or(0),
        _ => 0,
    }
}

fn run_check(cfg: &ExperimentConfig, check: Check, p: u64) -> Result<Value> {
    let (family, n) = match (cfg.family, cfg.n) {
        (Some(f), Some(n)) => (f, n),
        _ => return Err(Error::InvalidInput("the stability check needs --family and --n".into())),
    };
    let spec = FieldSpec::prime(p)?;
    let file = build_algebra(family, n, spec)?;
    let alg = algebra_over(&file, PrimeField::new(p)?)?;
    let cfg = ExperimentConfig { field: spec, ..cfg.clone() };
    let mut v = match check {
        Check::Gldim => serde_json::to_value(gldim_over(&cfg, &alg)?.0)?,
        Check::Auslander => serde_json::to_value(auslander_over(&cfg, &alg)?.0)?,
        Check::Probe => serde_json::to_value(probe_over(&cfg, &alg)?)?,
        Check::Homcheck => serde_json::to_value(homcheck_over(&alg).0)?,
    };
    strip_timing(&mut v);
    Ok(v)
}

/// Runs each check over every prime and reports any number that differs.
pub fn stability_over(cfg: &ExperimentConfig, primes: &[u64], checks: &[Check]) -> Result<StabilityReport> {
    if primes.len() < 2 || primes.iter().enumerate().any(|(i, p)| primes[..i].contains(p)) {
        return Err(Error::InvalidInput("give at least two distinct primes".into()));
    }
    let mut results = Vec::new();
    let mut anomalies = Vec::new();
    for &check in checks {
        let values = primes
            .iter()
            .map(|&p| run_check(cfg, check, p))
            .collect::<Result<Vec<_>>>()?;
        for other in &values[1..] {
            let mut found = Vec::new();
            diff(String::new(), &values[0], other, &mut found);
            anomalies.extend(found.into_iter().map(|(path, a, b)| Anomaly {
                check,
                path,
                values: vec![a, b],
            }));
        }
        results.push(values);
    }
    let max_end_dim = results.iter().flatten().map(max_end_dim).max().unwrap_or(0);
    Ok(StabilityReport {
        primes: primes.to_vec(),
        checks: checks.to_vec(),
        max_end_dim,
        results,
        anomalies,
    })
}

pub fn cmd_stability(cfg: &ExperimentConfig, primes: &[u64], checks: &[Check]) -> Result<Report> {
    let sw = Stopwatch::start();
    let body = stability_over(cfg, primes, checks)?;
    let mut messages: Vec<String> = body
        .anomalies
        .iter()
        .map(|a| format!("anomaly in {}{}: {} vs {}", a.check, a.path, a.values[0], a.values[1]))
        .collect();
    let small: Vec<u64> = primes.iter().copied().filter(|&p| p as usize <= body.max_end_dim).collect();
    if !small.is_empty() {
        messages.push(format!("primes {small:?} do not exceed the largest endomorphism dimension {}", body.max_end_dim));
    }
    let status = if body.anomalies.is_empty() && small.is_empty() {
        Status::Pass
    } else {
        Status::AssertionFailed
    };
    let mut table = vec![vec!["check".to_string(), "anomalies".to_string()]];
    for &c in checks {
        let k = body.anomalies.iter().filter(|a| a.check == c).count();
        table.push(vec![c.to_string(), k.to_string()]);
    }
    let field = FieldSpec::prime(primes[0])?;
    let mut h = header("stability", cfg, field, None, sw.ms());
    h.field = primes.iter().map(|p| format!("fp:{p}")).collect::<Vec<_>>().join(",");
    Ok(Report {
        header: h,
        status,
        result: serde_json::to_value(&body)?,
        messages,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn diff_reports_paths() {
        let mut out = Vec::new();
        diff(String::new(), &json!({"a": [1, 2], "b": 3}), &json!({"a": [1, 5], "b": 3}), &mut out);
        assert_eq!(out, vec![("/a/1".to_string(), json!(2), json!(5))]);
        assert_eq!(max_end_dim(&json!({"rows": [{"end_dim": 4}, {"end_dim": 9}]})), 9);
    }
}
