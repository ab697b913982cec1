//! Grid verification: evaluate several dimension methods at every parameter
//! point and report where they disagree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::build_model;
use crate::closed_forms::{dim_block, DimensionReport, Method};
use crate::cohomology::{block_dims_with, BlockKind, RankMethod, SystemOptions};
use crate::error::{Error, Result};
use crate::weights::count_weight_dim;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SweepMethod {
    Brute,
    Closed,
    Weights,
}

impl SweepMethod {
    pub fn method(self) -> Method {
        match self {
            SweepMethod::Brute => Method::BruteForce,
            SweepMethod::Closed => Method::ClosedForm,
            SweepMethod::Weights => Method::WeightOracle,
        }
    }
}

impl FromStr for SweepMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "brute" => Ok(SweepMethod::Brute),
            "closed" => Ok(SweepMethod::Closed),
            "weights" => Ok(SweepMethod::Weights),
            other => Err(Error::Parse(format!("unknown method '{other}' (expected brute, closed or weights)"))),
        }
    }
}

impl fmt::Display for SweepMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMethod::Brute => "brute",
            SweepMethod::Closed => "closed",
            SweepMethod::Weights => "weights",
        })
    }
}

/// Parses `a..b` (inclusive) or a single integer.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad range bound '{s}' in '{text}'")))
    };
    match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(num(a)?..=num(b)?)
        }
        None => {
            let v = num(text)?;
            Ok(v..=v)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n: RangeInclusive<usize>,
    pub m: RangeInclusive<usize>,
    pub p: RangeInclusive<usize>,
    pub methods: Vec<SweepMethod>,
}

impl SweepConfig {
    /// Grid points in `(n, m, p)` order.
    pub fn points(&self) -> Result<Vec<(usize, usize, usize)>> {
        if self.methods.is_empty() {
            return Err(Error::InvalidParams("no methods requested".into()));
        }
        let n = (*self.n.start()).max(1)..=*self.n.end();
        let mut out = Vec::new();
        for n in n {
            for m in self.m.clone() {
                for p in self.p.clone() {
                    out.push((n, m, p));
                }
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidParams("the parameter grid is empty".into()));
        }
        Ok(out)
    }
}

pub type ClosedFormFn = fn(BlockKind, usize, usize, usize) -> i64;

fn printed_closed_form(block: BlockKind, n: usize, m: usize, p: usize) -> i64 {
    dim_block(block, n, m, p).value
}

/// The evaluators used by a sweep. The closed-form function is replaceable so
/// the harness itself can be tested against a deliberately wrong formula.
#[derive(Debug, Clone, Copy)]
pub struct Evaluators {
    pub closed_form: ClosedFormFn,
    pub rank: RankMethod,
    pub options: SystemOptions,
}

impl Default for Evaluators {
    fn default() -> Self {
        Self {
            closed_form: printed_closed_form,
            rank: RankMethod::default(),
            options: SystemOptions::default(),
        }
    }
}

/// One disagreement. `block` is `None` for a failed joint-vs-split check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub block: Option<BlockKind>,
    pub values: BTreeMap<String, i64>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let block = self.block.map_or("joint".to_string(), |b| b.to_string());
        let values: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "n={} m={} p={} block={block}: {}", self.n, self.m, self.p, values.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepOutcome {
    pub reports: Vec<DimensionReport>,
    pub mismatches: Vec<Mismatch>,
}

impl SweepOutcome {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep outcome serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,p,method,A,B,C,D,E,F,total\n");
        let cell = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.reports {
            out += &format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                r.n,
                r.m,
                r.p,
                r.method,
                cell(r.a),
                cell(r.b),
                cell(r.c),
                cell(r.d),
                cell(r.e),
                cell(r.f),
                r.total
            );
        }
        out
    }
}

/// Dimensions at one point by one method.
pub fn evaluate(method: SweepMethod, n: usize, m: usize, p: usize, ev: &Evaluators) -> Result<DimensionReport> {
    let blocks: BTreeMap<BlockKind, i64> = match method {
        SweepMethod::Closed => BlockKind::ALL.into_iter().map(|b| (b, (ev.closed_form)(b, n, m, p))).collect(),
        SweepMethod::Weights => [BlockKind::A, BlockKind::B, BlockKind::C]
            .into_iter()
            .map(|b| count_weight_dim(b, n, m, p).map(|d| (b, d as i64)))
            .collect::<Result<_>>()?,
        SweepMethod::Brute => {
            let alg = build_model(n, m, p)?;
            block_dims_with(&alg, ev.options, ev.rank)?
                .into_iter()
                .map(|(b, d)| (b, d as i64))
                .collect()
        }
    };
    Ok(DimensionReport::from_blocks(n, m, p, method.method(), &blocks))
}

fn point(n: usize, m: usize, p: usize, methods: &[SweepMethod], ev: &Evaluators) -> Result<(Vec<DimensionReport>, Vec<Mismatch>)> {
    let mut reports = Vec::new();
    let mut mismatches = Vec::new();
    for &method in methods {
        match evaluate(method, n, m, p, ev) {
            Ok(r) => reports.push(r),
            Err(Error::DecompositionMismatch { joint, sum }) => mismatches.push(Mismatch {
                n,
                m,
                p,
                block: None,
                values: BTreeMap::from([("joint".into(), joint as i64), ("sum".into(), sum as i64)]),
            }),
            Err(e) => return Err(e),
        }
    }
    for block in BlockKind::ALL {
        let values: BTreeMap<String, i64> = reports
            .iter()
            .filter_map(|r| r.get(block).map(|v| (r.method.to_string(), v)))
            .collect();
        let mut distinct: Vec<i64> = values.values().copied().collect();
        distinct.dedup();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() > 1 {
            mismatches.push(Mismatch { n, m, p, block: Some(block), values });
        }
    }
    Ok((reports, mismatches))
}

/// Runs every method on every grid point in parallel; results come back in
/// `(n, m, p, method)` order regardless of scheduling.
pub fn run(cfg: &SweepConfig, ev: &Evaluators) -> Result<SweepOutcome> {
    let mut methods = cfg.methods.clone();
    methods.sort();
    methods.dedup();
    let results = cfg
        .points()?
        .into_par_iter()
        .map(|(n, m, p)| point(n, m, p, &methods, ev))
        .collect::<Result<Vec<_>>>()?;
    let mut outcome = SweepOutcome { reports: Vec::new(), mismatches: Vec::new() };
    for (r, mm) in results {
        outcome.reports.extend(r);
        outcome.mismatches.extend(mm);
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: &str, m: &str, p: &str, methods: &[SweepMethod]) -> SweepConfig {
        SweepConfig {
            n: parse_range(n).unwrap(),
            m: parse_range(m).unwrap(),
            p: parse_range(p).unwrap(),
            methods: methods.to_vec(),
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..8").unwrap(), 1..=8);
        assert_eq!(parse_range("1..=3").unwrap(), 1..=3);
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert!(parse_range("a..2").is_err());
        assert!("brutal".parse::<SweepMethod>().is_err());
    }

    #[test]
    fn small_grid_agrees() {
        let all = [SweepMethod::Brute, SweepMethod::Closed, SweepMethod::Weights];
        let out = run(&cfg("1..4", "1..3", "1..3", &all), &Evaluators::default()).unwrap();
        assert!(out.agrees(), "{:?}", out.mismatches);
        assert_eq!(out.reports.len(), 4 * 3 * 3 * 3);
        assert_eq!(out.reports[0].method, Method::BruteForce);
        assert_eq!((out.reports[0].n, out.reports[0].m, out.reports[0].p), (1, 1, 1));
    }

    #[test]
    fn corrupted_formula_is_caught() {
        fn wrong(block: BlockKind, n: usize, m: usize, p: usize) -> i64 {
            let v = dim_block(block, n, m, p).value;
            if block == BlockKind::D && (m, p) == (3, 2) {
                v + 1
            } else {
                v
            }
        }
        let ev = Evaluators { closed_form: wrong, ..Evaluators::default() };
        let out = run(&cfg("1..2", "1..3", "1..2", &[SweepMethod::Brute, SweepMethod::Closed]), &ev).unwrap();
        assert_eq!(out.mismatches.len(), 2);
        assert!(out.mismatches.iter().all(|mm| mm.block == Some(BlockKind::D) && (mm.m, mm.p) == (3, 2)));
        assert!(out.mismatches[0].to_string().contains("block=D"));
    }

    #[test]
    fn empty_grid() {
        assert!(matches!(run(&cfg("3..2", "1", "1", &[SweepMethod::Closed]), &Evaluators::default()), Err(Error::InvalidParams(_))));
        assert!(run(&cfg("1", "1", "1", &[]), &Evaluators::default()).is_err());
    }

    #[test]
    fn csv_matches_json() {
        let out = run(&cfg("1..2", "1..2", "1", &[SweepMethod::Closed, SweepMethod::Weights]), &Evaluators::default()).unwrap();
        let csv = out.to_csv();
        let json: serde_json::Value = serde_json::from_str(&out.to_json()).unwrap();
        let rows: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(rows.len(), json["reports"].as_array().unwrap().len());
        for (row, rep) in rows.iter().zip(json["reports"].as_array().unwrap()) {
            let cells: Vec<&str> = row.split(',').collect();
            for (i, key) in ["A", "B", "C", "D", "E", "F"].iter().enumerate() {
                let expect = rep[key].as_i64().map(|v| v.to_string()).unwrap_or_default();
                assert_eq!(cells[4 + i], expect);
            }
            assert_eq!(cells[10], rep["total"].to_string());
        }
    }
}
