use std::fmt::Write;

use serde_json::{json, Value};

use khevo::diagram::{DiagramDump, FamilyPoint};
use khevo::evolution::{Chamber, RelationCheck};
use khevo::fitter::FitReport;
use khevo::harness::{BreakdownReport, GridReport};
use khevo::khovanov::BigradedDims;
use khevo::laurent::{BivariateLaurent, RationalScalar, UnivariateLaurent};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

pub enum Output {
    Kh {
        point: FamilyPoint,
        method: &'static str,
        kh: BivariateLaurent,
        dims: Option<BigradedDims>,
    },
    Jones {
        point: FamilyPoint,
        method: &'static str,
        jones: UnivariateLaurent,
    },
    Grid(GridReport),
    Relations(Vec<RelationCheck>),
    Fit(FitReport),
    Newton {
        chamber: Chamber,
        entry: (usize, usize),
        points: Vec<(i32, i32, RationalScalar)>,
    },
    Diagram(DiagramDump),
    Breakdown(BreakdownReport),
}

impl Output {
    pub fn kh(point: FamilyPoint, method: &'static str, kh: BivariateLaurent, dims: Option<BigradedDims>) -> Self {
        Output::Kh {
            point,
            method,
            kh,
            dims,
        }
    }

    pub fn jones(point: FamilyPoint, method: &'static str, jones: UnivariateLaurent) -> Self {
        Output::Jones { point, method, jones }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.tsv(),
            Format::Text => match self {
                Output::Diagram(d) => format!("{}\n", d.pd),
                _ => self.json(),
            },
            Format::Json => self.json(),
        }
    }

    fn json(&self) -> String {
        let value = match self {
            Output::Kh {
                point,
                method,
                kh,
                dims,
            } => {
                let mut v = json!({
                    "a": point.a(),
                    "b": point.b(),
                    "method": method,
                    "kh": kh,
                    "text": kh.to_string(),
                });
                if let Some(d) = dims {
                    v["dims"] = serde_json::to_value(d).expect("serializable");
                }
                v
            }
            Output::Jones { point, method, jones } => json!({
                "a": point.a(),
                "b": point.b(),
                "method": method,
                "jones": jones,
                "text": jones.to_string(),
            }),
            Output::Grid(r) => to_value(r),
            Output::Relations(r) => json!({
                "passed": r.iter().all(|c| c.passed),
                "relations": r,
            }),
            Output::Fit(r) => {
                let mut v = to_value(r);
                v["all_match"] = Value::Bool(r.all_match());
                v
            }
            Output::Newton { chamber, entry, points } => json!({
                "chamber": chamber,
                "entry": [entry.0, entry.1],
                "points": points
                    .iter()
                    .map(|(q, t, c)| json!({"q": q, "t": t, "c": c.to_fraction_string()}))
                    .collect::<Vec<_>>(),
            }),
            Output::Diagram(d) => to_value(d),
            Output::Breakdown(r) => {
                let mut v = to_value(r);
                v["consistent"] = Value::Bool(r.consistent());
                v
            }
        };
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    }

    fn tsv(&self) -> String {
        let mut s = String::new();
        let yn = |b: bool| if b { "yes" } else { "no" };
        let opt = |b: Option<bool>| b.map(yn).unwrap_or("n/a");
        match self {
            Output::Kh { kh, .. } => {
                s.push_str("q\tt\tc\n");
                for (q, t, c) in kh.terms() {
                    writeln!(s, "{q}\t{t}\t{c}").unwrap();
                }
            }
            Output::Jones { jones, .. } => {
                s.push_str("q\tc\n");
                for (q, c) in jones.terms() {
                    writeln!(s, "{q}\t{c}").unwrap();
                }
            }
            Output::Grid(r) => {
                s.push_str("a\tb\tchamber\tcrossings\tkh\tjones\tlimit\teuler\tsignature\tlee\n");
                for p in &r.points {
                    writeln!(
                        s,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        p.a,
                        p.b,
                        p.chamber,
                        p.crossings,
                        yn(p.kh_match),
                        yn(p.jones_match),
                        yn(p.limit_match),
                        yn(p.euler_match),
                        opt(p.signature_match),
                        opt(p.lee_match)
                    )
                    .unwrap();
                }
            }
            Output::Relations(r) => {
                s.push_str("relation\tpassed\n");
                for c in r {
                    writeln!(s, "{}\t{}", c.relation, yn(c.passed)).unwrap();
                }
            }
            Output::Fit(r) => {
                s.push_str("q0\tt0\tmismatched_entries\n");
                for p in &r.points {
                    writeln!(s, "{}\t{}\t{}", p.q0, p.t0, p.mismatched_entries).unwrap();
                }
            }
            Output::Newton { points, .. } => {
                s.push_str("q\tt\tc\n");
                for (q, t, c) in points {
                    writeln!(s, "{q}\t{t}\t{c}").unwrap();
                }
            }
            Output::Diagram(d) => {
                s.push_str("crossing\ti\tj\tk\tl\tsign\n");
                for (n, x) in d.crossings.iter().enumerate() {
                    let [i, j, k, l] = x.arcs;
                    writeln!(s, "{}\t{i}\t{j}\t{k}\t{l}\t{:+}", n + 1, x.sign.value()).unwrap();
                }
            }
            Output::Breakdown(r) => {
                s.push_str("chamber\tfirst_failure\tfailures_inside\tmatches_outside\n");
                for c in &r.chambers {
                    let first = c
                        .first_failure
                        .map(|(a, b)| format!("({a},{b})"))
                        .unwrap_or_else(|| "none".into());
                    writeln!(
                        s,
                        "{}\t{first}\t{}\t{}",
                        c.chamber,
                        c.failures_inside.len(),
                        c.matches_outside.len()
                    )
                    .unwrap();
                }
            }
        }
        s
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}
