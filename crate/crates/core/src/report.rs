//! Whole-algebra analysis reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::decide::{decide, DecideOptions};
use crate::error::Error;
use crate::variety::{recognize, VarietyTag};
use crate::verdict::{Bounds, Property, Verdict, VerdictValue};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    /// Absent when the search failed; `error` says why.
    pub verdict: Option<Verdict>,
    pub witness_text: Option<String>,
    pub error: Option<String>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub algebra: String,
    pub size: usize,
    pub variety: VarietyTag,
    pub bounds: Bounds,
    pub properties: Vec<PropertyReport>,
    /// Disagreements between properties that must agree or imply each
    /// other. Empty on a consistent run.
    pub cross_check: Vec<String>,
    pub wall_time_ms: f64,
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

impl PropertyReport {
    pub fn run(alg: &FiniteAlgebra, property: Property, opts: &DecideOptions) -> (Self, Option<Error>) {
        let start = Instant::now();
        match decide(alg, property, opts) {
            Ok(v) => (
                PropertyReport {
                    property,
                    witness_text: v.witness.as_ref().map(|w| w.render()),
                    verdict: Some(v),
                    error: None,
                    wall_time_ms: millis(start),
                },
                None,
            ),
            Err(e) => (
                PropertyReport {
                    property,
                    verdict: None,
                    witness_text: None,
                    error: Some(e.to_string()),
                    wall_time_ms: millis(start),
                },
                Some(e),
            ),
        }
    }
}

impl Report {
    /// Runs every property. The first error, if any, is returned beside
    /// the report.
    pub fn analyze(alg: &FiniteAlgebra, opts: &DecideOptions) -> (Self, Option<Error>) {
        let start = Instant::now();
        let mut first_error = None;
        let mut properties = Vec::new();
        for p in Property::ALL {
            let (r, e) = PropertyReport::run(alg, p, opts);
            if first_error.is_none() {
                first_error = e;
            }
            properties.push(r);
        }
        let mut report = Report {
            schema_version: SCHEMA_VERSION,
            algebra: alg.name().to_string(),
            size: alg.size(),
            variety: recognize(alg),
            bounds: Bounds {
                max_power: Some(opts.max_power),
                max_arity: Some(opts.max_arity),
            },
            properties,
            cross_check: Vec::new(),
            wall_time_ms: 0.0,
        };
        report.cross_check = report.inconsistencies();
        report.wall_time_ms = millis(start);
        (report, first_error)
    }

    /// A report holding one property.
    pub fn single(alg: &FiniteAlgebra, p: Property, opts: &DecideOptions) -> (Self, Option<Error>) {
        let start = Instant::now();
        let (entry, err) = PropertyReport::run(alg, p, opts);
        let report = Report {
            schema_version: SCHEMA_VERSION,
            algebra: alg.name().to_string(),
            size: alg.size(),
            variety: recognize(alg),
            bounds: Bounds {
                max_power: Some(opts.max_power),
                max_arity: Some(opts.max_arity),
            },
            properties: vec![entry],
            cross_check: Vec::new(),
            wall_time_ms: millis(start),
        };
        (report, err)
    }

    pub fn verdict(&self, p: Property) -> Option<&Verdict> {
        self.properties
            .iter()
            .find(|r| r.property == p)
            .and_then(|r| r.verdict.as_ref())
    }

    fn inconsistencies(&self) -> Vec<String> {
        let value = |p| self.verdict(p).map(|v| v.value);
        let mut out = Vec::new();
        let trio = [Property::PolHom, Property::Sdc, Property::InjSpfin];
        for (i, &a) in trio.iter().enumerate() {
            for &b in &trio[i + 1..] {
                if let (Some(x), Some(y)) = (value(a), value(b)) {
                    if x.as_bool().is_some() && x.as_bool() != y.as_bool() {
                        out.push(format!("{a} is {x} but {b} is {y}"));
                    }
                }
            }
        }
        let implies = [
            (Property::Cbullet, Property::PolHom),
            (Property::InjHsp, Property::InjSpfin),
        ];
        for (a, b) in implies {
            if value(a) == Some(VerdictValue::ExactTrue) && value(b) == Some(VerdictValue::ExactFalse) {
                out.push(format!("{a} is exact-true but {b} is exact-false"));
            }
        }
        out
    }

    /// Zeroes every timing field, leaving a deterministic document.
    pub fn without_timing(mut self) -> Self {
        self.wall_time_ms = 0.0;
        for p in &mut self.properties {
            p.wall_time_ms = 0.0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "algebra {} (size {}, {:?})\n",
            self.algebra, self.size, self.variety.kind
        );
        for p in &self.properties {
            match (&p.verdict, &p.error) {
                (Some(v), _) => s += &v.render(),
                (None, Some(e)) => s += &format!("{}: error: {e}", p.property),
                (None, None) => s += &format!("{}: no verdict", p.property),
            }
            s += &format!("  [{:.1} ms]\n", p.wall_time_ms);
        }
        for c in &self.cross_check {
            s += &format!("cross-check failed: {c}\n");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn deterministic_json() {
        let a = builtin::chain_semilattice(2);
        let o = DecideOptions::new(2, 3);
        let (r1, e) = Report::analyze(&a, &o);
        assert!(e.is_none());
        let (r2, _) = Report::analyze(&a, &o);
        let j = r1.clone().without_timing().to_json();
        assert_eq!(j, r2.without_timing().to_json());
        assert!(r1.cross_check.is_empty());
        let back: Report = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_json(), j);
        assert_eq!(r1.verdict(Property::Cbullet).unwrap().value, VerdictValue::ExactFalse);
    }
}
