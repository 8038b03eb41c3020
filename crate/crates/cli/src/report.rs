//! Verification reports with a human rendering and a JSON rendering.
//! Both are produced from the same entries, so their status fields agree.

use std::fmt::Write as _;

use serde::Serialize;
use tsgeom::check::{IdentityCheck, Witness, CROSS_CHECK_POINTS};
use tsgeom::curvature::{CURVATURE_CONVENTION, RICCI_CONVENTION};
use tsgeom::frame::{Chart, KOSZUL_CONVENTION};
use tsgeom::symbolic::PointSampler;
use tsgeom::Expr;

/// Witness lists longer than this are truncated in reports.
pub const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Zero,
    Nonzero,
    True,
    False,
    Info,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Zero => "ZERO",
            Status::Nonzero => "NONZERO",
            Status::True => "TRUE",
            Status::False => "FALSE",
            Status::Info => "INFO",
        }
    }

    pub fn flag(b: bool) -> Status {
        if b {
            Status::True
        } else {
            Status::False
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessOut {
    /// One-based frame indices.
    pub index: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckOut {
    pub points: usize,
    pub agreed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub id: String,
    pub status: Status,
    pub detail: String,
    pub values: Vec<NamedValue>,
    pub witnesses: Vec<WitnessOut>,
    pub omitted_witnesses: usize,
    pub cross_check: Option<CrossCheckOut>,
}

impl Entry {
    pub fn new(id: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Entry {
            id: id.into(),
            status,
            detail: detail.into(),
            values: Vec::new(),
            witnesses: Vec::new(),
            omitted_witnesses: 0,
            cross_check: None,
        }
    }

    pub fn value(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.values.push(NamedValue {
            name: name.into(),
            value: value.into(),
        });
        self
    }

    pub fn witnesses(mut self, chart: &Chart, ws: &[Witness]) -> Self {
        for w in ws.iter().take(MAX_WITNESSES) {
            self.witnesses.push(WitnessOut {
                index: w.index.iter().map(|i| i + 1).collect(),
                value: chart.render(&w.value),
            });
        }
        self.omitted_witnesses = ws.len().saturating_sub(MAX_WITNESSES);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conventions {
    pub frame_components: String,
    pub koszul: String,
    pub curvature: String,
    pub ricci: String,
    pub cross_check: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            frame_components: "phi E_j = sum_i phi[i][j] E_i; indices in reports are 1-based".into(),
            koszul: KOSZUL_CONVENTION.into(),
            curvature: CURVATURE_CONVENTION.into(),
            ricci: RICCI_CONVENTION.into(),
            cross_check: format!(
                "every symbolic zero is re-evaluated at {CROSS_CHECK_POINTS} seeded random rational points"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub conventions: Conventions,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

/// Collects entries and runs the pointwise cross-check after every symbolic
/// zero verdict.
pub struct ReportBuilder<'a> {
    command: String,
    seed: u64,
    chart: &'a Chart,
    sampler: PointSampler,
    entries: Vec<Entry>,
}

impl<'a> ReportBuilder<'a> {
    pub fn new(command: impl Into<String>, chart: &'a Chart, seed: u64) -> Self {
        ReportBuilder {
            command: command.into(),
            seed,
            chart,
            sampler: PointSampler::new(seed, chart.dim()),
            entries: Vec::new(),
        }
    }

    pub fn chart(&self) -> &Chart {
        self.chart
    }

    pub fn render(&self, e: &Expr) -> String {
        self.chart.render(e)
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    /// PASS/FAIL entry for an identity, cross-checked when it holds.
    pub fn check(&mut self, c: &IdentityCheck) {
        self.classified(c, Status::Pass, Status::Fail);
    }

    /// ZERO/NONZERO entry for a tensor written as an identity against zero.
    pub fn tensor(&mut self, c: &IdentityCheck) {
        self.classified(c, Status::Zero, Status::Nonzero);
    }

    /// TRUE/FALSE entry for a condition that is informative, not required.
    pub fn flag(&mut self, c: &IdentityCheck) {
        self.classified(c, Status::True, Status::False);
    }

    pub fn classified(&mut self, c: &IdentityCheck, yes: Status, no: Status) {
        let detail = format!("{} ({} components)", c.description, c.checked());
        if c.holds() {
            let cc = c.cross_check(&mut self.sampler, CROSS_CHECK_POINTS);
            let mut e = Entry::new(&c.id, yes, detail);
            if let Some(idx) = &cc.mismatch {
                // A symbolic zero contradicted by a numeric evaluation.
                e.status = no;
                e.detail = format!("{}; pointwise evaluation disagrees", e.detail);
                e.witnesses.push(WitnessOut {
                    index: idx.iter().map(|i| i + 1).collect(),
                    value: "pointwise mismatch".into(),
                });
            }
            e.cross_check = Some(CrossCheckOut {
                points: cc.points,
                agreed: cc.agreed,
            });
            self.entries.push(e);
        } else {
            let e = Entry::new(&c.id, no, detail).witnesses(self.chart, c.witnesses());
            self.entries.push(e);
        }
    }

    pub fn finish(self) -> Report {
        let failures = self.entries.iter().filter(|e| e.status == Status::Fail).count();
        Report {
            command: self.command,
            seed: self.seed,
            conventions: Conventions::default(),
            summary: Summary {
                entries: self.entries.len(),
                failures,
            },
            entries: self.entries,
        }
    }
}

impl Report {
    pub fn has_failures(&self) -> bool {
        self.summary.failures > 0
    }

    pub fn entry(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let c = &self.conventions;
        let _ = writeln!(s, "command: {}  (seed {})", self.command, self.seed);
        let _ = writeln!(s, "conventions:");
        for (k, v) in [
            ("frame", &c.frame_components),
            ("koszul", &c.koszul),
            ("curvature", &c.curvature),
            ("ricci", &c.ricci),
            ("cross-check", &c.cross_check),
        ] {
            let _ = writeln!(s, "  {k:<12}{v}");
        }
        s.push('\n');
        for e in &self.entries {
            let _ = writeln!(s, "[{:<7}] {}: {}", e.status.label(), e.id, e.detail);
            for v in &e.values {
                let _ = writeln!(s, "            {} = {}", v.name, v.value);
            }
            for w in &e.witnesses {
                let idx: Vec<String> = w.index.iter().map(usize::to_string).collect();
                let _ = writeln!(s, "            at ({}): {}", idx.join(","), w.value);
            }
            if e.omitted_witnesses > 0 {
                let _ = writeln!(s, "            ... {} more", e.omitted_witnesses);
            }
            if let Some(cc) = &e.cross_check {
                if !cc.agreed {
                    let _ = writeln!(s, "            cross-check used {} points", cc.points);
                }
            }
        }
        let _ = writeln!(
            s,
            "\n{} entries, {} failures",
            self.summary.entries, self.summary.failures
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_identity_carries_witness_and_renderings_agree() {
        let chart = Chart::new(vec!["t".into()], None).unwrap();
        let mut rb = ReportBuilder::new("demo", &chart, 1);
        let mut ok = IdentityCheck::new("ok", "t - t = 0");
        ok.push(vec![0], Expr::var(0), Expr::var(0));
        let mut bad = IdentityCheck::new("bad", "t = 0");
        bad.push(vec![1], Expr::var(0), Expr::zero());
        rb.check(&ok);
        rb.check(&bad);
        let r = rb.finish();
        assert!(r.has_failures());
        let bad = r.entry("bad").unwrap();
        assert_eq!(
            bad.witnesses,
            [WitnessOut {
                index: vec![2],
                value: "t".into()
            }]
        );
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let human = r.to_human();
        for e in json["entries"].as_array().unwrap() {
            let line = format!("[{:<7}] {}", e["status"].as_str().unwrap(), e["id"].as_str().unwrap());
            assert!(human.contains(&line), "{line}");
        }
        assert_eq!(
            r.entry("ok").unwrap().cross_check.as_ref().unwrap().points,
            CROSS_CHECK_POINTS
        );
    }
}
