use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

pub const SCHEMA: &str = "ak-monodromy-report/1";

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Section {
    pub tier: String,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl Section {
    pub fn new(tier: &str) -> Self {
        Section { tier: tier.into(), checks: Vec::new(), data: Value::Null }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub g0: u32,
    pub m: u32,
    pub tiers: Vec<String>,
    pub passed: bool,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} g0={} m={} tiers={}", self.schema, self.g0, self.m, self.tiers.join(","));
        for sec in &self.sections {
            let _ = writeln!(s, "[{}]", sec.tier);
            for c in &sec.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(s, "  {mark} {}", c.name);
                } else {
                    let _ = writeln!(s, "  {mark} {}: {}", c.name, c.detail);
                }
            }
        }
        let _ = writeln!(s, "overall: {}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}
