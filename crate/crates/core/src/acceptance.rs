//! The acceptance matrix: each criterion names a driver, the fields it runs
//! over, and optionally the checks it looks at.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::codes::CodeSpace;
use crate::error::Result;
use crate::gf::make_field;
use crate::verify::{self, Config, Status, TheoremReport};

pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub driver: &'static str,
    pub fields: &'static [u32],
    /// Restrict to these check ids; empty means all.
    pub checks: &'static [&'static str],
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion { number: 1, title: "table reproduction, q even", driver: "tables", fields: &[4, 8], checks: &[] },
    Criterion { number: 2, title: "table reproduction, q odd", driver: "tables", fields: &[3, 5], checks: &[] },
    Criterion { number: 3, title: "point and hyperplane censuses", driver: "census", fields: &[2, 3, 4, 5], checks: &[] },
    Criterion { number: 4, title: "planes meeting the nucleus plane in a line or a point", driver: "unique-planes", fields: &[4, 8], checks: &[] },
    Criterion { number: 5, title: "r2n = h1 for planes", driver: "r2n-h1", fields: &[4, 8], checks: &[] },
    Criterion { number: 6, title: "solids of minimum rank 2", driver: "solids", fields: &[2, 3, 4, 5], checks: &[] },
    Criterion { number: 7, title: "completeness dichotomy", driver: "completeness", fields: &[3, 4], checks: &[] },
    Criterion { number: 8, title: "equivalence class counts", driver: "class-counts", fields: &[3, 4, 5], checks: &[] },
    Criterion { number: 9, title: "trace-form plane parameters", driver: "constant-rank-3", fields: &[2, 3, 4, 5], checks: &["code"] },
    Criterion { number: 10, title: "constant rank 3 hyperplane distribution discrepancy", driver: "constant-rank-3", fields: &[3, 4], checks: &["OD4"] },
    Criterion { number: 11, title: "structural properties", driver: "properties", fields: &[2, 3, 4, 5], checks: &[] },
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub number: u8,
    pub title: String,
    pub status: Status,
    /// `q -> status` for each field that ran.
    pub fields: BTreeMap<u32, Status>,
    /// Failing check ids, as `q:driver/check`.
    pub failures: Vec<String>,
}

impl CriterionResult {
    /// `criterion N: PASS title [q=..]`.
    pub fn line(&self) -> String {
        let verdict = if self.status.is_failure() {
            "FAIL"
        } else if self.fields.is_empty() {
            "SKIP"
        } else {
            "PASS"
        };
        let per: Vec<String> = self.fields.iter().map(|(q, s)| format!("q={q} {s}")).collect();
        let mut s = format!("criterion {:>2}: {verdict} {} [{}]", self.number, self.title, per.join(", "));
        if !self.failures.is_empty() {
            s += &format!(" failing: {}", self.failures.join(", "));
        }
        s
    }
}

/// Runs every criterion, over `only` if given, else over each criterion's own fields.
/// Driver runs are shared between criteria.
pub fn run(only: Option<&[u32]>, cfg: &Config) -> Result<Vec<CriterionResult>> {
    let mut spaces: BTreeMap<u32, CodeSpace> = BTreeMap::new();
    let mut cache: BTreeMap<(u32, &str), TheoremReport> = BTreeMap::new();
    let mut out = Vec::new();
    for c in &CRITERIA {
        let qs: Vec<u32> = match only {
            Some(list) => list.to_vec(),
            None => c.fields.to_vec(),
        };
        let mut res = CriterionResult {
            number: c.number,
            title: c.title.into(),
            status: Status::Pass,
            fields: BTreeMap::new(),
            failures: Vec::new(),
        };
        for q in qs {
            let (p, h) = crate::gf::prime_power(q).ok_or(crate::error::Error::FieldSpec(q.to_string()))?;
            let f = make_field(p, h)?;
            if !verify::applies(c.driver, &f) || (c.driver == "tables" && (f.is_even() != (c.number == 1))) {
                continue;
            }
            if let std::collections::btree_map::Entry::Vacant(e) = spaces.entry(q) {
                e.insert(CodeSpace::new(&f)?);
            }
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry((q, c.driver)) {
                e.insert(verify::run(c.driver, &spaces[&q], cfg)?);
            }
            let rep = &cache[&(q, c.driver)];
            let mut worst = Status::Pass;
            for chk in rep.checks.iter().filter(|k| c.checks.is_empty() || c.checks.contains(&k.id.as_str())) {
                worst = worst.max(chk.status);
                if chk.status.is_failure() {
                    res.failures.push(format!("{q}:{}/{}", c.driver, chk.id));
                }
            }
            res.fields.insert(q, worst);
            res.status = res.status.max(worst);
        }
        out.push(res);
    }
    Ok(out)
}
