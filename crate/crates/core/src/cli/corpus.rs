//! The bundled fixture corpus and the `corpus` command.

use rayon::prelude::*;
use serde::Serialize;

use super::check::{cmd_check, cmd_validate, read_spec, CheckOptions, Mode};
use super::report::{verdict_text, CheckRecord, Status, TOOL, VERSION};
use crate::analyze::DEFAULT_N_MAX;
use crate::exactla::FieldSpec;
use crate::modcat::Verdict;

/// What a fixture run must produce.
#[derive(Clone, Copy, Debug)]
pub struct Expectation {
    /// Exit code of `validate` (and of `check` when validation succeeds).
    pub exit_code: i32,
    /// Error kind reported when the input is rejected.
    pub error_kind: Option<&'static str>,
    /// Every check whose name starts with the prefix has this verdict, and
    /// at least one such check exists.
    pub verdicts: &'static [(&'static str, Verdict)],
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub source: &'static str,
    pub expect: Expectation,
}

const fn passes(verdicts: &'static [(&'static str, Verdict)]) -> Expectation {
    Expectation { exit_code: 0, error_kind: None, verdicts }
}

const fn rejected(exit_code: i32, error_kind: Option<&'static str>) -> Expectation {
    Expectation { exit_code, error_kind, verdicts: &[] }
}

pub fn fixtures() -> Vec<Fixture> {
    use Verdict::{No, Yes};
    vec![
        Fixture {
            name: "FIX-A2",
            tags: &["hw", "eps", "hereditary"],
            source: include_str!("../../fixtures/a2.json"),
            expect: passes(&[("highest weight", Yes), ("ε-stratified", Yes), ("4-homological", Yes)]),
        },
        Fixture {
            name: "FIX-A2-Q",
            tags: &["hw", "eps", "rationals"],
            source: include_str!("../../fixtures/a2_rationals.json"),
            expect: passes(&[("highest weight", Yes), ("4-homological", Yes)]),
        },
        Fixture {
            name: "FIX-A3",
            tags: &["hw", "eps", "hereditary"],
            source: include_str!("../../fixtures/a3.json"),
            expect: passes(&[("highest weight", Yes), ("ε-stratified", Yes)]),
        },
        Fixture {
            name: "FIX-NAK",
            tags: &["hw", "eps", "porism"],
            source: include_str!("../../fixtures/nakayama.json"),
            expect: passes(&[("highest weight", No), ("ε-stratified", No)]),
        },
        Fixture {
            name: "FIX-DUAL",
            tags: &["hw", "eps"],
            source: include_str!("../../fixtures/dual.json"),
            expect: passes(&[("highest weight", No)]),
        },
        Fixture {
            name: "FIX-KRO",
            tags: &["eps", "exactness"],
            source: include_str!("../../fixtures/kronecker.json"),
            expect: passes(&[("ε-stratified", No), ("highest weight", No)]),
        },
        Fixture {
            name: "FIX-MV-SPLIT",
            tags: &["mv"],
            source: include_str!("../../fixtures/mv_split.json"),
            expect: passes(&[]),
        },
        Fixture {
            name: "FIX-MV-IDENTITY",
            tags: &["mv"],
            source: include_str!("../../fixtures/mv_identity.json"),
            expect: passes(&[]),
        },
        Fixture {
            name: "FIX-MV-ZERO-PAIRING",
            tags: &["mv"],
            source: include_str!("../../fixtures/mv_zero_pairing.json"),
            expect: passes(&[]),
        },
        Fixture {
            name: "NEG-LOOP",
            tags: &["negative"],
            source: include_str!("../../fixtures/neg_loop.json"),
            expect: rejected(2, Some("POSSIBLY-INFINITE")),
        },
        Fixture {
            name: "NEG-MALFORMED",
            tags: &["negative"],
            source: include_str!("../../fixtures/neg_malformed.json"),
            expect: rejected(1, Some("PARSE")),
        },
        Fixture {
            name: "NEG-UNKNOWN-KEY",
            tags: &["negative"],
            source: include_str!("../../fixtures/neg_unknown_key.json"),
            expect: rejected(1, Some("SCHEMA")),
        },
        Fixture {
            name: "NEG-BAD-THETA",
            tags: &["negative", "mv"],
            source: include_str!("../../fixtures/neg_bad_theta.json"),
            expect: rejected(2, None),
        },
        Fixture {
            name: "NEG-NOT-STRATIFICATION",
            tags: &["negative"],
            source: include_str!("../../fixtures/neg_not_stratification.json"),
            expect: rejected(2, None),
        },
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub tags: Vec<String>,
    pub input_hash: Option<String>,
    pub field: Option<String>,
    pub oracle: bool,
    pub expected_exit: i32,
    pub validate_exit: i32,
    pub check_exit: Option<i32>,
    pub status: Status,
    /// Why the entry failed, one line per broken expectation.
    pub witnesses: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub fixtures: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub filter: Option<String>,
    pub entries: Vec<CorpusEntry>,
    pub summary: CorpusSummary,
    pub exit_code: i32,
    pub timing: Option<f64>,
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{TOOL} {VERSION} corpus (seed {})\n", self.seed);
        for e in &self.entries {
            let status = if e.status == Status::Pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} ({} checks)\n", e.name, e.checks.len()));
            for w in &e.witnesses {
                out.push_str(&format!("     {w}\n"));
            }
        }
        out.push_str(&format!(
            "{} fixtures, {} passed, {} failed, exit {}\n",
            self.summary.fixtures, self.summary.passed, self.summary.failed, self.exit_code
        ));
        out
    }
}

/// Validate, then run every check mode with exhaustive search when the
/// field is finite, and compare against the fixture's expectation.
pub fn run_fixture(f: &Fixture, seed: u64) -> CorpusEntry {
    let bytes = f.source.as_bytes();
    let validated = cmd_validate(bytes, seed);
    let finite = read_spec(bytes).ok().and_then(|s| s.field_spec().ok()).is_some_and(|s| s != FieldSpec::Rationals);
    let mut witnesses = Vec::new();
    let mut checks = validated.checks.clone();
    let mut check_exit = None;
    if validated.exit_code == 0 {
        let opts = CheckOptions { mode: Mode::All, n: DEFAULT_N_MAX, oracle: finite, seed };
        let checked = cmd_check(bytes, &opts);
        check_exit = Some(checked.exit_code);
        if checked.exit_code != f.expect.exit_code {
            witnesses.push(format!("check exited {}, expected {}", checked.exit_code, f.expect.exit_code));
        }
        if let Some(e) = &checked.error {
            witnesses.push(format!("check error {}: {}", e.kind, e.message));
        }
        checks.extend(checked.checks);
    } else {
        if validated.exit_code != f.expect.exit_code {
            witnesses.push(format!("validate exited {}, expected {}", validated.exit_code, f.expect.exit_code));
        }
        if let Some(kind) = f.expect.error_kind {
            let got = validated.error.as_ref().map(|e| e.kind.as_str());
            if got != Some(kind) {
                witnesses.push(format!("expected error {kind}, got {}", got.unwrap_or("none")));
            }
        }
    }
    for c in checks.iter().filter(|c| !c.passed()) {
        if f.expect.exit_code == 0 {
            witnesses.push(format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("no witness")));
        }
    }
    for (prefix, want) in f.expect.verdicts {
        let matching: Vec<&CheckRecord> = checks.iter().filter(|c| c.name.starts_with(prefix)).collect();
        if matching.is_empty() {
            witnesses.push(format!("no check named {prefix:?}"));
        }
        for c in matching.iter().filter(|c| c.verdict != Some(*want)) {
            let got = c.verdict.map_or("none", verdict_text);
            witnesses.push(format!("{}: verdict {got}, expected {}", c.name, verdict_text(*want)));
        }
    }
    CorpusEntry {
        name: f.name.into(),
        tags: f.tags.iter().map(|t| t.to_string()).collect(),
        input_hash: validated.input_hash.clone(),
        field: validated.field.clone(),
        oracle: finite,
        expected_exit: f.expect.exit_code,
        validate_exit: validated.exit_code,
        check_exit,
        status: Status::from_bool(witnesses.is_empty()),
        witnesses,
        checks,
    }
}

/// Run the fixtures carrying `filter` (all when `None`) concurrently.
pub fn cmd_corpus(filter: Option<&str>, seed: u64) -> CorpusReport {
    let selected: Vec<Fixture> = fixtures().into_iter().filter(|f| filter.is_none_or(|t| f.tags.contains(&t))).collect();
    let mut entries: Vec<CorpusEntry> = selected.par_iter().map(|f| run_fixture(f, seed)).collect();
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = entries.iter().filter(|e| e.status == Status::Pass).count();
    let summary = CorpusSummary {
        fixtures: entries.len(),
        passed,
        failed: entries.len() - passed,
        checks: entries.iter().map(|e| e.checks.len()).sum(),
    };
    let exit_code = if summary.failed == 0 { 0 } else { 2 };
    CorpusReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        command: "corpus".into(),
        seed,
        filter: filter.map(str::to_string),
        entries,
        summary,
        exit_code,
        timing: None,
    }
}
