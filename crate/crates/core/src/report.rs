//! Verification reports: one entry per check, every number an exact string.

use std::collections::BTreeMap;

use serde::Serialize;

pub type Inputs = BTreeMap<String, String>;

/// One checked claim. `pass` is `None` for computed-only entries, such as a
/// bound evaluated outside the range where it is asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub inputs: Inputs,
    pub expected: String,
    pub computed: String,
    pub pass: Option<bool>,
}

impl CheckEntry {
    /// Passes iff the two renderings agree.
    pub fn compare(id: &str, inputs: &Inputs, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        CheckEntry {
            id: id.to_string(),
            inputs: inputs.clone(),
            pass: Some(expected == computed),
            expected,
            computed,
        }
    }

    pub fn outcome(id: &str, inputs: &Inputs, expected: impl ToString, computed: impl ToString, ok: bool) -> Self {
        CheckEntry {
            id: id.to_string(),
            inputs: inputs.clone(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass: Some(ok),
        }
    }

    pub fn info(id: &str, inputs: &Inputs, expected: impl ToString, computed: impl ToString) -> Self {
        CheckEntry {
            id: id.to_string(),
            inputs: inputs.clone(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}

pub fn inputs<const N: usize>(pairs: [(&str, String); N]) -> Inputs {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvironmentStamp {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
}

impl EnvironmentStamp {
    pub fn new(timestamp: impl Into<String>) -> Self {
        EnvironmentStamp {
            tool: "treespec".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: timestamp.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub informational: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub config: Inputs,
    pub environment: EnvironmentStamp,
    pub summary: Summary,
    pub checks: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new(command: &str, config: Inputs, environment: EnvironmentStamp, checks: Vec<CheckEntry>) -> Self {
        let mut summary = Summary {
            total: checks.len(),
            ..Summary::default()
        };
        for c in &checks {
            match c.pass {
                Some(true) => summary.passed += 1,
                Some(false) => summary.failed += 1,
                None => summary.informational += 1,
            }
        }
        VerificationReport {
            command: command.to_string(),
            config,
            environment,
            summary,
            checks,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "inputs", "expected", "computed", "pass"])
            .expect("in-memory write");
        for c in &self.checks {
            let inputs: Vec<String> = c.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            w.write_record([
                c.id.as_str(),
                &inputs.join(" "),
                &c.expected,
                &c.computed,
                pass_label(c.pass),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    /// One line per check plus a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let inputs: Vec<String> = c.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("{:<5} {} [{}]", pass_label(c.pass), c.id, inputs.join(" ")));
            if c.failed() {
                out.push_str(&format!(" expected {} computed {}", c.expected, c.computed));
            }
            out.push('\n');
        }
        let s = self.summary;
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} info\n",
            s.total, s.passed, s.failed, s.informational
        ));
        out
    }
}

fn pass_label(p: Option<bool>) -> &'static str {
    match p {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "INFO",
    }
}

/// Collapses many per-tree entries into one entry per `(id, n)`, keeping the
/// first failure verbatim.
pub fn aggregate(entries: Vec<CheckEntry>) -> Vec<CheckEntry> {
    struct Group {
        id: String,
        n: String,
        count: usize,
        passed: usize,
        info: usize,
        first_failure: Option<CheckEntry>,
        sample: CheckEntry,
    }
    let mut order: Vec<(String, String)> = Vec::new();
    let mut groups: BTreeMap<(String, String), Group> = BTreeMap::new();
    for e in entries {
        let n = e.inputs.get("n").cloned().unwrap_or_default();
        let key = (e.id.clone(), n.clone());
        let g = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            Group {
                id: e.id.clone(),
                n,
                count: 0,
                passed: 0,
                info: 0,
                first_failure: None,
                sample: e.clone(),
            }
        });
        g.count += 1;
        match e.pass {
            Some(true) => g.passed += 1,
            None => g.info += 1,
            Some(false) => {
                if g.first_failure.is_none() {
                    g.first_failure = Some(e);
                }
            }
        }
    }
    order
        .into_iter()
        .map(|key| {
            let g = groups.remove(&key).expect("grouped");
            let ins = inputs([("n", g.n.clone()), ("instances", g.count.to_string())]);
            if g.info == g.count {
                return CheckEntry::info(
                    &g.id,
                    &ins,
                    g.sample.expected,
                    format!("{} computed, not asserted", g.count),
                );
            }
            let failed = g.count - g.passed - g.info;
            let computed = match &g.first_failure {
                Some(f) => {
                    let fi: Vec<String> = f.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    format!(
                        "{}/{} pass; first failure [{}]: expected {} computed {}",
                        g.passed,
                        g.count - g.info,
                        fi.join(" "),
                        f.expected,
                        f.computed
                    )
                }
                None => format!("{}/{} pass", g.passed, g.count - g.info),
            };
            CheckEntry::outcome(&g.id, &ins, "all pass", computed, failed == 0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(id: &str, n: usize, pass: Option<bool>) -> CheckEntry {
        CheckEntry {
            id: id.into(),
            inputs: inputs([("n", n.to_string())]),
            expected: "1".into(),
            computed: if pass == Some(false) { "2".into() } else { "1".into() },
            pass,
        }
    }

    #[test]
    fn summary_counts() {
        let r = VerificationReport::new(
            "verify",
            Inputs::new(),
            EnvironmentStamp::new("0"),
            vec![
                entry("a", 3, Some(true)),
                entry("b", 3, Some(false)),
                entry("c", 3, None),
            ],
        );
        assert_eq!(
            r.summary,
            Summary {
                total: 3,
                passed: 1,
                failed: 1,
                informational: 1
            }
        );
        assert!(!r.all_pass());
        assert!(r.to_text().contains("FAIL  b [n=3] expected 1 computed 2"));
        assert!(r
            .to_csv()
            .starts_with("id,inputs,expected,computed,pass\na,n=3,1,1,PASS\n"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][2]["pass"], serde_json::Value::Null);
    }

    #[test]
    fn aggregation_keeps_first_failure() {
        let agg = aggregate(vec![
            entry("a", 3, Some(true)),
            entry("a", 4, Some(true)),
            entry("a", 3, Some(false)),
            entry("a", 3, Some(true)),
            entry("peak", 5, None),
        ]);
        assert_eq!(agg.len(), 3);
        assert_eq!(agg[0].pass, Some(false));
        assert!(agg[0].computed.starts_with("2/3 pass; first failure [n=3]"));
        assert_eq!(agg[1].computed, "1/1 pass");
        assert_eq!(agg[2].pass, None);
    }
}
