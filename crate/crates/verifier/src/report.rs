use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "modlab-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Refused,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Case {
    pub fn new(id: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            status,
            detail: detail.into(),
            hypothesis: None,
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: serde_json::Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_hypothesis(mut self, h: &str) -> Self {
        self.hypothesis = Some(h.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub refused: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(cases: &[Case]) -> Self {
        let count = |s: Status| cases.iter().filter(|c| c.status == s).count();
        Self {
            total: cases.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            refused: count(Status::Refused),
            inconclusive: count(Status::Inconclusive),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub corpus_sha256: String,
    pub seed: String,
    pub tool_version: String,
    pub summary: Summary,
    pub notes: Vec<String>,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(suite: &str, corpus_sha256: &str, seed: u64, notes: Vec<String>, cases: Vec<Case>) -> Self {
        Self {
            schema: REPORT_SCHEMA.into(),
            suite: suite.into(),
            corpus_sha256: corpus_sha256.into(),
            seed: seed.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            summary: Summary::of(&cases),
            notes,
            cases,
        }
    }

    /// 0 when every hard assertion holds, 1 on any failure, 2 when the only
    /// problems are refusals.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.refused > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
