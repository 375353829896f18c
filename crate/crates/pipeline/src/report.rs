//! Run reports: the machine document and its human rendering.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::artifacts::{check_artifact, ArtifactRef, Integrity};

pub const SCHEMA: &str = "sclab.run/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    Ok,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub name: String,
    pub status: StageStatus,
    pub error: Option<String>,
    pub artifacts: Vec<ArtifactRef>,
    pub summary: serde_json::Value,
}

/// Timings live in a separate file so that this document is reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub config: String,
    pub seed: u64,
    pub green: bool,
    pub halted_at: Option<String>,
    pub stages: Vec<StageRecord>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn human(&self) -> String {
        let mut s = String::new();
        let verdict = if self.green { "GREEN".to_string() } else { format!("HALTED at {}", self.halted_at.as_deref().unwrap_or("?")) };
        let _ = writeln!(s, "run {verdict}  (seed {}, schema {})", self.seed, self.schema);
        for st in &self.stages {
            let status = match st.status {
                StageStatus::Ok => "ok",
                StageStatus::Failed => "FAILED",
                StageStatus::Skipped => "skipped",
            };
            let _ = writeln!(s, "  {:<9} {:<8} {} artifact(s)", st.name, status, st.artifacts.len());
            if let Some(e) = &st.error {
                let _ = writeln!(s, "            {e}");
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hole {
    pub stage: String,
    pub path: String,
    pub problem: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Audit {
    pub report: RunReport,
    pub holes: Vec<Hole>,
}

impl Audit {
    /// 0 green, 2 halted, 3 missing or altered artifacts.
    pub fn exit_code(&self) -> i32 {
        if !self.holes.is_empty() {
            3
        } else if self.report.green {
            0
        } else {
            2
        }
    }

    pub fn human(&self) -> String {
        let mut s = self.report.human();
        for h in &self.holes {
            let _ = writeln!(s, "  HOLE [{}] {}: {}", h.stage, h.path, h.problem);
        }
        s
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AuditError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("report document is malformed: {0}")]
    Malformed(String),
    #[error("unsupported schema `{0}`")]
    Schema(String),
}

/// Reloads `report.json` and re-hashes every artifact it names.
pub fn audit(run_dir: &Path) -> Result<Audit, AuditError> {
    let path = run_dir.join("report.json");
    let text = std::fs::read_to_string(&path)
        .map_err(|source| AuditError::Read { path: path.display().to_string(), source })?;
    let report: RunReport = serde_json::from_str(&text).map_err(|e| AuditError::Malformed(e.to_string()))?;
    if report.schema != SCHEMA {
        return Err(AuditError::Schema(report.schema));
    }
    let mut holes = Vec::new();
    for st in &report.stages {
        for a in &st.artifacts {
            let problem = match check_artifact(run_dir, a) {
                Integrity::Intact => continue,
                Integrity::Missing => "missing".to_string(),
                Integrity::Tampered { found } => format!("digest {found} does not match {}", a.sha256),
            };
            holes.push(Hole { stage: st.name.clone(), path: a.path.clone(), problem });
        }
    }
    Ok(Audit { report, holes })
}
