//! Append-only JSONL log of experiment runs.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::focksim::StoppingRule;

pub const JOURNAL_FILE: &str = "journal.jsonl";

/// One completed command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub id: String,
    pub timestamp: String,
    pub command: String,
    /// Arguments as given.
    pub argv: Vec<String>,
    /// Arguments that reproduce the run, including a generated seed.
    pub replay: Vec<String>,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub backend: String,
    pub input_digest: Option<String>,
    pub samples: Option<u64>,
    pub postselected: Option<u64>,
    pub stopping_rule: Option<StoppingRule>,
    pub estimates: serde_json::Value,
    pub artifacts: Vec<String>,
    pub duration_secs: f64,
}

/// Journal at `<dir>/journal.jsonl`.
#[derive(Debug, Clone)]
pub struct Journal {
    path: PathBuf,
}

impl Journal {
    pub fn in_dir(dir: &Path) -> Self {
        Self {
            path: dir.join(JOURNAL_FILE),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, record: &ExperimentRecord) -> Result<()> {
        if let Some(parent) = self.path.parent() {
            fs::create_dir_all(parent)?;
        }
        let mut line = serde_json::to_string(record)?;
        line.push('\n');
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.write_all(line.as_bytes())?;
        Ok(())
    }

    /// All records, oldest first; a missing journal is empty.
    pub fn read_all(&self) -> Result<Vec<ExperimentRecord>> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for line in BufReader::new(file).lines() {
            let line = line?;
            if !line.trim().is_empty() {
                out.push(serde_json::from_str(&line)?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str) -> ExperimentRecord {
        ExperimentRecord {
            id: id.into(),
            timestamp: "2026-01-01T00:00:00Z".into(),
            command: "permanent".into(),
            argv: vec!["permanent".into()],
            replay: vec!["permanent".into()],
            params: serde_json::json!({}),
            seed: Some(1),
            backend: "exact".into(),
            input_digest: None,
            samples: None,
            postselected: None,
            stopping_rule: Some(StoppingRule::fixed(10)),
            estimates: serde_json::json!({"permanent": 2.0}),
            artifacts: vec![],
            duration_secs: 0.5,
        }
    }

    #[test]
    fn append_and_read_back() {
        let dir = tempfile::tempdir().unwrap();
        let j = Journal::in_dir(&dir.path().join("nested"));
        assert!(j.read_all().unwrap().is_empty());
        j.append(&record("a")).unwrap();
        j.append(&record("b")).unwrap();
        let all = j.read_all().unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1], record("b"));
    }
}
