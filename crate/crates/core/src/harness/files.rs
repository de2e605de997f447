//! Input files and content digests.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graphlib::Graph;
use crate::numkernel::ComplexMatrix;

/// Raw bytes of an input file plus their SHA-256.
#[derive(Debug, Clone)]
pub struct InputFile {
    pub contents: String,
    pub digest: String,
}

impl InputFile {
    pub fn read(path: &Path) -> Result<Self> {
        let bytes = fs::read(path)?;
        let digest = digest_bytes(&bytes);
        let contents = String::from_utf8(bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(Self { contents, digest })
    }
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Reads a graph: `.csv` as a 0/1 adjacency matrix, anything else as the
/// 1-indexed JSON edge list.
pub fn load_graph(path: &Path) -> Result<(Graph, String)> {
    let file = InputFile::read(path)?;
    let g = if is_csv(path) {
        Graph::from_adjacency_csv(&file.contents)?
    } else {
        Graph::from_json(&file.contents)?
    };
    Ok((g, file.digest))
}

/// Reads a matrix: `.csv` as real rows, anything else as
/// `{"re": [[..]], "im": [[..]]}` JSON (`im` optional).
pub fn load_matrix(path: &Path) -> Result<(ComplexMatrix, String)> {
    let file = InputFile::read(path)?;
    let m = if is_csv(path) {
        parse_real_csv(&file.contents)?
    } else {
        serde_json::from_str(&file.contents)?
    };
    Ok((m, file.digest))
}

pub fn parse_real_csv(s: &str) -> Result<ComplexMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(s.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let row = record
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| Error::Parse(format!("{f:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    ComplexMatrix::from_real_rows(&rows)
}
