//! Matrix file I/O: UTF-8 JSON objects `{"n": N, "rows": [[...]]}` with
//! finite decimal entries. Symmetric loads tolerate rounding-level asymmetry
//! (up to 1e-12, reported on stderr when symmetrization fires); anything
//! larger is a parse error.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use trace_metric::symcore::{GeneralMatrix, SymMatrix};

use crate::CliError;

/// On-disk matrix layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_sym(m: &SymMatrix) -> Self {
        MatrixFile {
            n: m.order(),
            rows: m.rows(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }
}

fn parse_file(path: &Path) -> Result<MatrixFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let file: MatrixFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    if file.rows.len() != file.n {
        return Err(CliError::parse(format!(
            "{}: expected {} rows, found {}",
            path.display(),
            file.n,
            file.rows.len()
        )));
    }
    for (i, row) in file.rows.iter().enumerate() {
        if row.len() != file.n {
            return Err(CliError::parse(format!(
                "{}: row {i} has length {}, expected {}",
                path.display(),
                row.len(),
                file.n
            )));
        }
        for &v in row {
            if !v.is_finite() {
                return Err(CliError::parse(format!(
                    "{}: non-finite entry in row {i}",
                    path.display()
                )));
            }
        }
    }
    Ok(file)
}

/// Load a general square matrix.
pub fn load_general(path: &Path) -> Result<GeneralMatrix, CliError> {
    let file = parse_file(path)?;
    GeneralMatrix::from_rows(&file.rows)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

/// Load a matrix that must be symmetric: exact input passes through,
/// rounding-level asymmetry is averaged away with a note on stderr, anything
/// beyond 1e-12 (relative to the largest entry) is rejected.
pub fn load_symmetric(path: &Path) -> Result<SymMatrix, CliError> {
    let general = load_general(path)?;
    let asym = general.max_asymmetry();
    if asym == 0.0 {
        return SymMatrix::from_general(&general)
            .map_err(|e| CliError::parse(format!("{}: {e}", path.display())));
    }
    if asym > 1e-12 * general.max_abs().max(1.0) {
        return Err(CliError::parse(format!(
            "{}: matrix is not symmetric (max |a_ij - a_ji| = {asym:e})",
            path.display()
        )));
    }
    eprintln!(
        "note: symmetrized {} (max asymmetry {asym:e} within tolerance 1e-12)",
        path.display()
    );
    Ok(general.symmetrized())
}
