//! Prime-power value tables and multiplicative-function resolution.

use std::collections::BTreeMap;
use std::path::Path;

use charsum_core::multfunc::{FunctionSpec, MultiplicativeFunction};
use serde::Deserialize;

use crate::{LabError, Result};

#[derive(Debug, Deserialize)]
struct Row {
    p: u64,
    k: u32,
    value: f64,
}

/// Reads a CSV with header `p,k,value`.
pub fn load_table(path: &Path) -> Result<BTreeMap<(u64, u32), f64>> {
    let csv_err = |source| LabError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let mut table = BTreeMap::new();
    for row in reader.deserialize::<Row>() {
        let row = row.map_err(csv_err)?;
        if table.insert((row.p, row.k), row.value).is_some() {
            return Err(LabError::Usage(format!(
                "{}: duplicate entry for ({}, {})",
                path.display(),
                row.p,
                row.k
            )));
        }
    }
    Ok(table)
}

/// Builds the function named by `spec` on `[1, x_max]`, loading tables
/// from disk.
pub fn resolve_function(spec: &FunctionSpec, x_max: u64) -> Result<MultiplicativeFunction> {
    match spec {
        FunctionSpec::Table(path) => {
            let table = load_table(Path::new(path))?;
            Ok(MultiplicativeFunction::from_table(spec.to_string(), &table, x_max)?)
        }
        other => Ok(MultiplicativeFunction::from_spec(other, x_max)?),
    }
}
