//! Loading matrices from dense text files or categorical CSV tables.

use std::collections::HashMap;
use std::path::PathBuf;

use crate::bitmat::{read_matrix, BoolMatrix};
use crate::error::{Error, Result};

/// On-disk layout of a dataset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DatasetFormat {
    #[default]
    Dense,
    CsvOneHot,
}

impl std::str::FromStr for DatasetFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(DatasetFormat::Dense),
            "csv" | "csv-onehot" => Ok(DatasetFormat::CsvOneHot),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

/// How to turn a file into a Boolean matrix.
///
/// For CSV input, `categorical` columns expand to one column per distinct
/// value (in order of first appearance), `binary` columns holding `0`/`1`
/// pass through as a single column, and `ignore` columns are dropped.
/// Undeclared columns are treated as categorical unless they look numeric,
/// which is an error. With `all_categorical` every non-ignored,
/// non-binary column is categorical.
#[derive(Clone, Debug, Default)]
pub struct DatasetSpec {
    pub path: PathBuf,
    pub format: DatasetFormat,
    pub categorical: Vec<String>,
    pub binary: Vec<String>,
    pub ignore: Vec<String>,
    pub all_categorical: bool,
    pub missing: Option<String>,
    /// When false, columns are named `c0`, `c1`, ….
    pub has_header: bool,
}

impl DatasetSpec {
    pub fn dense(path: impl Into<PathBuf>) -> Self {
        DatasetSpec {
            path: path.into(),
            format: DatasetFormat::Dense,
            has_header: true,
            ..Default::default()
        }
    }

    pub fn csv(path: impl Into<PathBuf>) -> Self {
        DatasetSpec {
            path: path.into(),
            format: DatasetFormat::CsvOneHot,
            has_header: true,
            ..Default::default()
        }
    }

    /// UCI Zoo: animal name dropped, 15 Boolean attributes kept as is,
    /// `legs` and `type` one-hot encoded (101 × 28).
    pub fn zoo(path: impl Into<PathBuf>) -> Self {
        let binary = [
            "hair", "feathers", "eggs", "milk", "airborne", "aquatic", "predator", "toothed",
            "backbone", "breathes", "venomous", "fins", "tail", "domestic", "catsize",
        ];
        DatasetSpec {
            categorical: vec!["legs".into(), "type".into()],
            binary: binary.iter().map(|s| s.to_string()).collect(),
            ignore: vec!["name".into()],
            ..Self::csv(path)
        }
    }

    /// UCI Lung Cancer: headerless, every column nominal, `?` missing.
    pub fn lung(path: impl Into<PathBuf>) -> Self {
        DatasetSpec {
            all_categorical: true,
            missing: Some("?".into()),
            has_header: false,
            ..Self::csv(path)
        }
    }

    /// Dataset name used in reports: the file stem.
    pub fn name(&self) -> String {
        self.path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".into())
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Dataset {
            path: self.path.clone(),
            msg: msg.into(),
        }
    }
}

/// Loads the matrix described by `spec`.
pub fn load_dataset(spec: &DatasetSpec) -> Result<BoolMatrix> {
    match spec.format {
        DatasetFormat::Dense => read_matrix(&spec.path),
        DatasetFormat::CsvOneHot => ingest_csv_onehot(spec),
    }
}

/// One-hot encodes a CSV table.
pub fn ingest_csv_onehot(spec: &DatasetSpec) -> Result<BoolMatrix> {
    ingest_csv_onehot_labeled(spec).map(|(m, _)| m)
}

enum Kind {
    Skip,
    Binary,
    Categorical,
}

/// Like [`ingest_csv_onehot`], also returning the output column names
/// (`column=value` for one-hot columns).
pub fn ingest_csv_onehot_labeled(spec: &DatasetSpec) -> Result<(BoolMatrix, Vec<String>)> {
    let file = std::fs::File::open(&spec.path).map_err(|e| spec.err(e.to_string()))?;
    read_onehot(file, spec)
}

fn looks_numeric(s: &str) -> bool {
    s.parse::<f64>().is_ok()
}

fn read_onehot<R: std::io::Read>(input: R, spec: &DatasetSpec) -> Result<(BoolMatrix, Vec<String>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(spec.has_header)
        .trim(csv::Trim::All)
        .from_reader(input);
    let records: Vec<csv::StringRecord> = rdr.records().collect::<std::result::Result<_, _>>()?;
    let width = match records.first() {
        Some(r) => r.len(),
        None => return Err(spec.err("no data rows")),
    };
    let header: Vec<String> = if spec.has_header {
        rdr.headers()?.iter().map(str::to_string).collect()
    } else {
        (0..width).map(|c| format!("c{c}")).collect()
    };
    for name in spec.categorical.iter().chain(&spec.binary).chain(&spec.ignore) {
        if !header.contains(name) {
            return Err(spec.err(format!("declared column {name:?} not in header")));
        }
    }
    let is_missing = |v: &str| spec.missing.as_deref() == Some(v) || v.is_empty();

    let kinds: Vec<Kind> = header
        .iter()
        .enumerate()
        .map(|(c, name)| {
            if spec.ignore.contains(name) {
                Ok(Kind::Skip)
            } else if spec.binary.contains(name) {
                Ok(Kind::Binary)
            } else if spec.all_categorical || spec.categorical.contains(name) {
                Ok(Kind::Categorical)
            } else if records
                .iter()
                .any(|r| r.get(c).is_some_and(|v| !is_missing(v) && looks_numeric(v)))
            {
                Err(spec.err(format!("column {name:?} is numeric; declare it categorical or binary")))
            } else {
                Ok(Kind::Categorical)
            }
        })
        .collect::<Result<_>>()?;

    // output columns: (source column, value) with value None for binary
    let mut out_cols: Vec<(usize, Option<String>)> = Vec::new();
    let mut index: HashMap<(usize, String), usize> = HashMap::new();
    for (c, kind) in kinds.iter().enumerate() {
        match kind {
            Kind::Skip => {}
            Kind::Binary => out_cols.push((c, None)),
            Kind::Categorical => {
                for r in &records {
                    let v = r.get(c).unwrap_or("");
                    if is_missing(v) || index.contains_key(&(c, v.to_string())) {
                        continue;
                    }
                    index.insert((c, v.to_string()), out_cols.len());
                    out_cols.push((c, Some(v.to_string())));
                }
            }
        }
    }
    // keep one-hot blocks contiguous in column order
    let mut order: Vec<usize> = (0..out_cols.len()).collect();
    order.sort_by_key(|&o| (out_cols[o].0, o));
    let mut position = vec![0; out_cols.len()];
    for (p, &o) in order.iter().enumerate() {
        position[o] = p;
    }
    if out_cols.is_empty() {
        return Err(spec.err("no output columns"));
    }

    let mut m = BoolMatrix::zeros(records.len(), out_cols.len());
    for (i, r) in records.iter().enumerate() {
        if r.len() != width {
            return Err(spec.err(format!("row {} has {} fields, expected {width}", i + 1, r.len())));
        }
        for (c, kind) in kinds.iter().enumerate() {
            let v = &r[c];
            match kind {
                Kind::Skip => {}
                Kind::Binary => {
                    let o = index_of_binary(&out_cols, c);
                    match v {
                        "1" | "true" => m.set(i, position[o], true),
                        "0" | "false" => {}
                        _ if is_missing(v) => {}
                        _ => {
                            return Err(spec.err(format!(
                                "column {:?} row {}: {v:?} is not 0/1",
                                header[c],
                                i + 1
                            )))
                        }
                    }
                }
                Kind::Categorical => {
                    if !is_missing(v) {
                        m.set(i, position[index[&(c, v.to_string())]], true);
                    }
                }
            }
        }
    }
    let names = order
        .iter()
        .map(|&o| match &out_cols[o] {
            (c, None) => header[*c].clone(),
            (c, Some(v)) => format!("{}={v}", header[*c]),
        })
        .collect();
    Ok((m, names))
}

fn index_of_binary(cols: &[(usize, Option<String>)], c: usize) -> usize {
    cols.iter()
        .position(|(src, v)| *src == c && v.is_none())
        .expect("binary column registered")
}
