//! Dataset ingestion, preprocessing and serialization.
//!
//! CSV files are UTF-8, comma-separated with a header row and `.` decimals.
//! Numeric values are written in the shortest decimal form that parses back
//! to the identical bits, so save/load round-trips are lossless. Categorical
//! columns are ordinal-encoded by first appearance; pair them with the
//! Hamming metric rather than a continuous one.

use crate::data::{ClassTable, DataError, LabeledDataset};
use crate::estimator::EntropyMapRecord;
use crate::numeric::pairwise_sum;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot parse `{token}` at data row {row}, column `{column}`")]
    ParseError { row: usize, column: String, token: String },
    #[error("column `{0}` not found in header")]
    MissingColumn(String),
    #[error("file has no data rows")]
    EmptyFile,
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Per-column interpretation of a CSV feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Encoding {
    Numeric,
    /// Ordinal-encoded categorical: tokens map to 0, 1, ... by first
    /// appearance.
    Categorical,
}

/// Which columns to read and how.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColumnSchema {
    label_column: String,
    feature_columns: Vec<String>,
    encodings: Vec<Encoding>,
}

impl ColumnSchema {
    pub fn new(
        label_column: impl Into<String>,
        feature_columns: Vec<String>,
        encodings: Vec<Encoding>,
    ) -> Result<Self, IoError> {
        let label_column = label_column.into();
        if feature_columns.is_empty() {
            return Err(IoError::InvalidSchema("at least one feature column".to_string()));
        }
        if feature_columns.contains(&label_column) {
            return Err(IoError::InvalidSchema(format!(
                "label column `{label_column}` also listed as a feature"
            )));
        }
        if encodings.len() != feature_columns.len() {
            return Err(IoError::InvalidSchema("one encoding per feature column".to_string()));
        }
        Ok(ColumnSchema { label_column, feature_columns, encodings })
    }

    /// All-numeric schema.
    pub fn numeric(
        label_column: impl Into<String>,
        feature_columns: Vec<String>,
    ) -> Result<Self, IoError> {
        let encodings = vec![Encoding::Numeric; feature_columns.len()];
        ColumnSchema::new(label_column, feature_columns, encodings)
    }

    pub fn label_column(&self) -> &str {
        &self.label_column
    }

    pub fn feature_columns(&self) -> &[String] {
        &self.feature_columns
    }
}

/// Builds a schema from a file header: every non-label column becomes a
/// feature, numeric unless listed in `categorical`.
pub fn infer_schema(
    path: &Path,
    label_column: &str,
    categorical: &[String],
) -> Result<ColumnSchema, IoError> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    if !headers.iter().any(|h| h == label_column) {
        return Err(IoError::MissingColumn(label_column.to_string()));
    }
    let feature_columns: Vec<String> = headers
        .iter()
        .filter(|h| *h != label_column)
        .map(str::to_string)
        .collect();
    for c in categorical {
        if !feature_columns.iter().any(|f| f == c) {
            return Err(IoError::MissingColumn(c.clone()));
        }
    }
    let encodings = feature_columns
        .iter()
        .map(|f| {
            if categorical.contains(f) {
                Encoding::Categorical
            } else {
                Encoding::Numeric
            }
        })
        .collect();
    ColumnSchema::new(label_column, feature_columns, encodings)
}

/// Reads a CSV file into a validated dataset.
///
/// Labels map through a [`ClassTable`] in first-appearance order, as do the
/// ordinal codes of categorical columns.
pub fn load_csv(path: &Path, schema: &ColumnSchema) -> Result<LabeledDataset, IoError> {
    let file = std::fs::File::open(path)?;
    load_csv_reader(file, schema)
}

pub fn load_csv_reader<R: Read>(
    reader: R,
    schema: &ColumnSchema,
) -> Result<LabeledDataset, IoError> {
    let mut reader = csv::Reader::from_reader(reader);
    let headers = reader.headers()?.clone();
    let col_index = |name: &str| -> Result<usize, IoError> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IoError::MissingColumn(name.to_string()))
    };
    let label_idx = col_index(&schema.label_column)?;
    let feature_idx: Vec<usize> = schema
        .feature_columns
        .iter()
        .map(|c| col_index(c))
        .collect::<Result<_, _>>()?;

    let mut class_names: Vec<String> = Vec::new();
    let mut class_map: HashMap<String, usize> = HashMap::new();
    let mut ordinal_maps: Vec<HashMap<String, usize>> =
        vec![HashMap::new(); schema.feature_columns.len()];
    let mut features = Vec::new();
    let mut labels = Vec::new();

    for (row_number, record) in reader.records().enumerate() {
        let record = record?;
        let row = row_number + 1;
        for (slot, (&idx, encoding)) in
            feature_idx.iter().zip(&schema.encodings).enumerate()
        {
            let token = record.get(idx).unwrap_or("");
            let value = match encoding {
                Encoding::Numeric => token.trim().parse::<f64>().map_err(|_| {
                    IoError::ParseError {
                        row,
                        column: schema.feature_columns[slot].clone(),
                        token: token.to_string(),
                    }
                })?,
                Encoding::Categorical => {
                    let map = &mut ordinal_maps[slot];
                    let next = map.len();
                    *map.entry(token.to_string()).or_insert(next) as f64
                }
            };
            features.push(value);
        }
        let token = record.get(label_idx).unwrap_or("");
        let label = match class_map.get(token) {
            Some(&l) => l,
            None => {
                let l = class_names.len();
                class_names.push(token.to_string());
                class_map.insert(token.to_string(), l);
                l
            }
        };
        labels.push(label);
    }
    if labels.is_empty() {
        return Err(IoError::EmptyFile);
    }
    let classes = ClassTable::new(class_names)?;
    Ok(LabeledDataset::new(features, schema.feature_columns.len(), labels, classes)?)
}

/// Writes a dataset as CSV with columns `f0..f{d-1}, label`. Feature values
/// use the shortest round-trip decimal form; labels are class names.
pub fn save_csv<W: Write>(dataset: &LabeledDataset, writer: W) -> Result<(), IoError> {
    let mut writer = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = (0..dataset.d()).map(|c| format!("f{c}")).collect();
    header.push("label".to_string());
    writer.write_record(&header)?;
    let mut record = Vec::with_capacity(dataset.d() + 1);
    for i in 0..dataset.n() {
        record.clear();
        for &v in dataset.row(i) {
            record.push(v.to_string());
        }
        record.push(dataset.classes().name(dataset.label(i)).to_string());
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn save_csv_path(dataset: &LabeledDataset, path: &Path) -> Result<(), IoError> {
    let file = std::fs::File::create(path)?;
    save_csv(dataset, file)
}

/// Schema matching the files [`save_csv`] writes.
pub fn saved_schema(d: usize) -> ColumnSchema {
    ColumnSchema::numeric("label", (0..d).map(|c| format!("f{c}")).collect())
        .expect("generated schema is valid")
}

/// Writes per-point entropy records as CSV with columns
/// `index, label, entropy, neighborhood_size, f0..f{d-1}`.
pub fn write_entropy_map_csv<W: Write>(
    records: &[EntropyMapRecord],
    d: usize,
    writer: W,
) -> Result<(), IoError> {
    let mut writer = csv::Writer::from_writer(writer);
    let mut header = vec![
        "index".to_string(),
        "label".to_string(),
        "entropy".to_string(),
        "neighborhood_size".to_string(),
    ];
    header.extend((0..d).map(|c| format!("f{c}")));
    writer.write_record(&header)?;
    let mut record = Vec::with_capacity(d + 4);
    for r in records {
        record.clear();
        record.push(r.index.to_string());
        record.push(r.label.clone());
        record.push(r.entropy.to_string());
        record.push(r.neighborhood_size.to_string());
        record.extend(r.coordinates.iter().map(|v| v.to_string()));
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Per-feature scaling parameters. Columns with zero spread are flagged
/// constant and map to all-zero output.
#[derive(Debug, Clone, Serialize)]
pub struct ScalerParams {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub constant: Vec<bool>,
}

/// Standard scaling: (x - mean) / std with population std.
pub fn standard_scale(dataset: &LabeledDataset) -> (LabeledDataset, ScalerParams) {
    let n = dataset.n();
    let d = dataset.d();
    let mut mean = Vec::with_capacity(d);
    let mut std = Vec::with_capacity(d);
    let mut constant = Vec::with_capacity(d);
    for c in 0..d {
        let column: Vec<f64> = (0..n).map(|i| dataset.row(i)[c]).collect();
        let m = pairwise_sum(&column) / n as f64;
        let sq: Vec<f64> = column.iter().map(|&x| (x - m) * (x - m)).collect();
        let s = (pairwise_sum(&sq) / n as f64).sqrt();
        mean.push(m);
        std.push(s);
        constant.push(s == 0.0);
    }
    let mut features = Vec::with_capacity(n * d);
    for i in 0..n {
        for (c, &x) in dataset.row(i).iter().enumerate() {
            features.push(if constant[c] { 0.0 } else { (x - mean[c]) / std[c] });
        }
    }
    let scaled = LabeledDataset::new(
        features,
        d,
        dataset.labels().to_vec(),
        dataset.classes().clone(),
    )
    .expect("scaling preserves validity");
    (scaled, ScalerParams { mean, std, constant })
}
