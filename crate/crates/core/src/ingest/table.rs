use std::collections::HashSet;

use serde_json::Value;

use super::IngestError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl TableFormat {
    /// Guesses the format from a file extension; anything but `.json` is CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => TableFormat::Json,
            _ => TableFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Categorical,
    Quantitative,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnData {
    Categorical(Vec<String>),
    Quantitative(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub data: ColumnData,
}

impl Column {
    pub fn kind(&self) -> ColumnKind {
        match self.data {
            ColumnData::Categorical(_) => ColumnKind::Categorical,
            ColumnData::Quantitative(_) => ColumnKind::Quantitative,
        }
    }

    pub fn len(&self) -> usize {
        match &self.data {
            ColumnData::Categorical(v) => v.len(),
            ColumnData::Quantitative(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_quantitative(&self) -> Option<&[f64]> {
        match &self.data {
            ColumnData::Quantitative(v) => Some(v),
            ColumnData::Categorical(_) => None,
        }
    }

    pub fn as_categorical(&self) -> Option<&[String]> {
        match &self.data {
            ColumnData::Categorical(v) => Some(v),
            ColumnData::Quantitative(_) => None,
        }
    }
}

/// Typed tabular data. Every column holds exactly `row_count` values and
/// column names are unique.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    columns: Vec<Column>,
    row_count: usize,
}

impl Dataset {
    /// Builds a dataset from raw cells, inferring each column's kind: a
    /// column is quantitative only when every cell parses as a finite real.
    pub fn from_cells(names: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self, IngestError> {
        let mut seen = HashSet::new();
        for name in &names {
            if name.trim().is_empty() {
                return Err(IngestError::MalformedInput("empty column name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(IngestError::MalformedInput(format!(
                    "duplicate column name {name:?}"
                )));
            }
        }
        if rows.is_empty() {
            return Err(IngestError::EmptyDataset);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != names.len() {
                return Err(IngestError::MalformedInput(format!(
                    "row {} has {} fields, header has {}",
                    i + 1,
                    row.len(),
                    names.len()
                )));
            }
        }

        let columns = names
            .into_iter()
            .enumerate()
            .map(|(c, name)| {
                let cells: Vec<&str> = rows.iter().map(|r| r[c].as_str()).collect();
                if let Some(row) = cells.iter().position(|s| s.trim().is_empty()) {
                    return Err(IngestError::MalformedInput(format!(
                        "column {name:?} row {} is empty",
                        row + 1
                    )));
                }
                let numbers: Option<Vec<f64>> = cells.iter().map(|s| parse_finite(s)).collect();
                let data = match numbers {
                    Some(v) => ColumnData::Quantitative(v),
                    None => ColumnData::Categorical(cells.iter().map(|s| s.to_string()).collect()),
                };
                Ok(Column { name, data })
            })
            .collect::<Result<Vec<_>, _>>()?;

        Ok(Dataset {
            columns,
            row_count: rows.len(),
        })
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }
}

fn parse_finite(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

pub fn parse_table(raw: &[u8], format: TableFormat) -> Result<Dataset, IngestError> {
    let text = std::str::from_utf8(raw)
        .map_err(|e| IngestError::MalformedInput(format!("input is not UTF-8: {e}")))?;
    match format {
        TableFormat::Csv => parse_csv(text),
        TableFormat::Json => parse_json(text),
    }
}

fn parse_csv(text: &str) -> Result<Dataset, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());
    let names: Vec<String> = reader
        .headers()
        .map_err(|e| IngestError::MalformedInput(e.to_string()))?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if names.is_empty() {
        return Err(IngestError::MalformedInput("missing header row".into()));
    }
    let rows = reader
        .records()
        .map(|r| {
            r.map(|rec| rec.iter().map(str::to_string).collect::<Vec<_>>())
                .map_err(|e| IngestError::MalformedInput(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Dataset::from_cells(names, rows)
}

/// JSON tables are an array of flat records sharing the same keys. Numbers
/// and strings are accepted as cells; the first record fixes column order.
fn parse_json(text: &str) -> Result<Dataset, IngestError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| IngestError::MalformedInput(e.to_string()))?;
    let records = value
        .as_array()
        .ok_or_else(|| IngestError::MalformedInput("expected a JSON array of records".into()))?;
    let Some(first) = records.first() else {
        return Err(IngestError::EmptyDataset);
    };
    let first = first
        .as_object()
        .ok_or_else(|| IngestError::MalformedInput("record 1 is not an object".into()))?;
    let names: Vec<String> = first.keys().cloned().collect();

    let rows = records
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let obj = rec.as_object().ok_or_else(|| {
                IngestError::MalformedInput(format!("record {} is not an object", i + 1))
            })?;
            if obj.len() != names.len() {
                return Err(IngestError::MalformedInput(format!(
                    "record {} has {} fields, expected {}",
                    i + 1,
                    obj.len(),
                    names.len()
                )));
            }
            names
                .iter()
                .map(|name| match obj.get(name) {
                    Some(Value::String(s)) => Ok(s.clone()),
                    Some(Value::Number(n)) => Ok(n.to_string()),
                    Some(other) => Err(IngestError::MalformedInput(format!(
                        "record {} field {name:?} has unsupported value {other}",
                        i + 1
                    ))),
                    None => Err(IngestError::MalformedInput(format!(
                        "record {} is missing field {name:?}",
                        i + 1
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Dataset::from_cells(names, rows)
}
