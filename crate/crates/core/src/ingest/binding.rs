use super::{ColumnKind, Dataset, Idiom, IngestError, MelodySpec};

/// What the x field contributes once bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XAxis<'a> {
    /// Category labels (bar, pie).
    Categories(&'a [String]),
    /// Numeric bins of a histogram bar chart.
    Bins(&'a [f64]),
    /// Numeric x values that order the series (line, scatter).
    Values(&'a [f64]),
    /// No x field: row order.
    Index,
}

/// A dataset and spec that agree with each other. Holds borrowed views into
/// the dataset; nothing is copied or modified.
#[derive(Debug, Clone, Copy)]
pub struct Binding<'a> {
    pub dataset: &'a Dataset,
    pub spec: &'a MelodySpec,
    y: &'a [f64],
    x: XAxis<'a>,
}

impl<'a> Binding<'a> {
    pub fn x(&self) -> XAxis<'a> {
        self.x
    }

    /// y values in row order.
    pub fn values(&self) -> &'a [f64] {
        self.y
    }

    /// Labels for categorical idioms (numeric bins are formatted).
    pub fn labels(&self) -> Vec<String> {
        match self.x {
            XAxis::Categories(c) => c.to_vec(),
            XAxis::Bins(b) | XAxis::Values(b) => b.iter().map(|v| v.to_string()).collect(),
            XAxis::Index => (0..self.y.len()).map(|i| i.to_string()).collect(),
        }
    }

    /// y values ordered by x (stable for equal x), or row order when x is
    /// absent or categorical.
    pub fn series(&self) -> Vec<f64> {
        match self.x {
            XAxis::Values(xs) => {
                let mut order: Vec<usize> = (0..xs.len()).collect();
                order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
                order.into_iter().map(|i| self.y[i]).collect()
            }
            _ => self.y.to_vec(),
        }
    }
}

fn mismatch(msg: String) -> IngestError {
    IngestError::KindMismatch(msg)
}

/// Checks that the spec's fields exist in the dataset with the kinds its
/// idiom needs. Pie charts also need non-negative values with a positive sum.
pub fn validate_binding<'a>(
    dataset: &'a Dataset,
    spec: &'a MelodySpec,
) -> Result<Binding<'a>, IngestError> {
    let lookup = |name: &str| {
        dataset
            .column(name)
            .ok_or_else(|| IngestError::UnknownColumn(name.to_string()))
    };
    let y_col = lookup(&spec.y_field)?;
    let y = y_col.as_quantitative().ok_or_else(|| {
        mismatch(format!(
            "{} needs a quantitative y field, {:?} is categorical",
            spec.idiom, spec.y_field
        ))
    })?;
    let x_col = spec.x_field.as_deref().map(lookup).transpose()?;

    let x = match spec.idiom {
        Idiom::Bar | Idiom::Pie => {
            let x_col = x_col.ok_or(IngestError::MissingField("x"))?;
            match (x_col.kind(), spec.idiom, spec.histogram) {
                (ColumnKind::Categorical, _, _) => {
                    XAxis::Categories(x_col.as_categorical().unwrap())
                }
                (ColumnKind::Quantitative, Idiom::Bar, true) => {
                    XAxis::Bins(x_col.as_quantitative().unwrap())
                }
                _ => {
                    return Err(mismatch(format!(
                        "{} needs a categorical x field, {:?} is quantitative",
                        spec.idiom, x_col.name
                    )))
                }
            }
        }
        Idiom::Line | Idiom::Scatter => match x_col {
            None => XAxis::Index,
            Some(col) => XAxis::Values(col.as_quantitative().ok_or_else(|| {
                mismatch(format!(
                    "{} needs a quantitative x field, {:?} is categorical",
                    spec.idiom, col.name
                ))
            })?),
        },
    };

    if spec.idiom == Idiom::Pie {
        if let Some(i) = y.iter().position(|&v| v < 0.0) {
            return Err(IngestError::NegativeProportion {
                category: dataset_label(x, i),
                value: y[i],
            });
        }
        if y.iter().sum::<f64>() <= 0.0 {
            return Err(IngestError::ZeroProportions);
        }
    }

    Ok(Binding {
        dataset,
        spec,
        y,
        x,
    })
}

fn dataset_label(x: XAxis<'_>, row: usize) -> String {
    match x {
        XAxis::Categories(c) => c[row].clone(),
        _ => format!("row {}", row + 1),
    }
}
