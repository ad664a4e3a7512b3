//! Shared domain types: class labels, datasets, covariate points.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// The two populations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    X,
    Y,
}

impl ClassLabel {
    pub fn other(self) -> Self {
        match self {
            ClassLabel::X => ClassLabel::Y,
            ClassLabel::Y => ClassLabel::X,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::X => "X",
            ClassLabel::Y => "Y",
        }
    }
}

impl std::str::FromStr for ClassLabel {
    type Err = DataError;

    fn from_str(s: &str) -> Result<Self, DataError> {
        match s {
            "X" => Ok(ClassLabel::X),
            "Y" => Ok(ClassLabel::Y),
            other => Err(DataError::BadLabel(other.to_string())),
        }
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A covariate location, length d.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariatePoint(pub Vec<f64>);

impl CovariatePoint {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

impl From<f64> for CovariatePoint {
    fn from(u: f64) -> Self {
        Self(vec![u])
    }
}

#[derive(Debug, Error)]
pub enum DataError {
    #[error("feature matrix has {features} rows, covariates {covariates}, labels {labels}; all must agree")]
    RowMismatch {
        features: usize,
        covariates: usize,
        labels: usize,
    },
    #[error("dataset must have n >= 1, p >= 1, d >= 1 (got n={n}, p={p}, d={d})")]
    EmptyDimension { n: usize, p: usize, d: usize },
    #[error("non-finite value at row {row}, column {col} of {which}")]
    NonFinite {
        which: &'static str,
        row: usize,
        col: usize,
    },
    #[error("unknown class label {0:?} (expected X or Y)")]
    BadLabel(String),
}

/// Paired feature matrix (n x p), covariate matrix (n x d) and labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    features: DMatrix<f64>,
    covariates: DMatrix<f64>,
    labels: Vec<ClassLabel>,
    x_rows: Vec<usize>,
    y_rows: Vec<usize>,
}

impl DataSet {
    pub fn new(
        features: DMatrix<f64>,
        covariates: DMatrix<f64>,
        labels: Vec<ClassLabel>,
    ) -> Result<Self, DataError> {
        let n = features.nrows();
        if n != covariates.nrows() || n != labels.len() {
            return Err(DataError::RowMismatch {
                features: n,
                covariates: covariates.nrows(),
                labels: labels.len(),
            });
        }
        let (p, d) = (features.ncols(), covariates.ncols());
        if n == 0 || p == 0 || d == 0 {
            return Err(DataError::EmptyDimension { n, p, d });
        }
        check_finite(&features, "features")?;
        check_finite(&covariates, "covariates")?;
        let x_rows = (0..n).filter(|&i| labels[i] == ClassLabel::X).collect();
        let y_rows = (0..n).filter(|&i| labels[i] == ClassLabel::Y).collect();
        Ok(Self {
            features,
            covariates,
            labels,
            x_rows,
            y_rows,
        })
    }

    pub fn n(&self) -> usize {
        self.features.nrows()
    }

    pub fn p(&self) -> usize {
        self.features.ncols()
    }

    pub fn d(&self) -> usize {
        self.covariates.ncols()
    }

    pub fn n1(&self) -> usize {
        self.x_rows.len()
    }

    pub fn n2(&self) -> usize {
        self.y_rows.len()
    }

    pub fn features(&self) -> &DMatrix<f64> {
        &self.features
    }

    pub fn covariates(&self) -> &DMatrix<f64> {
        &self.covariates
    }

    pub fn labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn label(&self, row: usize) -> ClassLabel {
        self.labels[row]
    }

    /// Row indices belonging to a class, in dataset order.
    pub fn rows_of(&self, label: ClassLabel) -> &[usize] {
        match label {
            ClassLabel::X => &self.x_rows,
            ClassLabel::Y => &self.y_rows,
        }
    }

    pub fn count_of(&self, label: ClassLabel) -> usize {
        self.rows_of(label).len()
    }

    pub fn feature_row(&self, row: usize) -> DVector<f64> {
        self.features.row(row).transpose()
    }

    pub fn covariate_row(&self, row: usize) -> CovariatePoint {
        CovariatePoint(self.covariates.row(row).iter().copied().collect())
    }

    /// Subset of rows (keeps all columns); used by the CV fold machinery.
    pub fn subset_rows(&self, rows: &[usize]) -> DataSet {
        let features = DMatrix::from_fn(rows.len(), self.p(), |i, j| self.features[(rows[i], j)]);
        let covariates =
            DMatrix::from_fn(rows.len(), self.d(), |i, j| self.covariates[(rows[i], j)]);
        let labels = rows.iter().map(|&r| self.labels[r]).collect();
        DataSet::new(features, covariates, labels).expect("subset of a valid dataset is valid")
    }
}

fn check_finite(m: &DMatrix<f64>, which: &'static str) -> Result<(), DataError> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if !m[(i, j)].is_finite() {
                return Err(DataError::NonFinite { which, row: i, col: j });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    fn toy() -> DataSet {
        DataSet::new(
            dmatrix![1.0, 2.0; 3.0, 4.0; 5.0, 6.0],
            dmatrix![0.1; 0.2; 0.3],
            vec![ClassLabel::X, ClassLabel::Y, ClassLabel::X],
        )
        .unwrap()
    }

    #[test]
    fn counts_and_dims() {
        let ds = toy();
        assert_eq!((ds.n(), ds.p(), ds.d()), (3, 2, 1));
        assert_eq!((ds.n1(), ds.n2()), (2, 1));
        assert_eq!(ds.rows_of(ClassLabel::X), &[0, 2]);
        assert_eq!(ds.rows_of(ClassLabel::Y), &[1]);
    }

    #[test]
    fn rejects_row_mismatch() {
        let err = DataSet::new(
            dmatrix![1.0; 2.0],
            dmatrix![0.1],
            vec![ClassLabel::X, ClassLabel::Y],
        );
        assert!(matches!(err, Err(DataError::RowMismatch { .. })));
    }

    #[test]
    fn rejects_non_finite() {
        let err = DataSet::new(
            dmatrix![1.0; f64::NAN],
            dmatrix![0.1; 0.2],
            vec![ClassLabel::X, ClassLabel::Y],
        );
        assert!(matches!(err, Err(DataError::NonFinite { row: 1, .. })));
    }

    #[test]
    fn subset_preserves_rows() {
        let ds = toy();
        let sub = ds.subset_rows(&[2, 0]);
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.feature_row(0), ds.feature_row(2));
        assert_eq!(sub.label(1), ClassLabel::X);
    }

    #[test]
    fn label_round_trip() {
        assert_eq!("X".parse::<ClassLabel>().unwrap(), ClassLabel::X);
        assert_eq!("Y".parse::<ClassLabel>().unwrap(), ClassLabel::Y);
        assert!("Z".parse::<ClassLabel>().is_err());
        assert_eq!(ClassLabel::X.other(), ClassLabel::Y);
    }
}
