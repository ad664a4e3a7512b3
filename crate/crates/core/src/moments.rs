//! Kernel-weighted local estimators of the class means and the pooled
//! covariance at a covariate point.
//!
//! These are the locally-weighted sample estimates: each class mean is a
//! Nadaraya-Watson average, each class covariance the weighted second
//! moment minus the outer product of the weighted mean, and the pooled
//! covariance the (n1/n, n2/n) convex combination of the class covariances.
//! The kernel-weight denominator is computed once per (class, point) and
//! shared by every coordinate, so the estimates are internally consistent.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::kernels::{product_kernel_weight, Bandwidth, KernelSpec};
use crate::types::{ClassLabel, CovariatePoint, DataSet};

/// Total kernel weight at or below this level counts as an empty window.
pub const WEIGHT_FLOOR: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum MomentsError {
    #[error("empty kernel window for class {label} at u={u:?} (total weight <= {floor:e}); widen the bandwidth or reject the point")]
    EmptyWindow {
        label: ClassLabel,
        u: Vec<f64>,
        floor: f64,
    },
    #[error("covariate point has dimension {got}, dataset has d={expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

/// Local estimates at one covariate point.
#[derive(Debug, Clone)]
pub struct LocalMoments {
    pub mu_x_hat: DVector<f64>,
    pub mu_y_hat: DVector<f64>,
    /// Pooled covariance estimate, symmetric by construction.
    pub sigma_hat: DMatrix<f64>,
    /// Sum of kernel weights contributed by class X at this point.
    pub effective_weight_x: f64,
    pub effective_weight_y: f64,
}

impl LocalMoments {
    /// Difference of the class means, the estimated discriminant shift.
    pub fn delta_hat(&self) -> DVector<f64> {
        &self.mu_x_hat - &self.mu_y_hat
    }
}

/// Kernel weights of one class at `u`, skipping zero-weight rows.
/// `leave_out` drops one dataset row (for leave-one-out estimates).
fn class_weights(
    data: &DataSet,
    label: ClassLabel,
    u: &CovariatePoint,
    h: &Bandwidth,
    spec: KernelSpec,
    leave_out: Option<usize>,
) -> Result<(Vec<(usize, f64)>, f64), MomentsError> {
    if u.dim() != data.d() {
        return Err(MomentsError::DimensionMismatch {
            got: u.dim(),
            expected: data.d(),
        });
    }
    let d = data.d();
    let mut delta = vec![0.0; d];
    let mut weights = Vec::new();
    let mut total = 0.0;
    for &row in data.rows_of(label) {
        if leave_out == Some(row) {
            continue;
        }
        for j in 0..d {
            delta[j] = data.covariates()[(row, j)] - u.coords()[j];
        }
        let w = product_kernel_weight(spec, h, &delta);
        if w > 0.0 {
            weights.push((row, w));
            total += w;
        }
    }
    if total <= WEIGHT_FLOOR {
        return Err(MomentsError::EmptyWindow {
            label,
            u: u.coords().to_vec(),
            floor: WEIGHT_FLOOR,
        });
    }
    Ok((weights, total))
}

fn weighted_mean(data: &DataSet, weights: &[(usize, f64)], total: f64) -> DVector<f64> {
    let p = data.p();
    let mut mean = DVector::zeros(p);
    for &(row, w) in weights {
        for j in 0..p {
            mean[j] += w * data.features()[(row, j)];
        }
    }
    mean / total
}

/// Weighted covariance in centered form, algebraically equal to the
/// second-moment-minus-mean-outer-product expression but symmetric and
/// positive semidefinite up to roundoff. Fills the lower triangle and
/// mirrors it.
fn weighted_covariance(
    data: &DataSet,
    weights: &[(usize, f64)],
    total: f64,
    mean: &DVector<f64>,
) -> DMatrix<f64> {
    let p = data.p();
    let mut cov = DMatrix::zeros(p, p);
    let mut centered = DVector::zeros(p);
    for &(row, w) in weights {
        for j in 0..p {
            centered[j] = data.features()[(row, j)] - mean[j];
        }
        let wn = w / total;
        for j in 0..p {
            let cj = wn * centered[j];
            let col = &mut cov.column_mut(j);
            for i in j..p {
                col[i] += cj * centered[i];
            }
        }
    }
    for j in 0..p {
        for i in (j + 1)..p {
            cov[(j, i)] = cov[(i, j)];
        }
    }
    cov
}

/// Nadaraya-Watson estimate of one class mean at `u`.
pub fn nw_mean(
    data: &DataSet,
    label: ClassLabel,
    u: &CovariatePoint,
    h: &Bandwidth,
    spec: KernelSpec,
) -> Result<DVector<f64>, MomentsError> {
    let (weights, total) = class_weights(data, label, u, h, spec, None)?;
    Ok(weighted_mean(data, &weights, total))
}

/// Kernel-weighted covariance of one class at `u`.
pub fn local_class_covariance(
    data: &DataSet,
    label: ClassLabel,
    u: &CovariatePoint,
    h: &Bandwidth,
    spec: KernelSpec,
) -> Result<DMatrix<f64>, MomentsError> {
    let (weights, total) = class_weights(data, label, u, h, spec, None)?;
    let mean = weighted_mean(data, &weights, total);
    Ok(weighted_covariance(data, &weights, total, &mean))
}

/// Both class means and the pooled covariance at `u`.
pub fn pooled_local_moments(
    data: &DataSet,
    u: &CovariatePoint,
    h_x: &Bandwidth,
    h_y: &Bandwidth,
    spec: KernelSpec,
) -> Result<LocalMoments, MomentsError> {
    let (wx, tx) = class_weights(data, ClassLabel::X, u, h_x, spec, None)?;
    let (wy, ty) = class_weights(data, ClassLabel::Y, u, h_y, spec, None)?;
    let mu_x_hat = weighted_mean(data, &wx, tx);
    let mu_y_hat = weighted_mean(data, &wy, ty);
    let cov_x = weighted_covariance(data, &wx, tx, &mu_x_hat);
    let cov_y = weighted_covariance(data, &wy, ty, &mu_y_hat);
    let (n1, n2) = (data.n1() as f64, data.n2() as f64);
    let n = n1 + n2;
    let sigma_hat = cov_x * (n1 / n) + cov_y * (n2 / n);
    Ok(LocalMoments {
        mu_x_hat,
        mu_y_hat,
        sigma_hat,
        effective_weight_x: tx,
        effective_weight_y: ty,
    })
}

/// Leave-one-out moments of a coordinate subset; the workhorse of the
/// bandwidth cross-validation score. Returns the subset mean and covariance
/// of `label`'s features restricted to `coords`, at the covariate of row
/// `leave_out`, excluding that row.
pub fn loo_subset_moments(
    data: &DataSet,
    label: ClassLabel,
    coords: &[usize],
    leave_out: usize,
    h: &Bandwidth,
    spec: KernelSpec,
) -> Result<(DVector<f64>, DMatrix<f64>), MomentsError> {
    let u = data.covariate_row(leave_out);
    let (weights, total) = class_weights(data, label, &u, h, spec, Some(leave_out))?;
    let m = coords.len();
    let mut mean = DVector::zeros(m);
    for &(row, w) in &weights {
        for (k, &j) in coords.iter().enumerate() {
            mean[k] += w * data.features()[(row, j)];
        }
    }
    mean /= total;
    let mut cov = DMatrix::zeros(m, m);
    let mut centered = DVector::zeros(m);
    for &(row, w) in &weights {
        for (k, &j) in coords.iter().enumerate() {
            centered[k] = data.features()[(row, j)] - mean[k];
        }
        let wn = w / total;
        for a in 0..m {
            for b in a..m {
                cov[(b, a)] += wn * centered[a] * centered[b];
            }
        }
    }
    for a in 0..m {
        for b in (a + 1)..m {
            cov[(a, b)] = cov[(b, a)];
        }
    }
    Ok((mean, cov))
}
