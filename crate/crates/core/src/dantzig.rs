//! The local discriminant direction as an l1-minimization program.
//!
//! Given the local pooled covariance S and mean difference delta, the
//! direction estimate solves
//!
//! ```text
//! min |beta|_1  subject to  |S beta - delta|_inf <= lambda
//! ```
//!
//! reformulated as the linear program over (beta, v):
//!
//! ```text
//! min sum_i v_i   s.t.  -v_i <= beta_i <= v_i,
//!                       -lambda <= s_i' beta - delta_i <= lambda
//! ```
//!
//! with `s_i'` the i-th row of S: 2p variables and 4p inequality rows. The
//! solver standardizes it (beta split into positive and negative parts, v
//! kept as a nonnegative variable, one slack per row) and runs the dense
//! two-phase simplex.

use nalgebra::{DMatrix, DVector};

use crate::simplex::{self, LpStatus, SimplexOptions};

/// One Dantzig-selector instance.
#[derive(Debug, Clone)]
pub struct DantzigProblem {
    pub sigma_hat: DMatrix<f64>,
    pub delta_hat: DVector<f64>,
    pub lambda: f64,
}

impl DantzigProblem {
    pub fn new(sigma_hat: DMatrix<f64>, delta_hat: DVector<f64>, lambda: f64) -> Self {
        let p = delta_hat.len();
        assert_eq!(sigma_hat.nrows(), p);
        assert_eq!(sigma_hat.ncols(), p);
        assert!(lambda >= 0.0 && lambda.is_finite(), "lambda must be >= 0");
        Self {
            sigma_hat,
            delta_hat,
            lambda,
        }
    }

    pub fn p(&self) -> usize {
        self.delta_hat.len()
    }
}

/// Outcome of a solve. `Infeasible` carries the reason: a genuinely empty
/// feasible set (possible when sigma_hat is singular and delta_hat has a
/// component off its range larger than lambda), a phase-1 numerical
/// failure, or an exhausted pivot budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible(InfeasibleReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfeasibleReason {
    PhaseOneFailed,
    IterationCap,
    Unbounded,
    ResidualCheckFailed,
}

#[derive(Debug, Clone)]
pub struct DantzigSolution {
    pub beta_hat: DVector<f64>,
    /// l1 norm attained by the LP.
    pub objective: f64,
    pub status: SolveStatus,
    /// |sigma_hat beta_hat - delta_hat|_inf of the returned point.
    pub residual_inf_norm: f64,
    pub iterations: usize,
}

impl DantzigSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// The explicit (beta, v) inequality system: 2p variables, 4p rows of
/// `constraints * x <= rhs`, objective `objective' x`.
#[derive(Debug, Clone)]
pub struct LpFormulation {
    pub constraints: DMatrix<f64>,
    pub rhs: DVector<f64>,
    pub objective: DVector<f64>,
}

/// Assemble the LP exactly as formulated: variables (beta_1..beta_p,
/// v_1..v_p); rows -beta_i - v_i <= 0 and beta_i - v_i <= 0 for each i,
/// then the residual rows s_i' beta - delta_i <= lambda and
/// -(s_i' beta - delta_i) <= lambda.
pub fn build_lp(prob: &DantzigProblem) -> LpFormulation {
    let p = prob.p();
    let mut a = DMatrix::zeros(4 * p, 2 * p);
    let mut b = DVector::zeros(4 * p);
    for i in 0..p {
        a[(2 * i, i)] = -1.0;
        a[(2 * i, p + i)] = -1.0;
        a[(2 * i + 1, i)] = 1.0;
        a[(2 * i + 1, p + i)] = -1.0;
    }
    for i in 0..p {
        for j in 0..p {
            let s = prob.sigma_hat[(i, j)];
            a[(2 * p + 2 * i, j)] = s;
            a[(2 * p + 2 * i + 1, j)] = -s;
        }
        b[2 * p + 2 * i] = prob.lambda + prob.delta_hat[i];
        b[2 * p + 2 * i + 1] = prob.lambda - prob.delta_hat[i];
    }
    let mut c = DVector::zeros(2 * p);
    for i in 0..p {
        c[p + i] = 1.0;
    }
    LpFormulation {
        constraints: a,
        rhs: b,
        objective: c,
    }
}

/// Solve the Dantzig program and return the direction estimate.
pub fn solve_dantzig(prob: &DantzigProblem) -> DantzigSolution {
    let p = prob.p();
    let lp = build_lp(prob);
    // nonnegative standard form: beta = bp - bn, v as is (v >= 0 is implied
    // by the pair rows, so adding the sign constraint changes nothing)
    let n_std = 3 * p;
    let mut a = DMatrix::zeros(4 * p, n_std);
    for i in 0..4 * p {
        for j in 0..p {
            let v = lp.constraints[(i, j)];
            a[(i, j)] = v;
            a[(i, p + j)] = -v;
        }
        for j in 0..p {
            a[(i, 2 * p + j)] = lp.constraints[(i, p + j)];
        }
    }
    let mut c = DVector::zeros(n_std);
    for j in 0..p {
        c[2 * p + j] = 1.0;
    }
    let opts = SimplexOptions {
        max_pivots: 50 * p.max(4),
        bland_after: 10 * p.max(4),
    };
    let sol = simplex::solve_inequality_form(&a, &lp.rhs, &c, &opts);
    let beta_hat = DVector::from_fn(p, |j, _| sol.x[j] - sol.x[p + j]);
    let residual = &prob.sigma_hat * &beta_hat - &prob.delta_hat;
    let residual_inf_norm = residual.amax();
    let status = match sol.status {
        LpStatus::Optimal => {
            if residual_inf_norm <= prob.lambda + simplex::FEAS_TOL {
                SolveStatus::Optimal
            } else {
                SolveStatus::Infeasible(InfeasibleReason::ResidualCheckFailed)
            }
        }
        LpStatus::Infeasible => SolveStatus::Infeasible(InfeasibleReason::PhaseOneFailed),
        LpStatus::IterationLimit => SolveStatus::Infeasible(InfeasibleReason::IterationCap),
        LpStatus::Unbounded => SolveStatus::Infeasible(InfeasibleReason::Unbounded),
    };
    let objective = beta_hat.iter().map(|b| b.abs()).sum();
    DantzigSolution {
        beta_hat,
        objective,
        status,
        residual_inf_norm,
        iterations: sol.iterations,
    }
}

/// Reference level for the residual bound:
/// `C (log p / n)^(2/(4+d)) * delta_sup`; centers the CV grid for lambda.
pub fn lambda_rate(n: usize, p: usize, d: usize, delta_sup: f64, c: f64) -> f64 {
    assert!(n >= 2 && p >= 2);
    assert!(delta_sup > 0.0 && c > 0.0);
    let ratio = (p as f64).ln() / n as f64;
    c * ratio.powf(2.0 / (4.0 + d as f64)) * delta_sup
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{dmatrix, dvector};

    #[test]
    fn build_lp_shapes() {
        let prob = DantzigProblem::new(dmatrix![1.0], dvector![0.5], 0.1);
        let lp = build_lp(&prob);
        assert_eq!(lp.constraints.shape(), (4, 2));
        let prob = DantzigProblem::new(DMatrix::identity(3, 3), dvector![1.0, 2.0, 3.0], 0.1);
        let lp = build_lp(&prob);
        assert_eq!(lp.constraints.shape(), (12, 6));
        assert_eq!(lp.objective.iter().filter(|&&v| v == 1.0).count(), 3);
    }

    #[test]
    fn zero_is_feasible_iff_delta_within_lambda() {
        let prob = DantzigProblem::new(DMatrix::identity(2, 2), dvector![0.3, -0.2], 0.3);
        let lp = build_lp(&prob);
        // x = 0 satisfies every row exactly when rhs >= 0
        assert!(lp.rhs.iter().all(|&r| r >= 0.0));
        let tight = DantzigProblem::new(DMatrix::identity(2, 2), dvector![0.3, -0.2], 0.1);
        let lp = build_lp(&tight);
        assert!(lp.rhs.iter().any(|&r| r < 0.0));
    }

    #[test]
    fn zero_delta_gives_zero_beta() {
        let sigma = dmatrix![2.0, 0.3; 0.3, 1.0];
        let prob = DantzigProblem::new(sigma, dvector![0.0, 0.0], 0.5);
        let sol = solve_dantzig(&prob);
        assert!(sol.is_optimal());
        assert_eq!(sol.objective, 0.0);
        assert_eq!(sol.beta_hat, dvector![0.0, 0.0]);
    }

    #[test]
    fn large_lambda_gives_zero_beta() {
        let sigma = dmatrix![1.0, 0.5; 0.5, 1.0];
        let prob = DantzigProblem::new(sigma, dvector![0.9, -0.4], 0.9);
        let sol = solve_dantzig(&prob);
        assert!(sol.is_optimal());
        assert_eq!(sol.objective, 0.0);
    }

    #[test]
    fn identity_sigma_soft_thresholds() {
        let prob = DantzigProblem::new(DMatrix::identity(2, 2), dvector![1.0, 0.2], 0.1);
        let sol = solve_dantzig(&prob);
        assert!(sol.is_optimal());
        assert!((sol.beta_hat[0] - 0.9).abs() <= 1e-9);
        assert!((sol.beta_hat[1] - 0.1).abs() <= 1e-9);
        assert!((sol.objective - 1.0).abs() <= 1e-9);
        assert!(sol.residual_inf_norm <= 0.1 + 1e-9);
    }

    #[test]
    fn genuinely_infeasible_when_sigma_zero() {
        // S = 0 and |delta| > lambda leaves no feasible beta
        let prob = DantzigProblem::new(dmatrix![0.0], dvector![1.0], 0.5);
        let sol = solve_dantzig(&prob);
        assert_eq!(
            sol.status,
            SolveStatus::Infeasible(InfeasibleReason::PhaseOneFailed)
        );
    }

    #[test]
    fn lambda_rate_values() {
        // (ln 50 / 100)^(2/5) = 0.27350203372080767
        let v = lambda_rate(100, 50, 1, 2.7724, 1.0);
        assert!((v - 0.27350203372080767 * 2.7724).abs() <= 1e-12);
        let doubled = lambda_rate(100, 50, 1, 2.7724, 2.0);
        assert!((doubled - 2.0 * v).abs() <= 1e-12);
    }
}
