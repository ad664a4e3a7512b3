//! Dense two-phase primal simplex for small and mid-size LPs.
//!
//! Solves `min c'x  s.t.  A x <= b` with `x >= 0` over a dense tableau.
//! Slack variables complete the basis on rows with nonnegative right-hand
//! side; rows violated at the origin get phase-1 artificials. The entering
//! rule is Dantzig's most-negative reduced cost, switching permanently to
//! Bland's least-index rule once the configured number of degenerate pivots
//! has been spent, which guarantees termination. Ties in the ratio test go
//! to the smallest basic-variable index, so pivots are deterministic and
//! repeated solves of the same problem take the same path.
//!
//! On termination the basic values are recomputed from the original column
//! data through an LU solve of the basis matrix, which removes the rounding
//! drift a long pivot sequence leaves in the tableau.

use nalgebra::{DMatrix, DVector};

/// Absolute feasibility tolerance.
pub const FEAS_TOL: f64 = 1e-9;
/// Absolute optimality (reduced cost) tolerance.
pub const OPT_TOL: f64 = 1e-9;
/// Entries below this magnitude are never used as pivots.
const PIVOT_TOL: f64 = 1e-11;
/// A ratio-test step below this counts as a degenerate pivot.
const DEGENERATE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    /// Phase 1 could not reach feasibility.
    Infeasible,
    /// Pivot budget exhausted before termination.
    IterationLimit,
    /// Unbounded objective (no blocking row for the entering column).
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    /// Values of the structural variables.
    pub x: DVector<f64>,
    pub objective: f64,
    pub status: LpStatus,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    pub max_pivots: usize,
    /// Switch to Bland's rule after this many degenerate pivots.
    pub bland_after: usize,
}

/// `min c'x  s.t.  a x <= b, x >= 0`.
pub fn solve_inequality_form(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    c: &DVector<f64>,
    opts: &SimplexOptions,
) -> LpSolution {
    Tableau::new(a, b, c).solve(opts)
}

struct Tableau {
    m: usize,
    n_struct: usize,
    /// structural + slack count; artificial columns live beyond this
    n_core: usize,
    n_total: usize,
    /// row-major tableau, m rows of n_total entries
    t: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    /// reduced costs of the active phase
    red: Vec<f64>,
    /// original standard-form data, for the final basis re-solve
    orig_cols: DMatrix<f64>,
    orig_b: DVector<f64>,
    cost: Vec<f64>,
}

impl Tableau {
    fn new(a: &DMatrix<f64>, b: &DVector<f64>, c: &DVector<f64>) -> Self {
        let m = a.nrows();
        let n_struct = a.ncols();
        assert_eq!(b.len(), m);
        assert_eq!(c.len(), n_struct);
        let neg: Vec<bool> = (0..m).map(|i| b[i] < 0.0).collect();
        let n_art = neg.iter().filter(|&&v| v).count();
        let n_core = n_struct + m;
        let n_total = n_core + n_art;

        // standard form: rows with b < 0 are negated so every rhs is >= 0;
        // their slack then carries coefficient -1 and an artificial starts basic
        let mut t = vec![0.0; m * n_total];
        let mut rhs = vec![0.0; m];
        let mut basis = vec![0usize; m];
        let mut orig_cols = DMatrix::zeros(m, n_total);
        let mut art = 0usize;
        for i in 0..m {
            let sgn = if neg[i] { -1.0 } else { 1.0 };
            let row = &mut t[i * n_total..(i + 1) * n_total];
            for j in 0..n_struct {
                row[j] = sgn * a[(i, j)];
            }
            row[n_struct + i] = sgn;
            rhs[i] = sgn * b[i];
            if neg[i] {
                let col = n_core + art;
                row[col] = 1.0;
                basis[i] = col;
                art += 1;
            } else {
                basis[i] = n_struct + i;
            }
            for j in 0..n_total {
                orig_cols[(i, j)] = row[j];
            }
        }
        let orig_b = DVector::from_iterator(m, rhs.iter().copied());
        let cost = (0..n_struct).map(|j| c[j]).collect();
        Self {
            m,
            n_struct,
            n_core,
            n_total,
            t,
            rhs,
            basis,
            red: vec![0.0; n_total],
            orig_cols,
            orig_b,
            cost,
        }
    }

    #[inline]
    fn row(&self, i: usize) -> &[f64] {
        &self.t[i * self.n_total..(i + 1) * self.n_total]
    }

    /// reduced costs r = c - c_B' B^-1 A over the current tableau
    fn recompute_reduced(&mut self, phase1: bool) {
        let cost_of = |j: usize| -> f64 {
            if phase1 {
                if j >= self.n_core {
                    1.0
                } else {
                    0.0
                }
            } else if j < self.n_struct {
                self.cost[j]
            } else {
                0.0
            }
        };
        for j in 0..self.n_total {
            self.red[j] = cost_of(j);
        }
        for i in 0..self.m {
            let cb = cost_of(self.basis[i]);
            if cb != 0.0 {
                let row = &self.t[i * self.n_total..(i + 1) * self.n_total];
                for j in 0..self.n_total {
                    self.red[j] -= cb * row[j];
                }
            }
        }
    }

    fn objective(&self, phase1: bool) -> f64 {
        (0..self.m)
            .map(|i| {
                let j = self.basis[i];
                let cb = if phase1 {
                    if j >= self.n_core {
                        1.0
                    } else {
                        0.0
                    }
                } else if j < self.n_struct {
                    self.cost[j]
                } else {
                    0.0
                };
                cb * self.rhs[i]
            })
            .sum()
    }

    fn entering(&self, bland: bool, allow_artificial: bool) -> Option<usize> {
        let limit = if allow_artificial { self.n_total } else { self.n_core };
        if bland {
            (0..limit).find(|&j| self.red[j] < -OPT_TOL)
        } else {
            let mut best = None;
            let mut best_val = -OPT_TOL;
            for j in 0..limit {
                if self.red[j] < best_val {
                    best_val = self.red[j];
                    best = Some(j);
                }
            }
            best
        }
    }

    /// ratio test; ties go to the smallest basic-variable index
    fn leaving(&self, e: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.m {
            let a_ie = self.row(i)[e];
            if a_ie > PIVOT_TOL {
                let ratio = self.rhs[i].max(0.0) / a_ie;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br - DEGENERATE_EPS
                            || ((ratio - br).abs() <= DEGENERATE_EPS
                                && self.basis[i] < self.basis[bi])
                        {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, l: usize, e: usize) {
        let n = self.n_total;
        let pivot = self.t[l * n + e];
        let inv = 1.0 / pivot;
        for v in &mut self.t[l * n..(l + 1) * n] {
            *v *= inv;
        }
        self.rhs[l] *= inv;
        let (pivot_row, pivot_rhs) = {
            let row = self.t[l * n..(l + 1) * n].to_vec();
            (row, self.rhs[l])
        };
        for i in 0..self.m {
            if i == l {
                continue;
            }
            let factor = self.t[i * n + e];
            if factor != 0.0 {
                let row = &mut self.t[i * n..(i + 1) * n];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= factor * pv;
                }
                row[e] = 0.0;
                self.rhs[i] -= factor * pivot_rhs;
            }
        }
        let rfac = self.red[e];
        if rfac != 0.0 {
            for (v, pv) in self.red.iter_mut().zip(&pivot_row) {
                *v -= rfac * pv;
            }
            self.red[e] = 0.0;
        }
        self.basis[l] = e;
    }

    fn run_phase(
        &mut self,
        phase1: bool,
        opts: &SimplexOptions,
        iterations: &mut usize,
        degenerate: &mut usize,
    ) -> LpStatus {
        self.recompute_reduced(phase1);
        loop {
            if *iterations >= opts.max_pivots {
                return LpStatus::IterationLimit;
            }
            let bland = *degenerate >= opts.bland_after;
            // only phase 1 may move artificials (their own cost drives them out)
            let Some(e) = self.entering(bland, phase1) else {
                return LpStatus::Optimal;
            };
            let Some(l) = self.leaving(e) else {
                return LpStatus::Unbounded;
            };
            if self.rhs[l].max(0.0) / self.row(l)[e] <= DEGENERATE_EPS {
                *degenerate += 1;
            }
            self.pivot(l, e);
            *iterations += 1;
        }
    }

    /// after phase 1: pivot leftover zero-level artificials out of the basis
    fn evict_artificials(&mut self) {
        for i in 0..self.m {
            if self.basis[i] >= self.n_core {
                let candidate = {
                    let row = self.row(i);
                    (0..self.n_core).find(|&j| row[j].abs() > PIVOT_TOL)
                };
                if let Some(j) = candidate {
                    self.pivot(i, j);
                }
                // a fully zero row is redundant; its artificial stays basic
                // at level zero and is barred from re-entering
            }
        }
    }

    /// recompute basic values from the original columns (LU of the basis)
    fn refine(&self) -> Option<Vec<f64>> {
        let bmat = DMatrix::from_fn(self.m, self.m, |i, k| self.orig_cols[(i, self.basis[k])]);
        let lu = bmat.lu();
        lu.solve(&self.orig_b).map(|xb| xb.iter().copied().collect())
    }

    fn solve(mut self, opts: &SimplexOptions) -> LpSolution {
        let mut iterations = 0usize;
        let mut degenerate = 0usize;
        let needs_phase1 = self.basis.iter().any(|&j| j >= self.n_core);
        if needs_phase1 {
            let st = self.run_phase(true, opts, &mut iterations, &mut degenerate);
            if st != LpStatus::Optimal {
                return self.finish(st, iterations);
            }
            if self.objective(true) > FEAS_TOL {
                return self.finish(LpStatus::Infeasible, iterations);
            }
            self.evict_artificials();
        }
        let st = self.run_phase(false, opts, &mut iterations, &mut degenerate);
        self.finish(st, iterations)
    }

    fn finish(self, status: LpStatus, iterations: usize) -> LpSolution {
        let mut x = DVector::zeros(self.n_struct);
        let refined = if status == LpStatus::Optimal {
            self.refine()
        } else {
            None
        };
        match refined {
            Some(xb) => {
                for (i, &j) in self.basis.iter().enumerate() {
                    if j < self.n_struct {
                        x[j] = xb[i];
                    }
                }
            }
            None => {
                for (i, &j) in self.basis.iter().enumerate() {
                    if j < self.n_struct {
                        x[j] = self.rhs[i];
                    }
                }
            }
        }
        let objective = (0..self.n_struct).map(|j| self.cost[j] * x[j]).sum();
        LpSolution {
            x,
            objective,
            status,
            iterations,
        }
    }
}
