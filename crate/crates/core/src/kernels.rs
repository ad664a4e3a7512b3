//! Univariate kernels, diagonal bandwidths and the d-dimensional product
//! kernel weight used by every local estimator.

use crate::normal::{std_normal_cdf, std_normal_pdf};

/// Univariate kernel choice. Both kernels are symmetric, bounded and
/// compactly supported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// 0.75 (1 - u^2) on |u| <= 1.
    Epanechnikov,
    /// Standard normal density truncated to |u| < cutoff and renormalized
    /// to integrate to one over its support.
    TruncatedGaussian { cutoff: f64 },
}

impl KernelSpec {
    /// Truncated Gaussian with the default 4-sigma cutoff.
    pub fn tgauss() -> Self {
        KernelSpec::TruncatedGaussian { cutoff: 4.0 }
    }

    /// Half-width of the kernel support.
    pub fn support(self) -> f64 {
        match self {
            KernelSpec::Epanechnikov => 1.0,
            KernelSpec::TruncatedGaussian { cutoff } => cutoff,
        }
    }
}

/// Evaluate the univariate kernel at `u`.
pub fn kernel_eval(spec: KernelSpec, u: f64) -> f64 {
    match spec {
        KernelSpec::Epanechnikov => {
            if u.abs() < 1.0 {
                0.75 * (1.0 - u * u)
            } else {
                0.0
            }
        }
        KernelSpec::TruncatedGaussian { cutoff } => {
            debug_assert!(cutoff > 0.0);
            if u.abs() < cutoff {
                let mass = 2.0 * std_normal_cdf(cutoff) - 1.0;
                std_normal_pdf(u) / mass
            } else {
                0.0
            }
        }
    }
}

/// Diagonal bandwidth matrix, stored as the vector of per-axis scales.
#[derive(Debug, Clone, PartialEq)]
pub struct Bandwidth {
    diag: Vec<f64>,
}

impl Bandwidth {
    pub fn new(diag: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "bandwidth needs at least one axis");
        assert!(
            diag.iter().all(|&h| h > 0.0 && h.is_finite()),
            "bandwidth entries must be positive and finite: {diag:?}"
        );
        Self { diag }
    }

    /// Same scale on every one of `d` axes.
    pub fn isotropic(h: f64, d: usize) -> Self {
        Self::new(vec![h; d])
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::new(self.diag.iter().map(|h| h * c).collect())
    }
}

/// Product kernel weight: prod_i (1/h_i) K(delta_i / h_i).
///
/// Zero exactly when some coordinate falls outside the scaled support.
pub fn product_kernel_weight(spec: KernelSpec, h: &Bandwidth, delta: &[f64]) -> f64 {
    assert_eq!(h.dim(), delta.len(), "bandwidth/offset dimension mismatch");
    let mut w = 1.0;
    for (&hi, &di) in h.diag().iter().zip(delta) {
        w *= kernel_eval(spec, di / hi) / hi;
        if w == 0.0 {
            return 0.0;
        }
    }
    w
}

/// Bandwidth at the reference rate (log p / n)^(1/(4+d)), the center of the
/// cross-validation search grid.
pub fn rate_bandwidth(n: usize, p: usize, d: usize, scale: f64) -> Bandwidth {
    assert!(n >= 2 && p >= 2, "rate bandwidth needs n >= 2 and p >= 2");
    assert!(scale > 0.0);
    let ratio = (p as f64).ln() / n as f64;
    let h = scale * ratio.powf(1.0 / (4.0 + d as f64));
    Bandwidth::isotropic(h, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Prng, RngSeed};

    #[test]
    fn epanechnikov_values() {
        assert_eq!(kernel_eval(KernelSpec::Epanechnikov, 0.0), 0.75);
        assert_eq!(kernel_eval(KernelSpec::Epanechnikov, 1.5), 0.0);
        assert_eq!(kernel_eval(KernelSpec::Epanechnikov, -1.5), 0.0);
        assert!((kernel_eval(KernelSpec::Epanechnikov, 0.5) - 0.5625).abs() <= 1e-15);
    }

    #[test]
    fn truncated_gaussian_peak_and_support() {
        let k = KernelSpec::tgauss();
        // phi(0) / (2 Phi(4) - 1), high-precision reference
        assert!((kernel_eval(k, 0.0) - 0.39896755199707841257).abs() <= 1e-14);
        assert_eq!(kernel_eval(k, 4.0), 0.0);
        assert_eq!(kernel_eval(k, -4.1), 0.0);
        assert!(kernel_eval(k, 3.999) > 0.0);
    }

    #[test]
    fn truncated_gaussian_integrates_to_one() {
        // midpoint rule over the support
        let k = KernelSpec::tgauss();
        let n = 400_000;
        let step = 8.0 / n as f64;
        let sum: f64 = (0..n)
            .map(|i| kernel_eval(k, -4.0 + (i as f64 + 0.5) * step) * step)
            .sum();
        assert!((sum - 1.0).abs() <= 1e-9, "integral={sum}");
    }

    #[test]
    fn product_weight_examples() {
        let e = KernelSpec::Epanechnikov;
        let w = product_kernel_weight(e, &Bandwidth::isotropic(2.0, 1), &[0.0]);
        assert!((w - 0.375).abs() <= 1e-15);
        let w = product_kernel_weight(e, &Bandwidth::isotropic(1.0, 2), &[0.0, 0.0]);
        assert!((w - 0.5625).abs() <= 1e-15);
        // (1/0.5) K(0.5) * (1/2) K(0.5) with K(0.5) = 0.75 * (1 - 0.25)
        let w = product_kernel_weight(e, &Bandwidth::new(vec![0.5, 2.0]), &[0.25, 1.0]);
        assert!((w - 0.31640625).abs() <= 1e-15);
    }

    #[test]
    fn product_weight_support_boundary() {
        let e = KernelSpec::Epanechnikov;
        let h = Bandwidth::new(vec![1.0, 0.5]);
        assert!(product_kernel_weight(e, &h, &[0.9, 0.4]) > 0.0);
        assert_eq!(product_kernel_weight(e, &h, &[0.9, 0.5]), 0.0);
        assert_eq!(product_kernel_weight(e, &h, &[1.2, 0.1]), 0.0);
    }

    #[test]
    fn product_weight_symmetry_random() {
        let mut rng = Prng::new(RngSeed(31));
        for spec in [KernelSpec::Epanechnikov, KernelSpec::tgauss()] {
            for _ in 0..1000 {
                let h = Bandwidth::new(vec![0.2 + rng.uniform(), 0.2 + rng.uniform()]);
                let delta = [4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0];
                let neg = [-delta[0], -delta[1]];
                let a = product_kernel_weight(spec, &h, &delta);
                let b = product_kernel_weight(spec, &h, &neg);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn product_weight_scaling() {
        let mut rng = Prng::new(RngSeed(77));
        for _ in 0..200 {
            let h = Bandwidth::new(vec![0.3 + rng.uniform(), 0.3 + rng.uniform()]);
            let delta = [rng.uniform() - 0.5, rng.uniform() - 0.5];
            let c = 0.5 + 2.0 * rng.uniform();
            let a = product_kernel_weight(KernelSpec::Epanechnikov, &h, &delta);
            let scaled = product_kernel_weight(
                KernelSpec::Epanechnikov,
                &h.scaled(c),
                &[delta[0] * c, delta[1] * c],
            );
            let expect = a * c.powi(-2);
            if a > 0.0 {
                assert!((scaled - expect).abs() <= 1e-12 * expect.abs().max(1.0));
            }
        }
    }

    #[test]
    fn rate_bandwidth_values() {
        // (ln 50 / 100)^(1/5) and (ln 50 / 100)^(1/6), high-precision references
        let h1 = rate_bandwidth(100, 50, 1, 1.0);
        assert!((h1.diag()[0] - 0.52297421898293195).abs() <= 1e-14);
        let h2 = rate_bandwidth(100, 50, 2, 1.0);
        assert_eq!(h2.dim(), 2);
        for &h in h2.diag() {
            assert!((h - 0.58263991467579818).abs() <= 1e-14);
        }
        let doubled = rate_bandwidth(100, 50, 1, 2.0);
        assert!((doubled.diag()[0] - 2.0 * h1.diag()[0]).abs() <= 1e-15);
    }
}
