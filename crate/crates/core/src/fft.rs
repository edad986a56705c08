//! Thin wrappers over `rustfft` with per-call buffers.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Unnormalized forward transform: `X_j = Σ_k x_k e^{-2πi jk/M}`.
pub(crate) fn forward(buf: &mut [Complex64]) {
    if buf.is_empty() {
        return;
    }
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(buf.len()).process(buf);
}

/// Unnormalized inverse transform: `x_k = Σ_j X_j e^{+2πi jk/M}`.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    if buf.is_empty() {
        return;
    }
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_inverse(buf.len()).process(buf);
}

/// Circular convolution `(a * b)_j = Σ_k a_{(j-k) mod M} b_k`.
pub(crate) fn circular_convolution(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.len(), b.len(), "convolution operands must share a length");
    let m = a.len();
    let mut fa = a.to_vec();
    let mut fb = b.to_vec();
    forward(&mut fa);
    forward(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y;
    }
    inverse(&mut fa);
    let scale = 1.0 / m as f64;
    fa.iter_mut().for_each(|x| *x *= scale);
    fa
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_matches_direct_sum() {
        let m = 12;
        let a: Vec<_> = (0..m)
            .map(|k| Complex64::new((k as f64).sin(), (k as f64 * 0.3).cos()))
            .collect();
        let b: Vec<_> = (0..m).map(|k| Complex64::new(k as f64 * 0.1, -1.0)).collect();
        let fast = circular_convolution(&a, &b);
        for j in 0..m {
            let direct: Complex64 = (0..m).map(|k| a[(j + m - k) % m] * b[k]).sum();
            assert!((fast[j] - direct).norm() < 1e-12);
        }
    }
}
