//! Poisson kernel of the disk and evaluation of harmonic extensions.
//!
//! Two routes are provided for `f(re^{iθ})`: the Fourier fast path
//! `Σ c_n r^{|n|} e^{inθ}` built from [`FourierCoeffs`], and direct trapezoid
//! quadrature of the Poisson integral against the boundary map.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::circle_maps::BoundaryMap;
use crate::error::{Error, Result};
use crate::fft;

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius {r} outside [0, 1)")))
    }
}

/// `P_r(t) = (1 − r²) / (1 − 2r cos t + r²)`.
pub fn poisson_kernel(r: f64, t: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(poisson_unchecked(r, t))
}

#[inline]
pub(crate) fn poisson_unchecked(r: f64, t: f64) -> f64 {
    (1.0 - r * r) / (1.0 - 2.0 * r * t.cos() + r * r)
}

/// `d/dt P_r(t) = −2r(1 − r²) sin t / (1 − 2r cos t + r²)²`.
pub fn poisson_kernel_deriv(r: f64, t: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(poisson_deriv_unchecked(r, t))
}

#[inline]
pub(crate) fn poisson_deriv_unchecked(r: f64, t: f64) -> f64 {
    let d = 1.0 - 2.0 * r * t.cos() + r * r;
    -2.0 * r * (1.0 - r * r) * t.sin() / (d * d)
}

/// `|(1/2π) ∫ P_r(s) P_σ(t − s) ds − P_{rσ}(t)|` with the integral replaced by
/// an `n`-point trapezoid sum.
pub fn semigroup_residual(r: f64, sigma: f64, t: f64, n_samples: usize) -> Result<f64> {
    check_radius(r)?;
    check_radius(sigma)?;
    if n_samples == 0 {
        return Err(Error::Domain("semigroup quadrature needs samples".into()));
    }
    let h = TAU / n_samples as f64;
    let quad: f64 = (0..n_samples)
        .map(|k| {
            let s = k as f64 * h;
            poisson_unchecked(r, s) * poisson_unchecked(sigma, t - s)
        })
        .sum::<f64>()
        / n_samples as f64;
    Ok((quad - poisson_unchecked(r * sigma, t)).abs())
}

/// Sample count for trapezoid rules at radius `r`:
/// `max(1024, 8/(1 − r))` rounded up to a power of two.
pub fn sample_count(r: f64) -> usize {
    let need = (8.0 / (1.0 - r)).ceil();
    let need = if need.is_finite() && need > 0.0 { need as usize } else { usize::MAX / 4 };
    need.max(1024).next_power_of_two()
}

/// Two-sided truncated Fourier series `Σ_{|n| ≤ N} c_n e^{int}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoeffs {
    order: usize,
    coeffs: Vec<Complex64>,
    source_hash: String,
}

impl FourierCoeffs {
    /// Builds coefficients from `(n, c_n)` pairs; indices not listed are zero.
    pub fn from_terms(terms: &[(i64, Complex64)], source: impl Into<String>) -> Self {
        let order = terms.iter().map(|(n, _)| n.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * order + 1];
        for &(n, c) in terms {
            coeffs[(n + order as i64) as usize] += c;
        }
        FourierCoeffs { order, coeffs, source_hash: source.into() }
    }

    /// Taylor coefficients of `z ↦ (z − a)/(1 − āz)` up to `z^order`:
    /// `c_0 = −a`, `c_n = (1 − |a|²) ā^{n−1}`.
    pub fn mobius(a: Complex64, order: usize) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(Error::Domain(format!("Möbius parameter |a| = {} must be < 1", a.norm())));
        }
        let scale = 1.0 - a.norm_sqr();
        let mut terms = vec![(0, -a)];
        let mut p = Complex64::new(1.0, 0.0);
        for n in 1..=order as i64 {
            terms.push((n, scale * p));
            p *= a.conj();
        }
        Ok(Self::from_terms(&terms, format!("analytic:mobius:{}:{}", a.re, a.im)))
    }

    /// `f(z) = z + c z̄²`.
    pub fn shear(c: Complex64) -> Self {
        Self::from_terms(
            &[(1, Complex64::new(1.0, 0.0)), (-2, c)],
            format!("analytic:shear:{}:{}", c.re, c.im),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn source_hash(&self) -> &str {
        &self.source_hash
    }

    /// `c_n`, zero outside the truncation window.
    pub fn get(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.order {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.order as i64) as usize]
        }
    }

    /// `(n, c_n)` in ascending `n`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n0 = self.order as i64;
        self.coeffs.iter().enumerate().map(move |(k, &c)| (k as i64 - n0, c))
    }

    /// `Σ |c_n|²`.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Same coefficients restricted to `|n| ≤ order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let off = self.order - order;
        FourierCoeffs {
            order,
            coeffs: self.coeffs[off..off + 2 * order + 1].to_vec(),
            source_hash: format!("{}:trunc{}", self.source_hash, order),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl Serialize for FourierCoeffs {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (n, c) in self.iter() {
            seq.serialize_element(&(n, c.re, c.im))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FourierCoeffs {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let triples: Vec<(i64, f64, f64)> = Vec::deserialize(deserializer)?;
        if triples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(serde::de::Error::custom("coefficient indices must be strictly ascending"));
        }
        let terms: Vec<_> = triples.iter().map(|&(n, re, im)| (n, Complex64::new(re, im))).collect();
        Ok(FourierCoeffs::from_terms(&terms, "json"))
    }
}

fn map_digest(map: &BoundaryMap) -> String {
    let mut h = Sha256::new();
    h.update(map.kind().as_str().as_bytes());
    h.update(map.omega().re.to_le_bytes());
    h.update(map.omega().im.to_le_bytes());
    for &(t, x) in map.knots() {
        h.update(t.to_le_bytes());
        h.update(x.to_le_bytes());
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Coefficients from `M = 4N` uniform samples of `ω e^{iξ(t)}`.
pub fn fourier_from_boundary(map: &BoundaryMap, order: usize) -> Result<FourierCoeffs> {
    fourier_from_boundary_sampled(map, order, 4 * order)
}

/// `c_n = (1/M) Σ_k ω e^{iξ(2πk/M)} e^{−2πink/M}` for `|n| ≤ N`, via FFT.
/// Requires `M ≥ 4N`.
pub fn fourier_from_boundary_sampled(map: &BoundaryMap, order: usize, samples: usize) -> Result<FourierCoeffs> {
    if order == 0 {
        return Err(Error::Domain("truncation order must be at least 1".into()));
    }
    if samples < 4 * order {
        return Err(Error::Domain(format!("{samples} samples cannot support order {order} (need ≥ 4N)")));
    }
    let mut buf: Vec<Complex64> = map
        .sample_lift(samples)
        .into_iter()
        .map(|x| map.omega() * Complex64::cis(x))
        .collect();
    fft::forward(&mut buf);
    let scale = 1.0 / samples as f64;
    let coeffs = (-(order as i64)..=order as i64)
        .map(|n| buf[n.rem_euclid(samples as i64) as usize] * scale)
        .collect();
    Ok(FourierCoeffs {
        order,
        coeffs,
        source_hash: format!("{}:M{}", map_digest(map), samples),
    })
}

/// `(e^{ix} − 1)/(ix)`, stable near zero.
fn phase_mean(x: f64) -> Complex64 {
    let half = 0.5 * x;
    let sinc = if half.abs() < 1e-8 { 1.0 - half * half / 6.0 } else { half.sin() / half };
    Complex64::cis(half) * sinc
}

/// Exact Fourier coefficients of `ω e^{iξ(t)}` for the piecewise-linear lift,
/// integrating each segment in closed form. Jumps contribute nothing.
///
/// Cost is `O(knots · N)`; intended for maps with few knots (step maps,
/// raw random maps) and as an oracle for the sampled route.
pub fn fourier_exact(map: &BoundaryMap, order: usize) -> FourierCoeffs {
    let knots = map.knots();
    let (t0, x0) = knots[0];
    // (start angle, start lift, length, slope) for every nondegenerate segment
    let segs: Vec<(f64, f64, f64, f64)> = knots
        .iter()
        .enumerate()
        .filter_map(|(j, &(ta, xa))| {
            let (tb, xb) = knots.get(j + 1).copied().unwrap_or((t0 + TAU, x0 + TAU));
            let len = tb - ta;
            (len > 0.0).then(|| (ta, xa, len, (xb - xa) / len))
        })
        .collect();
    let coeffs = (-(order as i64)..=order as i64)
        .map(|n| {
            let nf = n as f64;
            let acc: Complex64 = segs
                .iter()
                .map(|&(ta, xa, len, s)| Complex64::cis(xa - nf * ta) * len * phase_mean((s - nf) * len))
                .sum();
            map.omega() * acc / TAU
        })
        .collect();
    FourierCoeffs {
        order,
        coeffs,
        source_hash: format!("{}:exact", map_digest(map)),
    }
}

/// `Σ_{|n| ≤ N} c_n r^{|n|} e^{inθ}`.
pub fn eval_harmonic(coeffs: &FourierCoeffs, r: f64, theta: f64) -> Result<Complex64> {
    check_radius(r)?;
    Ok(series_eval(coeffs, r, theta, false))
}

/// `∂f/∂θ = Σ (in) c_n r^{|n|} e^{inθ}`.
pub fn eval_theta_derivative(coeffs: &FourierCoeffs, r: f64, theta: f64) -> Result<Complex64> {
    check_radius(r)?;
    Ok(series_eval(coeffs, r, theta, true))
}

fn series_eval(coeffs: &FourierCoeffs, r: f64, theta: f64, derivative: bool) -> Complex64 {
    let z = Complex64::from_polar(r, theta);
    let zb = z.conj();
    let mut acc = if derivative { Complex64::new(0.0, 0.0) } else { coeffs.get(0) };
    let (mut pz, mut pzb) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    for n in 1..=coeffs.order() as i64 {
        pz *= z;
        pzb *= zb;
        let (pos, neg) = (coeffs.get(n) * pz, coeffs.get(-n) * pzb);
        acc += if derivative {
            Complex64::new(0.0, n as f64) * (pos - neg)
        } else {
            pos + neg
        };
    }
    acc
}

/// `(ω/2π) ∫ e^{iξ(t)} P_r(θ − t) dt` by an `m`-point trapezoid sum.
pub fn eval_harmonic_direct(map: &BoundaryMap, r: f64, theta: f64, m: usize) -> Result<Complex64> {
    check_radius(r)?;
    Ok(direct_sum(map, m, |t| poisson_unchecked(r, theta - t)))
}

/// `(ω/2π) ∫ e^{iξ(t)} P_r'(θ − t) dt` by an `m`-point trapezoid sum.
pub fn eval_theta_derivative_direct(map: &BoundaryMap, r: f64, theta: f64, m: usize) -> Result<Complex64> {
    check_radius(r)?;
    Ok(direct_sum(map, m, |t| poisson_deriv_unchecked(r, theta - t)))
}

fn direct_sum(map: &BoundaryMap, m: usize, kernel: impl Fn(f64) -> f64) -> Complex64 {
    let h = TAU / m as f64;
    let acc: Complex64 = map
        .sample_lift(m)
        .into_iter()
        .enumerate()
        .map(|(k, x)| Complex64::cis(x) * kernel(k as f64 * h))
        .sum();
    map.omega() * acc / m as f64
}
