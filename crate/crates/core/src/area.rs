//! Area of `f(D_r)` by independent routes.
//!
//! Areas are absolute Lebesgue measure, so the identity gives `π r²`.
//!
//! * Green's formula on the Fourier series: `π Σ n |c_n|² r^{2|n|}`.
//! * Green's formula by trapezoid quadrature of `½ ∫ Im(f̄ f_θ) dθ`.
//! * The kernel double integral `(1/4π) ∫∫ K_r(s − t) sin(ξ(s) − ξ(t)) dt ds`,
//!   summed directly in `O(M²)` or as a circular correlation in `O(M log M)`.
//! * Midpoint integration of the Jacobian `|∂f|² − |∂̄f|²` on a polar grid.
//!
//! Every estimate carries `error_indicator = |value(M) − value(M/2)|`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle_maps::{make_mobius_boundary, make_rotation, BoundaryMap, MapKind};
use crate::error::{Error, Result};
use crate::fft;
use crate::poisson::{
    eval_harmonic, eval_theta_derivative, fourier_from_boundary_sampled, sample_count, FourierCoeffs,
};

/// Radius of a concentric disk, strictly inside `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Radius(f64);

impl Radius {
    pub fn new(r: f64) -> Result<Self> {
        if r > 0.0 && r < 1.0 {
            Ok(Radius(r))
        } else {
            Err(Error::Domain(format!("radius {r} must lie in (0, 1)")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `|D_r| = π r²`.
    pub fn disk_area(self) -> f64 {
        PI * self.0 * self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AreaMethod {
    GreenSpectral,
    GreenQuadrature,
    KernelDirect,
    KernelFFT,
    JacobianGrid,
    ExactFamily,
}

impl AreaMethod {
    /// The five numerical routes, excluding closed forms.
    pub const NUMERICAL: [AreaMethod; 5] = [
        AreaMethod::GreenSpectral,
        AreaMethod::GreenQuadrature,
        AreaMethod::KernelDirect,
        AreaMethod::KernelFFT,
        AreaMethod::JacobianGrid,
    ];

    /// Command-line name.
    pub fn slug(self) -> &'static str {
        match self {
            AreaMethod::GreenSpectral => "green-spectral",
            AreaMethod::GreenQuadrature => "green-quadrature",
            AreaMethod::KernelDirect => "kernel-direct",
            AreaMethod::KernelFFT => "kernel-fft",
            AreaMethod::JacobianGrid => "jacobian",
            AreaMethod::ExactFamily => "exact",
        }
    }

    pub fn from_slug(s: &str) -> Option<Self> {
        [
            AreaMethod::GreenSpectral,
            AreaMethod::GreenQuadrature,
            AreaMethod::KernelDirect,
            AreaMethod::KernelFFT,
            AreaMethod::JacobianGrid,
            AreaMethod::ExactFamily,
        ]
        .into_iter()
        .find(|m| m.slug() == s)
    }
}

impl fmt::Display for AreaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaEstimate {
    pub value: f64,
    pub method: AreaMethod,
    pub resolution: usize,
    pub error_indicator: f64,
}

/// `π Σ_{|n| ≤ N} n |c_n|² r^{2|n|}`. The indicator compares against the
/// series truncated at `N/2`.
pub fn area_green_spectral(coeffs: &FourierCoeffs, r: Radius) -> AreaEstimate {
    let full = green_series(coeffs, r.get(), coeffs.order());
    let half = green_series(coeffs, r.get(), coeffs.order() / 2);
    AreaEstimate {
        value: full,
        method: AreaMethod::GreenSpectral,
        resolution: coeffs.order(),
        error_indicator: (full - half).abs(),
    }
}

fn green_series(coeffs: &FourierCoeffs, r: f64, order: usize) -> f64 {
    let r2 = r * r;
    let mut p = 1.0;
    let mut acc = 0.0;
    for n in 1..=order as i64 {
        p *= r2;
        acc += n as f64 * (coeffs.get(n).norm_sqr() - coeffs.get(-n).norm_sqr()) * p;
    }
    PI * acc
}

/// Green's spectral area from `m` boundary samples (`N = m/4`); the
/// indicator reruns the whole pipeline at `m/2` samples.
pub fn area_green_spectral_map(map: &BoundaryMap, r: Radius, m: usize) -> Result<AreaEstimate> {
    check_resolution(m)?;
    let full = area_green_spectral(&fourier_from_boundary_sampled(map, m / 4, m)?, r);
    let half = area_green_spectral(&fourier_from_boundary_sampled(map, m / 8, m / 2)?, r);
    Ok(AreaEstimate {
        value: full.value,
        method: AreaMethod::GreenSpectral,
        resolution: m,
        error_indicator: (full.value - half.value).abs(),
    })
}

fn check_resolution(m: usize) -> Result<()> {
    if m < 16 || !m.is_multiple_of(8) {
        Err(Error::Domain(format!("resolution {m} must be a multiple of 8 and at least 16")))
    } else {
        Ok(())
    }
}

/// Trapezoid rule in `θ` for `½ ∫ Im(conj(f) f_θ) dθ` using the Fourier
/// evaluators, coefficients built from `m` samples.
pub fn area_green_quadrature(map: &BoundaryMap, r: Radius, m: usize) -> Result<AreaEstimate> {
    check_resolution(m)?;
    let full = green_quadrature_coeffs(&fourier_from_boundary_sampled(map, m / 4, m)?, r, m)?;
    let half = green_quadrature_coeffs(&fourier_from_boundary_sampled(map, m / 8, m / 2)?, r, m / 2)?;
    Ok(AreaEstimate {
        value: full,
        method: AreaMethod::GreenQuadrature,
        resolution: m,
        error_indicator: (full - half).abs(),
    })
}

/// Green quadrature for explicit coefficients with `m` nodes in `θ`.
pub fn area_green_quadrature_coeffs(coeffs: &FourierCoeffs, r: Radius, m: usize) -> Result<AreaEstimate> {
    check_resolution(m)?;
    let full = green_quadrature_coeffs(coeffs, r, m)?;
    let half = green_quadrature_coeffs(coeffs, r, m / 2)?;
    Ok(AreaEstimate {
        value: full,
        method: AreaMethod::GreenQuadrature,
        resolution: m,
        error_indicator: (full - half).abs(),
    })
}

fn green_quadrature_coeffs(coeffs: &FourierCoeffs, r: Radius, m: usize) -> Result<f64> {
    let h = TAU / m as f64;
    let mut acc = 0.0;
    for k in 0..m {
        let theta = k as f64 * h;
        let f = eval_harmonic(coeffs, r.get(), theta)?;
        let ft = eval_theta_derivative(coeffs, r.get(), theta)?;
        acc += (f.conj() * ft).im;
    }
    Ok(0.5 * acc * h)
}

/// `K_r(α) = 2r²(1 − r⁴) sin α / (1 − 2r² cos α + r⁴)²`.
pub fn kernel_k(r: Radius, alpha: f64) -> f64 {
    let q = r.get() * r.get();
    let d = 1.0 - 2.0 * q * alpha.cos() + q * q;
    2.0 * q * (1.0 - q * q) * alpha.sin() / (d * d)
}

/// Kernel samples `K_r(2πm/M)`, `m = 0..M`.
pub(crate) fn kernel_samples(r: Radius, m: usize) -> Vec<f64> {
    (0..m).map(|j| kernel_k(r, TAU * j as f64 / m as f64)).collect()
}

/// Sample count for kernel sums: the trapezoid rule at radius `r²`.
pub fn kernel_sample_count(r: Radius) -> usize {
    sample_count(r.get() * r.get())
}

fn kernel_area_direct(lift: &[f64], r: Radius) -> f64 {
    let m = lift.len();
    let kappa = kernel_samples(r, m);
    let mut acc = 0.0;
    for (j, &xs) in lift.iter().enumerate() {
        let mut row = 0.0;
        for (k, &xt) in lift.iter().enumerate() {
            row += kappa[(j + m - k) % m] * (xs - xt).sin();
        }
        acc += row;
    }
    let h = TAU / m as f64;
    acc * h * h / (4.0 * PI)
}

fn kernel_area_fft(lift: &[f64], r: Radius) -> f64 {
    let m = lift.len();
    let kappa: Vec<Complex64> = kernel_samples(r, m).into_iter().map(|k| Complex64::new(k, 0.0)).collect();
    let w: Vec<Complex64> = lift.iter().map(|&x| Complex64::cis(x)).collect();
    let wc: Vec<Complex64> = w.iter().map(|z| z.conj()).collect();
    // Σ_j Σ_k κ_{j−k} Im(w_j conj(w_k)) = Im Σ_j w_j (κ * conj w)_j
    let conv = fft::circular_convolution(&kappa, &wc);
    let s: f64 = w.iter().zip(&conv).map(|(a, b)| (a * b).im).sum();
    let h = TAU / m as f64;
    s * h * h / (4.0 * PI)
}

/// `O(M²)` double trapezoid sum of the kernel area integral.
pub fn area_kernel_direct(map: &BoundaryMap, r: Radius, m: usize) -> Result<AreaEstimate> {
    check_resolution(m)?;
    let full = kernel_area_direct(&map.sample_lift(m), r);
    let half = kernel_area_direct(&map.sample_lift(m / 2), r);
    Ok(AreaEstimate {
        value: full,
        method: AreaMethod::KernelDirect,
        resolution: m,
        error_indicator: (full - half).abs(),
    })
}

/// Same finite sum as [`area_kernel_direct`], evaluated in `O(M log M)`
/// by expanding `sin(ξ(s) − ξ(t))` and correlating with the kernel.
pub fn area_kernel_fft(map: &BoundaryMap, r: Radius, m: usize) -> Result<AreaEstimate> {
    check_resolution(m)?;
    let full = kernel_area_fft(&map.sample_lift(m), r);
    let half = kernel_area_fft(&map.sample_lift(m / 2), r);
    Ok(AreaEstimate {
        value: full,
        method: AreaMethod::KernelFFT,
        resolution: m,
        error_indicator: (full - half).abs(),
    })
}

/// Values of `det Df = |∂f|² − |∂̄f|²` on the ring `|z| = ρ` at `n_theta`
/// equispaced angles, from the Fourier representation.
pub(crate) fn jacobian_ring(coeffs: &FourierCoeffs, rho: f64, n_theta: usize) -> Vec<f64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut dz = vec![zero; n_theta];
    let mut dzb = vec![zero; n_theta];
    let mut p = 1.0;
    for n in 1..=coeffs.order() {
        let idx = (n - 1) % n_theta;
        dz[idx] += coeffs.get(n as i64) * (n as f64 * p);
        dzb[(n_theta - idx) % n_theta] += coeffs.get(-(n as i64)) * (n as f64 * p);
        p *= rho;
    }
    // ∂f = Σ n c_n z^{n−1}, ∂̄f = Σ n c_{−n} z̄^{n−1}: the latter carries
    // negative frequencies.
    fft::inverse(&mut dz);
    fft::inverse(&mut dzb);
    dz.iter().zip(&dzb).map(|(a, b)| a.norm_sqr() - b.norm_sqr()).collect()
}

fn jacobian_area(coeffs: &FourierCoeffs, r: f64, n_rho: usize, n_theta: usize) -> f64 {
    let dr = r / n_rho as f64;
    let mut acc = 0.0;
    for i in 0..n_rho {
        let rho = (i as f64 + 0.5) * dr;
        let ring: f64 = jacobian_ring(coeffs, rho, n_theta).iter().sum::<f64>() * TAU / n_theta as f64;
        acc += ring * rho * dr;
    }
    acc
}

/// Midpoint rule in `ρ`, trapezoid in `θ`, of `∫∫ det Df ρ dρ dθ` over `D_r`.
pub fn area_jacobian_grid(map: &BoundaryMap, r: Radius, n_rho: usize, n_theta: usize) -> Result<AreaEstimate> {
    if map.kind() != MapKind::Homeomorphism {
        return Err(Error::Domain(
            "Jacobian area requires an injective boundary correspondence".into(),
        ));
    }
    check_resolution(n_theta)?;
    let coeffs = fourier_from_boundary_sampled(map, n_theta / 4, n_theta)?;
    area_jacobian_grid_coeffs(&coeffs, r, n_rho, n_theta)
}

/// Jacobian-grid area for explicit coefficients (e.g. `z + c z̄²`).
pub fn area_jacobian_grid_coeffs(
    coeffs: &FourierCoeffs,
    r: Radius,
    n_rho: usize,
    n_theta: usize,
) -> Result<AreaEstimate> {
    if n_rho < 2 || n_theta == 0 {
        return Err(Error::Domain("Jacobian grid needs at least 2 radial and 1 angular node".into()));
    }
    if n_theta < coeffs.order() {
        return Err(Error::Domain(format!(
            "n_theta = {n_theta} below truncation order {}",
            coeffs.order()
        )));
    }
    let full = jacobian_area(coeffs, r.get(), n_rho, n_theta);
    let half = jacobian_area(coeffs, r.get(), n_rho / 2, n_theta);
    Ok(AreaEstimate {
        value: full,
        method: AreaMethod::JacobianGrid,
        resolution: n_rho,
        error_indicator: (full - half).abs(),
    })
}

/// Closed-form test families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExactFamily {
    Identity,
    Rotation(f64),
    /// `z + c z̄²` with `|c| < 1/2`.
    Shear(Complex64),
    /// `(z − a)/(1 − āz)` with `|a| < 1`.
    MobiusDisk(Complex64),
}

impl ExactFamily {
    fn validate(&self) -> Result<()> {
        match *self {
            ExactFamily::Shear(c) if !(c.norm() < 0.5) => {
                Err(Error::Domain(format!("shear parameter |c| = {} must be < 1/2", c.norm())))
            }
            ExactFamily::MobiusDisk(a) if !(a.norm() < 1.0) => {
                Err(Error::Domain(format!("Möbius parameter |a| = {} must be < 1", a.norm())))
            }
            _ => Ok(()),
        }
    }

    /// Series coefficients up to `order` (exact for all but the Möbius tail).
    pub fn coefficients(&self, order: usize) -> Result<FourierCoeffs> {
        self.validate()?;
        Ok(match *self {
            ExactFamily::Identity => FourierCoeffs::from_terms(&[(1, Complex64::new(1.0, 0.0))], "analytic:identity"),
            ExactFamily::Rotation(phi) => {
                FourierCoeffs::from_terms(&[(1, Complex64::cis(phi))], format!("analytic:rotation:{phi}"))
            }
            ExactFamily::Shear(c) => FourierCoeffs::shear(c),
            ExactFamily::MobiusDisk(a) => FourierCoeffs::mobius(a, order)?,
        })
    }

    /// Boundary correspondence, when the family maps the disk onto itself.
    pub fn boundary_map(&self) -> Result<Option<BoundaryMap>> {
        self.validate()?;
        Ok(match *self {
            ExactFamily::Identity => Some(make_rotation(0.0)),
            ExactFamily::Rotation(phi) => Some(make_rotation(phi)),
            ExactFamily::Shear(_) => None,
            ExactFamily::MobiusDisk(a) => Some(make_mobius_boundary(a)?),
        })
    }
}

/// Closed-form `|f(D_r)|`: `π r²` for isometries, `π(r² − 2|c|² r⁴)` for the
/// shear, `π (r(1 − |a|²)/(1 − |a|² r²))²` for the Möbius image disk.
pub fn exact_family_area(family: ExactFamily, r: Radius) -> Result<AreaEstimate> {
    family.validate()?;
    let r = r.get();
    let value = match family {
        ExactFamily::Identity | ExactFamily::Rotation(_) => PI * r * r,
        ExactFamily::Shear(c) => PI * (r * r - 2.0 * c.norm_sqr() * r.powi(4)),
        ExactFamily::MobiusDisk(a) => {
            let a2 = a.norm_sqr();
            let radius = r * (1.0 - a2) / (1.0 - a2 * r * r);
            PI * radius * radius
        }
    };
    Ok(AreaEstimate {
        value,
        method: AreaMethod::ExactFamily,
        resolution: 0,
        error_indicator: 0.0,
    })
}

/// Dispatches one numerical method at resolution `m`. The Jacobian grid uses
/// `2m` radial and `m` angular nodes.
pub fn estimate_area(map: &BoundaryMap, r: Radius, method: AreaMethod, m: usize) -> Result<AreaEstimate> {
    match method {
        AreaMethod::GreenSpectral => area_green_spectral_map(map, r, m),
        AreaMethod::GreenQuadrature => area_green_quadrature(map, r, m),
        AreaMethod::KernelDirect => area_kernel_direct(map, r, m),
        AreaMethod::KernelFFT => area_kernel_fft(map, r, m),
        AreaMethod::JacobianGrid => area_jacobian_grid(map, r, 2 * m, m),
        AreaMethod::ExactFamily => Err(Error::Domain(
            "closed-form area needs a named family, not boundary data".into(),
        )),
    }
}

/// Dispatches a method on explicit coefficients. Kernel methods need the
/// boundary correspondence and are rejected here.
pub fn estimate_area_coeffs(coeffs: &FourierCoeffs, r: Radius, method: AreaMethod, m: usize) -> Result<AreaEstimate> {
    match method {
        AreaMethod::GreenSpectral => Ok(area_green_spectral(coeffs, r)),
        AreaMethod::GreenQuadrature => area_green_quadrature_coeffs(coeffs, r, m),
        AreaMethod::JacobianGrid => area_jacobian_grid_coeffs(coeffs, r, 2 * m, m),
        other => Err(Error::Domain(format!("{other} needs a boundary correspondence"))),
    }
}

/// Default resolution for a method at radius `r`.
pub fn default_resolution(method: AreaMethod, r: Radius) -> usize {
    match method {
        AreaMethod::KernelDirect | AreaMethod::KernelFFT => kernel_sample_count(r),
        _ => sample_count(r.get()),
    }
}
