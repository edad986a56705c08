//! Theorem-level checks: area contraction and its equality case, the
//! boundary Jacobian corollary, the harmonic Schwarz bound and the
//! holomorphic convexity inequality.
//!
//! Each check produces a [`VerdictRecord`]. For `≤`-checks the slack is
//! `rhs − lhs`, for `≥`-checks `lhs − rhs`, and for identities `−|lhs − rhs|`;
//! a record passes iff `slack ≥ −tolerance`.

use std::f64::consts::{FRAC_2_PI, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::area::{
    area_green_spectral, area_green_spectral_map, default_resolution, estimate_area, jacobian_ring,
    AreaEstimate, AreaMethod, Radius,
};
use crate::circle_maps::{BoundaryMap, MapKind};
use crate::error::{Error, Result};
use crate::poisson::{eval_harmonic, fourier_exact, fourier_from_boundary_sampled, sample_count, FourierCoeffs};

/// Relative tolerance for inequality checks (scaled by the right-hand side).
pub const INEQUALITY_REL_TOL: f64 = 1e-6;
/// Tolerance for identity-style checks.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Default tolerance of the boundary Jacobian check.
pub const COROLLARY_TOL: f64 = 1e-3;
/// Required `|f(0)|` bound before the Schwarz check runs.
pub const SCHWARZ_CENTER_TOL: f64 = 1e-10;
/// Default Richardson levels `ε` for the boundary Jacobian integral.
pub const COROLLARY_EPS: [f64; 3] = [0.01, 0.005, 0.0025];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Whether the checked inequality is expected to hold or to be violated
/// (the harmonic shear is a designed counterexample for convexity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Hold,
    Violate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub check_name: String,
    pub map_id: String,
    pub family: String,
    pub params: String,
    pub r: Option<f64>,
    pub method: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub resolution: usize,
    pub error_indicator: f64,
    pub status: Status,
    pub expected: Expectation,
    pub wall_time_ms: f64,
}

impl VerdictRecord {
    fn with_slack(check_name: &str, lhs: f64, rhs: f64, slack: f64, tolerance: f64) -> Self {
        let passed = slack.is_finite() && slack >= -tolerance;
        VerdictRecord {
            check_name: check_name.to_string(),
            map_id: String::new(),
            family: String::new(),
            params: String::new(),
            r: None,
            method: String::new(),
            lhs,
            rhs,
            slack,
            tolerance,
            passed,
            resolution: 0,
            error_indicator: 0.0,
            status: if passed { Status::Pass } else { Status::Fail },
            expected: Expectation::Hold,
            wall_time_ms: 0.0,
        }
    }

    /// `lhs ≤ rhs`.
    pub fn upper_bound(check_name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::with_slack(check_name, lhs, rhs, rhs - lhs, tolerance)
    }

    /// `lhs ≥ rhs`.
    pub fn lower_bound(check_name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::with_slack(check_name, lhs, rhs, lhs - rhs, tolerance)
    }

    /// `lhs = rhs`.
    pub fn identity(check_name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::with_slack(check_name, lhs, rhs, -(lhs - rhs).abs(), tolerance)
    }

    pub fn with_map(mut self, map_id: &str, family: &str, params: &str) -> Self {
        self.map_id = map_id.to_string();
        self.family = family.to_string();
        self.params = params.to_string();
        self
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_method(mut self, method: impl Into<String>) -> Self {
        self.method = method.into();
        self
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn with_error_indicator(mut self, e: f64) -> Self {
        self.error_indicator = e;
        self
    }

    pub fn with_wall_time(mut self, ms: f64) -> Self {
        self.wall_time_ms = ms;
        self
    }

    pub fn expecting_violation(mut self) -> Self {
        self.expected = Expectation::Violate;
        self
    }

    pub fn mark_inconclusive(mut self) -> Self {
        self.status = Status::Inconclusive;
        self
    }

    /// The record matches its expectation and is conclusive.
    pub fn outcome_ok(&self) -> bool {
        self.status != Status::Inconclusive && self.passed == (self.expected == Expectation::Hold)
    }
}

fn require_homeomorphism(map: &BoundaryMap, what: &str) -> Result<()> {
    if map.kind() == MapKind::Homeomorphism {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{what} requires a homeomorphic boundary correspondence")))
    }
}

/// `|f(D_r)| ≤ π r² + tol` with the method's default resolution.
pub fn check_area_contraction(map: &BoundaryMap, r: Radius, method: AreaMethod, tol: f64) -> Result<VerdictRecord> {
    check_area_contraction_at(map, r, method, default_resolution(method, r), tol)
}

pub fn check_area_contraction_at(
    map: &BoundaryMap,
    r: Radius,
    method: AreaMethod,
    resolution: usize,
    tol: f64,
) -> Result<VerdictRecord> {
    require_homeomorphism(map, "area contraction")?;
    let est = estimate_area(map, r, method, resolution)?;
    Ok(VerdictRecord::upper_bound("area_contraction", est.value, r.disk_area(), tol)
        .with_r(r.get())
        .with_method(method.slug())
        .with_resolution(est.resolution)
        .with_error_indicator(est.error_indicator))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EqualitySlack {
    /// `π r² − |f(D_r)|`.
    pub slack: f64,
    pub estimate: AreaEstimate,
}

/// `π r² − |f(D_r)|` by the spectral Green route at the default resolution.
pub fn equality_slack(map: &BoundaryMap, r: Radius) -> Result<EqualitySlack> {
    require_homeomorphism(map, "equality slack")?;
    let estimate = area_green_spectral_map(map, r, sample_count(r.get()))?;
    Ok(EqualitySlack { slack: r.disk_area() - estimate.value, estimate })
}

/// Polar evaluation grid `r_i = r_max (i + 1)/n_r`, `θ_j = 2πj/n_theta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchwarzGrid {
    pub n_r: usize,
    pub n_theta: usize,
    pub r_max: f64,
}

impl Default for SchwarzGrid {
    fn default() -> Self {
        SchwarzGrid { n_r: 64, n_theta: 64, r_max: 0.98 }
    }
}

/// `(4/π) arctan |z|`.
pub fn schwarz_bound(z_abs: f64) -> f64 {
    2.0 * FRAC_2_PI * z_abs.atan()
}

/// Coefficients accurate enough to evaluate the extension up to `r_max`:
/// exact segment integrals for sparse knot lists, FFT sampling on the
/// knot grid otherwise.
pub fn coefficients_for_radius(map: &BoundaryMap, r_max: f64) -> Result<FourierCoeffs> {
    if !(0.0..1.0).contains(&r_max) {
        return Err(Error::Domain(format!("radius {r_max} outside [0, 1)")));
    }
    let order = ((40.0 / (1.0 - r_max)).ceil() as usize).next_power_of_two();
    if map.knots().len() <= 1024 {
        Ok(fourier_exact(map, order))
    } else {
        let samples = (4 * order).max(map.knots().len().next_power_of_two());
        fourier_from_boundary_sampled(map, order, samples)
    }
}

/// Max over the grid of `|g(z)| − (4/π) arctan |z|` where
/// `g(z) = f((z + a)/(1 + āz))` and `a = center_shift`. Precomposition keeps
/// `g` harmonic; `f(a)` must vanish so that `g(0) = 0`.
pub fn schwarz_bound_check(
    map: &BoundaryMap,
    center_shift: Complex64,
    grid: SchwarzGrid,
    tol: f64,
) -> Result<VerdictRecord> {
    let reach = schwarz_reach(center_shift, grid)?;
    schwarz_bound_check_coeffs(&coefficients_for_radius(map, reach)?, center_shift, grid, tol)
}

/// Evaluation radius needed after precomposition with `φ_a`.
fn schwarz_reach(a: Complex64, grid: SchwarzGrid) -> Result<f64> {
    if !(a.norm() < 1.0) {
        return Err(Error::Domain(format!("center shift |a| = {} must be < 1", a.norm())));
    }
    if grid.n_r == 0 || grid.n_theta == 0 || !(grid.r_max > 0.0 && grid.r_max < 1.0) {
        return Err(Error::Domain("Schwarz grid must be nonempty with 0 < r_max < 1".into()));
    }
    Ok((grid.r_max + a.norm()) / (1.0 + grid.r_max * a.norm()))
}

/// [`schwarz_bound_check`] for a map given by its coefficients.
pub fn schwarz_bound_check_coeffs(
    coeffs: &FourierCoeffs,
    center_shift: Complex64,
    grid: SchwarzGrid,
    tol: f64,
) -> Result<VerdictRecord> {
    let reach = schwarz_reach(center_shift, grid)?;
    let a = center_shift;
    let one = Complex64::new(1.0, 0.0);
    let precompose = |z: Complex64| (z + a) / (one + a.conj() * z);
    let center = eval_harmonic(coeffs, a.norm(), a.arg())?;
    if center.norm() > SCHWARZ_CENTER_TOL {
        return Err(Error::Precondition(format!(
            "|f(a)| = {:.3e} exceeds {SCHWARZ_CENTER_TOL:e}; the bound needs f(a) = 0",
            center.norm()
        )));
    }
    let mut worst = f64::NEG_INFINITY;
    for i in 0..grid.n_r {
        let rho = grid.r_max * (i + 1) as f64 / grid.n_r as f64;
        for j in 0..grid.n_theta {
            let z = Complex64::from_polar(rho, TAU * j as f64 / grid.n_theta as f64);
            let w = precompose(z);
            let g = eval_harmonic(coeffs, w.norm().min(reach), w.arg())?;
            worst = worst.max(g.norm() - schwarz_bound(rho));
        }
    }
    Ok(VerdictRecord::upper_bound("schwarz_bound", worst, 0.0, tol)
        .with_method("fourier")
        .with_resolution(coeffs.order()))
}

/// `(4/π) arctan |z| − |f(z)|` at a single point.
pub fn schwarz_gap(map: &BoundaryMap, z: Complex64) -> Result<f64> {
    let coeffs = coefficients_for_radius(map, z.norm())?;
    Ok(schwarz_bound(z.norm()) - eval_harmonic(&coeffs, z.norm(), z.arg())?.norm())
}

/// `I(ρ) = ∫₀^{2π} |det Df(ρe^{iθ})| dθ`.
pub fn ring_jacobian_integral(coeffs: &FourierCoeffs, rho: f64) -> f64 {
    let n_theta = (4 * coeffs.order()).max(16);
    jacobian_ring(coeffs, rho, n_theta).iter().map(|d| d.abs()).sum::<f64>() * TAU / n_theta as f64
}

/// Polynomial extrapolation to `x = 0` through the given points (Neville).
pub fn extrapolate_to_zero(points: &[(f64, f64)]) -> f64 {
    let n = points.len();
    let mut p: Vec<f64> = points.iter().map(|&(_, y)| y).collect();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (points[i].0, points[i + level].0);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

/// Boundary Jacobian integral `∫_{|z|=1} |det Df| |dz| ≥ 2π`, evaluated on
/// rings `ρ = 1 − ε` and extrapolated to `ε = 0`.
pub fn boundary_jacobian_integral(map: &BoundaryMap, eps_list: &[f64], tol: f64) -> Result<VerdictRecord> {
    require_homeomorphism(map, "boundary Jacobian integral")?;
    let eps_min = check_eps(eps_list)?;
    let order = ((36.0 / eps_min).ceil() as usize).next_power_of_two();
    let fine = fourier_from_boundary_sampled(map, order, 4 * order)?;
    let coarse = fourier_from_boundary_sampled(map, order / 2, 2 * order)?;
    boundary_jacobian_from(&fine, Some(&coarse), eps_list, tol)
}

/// Same as [`boundary_jacobian_integral`] for explicit coefficients.
pub fn boundary_jacobian_integral_coeffs(coeffs: &FourierCoeffs, eps_list: &[f64], tol: f64) -> Result<VerdictRecord> {
    check_eps(eps_list)?;
    boundary_jacobian_from(coeffs, None, eps_list, tol)
}

fn check_eps(eps_list: &[f64]) -> Result<f64> {
    if eps_list.len() < 2 || eps_list.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::Domain("need at least two levels ε in (0, 1)".into()));
    }
    Ok(eps_list.iter().cloned().fold(f64::INFINITY, f64::min))
}

fn boundary_jacobian_from(
    fine: &FourierCoeffs,
    coarse: Option<&FourierCoeffs>,
    eps_list: &[f64],
    tol: f64,
) -> Result<VerdictRecord> {
    let mut points = Vec::with_capacity(eps_list.len());
    let mut resolution_gap: f64 = 0.0;
    for &eps in eps_list {
        let value = ring_jacobian_integral(fine, 1.0 - eps);
        if let Some(c) = coarse {
            resolution_gap = resolution_gap.max((value - ring_jacobian_integral(c, 1.0 - eps)).abs());
        }
        points.push((eps, value));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let extrapolated = extrapolate_to_zero(&points);
    // Drop the coarsest level and compare.
    let reduced = extrapolate_to_zero(&points[..points.len() - 1]);
    let indicator = (extrapolated - reduced).abs().max(resolution_gap);
    let record = VerdictRecord::lower_bound("boundary_jacobian", extrapolated, TAU, tol)
        .with_method("richardson")
        .with_resolution(fine.order())
        .with_error_indicator(indicator);
    // Inconclusive when the error estimate could flip the verdict.
    if !extrapolated.is_finite() || !indicator.is_finite() || indicator > record.slack.abs().max(tol) {
        Ok(record.mark_inconclusive())
    } else {
        Ok(record)
    }
}

/// `|f(D_r)| ≤ r² |f(D)|` for a two-sided series, both sides by the Green
/// series (`π Σ n|c_n|² r^{2|n|}` and `r² π Σ n|c_n|²`).
pub fn convexity_check_coeffs(coeffs: &FourierCoeffs, r: Radius, tol: f64) -> VerdictRecord {
    let lhs = area_green_spectral(coeffs, r).value;
    let full: f64 = PI
        * (1..=coeffs.order() as i64)
            .map(|n| n as f64 * (coeffs.get(n).norm_sqr() - coeffs.get(-n).norm_sqr()))
            .sum::<f64>();
    let rhs = r.get() * r.get() * full;
    VerdictRecord::upper_bound("convexity", lhs, rhs, tol)
        .with_r(r.get())
        .with_method("green-spectral")
        .with_resolution(coeffs.order())
}

/// Convexity for a holomorphic power series `c_1 z + c_2 z² + …`.
pub fn holomorphic_convexity_check(series: &[Complex64], r: Radius) -> Result<VerdictRecord> {
    if series.is_empty() {
        return Err(Error::Domain("power series needs at least c_1".into()));
    }
    let terms: Vec<_> = series.iter().enumerate().map(|(k, &c)| (k as i64 + 1, c)).collect();
    let coeffs = FourierCoeffs::from_terms(&terms, "power-series");
    let tol = IDENTITY_TOL;
    Ok(convexity_check_coeffs(&coeffs, r, tol))
}

/// The harmonic shear `z + c z̄²` violates convexity; the record expects it.
pub fn harmonic_shear_convexity(c: Complex64, r: Radius) -> Result<VerdictRecord> {
    if !(c.norm() < 0.5) {
        return Err(Error::Domain(format!("shear parameter |c| = {} must be < 1/2", c.norm())));
    }
    let mut rec = convexity_check_coeffs(&FourierCoeffs::shear(c), r, 0.0).expecting_violation();
    rec.check_name = "convexity_harmonic".into();
    Ok(rec)
}

fn series_eval(series: &[Complex64], z: Complex64) -> Complex64 {
    series.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| (acc + c) * z)
}

/// Argument-principle injectivity test for `f(z) = Σ c_n z^n` on `|z| ≤ ρ`:
/// every target `f(z_k)` from an interior sample must be wound exactly once
/// by `f(ρ e^{iθ})`.
pub fn series_is_injective(series: &[Complex64], rho: f64, n_targets: usize) -> bool {
    let n_curve = 4096;
    let curve: Vec<Complex64> = (0..n_curve)
        .map(|k| series_eval(series, Complex64::from_polar(rho, TAU * k as f64 / n_curve as f64)))
        .collect();
    let side = (n_targets as f64).sqrt().ceil() as usize;
    for i in 0..side {
        for j in 0..side {
            let s = Complex64::new(
                -0.9 + 1.8 * (i as f64 + 0.5) / side as f64,
                -0.9 + 1.8 * (j as f64 + 0.5) / side as f64,
            ) * rho;
            if s.norm() >= 0.95 * rho {
                continue;
            }
            let w = series_eval(series, s);
            let mut turn = 0.0;
            for k in 0..n_curve {
                let a = curve[k] - w;
                let b = curve[(k + 1) % n_curve] - w;
                turn += (b / a).arg();
            }
            if ((turn / TAU).round() as i64) != 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_maps::{
        four_jump_map, identity, make_mobius_boundary, make_rotation, make_step_map, two_jump_map,
    };

    fn rad(r: f64) -> Radius {
        Radius::new(r).unwrap()
    }

    #[test]
    fn shifted_center_on_exact_mobius_series() {
        let a = Complex64::new(0.4, -0.2);
        let coeffs = FourierCoeffs::mobius(a, 1024).unwrap();
        let grid = SchwarzGrid { n_r: 8, n_theta: 16, r_max: 0.9 };
        let rec = schwarz_bound_check_coeffs(&coeffs, a, grid, 1e-8).unwrap();
        assert!(rec.passed && rec.lhs < 0.0);
        // f(0) = −a ≠ 0 without the shift.
        assert!(matches!(schwarz_bound_check_coeffs(&coeffs, Complex64::new(0.0, 0.0), grid, 1e-8), Err(Error::Precondition(_))));
    }

    #[test]
    fn record_slack_conventions() {
        let up = VerdictRecord::upper_bound("x", 1.0, 2.0, 0.0);
        assert_eq!(up.slack, 1.0);
        assert!(up.passed && up.outcome_ok());
        let lo = VerdictRecord::lower_bound("x", 1.0, 2.0, 0.5);
        assert_eq!(lo.slack, -1.0);
        assert!(!lo.passed);
        let eq = VerdictRecord::identity("x", 1.0, 1.0 + 1e-9, 1e-8);
        assert!(eq.passed);
        let v = VerdictRecord::upper_bound("x", 3.0, 2.0, 0.0).expecting_violation();
        assert!(!v.passed && v.outcome_ok());
        let nan = VerdictRecord::upper_bound("x", f64::NAN, 2.0, 1.0);
        assert!(!nan.passed);
    }

    #[test]
    fn identity_contraction_is_tight() {
        let r = rad(0.5);
        let rec = check_area_contraction(&identity(), r, AreaMethod::GreenSpectral, 1e-8).unwrap();
        assert!(rec.passed);
        assert!(rec.slack.abs() < 1e-12);
    }

    #[test]
    fn mobius_contraction_slack() {
        let map = make_mobius_boundary(Complex64::new(0.5, 0.0)).unwrap();
        let r = rad(0.5);
        let rec = check_area_contraction(&map, r, AreaMethod::GreenSpectral, 1e-6 * r.disk_area()).unwrap();
        assert!(rec.passed);
        assert!((rec.slack - 0.09 * PI).abs() < 1e-5, "{}", rec.slack);
    }

    #[test]
    fn step_maps_are_rejected_by_theorem_checks() {
        let r = rad(0.5);
        assert!(matches!(
            check_area_contraction(&two_jump_map(), r, AreaMethod::GreenSpectral, 1e-6),
            Err(Error::Hypothesis(_))
        ));
        assert!(equality_slack(&four_jump_map(), r).is_err());
    }

    #[test]
    fn rotation_slack_vanishes() {
        let s = equality_slack(&make_rotation(1.0), rad(0.7)).unwrap();
        assert!(s.slack.abs() < 1e-8);
        let m = equality_slack(&make_mobius_boundary(Complex64::new(0.3, 0.0)).unwrap(), rad(0.5)).unwrap();
        assert!(m.slack > 0.0);
    }

    #[test]
    fn schwarz_identity_and_extremal_step() {
        let grid = SchwarzGrid { n_r: 16, n_theta: 16, r_max: 0.95 };
        let rec = schwarz_bound_check(&identity(), Complex64::new(0.0, 0.0), grid, 1e-8).unwrap();
        assert!(rec.passed && rec.lhs < 0.0);
        let two = two_jump_map();
        let rec = schwarz_bound_check(&two, Complex64::new(0.0, 0.0), grid, 1e-8).unwrap();
        assert!(rec.passed, "{}", rec.lhs);
        let gap = schwarz_gap(&two, Complex64::new(0.9, 0.0)).unwrap();
        assert!(gap.abs() < 1e-10, "gap = {gap}");
        let four = four_jump_map();
        assert!(schwarz_bound_check(&four, Complex64::new(0.0, 0.0), grid, 1e-8).unwrap().passed);
    }

    #[test]
    fn schwarz_requires_centering() {
        let off = make_step_map(&[0.0, 1.0], &[0.0, 1.0]).unwrap();
        let err = schwarz_bound_check(&off, Complex64::new(0.0, 0.0), SchwarzGrid::default(), 1e-8);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn schwarz_with_center_shift() {
        // The Möbius map vanishes at a, so precomposition recenters it.
        let a = Complex64::new(0.3, 0.1);
        let map = make_mobius_boundary(a).unwrap();
        let coeffs = coefficients_for_radius(&map, 0.5).unwrap();
        let fa = eval_harmonic(&coeffs, a.norm(), a.arg()).unwrap();
        assert!(fa.norm() < 1e-10, "{}", fa.norm());
        let grid = SchwarzGrid { n_r: 8, n_theta: 8, r_max: 0.8 };
        let rec = schwarz_bound_check(&map, a, grid, 1e-8).unwrap();
        assert!(rec.passed);
    }

    #[test]
    fn corollary_identity_and_rotation() {
        let rec = boundary_jacobian_integral(&identity(), &COROLLARY_EPS, COROLLARY_TOL).unwrap();
        assert!((rec.lhs - TAU).abs() < 1e-10 && rec.passed);
        let rec = boundary_jacobian_integral(&make_rotation(2.0), &COROLLARY_EPS, COROLLARY_TOL).unwrap();
        assert!((rec.lhs - TAU).abs() < 1e-10);
        assert!(boundary_jacobian_integral(&two_jump_map(), &COROLLARY_EPS, COROLLARY_TOL).is_err());
        assert!(boundary_jacobian_integral(&identity(), &[0.1], COROLLARY_TOL).is_err());
    }

    #[test]
    fn corollary_mobius_matches_closed_form() {
        // ∫ |f'|² dθ on the unit circle is 2π (1 + a²)/(1 − a²).
        let a = 0.4;
        let coeffs = FourierCoeffs::mobius(Complex64::new(a, 0.0), 512).unwrap();
        let rec = boundary_jacobian_integral_coeffs(&coeffs, &COROLLARY_EPS, COROLLARY_TOL).unwrap();
        let want = TAU * (1.0 + a * a) / (1.0 - a * a);
        assert!((rec.lhs - want).abs() < 1e-3, "{} vs {want}", rec.lhs);
        assert!(rec.passed);
    }

    #[test]
    fn extrapolation_is_exact_for_quadratics() {
        let pts: Vec<_> = [0.04, 0.02, 0.01].iter().map(|&x| (x, 3.0 - 2.0 * x + 5.0 * x * x)).collect();
        assert!((extrapolate_to_zero(&pts) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn convexity_examples() {
        let r = rad(0.5);
        let id = holomorphic_convexity_check(&[Complex64::new(1.0, 0.0)], r).unwrap();
        assert!(id.passed && id.slack.abs() < 1e-15);
        let pert = [Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0)];
        let rec = holomorphic_convexity_check(&pert, r).unwrap();
        assert!((rec.lhs - PI * (0.25 + 0.02 * 0.0625)).abs() < 1e-14);
        assert!(rec.passed);
        let shear = harmonic_shear_convexity(Complex64::new(0.3, 0.0), r).unwrap();
        assert!(!shear.passed && shear.outcome_ok());
        assert!(shear.lhs > shear.rhs);
    }

    #[test]
    fn injectivity_by_winding_number() {
        assert!(series_is_injective(&[Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0)], 0.999, 64));
        // z + z² has a critical point at −1/2 and is not injective on the disk.
        assert!(!series_is_injective(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)], 0.999, 256));
    }
}
