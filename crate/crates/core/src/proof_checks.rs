//! Grid checks of the identities and pointwise inequalities used in the
//! proof of area contraction.
//!
//! Notation: `H(α, β) = sin α + (β − α) cos α − sin β` is the gap between
//! the tangent line of `sin` at `α` and its graph at `β`; `K_r` is the kernel
//! of [`crate::area::kernel_k`]; `Γ` is a nondecreasing function on
//! `[0, 2π]`, sampled on the grid `α_i = 2πi/n` with `n` even so that `π`
//! is a grid point.
//!
//! Discretization: full integrals are `Σ_{i<n} h f(α_i)` (the periodic
//! trapezoid rule; `K_r` vanishes at both ends). Integrals over
//! `[2π − α₀, α₀]` are inclusive grid sums, so every inequality of the
//! chain holds exactly on the grid up to rounding.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::area::{kernel_k, Radius};
use crate::circle_maps::{BoundaryMap, MapKind};
use crate::error::{Error, Result};
use crate::verify::VerdictRecord;

/// Monotonicity slack accepted by [`MonotoneGamma::new`].
pub const GAMMA_MONOTONE_TOL: f64 = 1e-12;
/// Tolerance of the chain inequalities.
pub const CHAIN_TOL: f64 = 1e-10;
/// Default grid size for double sums.
pub const DEFAULT_PROOF_GRID: usize = 512;

/// Samples of a nondecreasing `Γ: [0, 2π] → [0, 2π]` at `α_i = 2πi/n`,
/// `i = 0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneGamma {
    values: Vec<f64>,
}

impl MonotoneGamma {
    /// Validates monotonicity (to [`GAMMA_MONOTONE_TOL`]) and range, then
    /// removes sub-tolerance dips and clamps into `[0, 2π]`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let n = values.len().saturating_sub(1);
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::Domain(format!("Γ needs an even grid size ≥ 2, got {n}")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Malformed("Γ samples must be finite".into()));
        }
        if values.windows(2).any(|w| w[1] < w[0] - GAMMA_MONOTONE_TOL) {
            return Err(Error::Domain("Γ samples must be nondecreasing".into()));
        }
        if values[0] < -GAMMA_MONOTONE_TOL || values[n] > TAU + GAMMA_MONOTONE_TOL {
            return Err(Error::Domain("Γ samples must lie in [0, 2π]".into()));
        }
        let mut cleaned = values;
        let mut running = 0.0f64;
        for v in cleaned.iter_mut() {
            running = running.max(v.clamp(0.0, TAU));
            *v = running;
        }
        Ok(MonotoneGamma { values: cleaned })
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..=n).map(|i| f(grid_alpha(i, n))).collect())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |a| a)
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::from_fn(n, |_| c)
    }

    /// Random Γ with flats and near-jumps: heavy-tailed increments, about a
    /// fifth of them zero, normalized between random endpoint values.
    pub fn random(seed: u64, n: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        let (lo, hi) = (TAU * u.min(v), TAU * u.max(v));
        let inc: Vec<f64> = (0..n)
            .map(|_| {
                if rng.random_bool(0.2) {
                    0.0
                } else {
                    let e: f64 = rng.random();
                    (-e.max(1e-300).ln()).powi(3)
                }
            })
            .collect();
        let total: f64 = inc.iter().sum();
        let mut values = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        values.push(lo);
        for d in &inc {
            acc += d;
            let frac = if total > 0.0 { acc / total } else { 0.0 };
            values.push(lo + (hi - lo) * frac);
        }
        Self::new(values)
    }

    pub fn grid_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// `Γ(π)`.
    pub fn at_pi(&self) -> f64 {
        self.values[self.grid_n() / 2]
    }

    /// `Γ̃(α) = 2π − Γ(2π − α)`.
    pub fn reflect(&self) -> Self {
        let values = self.values.iter().rev().map(|v| TAU - v).collect();
        MonotoneGamma { values }
    }
}

/// `α_i = 2πi/n`.
pub fn grid_alpha(i: usize, n: usize) -> f64 {
    TAU * i as f64 / n as f64
}

/// `α ↦ ξ(α + t) − ξ(t)` on the grid with `n` cells; endpoint values are
/// exactly `0` and `2π`.
pub fn gamma_slice(map: &BoundaryMap, t: f64, n: usize) -> Result<MonotoneGamma> {
    let base = map.eval_xi(t);
    let mut values: Vec<f64> = (0..=n).map(|i| map.eval_xi(t + grid_alpha(i, n)) - base).collect();
    values[0] = 0.0;
    values[n] = TAU;
    MonotoneGamma::new(values)
}

/// `H(α, β) = sin α + (β − α) cos α − sin β`.
pub fn tangent_gap(alpha: f64, beta: f64) -> f64 {
    alpha.sin() + (beta - alpha) * alpha.cos() - beta.sin()
}

/// `∂H/∂β = cos α − cos β`.
pub fn tangent_gap_dbeta(alpha: f64, beta: f64) -> f64 {
    alpha.cos() - beta.cos()
}

fn kh(r: Radius, alpha: f64, beta: f64) -> f64 {
    kernel_k(r, alpha) * tangent_gap(alpha, beta)
}

/// `(sin α_i, cos α_i)` with the index folded into `[0, n/2]` first, so that
/// mirrored grid points `α_i`, `α_{n−i}` see the same rounded argument.
fn grid_sin_cos(i: usize, n: usize) -> (f64, f64) {
    let i = i % n;
    let (k, sign) = if 2 * i > n { (n - i, -1.0) } else { (i, 1.0) };
    let (s, c) = grid_alpha(k, n).sin_cos();
    (sign * s, c)
}

/// `K_r(α_i) H(α_i, α_j)` evaluated from grid indices.
fn grid_kh(r: Radius, i: usize, j: usize, n: usize) -> f64 {
    let (si, ci) = grid_sin_cos(i, n);
    let (sj, _) = grid_sin_cos(j, n);
    let q = r.get() * r.get();
    let d = 1.0 - 2.0 * q * ci + q * q;
    let k = 2.0 * q * (1.0 - q * q) * si / (d * d);
    let step = TAU * (j as f64 - i as f64) / n as f64;
    k * (si + step * ci - sj)
}

const SIGN_RADII: [f64; 3] = [0.3, 0.6, 0.9];

fn grid_record(name: &str, r: Option<f64>, n: usize) -> impl FnOnce(VerdictRecord) -> VerdictRecord {
    let name = name.to_string();
    move |rec| {
        let mut rec = rec.with_method("grid").with_resolution(n);
        rec.check_name = name;
        if let Some(r) = r {
            rec = rec.with_r(r);
        }
        rec
    }
}

/// Min of `f(i, j)` over grid pairs accepted by `keep`, or `+∞` if none.
fn grid_min(n: usize, keep: impl Fn(usize, usize) -> bool + Sync, f: impl Fn(usize, usize) -> f64 + Sync) -> f64 {
    (0..=n)
        .into_par_iter()
        .map(|i| {
            (0..=n)
                .filter(|&j| keep(i, j))
                .map(|j| f(i, j))
                .fold(f64::INFINITY, f64::min)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

fn grid_max(n: usize, f: impl Fn(usize, usize) -> f64 + Sync) -> f64 {
    -grid_min(n, |_, _| true, |i, j| -f(i, j))
}

/// Open triangles where `K_r H` may be negative:
/// `T₁ = {0 < α < π, β > 2π − α}`, `T₂ = {π < α < 2π, β < 2π − α}`,
/// as index masks with boundary cells in the complement.
pub fn in_triangles(i: usize, j: usize, n: usize) -> bool {
    let half = n / 2;
    (0 < i && i < half && j > n - i) || (half < i && i < n && j < n - i)
}

/// Sign structure of `H` and of `K_r H` on grids of `grid_n` cells.
pub fn check_h_sign_structure(grid_n: usize) -> Result<Vec<VerdictRecord>> {
    if grid_n < 64 || !grid_n.is_multiple_of(2) {
        return Err(Error::Domain(format!("grid_n = {grid_n} must be even and at least 64")));
    }
    let n = grid_n;
    let sq = |i: usize| PI * i as f64 / n as f64;
    let band = TAU / n as f64;
    let mut out = Vec::new();

    // (a) H ≥ 0 on [0, π]².
    let min_a = grid_min(n, |_, _| true, |i, j| tangent_gap(sq(i), sq(j)));
    out.push(grid_record("H_nonneg_square", None, n)(VerdictRecord::lower_bound("", min_a, 0.0, 1e-14)));

    // (b) strictly positive off the diagonal band.
    let min_b = grid_min(n, |i, j| (sq(i) - sq(j)).abs() > band, |i, j| tangent_gap(sq(i), sq(j)));
    out.push(grid_record("H_positive_off_diagonal", None, n)(VerdictRecord::lower_bound("", min_b, 1e-14, 0.0)));

    // (c) ∂H/∂β ≥ 0 for 0 ≤ α ≤ π, α ≤ β ≤ 2π − α.
    let min_c = grid_min(
        n,
        |i, j| i <= n / 2 && j >= i && j <= n - i,
        |i, j| tangent_gap_dbeta(grid_alpha(i, n), grid_alpha(j, n)),
    );
    out.push(grid_record("H_monotone_in_beta", None, n)(VerdictRecord::lower_bound("", min_c, 0.0, 1e-14)));

    // H(α, β₁) ≥ H(α, β₂) for β₁ ≤ β₂ ≤ min(α, 2π − α): ∂H/∂β ≤ 0 there.
    let min_e = grid_min(
        n,
        |i, j| j <= i.min(n - i),
        |i, j| -tangent_gap_dbeta(grid_alpha(i, n), grid_alpha(j, n)),
    );
    out.push(grid_record("H_decreasing_below_band", None, n)(VerdictRecord::lower_bound("", min_e, 0.0, 1e-14)));

    for &rv in &SIGN_RADII {
        let r = Radius::new(rv)?;
        let at = |i: usize, j: usize| kh(r, grid_alpha(i, n), grid_alpha(j, n));

        // (d) K_r H ≥ 0 off the triangles.
        let min_d = grid_min(n, |i, j| !in_triangles(i, j, n), at);
        out.push(grid_record("KH_nonneg_off_triangles", Some(rv), n)(VerdictRecord::lower_bound(
            "", min_d, 0.0, 1e-12,
        )));

        // Inside the triangles the product does go negative.
        let min_t = grid_min(n, |i, j| in_triangles(i, j, n), at);
        out.push(grid_record("KH_negative_in_triangles", Some(rv), n)(VerdictRecord::upper_bound(
            "", min_t, 0.0, 0.0,
        )));

        let sym = grid_max(n, |i, j| (at(i, j) - at(n - i, n - j)).abs());
        out.push(grid_record("KH_central_symmetry", Some(rv), n)(VerdictRecord::upper_bound("", sym, 0.0, 1e-12)));
    }
    Ok(out)
}

/// `K_r(α)H(α, β) + K_r(2π − α)H(2π − α, β) = 2K_r(α)H(α, π) ≥ 0` on the
/// full grid.
pub fn check_symsum(r: Radius, grid_n: usize) -> Result<Vec<VerdictRecord>> {
    if grid_n < 2 || !grid_n.is_multiple_of(2) {
        return Err(Error::Domain(format!("grid_n = {grid_n} must be even")));
    }
    let n = grid_n;
    let residual = grid_max(n, |i, j| {
        let lhs = grid_kh(r, i, j, n) + grid_kh(r, n - i, j, n);
        (lhs - 2.0 * grid_kh(r, i, n / 2, n)).abs()
    });
    let rhs_min = (0..=n).map(|i| 2.0 * kh(r, grid_alpha(i, n), PI)).fold(f64::INFINITY, f64::min);
    Ok(vec![
        grid_record("symsum_identity", Some(r.get()), n)(VerdictRecord::upper_bound("", residual, 0.0, 1e-12)),
        grid_record("symsum_rhs_nonneg", Some(r.get()), n)(VerdictRecord::lower_bound("", rhs_min, 0.0, 1e-12)),
    ])
}

fn lift_index(lift: &[f64], idx: usize) -> f64 {
    let m = lift.len();
    lift[idx % m] + TAU * (idx / m) as f64
}

fn require_homeomorphism(map: &BoundaryMap) -> Result<()> {
    if map.kind() != MapKind::Homeomorphism {
        return Err(Error::Hypothesis("proof identity requires a homeomorphism".into()));
    }
    Ok(())
}

fn check_m(m: usize) -> Result<()> {
    if m < 4 {
        return Err(Error::Domain(format!("grid size {m} too small")));
    }
    Ok(())
}

/// Double sum over `(α_i, t_k)` of `f(i, γ_ik)` with `γ_ik = ξ(α_i + t_k) − ξ(t_k)`,
/// times `h²`. Rows are reduced in a fixed order.
fn double_sum(lift: &[f64], f: impl Fn(usize, f64) -> f64 + Sync) -> f64 {
    let m = lift.len();
    let h = TAU / m as f64;
    let rows: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|i| (0..m).map(|k| f(i, lift_index(lift, i + k) - lift[k])).sum())
        .collect();
    rows.iter().sum::<f64>() * h * h
}

/// `|Σ_i Σ_k K_r(α_i)(γ_ik − α_i) cos α_i| h² / (2π)²`; vanishes because
/// `ζ = ξ − id` is periodic.
pub fn cos_identity_residual(map: &BoundaryMap, r: Radius, m: usize) -> Result<f64> {
    require_homeomorphism(map)?;
    check_m(m)?;
    let lift = map.sample_lift(m);
    let kc: Vec<f64> = (0..m)
        .map(|i| {
            let a = grid_alpha(i, m);
            kernel_k(r, a) * a.cos()
        })
        .collect();
    let s = double_sum(&lift, |i, g| kc[i] * (g - grid_alpha(i, m)));
    Ok(s.abs() / (TAU * TAU))
}

/// `|h Σ_k (ζ(α + t_k) − ζ(t_k))|` with `ζ(t) = ξ(t) − t`.
pub fn shift_mean_residual(map: &BoundaryMap, alpha: f64, m: usize) -> Result<f64> {
    check_m(m)?;
    let h = TAU / m as f64;
    let zeta = |t: f64| map.eval_xi(t) - t;
    let s: f64 = (0..m)
        .map(|k| {
            let t = h * k as f64;
            zeta(alpha + t) - zeta(t)
        })
        .sum();
    Ok((s * h).abs())
}

/// Kernel-form double sum in the original variables:
/// `Σ_j Σ_k K_r(s_j − t_k){sin(s_j − t_k) − sin(ξ_j − ξ_k)} h²`.
pub fn ar7_sum(map: &BoundaryMap, r: Radius, m: usize) -> Result<f64> {
    check_m(m)?;
    let lift = map.sample_lift(m);
    let kappa: Vec<f64> = (0..m).map(|i| kernel_k(r, grid_alpha(i, m))).collect();
    let h = TAU / m as f64;
    let rows: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|j| {
            (0..m)
                .map(|k| {
                    let d = (j + m - k) % m;
                    let s = grid_alpha(j, m) - grid_alpha(k, m);
                    kappa[d] * (s.sin() - (lift[j] - lift[k]).sin())
                })
                .sum()
        })
        .collect();
    Ok(rows.iter().sum::<f64>() * h * h)
}

/// The same sum after `α = s − t`:
/// `Σ_i Σ_k K_r(α_i){sin α_i − sin γ_ik} h²`.
pub fn ar17_sum(map: &BoundaryMap, r: Radius, m: usize) -> Result<f64> {
    check_m(m)?;
    let lift = map.sample_lift(m);
    let ks: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let a = grid_alpha(i, m);
            (kernel_k(r, a), a.sin())
        })
        .collect();
    Ok(double_sum(&lift, |i, g| ks[i].0 * (ks[i].1 - g.sin())))
}

/// `Σ_i Σ_k K_r(α_i) H(α_i, γ_ik) h²`.
pub fn ar8_value(map: &BoundaryMap, r: Radius, m: usize) -> Result<f64> {
    check_m(m)?;
    let lift = map.sample_lift(m);
    let kappa: Vec<f64> = (0..m).map(|i| kernel_k(r, grid_alpha(i, m))).collect();
    Ok(double_sum(&lift, |i, g| kappa[i] * tangent_gap(grid_alpha(i, m), g)))
}

/// Discrete kernel area `(h²/4π) Σ_j Σ_k K_r(s_j − t_k) sin(ξ_j − ξ_k)`.
pub fn kernel_area_sum(map: &BoundaryMap, r: Radius, m: usize) -> Result<f64> {
    check_m(m)?;
    let lift = map.sample_lift(m);
    let kappa: Vec<f64> = (0..m).map(|i| kernel_k(r, grid_alpha(i, m))).collect();
    Ok(double_sum(&lift, |i, g| kappa[i] * g.sin()) / (4.0 * PI))
}

/// Nonnegativity of the tangent-gap double integral and its bookkeeping:
/// `value/4π = A_id − A_f + (cos term)/4π` on the grid, and
/// `value/4π ≈ π r² − A_f`.
pub fn check_ar8(map: &BoundaryMap, r: Radius, m: usize) -> Result<Vec<VerdictRecord>> {
    require_homeomorphism(map)?;
    let value = ar8_value(map, r, m)?;
    let area_f = kernel_area_sum(map, r, m)?;
    let area_id = kernel_area_sum(&crate::circle_maps::identity(), r, m)?;
    let cos_term = cos_identity_residual(map, r, m)? * TAU * TAU;
    let rv = r.get();
    let scaled = value / (4.0 * PI);
    let tol = 1e-8 * r.disk_area();
    Ok(vec![
        grid_record("ar8_nonneg", Some(rv), m)(VerdictRecord::lower_bound("", value, 0.0, tol)),
        grid_record("ar8_bookkeeping", Some(rv), m)(VerdictRecord::identity(
            "",
            scaled,
            area_id - area_f,
            cos_term / (4.0 * PI) + 1e-10,
        )),
        grid_record("ar8_disk_area", Some(rv), m)(VerdictRecord::identity(
            "",
            scaled,
            r.disk_area() - area_f,
            1e-6,
        )),
    ])
}

/// Outcome of the one-dimensional integral `∫ K_r(α) H(α, Γ(α)) dα`.
#[derive(Clone, Debug, PartialEq)]
pub struct Step3 {
    pub value: f64,
    pub alpha0: f64,
    /// Whether `Γ` was replaced by its reflection because `Γ(π) > π`.
    pub reflected: bool,
}

fn normalize(g: &MonotoneGamma) -> (MonotoneGamma, bool) {
    if g.at_pi() > PI {
        (g.reflect(), true)
    } else {
        (g.clone(), false)
    }
}

/// Largest grid index `i ≥ n/2` with `α_i + Γ(α_i) ≤ 2π`; `n/2` if none.
fn alpha0_index(g: &MonotoneGamma) -> usize {
    let n = g.grid_n();
    (n / 2..=n).rev().find(|&i| grid_alpha(i, n) + g.at(i) <= TAU).unwrap_or(n / 2)
}

fn step3_sum(g: &MonotoneGamma, r: Radius) -> f64 {
    let n = g.grid_n();
    let h = TAU / n as f64;
    (0..n).map(|i| kh(r, grid_alpha(i, n), g.at(i))).sum::<f64>() * h
}

/// `∫₀^{2π} K_r(α) H(α, Γ(α)) dα` and `α₀ = sup{α ∈ [π, 2π] : α + Γ(α) ≤ 2π}`,
/// after reflecting `Γ` if `Γ(π) > π`.
pub fn step3_integral(g: &MonotoneGamma, r: Radius) -> Step3 {
    let (g, reflected) = normalize(g);
    let i0 = alpha0_index(&g);
    Step3 { value: step3_sum(&g, r), alpha0: grid_alpha(i0, g.grid_n()), reflected }
}

/// The four quantities of the chain
/// `q0 = ∫₀^{2π} K H(α, Γ)`, `q1 = ∫_{2π−α₀}^{α₀} K H(α, Γ)`,
/// `q2 = ∫_{2π−α₀}^{α₀} K H(α, Γ(π))`, `q3 = 2∫_π^{α₀} K H(α, π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub q: [f64; 4],
    pub alpha0: f64,
    /// `min_i K(α_i)[H(α_i, Γ(α_i)) − H(α_i, Γ(π))]` over `[2π − α₀, α₀]`.
    pub pointwise_min: f64,
}

pub fn punchline_chain(g: &MonotoneGamma, r: Radius) -> Chain {
    let (g, _) = normalize(g);
    let n = g.grid_n();
    let h = TAU / n as f64;
    let i0 = alpha0_index(&g);
    let gp = g.at_pi();
    let a = |i: usize| grid_alpha(i, n);
    let q0 = step3_sum(&g, r);
    let q1 = (n - i0..=i0).map(|i| kh(r, a(i), g.at(i))).sum::<f64>() * h;
    let q2 = (n - i0..=i0).map(|i| kh(r, a(i), gp)).sum::<f64>() * h;
    let q3 = 2.0 * (n / 2..=i0).map(|i| kh(r, a(i), PI)).sum::<f64>() * h;
    let pointwise_min = (n - i0..=i0)
        .map(|i| kh(r, a(i), g.at(i)) - kh(r, a(i), gp))
        .fold(f64::INFINITY, f64::min);
    Chain { q: [q0, q1, q2, q3], alpha0: a(i0), pointwise_min }
}

/// `q0 ≥ q1 ≥ q2 = q3 ≥ 0` plus the pointwise comparison behind `q1 ≥ q2`.
pub fn check_punchline_chain(g: &MonotoneGamma, r: Radius) -> Vec<VerdictRecord> {
    let c = punchline_chain(g, r);
    let n = g.grid_n();
    let rv = Some(r.get());
    let [q0, q1, q2, q3] = c.q;
    vec![
        grid_record("chain_full_vs_window", rv, n)(VerdictRecord::lower_bound("", q0, q1, CHAIN_TOL)),
        grid_record("chain_window_vs_frozen", rv, n)(VerdictRecord::lower_bound("", q1, q2, CHAIN_TOL)),
        grid_record("chain_pointwise_compare", rv, n)(VerdictRecord::lower_bound("", c.pointwise_min, 0.0, CHAIN_TOL)),
        grid_record("chain_symmetry", rv, n)(VerdictRecord::identity("", q2, q3, CHAIN_TOL)),
        grid_record("chain_final_nonneg", rv, n)(VerdictRecord::lower_bound("", q3, 0.0, CHAIN_TOL)),
    ]
}

/// `K_r(α) H(α, π) > 0` on the grid, away from `α ∈ {0, π, 2π}`.
pub fn check_equality_case_positivity(grid_n: usize) -> Result<Vec<VerdictRecord>> {
    if grid_n < 4 || !grid_n.is_multiple_of(2) {
        return Err(Error::Domain(format!("grid_n = {grid_n} must be even")));
    }
    let n = grid_n;
    SIGN_RADII
        .iter()
        .map(|&rv| {
            let r = Radius::new(rv)?;
            let min = (1..n)
                .filter(|&i| i != n / 2)
                .map(|i| kh(r, grid_alpha(i, n), PI))
                .fold(f64::INFINITY, f64::min);
            Ok(grid_record("KH_pi_strictly_positive", Some(rv), n)(VerdictRecord::lower_bound(
                "", min, 1e-12, 0.0,
            )))
        })
        .collect()
}

/// Batch parameters for [`run_proof_suite`].
#[derive(Clone, Debug)]
pub struct ProofSuiteConfig {
    pub sign_grid: usize,
    pub m: usize,
    pub gamma_grid: usize,
    pub n_gamma: usize,
    pub n_maps: usize,
    pub seed: u64,
}

impl Default for ProofSuiteConfig {
    fn default() -> Self {
        ProofSuiteConfig { sign_grid: 256, m: DEFAULT_PROOF_GRID, gamma_grid: 512, n_gamma: 50, n_maps: 4, seed: 0 }
    }
}

/// Every check of this module as one batch at radius `r`.
pub fn run_proof_suite(r: Radius, cfg: &ProofSuiteConfig) -> Result<Vec<VerdictRecord>> {
    let rv = r.get();
    let mut out = check_h_sign_structure(cfg.sign_grid)?;
    out.extend(check_symsum(r, cfg.sign_grid)?);
    out.extend(check_equality_case_positivity(cfg.sign_grid)?);

    for k in 0..cfg.n_maps as u64 {
        let seed = cfg.seed + k;
        let map = crate::circle_maps::make_random_homeomorphism(seed, 16, 0.5)?;
        let id = format!("random-{seed}");
        let tag = |rec: VerdictRecord| rec.with_map(&id, "random", &format!("seed={seed};n_knots=16;roughness=0.5"));
        let res = cos_identity_residual(&map, r, cfg.m)?;
        out.push(tag(grid_record("cos_identity", Some(rv), cfg.m)(VerdictRecord::upper_bound("", res, 0.0, 1e-8))));
        let shift = shift_mean_residual(&map, grid_alpha(cfg.m / 3, cfg.m), cfg.m)?;
        out.push(tag(grid_record("shift_mean", None, cfg.m)(VerdictRecord::upper_bound("", shift, 0.0, 1e-10))));
        let (a7, a17) = (ar7_sum(&map, r, cfg.m)?, ar17_sum(&map, r, cfg.m)?);
        out.push(tag(grid_record("change_of_variables", Some(rv), cfg.m)(VerdictRecord::identity("", a17, a7, 1e-10))));
        out.extend(check_ar8(&map, r, cfg.m)?.into_iter().map(tag));
    }

    let n = cfg.gamma_grid;
    let mut gammas = vec![
        ("gamma-identity".to_string(), MonotoneGamma::identity(n)?),
        ("gamma-zero".to_string(), MonotoneGamma::constant(n, 0.0)?),
        ("gamma-full".to_string(), MonotoneGamma::constant(n, TAU)?),
        ("gamma-min-pi".to_string(), MonotoneGamma::from_fn(n, |a| a.min(PI))?),
    ];
    for k in 0..cfg.n_gamma as u64 {
        gammas.push((format!("gamma-random-{}", cfg.seed + k), MonotoneGamma::random(cfg.seed + k, n)?));
    }
    for (id, g) in &gammas {
        let tag = |rec: VerdictRecord| rec.with_map(id, "gamma", "");
        let s = step3_integral(g, r);
        out.push(tag(grid_record("step3_nonneg", Some(rv), n)(VerdictRecord::lower_bound("", s.value, 0.0, 1e-8))));
        let reflected = step3_integral(&g.reflect(), r);
        out.push(tag(grid_record("step3_reflection", Some(rv), n)(VerdictRecord::identity(
            "",
            reflected.value,
            s.value,
            1e-10,
        ))));
        out.extend(check_punchline_chain(g, r).into_iter().map(tag));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle_maps::{identity, make_mobius_boundary, make_random_homeomorphism, make_rotation, two_jump_map};
    use num_complex::Complex64;

    fn rad(r: f64) -> Radius {
        Radius::new(r).unwrap()
    }

    #[test]
    fn tangent_gap_values() {
        assert_eq!(tangent_gap(1.234, 1.234), 0.0);
        assert!((tangent_gap(0.0, PI) - PI).abs() < 1e-15);
        assert!((tangent_gap(PI / 2.0, 1.5 * PI) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn tangent_gap_derivative_matches_difference_quotient() {
        let h = 1e-6;
        for &(a, b) in &[(0.3, 2.0), (4.0, 1.0), (5.5, 6.1), (1.0, 1.0)] {
            let fd = (tangent_gap(a, b + h) - tangent_gap(a, b - h)) / (2.0 * h);
            assert!((fd - tangent_gap_dbeta(a, b)).abs() < 1e-8);
        }
    }

    #[test]
    fn slices_of_identity_and_rotation() {
        for map in [identity(), make_rotation(0.7)] {
            let g = gamma_slice(&map, 1.1, 64).unwrap();
            for i in 0..=64 {
                assert!((g.at(i) - grid_alpha(i, 64)).abs() < 1e-14);
            }
        }
        let g = gamma_slice(&make_random_homeomorphism(3, 16, 0.8).unwrap(), 2.5, 64).unwrap();
        assert_eq!(g.at(0), 0.0);
        assert_eq!(g.at(64), TAU);
        let s = gamma_slice(&two_jump_map(), 0.3, 64).unwrap();
        assert!(s.values().windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn gamma_validation() {
        assert!(MonotoneGamma::new(vec![0.0, 1.0]).is_err());
        assert!(MonotoneGamma::new(vec![0.0, 2.0, 1.0]).is_err());
        assert!(MonotoneGamma::new(vec![0.0, 1.0, 7.0]).is_err());
        let g = MonotoneGamma::new(vec![0.0, 1.0, 1.0 - 1e-14]).unwrap();
        assert_eq!(g.at(2), 1.0);
        let g = MonotoneGamma::random(4, 32).unwrap();
        let back = g.reflect().reflect();
        assert!(back.values().iter().zip(g.values()).all(|(a, b)| (a - b).abs() < 1e-14));
    }

    #[test]
    fn sign_structure_holds() {
        let recs = check_h_sign_structure(256).unwrap();
        for rec in &recs {
            assert!(rec.passed, "{} r={:?}: lhs {}", rec.check_name, rec.r, rec.lhs);
        }
        assert!(recs.iter().any(|r| r.check_name == "KH_negative_in_triangles" && r.lhs < 0.0));
        assert!(check_h_sign_structure(32).is_err());
    }

    #[test]
    fn spec_point_in_first_triangle_is_positive_but_others_are_negative() {
        let r = rad(0.6);
        assert!(kh(r, PI / 2.0, 1.75 * PI) > 0.0);
        assert!(kh(r, 0.9 * PI, 1.95 * PI) < 0.0);
    }

    #[test]
    fn symsum_identity() {
        for rec in check_symsum(rad(0.7), 128).unwrap() {
            assert!(rec.passed, "{}: {}", rec.check_name, rec.lhs);
        }
        let r = rad(0.7);
        let lhs = kh(r, 1.0, PI) + kh(r, TAU - 1.0, PI);
        assert!((lhs - 2.0 * kh(r, 1.0, PI)).abs() < 1e-13);
        assert!(kernel_k(r, PI).abs() < 1e-15);
    }

    #[test]
    fn cos_identity_vanishes() {
        assert!(cos_identity_residual(&identity(), rad(0.6), 256).unwrap() < 1e-15);
        let map = make_random_homeomorphism(5, 16, 0.5).unwrap();
        assert!(cos_identity_residual(&map, rad(0.6), 1024).unwrap() < 1e-8);
        for i in [1usize, 100, 517] {
            assert!(shift_mean_residual(&map, grid_alpha(i, 1024), 1024).unwrap() < 1e-10);
        }
        assert!(cos_identity_residual(&two_jump_map(), rad(0.6), 64).is_err());
    }

    #[test]
    fn ar7_equals_ar17() {
        let map = make_random_homeomorphism(11, 24, 0.7).unwrap();
        let r = rad(0.55);
        let (a, b) = (ar7_sum(&map, r, 256).unwrap(), ar17_sum(&map, r, 256).unwrap());
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn ar8_identity_random_and_mobius() {
        let r = rad(0.5);
        assert!(ar8_value(&identity(), r, 256).unwrap().abs() < 1e-10);
        let map = make_random_homeomorphism(9, 16, 0.5).unwrap();
        for rec in check_ar8(&map, r, 512).unwrap() {
            assert!(rec.passed, "{}: {} vs {}", rec.check_name, rec.lhs, rec.rhs);
        }
        let mob = make_mobius_boundary(Complex64::new(0.5, 0.0)).unwrap();
        let v = ar8_value(&mob, r, 512).unwrap() / (4.0 * PI);
        assert!((v - (0.25 - 0.16) * PI).abs() < 1e-5, "{v}");
    }

    #[test]
    fn step3_examples() {
        let r = rad(0.6);
        let s = step3_integral(&MonotoneGamma::identity(512).unwrap(), r);
        assert!(s.value.abs() < 1e-12);
        assert_eq!(s.alpha0, PI);
        let z = step3_integral(&MonotoneGamma::constant(512, 0.0).unwrap(), r);
        assert!(z.value > 0.0);
        assert_eq!(z.alpha0, TAU);
        // The integrand has a kink at the period boundary, so the grid sum
        // converges at second order; compare on a finer grid.
        let z = step3_integral(&MonotoneGamma::constant(8192, 0.0).unwrap(), r);
        // Independent oracle: ∫ K_r(α)(sin α − α cos α) dα by Simpson's rule.
        let n = 20000;
        let h = TAU / n as f64;
        let f = |a: f64| kernel_k(r, a) * (a.sin() - a * a.cos());
        let simpson: f64 = (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                w * f(i as f64 * h)
            })
            .sum::<f64>()
            * h
            / 3.0;
        assert!((z.value - simpson).abs() < 2e-6, "{} vs {simpson}", z.value);
    }

    #[test]
    fn step3_reflection_invariance() {
        let r = rad(0.9);
        for seed in 0..20 {
            let g = MonotoneGamma::random(seed, 512).unwrap();
            let a = step3_integral(&g, r).value;
            let b = step3_integral(&g.reflect(), r).value;
            assert!((a - b).abs() < 1e-10);
            assert!(a >= -1e-8);
        }
    }

    #[test]
    fn chain_examples() {
        let r = rad(0.6);
        let id = punchline_chain(&MonotoneGamma::identity(512).unwrap(), r);
        assert!(id.q.iter().all(|q| q.abs() < 1e-12), "{:?}", id.q);
        for g in [
            MonotoneGamma::from_fn(512, |a| a.min(PI)).unwrap(),
            MonotoneGamma::random(17, 512).unwrap(),
            MonotoneGamma::constant(512, TAU).unwrap(),
        ] {
            for rec in check_punchline_chain(&g, r) {
                assert!(rec.passed, "{}: {} vs {}", rec.check_name, rec.lhs, rec.rhs);
            }
        }
    }

    #[test]
    fn equality_case_and_identity_integrand() {
        for rec in check_equality_case_positivity(512).unwrap() {
            assert!(rec.passed, "{}", rec.lhs);
        }
        let r = rad(0.3);
        let g = MonotoneGamma::identity(64).unwrap();
        for i in 0..=64 {
            assert_eq!(kh(r, grid_alpha(i, 64), g.at(i)), 0.0);
        }
    }

    #[test]
    fn suite_passes() {
        let cfg = ProofSuiteConfig { sign_grid: 64, m: 128, gamma_grid: 128, n_gamma: 5, n_maps: 1, seed: 1 };
        for rec in run_proof_suite(rad(0.6), &cfg).unwrap() {
            assert!(rec.passed, "{} {}: {} vs {}", rec.check_name, rec.map_id, rec.lhs, rec.rhs);
        }
    }
}
