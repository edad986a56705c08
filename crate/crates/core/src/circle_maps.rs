//! Boundary correspondences of the unit circle.
//!
//! A [`BoundaryMap`] stores the lift `ξ: ℝ → ℝ` of a degree-one,
//! nondecreasing circle map as monotone piecewise-linear knots over one
//! period, together with the unimodular constant `ω` that multiplies the
//! Poisson integral. The lift is extended to the whole line by
//! `ξ(t + 2π) = ξ(t) + 2π`; the knot after the last one is implicitly
//! `(t₀ + 2π, ξ₀ + 2π)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft;
use crate::proof_checks::MonotoneGamma;

/// Tolerance on `|ω| = 1` and on the period closure of the lift.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// Knot count used by [`make_mobius_boundary`].
pub const DEFAULT_MOBIUS_KNOTS: usize = 4096;

/// Knot count of the uniform grid produced by [`BoundaryMap::mollify`].
pub const DEFAULT_MOLLIFIED_KNOTS: usize = 16384;

/// Default mollifier width.
pub const DEFAULT_MOLLIFIER_WIDTH: f64 = TAU / 64.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapKind {
    /// Strictly increasing, continuous lift.
    Homeomorphism,
    /// Nondecreasing lift that may have flats and jumps.
    NondecreasingStep,
}

impl MapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::Homeomorphism => "Homeomorphism",
            MapKind::NondecreasingStep => "NondecreasingStep",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BoundaryMapJson", into = "BoundaryMapJson")]
pub struct BoundaryMap {
    knots: Vec<(f64, f64)>,
    omega: Complex64,
    kind: MapKind,
}

/// Wire form: `{"kind", "omega_re", "omega_im", "knots": [[t, xi], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundaryMapJson {
    pub kind: MapKind,
    pub omega_re: f64,
    pub omega_im: f64,
    pub knots: Vec<[f64; 2]>,
}

impl BoundaryMapJson {
    /// Parses the wire form without validating the knots.
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl TryFrom<BoundaryMapJson> for BoundaryMap {
    type Error = Error;

    fn try_from(j: BoundaryMapJson) -> Result<Self> {
        BoundaryMap::new(
            j.knots.into_iter().map(|[t, x]| (t, x)).collect(),
            Complex64::new(j.omega_re, j.omega_im),
            j.kind,
        )
    }
}

impl From<BoundaryMap> for BoundaryMapJson {
    fn from(m: BoundaryMap) -> Self {
        BoundaryMapJson {
            kind: m.kind,
            omega_re: m.omega.re,
            omega_im: m.omega.im,
            knots: m.knots.into_iter().map(|(t, x)| [t, x]).collect(),
        }
    }
}

impl BoundaryMap {
    /// Validates and builds a map. Knot angles must lie in `[0, 2π)`.
    ///
    /// For `Homeomorphism` the knot angles and lift values must be strictly
    /// increasing and the last lift value must stay strictly below
    /// `ξ₀ + 2π`. For `NondecreasingStep` a knot angle may repeat once to
    /// encode a jump, and lift values only need to be nondecreasing.
    pub fn new(knots: Vec<(f64, f64)>, omega: Complex64, kind: MapKind) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::Malformed("knot list is empty".into()));
        }
        if !omega.re.is_finite() || !omega.im.is_finite() || (omega.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::Malformed(format!("|omega| = {} is not 1", omega.norm())));
        }
        for (j, &(t, x)) in knots.iter().enumerate() {
            if !t.is_finite() || !x.is_finite() {
                return Err(Error::Malformed(format!("knot {j} is not finite")));
            }
            if !(0.0..TAU).contains(&t) {
                return Err(Error::Malformed(format!("knot angle {t} at {j} outside [0, 2π)")));
            }
        }
        let strict = kind == MapKind::Homeomorphism;
        for (j, w) in knots.windows(2).enumerate() {
            let ((t0, x0), (t1, x1)) = (w[0], w[1]);
            if t1 < t0 || (strict && t1 == t0) {
                return Err(Error::Malformed(format!("knot angles not increasing at {}", j + 1)));
            }
            if x1 < x0 || (strict && x1 == x0) {
                return Err(Error::Malformed(format!("lift not monotone at knot {}", j + 1)));
            }
            if t1 == t0 && j > 0 && knots[j - 1].0 == t0 {
                return Err(Error::Malformed(format!("angle {t0} repeated more than twice")));
            }
        }
        let (_, first) = knots[0];
        let (_, last) = knots[knots.len() - 1];
        let closure = first + TAU;
        if last > closure + UNIMODULAR_TOL || (strict && knots.len() > 1 && last >= closure) {
            return Err(Error::Malformed(format!(
                "lift rises by more than one period ({} over 2π)",
                last - first
            )));
        }
        Ok(BoundaryMap { knots, omega, kind })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn with_omega(&self, omega: Complex64) -> Result<Self> {
        BoundaryMap::new(self.knots.clone(), omega, self.kind)
    }

    /// Continuous lift value at any real `t`.
    pub fn eval_xi(&self, t: f64) -> f64 {
        let mut turns = (t / TAU).floor();
        let mut tau = t - turns * TAU;
        if tau >= TAU {
            tau -= TAU;
            turns += 1.0;
        } else if tau < 0.0 {
            tau += TAU;
            turns -= 1.0;
        }
        self.eval_reduced(tau) + turns * TAU
    }

    /// Lift value for `tau ∈ [0, 2π)`.
    fn eval_reduced(&self, tau: f64) -> f64 {
        let n = self.knots.len();
        let idx = self.knots.partition_point(|k| k.0 <= tau);
        let (a, b) = if idx == 0 {
            let (tl, xl) = self.knots[n - 1];
            ((tl - TAU, xl - TAU), self.knots[0])
        } else if idx == n {
            let (t0, x0) = self.knots[0];
            (self.knots[n - 1], (t0 + TAU, x0 + TAU))
        } else {
            (self.knots[idx - 1], self.knots[idx])
        };
        let span = b.0 - a.0;
        if span <= 0.0 {
            return a.1;
        }
        let w = ((tau - a.0) / span).clamp(0.0, 1.0);
        a.1 + w * (b.1 - a.1)
    }

    /// Boundary value `ω e^{iξ(t)}`.
    pub fn boundary_value(&self, t: f64) -> Complex64 {
        self.omega * Complex64::cis(self.eval_xi(t))
    }

    /// Lift samples on the uniform grid `t_k = 2πk/m`, `k = 0..m`.
    pub fn sample_lift(&self, m: usize) -> Vec<f64> {
        (0..m).map(|k| self.eval_xi(TAU * k as f64 / m as f64)).collect()
    }

    /// Sup over a uniform grid of `|ξ(t) − t − c|`, minimized over the
    /// constant `c`. Zero exactly for rotations.
    pub fn deviation_from_rotation(&self, m: usize) -> f64 {
        let zeta: Vec<f64> = self
            .sample_lift(m)
            .iter()
            .enumerate()
            .map(|(k, x)| x - TAU * k as f64 / m as f64)
            .collect();
        let lo = zeta.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = zeta.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (hi - lo)
    }

    /// Convolves the lift with a periodic Gaussian whose standard deviation
    /// is `width / 4`, sampled on a uniform grid of `n_out` knots.
    ///
    /// The discrete convolution has positive weights, so the result is again
    /// monotone, and strictly so when the input is.
    pub fn mollify(&self, width: f64, n_out: usize) -> Result<BoundaryMap> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::Domain(format!("mollifier width {width} must be positive")));
        }
        if n_out < 8 {
            return Err(Error::Domain("mollified grid needs at least 8 knots".into()));
        }
        let h = TAU / n_out as f64;
        let sigma = width / 4.0;
        let zeta: Vec<Complex64> = (0..n_out)
            .map(|k| {
                let t = k as f64 * h;
                Complex64::new(self.eval_xi(t) - t, 0.0)
            })
            .collect();
        // Wrapped Gaussian: sum over images until they underflow.
        let images = (1 + (6.0 * sigma / TAU).ceil() as i64).max(1);
        let mut weights: Vec<Complex64> = (0..n_out)
            .map(|k| {
                let d = if k <= n_out / 2 { k as f64 * h } else { (k as f64 - n_out as f64) * h };
                let w: f64 = (-images..=images)
                    .map(|p| {
                        let u = d + p as f64 * TAU;
                        (-0.5 * (u / sigma).powi(2)).exp()
                    })
                    .sum();
                Complex64::new(w, 0.0)
            })
            .collect();
        let total: f64 = weights.iter().map(|w| w.re).sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let smooth = fft::circular_convolution(&weights, &zeta);
        let knots = smooth
            .iter()
            .enumerate()
            .map(|(k, z)| (k as f64 * h, k as f64 * h + z.re))
            .collect();
        BoundaryMap::new(knots, self.omega, self.kind)
    }

    /// Reduction of an orientation-reversing boundary map to the
    /// orientation-preserving map of `f(z̄)`.
    ///
    /// `knots` carry a nonincreasing lift with total drop at most `2π`
    /// (degree −1). The result has lift `t ↦ ξ(−t)` and the same `ω`.
    pub fn conjugate_reversed(knots: &[(f64, f64)], omega: Complex64, kind: MapKind) -> Result<BoundaryMap> {
        if knots.is_empty() {
            return Err(Error::Malformed("knot list is empty".into()));
        }
        if knots.windows(2).any(|w| w[1].1 > w[0].1) {
            return Err(Error::Malformed("reversed map must have a nonincreasing lift".into()));
        }
        // t ↦ 2π − t, except t = 0 which stays at the start of the period
        // and drops one turn.
        let mut flipped: Vec<(f64, f64)> = knots
            .iter()
            .map(|&(t, x)| if t == 0.0 { (0.0, x - TAU) } else { (TAU - t, x) })
            .collect();
        flipped.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        BoundaryMap::new(flipped, omega, kind)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// The identity boundary correspondence, `ω = 1`.
pub fn identity() -> BoundaryMap {
    make_rotation(0.0)
}

/// `ξ(t) = t` with `ω = e^{iφ₀}`.
pub fn make_rotation(phi0: f64) -> BoundaryMap {
    BoundaryMap {
        knots: vec![(0.0, 0.0)],
        omega: Complex64::cis(phi0),
        kind: MapKind::Homeomorphism,
    }
}

/// Boundary correspondence of the disk automorphism `z ↦ (z − a)/(1 − āz)`.
pub fn make_mobius_boundary(a: Complex64) -> Result<BoundaryMap> {
    make_mobius_boundary_with_knots(a, DEFAULT_MOBIUS_KNOTS)
}

pub fn make_mobius_boundary_with_knots(a: Complex64, n_knots: usize) -> Result<BoundaryMap> {
    if !(a.norm() < 1.0) {
        return Err(Error::Domain(format!("Möbius parameter |a| = {} must be < 1", a.norm())));
    }
    if n_knots < 4 {
        return Err(Error::Domain("Möbius boundary needs at least 4 knots".into()));
    }
    let raw = |t: f64| {
        let e = Complex64::cis(t);
        ((e - a) / (Complex64::new(1.0, 0.0) - a.conj() * e)).arg()
    };
    let mut knots = Vec::with_capacity(n_knots);
    let mut prev_raw = raw(0.0);
    let mut lift = prev_raw;
    knots.push((0.0, lift));
    for k in 1..n_knots {
        let t = TAU * k as f64 / n_knots as f64;
        let cur = raw(t);
        lift += (cur - prev_raw).rem_euclid(TAU);
        prev_raw = cur;
        knots.push((t, lift));
    }
    BoundaryMap::new(knots, Complex64::new(1.0, 0.0), MapKind::Homeomorphism)
}

fn increments_to_lift(increments: &[f64], total: f64) -> Vec<f64> {
    let sum: f64 = increments.iter().sum();
    let mut acc = 0.0;
    increments
        .iter()
        .map(|d| {
            let x = total * acc / sum;
            acc += d;
            x
        })
        .collect()
}

fn draw_increments(rng: &mut ChaCha8Rng, n: usize, roughness: f64) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let g: f64 = StandardNormal.sample(rng);
            (roughness * g).exp()
        })
        .collect()
}

/// Random strictly increasing lift on `n_knots` uniform knots, deterministic
/// in `seed`. Increments are `exp(roughness · g)` with `g` standard normal,
/// normalized to a total rise of `2π`; `ω` is uniform on the circle.
pub fn make_random_homeomorphism(seed: u64, n_knots: usize, roughness: f64) -> Result<BoundaryMap> {
    if n_knots < 4 {
        return Err(Error::Domain(format!("n_knots = {n_knots} must be at least 4")));
    }
    if !(roughness >= 0.0 && roughness.is_finite()) {
        return Err(Error::Domain(format!("roughness {roughness} must be nonnegative")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inc = draw_increments(&mut rng, n_knots, roughness);
    let phase: f64 = rng.random_range(0.0..TAU);
    let lift = increments_to_lift(&inc, TAU);
    let knots = lift
        .into_iter()
        .enumerate()
        .map(|(j, x)| (TAU * j as f64 / n_knots as f64, x))
        .collect();
    BoundaryMap::new(knots, Complex64::cis(phase), MapKind::Homeomorphism)
}

/// Like [`make_random_homeomorphism`] but with `ξ(t + π) = ξ(t) + π`, so
/// the harmonic extension is odd and `f(0) = 0`.
pub fn make_symmetric_random_homeomorphism(seed: u64, n_knots: usize, roughness: f64) -> Result<BoundaryMap> {
    if n_knots < 4 || !n_knots.is_multiple_of(2) {
        return Err(Error::Domain(format!("n_knots = {n_knots} must be even and at least 4")));
    }
    if !(roughness >= 0.0 && roughness.is_finite()) {
        return Err(Error::Domain(format!("roughness {roughness} must be nonnegative")));
    }
    let half = n_knots / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inc = draw_increments(&mut rng, half, roughness);
    let phase: f64 = rng.random_range(0.0..TAU);
    let lift = increments_to_lift(&inc, PI);
    let knots = (0..n_knots)
        .map(|j| {
            let x = if j < half { lift[j] } else { lift[j - half] + PI };
            (TAU * j as f64 / n_knots as f64, x)
        })
        .collect();
    BoundaryMap::new(knots, Complex64::cis(phase), MapKind::Homeomorphism)
}

/// Piecewise-constant lift: `ξ = values[k]` on `[jump_points[k], jump_points[k+1])`.
///
/// The final flat wraps around to `values[0] + 2π` at `jump_points[0] + 2π`.
pub fn make_step_map(jump_points: &[f64], values: &[f64]) -> Result<BoundaryMap> {
    if jump_points.is_empty() || jump_points.len() != values.len() {
        return Err(Error::Domain(format!(
            "{} jump points but {} values",
            jump_points.len(),
            values.len()
        )));
    }
    if jump_points.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("jump points must be strictly increasing".into()));
    }
    if values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain("step values must be nondecreasing".into()));
    }
    let first = values[0];
    let last = values[values.len() - 1];
    if last > first + TAU {
        return Err(Error::Domain("step values rise by more than 2π".into()));
    }
    let mut knots = Vec::with_capacity(2 * values.len());
    let mut before = last - TAU;
    for (&p, &v) in jump_points.iter().zip(values) {
        knots.push((p, before));
        knots.push((p, v));
        before = v;
    }
    BoundaryMap::new(knots, Complex64::new(1.0, 0.0), MapKind::NondecreasingStep)
}

/// Two-value step map: `+1` on the right half circle, `−1` on the left.
/// Its harmonic extension is `(4/π) arctan` on the real axis, the extremal
/// profile for the harmonic Schwarz bound.
pub fn two_jump_map() -> BoundaryMap {
    make_step_map(&[PI / 2.0, 3.0 * PI / 2.0], &[PI, TAU]).expect("static step data is valid")
}

/// Four quarter arcs sent to `1, i, −1, −i`.
pub fn four_jump_map() -> BoundaryMap {
    make_step_map(
        &[PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0],
        &[0.0, PI / 2.0, PI, 3.0 * PI / 2.0],
    )
    .expect("static step data is valid")
}

/// `α ↦ 2π − g(2π − α)`; an involution.
pub fn reflect_gamma(g: &MonotoneGamma) -> MonotoneGamma {
    g.reflect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_rotation_eval() {
        let id = identity();
        assert_eq!(id.eval_xi(1.3), 1.3);
        assert!((id.eval_xi(1.3 + TAU) - (1.3 + TAU)).abs() < 1e-15);
        let rot = make_rotation(PI / 2.0);
        // ξ is unchanged by a rotation; the rotation lives in ω.
        assert_eq!(rot.eval_xi(0.0), 0.0);
        assert!((rot.boundary_value(0.0) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let half = make_rotation(PI);
        assert!((half.omega() + Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mobius_fixed_points() {
        let m = make_mobius_boundary(Complex64::new(0.5, 0.0)).unwrap();
        assert!(m.eval_xi(0.0).abs() < 1e-15);
        assert!((m.eval_xi(PI) - PI).abs() < 1e-12);
        let z = make_mobius_boundary(Complex64::new(0.0, 0.0)).unwrap();
        for k in 0..50 {
            let t = 0.1257 * k as f64;
            assert!((z.eval_xi(t) - t).abs() < 1e-12);
        }
        assert!(matches!(make_mobius_boundary(Complex64::new(1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn mobius_inverse_composition_is_identity() {
        let a = Complex64::new(0.3, -0.2);
        let fwd = make_mobius_boundary(a).unwrap();
        let back = make_mobius_boundary(-a).unwrap();
        for k in 0..400 {
            let t = TAU * k as f64 / 400.0 + 0.001;
            let round = back.eval_xi(fwd.eval_xi(t));
            let err = (round - t - TAU * ((round - t) / TAU).round()).abs();
            assert!(err < 1e-5, "t = {t}, err = {err}");
        }
    }

    #[test]
    fn rejects_non_monotone_knots() {
        let bad = vec![(0.0, 0.0), (1.0, 2.0), (2.0, 1.5)];
        assert!(BoundaryMap::new(bad, Complex64::new(1.0, 0.0), MapKind::Homeomorphism).is_err());
        let over = vec![(0.0, 0.0), (3.0, 7.0)];
        assert!(BoundaryMap::new(over, Complex64::new(1.0, 0.0), MapKind::Homeomorphism).is_err());
        let not_unit = vec![(0.0, 0.0)];
        assert!(BoundaryMap::new(not_unit, Complex64::new(1.1, 0.0), MapKind::Homeomorphism).is_err());
        let flat = vec![(0.0, 0.0), (1.0, 0.0)];
        assert!(BoundaryMap::new(flat.clone(), Complex64::new(1.0, 0.0), MapKind::Homeomorphism).is_err());
        assert!(BoundaryMap::new(flat, Complex64::new(1.0, 0.0), MapKind::NondecreasingStep).is_ok());
    }

    #[test]
    fn step_map_is_piecewise_constant() {
        let m = four_jump_map();
        assert_eq!(m.kind(), MapKind::NondecreasingStep);
        assert_eq!(m.eval_xi(PI / 4.0), 0.0);
        assert_eq!(m.eval_xi(PI / 2.0), 0.0);
        assert_eq!(m.eval_xi(PI), PI / 2.0);
        assert_eq!(m.eval_xi(0.1), -PI / 2.0);
        assert_eq!(m.eval_xi(7.0 * PI / 4.0 + 0.2), 1.5 * PI);
        let two = two_jump_map();
        assert!((two.boundary_value(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((two.boundary_value(PI) + Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(make_step_map(&[1.0, 0.5], &[0.0, 1.0]).is_err());
        assert!(make_step_map(&[0.5, 1.0], &[1.0, 0.0]).is_err());
        assert!(make_step_map(&[0.5], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn random_map_is_deterministic() {
        let a = make_random_homeomorphism(17, 32, 0.5).unwrap();
        let b = make_random_homeomorphism(17, 32, 0.5).unwrap();
        assert_eq!(a, b);
        let c = make_random_homeomorphism(18, 32, 0.5).unwrap();
        assert_ne!(a, c);
        assert!(make_random_homeomorphism(1, 3, 0.5).is_err());
    }

    #[test]
    fn zero_roughness_gives_identity_lift() {
        let m = make_random_homeomorphism(5, 64, 0.0).unwrap();
        assert!(m.deviation_from_rotation(512) < 1e-12);
        let m = make_random_homeomorphism(5, 64, 1e-4).unwrap();
        assert!(m.deviation_from_rotation(512) < 1e-2);
    }

    #[test]
    fn symmetric_map_has_half_period_symmetry() {
        let m = make_symmetric_random_homeomorphism(3, 16, 0.6).unwrap();
        for k in 0..100 {
            let t = 0.031 * k as f64;
            assert!((m.eval_xi(t + PI) - m.eval_xi(t) - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn mollified_map_is_monotone_and_close() {
        let m = make_random_homeomorphism(2, 16, 0.5).unwrap();
        let s = m.mollify(DEFAULT_MOLLIFIER_WIDTH, 4096).unwrap();
        assert_eq!(s.kind(), MapKind::Homeomorphism);
        assert_eq!(s.knots().len(), 4096);
        let lift = s.sample_lift(4096);
        assert!(lift.windows(2).all(|w| w[1] > w[0]));
        // Mollification moves the lift by at most the local oscillation.
        let diff = (0..512)
            .map(|k| {
                let t = TAU * k as f64 / 512.0;
                (s.eval_xi(t) - m.eval_xi(t)).abs()
            })
            .fold(0.0, f64::max);
        assert!(diff < 0.05, "diff = {diff}");
    }

    #[test]
    fn conjugation_reverses_orientation() {
        // Lift of t ↦ −t, offset to start at 0.
        let knots: Vec<(f64, f64)> = (0..8).map(|j| {
            let t = TAU * j as f64 / 8.0;
            (t, -t)
        }).collect();
        let m = BoundaryMap::conjugate_reversed(&knots, Complex64::new(1.0, 0.0), MapKind::Homeomorphism).unwrap();
        for k in 0..40 {
            let t = 0.157 * k as f64;
            let e = m.eval_xi(t) - t;
            assert!((e - TAU * (e / TAU).round()).abs() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let m = make_random_homeomorphism(99, 12, 0.7).unwrap();
        let s = m.to_json().unwrap();
        assert!(s.contains("\"kind\":\"Homeomorphism\""));
        assert!(s.contains("\"omega_re\""));
        let back = BoundaryMap::from_json(&s).unwrap();
        assert_eq!(m, back);
        for ((t0, x0), (t1, x1)) in m.knots().iter().zip(back.knots()) {
            assert_eq!(t0.to_bits(), t1.to_bits());
            assert_eq!(x0.to_bits(), x1.to_bits());
        }
        let bad = r#"{"kind":"Homeomorphism","omega_re":1.0,"omega_im":0.0,"knots":[[0.0,1.0],[1.0,0.5]]}"#;
        assert!(BoundaryMap::from_json(bad).is_err());
    }
}
