//! Family specs, the standard map corpus and deterministic parallel sweeps.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::area::{default_resolution, exact_family_area, estimate_area, estimate_area_coeffs, AreaEstimate, AreaMethod, ExactFamily, Radius};
use crate::circle_maps::{
    four_jump_map, make_random_homeomorphism, make_step_map, make_symmetric_random_homeomorphism, two_jump_map,
    BoundaryMap, MapKind, DEFAULT_MOLLIFIED_KNOTS,
};
use crate::error::{Error, Result};
use crate::proof_checks::{run_proof_suite, ProofSuiteConfig};
use crate::verify::{
    boundary_jacobian_integral, boundary_jacobian_integral_coeffs, check_area_contraction_at, convexity_check_coeffs,
    equality_slack, harmonic_shear_convexity, schwarz_bound_check, schwarz_bound_check_coeffs, schwarz_gap, SchwarzGrid, VerdictRecord,
    COROLLARY_EPS, COROLLARY_TOL, IDENTITY_TOL,
};

/// Largest radius accepted by sweeps.
pub const MAX_SWEEP_RADIUS: f64 = 0.97;
/// Knot count of random families.
pub const RANDOM_KNOTS: usize = 16;
/// Mollifier widths of the standard corpus.
pub const CORPUS_WIDTHS: [f64; 3] = [TAU / 32.0, TAU / 64.0, TAU / 128.0];
/// Roughness of the standard corpus.
pub const CORPUS_ROUGHNESS: f64 = 0.5;

/// A parameterized family of boundary data.
///
/// Grammar: `identity | rotation:φ | mobius:re[:im] | shear:re[:im] |
/// random:SEEDS:roughness[:knots] | symmetric:SEEDS:roughness[:knots] |
/// step:two | step:four | step:p@v,p@v,...` where `SEEDS` is `s` or an
/// inclusive range `a..b`.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Identity,
    Rotation(f64),
    Mobius(Complex64),
    Shear(Complex64),
    Random { seeds: RangeInclusive<u64>, roughness: f64, n_knots: usize },
    Symmetric { seeds: RangeInclusive<u64>, roughness: f64, n_knots: usize },
    StepTwo,
    StepFour,
    Step(Vec<(f64, f64)>),
}

fn parse_f64(s: &str, spec: &str) -> Result<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::FamilySpec(spec.to_string()))
}

fn parse_complex(parts: &[&str], spec: &str) -> Result<Complex64> {
    match parts {
        [re] => Ok(Complex64::new(parse_f64(re, spec)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse_f64(re, spec)?, parse_f64(im, spec)?)),
        _ => Err(Error::FamilySpec(spec.to_string())),
    }
}

/// `"7"` or the inclusive range `"0..99"`.
pub fn parse_seed_range(s: &str) -> Option<RangeInclusive<u64>> {
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (a <= b).then_some(a..=b)
        }
        None => {
            let v = s.trim().parse().ok()?;
            Some(v..=v)
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = || Error::FamilySpec(spec.to_string());
        let parts: Vec<&str> = spec.trim().split(':').collect();
        match parts.as_slice() {
            ["identity"] => Ok(FamilySpec::Identity),
            ["rotation", phi] => Ok(FamilySpec::Rotation(parse_f64(phi, spec)?)),
            ["mobius", rest @ ..] => Ok(FamilySpec::Mobius(parse_complex(rest, spec)?)),
            ["shear", rest @ ..] => Ok(FamilySpec::Shear(parse_complex(rest, spec)?)),
            [kind @ ("random" | "symmetric"), seeds, rough, rest @ ..] => {
                let seeds = parse_seed_range(seeds).ok_or_else(bad)?;
                let roughness = parse_f64(rough, spec)?;
                let n_knots = match rest {
                    [] => RANDOM_KNOTS,
                    [k] => k.trim().parse().map_err(|_| bad())?,
                    _ => return Err(bad()),
                };
                Ok(if *kind == "random" {
                    FamilySpec::Random { seeds, roughness, n_knots }
                } else {
                    FamilySpec::Symmetric { seeds, roughness, n_knots }
                })
            }
            ["step", "two"] => Ok(FamilySpec::StepTwo),
            ["step", "four"] => Ok(FamilySpec::StepFour),
            ["step", list] => {
                let pairs = list
                    .split(',')
                    .map(|pv| {
                        let (p, v) = pv.split_once('@').ok_or_else(bad)?;
                        Ok((parse_f64(p, spec)?, parse_f64(v, spec)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(FamilySpec::Step(pairs))
            }
            _ => Err(bad()),
        }
    }
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else {
        format!("{}:{}", c.re, c.im)
    }
}

fn fmt_seeds(s: &RangeInclusive<u64>) -> String {
    if s.start() == s.end() {
        s.start().to_string()
    } else {
        format!("{}..{}", s.start(), s.end())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Identity => write!(f, "identity"),
            FamilySpec::Rotation(p) => write!(f, "rotation:{p}"),
            FamilySpec::Mobius(a) => write!(f, "mobius:{}", fmt_complex(*a)),
            FamilySpec::Shear(c) => write!(f, "shear:{}", fmt_complex(*c)),
            FamilySpec::Random { seeds, roughness, n_knots } => {
                write!(f, "random:{}:{roughness}:{n_knots}", fmt_seeds(seeds))
            }
            FamilySpec::Symmetric { seeds, roughness, n_knots } => {
                write!(f, "symmetric:{}:{roughness}:{n_knots}", fmt_seeds(seeds))
            }
            FamilySpec::StepTwo => write!(f, "step:two"),
            FamilySpec::StepFour => write!(f, "step:four"),
            FamilySpec::Step(pairs) => {
                let body: Vec<String> = pairs.iter().map(|(p, v)| format!("{p}@{v}")).collect();
                write!(f, "step:{}", body.join(","))
            }
        }
    }
}

/// One concrete map of a family.
#[derive(Clone, Debug)]
pub struct MapInstance {
    pub id: String,
    pub family: String,
    pub params: String,
    /// Boundary correspondence, absent for maps that do not send the circle
    /// to itself (the shear).
    pub map: Option<BoundaryMap>,
    pub exact: Option<ExactFamily>,
}

impl MapInstance {
    pub fn from_map(id: impl Into<String>, family: &str, params: impl Into<String>, map: BoundaryMap) -> Self {
        MapInstance { id: id.into(), family: family.to_string(), params: params.into(), map: Some(map), exact: None }
    }

    fn from_exact(id: String, family: &str, params: String, exact: ExactFamily) -> Result<Self> {
        Ok(MapInstance { id, family: family.to_string(), params, map: exact.boundary_map()?, exact: Some(exact) })
    }

    pub fn tag(&self, rec: VerdictRecord) -> VerdictRecord {
        rec.with_map(&self.id, &self.family, &self.params)
    }

    fn boundary(&self) -> Result<&BoundaryMap> {
        self.map.as_ref().ok_or_else(|| {
            Error::Hypothesis(format!("{} does not map the circle to itself", self.id))
        })
    }

    /// Area by `method`; `m = None` picks the method's default resolution.
    pub fn area(&self, r: Radius, method: AreaMethod, m: Option<usize>) -> Result<AreaEstimate> {
        if method == AreaMethod::ExactFamily {
            let exact = self
                .exact
                .ok_or_else(|| Error::Domain(format!("no closed-form area for {}", self.id)))?;
            return exact_family_area(exact, r);
        }
        let m = m.unwrap_or_else(|| default_resolution(method, r));
        match (&self.map, self.exact) {
            (Some(map), _) => estimate_area(map, r, method, m),
            (None, Some(exact)) => estimate_area_coeffs(&exact.coefficients(m / 4)?, r, method, m),
            (None, None) => Err(Error::Domain(format!("{} has no data", self.id))),
        }
    }

    pub fn is_rotation(&self) -> bool {
        match (self.exact, &self.map) {
            (Some(ExactFamily::Identity | ExactFamily::Rotation(_)), _) => true,
            (_, Some(map)) => map.kind() == MapKind::Homeomorphism && map.deviation_from_rotation(1024) < 1e-12,
            _ => false,
        }
    }
}

fn random_instances(
    kind: &str,
    seeds: &RangeInclusive<u64>,
    roughness: f64,
    n_knots: usize,
    widths: &[f64],
) -> Result<Vec<MapInstance>> {
    let make = |seed| {
        if kind == "random" {
            make_random_homeomorphism(seed, n_knots, roughness)
        } else {
            make_symmetric_random_homeomorphism(seed, n_knots, roughness)
        }
    };
    let seeds: Vec<u64> = seeds.clone().collect();
    let per_seed: Vec<Result<Vec<MapInstance>>> = seeds
        .par_iter()
        .map(|&seed| {
            let base = make(seed)?;
            let params = format!("seed={seed};roughness={roughness};n_knots={n_knots}");
            if widths.is_empty() {
                return Ok(vec![MapInstance::from_map(format!("{kind}-{seed}"), kind, params, base)]);
            }
            widths
                .iter()
                .enumerate()
                .map(|(k, &w)| {
                    let map = base.mollify(w, DEFAULT_MOLLIFIED_KNOTS)?;
                    Ok(MapInstance::from_map(format!("{kind}-{seed}-w{k}"), kind, format!("{params};mollify={w}"), map))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for chunk in per_seed {
        out.extend(chunk?);
    }
    Ok(out)
}

impl FamilySpec {
    /// Expands the spec. Random families are mollified once per width in
    /// `mollify` (no mollification when empty).
    pub fn instances(&self, mollify: &[f64]) -> Result<Vec<MapInstance>> {
        let name = self.to_string();
        let one = |family: &str, exact: ExactFamily| -> Result<Vec<MapInstance>> {
            Ok(vec![MapInstance::from_exact(name.clone(), family, name.clone(), exact)?])
        };
        match self {
            FamilySpec::Identity => one("identity", ExactFamily::Identity),
            FamilySpec::Rotation(p) => one("rotation", ExactFamily::Rotation(*p)),
            FamilySpec::Mobius(a) => one("mobius", ExactFamily::MobiusDisk(*a)),
            FamilySpec::Shear(c) => one("shear", ExactFamily::Shear(*c)),
            FamilySpec::Random { seeds, roughness, n_knots } => {
                random_instances("random", seeds, *roughness, *n_knots, mollify)
            }
            FamilySpec::Symmetric { seeds, roughness, n_knots } => {
                random_instances("symmetric", seeds, *roughness, *n_knots, mollify)
            }
            FamilySpec::StepTwo => Ok(vec![MapInstance::from_map(name.clone(), "step", name, two_jump_map())]),
            FamilySpec::StepFour => Ok(vec![MapInstance::from_map(name.clone(), "step", name, four_jump_map())]),
            FamilySpec::Step(pairs) => {
                let (p, v): (Vec<f64>, Vec<f64>) = pairs.iter().cloned().unzip();
                Ok(vec![MapInstance::from_map(name.clone(), "step", name, make_step_map(&p, &v)?)])
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Theorem1,
    Equality,
    Proof,
    Convexity,
    Corollary,
    Schwarz,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Theorem1, Suite::Equality, Suite::Proof, Suite::Convexity, Suite::Corollary, Suite::Schwarz];

    pub fn slug(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Equality => "equality",
            Suite::Proof => "proof",
            Suite::Convexity => "convexity",
            Suite::Corollary => "corollary",
            Suite::Schwarz => "schwarz",
            Suite::All => "all",
        }
    }

    pub fn from_slug(s: &str) -> Option<Suite> {
        Suite::EACH.iter().copied().chain([Suite::All]).find(|x| x.slug() == s)
    }

    /// The suites `self` stands for.
    pub fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Suite::EACH.to_vec()
        } else {
            vec![self]
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub families: Vec<FamilySpec>,
    /// Maps supplied directly (e.g. from files), run after the families.
    pub extra_maps: Vec<MapInstance>,
    pub radii: Vec<f64>,
    pub methods: Vec<AreaMethod>,
    /// Area resolution `M`; `None` uses each method's default.
    pub resolution: Option<usize>,
    /// Absolute tolerance overrides by check name.
    pub tolerances: BTreeMap<String, f64>,
    pub seed: u64,
    /// Mollifier widths applied to random families.
    pub mollify: Vec<f64>,
    pub center_shift: Complex64,
    pub schwarz_grid: SchwarzGrid,
}

impl SweepConfig {
    /// Defaults for one suite; `seeds` selects the random corpus.
    pub fn defaults(suite: Suite, seeds: RangeInclusive<u64>) -> Self {
        let random = FamilySpec::Random { seeds: seeds.clone(), roughness: CORPUS_ROUGHNESS, n_knots: RANDOM_KNOTS };
        let (families, radii, mollify) = match suite {
            Suite::Theorem1 | Suite::All => (vec![random], vec![0.25, 0.5, 0.75, 0.9], CORPUS_WIDTHS.to_vec()),
            Suite::Equality => (
                vec![
                    FamilySpec::Identity,
                    FamilySpec::Rotation(0.7),
                    FamilySpec::Rotation(2.5),
                    FamilySpec::Mobius(Complex64::new(0.3, 0.0)),
                    random,
                ],
                vec![0.25, 0.5, 0.75, 0.9],
                CORPUS_WIDTHS.to_vec(),
            ),
            Suite::Proof => (vec![], vec![0.6], vec![]),
            Suite::Convexity => (
                vec![FamilySpec::Shear(Complex64::new(0.3, 0.0)), FamilySpec::Identity, FamilySpec::Mobius(Complex64::new(0.5, 0.0))],
                vec![0.5],
                vec![],
            ),
            Suite::Corollary => (
                vec![
                    FamilySpec::Identity,
                    FamilySpec::Rotation(1.0),
                    FamilySpec::Rotation(4.0),
                    FamilySpec::Mobius(Complex64::new(0.2, 0.0)),
                    FamilySpec::Mobius(Complex64::new(0.4, 0.0)),
                    FamilySpec::Mobius(Complex64::new(0.6, 0.0)),
                ],
                vec![],
                vec![],
            ),
            Suite::Schwarz => (
                vec![
                    FamilySpec::Identity,
                    FamilySpec::Rotation(0.5),
                    FamilySpec::Rotation(2.0),
                    FamilySpec::Symmetric { seeds: 0..=9, roughness: CORPUS_ROUGHNESS, n_knots: RANDOM_KNOTS },
                    FamilySpec::StepTwo,
                    FamilySpec::StepFour,
                ],
                vec![],
                vec![],
            ),
        };
        SweepConfig {
            families,
            extra_maps: vec![],
            radii,
            methods: vec![AreaMethod::GreenSpectral, AreaMethod::KernelFFT],
            resolution: None,
            tolerances: BTreeMap::new(),
            seed: *seeds.start(),
            mollify,
            center_shift: Complex64::new(0.0, 0.0),
            schwarz_grid: SchwarzGrid::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.families.is_empty() && self.extra_maps.is_empty() {
            return Err(Error::Domain("no families to run".into()));
        }
        self.validate_radii()
    }

    fn validate_radii(&self) -> Result<()> {
        if self.radii.is_empty() {
            return Err(Error::Domain("no radii given".into()));
        }
        for &r in &self.radii {
            if !(r > 0.0 && r <= MAX_SWEEP_RADIUS) {
                return Err(Error::Domain(format!("radius {r} outside (0, {MAX_SWEEP_RADIUS}]")));
            }
        }
        Ok(())
    }

    fn tolerance(&self, check: &str, default: f64) -> f64 {
        self.tolerances.get(check).copied().unwrap_or(default)
    }

    pub fn instances(&self) -> Result<Vec<MapInstance>> {
        let mut out = Vec::new();
        for f in &self.families {
            out.extend(f.instances(&self.mollify)?);
        }
        out.extend(self.extra_maps.iter().cloned());
        Ok(out)
    }

    fn radii(&self) -> Result<Vec<Radius>> {
        self.validate_radii()?;
        self.radii.iter().map(|&r| Radius::new(r)).collect()
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// One row of an area report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AreaRow {
    pub map_id: String,
    pub family: String,
    pub params: String,
    pub r: f64,
    pub method: String,
    pub value: f64,
    pub resolution: usize,
    pub error_indicator: f64,
    pub wall_time_ms: f64,
}

/// Areas for every (instance, radius, method), in that nesting order.
pub fn run_area(cfg: &SweepConfig) -> Result<Vec<AreaRow>> {
    cfg.validate()?;
    if cfg.methods.is_empty() {
        return Err(Error::Domain("no area methods given".into()));
    }
    let instances = cfg.instances()?;
    let radii = cfg.radii()?;
    let jobs: Vec<(&MapInstance, Radius, AreaMethod)> = instances
        .iter()
        .flat_map(|inst| radii.iter().flat_map(move |&r| cfg.methods.iter().map(move |&m| (inst, r, m))))
        .collect();
    jobs.par_iter()
        .map(|&(inst, r, method)| {
            let start = Instant::now();
            let est = inst.area(r, method, cfg.resolution)?;
            Ok(AreaRow {
                map_id: inst.id.clone(),
                family: inst.family.clone(),
                params: inst.params.clone(),
                r: r.get(),
                method: method.slug().to_string(),
                value: est.value,
                resolution: est.resolution,
                error_indicator: est.error_indicator,
                wall_time_ms: elapsed_ms(start),
            })
        })
        .collect()
}

fn timed(f: impl FnOnce() -> Result<VerdictRecord>) -> Result<VerdictRecord> {
    let start = Instant::now();
    let rec = f()?;
    Ok(rec.with_wall_time(elapsed_ms(start)))
}

fn theorem1(cfg: &SweepConfig) -> Result<Vec<VerdictRecord>> {
    cfg.validate()?;
    let instances = cfg.instances()?;
    let radii = cfg.radii()?;
    let methods: Vec<AreaMethod> = cfg.methods.iter().copied().filter(|m| *m != AreaMethod::ExactFamily).collect();
    let methods = &methods;
    let jobs: Vec<_> = instances
        .iter()
        .flat_map(|i| radii.iter().flat_map(move |&r| methods.iter().map(move |&m| (i, r, m))))
        .collect();
    jobs.par_iter()
        .map(|&(inst, r, method)| {
            timed(|| {
                let map = inst.boundary()?;
                let m = cfg.resolution.unwrap_or_else(|| default_resolution(method, r));
                let tol = cfg.tolerance("area_contraction", 1e-6 * r.disk_area());
                Ok(inst.tag(check_area_contraction_at(map, r, method, m, tol)?))
            })
        })
        .collect()
}

fn equality(cfg: &SweepConfig) -> Result<Vec<VerdictRecord>> {
    cfg.validate()?;
    let instances = cfg.instances()?;
    let radii = cfg.radii()?;
    let jobs: Vec<_> = instances.iter().flat_map(|i| radii.iter().map(move |&r| (i, r))).collect();
    jobs.par_iter()
        .map(|&(inst, r)| {
            timed(|| {
                let s = equality_slack(inst.boundary()?, r)?;
                let err = s.estimate.error_indicator;
                let rec = if inst.is_rotation() {
                    let mut rec = VerdictRecord::upper_bound("", s.slack.abs(), 0.0, cfg.tolerance("equality_rotation", 1e-8));
                    rec.check_name = "equality_rotation".into();
                    rec
                } else {
                    let mut rec = VerdictRecord::lower_bound("", s.slack, 10.0 * err, 0.0);
                    rec.check_name = "equality_strict".into();
                    rec
                };
                Ok(inst
                    .tag(rec)
                    .with_r(r.get())
                    .with_method(s.estimate.method.slug())
                    .with_resolution(s.estimate.resolution)
                    .with_error_indicator(err))
            })
        })
        .collect()
}

fn proof(cfg: &SweepConfig) -> Result<Vec<VerdictRecord>> {
    let pc = ProofSuiteConfig { seed: cfg.seed, ..ProofSuiteConfig::default() };
    let mut out = Vec::new();
    for r in cfg.radii()? {
        out.extend(run_proof_suite(r, &pc)?);
    }
    Ok(out)
}

fn convexity(cfg: &SweepConfig) -> Result<Vec<VerdictRecord>> {
    let instances = cfg.instances()?;
    let radii = cfg.radii()?;
    let mut out = Vec::new();
    for inst in &instances {
        for &r in &radii {
            let rec = timed(|| match inst.exact {
                Some(ExactFamily::Shear(c)) => harmonic_shear_convexity(c, r),
                Some(exact) => {
                    let tol = cfg.tolerance("convexity", IDENTITY_TOL);
                    Ok(convexity_check_coeffs(&exact.coefficients(256)?, r, tol))
                }
                None => Err(Error::Hypothesis(format!(
                    "convexity is checked for holomorphic families and the shear, not {}",
                    inst.id
                ))),
            })?;
            out.push(inst.tag(rec));
        }
    }
    Ok(out)
}

fn corollary(cfg: &SweepConfig) -> Result<Vec<VerdictRecord>> {
    let instances = cfg.instances()?;
    let tol = cfg.tolerance("boundary_jacobian", COROLLARY_TOL);
    instances
        .par_iter()
        .map(|inst| {
            timed(|| {
                let rec = match (inst.exact, &inst.map) {
                    (Some(exact @ (ExactFamily::Identity | ExactFamily::Rotation(_) | ExactFamily::MobiusDisk(_))), _) => {
                        let eps_min = COROLLARY_EPS.iter().cloned().fold(f64::INFINITY, f64::min);
                        let order = ((36.0 / eps_min).ceil() as usize).next_power_of_two();
                        boundary_jacobian_integral_coeffs(&exact.coefficients(order)?, &COROLLARY_EPS, tol)?
                    }
                    (_, Some(map)) => boundary_jacobian_integral(map, &COROLLARY_EPS, tol)?,
                    _ => return Err(Error::Hypothesis(format!("{} is not a self-map of the disk", inst.id))),
                };
                Ok(inst.tag(rec))
            })
        })
        .collect()
}

/// Point where the two-jump map nearly attains the Schwarz bound.
pub const SHARPNESS_POINT: f64 = 0.9;
/// Allowed gap at [`SHARPNESS_POINT`].
pub const SHARPNESS_GAP: f64 = 0.05;

const EXACT_SCHWARZ_ORDER: usize = 1024;

fn schwarz(cfg: &SweepConfig) -> Result<Vec<VerdictRecord>> {
    let instances = cfg.instances()?;
    let tol = cfg.tolerance("schwarz_bound", 1e-8);
    let mut out: Vec<VerdictRecord> = instances
        .par_iter()
        .map(|inst| {
            timed(|| {
                let rec = match inst.exact {
                    // Closed-form series: the Möbius tail decays like |a|ⁿ, so
                    // the center f(a) = 0 holds to rounding rather than to the
                    // knot interpolation error.
                    Some(e @ (ExactFamily::Identity | ExactFamily::Rotation(_) | ExactFamily::MobiusDisk(_))) => {
                        schwarz_bound_check_coeffs(&e.coefficients(EXACT_SCHWARZ_ORDER)?, cfg.center_shift, cfg.schwarz_grid, tol)?
                    }
                    _ => schwarz_bound_check(inst.boundary()?, cfg.center_shift, cfg.schwarz_grid, tol)?,
                };
                Ok(inst.tag(rec))
            })
        })
        .collect::<Result<_>>()?;
    for inst in instances.iter().filter(|i| i.family == "step" && i.id == "step:two") {
        let rec = timed(|| {
            let gap = schwarz_gap(inst.boundary()?, Complex64::new(SHARPNESS_POINT, 0.0))?;
            let mut rec = VerdictRecord::upper_bound("", gap, SHARPNESS_GAP, 0.0).with_r(SHARPNESS_POINT);
            rec.check_name = "schwarz_sharpness".into();
            Ok(inst.tag(rec))
        })?;
        out.push(rec);
    }
    Ok(out)
}

/// Runs one suite (not `All`; expand it first).
pub fn run_suite(suite: Suite, cfg: &SweepConfig) -> Result<Vec<VerdictRecord>> {
    match suite {
        Suite::Theorem1 => theorem1(cfg),
        Suite::Equality => equality(cfg),
        Suite::Proof => proof(cfg),
        Suite::Convexity => convexity(cfg),
        Suite::Corollary => corollary(cfg),
        Suite::Schwarz => schwarz(cfg),
        Suite::All => Err(Error::Domain("expand `all` into individual suites".into())),
    }
}

/// Timing and agreement of the two kernel evaluations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub m: usize,
    pub method: String,
    pub value: f64,
    pub wall_time_ms: f64,
    /// `|fft − direct| / |direct|` at this `M`.
    pub rel_diff: f64,
}

/// Relative agreement required between the kernel paths.
pub const BENCH_AGREEMENT: f64 = 1e-10;

pub fn bench_kernel(ms: &[usize], r: Radius, seed: u64) -> Result<Vec<BenchRow>> {
    let map = make_random_homeomorphism(seed, RANDOM_KNOTS, CORPUS_ROUGHNESS)?;
    let mut out = Vec::new();
    for &m in ms {
        let t = Instant::now();
        let direct = estimate_area(&map, r, AreaMethod::KernelDirect, m)?;
        let t_direct = elapsed_ms(t);
        let t = Instant::now();
        let fast = estimate_area(&map, r, AreaMethod::KernelFFT, m)?;
        let t_fast = elapsed_ms(t);
        let rel = (fast.value - direct.value).abs() / direct.value.abs().max(f64::MIN_POSITIVE);
        for (method, value, ms_) in [
            (AreaMethod::KernelDirect, direct.value, t_direct),
            (AreaMethod::KernelFFT, fast.value, t_fast),
        ] {
            out.push(BenchRow { m, method: method.slug().into(), value, wall_time_ms: ms_, rel_diff: rel });
        }
    }
    Ok(out)
}
