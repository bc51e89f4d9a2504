//! Seeded self-verification suites.
//!
//! Each check draws random instances, records the largest residual and
//! compares it against a fixed tolerance. Reports serialize to JSON.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alt_functions::{
    eval_e, eval_e_continuous, operator_eigenvalue, point_product_residual, product_indices,
    shift_phase,
};
use crate::c3_orbit::{
    eval_ew, generate_tilde_we, reflection_orbit, symmetrization_residual, OmegaVector, ORBIT_TABLE,
};
use crate::error::{Error, Result};
use crate::index_domain::{GridSpec, IndexTriple, Point3, Triple};
use crate::interpolation::{alt_interpolate, alt_interpolate_direct, remap_with};
use crate::transform::{adft_forward, adft_inverse, discrete_gram, SampleSet};

/// Step of the finite-difference stencils.
pub const FD_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Identities,
    C3,
    Operators,
    Transform,
    Interpolation,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = [
        "all",
        "identities",
        "c3",
        "operators",
        "transform",
        "interpolation",
    ];

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "identities" => Suite::Identities,
            "c3" => Suite::C3,
            "operators" => Suite::Operators,
            "transform" => Suite::Transform,
            "interpolation" => Suite::Interpolation,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown suite {s:?}, expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::All,
            Suite::Identities,
            Suite::C3,
            Suite::Operators,
            Suite::Transform,
            Suite::Interpolation,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub seed: u64,
    /// Random instances per identity check.
    pub instances: usize,
    /// Perturb one entry of the remap table.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suite: Suite::All,
            seed: 0x5eed,
            instances: 200,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, instances: usize, max_residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            instances,
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub inject_fault: bool,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn run(config: &VerifyConfig) -> Result<Report> {
    if config.instances == 0 {
        return Err(Error::InvalidArgument("instances must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.instances;
    let s = config.suite;
    let mut checks = Vec::new();
    if s.includes(Suite::Identities) {
        checks.push(cyclic_symmetry(&mut rng, n));
        checks.push(periodicity(&mut rng, n));
        checks.push(diagonal_shift(&mut rng, n));
        checks.push(label_product(&mut rng, n));
        checks.push(point_product(&mut rng, n));
    }
    if s.includes(Suite::Identities) || s == Suite::C3 {
        checks.push(symmetrization(&mut rng, n));
    }
    if s.includes(Suite::C3) {
        checks.push(ew_expansion(&mut rng, n));
        checks.push(subgroup_order());
        checks.push(orbit_table(&mut rng, n.min(20)));
    }
    if s.includes(Suite::Operators) {
        for k in 1..=3 {
            checks.push(operator(&mut rng, n, k)?);
        }
    }
    if s.includes(Suite::Transform) {
        checks.push(orthogonality(&mut rng)?);
        checks.push(round_trip(&mut rng)?);
    }
    if s.includes(Suite::Interpolation) {
        checks.push(remap_vs_direct(&mut rng, config.inject_fault)?);
        checks.push(interpolation_residual(&mut rng)?);
    }
    Ok(Report {
        suite: s.to_string(),
        seed: config.seed,
        inject_fault: config.inject_fault,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn label(rng: &mut ChaCha8Rng, bound: i64) -> IndexTriple {
    Triple::new(
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
    )
}

fn real_label(rng: &mut ChaCha8Rng, bound: f64) -> Triple<f64> {
    Triple::new(
        rng.gen_range(-bound..bound),
        rng.gen_range(-bound..bound),
        rng.gen_range(-bound..bound),
    )
}

fn point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Point3<f64> {
    Point3::new(
        rng.gen_range(lo..hi),
        rng.gen_range(lo..hi),
        rng.gen_range(lo..hi),
    )
}

fn complex(rng: &mut ChaCha8Rng) -> Complex<f64> {
    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

fn cyclic_symmetry(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let r = max_of((0..n).map(|_| {
        let (t, p) = (label(rng, 6), point(rng, -1.0, 2.0));
        let e = eval_e(&t, &p);
        (e - eval_e(&t.rotate(), &p))
            .norm()
            .max((e - eval_e(&t, &p.rotate())).norm())
    }));
    Check::new("cyclic_symmetry", n, r, 1e-13)
}

fn periodicity(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let r = max_of((0..n).map(|_| {
        let t = label(rng, 5).to_real::<f64>();
        let p = point(rng, 0.0, 1.0);
        let shift = Point3::new(
            rng.gen_range(-20..=20) as f64,
            rng.gen_range(-20..=20) as f64,
            rng.gen_range(-20..=20) as f64,
        );
        (eval_e_continuous(&t, &(p + shift)) - eval_e_continuous(&t, &p)).norm()
    }));
    Check::new("periodicity", n, r, 1e-12)
}

fn diagonal_shift(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let r = max_of((0..n).map(|_| {
        let t = label(rng, 6);
        let p = point(rng, 0.0, 1.0);
        let a = rng.gen_range(-2.0..2.0);
        let shifted = eval_e_continuous(&t.to_real(), &(p + Point3::splat(a)));
        (shifted - shift_phase(&t, a) * eval_e_continuous(&t.to_real(), &p)).norm()
    }));
    Check::new("diagonal_shift", n, r, 1e-12)
}

fn label_product(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let r = max_of((0..n).map(|_| {
        let (t, u) = (label(rng, 6), label(rng, 6));
        let p = point(rng, -1.0, 2.0);
        let rhs: Complex<f64> = product_indices(&t, &u).iter().map(|d| eval_e(d, &p)).sum();
        (eval_e(&t, &p) * eval_e(&u, &p) - rhs).norm()
    }));
    Check::new("label_product", n, r, 1e-12)
}

fn point_product(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let r = max_of((0..n).map(|_| {
        let t = label(rng, 6);
        point_product_residual(&t, &point(rng, -1.0, 2.0), &point(rng, -1.0, 2.0))
    }));
    Check::new("point_product", n, r, 1e-12)
}

fn symmetrization(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let r = max_of(
        (0..n).map(|_| symmetrization_residual(&real_label(rng, 5.0), &point(rng, -1.0, 1.0))),
    );
    Check::new("symmetrization", n, r, 1e-10)
}

/// Expanded form of `E^W_(λ−μ, μ−ν, ν)(x−y, y−z, 2z)`: 24 exponentials
/// `e(±x·a ± y·b ± z·c)` with `(a, b, c)` a permutation of `(λ, μ, ν)`.
/// Entries name the label multiplying `x`, `y`, `z`: `1 = λ`, `2 = μ`,
/// `3 = ν`, negative for a minus sign.
pub const EW_EXPANSION: [[i8; 3]; 24] = [
    [-3, -2, -1],
    [-3, 2, 1],
    [-3, 1, -2],
    [-3, -1, 2],
    [3, -2, 1],
    [3, 2, -1],
    [3, -1, -2],
    [3, 1, 2],
    [-2, -3, 1],
    [2, -3, -1],
    [-1, -3, -2],
    [1, -3, 2],
    [-2, 3, -1],
    [2, 3, 1],
    [1, 3, -2],
    [-1, 3, 2],
    [-2, -1, -3],
    [2, 1, -3],
    [1, -2, -3],
    [-1, 2, -3],
    [-2, 1, 3],
    [2, -1, 3],
    [-1, -2, 3],
    [1, 2, 3],
];

pub fn eval_ew_expanded(t: &Triple<f64>, p: &Point3<f64>) -> Complex<f64> {
    let labels = [t.k, t.l, t.m];
    let pick = |c: i8| c.signum() as f64 * labels[c.unsigned_abs() as usize - 1];
    EW_EXPANSION
        .iter()
        .map(|[a, b, c]| {
            Complex::from_polar(
                1.0,
                2.0 * PI * (p.x * pick(*a) + p.y * pick(*b) + p.z * pick(*c)),
            )
        })
        .sum()
}

fn ew_expansion(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let r = max_of((0..n).map(|_| {
        let t = real_label(rng, 5.0);
        let p = point(rng, -1.0, 1.0);
        let v = OmegaVector([t.k - t.l, t.l - t.m, t.m]);
        let theta = OmegaVector([p.x - p.y, p.y - p.z, 2.0 * p.z]);
        (eval_ew(&v, &theta) - eval_ew_expanded(&t, &p)).norm()
    }));
    Check::new("ew_expansion", n, r, 1e-11)
}

fn subgroup_order() -> Check {
    let r = match generate_tilde_we() {
        Ok(g) => (g.len() as f64 - 8.0).abs(),
        Err(_) => f64::INFINITY,
    };
    Check::new("subgroup_order", 1, r, 0.0)
}

/// Counts weights whose table entry disagrees with the reflection orbit
/// (presence or reflection count), plus any orbit weight missing from the table.
fn orbit_table(rng: &mut ChaCha8Rng, n: usize) -> Check {
    let r = max_of((0..n).map(|_| {
        // generic: strictly positive ω-coordinates give a free orbit
        let v = [
            rng.gen_range(1..=9i64),
            rng.gen_range(1..=9i64),
            rng.gen_range(1..=9i64),
        ];
        let generated = reflection_orbit(v);
        let mut bad = generated.len().abs_diff(ORBIT_TABLE.len());
        for (l, a) in &ORBIT_TABLE {
            let mut w = [0i64; 3];
            for (o, row) in w.iter_mut().zip(a) {
                *o = row.iter().zip(&v).map(|(&c, &x)| c as i64 * x).sum();
            }
            if generated.get(&w) != Some(&(*l as u32)) {
                bad += 1;
            }
        }
        bad as f64
    }));
    Check::new("orbit_table", n, r, 0.0)
}

/// `σ_k(∂²_x, ∂²_y, ∂²_z) E_t(p)` by central second differences of step `h`.
///
/// The stencil is applied to each of the three plain exponentials making up
/// `E_t`. On `e(a·x)` the three-point second difference is exactly
/// `e(a·x)·(−4 sin²(π a h)/h²)`, and tensor products of stencils multiply,
/// so the 3-, 9- and 27-point stencils reduce to products of these factors.
/// Evaluating the factors directly avoids the `h^{-2k}` cancellation of
/// differencing sampled values.
pub fn fd_operator(k: u32, t: &Triple<f64>, p: &Point3<f64>, h: f64) -> Result<Complex<f64>> {
    let d2 = |a: f64| -4.0 * (PI * a * h).sin().powi(2) / (h * h);
    let mut out = Complex::new(0.0, 0.0);
    for (a, b, c) in [(t.k, t.l, t.m), (t.m, t.k, t.l), (t.l, t.m, t.k)] {
        let (dx, dy, dz) = (d2(a), d2(b), d2(c));
        let symbol = match k {
            1 => dx + dy + dz,
            2 => dx * dy + dx * dz + dy * dz,
            3 => dx * dy * dz,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "operator order must be 1, 2 or 3, got {k}"
                )))
            }
        };
        out += Complex::from_polar(1.0, 2.0 * PI * (a * p.x + b * p.y + c * p.z)) * symbol;
    }
    Ok(out)
}

fn operator(rng: &mut ChaCha8Rng, n: usize, k: u32) -> Result<Check> {
    let floor = (4.0 * PI * PI).powi(k as i32);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let t = label(rng, 3).to_real::<f64>();
        let p = point(rng, 0.0, 1.0);
        let exact = eval_e_continuous(&t, &p) * operator_eigenvalue(k, &t)?;
        let fd = fd_operator(k, &t, &p, FD_STEP)?;
        worst = worst.max((fd - exact).norm() / exact.norm().max(floor));
    }
    Ok(Check::new(&format!("operator_sigma{k}"), n, worst, 1e-4))
}

fn random_grid(rng: &mut ChaCha8Rng, n: usize) -> Result<GridSpec<f64>> {
    GridSpec::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.0..=1.0), n, 1.0)
}

fn orthogonality(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 1..=8 {
        for _ in 0..5 {
            let g = random_grid(rng, n)?;
            worst = worst.max(discrete_gram(&g).max_normalized_deviation(n));
            count += 1;
        }
    }
    Ok(Check::new("discrete_orthogonality", count, worst, 1e-9))
}

fn random_samples(rng: &mut ChaCha8Rng, g: GridSpec<f64>) -> Result<SampleSet<f64>> {
    let values = (0..g.point_count()).map(|_| complex(rng)).collect();
    SampleSet::from_values(g, values)
}

fn round_trip(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let sizes = [2, 3, 5, 7, 9];
    for n in sizes {
        let g = random_grid(rng, n)?;
        let s = random_samples(rng, g)?;
        worst = worst.max(adft_inverse(&adft_forward(&s))?.max_abs_diff(&s));
    }
    Ok(Check::new("round_trip", sizes.len(), worst, 1e-10))
}

fn remap_vs_direct(rng: &mut ChaCha8Rng, faulty: bool) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let sizes = [3, 5, 7];
    for n in sizes {
        let g = random_grid(rng, n)?;
        let s = random_samples(rng, g)?;
        let direct = alt_interpolate_direct(&s)?;
        let beta = adft_forward(&s);
        let remapped = remap_with(&beta, n / 2, faulty)?;
        worst = worst.max(remapped.max_abs_diff(direct.coefficients()));
    }
    Ok(Check::new("remap_vs_direct", sizes.len(), worst, 1e-12))
}

fn interpolation_residual(rng: &mut ChaCha8Rng) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let sizes = [3, 5, 7];
    for n in sizes {
        let g = random_grid(rng, n)?;
        let s = random_samples(rng, g)?;
        let interp = alt_interpolate(&s)?;
        for (idx, f) in s.iter() {
            worst = worst.max((interp.eval(&s.grid().point(idx)) - f).norm());
        }
    }
    Ok(Check::new(
        "interpolation_residual",
        sizes.len(),
        worst,
        1e-11,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let report = run(&VerifyConfig::default()).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{c:?}");
        }
        assert!(report.passed);
        assert_eq!(report.checks.len(), 16);
    }

    #[test]
    fn injected_fault_is_caught() {
        let cfg = VerifyConfig {
            suite: Suite::Interpolation,
            inject_fault: true,
            ..Default::default()
        };
        let report = run(&cfg).unwrap();
        assert!(!report.passed);
        let remap = report
            .checks
            .iter()
            .find(|c| c.name == "remap_vs_direct")
            .unwrap();
        assert!(!remap.passed);
    }

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn c3_suite_selects_orbit_checks() {
        let cfg = VerifyConfig {
            suite: Suite::C3,
            instances: 20,
            ..Default::default()
        };
        let names: Vec<_> = run(&cfg)
            .unwrap()
            .checks
            .into_iter()
            .map(|c| c.name)
            .collect();
        assert_eq!(
            names,
            [
                "symmetrization",
                "ew_expansion",
                "subgroup_order",
                "orbit_table"
            ]
        );
    }

    #[test]
    fn stable_stencil_matches_sampled_stencil() {
        // three-point stencil on sampled values, larger step to keep rounding small
        let h = 1e-2;
        let t = Triple::new(2.0, -1.0, 3.0);
        let p = Point3::new(0.31, 0.72, 0.05);
        let e = |q: Point3<f64>| eval_e_continuous(&t, &q);
        let mut sampled = Complex::new(0.0, 0.0);
        for axis in 0..3 {
            let mut step = Point3::splat(0.0);
            match axis {
                0 => step.x = h,
                1 => step.y = h,
                _ => step.z = h,
            }
            sampled += (e(p + step) - e(p) * 2.0 + e(p - step)) / (h * h);
        }
        let stable = fd_operator(1, &t, &p, h).unwrap();
        assert!((sampled - stable).norm() / stable.norm() < 1e-9);
    }

    #[test]
    fn sampled_mixed_stencil_for_sigma2() {
        let h = 1e-2;
        let t = Triple::new(1.0, 0.0, -2.0);
        let p = Point3::new(0.4, 0.15, 0.66);
        let e = |dx: f64, dy: f64, dz: f64| eval_e_continuous(&t, &(p + Point3::new(dx, dy, dz)));
        let w = [1.0, -2.0, 1.0];
        let off = [-h, 0.0, h];
        let mut sampled = Complex::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                let c = w[i] * w[j] / (h * h * h * h);
                sampled +=
                    (e(off[i], off[j], 0.0) + e(off[i], 0.0, off[j]) + e(0.0, off[i], off[j])) * c;
            }
        }
        let stable = fd_operator(2, &t, &p, h).unwrap();
        assert!((sampled - stable).norm() / stable.norm().max(1.0) < 1e-6);
    }

    #[test]
    fn expansion_trivial_values() {
        let z = Point3::splat(0.0);
        assert!(
            (eval_ew_expanded(&Triple::new(1.3, 0.2, -0.7), &z) - Complex::new(24.0, 0.0)).norm()
                < 1e-12
        );
        let t = Triple::new(0.0, 0.0, 0.0);
        assert!(
            (eval_ew_expanded(&t, &Point3::new(0.3, 0.1, 0.9)) - Complex::new(24.0, 0.0)).norm()
                < 1e-12
        );
    }
}
