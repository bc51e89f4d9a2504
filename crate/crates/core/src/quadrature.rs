//! Midpoint quadrature over the fundamental domain, the smooth bump test
//! signal and the interpolation error functional `∫_F |f − ψ^A|²`.
//!
//! The rule: `n³` cells on the unit cube, each contributing `g(centre)/n³`
//! when the centre lies in the open fundamental domain. Per-slice partial sums
//! are combined pairwise in a fixed order, so results do not depend on the
//! thread count.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index_domain::{in_fundamental_domain, DomainRange, GridSpec, IndexTriple, Point3};
use crate::interpolation::{alt_interpolate, InterpolantAlt};
use crate::phase::PhaseTable;
use crate::scalar::{cast, Real};
use crate::transform::SampleSet;

/// Smooth characteristic function of a ball: 1 inside radius `alpha`, 0
/// outside radius `beta`, `e·exp(1/(q²−1))` in between with
/// `q = (r − alpha)/(beta − alpha)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BumpParams<T> {
    alpha: T,
    beta: T,
    center: Point3<T>,
}

impl<T: Real> BumpParams<T> {
    pub fn new(alpha: T, beta: T, center: Point3<T>) -> Result<Self> {
        if !(alpha > T::zero() && alpha < beta) {
            return Err(Error::InvalidArgument(format!(
                "bump radii need 0 < alpha < beta, got {alpha}, {beta}"
            )));
        }
        Ok(BumpParams {
            alpha,
            beta,
            center,
        })
    }

    /// `alpha = 1/10`, `beta = 1/5`, centre `(3/4, 3/4, 1/4)`.
    pub fn reference() -> Self {
        BumpParams {
            alpha: cast(0.1),
            beta: cast(0.2),
            center: Point3::new(cast(0.75), cast(0.75), cast(0.25)),
        }
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn center(&self) -> Point3<T> {
        self.center
    }
}

pub fn bump<T: Real>(params: &BumpParams<T>, p: &Point3<T>) -> T {
    let r = (*p - params.center).norm();
    if r < params.alpha {
        T::one()
    } else if r > params.beta {
        T::zero()
    } else {
        let q = (r - params.alpha) / (params.beta - params.alpha);
        let denom = q * q - T::one();
        if denom >= T::zero() {
            // r = beta
            T::zero()
        } else {
            T::E() * (T::one() / denom).exp()
        }
    }
}

/// Midpoint rule resolution (cells per axis).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    n: usize,
}

impl QuadratureSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "quadrature needs at least one cell per axis".into(),
            ));
        }
        Ok(QuadratureSpec { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes<T: Real>(&self) -> Vec<T> {
        let n: T = cast(self.n as f64);
        (0..self.n)
            .map(|i| (cast::<T>(i as f64) + cast(0.5)) / n)
            .collect()
    }

    fn cell_volume<T: Real>(&self) -> T {
        T::one() / cast::<T>(self.n as f64).powi(3)
    }
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        xs.iter().fold(T::zero(), |a, &b| a + b)
    } else {
        let (l, r) = xs.split_at(xs.len() / 2);
        pairwise_sum(l) + pairwise_sum(r)
    }
}

fn pairwise_sum_complex<T: Real>(xs: &[Complex<T>]) -> Complex<T> {
    let re: Vec<T> = xs.iter().map(|c| c.re).collect();
    let im: Vec<T> = xs.iter().map(|c| c.im).collect();
    Complex::new(pairwise_sum(&re), pairwise_sum(&im))
}

/// `∫_F g` by the midpoint rule with the domain indicator.
pub fn integrate_over_f<T, F>(g: F, q: &QuadratureSpec) -> T
where
    T: Real,
    F: Fn(&Point3<T>) -> T + Sync,
{
    let nodes = q.nodes::<T>();
    let slices: Vec<T> = (0..q.n)
        .into_par_iter()
        .map(|k| {
            let z = nodes[k];
            let mut vals = Vec::with_capacity(q.n * q.n);
            for &x in &nodes {
                for &y in &nodes {
                    let p = Point3::new(x, y, z);
                    if in_fundamental_domain(&p) {
                        vals.push(g(&p));
                    }
                }
            }
            pairwise_sum(&vals)
        })
        .collect();
    pairwise_sum(&slices) * q.cell_volume()
}

/// `∫_F |f − ψ^A|²` with `ψ^A` evaluated slice by slice through phase tables.
pub fn interpolation_error<T, F>(f: F, interp: &InterpolantAlt<T>, q: &QuadratureSpec) -> T
where
    T: Real,
    F: Fn(&Point3<T>) -> T + Sync,
{
    let nodes = q.nodes::<T>();
    let eval = interp.tensor(&nodes, &nodes, &nodes);
    let n = q.n;
    let slices: Vec<T> = (0..n)
        .into_par_iter()
        .map(|k| {
            let z = nodes[k];
            let psi = eval.slice(k);
            let mut vals = Vec::with_capacity(n * n);
            for (i, &x) in nodes.iter().enumerate() {
                for (j, &y) in nodes.iter().enumerate() {
                    let p = Point3::new(x, y, z);
                    if in_fundamental_domain(&p) {
                        vals.push((Complex::new(f(&p), T::zero()) - psi[i * n + j]).norm_sqr());
                    }
                }
            }
            pairwise_sum(&vals)
        })
        .collect();
    pairwise_sum(&slices) * q.cell_volume()
}

/// Same functional with `ψ^A` summed directly at every node.
pub fn interpolation_error_pointwise<T, F>(
    f: F,
    interp: &InterpolantAlt<T>,
    q: &QuadratureSpec,
) -> T
where
    T: Real,
    F: Fn(&Point3<T>) -> T + Sync,
{
    integrate_over_f(
        |p| (Complex::new(f(p), T::zero()) - interp.eval(p)).norm_sqr(),
        q,
    )
}

/// Error functional of the bump sampled on `L_{0,1/2,N,1}` and interpolated
/// with the alternating functions.
pub fn bump_interpolation_error<T: Real>(
    params: &BumpParams<T>,
    n: usize,
    q: &QuadratureSpec,
) -> Result<T> {
    let g = GridSpec::new(T::zero(), cast(0.5), n, T::one())?;
    let samples = SampleSet::from_fn(g, |p| Complex::new(bump(params, p), T::zero()));
    let interp = alt_interpolate(&samples)?;
    Ok(interpolation_error(|p| bump(params, p), &interp, q))
}

/// `∫_F E_t conj(E_u)`.
pub fn continuous_gram_entry<T: Real>(
    t: &IndexTriple,
    u: &IndexTriple,
    q: &QuadratureSpec,
) -> Complex<T> {
    continuous_gram(&[*t, *u], q)[1]
}

/// `∫_F E_a conj(E_b)` for all pairs of `labels`, row-major.
pub fn continuous_gram<T: Real>(labels: &[IndexTriple], q: &QuadratureSpec) -> Vec<Complex<T>> {
    let lo = labels
        .iter()
        .flat_map(|t| [t.k, t.l, t.m])
        .min()
        .unwrap_or(0);
    let hi = labels
        .iter()
        .flat_map(|t| [t.k, t.l, t.m])
        .max()
        .unwrap_or(0);
    let range = DomainRange::new(lo, hi);
    let nodes = q.nodes::<T>();
    let table = PhaseTable::labels_by_coords(range, &nodes, false);
    let e = |n: i64, i: usize| table.get((n - lo) as usize, i);
    let eval = |t: &IndexTriple, i: usize, j: usize, k: usize| {
        e(t.k, i) * e(t.l, j) * e(t.m, k)
            + e(t.k, k) * e(t.l, i) * e(t.m, j)
            + e(t.k, j) * e(t.l, k) * e(t.m, i)
    };
    let d = labels.len();
    let slices: Vec<Vec<Complex<T>>> = (0..q.n)
        .into_par_iter()
        .map(|k| {
            let z = nodes[k];
            let mut values: Vec<Vec<Complex<T>>> = vec![Vec::new(); d];
            for (i, &x) in nodes.iter().enumerate() {
                for (j, &y) in nodes.iter().enumerate() {
                    if in_fundamental_domain(&Point3::new(x, y, z)) {
                        for (v, t) in values.iter_mut().zip(labels) {
                            v.push(eval(t, i, j, k));
                        }
                    }
                }
            }
            let mut out = Vec::with_capacity(d * d);
            let mut prod = Vec::new();
            for a in 0..d {
                for b in 0..d {
                    prod.clear();
                    prod.extend(values[a].iter().zip(&values[b]).map(|(x, y)| x * y.conj()));
                    out.push(pairwise_sum_complex(&prod));
                }
            }
            out
        })
        .collect();
    let vol = q.cell_volume::<T>();
    (0..d * d)
        .map(|ab| {
            let col: Vec<Complex<T>> = slices.iter().map(|s| s[ab]).collect();
            pairwise_sum_complex(&col) * vol
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alt_functions::eval_e;
    use crate::index_domain::{GridSpec, Triple};
    use crate::interpolation::alt_interpolate;
    use crate::transform::SampleSet;

    #[test]
    fn bump_values() {
        let b = BumpParams::<f64>::reference();
        assert_eq!(bump(&b, &b.center()), 1.0);
        assert_eq!(bump(&b, &Point3::new(0.75, 0.75, 0.5)), 0.0);
        let mid = b.center() + Point3::new(0.15, 0.0, 0.0);
        assert!((bump(&b, &mid) - (-1.0f64 / 3.0).exp()).abs() < 1e-12);
        assert!((bump(&b, &mid) - 0.71653).abs() < 1e-5);
    }

    #[test]
    fn bump_is_continuous_at_both_radii() {
        let b = BumpParams::<f64>::reference();
        let eps = 1e-8;
        let at = |r: f64| bump(&b, &(b.center() + Point3::new(0.0, r, 0.0)));
        assert!((at(0.1 - eps) - 1.0).abs() < 1e-6);
        assert!((at(0.1 + eps) - 1.0).abs() < 1e-6);
        assert!(at(0.2 - eps).abs() < 1e-6);
        assert_eq!(at(0.2 + eps), 0.0);
        assert_eq!(at(0.2), 0.0);
    }

    #[test]
    fn bump_validation() {
        let c = Point3::splat(0.5);
        assert!(BumpParams::new(0.2, 0.1, c).is_err());
        assert!(BumpParams::new(0.0, 0.1, c).is_err());
        assert!(BumpParams::new(0.1, 0.2, c).is_ok());
        assert!(QuadratureSpec::new(0).is_err());
    }

    #[test]
    fn volume_of_fundamental_domain() {
        for n in [32, 64, 100] {
            let q = QuadratureSpec::new(n).unwrap();
            let v: f64 = integrate_over_f(|_| 1.0, &q);
            assert!((v - 1.0 / 3.0).abs() < 3.0 / n as f64, "n = {n}: {v}");
        }
        let zero: f64 = integrate_over_f(|_| 0.0, &QuadratureSpec::new(16).unwrap());
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn pairwise_sum_is_accurate() {
        let xs = vec![0.1f64; 100_000];
        assert!((pairwise_sum(&xs) - 10_000.0).abs() < 1e-9);
        assert_eq!(pairwise_sum::<f64>(&[]), 0.0);
    }

    #[test]
    fn gram_entries() {
        let q = QuadratureSpec::new(64).unwrap();
        let z = Triple::new(0, 0, 0);
        let g: Complex<f64> = continuous_gram_entry(&z, &z, &q);
        // |3|² times the discrete volume
        let vol: f64 = integrate_over_f(|_| 1.0, &q);
        assert!((g.re - 9.0 * vol).abs() < 1e-12);
        let off: Complex<f64> =
            continuous_gram_entry(&Triple::new(1, 0, 0), &Triple::new(2, 0, 0), &q);
        assert!(off.norm() < 0.05);
        let diag: Complex<f64> =
            continuous_gram_entry(&Triple::new(2, 1, 0), &Triple::new(2, 1, 0), &q);
        assert!((diag.re - 1.0).abs() < 0.05);
    }

    #[test]
    fn gram_matches_pointwise_integration() {
        let q = QuadratureSpec::new(24).unwrap();
        let (a, b) = (Triple::new(2, 1, -1), Triple::new(1, 2, 0));
        let fast: Complex<f64> = continuous_gram_entry(&a, &b, &q);
        let re = integrate_over_f(
            |p: &Point3<f64>| (eval_e(&a, p) * eval_e(&b, p).conj()).re,
            &q,
        );
        let im = integrate_over_f(
            |p: &Point3<f64>| (eval_e(&a, p) * eval_e(&b, p).conj()).im,
            &q,
        );
        assert!((fast - Complex::new(re, im)).norm() < 1e-12);
    }

    #[test]
    fn error_paths_agree() {
        let bp = BumpParams::<f64>::reference();
        let g = GridSpec::new(0.0, 0.5, 5, 1.0).unwrap();
        let i =
            alt_interpolate(&SampleSet::from_fn(g, |p| Complex::new(bump(&bp, p), 0.0))).unwrap();
        let q = QuadratureSpec::new(20).unwrap();
        let fast = interpolation_error(|p| bump(&bp, p), &i, &q);
        let slow = interpolation_error_pointwise(|p| bump(&bp, p), &i, &q);
        assert!((fast - slow).abs() < 1e-13 * (1.0 + slow));
    }

    #[test]
    fn exact_interpolant_has_no_error() {
        let g = GridSpec::new(0.0, 0.5, 5, 1.0).unwrap();
        // a real function reproduced exactly by ψ^A of the same M
        let f = |p: &Point3<f64>| {
            (eval_e(&Triple::new(1, 0, -1), p) + eval_e(&Triple::new(1, 0, -1), p).conj()).re * 0.25
                + 0.5
        };
        let s = SampleSet::from_fn(g, |p| Complex::new(f(p), 0.0));
        let i = alt_interpolate(&s).unwrap();
        let q = QuadratureSpec::new(32).unwrap();
        assert!(interpolation_error(f, &i, &q) < 1e-20);
    }
}
