//! Trigonometric interpolation on odd-density lattices, `N = 2M + 1`.
//!
//! * Alternating: `ψ^A(p) = Σ_{(k,l,m) ∈ D(-M,M)} c^A_klm E_klm(p/T)`, fitted
//!   to samples on the semidominant lattice. Coefficients come either from the
//!   direct weighted sum or from the ADFT followed by a six-region index remap.
//! * Standard: `ψ(p) = Σ_{k,l,m=-M..M} c_klm e^{2πi(kx+ly+mz)/T}` on the full
//!   `N³` cube.
//!
//! Interpolants may be evaluated anywhere; they are entire and periodic.

use num_complex::Complex;
use rayon::prelude::*;

use crate::alt_functions::eval_e;
use crate::error::{Error, Result};
use crate::index_domain::{cube_points, DomainRange, GridSpec, IndexTriple, Point3, Triple};
use crate::phase::{Cube, PhaseTable};
use crate::scalar::{cast, frac, from_int, turn, Real};
use crate::transform::{adft_forward, alternating_cube, odd_half, CoefficientSet, Role, SampleSet};

/// The six sign regions of `D(-M, M)` used by the `β → c^A` remap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RemapRegion {
    /// `0 ≤ k,l,m ≤ M`
    AllNonNegative,
    /// `0 ≤ k,l ≤ M`, `k < l`, `m < 0`
    NegativeLastAscending,
    /// `0 ≤ k,l ≤ M`, `k ≥ l`, `m < 0`
    NegativeLastDescending,
    /// `0 ≤ k`, `l < 0`
    NegativeMiddle,
    /// `k, l < 0`
    NegativeFirstTwo,
    /// `k < 0 ≤ l`
    NegativeFirst,
}

impl RemapRegion {
    pub const ALL: [RemapRegion; 6] = [
        RemapRegion::AllNonNegative,
        RemapRegion::NegativeLastAscending,
        RemapRegion::NegativeLastDescending,
        RemapRegion::NegativeMiddle,
        RemapRegion::NegativeFirstTwo,
        RemapRegion::NegativeFirst,
    ];

    /// Region predicate, stated independently for each region.
    pub fn contains(&self, t: &IndexTriple, m: usize) -> bool {
        let m = m as i64;
        let nonneg = |x: i64| (0..=m).contains(&x);
        let neg = |x: i64| (-m..=-1).contains(&x);
        match self {
            RemapRegion::AllNonNegative => nonneg(t.k) && nonneg(t.l) && nonneg(t.m),
            RemapRegion::NegativeLastAscending => {
                nonneg(t.k) && nonneg(t.l) && t.k < t.l && neg(t.m)
            }
            RemapRegion::NegativeLastDescending => {
                nonneg(t.k) && nonneg(t.l) && t.k >= t.l && neg(t.m)
            }
            RemapRegion::NegativeMiddle => nonneg(t.k) && neg(t.l),
            RemapRegion::NegativeFirstTwo => neg(t.k) && neg(t.l),
            RemapRegion::NegativeFirst => neg(t.k) && nonneg(t.l),
        }
    }

    pub fn of(t: &IndexTriple, m: usize) -> Option<RemapRegion> {
        Self::ALL.into_iter().find(|r| r.contains(t, m))
    }

    /// ADFT index holding `c^A_t`, and how many label entries were shifted
    /// by `N`.
    fn target(&self, t: &IndexTriple, m: usize, faulty: bool) -> (IndexTriple, u32) {
        let n = 2 * m as i64 + 1;
        let (k, l, mm) = (t.k, t.l, t.m);
        match self {
            RemapRegion::AllNonNegative => (*t, 0),
            RemapRegion::NegativeLastAscending if faulty => (Triple::new(l, mm + n - 1, k), 1),
            RemapRegion::NegativeLastAscending => (Triple::new(l, mm + n, k), 1),
            RemapRegion::NegativeLastDescending => (Triple::new(mm + n, k, l), 1),
            RemapRegion::NegativeMiddle => (Triple::new(l + n, mm + n, k), 2),
            RemapRegion::NegativeFirstTwo => (Triple::new(k + n, l + n, mm + n), 3),
            RemapRegion::NegativeFirst => (Triple::new(mm + n, k + n, l), 2),
        }
    }
}

/// The ADFT index paired with an interpolation label, plus the shift count.
pub fn remap_target(t: &IndexTriple, m: usize) -> Option<(RemapRegion, IndexTriple, u32)> {
    let r = RemapRegion::of(t, m)?;
    let (target, shifts) = r.target(t, m, false);
    Some((r, target, shifts))
}

/// Alternating interpolant over `D(-M, M)`.
#[derive(Clone, Debug)]
pub struct InterpolantAlt<T> {
    m: usize,
    coeffs: CoefficientSet<T>,
}

impl<T: Real> InterpolantAlt<T> {
    pub fn from_coefficients(coeffs: CoefficientSet<T>) -> Result<Self> {
        if coeffs.role() != Role::CAlt {
            return Err(Error::InvalidArgument(format!(
                "expected c_alt coefficients, got {:?}",
                coeffs.role()
            )));
        }
        let m = odd_half(coeffs.grid().n())?;
        Ok(InterpolantAlt { m, coeffs })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coefficients(&self) -> &CoefficientSet<T> {
        &self.coeffs
    }

    pub fn grid(&self) -> &GridSpec<T> {
        self.coeffs.grid()
    }

    /// `ψ^A(p)` by direct summation.
    pub fn eval(&self, p: &Point3<T>) -> Complex<T> {
        let q = p.scale(T::one() / self.grid().period());
        self.coeffs
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, (k, c)| {
                acc + c * eval_e(k, &q)
            })
    }

    /// Separable evaluator on the tensor grid `xs × ys × zs`.
    pub fn tensor(&self, xs: &[T], ys: &[T], zs: &[T]) -> TensorEvaluator<T> {
        let labels = DomainRange::symmetric(self.m);
        TensorEvaluator::new(
            alternating_cube(&self.coeffs, labels),
            labels,
            self.grid().period(),
            xs,
            ys,
            zs,
        )
    }

    /// Interpolant of the samples `f(p)` placed at `s·p`: evaluation at `q`
    /// equals the original evaluation at `q / s`.
    pub fn rescaled(&self, s: T) -> Result<Self> {
        Ok(InterpolantAlt {
            m: self.m,
            coeffs: self
                .coeffs
                .clone()
                .with_grid(rescaled_grid(self.grid(), s)?),
        })
    }
}

fn rescaled_grid<T: Real>(g: &GridSpec<T>, s: T) -> Result<GridSpec<T>> {
    if !s.is_finite() || s <= T::zero() {
        return Err(Error::InvalidArgument(format!(
            "period T = {s} must be positive"
        )));
    }
    g.scaled(s)
}

/// `ψ^A(p)`.
pub fn eval_psi_alt<T: Real>(i: &InterpolantAlt<T>, p: &Point3<T>) -> Complex<T> {
    i.eval(p)
}

/// Coefficients by the direct weighted sum over the lattice.
pub fn alt_interpolate_direct<T: Real>(s: &SampleSet<T>) -> Result<InterpolantAlt<T>> {
    let g = *s.grid();
    let m = odd_half(g.n())?;
    let keys = Role::CAlt.keys(g.n())?;
    let pts: Vec<(Point3<T>, T)> = s
        .keys()
        .iter()
        .map(|i| (g.unit_point(i), T::one() / cast::<T>(i.weight() as f64)))
        .collect();
    let n3 = cast::<T>(g.n() as f64).powi(3);
    let values = keys
        .par_iter()
        .map(|label| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for ((p, w), f) in pts.iter().zip(s.values()) {
                acc += f * eval_e(label, p).conj() * *w;
            }
            acc / (cast::<T>(label.weight() as f64) * n3)
        })
        .collect();
    Ok(InterpolantAlt {
        m,
        coeffs: CoefficientSet::from_values(g, Role::CAlt, values)?,
    })
}

/// Coefficients through the ADFT and the region remap.
pub fn alt_interpolate<T: Real>(s: &SampleSet<T>) -> Result<InterpolantAlt<T>> {
    let m = odd_half(s.grid().n())?;
    let beta = adft_forward(s);
    Ok(InterpolantAlt {
        m,
        coeffs: remap_beta_to_c(&beta, m)?,
    })
}

/// `c^A_klm` from the ADFT coefficients `β`.
///
/// On a lattice with `N a / T + b` integral this is a pure reindexing;
/// otherwise every entry shifted by `N` contributes a unimodular factor
/// `e^{2πi (N a / T + b)}`.
pub fn remap_beta_to_c<T: Real>(beta: &CoefficientSet<T>, m: usize) -> Result<CoefficientSet<T>> {
    remap_with(beta, m, false)
}

pub(crate) fn remap_with<T: Real>(
    beta: &CoefficientSet<T>,
    m: usize,
    faulty: bool,
) -> Result<CoefficientSet<T>> {
    if beta.role() != Role::Beta {
        return Err(Error::InvalidArgument(format!(
            "expected beta coefficients, got {:?}",
            beta.role()
        )));
    }
    let g = *beta.grid();
    if g.n() != 2 * m + 1 {
        return Err(Error::DimensionMismatch(format!(
            "M = {m} needs N = {}, coefficients have N = {}",
            2 * m + 1,
            g.n()
        )));
    }
    let n: T = cast(g.n() as f64);
    let unit_shift = frac(frac(n * g.a() / g.period()) + g.b());
    let keys = Role::CAlt.keys(g.n())?;
    let mut values = Vec::with_capacity(keys.len());
    for t in &keys {
        let region = RemapRegion::of(t, m)
            .ok_or_else(|| Error::InvalidArgument(format!("{t} lies in no remap region")))?;
        let (target, shifts) = region.target(t, m, faulty);
        let b = beta.get(&target).ok_or(Error::MissingCoefficient(target))?;
        values.push(b * turn(frac(from_int::<T>(shifts as i64) * unit_shift)));
    }
    CoefficientSet::from_values(g, Role::CAlt, values)
}

/// Samples on the full `N³` cube `a + (r + b)T/N`, lexicographic in `(r,s,t)`.
#[derive(Clone, Debug)]
pub struct CubeSamples<T> {
    grid: GridSpec<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> CubeSamples<T> {
    pub fn from_values(grid: GridSpec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != grid.n().pow(3) {
            return Err(Error::DimensionMismatch(format!(
                "{} samples for a {}³ cube",
                values.len(),
                grid.n()
            )));
        }
        Ok(CubeSamples { grid, values })
    }

    pub fn from_fn<F>(grid: GridSpec<T>, f: F) -> Self
    where
        F: Fn(&Point3<T>) -> Complex<T> + Sync,
    {
        let values = cube_points(&grid).par_iter().map(|(_, p)| f(p)).collect();
        CubeSamples { grid, values }
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn get(&self, idx: &IndexTriple) -> Complex<T> {
        let n = self.grid.n();
        self.values[((idx.k as usize) * n + idx.l as usize) * n + idx.m as usize]
    }
}

/// Standard trigonometric interpolant over `[-M, M]³`.
#[derive(Clone, Debug)]
pub struct InterpolantStd<T> {
    m: usize,
    coeffs: CoefficientSet<T>,
}

impl<T: Real> InterpolantStd<T> {
    pub fn from_coefficients(coeffs: CoefficientSet<T>) -> Result<Self> {
        if coeffs.role() != Role::CStd {
            return Err(Error::InvalidArgument(format!(
                "expected c_std coefficients, got {:?}",
                coeffs.role()
            )));
        }
        let m = odd_half(coeffs.grid().n())?;
        Ok(InterpolantStd { m, coeffs })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coefficients(&self) -> &CoefficientSet<T> {
        &self.coeffs
    }

    pub fn grid(&self) -> &GridSpec<T> {
        self.coeffs.grid()
    }

    pub fn eval(&self, p: &Point3<T>) -> Complex<T> {
        let q = p.scale(T::one() / self.grid().period());
        let (x, y, z) = (frac(q.x), frac(q.y), frac(q.z));
        self.coeffs
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, (t, c)| {
                let ph = from_int::<T>(t.k) * x + from_int::<T>(t.l) * y + from_int::<T>(t.m) * z;
                acc + c * turn(frac(ph))
            })
    }

    pub fn tensor(&self, xs: &[T], ys: &[T], zs: &[T]) -> TensorEvaluator<T> {
        let labels = DomainRange::symmetric(self.m);
        TensorEvaluator::new(
            alternating_cube(&self.coeffs, labels),
            labels,
            self.grid().period(),
            xs,
            ys,
            zs,
        )
    }

    pub fn rescaled(&self, s: T) -> Result<Self> {
        Ok(InterpolantStd {
            m: self.m,
            coeffs: self
                .coeffs
                .clone()
                .with_grid(rescaled_grid(self.grid(), s)?),
        })
    }
}

pub fn eval_psi_std<T: Real>(i: &InterpolantStd<T>, p: &Point3<T>) -> Complex<T> {
    i.eval(p)
}

/// `c_klm = N⁻³ Σ_{r,s,t} f(x_r,y_s,z_t) e^{−2πi(k x_r + l y_s + m z_t)}`.
pub fn std_interpolate<T: Real>(s: &CubeSamples<T>) -> Result<InterpolantStd<T>> {
    let g = s.grid;
    let m = odd_half(g.n())?;
    let labels = DomainRange::symmetric(m);
    let data = Cube::from_flat(DomainRange::grid(g.n()), s.values.clone());
    let table = PhaseTable::coords_by_labels(labels, &g.unit_axis(), true);
    let n3 = cast::<T>(g.n() as f64).powi(3);
    let values = data
        .contract(&table, &table, &table)
        .into_iter()
        .map(|v| v / n3)
        .collect();
    Ok(InterpolantStd {
        m,
        coeffs: CoefficientSet::from_values(g, Role::CStd, values)?,
    })
}

/// Evaluates a dense label cube on a tensor grid one `z` slice at a time.
pub struct TensorEvaluator<T> {
    cube: Cube<T>,
    tx: PhaseTable<T>,
    ty: PhaseTable<T>,
    tz: PhaseTable<T>,
}

impl<T: Real> TensorEvaluator<T> {
    fn new(cube: Cube<T>, labels: DomainRange, period: T, xs: &[T], ys: &[T], zs: &[T]) -> Self {
        let unit = |v: &[T]| v.iter().map(|&c| c / period).collect::<Vec<_>>();
        TensorEvaluator {
            cube,
            tx: PhaseTable::labels_by_coords(labels, &unit(xs), false),
            ty: PhaseTable::labels_by_coords(labels, &unit(ys), false),
            tz: PhaseTable::labels_by_coords(labels, &unit(zs), false),
        }
    }

    pub fn slice_count(&self) -> usize {
        self.tz.cols()
    }

    /// Values at `(xs[i], ys[j], zs[k])`, indexed `i * ys.len() + j`.
    pub fn slice(&self, k: usize) -> Vec<Complex<T>> {
        self.cube.contract_slice(&self.tx, &self.ty, &self.tz, k)
    }

    /// All values, lexicographic in `(i, j, k)`.
    pub fn all(&self) -> Vec<Complex<T>> {
        self.cube.contract(&self.tx, &self.ty, &self.tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_domain::{enumerate_domain, grid_points};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn random_samples(g: GridSpec<f64>, seed: u64) -> SampleSet<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = (0..g.point_count())
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        SampleSet::from_values(g, v).unwrap()
    }

    #[test]
    fn constant_function() {
        let g = GridSpec::new(0.0, 0.5, 5, 1.0).unwrap();
        let s = SampleSet::from_fn(g, |_| Complex::new(1.0, 0.0));
        for i in [
            alt_interpolate_direct(&s).unwrap(),
            alt_interpolate(&s).unwrap(),
        ] {
            for (k, v) in i.coefficients().iter() {
                let want = if *k == Triple::new(0, 0, 0) {
                    1.0 / 3.0
                } else {
                    0.0
                };
                assert!((v - Complex::new(want, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn basis_functions_give_deltas() {
        let g = GridSpec::new(0.1, 0.3, 5, 1.0).unwrap();
        for label in [
            Triple::new(1, -1, -2),
            Triple::new(1, 2, -2),
            Triple::new(-1, -1, -1),
            Triple::new(0, -1, -2),
        ] {
            assert!(label.is_semidominant());
            let s = SampleSet::from_fn(g, |p| eval_e(&label, p));
            for i in [
                alt_interpolate_direct(&s).unwrap(),
                alt_interpolate(&s).unwrap(),
            ] {
                for (k, v) in i.coefficients().iter() {
                    let want = if *k == label { 1.0 } else { 0.0 };
                    assert!(
                        (v - Complex::new(want, 0.0)).norm() < 1e-12,
                        "{label} {k} {v}"
                    );
                }
            }
        }
    }

    #[test]
    fn grid_constraint_and_count() {
        let g = GridSpec::unit(3).unwrap();
        let s = random_samples(g, 3);
        let i = alt_interpolate_direct(&s).unwrap();
        assert_eq!(i.coefficients().len(), 11);
        for (idx, f) in s.iter() {
            assert!((i.eval(&g.point(idx)) - f).norm() < 1e-11);
        }
    }

    #[test]
    fn even_density_rejected() {
        let g = GridSpec::unit(4).unwrap();
        let s = random_samples(g, 4);
        assert!(matches!(
            alt_interpolate_direct(&s),
            Err(Error::UnsupportedParity(4))
        ));
        assert!(matches!(
            alt_interpolate(&s),
            Err(Error::UnsupportedParity(4))
        ));
        let c = CubeSamples::from_fn(g, |_| Complex::new(1.0, 0.0));
        assert!(matches!(
            std_interpolate(&c),
            Err(Error::UnsupportedParity(4))
        ));
    }

    #[test]
    fn remap_identity_region_and_dimension_check() {
        let g = GridSpec::unit(5).unwrap();
        let beta = adft_forward(&random_samples(g, 8));
        let c = remap_beta_to_c(&beta, 2).unwrap();
        for (k, v) in c.iter() {
            if RemapRegion::AllNonNegative.contains(k, 2) {
                assert_eq!(*v, beta.get(k).unwrap());
            }
        }
        assert!(matches!(
            remap_beta_to_c(&beta, 3),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn remap_regions_partition_domain() {
        for m in 1..=3usize {
            let n = 2 * m + 1;
            let dom = enumerate_domain(DomainRange::symmetric(m));
            assert_eq!(dom.len(), (2 * m + 1) * (4 * m * m + 4 * m + 3) / 3);
            let mut targets = BTreeSet::new();
            for t in &dom {
                let hits = RemapRegion::ALL.iter().filter(|r| r.contains(t, m)).count();
                assert_eq!(hits, 1, "{t}");
                let (_, target, _) = remap_target(t, m).unwrap();
                assert!(target.is_semidominant(), "{t} -> {target}");
                assert!([target.k, target.l, target.m]
                    .iter()
                    .all(|x| (0..n as i64).contains(x)));
                // target is a cyclic rotation of t with entries reduced mod N
                let red = Triple::new(
                    t.k.rem_euclid(n as i64),
                    t.l.rem_euclid(n as i64),
                    t.m.rem_euclid(n as i64),
                );
                assert_eq!(red.canonical(), target);
                targets.insert(target);
            }
            assert_eq!(targets.len(), dom.len(), "remap must be a bijection");
        }
    }

    #[test]
    fn remap_matches_direct_on_shifted_grids() {
        for (n, a, b) in [
            (3, 0.0, 0.0),
            (5, 0.0, 0.5),
            (7, 0.37, 0.42),
            (5, -2.1, 1.0),
        ] {
            let g = GridSpec::new(a, b, n, 1.0).unwrap();
            let s = random_samples(g, n as u64 * 31);
            let direct = alt_interpolate_direct(&s).unwrap();
            let via = alt_interpolate(&s).unwrap();
            assert!(direct.coefficients().max_abs_diff(via.coefficients()) < 1e-12);
        }
    }

    #[test]
    fn faulty_table_is_detected() {
        let g = GridSpec::unit(5).unwrap();
        let s = random_samples(g, 99);
        let direct = alt_interpolate_direct(&s).unwrap();
        let bad = remap_with(&adft_forward(&s), 2, true).unwrap();
        assert!(direct.coefficients().max_abs_diff(&bad) > 1e-3);
    }

    #[test]
    fn eval_trivial_cases() {
        let g = GridSpec::unit(3).unwrap();
        let zero = InterpolantAlt::from_coefficients(
            CoefficientSet::from_values(g, Role::CAlt, vec![Complex::new(0.0, 0.0); 11]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            zero.eval(&Point3::new(0.2, 0.3, 0.4)),
            Complex::new(0.0, 0.0)
        );
        let d = InterpolantAlt::from_coefficients(
            CoefficientSet::delta(g, Role::CAlt, &Triple::new(0, 0, 0)).unwrap(),
        )
        .unwrap();
        assert!(
            (eval_psi_alt(&d, &Point3::new(0.7, -0.1, 3.3)) - Complex::new(3.0, 0.0)).norm()
                < 1e-14
        );
    }

    #[test]
    fn tensor_matches_pointwise() {
        let g = GridSpec::new(0.0, 0.5, 5, 1.0).unwrap();
        let i = alt_interpolate(&random_samples(g, 5)).unwrap();
        let xs = [0.05, 0.5, 0.93];
        let ys = [0.1, 0.8];
        let zs = [0.0, 0.25];
        let all = i.tensor(&xs, &ys, &zs).all();
        for (a, x) in xs.iter().enumerate() {
            for (b, y) in ys.iter().enumerate() {
                for (c, z) in zs.iter().enumerate() {
                    let v = all[(a * 2 + b) * 2 + c];
                    assert!((v - i.eval(&Point3::new(*x, *y, *z))).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn psi_inherits_cyclic_symmetry() {
        let g = GridSpec::unit(5).unwrap();
        let i = alt_interpolate(&random_samples(g, 12)).unwrap();
        let p = Point3::new(0.31, 0.72, 0.05);
        assert!((i.eval(&p) - i.eval(&p.rotate())).norm() < 1e-12);
    }

    #[test]
    fn std_interpolation() {
        let g = GridSpec::unit(3).unwrap();
        let one = std_interpolate(&CubeSamples::from_fn(g, |_| Complex::new(1.0, 0.0))).unwrap();
        for (k, v) in one.coefficients().iter() {
            let want = if *k == Triple::new(0, 0, 0) { 1.0 } else { 0.0 };
            assert!((v - Complex::new(want, 0.0)).norm() < 1e-14);
        }

        let g = GridSpec::new(0.2, 0.5, 5, 1.0).unwrap();
        let (k0, l0, m0) = (2.0, -1.0, 1.0);
        let wave = CubeSamples::from_fn(g, |p| {
            Complex::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * (k0 * p.x + l0 * p.y + m0 * p.z),
            )
        });
        let i = std_interpolate(&wave).unwrap();
        for (k, v) in i.coefficients().iter() {
            let want = if *k == Triple::new(2, -1, 1) {
                1.0
            } else {
                0.0
            };
            assert!((v - Complex::new(want, 0.0)).norm() < 1e-12);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = GridSpec::unit(3).unwrap();
        let vals: Vec<_> = (0..27)
            .map(|_| Complex::new(rng.gen::<f64>(), rng.gen::<f64>()))
            .collect();
        let s = CubeSamples::from_values(g, vals).unwrap();
        let i = std_interpolate(&s).unwrap();
        for (idx, p) in cube_points(&g) {
            assert!((eval_psi_std(&i, &p) - s.get(&idx)).norm() < 1e-11);
        }
    }

    #[test]
    fn std_fast_matches_direct_formula() {
        use std::f64::consts::PI;
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        let g = GridSpec::new(0.3, 0.25, 5, 1.0).unwrap();
        let vals: Vec<_> = (0..125)
            .map(|_| Complex::new(rng.gen::<f64>(), rng.gen::<f64>()))
            .collect();
        let s = CubeSamples::from_values(g, vals).unwrap();
        let i = std_interpolate(&s).unwrap();
        for (t, c) in i.coefficients().iter() {
            let mut acc = Complex::new(0.0, 0.0);
            for (idx, p) in cube_points(&g) {
                let th = -2.0 * PI * (t.k as f64 * p.x + t.l as f64 * p.y + t.m as f64 * p.z);
                acc += s.get(&idx) * Complex::from_polar(1.0, th);
            }
            assert!((acc / 125.0 - c).norm() < 1e-12);
        }
    }

    #[test]
    fn rescale() {
        let g = GridSpec::new(0.0, 0.5, 5, 1.0).unwrap();
        let i = alt_interpolate(&random_samples(g, 21)).unwrap();
        let same = i.rescaled(1.0).unwrap();
        let p = Point3::new(0.3, 0.6, 0.1);
        assert!((same.eval(&p) - i.eval(&p)).norm() < 1e-14);
        let twice = i.rescaled(2.0).unwrap();
        assert!((twice.eval(&Point3::splat(1.0)) - i.eval(&Point3::splat(0.5))).norm() < 1e-13);
        assert!(i.rescaled(0.0).is_err());
        assert!(i.rescaled(-1.0).is_err());

        // interpolating period-2 samples equals rescaling the interpolant of the pullback
        let f = |p: &Point3<f64>| Complex::new((p.x * 3.0).sin() + p.y * p.z, p.x - p.z);
        let g2 = GridSpec::new(0.4, 0.5, 5, 2.0).unwrap();
        let g1 = GridSpec::new(0.2, 0.5, 5, 1.0).unwrap();
        let direct = alt_interpolate(&SampleSet::from_fn(g2, f)).unwrap();
        let pulled = alt_interpolate(&SampleSet::from_fn(g1, |p| f(&p.scale(2.0))))
            .unwrap()
            .rescaled(2.0)
            .unwrap();
        assert!(direct.coefficients().max_abs_diff(pulled.coefficients()) < 1e-13);
        for (_, p) in grid_points(&g2) {
            assert!((direct.eval(&p) - pulled.eval(&p)).norm() < 1e-12);
        }
    }
}
