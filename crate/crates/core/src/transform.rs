//! Discrete orthogonality of the alternating functions on the semidominant
//! lattice and the alternating discrete Fourier transform (ADFT).
//!
//! Forward:
//! ```text
//! β_klm = 1/(G_klm N³) Σ_{(r,s,t)} G_rst⁻¹ f(x_r,y_s,z_t) conj(E_klm(x_r,y_s,z_t))
//! ```
//! Inverse: `f(x_r,y_s,z_t) = Σ_{(k,l,m)} β_klm E_klm(x_r,y_s,z_t)`.
//!
//! Lattice points enter the functions in units of the period, `p / T`.
//! Two implementations are kept: a direct double sum (`*_naive`, the
//! reference) and a separable one routed through one-dimensional phase
//! tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alt_functions::eval_e;
use crate::error::{Error, Result};
use crate::index_domain::{enumerate_domain, DomainRange, GridSpec, IndexTriple, Point3};
use crate::phase::{Cube, PhaseTable};
use crate::scalar::{cast, Real};

/// What a [`CoefficientSet`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// ADFT coefficients over `D(0, N-1)`.
    Beta,
    /// Alternating interpolation coefficients over `D(-M, M)`.
    CAlt,
    /// Standard trigonometric interpolation coefficients over `[-M, M]³`.
    CStd,
}

impl Role {
    /// Key set required for this role on grid density `n`.
    pub fn keys(&self, n: usize) -> Result<Vec<IndexTriple>> {
        match self {
            Role::Beta => Ok(enumerate_domain(DomainRange::grid(n))),
            Role::CAlt => {
                let m = odd_half(n)?;
                Ok(enumerate_domain(DomainRange::symmetric(m)))
            }
            Role::CStd => {
                let m = odd_half(n)? as i64;
                let mut keys = Vec::with_capacity(n.pow(3));
                for k in -m..=m {
                    for l in -m..=m {
                        for mm in -m..=m {
                            keys.push(IndexTriple::new(k, l, mm));
                        }
                    }
                }
                Ok(keys)
            }
        }
    }
}

pub(crate) fn odd_half(n: usize) -> Result<usize> {
    if n % 2 == 1 {
        Ok(n / 2)
    } else {
        Err(Error::UnsupportedParity(n))
    }
}

/// Builds values in key order from a map, checking the key set exactly.
fn values_from_map<T: Real, F>(
    keys: &[IndexTriple],
    mut map: BTreeMap<IndexTriple, Complex<T>>,
    missing: F,
) -> Result<Vec<Complex<T>>>
where
    F: Fn(IndexTriple) -> Error,
{
    let mut values = Vec::with_capacity(keys.len());
    for k in keys {
        values.push(map.remove(k).ok_or_else(|| missing(*k))?);
    }
    if let Some((extra, _)) = map.into_iter().next() {
        return Err(Error::UnexpectedKey(extra));
    }
    Ok(values)
}

/// Values of a function on the semidominant lattice, keyed by
/// `(r, s, t) ∈ D(0, N-1)` and stored in enumeration order.
#[derive(Clone, Debug)]
pub struct SampleSet<T> {
    grid: GridSpec<T>,
    keys: Arc<Vec<IndexTriple>>,
    values: Vec<Complex<T>>,
}

impl<T: Real> SampleSet<T> {
    /// Values given in enumeration order.
    pub fn from_values(grid: GridSpec<T>, values: Vec<Complex<T>>) -> Result<Self> {
        let keys = grid.indices();
        if values.len() != keys.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} samples for a grid of {} points (N = {})",
                values.len(),
                keys.len(),
                grid.n()
            )));
        }
        Ok(SampleSet {
            grid,
            keys: Arc::new(keys),
            values,
        })
    }

    pub fn from_map(grid: GridSpec<T>, map: BTreeMap<IndexTriple, Complex<T>>) -> Result<Self> {
        let keys = grid.indices();
        let values = values_from_map(&keys, map, Error::MissingSample)?;
        Ok(SampleSet {
            grid,
            keys: Arc::new(keys),
            values,
        })
    }

    /// Samples `f` at every lattice point.
    pub fn from_fn<F>(grid: GridSpec<T>, f: F) -> Self
    where
        F: Fn(&Point3<T>) -> Complex<T> + Sync,
    {
        let keys = grid.indices();
        let values = keys.par_iter().map(|i| f(&grid.point(i))).collect();
        SampleSet {
            grid,
            keys: Arc::new(keys),
            values,
        }
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn keys(&self) -> &[IndexTriple] {
        &self.keys
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, idx: &IndexTriple) -> Option<Complex<T>> {
        self.keys.binary_search(idx).ok().map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndexTriple, &Complex<T>)> {
        self.keys.iter().zip(self.values.iter())
    }

    /// Largest `|self − other|` over the lattice.
    pub fn max_abs_diff(&self, other: &SampleSet<T>) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

/// Coefficients keyed by label triple, in enumeration order.
#[derive(Clone, Debug)]
pub struct CoefficientSet<T> {
    grid: GridSpec<T>,
    role: Role,
    keys: Arc<Vec<IndexTriple>>,
    values: Vec<Complex<T>>,
}

impl<T: Real> CoefficientSet<T> {
    pub fn from_values(grid: GridSpec<T>, role: Role, values: Vec<Complex<T>>) -> Result<Self> {
        let keys = role.keys(grid.n())?;
        if values.len() != keys.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients where role {:?} on N = {} needs {}",
                values.len(),
                role,
                grid.n(),
                keys.len()
            )));
        }
        Ok(CoefficientSet {
            grid,
            role,
            keys: Arc::new(keys),
            values,
        })
    }

    pub fn from_map(
        grid: GridSpec<T>,
        role: Role,
        map: BTreeMap<IndexTriple, Complex<T>>,
    ) -> Result<Self> {
        let keys = role.keys(grid.n())?;
        let values = values_from_map(&keys, map, Error::MissingCoefficient)?;
        Ok(CoefficientSet {
            grid,
            role,
            keys: Arc::new(keys),
            values,
        })
    }

    /// A single unit coefficient at `at`, zeros elsewhere.
    pub fn delta(grid: GridSpec<T>, role: Role, at: &IndexTriple) -> Result<Self> {
        let keys = role.keys(grid.n())?;
        let pos = keys
            .iter()
            .position(|k| k == at)
            .ok_or(Error::UnexpectedKey(*at))?;
        let mut values = vec![Complex::new(T::zero(), T::zero()); keys.len()];
        values[pos] = Complex::new(T::one(), T::zero());
        Ok(CoefficientSet {
            grid,
            role,
            keys: Arc::new(keys),
            values,
        })
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn keys(&self) -> &[IndexTriple] {
        &self.keys
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: &IndexTriple) -> Option<Complex<T>> {
        self.keys.binary_search(k).ok().map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndexTriple, &Complex<T>)> {
        self.keys.iter().zip(self.values.iter())
    }

    pub fn max_abs_diff(&self, other: &CoefficientSet<T>) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub(crate) fn with_grid(mut self, grid: GridSpec<T>) -> Self {
        self.grid = grid;
        self
    }
}

fn require_role<T: Real>(c: &CoefficientSet<T>, role: Role) -> Result<()> {
    if c.role != role {
        return Err(Error::InvalidArgument(format!(
            "expected {role:?} coefficients, got {:?}",
            c.role
        )));
    }
    Ok(())
}

fn n_cubed<T: Real>(n: usize) -> T {
    cast::<T>(n as f64).powi(3)
}

/// Reference forward ADFT: direct double sum.
pub fn adft_forward_naive<T: Real>(s: &SampleSet<T>) -> CoefficientSet<T> {
    let g = s.grid;
    let pts: Vec<Point3<T>> = s.keys.iter().map(|i| g.unit_point(i)).collect();
    let weights: Vec<T> = s
        .keys
        .iter()
        .map(|i| T::one() / cast::<T>(i.weight() as f64))
        .collect();
    let n3 = n_cubed::<T>(g.n());
    let values = s
        .keys
        .par_iter()
        .map(|label| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for ((p, w), f) in pts.iter().zip(&weights).zip(&s.values) {
                acc += f * eval_e(label, p).conj() * *w;
            }
            acc / (cast::<T>(label.weight() as f64) * n3)
        })
        .collect();
    CoefficientSet {
        grid: g,
        role: Role::Beta,
        keys: s.keys.clone(),
        values,
    }
}

/// Forward ADFT through separable phase tables, `O(N⁴)`.
pub fn adft_forward<T: Real>(s: &SampleSet<T>) -> CoefficientSet<T> {
    let g = s.grid;
    let range = DomainRange::grid(g.n());
    let mut data = Cube::zeros(range);
    for (i, f) in s.iter() {
        data.set(i, f / cast::<T>(i.weight() as f64));
    }
    let table = PhaseTable::coords_by_labels(range, &g.unit_axis(), true);
    let sums = Cube::from_flat(range, data.contract(&table, &table, &table));
    let n3 = n_cubed::<T>(g.n());
    let values = s
        .keys
        .iter()
        .map(|label| sums.alternating_sum(label) / (cast::<T>(label.weight() as f64) * n3))
        .collect();
    CoefficientSet {
        grid: g,
        role: Role::Beta,
        keys: s.keys.clone(),
        values,
    }
}

/// Reference inverse ADFT: direct sum of `β E` at every lattice point.
pub fn adft_inverse_naive<T: Real>(c: &CoefficientSet<T>) -> Result<SampleSet<T>> {
    require_role(c, Role::Beta)?;
    let g = c.grid;
    let idx = g.indices();
    let values = idx
        .par_iter()
        .map(|i| {
            let p = g.unit_point(i);
            c.iter()
                .fold(Complex::new(T::zero(), T::zero()), |acc, (label, b)| {
                    acc + b * eval_e(label, &p)
                })
        })
        .collect();
    SampleSet::from_values(g, values)
}

/// Inverse ADFT through separable phase tables.
pub fn adft_inverse<T: Real>(c: &CoefficientSet<T>) -> Result<SampleSet<T>> {
    require_role(c, Role::Beta)?;
    let g = c.grid;
    let dense = synthesize_on_axes(c, DomainRange::grid(g.n()), &g.unit_axis());
    let idx = g.indices();
    let n = g.n();
    let values = idx
        .iter()
        .map(|i| dense[((i.k as usize) * n + i.l as usize) * n + i.m as usize])
        .collect();
    SampleSet::from_values(g, values)
}

/// `Σ c_klm E_klm` on the tensor grid `axis³` (unit coordinates), returned
/// lexicographic. `labels` must cover every key of `c`.
pub(crate) fn synthesize_on_axes<T: Real>(
    c: &CoefficientSet<T>,
    labels: DomainRange,
    axis: &[T],
) -> Vec<Complex<T>> {
    let cube = alternating_cube(c, labels);
    let table = PhaseTable::labels_by_coords(labels, axis, false);
    cube.contract(&table, &table, &table)
}

/// Dense cube with each coefficient spread over the three cyclic label
/// rotations (or placed once for plain exponentials).
pub(crate) fn alternating_cube<T: Real>(c: &CoefficientSet<T>, labels: DomainRange) -> Cube<T> {
    let mut cube = Cube::zeros(labels);
    for (k, v) in c.iter() {
        match c.role {
            Role::CStd => cube.add(k, *v),
            _ => cube.add_alternating(k, *v),
        }
    }
    cube
}

/// Weighted Gram matrix `Σ G_rst⁻¹ E_klm conj(E_k'l'm')` of the alternating
/// functions on the lattice, row-major over `D(0, N-1)²`.
#[derive(Clone, Debug)]
pub struct Gram<T> {
    pub keys: Vec<IndexTriple>,
    pub data: Vec<Complex<T>>,
}

impl<T: Real> Gram<T> {
    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.dim() + j]
    }

    /// Largest deviation of `Gram / N³` from `diag(G_klm)`.
    pub fn max_normalized_deviation(&self, n: usize) -> T {
        let n3 = n_cubed::<T>(n);
        let d = self.dim();
        let mut worst = T::zero();
        for i in 0..d {
            for j in 0..d {
                let target = if i == j {
                    cast::<T>(self.keys[i].weight() as f64)
                } else {
                    T::zero()
                };
                let dev = (self.get(i, j) / n3 - Complex::new(target, T::zero())).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }
}

pub fn discrete_gram<T: Real>(g: &GridSpec<T>) -> Gram<T> {
    let keys = g.indices();
    let p = keys.len();
    // values[point][label]
    let values: Vec<Vec<Complex<T>>> = keys
        .par_iter()
        .map(|i| {
            let x = g.unit_point(i);
            keys.iter().map(|label| eval_e(label, &x)).collect()
        })
        .collect();
    let weights: Vec<T> = keys
        .iter()
        .map(|i| T::one() / cast::<T>(i.weight() as f64))
        .collect();
    let data = (0..p * p)
        .into_par_iter()
        .map(|ij| {
            let (a, b) = (ij / p, ij % p);
            let mut acc = Complex::new(T::zero(), T::zero());
            for (row, w) in values.iter().zip(&weights) {
                acc += row[a] * row[b].conj() * *w;
            }
            acc
        })
        .collect();
    Gram { keys, data }
}
