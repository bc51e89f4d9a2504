//! Semidominant index triples, the enumeration domain `D(N1, N2)`, the
//! fundamental domain `F = {(x,y,z) ∈ (0,1)³ : x > z, y > z}` and the shifted
//! sampling lattices built on top of them.
//!
//! Every enumeration in the crate is lexicographic ascending in `(k, l, m)`;
//! sample and coefficient vectors are stored in this order.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cast, Real};

/// A label `(λ, μ, ν)` or grid index `(r, s, t)`.
///
/// The same struct carries integer labels (`Triple<i64>`, see [`IndexTriple`])
/// and continuous labels (`Triple<f64>`).
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Triple<S> {
    pub k: S,
    pub l: S,
    pub m: S,
}

/// Integer label or integer grid index.
pub type IndexTriple = Triple<i64>;

impl<S> Triple<S> {
    pub const fn new(k: S, l: S, m: S) -> Self {
        Triple { k, l, m }
    }
}

impl<S: Copy + PartialOrd> Triple<S> {
    /// `k ≥ l ≥ m` or `l > k > m`. Exact comparison, no tolerance.
    pub fn is_semidominant(&self) -> bool {
        (self.k >= self.l && self.l >= self.m) || (self.l > self.k && self.k > self.m)
    }

    /// Cyclic rotation `(k, l, m) → (m, k, l)`. Alternating functions are
    /// invariant under it.
    pub fn rotate(&self) -> Self {
        Triple::new(self.m, self.k, self.l)
    }

    /// The unique semidominant cyclic rotation of `self`.
    pub fn canonical(&self) -> Self {
        let mut t = *self;
        for _ in 0..3 {
            if t.is_semidominant() {
                return t;
            }
            t = t.rotate();
        }
        // Only reachable through incomparable values (NaN).
        *self
    }

    pub fn is_diagonal(&self) -> bool {
        self.k == self.l && self.l == self.m
    }

    /// Multiplicity weight `G`: 3 on the diagonal `k = l = m`, 1 elsewhere.
    pub fn weight(&self) -> u32 {
        if self.is_diagonal() {
            3
        } else {
            1
        }
    }
}

impl IndexTriple {
    pub fn sum(&self) -> i64 {
        self.k + self.l + self.m
    }

    pub fn to_real<T: Real>(&self) -> Triple<T> {
        Triple::new(
            crate::scalar::from_int(self.k),
            crate::scalar::from_int(self.l),
            crate::scalar::from_int(self.m),
        )
    }
}

impl<S: fmt::Display> fmt::Display for Triple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.l, self.m)
    }
}

/// Closed integer range `{lo, …, hi}` for the entries of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainRange {
    pub lo: i64,
    pub hi: i64,
}

impl DomainRange {
    pub const fn new(lo: i64, hi: i64) -> Self {
        DomainRange { lo, hi }
    }

    /// `{0, …, n-1}`, the grid-index range of density `n`.
    pub const fn grid(n: usize) -> Self {
        DomainRange::new(0, n as i64 - 1)
    }

    /// `{-m, …, m}`, the label range of an interpolant with `N = 2m+1`.
    pub const fn symmetric(m: usize) -> Self {
        DomainRange::new(-(m as i64), m as i64)
    }

    pub fn width(&self) -> usize {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// All semidominant triples with entries in the range, lexicographically
/// ordered. An empty range gives an empty list.
pub fn enumerate_domain(range: DomainRange) -> Vec<IndexTriple> {
    let mut out = Vec::with_capacity(domain_size(range.width()));
    for k in range.lo..=range.hi {
        for l in range.lo..=range.hi {
            for m in range.lo..=range.hi {
                let t = Triple::new(k, l, m);
                if t.is_semidominant() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// `|D(0, n-1)| = n(n²+2)/3`.
pub const fn domain_size(n: usize) -> usize {
    n * (n * n + 2) / 3
}

/// Position lookup for triples of an enumerated domain.
#[derive(Clone, Debug)]
pub struct DomainIndex {
    range: DomainRange,
    slots: Vec<u32>,
    len: usize,
}

impl DomainIndex {
    const EMPTY: u32 = u32::MAX;

    pub fn new(range: DomainRange) -> Self {
        let w = range.width();
        let mut slots = vec![Self::EMPTY; w * w * w];
        let keys = enumerate_domain(range);
        for (i, t) in keys.iter().enumerate() {
            slots[Self::offset(range, t)] = i as u32;
        }
        DomainIndex {
            range,
            slots,
            len: keys.len(),
        }
    }

    fn offset(range: DomainRange, t: &IndexTriple) -> usize {
        let w = range.width();
        let (a, b, c) = (
            (t.k - range.lo) as usize,
            (t.l - range.lo) as usize,
            (t.m - range.lo) as usize,
        );
        (a * w + b) * w + c
    }

    pub fn range(&self) -> DomainRange {
        self.range
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Enumeration position of `t`, or `None` when it is outside the domain.
    pub fn position(&self, t: &IndexTriple) -> Option<usize> {
        let r = self.range;
        if !(r.contains(t.k) && r.contains(t.l) && r.contains(t.m)) {
            return None;
        }
        match self.slots[Self::offset(r, t)] {
            Self::EMPTY => None,
            i => Some(i as usize),
        }
    }
}

/// A point of ℝ³.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Point3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }

    pub fn splat(a: T) -> Self {
        Point3::new(a, a, a)
    }

    /// `(x, y, z) → (z, x, y)`.
    pub fn rotate(&self) -> Self {
        Point3::new(self.z, self.x, self.y)
    }

    pub fn scale(&self, s: T) -> Self {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

impl<T: Real> Add for Point3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Point3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Mul<T> for Point3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

/// Membership in the open fundamental domain: all coordinates in `(0, 1)`,
/// `x > z` and `y > z`.
pub fn in_fundamental_domain<T: Real>(p: &Point3<T>) -> bool {
    let inside = |c: T| c > T::zero() && c < T::one();
    inside(p.x) && inside(p.y) && inside(p.z) && p.x > p.z && p.y > p.z
}

/// Parameters of the shifted lattice with points
/// `a + (r + b)·T/N` along each axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec<T> {
    a: T,
    b: T,
    n: usize,
    period: T,
}

impl<T: Real> GridSpec<T> {
    pub fn new(a: T, b: T, n: usize, period: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "grid density N must be at least 1".into(),
            ));
        }
        if !(b >= T::zero() && b <= T::one()) {
            return Err(Error::InvalidArgument(format!(
                "offset b = {b} is outside [0, 1]"
            )));
        }
        if !period.is_finite() || period <= T::zero() {
            return Err(Error::InvalidArgument(format!(
                "period T = {period} must be positive"
            )));
        }
        if !a.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "shift a = {a} is not finite"
            )));
        }
        Ok(GridSpec { a, b, n, period })
    }

    /// `a = 0, b = 0, T = 1`.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new(T::zero(), T::zero(), n, T::one())
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> T {
        self.period
    }

    /// `M` with `N = 2M + 1`, or `None` for even `N`.
    pub fn half(&self) -> Option<usize> {
        (self.n % 2 == 1).then_some(self.n / 2)
    }

    /// Same lattice with every point multiplied by `s`.
    pub fn scaled(&self, s: T) -> Result<Self> {
        Self::new(self.a * s, self.b, self.n, self.period * s)
    }

    /// Number of points of the semidominant lattice, `N(N²+2)/3`.
    pub fn point_count(&self) -> usize {
        domain_size(self.n)
    }

    /// Coordinate `a + (r + b)·T/N`.
    pub fn coordinate(&self, r: i64) -> T {
        self.a + (crate::scalar::from_int::<T>(r) + self.b) * self.period / cast::<T>(self.n as f64)
    }

    /// Coordinate divided by the period, `a/T + (r + b)/N`.
    pub fn unit_coordinate(&self, r: i64) -> T {
        self.a / self.period + (crate::scalar::from_int::<T>(r) + self.b) / cast::<T>(self.n as f64)
    }

    pub fn point(&self, idx: &IndexTriple) -> Point3<T> {
        Point3::new(
            self.coordinate(idx.k),
            self.coordinate(idx.l),
            self.coordinate(idx.m),
        )
    }

    pub fn unit_point(&self, idx: &IndexTriple) -> Point3<T> {
        Point3::new(
            self.unit_coordinate(idx.k),
            self.unit_coordinate(idx.l),
            self.unit_coordinate(idx.m),
        )
    }

    /// Unit coordinates of the `N` lattice lines of one axis.
    pub fn unit_axis(&self) -> Vec<T> {
        (0..self.n as i64)
            .map(|r| self.unit_coordinate(r))
            .collect()
    }

    /// Grid indices `D(0, N-1)` in enumeration order.
    pub fn indices(&self) -> Vec<IndexTriple> {
        enumerate_domain(DomainRange::grid(self.n))
    }
}

/// The semidominant lattice: one point per `(r, s, t) ∈ D(0, N-1)`, in
/// enumeration order.
pub fn grid_points<T: Real>(g: &GridSpec<T>) -> Vec<(IndexTriple, Point3<T>)> {
    g.indices().into_iter().map(|i| (i, g.point(&i))).collect()
}

/// The full `N³` cubic lattice, lexicographic in `(r, s, t)`.
pub fn cube_points<T: Real>(g: &GridSpec<T>) -> Vec<(IndexTriple, Point3<T>)> {
    let n = g.n() as i64;
    let mut out = Vec::with_capacity(g.n().pow(3));
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                let i = Triple::new(r, s, t);
                out.push((i, g.point(&i)));
            }
        }
    }
    out
}
