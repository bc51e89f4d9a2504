//! Precomputed one-dimensional phase tables and the separable three-axis
//! contraction that all fast transforms and tensor-grid evaluations share.
//!
//! A sum `Σ_{a,b,c} C[a,b,c] X[a,i] Y[b,j] Z[c,k]` over a dense cube is
//! evaluated one axis at a time, which turns an `O(n⁶)` double loop into
//! `O(n⁴)` work.

use num_complex::Complex;
use rayon::prelude::*;

use crate::index_domain::{DomainRange, IndexTriple, Triple};
use crate::scalar::{frac, from_int, turn, Real};

/// Dense row-major matrix of phases, `rows × cols`.
#[derive(Clone, Debug)]
pub struct PhaseTable<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> PhaseTable<T> {
    /// `table[n - lo, j] = e^{±2πi n x_j}` for `n ∈ labels`.
    ///
    /// Coordinates and products are reduced modulo 1 before exponentiation.
    pub fn labels_by_coords(labels: DomainRange, coords: &[T], conjugate: bool) -> Self {
        let rows = labels.width();
        let cols = coords.len();
        let mut data = Vec::with_capacity(rows * cols);
        for n in labels.lo..=labels.hi {
            let nf: T = from_int(n);
            for &x in coords {
                let e = turn(frac(nf * frac(x)));
                data.push(if conjugate { e.conj() } else { e });
            }
        }
        PhaseTable { rows, cols, data }
    }

    /// Transposed layout: `table[j, n - lo]`.
    pub fn coords_by_labels(labels: DomainRange, coords: &[T], conjugate: bool) -> Self {
        let t = Self::labels_by_coords(labels, coords, conjugate);
        let mut data = Vec::with_capacity(t.data.len());
        for j in 0..t.cols {
            for n in 0..t.rows {
                data.push(t.data[n * t.cols + j]);
            }
        }
        PhaseTable {
            rows: t.cols,
            cols: t.rows,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.cols + col]
    }

    #[inline]
    fn row(&self, row: usize) -> &[Complex<T>] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }
}

/// Dense cube of complex values over `range³`, lexicographic.
#[derive(Clone, Debug)]
pub struct Cube<T> {
    range: DomainRange,
    data: Vec<Complex<T>>,
}

impl<T: Real> Cube<T> {
    pub fn zeros(range: DomainRange) -> Self {
        let w = range.width();
        Cube {
            range,
            data: vec![Complex::new(T::zero(), T::zero()); w * w * w],
        }
    }

    /// Wraps contraction output (lexicographic, `width³` entries).
    pub fn from_flat(range: DomainRange, data: Vec<Complex<T>>) -> Self {
        assert_eq!(range.width().pow(3), data.len(), "cube size mismatch");
        Cube { range, data }
    }

    pub fn width(&self) -> usize {
        self.range.width()
    }

    #[inline]
    fn offset(&self, t: &IndexTriple) -> usize {
        let w = self.width();
        let lo = self.range.lo;
        (((t.k - lo) as usize) * w + (t.l - lo) as usize) * w + (t.m - lo) as usize
    }

    pub fn get(&self, t: &IndexTriple) -> Complex<T> {
        self.data[self.offset(t)]
    }

    pub fn set(&mut self, t: &IndexTriple, v: Complex<T>) {
        let o = self.offset(t);
        self.data[o] = v;
    }

    pub fn add(&mut self, t: &IndexTriple, v: Complex<T>) {
        let o = self.offset(t);
        self.data[o] += v;
    }

    /// Adds `v` at `(k,l,m)`, `(l,m,k)` and `(m,k,l)`: the three plain
    /// exponentials making up `E_(k,l,m)`.
    pub fn add_alternating(&mut self, t: &IndexTriple, v: Complex<T>) {
        self.add(t, v);
        self.add(&Triple::new(t.l, t.m, t.k), v);
        self.add(&Triple::new(t.m, t.k, t.l), v);
    }

    /// Sum of the entries at `(k,l,m)`, `(l,m,k)`, `(m,k,l)`.
    pub fn alternating_sum(&self, t: &IndexTriple) -> Complex<T> {
        self.get(t) + self.get(&Triple::new(t.l, t.m, t.k)) + self.get(&Triple::new(t.m, t.k, t.l))
    }

    /// One output slice of the separable contraction:
    /// `out[i, j] = Σ_{a,b,c} C[a,b,c] X[a,i] Y[b,j] Z[c,k]` at fixed `k`.
    ///
    /// The tables are indexed `[cube axis position, output position]`.
    pub fn contract_slice(
        &self,
        x: &PhaseTable<T>,
        y: &PhaseTable<T>,
        z: &PhaseTable<T>,
        k: usize,
    ) -> Vec<Complex<T>> {
        let w = self.width();
        debug_assert!(x.rows == w && y.rows == w && z.rows == w);
        let zero = Complex::new(T::zero(), T::zero());
        let (ni, nj) = (x.cols, y.cols);

        // s1[a, b] = Σ_c C[a,b,c] Z[c,k]
        let zc: Vec<Complex<T>> = (0..w).map(|c| z.get(c, k)).collect();
        let mut s1 = vec![zero; w * w];
        for (ab, out) in s1.iter_mut().enumerate() {
            let row = &self.data[ab * w..(ab + 1) * w];
            let mut acc = zero;
            for (cv, zv) in row.iter().zip(&zc) {
                acc += cv * zv;
            }
            *out = acc;
        }
        // s2[a, j] = Σ_b s1[a,b] Y[b,j]
        let mut s2 = vec![zero; w * nj];
        for a in 0..w {
            let dst = &mut s2[a * nj..(a + 1) * nj];
            for b in 0..w {
                let coef = s1[a * w + b];
                if coef == zero {
                    continue;
                }
                for (d, yv) in dst.iter_mut().zip(y.row(b)) {
                    *d += coef * yv;
                }
            }
        }
        // out[i, j] = Σ_a s2[a,j] X[a,i]
        let mut out = vec![zero; ni * nj];
        for a in 0..w {
            let src = &s2[a * nj..(a + 1) * nj];
            for i in 0..ni {
                let xv = x.get(a, i);
                let dst = &mut out[i * nj..(i + 1) * nj];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += s * xv;
                }
            }
        }
        out
    }

    /// Full contraction, `out[i, j, k]` lexicographic.
    pub fn contract(
        &self,
        x: &PhaseTable<T>,
        y: &PhaseTable<T>,
        z: &PhaseTable<T>,
    ) -> Vec<Complex<T>> {
        let (ni, nj, nk) = (x.cols, y.cols, z.cols);
        let slices: Vec<Vec<Complex<T>>> = (0..nk)
            .into_par_iter()
            .map(|k| self.contract_slice(x, y, z, k))
            .collect();
        let mut out = vec![Complex::new(T::zero(), T::zero()); ni * nj * nk];
        for (k, s) in slices.iter().enumerate() {
            for ij in 0..ni * nj {
                out[ij * nk + k] = s[ij];
            }
        }
        out
    }
}
