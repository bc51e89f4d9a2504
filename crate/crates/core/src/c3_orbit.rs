//! E-orbit functions of the Lie group C₃ and their relation to the
//! alternating functions.
//!
//! Weights are written in the ω-basis and evaluation points in the ω∨-basis,
//! where `ω₁ = e₁`, `ω₂ = e₁+e₂`, `ω₃ = e₁+e₂+e₃`, `ω∨₁ = 2e₁`,
//! `ω∨₂ = 2e₁+2e₂`, `ω∨₃ = e₁+e₂+e₃` and `⟨eᵢ, eⱼ⟩ = ½δᵢⱼ`. The simple roots
//! are `α₁ = e₁−e₂`, `α₂ = e₂−e₃`, `α₃ = 2e₃`.
//!
//! After `v = (λ−μ, μ−ν, ν)` and `θ = (x−y, y−z, 2z)` the 24-term E-function
//! equals the sum of `E_(λ,μ,ν)` over an order-8 subgroup of signed
//! permutations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::OnceLock;

use num_complex::Complex;

use crate::alt_functions::eval_e_continuous;
use crate::error::{Error, Result};
use crate::index_domain::{Point3, Triple};
use crate::scalar::{cast, turn, Real};

/// Coordinates in the ω-basis (weights) or the ω∨-basis (points).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OmegaVector<T>(pub [T; 3]);

/// Integer linear form `(v₁,v₂,v₃) ↦ A v` of one orbit weight.
type LinearForm = [[i8; 3]; 3];

/// Generic orbit of the even Weyl subgroup, grouped by the minimal number of
/// reflections `l` that produce each weight.
pub const ORBIT_TABLE: [(u8, LinearForm); 24] = [
    (0, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
    (2, [[-1, -1, 0], [1, 0, 0], [0, 1, 1]]),
    (2, [[0, 1, 0], [-1, -1, 0], [1, 1, 1]]),
    (2, [[-1, 0, 0], [1, 1, 2], [0, 0, -1]]),
    (2, [[1, 1, 2], [0, -1, -2], [0, 1, 1]]),
    (2, [[1, 1, 0], [0, 1, 2], [0, -1, -1]]),
    (4, [[-1, -2, -2], [1, 1, 0], [0, 0, 1]]),
    (4, [[0, -1, -2], [-1, 0, 0], [1, 1, 1]]),
    (4, [[-1, -1, -2], [1, 2, 2], [0, -1, -1]]),
    (4, [[0, 1, 2], [-1, -2, -2], [1, 1, 1]]),
    (4, [[0, -1, 0], [1, 2, 2], [-1, -1, -1]]),
    (4, [[1, 2, 2], [-1, -1, -2], [0, 0, 1]]),
    (4, [[0, 1, 2], [1, 1, 0], [-1, -1, -1]]),
    (4, [[1, 2, 2], [0, -1, 0], [0, 0, -1]]),
    (6, [[0, -1, 0], [-1, -1, -2], [1, 1, 1]]),
    (6, [[0, -1, -2], [1, 1, 2], [-1, -1, -1]]),
    (6, [[-1, -1, -2], [0, -1, 0], [0, 1, 1]]),
    (6, [[-1, -2, -2], [0, 1, 2], [0, 0, -1]]),
    (6, [[0, 1, 0], [1, 0, 0], [-1, -1, -1]]),
    (6, [[1, 1, 0], [-1, -2, -2], [0, 1, 1]]),
    (6, [[1, 1, 2], [-1, 0, 0], [0, -1, -1]]),
    (8, [[1, 0, 0], [-1, -1, 0], [0, 0, -1]]),
    (8, [[-1, 0, 0], [0, -1, -2], [0, 0, 1]]),
    (8, [[-1, -1, 0], [0, 1, 0], [0, -1, -1]]),
];

fn apply_form<T: Real>(a: &LinearForm, v: &[T; 3]) -> [T; 3] {
    let mut out = [T::zero(); 3];
    for (o, row) in out.iter_mut().zip(a) {
        *o = row
            .iter()
            .zip(v)
            .fold(T::zero(), |acc, (&c, &x)| acc + cast::<T>(c as f64) * x);
    }
    out
}

/// The 24 weights of the generic orbit of `v`, in table order.
pub fn we_orbit<T: Real>(v: &OmegaVector<T>) -> Vec<OmegaVector<T>> {
    ORBIT_TABLE
        .iter()
        .map(|(_, a)| OmegaVector(apply_form(a, &v.0)))
        .collect()
}

/// `⟨v, θ⟩` for `v` in the ω-basis and `θ` in the ω∨-basis.
pub fn scalar_product<T: Real>(v: &OmegaVector<T>, theta: &OmegaVector<T>) -> T {
    let [v1, v2, v3] = v.0;
    let [t1, t2, t3] = theta.0;
    let two: T = cast(2.0);
    let half: T = cast(0.5);
    (v1 + v2 + v3) * t1
        + (v1 + two * v2 + two * v3) * t2
        + (half * v1 + v2 + cast::<T>(1.5) * v3) * t3
}

/// `E^W_v(θ) = Σ_{w ∈ W^e(C₃)} e^{2πi⟨wv, θ⟩}`.
pub fn eval_ew<T: Real>(v: &OmegaVector<T>, theta: &OmegaVector<T>) -> Complex<T> {
    we_orbit(v)
        .iter()
        .map(|w| turn(scalar_product(w, theta)))
        .sum()
}

/// ω-basis → Cartesian `e`-coordinates.
pub fn weight_to_cartesian<S>(v: &[S; 3]) -> [S; 3]
where
    S: Copy + std::ops::Add<Output = S>,
{
    [v[0] + v[1] + v[2], v[1] + v[2], v[2]]
}

/// Cartesian `e`-coordinates → ω-basis.
pub fn cartesian_to_weight<S>(c: &[S; 3]) -> [S; 3]
where
    S: Copy + std::ops::Sub<Output = S>,
{
    [c[0] - c[1], c[1] - c[2], c[2]]
}

/// A signed permutation matrix acting on Cartesian coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrthogonalMap {
    pub rows: [[i8; 3]; 3],
}

impl OrthogonalMap {
    pub const IDENTITY: OrthogonalMap = OrthogonalMap {
        rows: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    };

    /// `self ∘ other`.
    pub fn compose(&self, other: &OrthogonalMap) -> OrthogonalMap {
        let mut rows = [[0i8; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.rows[i][k] * other.rows[k][j]).sum();
            }
        }
        OrthogonalMap { rows }
    }

    pub fn det(&self) -> i32 {
        let a = |i: usize, j: usize| self.rows[i][j] as i32;
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    }

    pub fn is_signed_permutation(&self) -> bool {
        let rows_ok = self
            .rows
            .iter()
            .all(|r| r.iter().filter(|&&c| c != 0).count() == 1);
        let cols_ok = (0..3).all(|j| self.rows.iter().filter(|r| r[j] != 0).count() == 1);
        let entries_ok = self.rows.iter().flatten().all(|c| (-1..=1).contains(c));
        rows_ok && cols_ok && entries_ok
    }

    pub fn apply_int(&self, v: &[i64; 3]) -> [i64; 3] {
        let mut out = [0; 3];
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().zip(v).map(|(&c, &x)| c as i64 * x).sum();
        }
        out
    }

    pub fn apply<T: Real>(&self, p: &Point3<T>) -> Point3<T> {
        let v = [p.x, p.y, p.z];
        let c = |row: &[i8; 3]| {
            row.iter()
                .zip(&v)
                .fold(T::zero(), |acc, (&a, &x)| acc + cast::<T>(a as f64) * x)
        };
        Point3::new(c(&self.rows[0]), c(&self.rows[1]), c(&self.rows[2]))
    }
}

/// Simple roots of C₃ in Cartesian coordinates.
pub const SIMPLE_ROOTS: [[i64; 3]; 3] = [[1, -1, 0], [0, 1, -1], [0, 0, 2]];

/// Reflection `x ↦ x − 2⟨α,x⟩/⟨α,α⟩ α` in the mirror orthogonal to simple
/// root `j ∈ {0,1,2}`. The factor ½ of the scalar product cancels.
pub fn reflection(j: usize) -> OrthogonalMap {
    let a = SIMPLE_ROOTS[j];
    let norm: i64 = a.iter().map(|x| x * x).sum();
    let mut rows = [[0i8; 3]; 3];
    for (i, row) in rows.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let num = 2 * a[i] * a[k];
            debug_assert_eq!(num % norm, 0);
            *cell = ((i == k) as i64 - num / norm) as i8;
        }
    }
    OrthogonalMap { rows }
}

/// Closure of a generator set under composition, in discovery order.
pub fn closure(generators: &[OrthogonalMap], limit: usize) -> Result<Vec<OrthogonalMap>> {
    let mut seen = BTreeSet::from([OrthogonalMap::IDENTITY]);
    let mut out = vec![OrthogonalMap::IDENTITY];
    let mut queue = VecDeque::from([OrthogonalMap::IDENTITY]);
    while let Some(g) = queue.pop_front() {
        for h in generators {
            let gh = g.compose(h);
            if seen.insert(gh) {
                if seen.len() > limit {
                    return Err(Error::GroupClosure(seen.len()));
                }
                out.push(gh);
                queue.push_back(gh);
            }
        }
    }
    Ok(out)
}

/// Generators `r₁r₃` and `(r₂r₃)²` of the order-8 subgroup.
pub fn tilde_we_generators() -> [OrthogonalMap; 2] {
    let (r1, r2, r3) = (reflection(0), reflection(1), reflection(2));
    let r23 = r2.compose(&r3);
    [r1.compose(&r3), r23.compose(&r23)]
}

/// The order-8 subgroup generated by matrix closure; its size is checked.
pub fn generate_tilde_we() -> Result<Vec<OrthogonalMap>> {
    let group = closure(&tilde_we_generators(), 8)?;
    if group.len() != 8 {
        return Err(Error::GroupClosure(group.len()));
    }
    Ok(group)
}

/// Cached order-8 subgroup.
pub fn tilde_we() -> &'static [OrthogonalMap] {
    static GROUP: OnceLock<Vec<OrthogonalMap>> = OnceLock::new();
    GROUP.get_or_init(|| generate_tilde_we().expect("order-8 subgroup closes with 8 elements"))
}

/// Orbit of an integer ω-basis weight under products of an even number of
/// simple reflections, with the minimal reflection count of each weight.
/// Found by breadth-first search, independent of [`ORBIT_TABLE`].
pub fn reflection_orbit(v: [i64; 3]) -> BTreeMap<[i64; 3], u32> {
    let refl = [reflection(0), reflection(1), reflection(2)];
    let mut depth = BTreeMap::from([(v, 0u32)]);
    let mut queue = VecDeque::from([v]);
    while let Some(w) = queue.pop_front() {
        let d = depth[&w];
        let c = weight_to_cartesian(&w);
        for r in &refl {
            let next = cartesian_to_weight(&r.apply_int(&c));
            depth.entry(next).or_insert_with(|| {
                queue.push_back(next);
                d + 1
            });
        }
    }
    depth.into_iter().filter(|(_, d)| d % 2 == 0).collect()
}

/// `|E^W_{(λ−μ,μ−ν,ν)}(x−y, y−z, 2z) − Σ_{w} E_(λ,μ,ν)(w(x,y,z))|`.
pub fn symmetrization_residual<T: Real>(t: &Triple<T>, p: &Point3<T>) -> T {
    let v = OmegaVector([t.k - t.l, t.l - t.m, t.m]);
    let theta = OmegaVector([p.x - p.y, p.y - p.z, cast::<T>(2.0) * p.z]);
    let lhs = eval_ew(&v, &theta);
    let rhs: Complex<T> = tilde_we()
        .iter()
        .map(|w| eval_e_continuous(t, &w.apply(p)))
        .sum();
    (lhs - rhs).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_table_examples() {
        let orbit = we_orbit(&OmegaVector([0.3, -1.1, 2.5]));
        assert_eq!(orbit.len(), 24);
        assert_eq!(orbit[0], OmegaVector([0.3, -1.1, 2.5]));
        assert_eq!(
            we_orbit(&OmegaVector([1.0, 0.0, 0.0]))[1],
            OmegaVector([-1.0, 1.0, 0.0])
        );
        assert_eq!(
            we_orbit(&OmegaVector([1.0, 1.0, 1.0]))[23],
            OmegaVector([-2.0, 1.0, -2.0])
        );
    }

    #[test]
    fn scalar_product_examples() {
        let v = OmegaVector([1.0, 0.0, 0.0]);
        assert_eq!(scalar_product(&v, &OmegaVector([1.0, 0.0, 0.0])), 1.0);
        assert_eq!(
            scalar_product(&OmegaVector([0.0; 3]), &OmegaVector([0.3, 0.2, 0.1])),
            0.0
        );
        assert_eq!(
            scalar_product(&OmegaVector([0.0, 0.0, 1.0]), &OmegaVector([0.0, 0.0, 1.0])),
            1.5
        );
    }

    #[test]
    fn scalar_product_matches_cartesian_form() {
        // ω∨ → Cartesian: (2θ₁+2θ₂+θ₃, 2θ₂+θ₃, θ₃); ⟨·,·⟩ = ½ dot
        let v: [f64; 3] = [0.3, -0.7, 1.9];
        let th = [0.11, 0.42, -0.6];
        let c = weight_to_cartesian(&v);
        let d = [
            2.0 * th[0] + 2.0 * th[1] + th[2],
            2.0 * th[1] + th[2],
            th[2],
        ];
        let direct = 0.5 * (c[0] * d[0] + c[1] * d[1] + c[2] * d[2]);
        assert!((scalar_product(&OmegaVector(v), &OmegaVector(th)) - direct).abs() < 1e-15);
    }

    #[test]
    fn ew_trivial_values() {
        let z = OmegaVector([0.0; 3]);
        assert!(
            (eval_ew(&z, &OmegaVector([0.2, 0.9, -0.4])) - Complex::new(24.0, 0.0)).norm() < 1e-12
        );
        assert!(
            (eval_ew(&OmegaVector([1.5, 2.0, -3.0]), &z) - Complex::new(24.0, 0.0)).norm() < 1e-12
        );
    }

    #[test]
    fn reflections() {
        for j in 0..3 {
            let r = reflection(j);
            assert!(r.is_signed_permutation());
            assert_eq!(r.det(), -1);
            assert_eq!(r.compose(&r), OrthogonalMap::IDENTITY);
        }
        // r₁ swaps e₁,e₂; r₃ negates e₃
        assert_eq!(reflection(0).apply_int(&[1, 2, 3]), [2, 1, 3]);
        assert_eq!(reflection(2).apply_int(&[1, 2, 3]), [1, 2, -3]);
    }

    #[test]
    fn tilde_we_group() {
        let [g1, _] = tilde_we_generators();
        assert_eq!(g1.apply_int(&[1, 2, 3]), [2, 1, -3]);
        let group = generate_tilde_we().unwrap();
        assert_eq!(group.len(), 8);
        assert!(group.contains(&OrthogonalMap::IDENTITY));
        assert!(group
            .iter()
            .all(|g| g.det() == 1 && g.is_signed_permutation()));
        assert!(matches!(
            closure(&tilde_we_generators(), 4),
            Err(Error::GroupClosure(_))
        ));
    }

    #[test]
    fn table_matches_reflection_orbit() {
        let v = [3i64, 5, 7];
        let generated = reflection_orbit(v);
        assert_eq!(generated.len(), 24);
        for (l, a) in ORBIT_TABLE.iter() {
            let w: [i64; 3] = {
                let mut out = [0; 3];
                for (o, row) in out.iter_mut().zip(a) {
                    *o = row.iter().zip(&v).map(|(&c, &x)| c as i64 * x).sum();
                }
                out
            };
            assert_eq!(generated.get(&w), Some(&(*l as u32)), "{w:?}");
        }
    }

    #[test]
    fn symmetrization_trivial_cases() {
        let p = Point3::new(0.3, -0.2, 0.77);
        assert!(symmetrization_residual(&Triple::new(0.0, 0.0, 0.0), &p) < 1e-12);
        assert!(symmetrization_residual(&Triple::new(1.3, -2.0, 0.4), &Point3::splat(0.0)) < 1e-12);
    }
}
