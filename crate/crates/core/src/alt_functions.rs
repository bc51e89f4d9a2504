//! Alternating exponential functions
//!
//! ```text
//! E_(λ,μ,ν)(x,y,z) = e^{2πi(λx+μy+νz)} + e^{2πi(λz+μx+νy)} + e^{2πi(λy+μz+νx)}
//! ```
//!
//! and the algebraic identities they satisfy.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::index_domain::{IndexTriple, Point3, Triple};
use crate::scalar::{frac, from_int, turn, Real};

/// Phases `(λx+μy+νz, λz+μx+νy, λy+μz+νx)` of the three terms.
#[inline]
fn phases<T: Real>(t: &Triple<T>, p: &Point3<T>) -> [T; 3] {
    [
        t.k * p.x + t.l * p.y + t.m * p.z,
        t.k * p.z + t.l * p.x + t.m * p.y,
        t.k * p.y + t.l * p.z + t.m * p.x,
    ]
}

/// `E_t(p)` for an integer label.
///
/// Coordinates and phases are reduced modulo 1 before the exponential is
/// taken, so integer translations of `p` leave the value unchanged to
/// machine precision.
pub fn eval_e<T: Real>(t: &IndexTriple, p: &Point3<T>) -> Complex<T> {
    let q = Point3::new(frac(p.x), frac(p.y), frac(p.z));
    let [a, b, c] = phases(&t.to_real(), &q);
    turn(frac(a)) + turn(frac(b)) + turn(frac(c))
}

/// `E_t(p)` for a continuous label. No argument reduction.
pub fn eval_e_continuous<T: Real>(t: &Triple<T>, p: &Point3<T>) -> Complex<T> {
    let [a, b, c] = phases(t, p);
    turn(a) + turn(b) + turn(c)
}

/// `e^{2πi(k+l+m)a}`, the factor picked up by `E_t` under the diagonal
/// translation `p → p + (a,a,a)`.
pub fn shift_phase<T: Real>(t: &IndexTriple, a: T) -> Complex<T> {
    turn(frac(from_int::<T>(t.sum()) * frac(a)))
}

/// Label triples of the product-to-sum decomposition
/// `E_t · E_t' = E_{(λ+λ',μ+μ',ν+ν')} + E_{(λ+μ',μ+ν',ν+λ')} + E_{(λ+ν',μ+λ',ν+μ')}`.
pub type ProductDecomposition<S> = [Triple<S>; 3];

pub fn product_indices<S>(t: &Triple<S>, u: &Triple<S>) -> ProductDecomposition<S>
where
    S: Copy + std::ops::Add<Output = S>,
{
    [
        Triple::new(t.k + u.k, t.l + u.l, t.m + u.m),
        Triple::new(t.k + u.l, t.l + u.m, t.m + u.k),
        Triple::new(t.k + u.m, t.l + u.k, t.m + u.l),
    ]
}

/// `|E_t(p)E_t(p') − [E_t(p+p') + E_t(x+y',y+z',z+x') + E_t(x+z',y+x',z+y')]|`.
pub fn point_product_residual<T: Real>(t: &IndexTriple, p: &Point3<T>, q: &Point3<T>) -> T {
    let lhs = eval_e(t, p) * eval_e(t, q);
    let rhs = eval_e(t, &Point3::new(p.x + q.x, p.y + q.y, p.z + q.z))
        + eval_e(t, &Point3::new(p.x + q.y, p.y + q.z, p.z + q.x))
        + eval_e(t, &Point3::new(p.x + q.z, p.y + q.x, p.z + q.y));
    (lhs - rhs).norm()
}

/// Elementary symmetric polynomial of degree `k ∈ {1, 2, 3}`.
pub fn sigma_k<T: Real>(k: u32, y: [T; 3]) -> Result<T> {
    let [a, b, c] = y;
    match k {
        1 => Ok(a + b + c),
        2 => Ok(a * b + a * c + b * c),
        3 => Ok(a * b * c),
        _ => Err(Error::InvalidArgument(format!(
            "sigma_k needs k in {{1,2,3}}, got {k}"
        ))),
    }
}

/// Eigenvalue of `σ_k(∂²_x, ∂²_y, ∂²_z)` on `E_t`:
/// `(−4π²)^k σ_k(λ², μ², ν²)`. `k = 1` is the Laplacian.
pub fn operator_eigenvalue<T: Real>(k: u32, t: &Triple<T>) -> Result<T> {
    let s = sigma_k(k, [t.k * t.k, t.l * t.l, t.m * t.m])?;
    let four_pi2 = T::from_f64(4.0).unwrap() * T::PI() * T::PI();
    Ok((-four_pi2).powi(k as i32) * s)
}
