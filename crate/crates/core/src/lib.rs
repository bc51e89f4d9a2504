//! Three-variable alternating exponential functions of A₃.
//!
//! Evaluation, the alternating discrete Fourier transform and its inverse,
//! alternating and standard trigonometric interpolation, the C₃ orbit
//! correspondence and midpoint quadrature over the fundamental domain.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`.

pub mod alt_functions;
pub mod c3_orbit;
pub mod error;
pub mod index_domain;
pub mod interpolation;
pub mod io;
pub mod phase;
pub mod quadrature;
pub mod scalar;
pub mod transform;
pub mod verify;

pub use alt_functions::{
    eval_e, eval_e_continuous, operator_eigenvalue, product_indices, shift_phase, sigma_k,
};
pub use error::{Error, Result};
pub use index_domain::{
    cube_points, domain_size, enumerate_domain, grid_points, in_fundamental_domain, DomainIndex,
    DomainRange, GridSpec, IndexTriple, Point3, Triple,
};
pub use interpolation::{
    alt_interpolate, alt_interpolate_direct, eval_psi_alt, eval_psi_std, remap_beta_to_c,
    remap_target, std_interpolate, CubeSamples, InterpolantAlt, InterpolantStd, RemapRegion,
    TensorEvaluator,
};
pub use quadrature::{
    bump, bump_interpolation_error, integrate_over_f, interpolation_error, BumpParams,
    QuadratureSpec,
};
pub use scalar::Real;
pub use transform::{
    adft_forward, adft_forward_naive, adft_inverse, adft_inverse_naive, discrete_gram,
    CoefficientSet, Gram, Role, SampleSet,
};

pub type C64 = num_complex::Complex<f64>;
pub type Point = Point3<f64>;
pub type Grid = GridSpec<f64>;
pub type Samples = SampleSet<f64>;
pub type Coefficients = CoefficientSet<f64>;
pub type AltInterpolant = InterpolantAlt<f64>;
pub type StdInterpolant = InterpolantStd<f64>;
pub type Bump = BumpParams<f64>;
