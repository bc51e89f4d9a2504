use altexp::{
    adft_forward, adft_inverse, alt_interpolate, eval_e, GridSpec, InterpolantAlt, Point3,
    SampleSet, Triple,
};
use num_complex::Complex;

#[test]
fn f32_round_trip_and_interpolation() {
    let g = GridSpec::<f32>::new(0.0, 0.5, 5, 1.0).unwrap();
    let s = SampleSet::from_fn(g, |p| Complex::new(p.x - 2.0 * p.y, p.z * p.z));
    let back = adft_inverse(&adft_forward(&s)).unwrap();
    assert!(back.max_abs_diff(&s) < 1e-5);

    let interp: InterpolantAlt<f32> = alt_interpolate(&s).unwrap();
    for (idx, f) in s.iter() {
        assert!((interp.eval(&g.point(idx)) - f).norm() < 1e-5);
    }
}

#[test]
fn f32_matches_f64_evaluation() {
    let t = Triple::new(3, -1, 2);
    let p32 = Point3::new(0.3f32, 0.55, 0.1);
    let p64 = Point3::new(0.3f64, 0.55, 0.1);
    let (a, b) = (eval_e(&t, &p32), eval_e(&t, &p64));
    assert!((a.re as f64 - b.re).abs() < 1e-5 && (a.im as f64 - b.im).abs() < 1e-5);
}
