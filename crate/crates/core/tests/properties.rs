mod common;

use std::f64::consts::TAU;

use ellipk::bounds::{imag_transform, sharp_bounds};
use ellipk::eval::{cn_dm_series, dn_dm_series, series, series_with_terms, sn_dm_series};
use ellipk::{
    check_theorem, cn_series, dn_series, jacobi_real_agm, sn_series, Complex64, FunctionKind, SeriesKind,
};
use proptest::prelude::*;

const TOL: f64 = 1e-13;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn value(kind: FunctionKind, z: Complex64, m: Complex64) -> Complex64 {
    series(kind, SeriesKind::Value, z, m, TOL, common::table()).unwrap().value
}

/// Uniform points of the disk |w| ≤ radius.
fn disk(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0f64..=1.0, 0.0f64..TAU).prop_map(move |(u, t)| Complex64::from_polar(radius * u.sqrt(), t))
}

fn unit_disk() -> impl Strategy<Value = Complex64> {
    disk(1.0).prop_map(|m| if m.norm() > 1.0 { m / m.norm() } else { m })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pythagorean_identities(z in disk(1.5), m in unit_disk()) {
        let s = value(FunctionKind::Sn, z, m);
        let cn = value(FunctionKind::Cn, z, m);
        let d = value(FunctionKind::Dn, z, m);
        prop_assert!((s * s + cn * cn - 1.0).norm() <= 1e-10);
        prop_assert!((d * d + m * s * s - 1.0).norm() <= 1e-10);
    }

    #[test]
    fn parity_is_exact(z in disk(1.5), m in unit_disk()) {
        prop_assert_eq!(value(FunctionKind::Sn, -z, m), -value(FunctionKind::Sn, z, m));
        prop_assert_eq!(value(FunctionKind::Cn, -z, m), value(FunctionKind::Cn, z, m));
        prop_assert_eq!(value(FunctionKind::Dn, -z, m), value(FunctionKind::Dn, z, m));
    }

    #[test]
    fn conjugate_symmetry(z in disk(1.5), m in unit_disk()) {
        for kind in FunctionKind::ALL {
            let a = value(kind, z.conj(), m.conj());
            let b = value(kind, z, m).conj();
            prop_assert!((a - b).norm() <= 1e-13 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn truncation_bound_is_sound(z in disk(1.5), m in unit_disk(), terms in 1usize..=300) {
        for kind in FunctionKind::ALL {
            for series_kind in [SeriesKind::Value, SeriesKind::ParameterDerivative] {
                let a = series_with_terms(kind, series_kind, z, m, terms, common::table()).unwrap();
                let b = series_with_terms(kind, series_kind, z, m, terms + 10, common::table()).unwrap();
                prop_assert!((a.value - b.value).norm() <= a.error_radius,
                    "{:?} {:?} terms={} diff={:e} radius={:e}", kind, series_kind, terms,
                    (a.value - b.value).norm(), a.error_radius);
            }
        }
    }

    #[test]
    fn complex_argument_matches_addition_formulas(z in disk(1.5), m in 0.0f64..=1.0) {
        let (s, cn, d) = common::complex_argument_oracle(z, m);
        let mc = c(m, 0.0);
        let scale = 1.0 + s.norm().max(cn.norm()).max(d.norm());
        prop_assert!((value(FunctionKind::Sn, z, mc) - s).norm() <= 1e-11 * scale);
        prop_assert!((value(FunctionKind::Cn, z, mc) - cn).norm() <= 1e-11 * scale);
        prop_assert!((value(FunctionKind::Dn, z, mc) - d).norm() <= 1e-11 * scale);
    }

    #[test]
    fn bound_chains_hold(z in disk(1.5), m in unit_disk()) {
        let r = check_theorem(z, m, TOL, common::table()).unwrap();
        prop_assert!(r.passes(), "{:?}", r);
    }

    #[test]
    fn sharp_bounds_decrease_in_m1(x in 0.001f64..1.5, a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let p = sharp_bounds(x, lo).unwrap();
        let q = sharp_bounds(x, hi).unwrap();
        // AGM rounding only; both sides are O(tan 1.5).
        let slack = 1e-13;
        prop_assert!(p.sn >= q.sn - slack && p.cn >= q.cn - slack && p.dn >= q.dn - slack);
    }

    #[test]
    fn imaginary_axis_sn_is_positive_imaginary(y in 0.001f64..1.5, m in 0.0f64..=1.0) {
        let v = value(FunctionKind::Sn, c(0.0, y), c(m, 0.0));
        prop_assert_eq!(v.re, 0.0);
        prop_assert!(v.im > 0.0);
        let t = imag_transform(y, c(m, 0.0)).unwrap();
        prop_assert!((t.sn - v).norm() <= 1e-11);
    }

    #[test]
    fn series_matches_agm_on_real_axis(u in 0.0f64..=1.5, m1 in 0.0f64..=1.0) {
        let r = jacobi_real_agm(u, m1).unwrap();
        let (z, m) = (c(u, 0.0), c(m1, 0.0));
        prop_assert!((value(FunctionKind::Sn, z, m).re - r.sn).abs() <= 1e-12);
        prop_assert!((value(FunctionKind::Cn, z, m).re - r.cn).abs() <= 1e-12);
        prop_assert!((value(FunctionKind::Dn, z, m).re - r.dn).abs() <= 1e-12);
    }
}

#[test]
fn reference_values() {
    let t = common::table();
    let z = c(0.5, 0.0);
    assert!((sn_series(z, c(1.0, 0.0), TOL, t).unwrap().value.re - 0.462117157260).abs() < 1e-12);
    assert!((cn_series(z, c(0.0, 0.0), TOL, t).unwrap().value.re - 0.877582561890).abs() < 1e-12);
    assert!((dn_series(z, c(1.0, 0.0), TOL, t).unwrap().value.re - 0.886818883970).abs() < 1e-12);
    let r = jacobi_real_agm(0.5, 0.7).unwrap();
    assert!((sn_series(z, c(0.7, 0.0), TOL, t).unwrap().value.re - r.sn).abs() < 1e-12);
}

#[test]
fn parameter_derivative_matches_finite_difference() {
    let t = common::table();
    let (z, m, h) = (c(0.4, 0.0), c(0.3, 0.0), 1e-6);
    let dm = |f: fn(Complex64, Complex64, f64, &ellipk::CoefficientTable) -> ellipk::Result<ellipk::EvalResult>| {
        f(z, m, 1e-12, t).unwrap().value
    };
    let fd = |kind| (value(kind, z, m + h) - value(kind, z, m - h)) / (2.0 * h);
    for (analytic, kind) in [
        (dm(sn_dm_series), FunctionKind::Sn),
        (dm(cn_dm_series), FunctionKind::Cn),
        (dm(dn_dm_series), FunctionKind::Dn),
    ] {
        let numeric = fd(kind);
        let rel = (analytic - numeric).norm() / analytic.norm();
        assert!(rel <= 1e-6, "{kind:?}: {analytic} vs {numeric}, rel {rel:e}");
    }
}

#[test]
fn parameter_derivative_at_circular_limit() {
    // First order in m: sn ≈ sin z - m(z - sin z cos z)cos z/4 and
    // dn ≈ 1 - m sin²z/2.
    let t = common::table();
    for x in [0.1, 0.5, 1.0, 1.4] {
        let z = c(x, 0.3 * x);
        let m = c(0.0, 0.0);
        let (s, co) = (z.sin(), z.cos());
        let sn_dm = sn_dm_series(z, m, 1e-12, t).unwrap().value;
        let dn_dm = dn_dm_series(z, m, 1e-12, t).unwrap().value;
        let cn_dm = cn_dm_series(z, m, 1e-12, t).unwrap().value;
        assert!((sn_dm + (z - s * co) * co / 4.0).norm() < 1e-11, "sn at {z}");
        assert!((dn_dm + s * s / 2.0).norm() < 1e-11, "dn at {z}");
        // cn' = -sn·dn differentiated in m at m = 0: cn ≈ cos z + m(z - sin z cos z)sin z/4.
        assert!((cn_dm - (z - s * co) * s / 4.0).norm() < 1e-11, "cn at {z}");
    }
    assert_eq!(sn_dm_series(c(0.0, 0.0), c(0.4, 0.1), 1e-12, t).unwrap().value, c(0.0, 0.0));
}
