//! The bound chains for complex parameter |m| ≤ 1 and |z| < π/2:
//!
//! ```text
//! |sn(z,m)| ≤ sn(|z|,m1)/cn(|z|,m1) ≤ tan|z|
//! |cn(z,m)| ≤ 1/cn(|z|,m1)          ≤ 1/cos|z|
//! |dn(z,m)| ≤ dn(|z|,m1)/cn(|z|,m1) ≤ 1/cos|z|        m1 = 1 - |m|
//! ```
//!
//! All bounds are equalities at z = 0 and on the imaginary axis when m = 1;
//! the sharp (middle) bounds are also attained on the imaginary axis whenever
//! m is real and nonnegative. The imaginary-axis values come from Jacobi's
//! imaginary transformation sn(iy,m) = i·sn(y,1-m)/cn(y,1-m),
//! cn(iy,m) = 1/cn(y,1-m), dn(iy,m) = dn(y,1-m)/cn(y,1-m).

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coeffs::{CoefficientTable, FunctionKind};
use crate::error::{domain, Error, Result};
use crate::eval::{self, jacobi_real_agm, tan_sec};

/// Middle members of the three chains at (|z|, m1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpBounds {
    /// sn/cn
    pub sn: f64,
    /// 1/cn
    pub cn: f64,
    /// dn/cn
    pub dn: f64,
}

/// Right-hand members: tan|z| for sn, 1/cos|z| for cn and dn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoarseBounds {
    pub tan: f64,
    pub sec: f64,
}

impl CoarseBounds {
    pub fn for_kind(&self, kind: FunctionKind) -> f64 {
        match kind {
            FunctionKind::Sn => self.tan,
            FunctionKind::Cn | FunctionKind::Dn => self.sec,
        }
    }
}

impl SharpBounds {
    pub fn for_kind(&self, kind: FunctionKind) -> f64 {
        match kind {
            FunctionKind::Sn => self.sn,
            FunctionKind::Cn => self.cn,
            FunctionKind::Dn => self.dn,
        }
    }
}

/// Which equality statement applies to an input, by exact predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityCase {
    None,
    /// z = 0: every bound is attained.
    Origin,
    /// Re z = 0 and m = 1 (so m1 = 0): both bounds of every chain attained.
    #[serde(rename = "imaginary_axis_m1_equals_one")]
    ImaginaryAxisUnitParameter,
    /// Re z = 0 and m real, m ≥ 0: the sharp bounds are attained.
    ImaginaryAxisMNonnegReal,
}

impl EqualityCase {
    pub fn classify(z: Complex64, m: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            EqualityCase::Origin
        } else if z.re == 0.0 && m.re == 1.0 && m.im == 0.0 {
            EqualityCase::ImaginaryAxisUnitParameter
        } else if z.re == 0.0 && m.im == 0.0 && m.re >= 0.0 {
            EqualityCase::ImaginaryAxisMNonnegReal
        } else {
            EqualityCase::None
        }
    }

    pub fn sharp_is_equality(self) -> bool {
        self != EqualityCase::None
    }

    pub fn coarse_is_equality(self) -> bool {
        matches!(self, EqualityCase::Origin | EqualityCase::ImaginaryAxisUnitParameter)
    }
}

/// One chain evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainRecord {
    /// |f(z, m)|
    pub lhs: f64,
    pub sharp: f64,
    pub coarse: f64,
    /// sharp - lhs
    pub margin_sharp: f64,
    /// coarse - sharp
    pub margin_coarse: f64,
    /// Truncation radius of the series value entering `lhs`.
    pub eval_error: f64,
}

impl ChainRecord {
    fn new(lhs: f64, sharp: f64, coarse: f64, eval_error: f64) -> Self {
        Self {
            lhs,
            sharp,
            coarse,
            margin_sharp: sharp - lhs,
            margin_coarse: coarse - sharp,
            eval_error,
        }
    }

    /// Both margins are at least -2·eval_error.
    pub fn passes(&self) -> bool {
        let slack = -2.0 * self.eval_error;
        self.margin_sharp >= slack && self.margin_coarse >= slack
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "crate::complex_json")]
    pub z: Complex64,
    #[serde(with = "crate::complex_json")]
    pub m: Complex64,
    pub m1: f64,
    pub sn: ChainRecord,
    pub cn: ChainRecord,
    pub dn: ChainRecord,
    pub equality_case: EqualityCase,
}

impl BoundReport {
    pub fn record(&self, kind: FunctionKind) -> &ChainRecord {
        match kind {
            FunctionKind::Sn => &self.sn,
            FunctionKind::Cn => &self.cn,
            FunctionKind::Dn => &self.dn,
        }
    }

    pub fn records(&self) -> [(FunctionKind, &ChainRecord); 3] {
        FunctionKind::ALL.map(|k| (k, self.record(k)))
    }

    pub fn passes(&self) -> bool {
        self.sn.passes() && self.cn.passes() && self.dn.passes()
    }
}

/// sn/cn, 1/cn and dn/cn at real argument `abs_z` and parameter `m1`.
pub fn sharp_bounds(abs_z: f64, m1: f64) -> Result<SharpBounds> {
    if !(0.0..FRAC_PI_2).contains(&abs_z) {
        return Err(domain(format!("|z| = {abs_z} must lie in [0, π/2)")));
    }
    let j = jacobi_real_agm(abs_z, m1)?;
    if j.cn <= 0.0 {
        return Err(Error::Pole { u: abs_z, m1, cn: j.cn });
    }
    Ok(SharpBounds {
        sn: j.sn / j.cn,
        cn: 1.0 / j.cn,
        dn: j.dn / j.cn,
    })
}

/// (tan|z|, 1/cos|z|).
pub fn coarse_bounds(abs_z: f64) -> Result<CoarseBounds> {
    if !(0.0..FRAC_PI_2).contains(&abs_z) {
        return Err(domain(format!("|z| = {abs_z} must lie in [0, π/2)")));
    }
    let (tan, sec) = tan_sec(abs_z);
    Ok(CoarseBounds { tan, sec })
}

/// Evaluates all three chains at (z, m) with series values at tolerance `tol`.
pub fn check_theorem(z: Complex64, m: Complex64, tol: f64, table: &CoefficientTable) -> Result<BoundReport> {
    let sn = eval::sn_series(z, m, tol, table)?;
    let cn = eval::cn_series(z, m, tol, table)?;
    let dn = eval::dn_series(z, m, tol, table)?;
    let abs_z = z.norm();
    let m1 = (1.0 - m.norm()).clamp(0.0, 1.0);
    let sharp = sharp_bounds(abs_z, m1)?;
    let coarse = coarse_bounds(abs_z)?;
    let record = |kind: FunctionKind, r: &eval::EvalResult| {
        ChainRecord::new(r.value.norm(), sharp.for_kind(kind), coarse.for_kind(kind), r.error_radius)
    };
    Ok(BoundReport {
        z,
        m,
        m1,
        sn: record(FunctionKind::Sn, &sn),
        cn: record(FunctionKind::Cn, &cn),
        dn: record(FunctionKind::Dn, &dn),
        equality_case: EqualityCase::classify(z, m),
    })
}

/// Values of sn, cn, dn at iy through the imaginary transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImaginaryAxisValues {
    pub sn: Complex64,
    pub cn: Complex64,
    pub dn: Complex64,
}

/// sn(iy, m), cn(iy, m), dn(iy, m) for real m ∈ [0, 1], computed on the real
/// axis at the complementary parameter 1 - m.
///
/// Complex m would need the parameter 1 - m, which can leave the unit disk,
/// so only real m is accepted.
pub fn imag_transform(y: f64, m: Complex64) -> Result<ImaginaryAxisValues> {
    if m.im != 0.0 || !(0.0..=1.0).contains(&m.re) {
        return Err(domain(format!(
            "imaginary transformation needs real m in [0, 1], got {m}"
        )));
    }
    if !(0.0..FRAC_PI_2).contains(&y.abs()) {
        return Err(domain(format!("|y| = {} must be below π/2", y.abs())));
    }
    let j = jacobi_real_agm(y, 1.0 - m.re)?;
    if j.cn <= 0.0 {
        return Err(Error::Pole { u: y, m1: 1.0 - m.re, cn: j.cn });
    }
    Ok(ImaginaryAxisValues {
        sn: Complex64::new(0.0, j.sn / j.cn),
        cn: Complex64::new(1.0 / j.cn, 0.0),
        dn: Complex64::new(j.dn / j.cn, 0.0),
    })
}

pub fn imag_transform_sn(y: f64, m: Complex64) -> Result<Complex64> {
    imag_transform(y, m).map(|v| v.sn)
}

pub fn imag_transform_cn(y: f64, m: Complex64) -> Result<Complex64> {
    imag_transform(y, m).map(|v| v.cn)
}

pub fn imag_transform_dn(y: f64, m: Complex64) -> Result<Complex64> {
    imag_transform(y, m).map(|v| v.dn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::generate_table;
    use std::sync::OnceLock;

    fn table() -> &'static CoefficientTable {
        static T: OnceLock<CoefficientTable> = OnceLock::new();
        T.get_or_init(|| generate_table(120))
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn sharp_bound_limits() {
        let b = sharp_bounds(0.0, 0.37).unwrap();
        assert_eq!((b.sn, b.cn, b.dn), (0.0, 1.0, 1.0));

        let b = sharp_bounds(0.5, 1.0).unwrap();
        assert!(close(b.sn, 0.5f64.sinh(), 1e-15));
        assert!(close(b.cn, 0.5f64.cosh(), 1e-15));
        assert!(close(b.dn, 1.0, 1e-15));
        assert!(close(b.sn, 0.521095, 1e-6));
        assert!(close(b.cn, 1.127626, 1e-6));

        let b = sharp_bounds(0.5, 0.0).unwrap();
        let coarse = coarse_bounds(0.5).unwrap();
        assert_eq!((b.sn, b.cn, b.dn), (coarse.tan, coarse.sec, coarse.sec));
        assert!(close(b.sn, 0.546302, 1e-6));
        assert!(close(b.cn, 1.139494, 1e-6));
    }

    #[test]
    fn coarse_values() {
        let b = coarse_bounds(0.0).unwrap();
        assert_eq!((b.tan, b.sec), (0.0, 1.0));
        let b = coarse_bounds(std::f64::consts::FRAC_PI_4).unwrap();
        assert!(close(b.tan, 1.0, 1e-15));
        assert!(close(b.sec, std::f64::consts::SQRT_2, 1e-15));
        assert!(matches!(coarse_bounds(FRAC_PI_2), Err(Error::Domain(_))));
        assert!(matches!(coarse_bounds(-0.1), Err(Error::Domain(_))));
        assert!(matches!(sharp_bounds(1.6, 0.5), Err(Error::Domain(_))));
        assert!(matches!(sharp_bounds(0.5, 1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn origin_is_an_equality_case() {
        let r = check_theorem(c(0.0, 0.0), c(0.5, 0.2), 1e-13, table()).unwrap();
        assert_eq!(r.equality_case, EqualityCase::Origin);
        for (_, rec) in r.records() {
            assert_eq!(rec.margin_sharp, 0.0);
            assert_eq!(rec.margin_coarse, 0.0);
        }
        assert_eq!((r.sn.lhs, r.cn.lhs, r.dn.lhs), (0.0, 1.0, 1.0));
        assert!(r.passes());
    }

    #[test]
    fn imaginary_axis_nonneg_real_parameter() {
        let r = check_theorem(c(0.0, 0.4), c(0.6, 0.0), 1e-13, table()).unwrap();
        assert_eq!(r.equality_case, EqualityCase::ImaginaryAxisMNonnegReal);
        for (_, rec) in r.records() {
            assert!(rec.margin_sharp.abs() <= 2.0 * rec.eval_error + 1e-15, "{rec:?}");
            assert!(rec.margin_coarse > 1e-3);
        }
    }

    #[test]
    fn imaginary_axis_unit_parameter() {
        let r = check_theorem(c(0.0, 0.4), c(1.0, 0.0), 1e-13, table()).unwrap();
        assert_eq!(r.equality_case, EqualityCase::ImaginaryAxisUnitParameter);
        assert_eq!(r.m1, 0.0);
        for (_, rec) in r.records() {
            assert!(rec.margin_sharp.abs() <= 2.0 * rec.eval_error + 1e-15, "{rec:?}");
            assert_eq!(rec.margin_coarse, 0.0);
        }
    }

    #[test]
    fn classification_is_exact() {
        use EqualityCase::*;
        assert_eq!(EqualityCase::classify(c(0.0, 0.0), c(-0.3, 0.4)), Origin);
        assert_eq!(EqualityCase::classify(c(0.0, -0.7), c(1.0, 0.0)), ImaginaryAxisUnitParameter);
        assert_eq!(EqualityCase::classify(c(0.0, 0.7), c(0.0, 0.0)), ImaginaryAxisMNonnegReal);
        assert_eq!(EqualityCase::classify(c(0.0, 0.7), c(-0.2, 0.0)), None);
        assert_eq!(EqualityCase::classify(c(1e-300, 0.7), c(0.5, 0.0)), None);
        assert_eq!(EqualityCase::classify(c(0.0, 0.7), c(0.5, 1e-300)), None);
    }

    #[test]
    fn generic_point_has_positive_margins() {
        let r = check_theorem(c(0.7, -0.9), c(-0.4, 0.6), 1e-13, table()).unwrap();
        assert_eq!(r.equality_case, EqualityCase::None);
        assert!(r.passes());
        for (_, rec) in r.records() {
            assert!(rec.margin_sharp > 1e-6);
        }
    }

    #[test]
    fn imaginary_transformation() {
        let v = imag_transform_sn(0.4, c(1.0, 0.0)).unwrap();
        assert_eq!(v.re, 0.0);
        assert!(close(v.im, 0.4f64.tan(), 1e-15));
        assert!(close(v.im, 0.422793, 1e-6));
        assert_eq!(imag_transform_sn(0.0, c(0.3, 0.0)).unwrap(), c(0.0, 0.0));
        let series = eval::sn_series(c(0.0, 0.4), c(0.3, 0.0), 1e-13, table()).unwrap();
        assert!((imag_transform_sn(0.4, c(0.3, 0.0)).unwrap() - series.value).norm() < 1e-11);
        let series = eval::dn_series(c(0.0, 1.1), c(0.8, 0.0), 1e-13, table()).unwrap();
        assert!((imag_transform_dn(1.1, c(0.8, 0.0)).unwrap() - series.value).norm() < 1e-11);
    }

    #[test]
    fn imaginary_transformation_rejects_complex_parameter() {
        assert!(matches!(imag_transform_sn(0.4, c(0.3, 0.1)), Err(Error::Domain(_))));
        assert!(matches!(imag_transform_cn(0.4, c(-0.3, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(imag_transform_dn(1.6, c(0.3, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn report_serializes_with_named_fields() {
        let r = check_theorem(c(0.0, 0.4), c(1.0, 0.0), 1e-13, table()).unwrap();
        let v: serde_json::Value = serde_json::to_value(r).unwrap();
        assert_eq!(v["equality_case"], "imaginary_axis_m1_equals_one");
        assert_eq!(v["z"]["im"], 0.4);
        assert!(v["sn"]["margin_sharp"].is_number());
        let back: BoundReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
