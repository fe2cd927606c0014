//! Truncated Maclaurin evaluation of sn, cn, dn with rigorous tail bounds.
//!
//! For |m| ≤ 1 every coefficient polynomial is dominated by its value at 1:
//! |s_n(m)| ≤ s_n(|m|) ≤ s_n(1), and likewise for c_n and d_n. Summing the
//! dominating terms gives the Maclaurin series of tan|z| and sec|z|, so the
//! truncation error after T terms is at most
//!
//! ```text
//! tan|z| - Σ_{n≤T} s_n(1)|z|^(2n+1)/(2n+1)!      (sn)
//! sec|z| - Σ_{n≤T} c_n(1)|z|^(2n)/(2n)!          (cn, dn)
//! ```
//!
//! The truncation order is the smallest T for which this remainder is below
//! the requested tolerance. The dominating series has ratio (2|z|/π)², so
//! the order needed for tol = 1e-13 is about 34 at |z| = 1, 83 at |z| = 1.3
//! and 357 at |z| = 1.5; it diverges as |z| approaches π/2.
//!
//! The m-derivative series use the bound |s_n'(m)| ≤ s_n'(1) ≤ n·s_n(1),
//! which holds because s_n has nonnegative coefficients and degree n (c_n
//! has degree n-1 and d_n degree n). Summing n·s_n(1)|z|^(2n+1)/(2n+1)! in
//! closed form gives (x·sec²x - tan x)/2 and the cn/dn analogue is
//! x·sec x·tan x/2, so those remainders are rigorous as well.
//!
//! tan and sec come from the platform libm. The computed remainder is
//! closed form minus partial sum, so once the true tail drops below the
//! rounding resolution of the closed form it carries no information. The
//! reported tail therefore adds [`TAIL_SLACK`] times the closed form, which
//! covers a few ulps of error in tan/sec and in the compensated partial sum.
//! Rounding in the series sum itself is not part of `error_radius`; it is
//! reported separately as [`EvalResult::rounding_estimate`].

mod agm;

pub use agm::{jacobi_real_agm, RealJacobi};

use std::f64::consts::FRAC_PI_2;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::coeffs::{ratio_to_f64, CoefficientTable, FunctionKind};
use crate::error::{domain, Error, Result};

/// Default truncation tolerance.
pub const DEFAULT_TOL: f64 = 1e-13;

/// Relative allowance for rounding in the closed-form majorant and its
/// partial sum; the smallest tail that can be certified is this times
/// tan|z| or sec|z|.
pub const TAIL_SLACK: f64 = 8.0 * f64::EPSILON;

/// Default coefficient table size. Reaches [`DEFAULT_TOL`] for the value
/// series on all of |z| ≤ 1.5 (357 terms needed at |z| = 1.5) and 1e-10 for
/// the m-derivative series there (343 terms).
pub const DEFAULT_TABLE_N: usize = 360;

/// A disk |z| ≤ R with 0 < R < π/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalDomain {
    radius: f64,
}

impl EvalDomain {
    pub const MODULUS_CAP: f64 = 1.0;

    pub fn new(radius: f64) -> Result<Self> {
        if radius > 0.0 && radius < FRAC_PI_2 {
            Ok(Self { radius })
        } else {
            Err(domain(format!(
                "radius R = {radius} must satisfy 0 < R < π/2"
            )))
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, z: Complex64, m: Complex64) -> bool {
        z.norm() <= self.radius && m.norm() <= Self::MODULUS_CAP
    }
}

/// A series value with its truncation radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    #[serde(with = "crate::complex_json")]
    pub value: Complex64,
    /// Rigorous bound on the truncation error (floating rounding excluded).
    pub error_radius: f64,
    /// Number of series terms summed (truncation index T plus one).
    pub terms_used: usize,
    /// Heuristic size of the accumulated floating-point rounding.
    pub rounding_estimate: f64,
}

/// Whether a series computes the function itself or its m-derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Value,
    ParameterDerivative,
}

pub fn sn_series(z: Complex64, m: Complex64, tol: f64, table: &CoefficientTable) -> Result<EvalResult> {
    series(FunctionKind::Sn, SeriesKind::Value, z, m, tol, table)
}

pub fn cn_series(z: Complex64, m: Complex64, tol: f64, table: &CoefficientTable) -> Result<EvalResult> {
    series(FunctionKind::Cn, SeriesKind::Value, z, m, tol, table)
}

pub fn dn_series(z: Complex64, m: Complex64, tol: f64, table: &CoefficientTable) -> Result<EvalResult> {
    series(FunctionKind::Dn, SeriesKind::Value, z, m, tol, table)
}

/// ∂sn/∂m by term-wise differentiation of the coefficient polynomials.
pub fn sn_dm_series(z: Complex64, m: Complex64, tol: f64, table: &CoefficientTable) -> Result<EvalResult> {
    series(FunctionKind::Sn, SeriesKind::ParameterDerivative, z, m, tol, table)
}

pub fn cn_dm_series(z: Complex64, m: Complex64, tol: f64, table: &CoefficientTable) -> Result<EvalResult> {
    series(FunctionKind::Cn, SeriesKind::ParameterDerivative, z, m, tol, table)
}

pub fn dn_dm_series(z: Complex64, m: Complex64, tol: f64, table: &CoefficientTable) -> Result<EvalResult> {
    series(FunctionKind::Dn, SeriesKind::ParameterDerivative, z, m, tol, table)
}

/// Evaluates one series with the smallest truncation order whose tail bound
/// is at most `tol`.
pub fn series(
    kind: FunctionKind,
    series_kind: SeriesKind,
    z: Complex64,
    m: Complex64,
    tol: f64,
    table: &CoefficientTable,
) -> Result<EvalResult> {
    validate_point(z, m)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(domain(format!("tolerance {tol} must be positive and finite")));
    }
    let family = table.scaled().family(kind, series_kind);
    let bound = family.truncation(kind, series_kind, z.norm(), Stop::Tolerance(tol));
    if bound.tail > tol {
        return Err(Error::TableExhausted {
            max_index: table.max_index(),
            achieved: bound.tail,
            tol,
        });
    }
    Ok(family.sum(kind, z, m, bound))
}

/// Evaluates exactly `terms` series terms (indices 0..terms) and reports the
/// tail bound for that order.
pub fn series_with_terms(
    kind: FunctionKind,
    series_kind: SeriesKind,
    z: Complex64,
    m: Complex64,
    terms: usize,
    table: &CoefficientTable,
) -> Result<EvalResult> {
    validate_point(z, m)?;
    if terms == 0 || terms > table.max_index() + 1 {
        return Err(domain(format!(
            "term count {terms} must lie in 1..={}",
            table.max_index() + 1
        )));
    }
    let family = table.scaled().family(kind, series_kind);
    let bound = family.truncation(kind, series_kind, z.norm(), Stop::Terms(terms));
    Ok(family.sum(kind, z, m, bound))
}

/// Checks |z| < π/2, |m| ≤ 1 and finiteness without touching a table.
pub fn validate_point(z: Complex64, m: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite() && m.re.is_finite() && m.im.is_finite()) {
        return Err(domain("arguments must be finite"));
    }
    if m.norm() > 1.0 {
        return Err(domain(format!(
            "parameter |m| = {} exceeds 1; the series is only known to converge for |m| ≤ 1",
            m.norm()
        )));
    }
    if z.norm() >= FRAC_PI_2 {
        return Err(domain(format!(
            "argument |z| = {} must satisfy |z| < π/2",
            z.norm()
        )));
    }
    Ok(())
}

/// Floating-point copies of the coefficient table, each coefficient already
/// divided by the factorial of its z-power.
#[derive(Debug)]
pub(crate) struct ScaledSeries {
    families: [[ScaledFamily; 2]; 3],
}

#[derive(Debug)]
pub(crate) struct ScaledFamily {
    /// coefficients[n][i] = coeff of m^i in p_n, divided by k_n!
    coefficients: Vec<Vec<f64>>,
    /// Dominating term weight for index n (before the |z|^k_n factor).
    majorant: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
enum Stop {
    Tolerance(f64),
    Terms(usize),
}

#[derive(Debug, Clone, Copy)]
struct Truncation {
    terms: usize,
    tail: f64,
    majorant_partial: f64,
}

impl ScaledSeries {
    pub(crate) fn build(table: &CoefficientTable) -> Self {
        let families = FunctionKind::ALL.map(|kind| {
            [SeriesKind::Value, SeriesKind::ParameterDerivative]
                .map(|series_kind| ScaledFamily::build(table, kind, series_kind))
        });
        Self { families }
    }

    fn family(&self, kind: FunctionKind, series_kind: SeriesKind) -> &ScaledFamily {
        let k = match kind {
            FunctionKind::Sn => 0,
            FunctionKind::Cn => 1,
            FunctionKind::Dn => 2,
        };
        let s = match series_kind {
            SeriesKind::Value => 0,
            SeriesKind::ParameterDerivative => 1,
        };
        &self.families[k][s]
    }
}

impl ScaledFamily {
    fn build(table: &CoefficientTable, kind: FunctionKind, series_kind: SeriesKind) -> Self {
        let family = table.family(kind);
        let mut coefficients = Vec::with_capacity(family.len());
        let mut majorant = Vec::with_capacity(family.len());
        let mut factorial = BigInt::one();
        let mut k_done = 0usize;
        for (n, p) in family.iter().enumerate() {
            let k = kind.z_power(n);
            while k_done < k {
                k_done += 1;
                factorial *= k_done;
            }
            let at_one = p.eval_at_one();
            match series_kind {
                SeriesKind::Value => {
                    coefficients.push(
                        p.coefficients()
                            .iter()
                            .map(|c| ratio_to_f64(c, &factorial))
                            .collect(),
                    );
                    majorant.push(ratio_to_f64(&at_one, &factorial));
                }
                SeriesKind::ParameterDerivative => {
                    let dp = p.derivative();
                    coefficients.push(
                        dp.coefficients()
                            .iter()
                            .map(|c| ratio_to_f64(c, &factorial))
                            .collect(),
                    );
                    majorant.push(ratio_to_f64(&(at_one * n), &factorial));
                }
            }
        }
        Self {
            coefficients,
            majorant,
        }
    }

    fn truncation(&self, kind: FunctionKind, series_kind: SeriesKind, x: f64, stop: Stop) -> Truncation {
        let total = majorant_sum(kind, series_kind, x);
        let x2 = x * x;
        let mut power = match kind {
            FunctionKind::Sn => x,
            _ => 1.0,
        };
        let mut partial = Neumaier::default();
        // At x = 0 both the closed form and the partial sums are exact.
        let slack = if x == 0.0 { 0.0 } else { TAIL_SLACK * total };
        let mut tail = total + slack;
        for (n, weight) in self.majorant.iter().enumerate() {
            partial.add(weight * power);
            power *= x2;
            tail = (total - partial.sum()).max(0.0) + slack;
            let done = match stop {
                Stop::Tolerance(tol) => tail <= tol,
                Stop::Terms(terms) => n + 1 == terms,
            };
            if done {
                return Truncation {
                    terms: n + 1,
                    tail,
                    majorant_partial: partial.sum(),
                };
            }
        }
        Truncation {
            terms: self.majorant.len(),
            tail,
            majorant_partial: partial.sum(),
        }
    }

    fn sum(&self, kind: FunctionKind, z: Complex64, m: Complex64, bound: Truncation) -> EvalResult {
        let z2 = z * z;
        let mut power = match kind {
            FunctionKind::Sn => z,
            _ => Complex64::one(),
        };
        let mut value = Complex64::new(0.0, 0.0);
        for (n, coeffs) in self.coefficients[..bound.terms].iter().enumerate() {
            let p = coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * m + c);
            let term = p * power;
            if n % 2 == 0 {
                value += term;
            } else {
                value -= term;
            }
            power *= z2;
        }
        EvalResult {
            value,
            error_radius: bound.tail,
            terms_used: bound.terms,
            rounding_estimate: f64::EPSILON * bound.terms as f64 * bound.majorant_partial,
        }
    }
}

/// (tan x, sec x), both from one `sin_cos` so that tan x agrees bitwise
/// with sn/cn of the circular limit m = 0.
pub fn tan_sec(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    (s / c, 1.0 / c)
}

/// Smallest table size whose dominating tail at |z| = `radius` is provably
/// below `tol`, or `None` if that exceeds `limit`.
///
/// Uses the geometric envelope s_n(1)/(2n+1)!·x^(2n+1), c_n(1)/(2n)!·x^(2n)
/// ≤ (4ζ(2)/π)·q^(2n) with q = 2x/π (from the zeta and beta closed forms of
/// the tangent and secant numbers), with an extra factor n for the
/// m-derivative series. The result overshoots the true requirement by a few
/// terms.
pub fn required_table_size(radius: f64, tol: f64, series_kind: SeriesKind, limit: usize) -> Option<usize> {
    if !((0.0..FRAC_PI_2).contains(&radius) && tol > 0.0) {
        return None;
    }
    let r = (radius / FRAC_PI_2).powi(2);
    if r == 0.0 {
        return Some(0);
    }
    let scale = 4.0 * (std::f64::consts::PI.powi(2) / 6.0) / std::f64::consts::PI;
    // r^(T+1), accumulated multiplicatively
    let mut rt = r;
    for t in 0..=limit {
        let tail = match series_kind {
            SeriesKind::Value => scale * rt / (1.0 - r),
            SeriesKind::ParameterDerivative => {
                let t = t as f64;
                scale * rt * ((t + 1.0) - t * r) / (1.0 - r).powi(2)
            }
        };
        if tail <= tol {
            return Some(t);
        }
        rt *= r;
    }
    None
}

/// Closed form of the full dominating series at x = |z|.
fn majorant_sum(kind: FunctionKind, series_kind: SeriesKind, x: f64) -> f64 {
    let (tan, sec) = tan_sec(x);
    match (kind, series_kind) {
        (FunctionKind::Sn, SeriesKind::Value) => tan,
        (_, SeriesKind::Value) => sec,
        (FunctionKind::Sn, SeriesKind::ParameterDerivative) => (x * sec * sec - tan) / 2.0,
        (_, SeriesKind::ParameterDerivative) => x * sec * tan / 2.0,
    }
}

/// Compensated summation.
#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn sum(&self) -> f64 {
        self.sum + self.compensation
    }
}
