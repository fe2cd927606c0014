//! Monotonicity of the sharp bounds in the complementary parameter.
//!
//! For fixed u ∈ [0, π/2) the functions
//!
//! ```text
//! f1(m1) = sn(u,m1)/cn(u,m1)   f2(m1) = 1/cn(u,m1)   f3(m1) = dn(u,m1)/cn(u,m1)
//! ```
//!
//! decrease strictly on m1 ∈ [0, 1] when u > 0. Derivatives are taken with
//! respect to the parameter slot itself, so no sign flip from m1 = 1 - |m|
//! enters. They are computed by the quotient rule over the term-wise
//! differentiated series and cross-checked against finite differences of
//! the AGM values.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::sharp_bounds;
use crate::coeffs::{CoefficientTable, FunctionKind};
use crate::error::{domain, Error, Result};
use crate::eval::{series, SeriesKind};

/// Tolerance for the series values entering the quotient rule.
pub const VALUE_TOL: f64 = 1e-13;
/// Tolerance for the m-derivative series.
pub const DERIVATIVE_TOL: f64 = 1e-10;
/// Default finite-difference stride.
pub const DEFAULT_STRIDE: f64 = 1e-5;
/// Finite differences agree if within this relative error...
pub const FD_REL_TOL: f64 = 1e-5;
/// ...or this absolute error.
pub const FD_ABS_TOL: f64 = 1e-8;
/// A derivative counts as negative when below this.
pub const NEGATIVE_THRESHOLD: f64 = -1e-15;

/// Default grid: u = 0.1, ..., 1.5 and m1 = 0, 0.05, ..., 1.
pub const DEFAULT_U_MAX: f64 = 1.5;
pub const DEFAULT_U_COUNT: usize = 15;
pub const DEFAULT_M1_COUNT: usize = 21;

/// (f1, f2, f3) at (u, m1). Same code path as [`sharp_bounds`].
pub fn f_values(u: f64, m1: f64) -> Result<[f64; 3]> {
    let b = sharp_bounds(u, m1)?;
    Ok([b.sn, b.cn, b.dn])
}

/// Analytic derivatives together with the largest finite-difference gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivatives {
    pub analytic: [f64; 3],
    pub finite_difference: [f64; 3],
    /// max_j |analytic_j - finite_difference_j|
    pub discrepancy: f64,
}

/// d f_j / d m1 at (u, m1), checked against a finite difference of stride `h`
/// (central where m1 ± h stays in [0, 1], second-order one-sided otherwise).
pub fn f_derivatives(u: f64, m1: f64, h: f64, table: &CoefficientTable) -> Result<Derivatives> {
    check_point(u, m1)?;
    if !(h > 0.0 && 2.0 * h <= 1.0) {
        return Err(domain(format!("stride h = {h} must lie in (0, 0.5]")));
    }
    let analytic = analytic_derivatives(u, m1, table)?;
    let finite_difference = finite_difference(u, m1, h)?;
    let mut discrepancy: f64 = 0.0;
    for j in 0..3 {
        let (a, n) = (analytic[j], finite_difference[j]);
        let gap = (a - n).abs();
        discrepancy = discrepancy.max(gap);
        if gap > FD_ABS_TOL && gap > FD_REL_TOL * a.abs() {
            return Err(Error::Consistency {
                what: format!("f{}'({u}, {m1})", j + 1),
                analytic: a,
                numeric: n,
            });
        }
    }
    Ok(Derivatives {
        analytic,
        finite_difference,
        discrepancy,
    })
}

fn check_point(u: f64, m1: f64) -> Result<()> {
    if !(0.0..FRAC_PI_2).contains(&u) {
        return Err(domain(format!("u = {u} must lie in [0, π/2)")));
    }
    if !(0.0..=1.0).contains(&m1) {
        return Err(domain(format!("m1 = {m1} must lie in [0, 1]")));
    }
    Ok(())
}

fn analytic_derivatives(u: f64, m1: f64, table: &CoefficientTable) -> Result<[f64; 3]> {
    let z = Complex64::new(u, 0.0);
    let m = Complex64::new(m1, 0.0);
    let value = |kind| series(kind, SeriesKind::Value, z, m, VALUE_TOL, table).map(|r| r.value.re);
    let slope = |kind| {
        series(kind, SeriesKind::ParameterDerivative, z, m, DERIVATIVE_TOL, table).map(|r| r.value.re)
    };
    let (sn, cn, dn) = (value(FunctionKind::Sn)?, value(FunctionKind::Cn)?, value(FunctionKind::Dn)?);
    let (dsn, dcn, ddn) = (slope(FunctionKind::Sn)?, slope(FunctionKind::Cn)?, slope(FunctionKind::Dn)?);
    if cn <= 0.0 {
        return Err(Error::Pole { u, m1, cn });
    }
    let cn2 = cn * cn;
    Ok([
        (dsn * cn - sn * dcn) / cn2,
        -dcn / cn2,
        (ddn * cn - dn * dcn) / cn2,
    ])
}

fn finite_difference(u: f64, m1: f64, h: f64) -> Result<[f64; 3]> {
    let f = |p: f64| f_values(u, p);
    let mut out = [0.0; 3];
    if m1 - h >= 0.0 && m1 + h <= 1.0 {
        let (lo, hi) = (f(m1 - h)?, f(m1 + h)?);
        for j in 0..3 {
            out[j] = (hi[j] - lo[j]) / (2.0 * h);
        }
    } else {
        // Three-point one-sided stencil pointing into the interval.
        let step = if m1 - h < 0.0 { h } else { -h };
        let (f0, f1, f2) = (f(m1)?, f(m1 + step)?, f(m1 + 2.0 * step)?);
        for j in 0..3 {
            out[j] = (-3.0 * f0[j] + 4.0 * f1[j] - f2[j]) / (2.0 * step);
        }
    }
    Ok(out)
}

/// One row of a monotonicity sweep at fixed u.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub u: f64,
    pub m1_grid: Vec<f64>,
    pub df1: Vec<f64>,
    pub df2: Vec<f64>,
    pub df3: Vec<f64>,
    pub min_abs_derivative: f64,
    /// Every derivative sample is below -1e-15 and u > 0.
    pub all_negative: bool,
    /// f_j strictly decreases between consecutive grid points.
    pub sampled_decreasing: bool,
    /// u = 0, where every f_j is constant.
    pub degenerate: bool,
    pub max_fd_discrepancy: f64,
}

impl MonotonicityReport {
    /// Degenerate rows are exempt.
    pub fn passes(&self) -> bool {
        self.degenerate || (self.all_negative && self.sampled_decreasing)
    }

    pub fn derivatives(&self, j: usize) -> &[f64] {
        match j {
            0 => &self.df1,
            1 => &self.df2,
            _ => &self.df3,
        }
    }
}

/// u_i = u_max·i/count for i = 1..=count, optionally with a leading u = 0.
pub fn u_grid(u_max: f64, count: usize, include_zero: bool) -> Vec<f64> {
    let start = if include_zero { 0 } else { 1 };
    (start..=count).map(|i| u_max * i as f64 / count as f64).collect()
}

/// `count` evenly spaced points from 0 to 1; a single point is 0.
pub fn m1_grid(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..count).map(|i| i as f64 / (count - 1) as f64).collect(),
    }
}

pub fn verify_monotone(u_grid: &[f64], m1_grid: &[f64], table: &CoefficientTable) -> Result<Vec<MonotonicityReport>> {
    verify_monotone_with_stride(u_grid, m1_grid, DEFAULT_STRIDE, table)
}

pub fn verify_monotone_with_stride(
    u_grid: &[f64],
    m1_grid: &[f64],
    h: f64,
    table: &CoefficientTable,
) -> Result<Vec<MonotonicityReport>> {
    if m1_grid.is_empty() {
        return Err(domain("m1 grid is empty"));
    }
    if m1_grid.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(domain("m1 grid must be strictly increasing"));
    }
    u_grid
        .par_iter()
        .map(|&u| monotone_row(u, m1_grid, h, table))
        .collect()
}

fn monotone_row(u: f64, m1_grid: &[f64], h: f64, table: &CoefficientTable) -> Result<MonotonicityReport> {
    let mut df = [Vec::new(), Vec::new(), Vec::new()];
    let mut values = Vec::with_capacity(m1_grid.len());
    let mut max_fd_discrepancy: f64 = 0.0;
    for &m1 in m1_grid {
        let d = f_derivatives(u, m1, h, table)?;
        max_fd_discrepancy = max_fd_discrepancy.max(d.discrepancy);
        for (column, &slope) in df.iter_mut().zip(&d.analytic) {
            column.push(slope);
        }
        values.push(f_values(u, m1)?);
    }
    let degenerate = u == 0.0;
    let min_abs_derivative = df.iter().flatten().fold(f64::INFINITY, |acc, d| acc.min(d.abs()));
    let all_negative = !degenerate && df.iter().flatten().all(|&d| d < NEGATIVE_THRESHOLD);
    let sampled_decreasing = !degenerate
        && values.windows(2).all(|w| (0..3).all(|j| w[0][j] > w[1][j]));
    let [df1, df2, df3] = df;
    Ok(MonotonicityReport {
        u,
        m1_grid: m1_grid.to_vec(),
        df1,
        df2,
        df3,
        min_abs_derivative,
        all_negative,
        sampled_decreasing,
        degenerate,
        max_fd_discrepancy,
    })
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

    #[test]
    fn values_at_limits() {
        assert_eq!(f_values(0.0, 0.3).unwrap(), [0.0, 1.0, 1.0]);
        let v = f_values(0.5, 0.0).unwrap();
        let (tan, sec) = crate::eval::tan_sec(0.5);
        assert_eq!(v, [tan, sec, sec]);
        let v = f_values(0.5, 1.0).unwrap();
        assert!((v[0] - 0.5f64.sinh()).abs() < 1e-15);
        assert!((v[1] - 0.5f64.cosh()).abs() < 1e-15);
        assert!((v[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn delegation_is_bitwise() {
        for &(u, m1) in &[(0.3, 0.2), (1.2, 0.9), (0.01, 0.5)] {
            let b = sharp_bounds(u, m1).unwrap();
            assert_eq!(f_values(u, m1).unwrap(), [b.sn, b.cn, b.dn]);
        }
    }

    #[test]
    fn derivatives_vanish_at_origin() {
        let d = f_derivatives(0.0, 0.4, DEFAULT_STRIDE, table()).unwrap();
        assert_eq!(d.analytic, [0.0, 0.0, 0.0]);
        assert_eq!(d.finite_difference, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn derivatives_negative_and_consistent() {
        let d = f_derivatives(0.5, 0.5, 1e-5, table()).unwrap();
        for j in 0..3 {
            assert!(d.analytic[j] < 0.0);
            let rel = (d.analytic[j] - d.finite_difference[j]).abs() / d.analytic[j].abs();
            assert!(rel <= 1e-5, "f{}: rel {rel}", j + 1);
        }
    }

    #[test]
    fn one_sided_stencils_at_endpoints() {
        for m1 in [0.0, 1.0] {
            let d = f_derivatives(0.9, m1, 1e-5, table()).unwrap();
            assert!(d.discrepancy < 1e-8, "m1 = {m1}: {d:?}");
        }
    }

    #[test]
    fn inconsistent_stride_is_reported() {
        // A coarse stride makes the finite difference visibly wrong.
        let err = f_derivatives(1.0, 0.5, 0.5, table()).unwrap_err();
        assert!(matches!(err, Error::Consistency { .. }), "{err:?}");
    }

    #[test]
    fn rejects_bad_points() {
        assert!(matches!(f_derivatives(1.6, 0.5, 1e-5, table()), Err(Error::Domain(_))));
        assert!(matches!(f_derivatives(0.5, 1.5, 1e-5, table()), Err(Error::Domain(_))));
        assert!(matches!(f_derivatives(0.5, 0.5, 0.0, table()), Err(Error::Domain(_))));
        assert!(verify_monotone(&[0.5], &[0.5, 0.2], table()).is_err());
    }

    #[test]
    fn single_row() {
        let rows = verify_monotone(&[0.5], &m1_grid(21), table()).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert!(r.all_negative && r.sampled_decreasing && !r.degenerate);
        assert!(r.passes());
        assert_eq!(r.df1.len(), 21);
        assert!(r.min_abs_derivative > 0.0);
    }

    #[test]
    fn degenerate_row() {
        let rows = verify_monotone(&[0.0], &m1_grid(5), table()).unwrap();
        let r = &rows[0];
        assert!(r.degenerate && !r.all_negative);
        assert!(r.df1.iter().chain(&r.df2).chain(&r.df3).all(|&d| d == 0.0));
        assert_eq!(r.min_abs_derivative, 0.0);
        assert!(r.passes());
    }

    #[test]
    fn tangent_exceeds_sinh() {
        for i in 1..=15 {
            let u = 0.1 * i as f64;
            assert!(f_values(u, 0.0).unwrap()[0] > f_values(u, 1.0).unwrap()[0]);
        }
    }

    #[test]
    fn grids() {
        assert_eq!(u_grid(1.5, 3, false), vec![0.5, 1.0, 1.5]);
        assert_eq!(u_grid(1.5, 3, true), vec![0.0, 0.5, 1.0, 1.5]);
        assert_eq!(m1_grid(3), vec![0.0, 0.5, 1.0]);
        assert_eq!(m1_grid(1), vec![0.0]);
        let g = m1_grid(DEFAULT_M1_COUNT);
        assert_eq!(g[1], 0.05);
        assert_eq!(*g.last().unwrap(), 1.0);
    }
}
