//! Jacobi elliptic functions sn, cn, dn for complex argument and complex
//! parameter |m| ≤ 1, evaluated from exact integer Maclaurin coefficients
//! with rigorous truncation bounds, plus numerical checks of the bounds
//!
//! ```text
//! |sn(z,m)| ≤ sn(|z|,m1)/cn(|z|,m1) ≤ tan|z|
//! |cn(z,m)| ≤ 1/cn(|z|,m1)          ≤ 1/cos|z|
//! |dn(z,m)| ≤ dn(|z|,m1)/cn(|z|,m1) ≤ 1/cos|z|       m1 = 1 - |m|
//! ```
//!
//! for |z| < π/2.

pub mod bounds;
pub mod coeffs;
pub mod complex_json;
pub mod error;
pub mod eval;
pub mod monotonicity;
pub mod sweep;

pub use bounds::{
    check_theorem, coarse_bounds, imag_transform_cn, imag_transform_dn, imag_transform_sn, sharp_bounds,
    BoundReport, ChainRecord, CoarseBounds, EqualityCase, SharpBounds,
};
pub use coeffs::{generate_table, CoefficientTable, FunctionKind, IntegerPolynomial};
pub use error::{Error, Result};
pub use eval::{
    cn_series, dn_series, jacobi_real_agm, required_table_size, sn_series, EvalDomain, EvalResult, RealJacobi,
    SeriesKind, DEFAULT_TABLE_N, DEFAULT_TOL,
};
pub use monotonicity::{f_derivatives, f_values, verify_monotone, MonotonicityReport};
pub use num_complex::Complex64;
pub use sweep::{run_sweep, sample_point, SweepConfig, SweepRecord, SweepSummary};
