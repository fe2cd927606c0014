//! Real-argument, real-parameter sn, cn, dn by descending Landen
//! transformation (Bulirsch's AGM scheme).
//!
//! This path shares nothing with the series evaluation and serves as its
//! oracle on the real axis.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Stop the AGM once |a - b| falls below this fraction of a; the next step
/// would already be converged to double precision.
const AGM_STOP: f64 = 1e-8;
const MAX_STEPS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealJacobi {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// sn(u, m1), cn(u, m1), dn(u, m1) for real u and parameter m1 ∈ [0, 1].
///
/// Tested for |u| < π/2; larger arguments work but are outside the supported
/// domain.
pub fn jacobi_real_agm(u: f64, m1: f64) -> Result<RealJacobi> {
    if !(0.0..=1.0).contains(&m1) {
        return Err(domain(format!("parameter m1 = {m1} must lie in [0, 1]")));
    }
    if !u.is_finite() {
        return Err(domain("argument must be finite"));
    }
    if m1 == 0.0 {
        let (sn, cn) = u.sin_cos();
        return Ok(RealJacobi { sn, cn, dn: 1.0 });
    }
    if m1 == 1.0 {
        let sech = 1.0 / u.cosh();
        return Ok(RealJacobi {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        });
    }

    // Descending AGM of (1, sqrt(1 - m1)); keep the sequences for the
    // backward pass.
    let mut a_seq = [0.0; MAX_STEPS];
    let mut b_seq = [0.0; MAX_STEPS];
    let mut a = 1.0;
    let mut b = 1.0 - m1;
    let mut mean = 1.0;
    let mut last = 0;
    for i in 0..MAX_STEPS {
        last = i;
        a_seq[i] = a;
        b = b.sqrt();
        b_seq[i] = b;
        mean = 0.5 * (a + b);
        if (a - b).abs() <= AGM_STOP * a {
            break;
        }
        b *= a;
        a = mean;
    }

    let (s, c) = (mean * u).sin_cos();
    if s == 0.0 {
        return Ok(RealJacobi {
            sn: 0.0,
            cn: c.signum(),
            dn: 1.0,
        });
    }
    // Backward recurrence on cot-like ratios.
    let mut ratio = c / s;
    let mut cot = mean * ratio;
    let mut dn = 1.0;
    for i in (0..=last).rev() {
        ratio *= cot;
        cot *= dn;
        dn = (b_seq[i] + ratio) / (a_seq[i] + ratio);
        ratio = cot / a_seq[i];
    }
    let mag = 1.0 / (cot * cot + 1.0).sqrt();
    let sn = if s >= 0.0 { mag } else { -mag };
    Ok(RealJacobi {
        sn,
        cn: cot * sn,
        dn,
    })
}
