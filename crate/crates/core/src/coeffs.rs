//! Exact coefficient polynomials of the Maclaurin expansions
//!
//! ```text
//! sn(z,m) = Σ (-1)^n s_n(m) z^(2n+1)/(2n+1)!
//! cn(z,m) = Σ (-1)^n c_n(m) z^(2n)/(2n)!
//! dn(z,m) = Σ (-1)^n d_n(m) z^(2n)/(2n)!
//! ```
//!
//! Every s_n, c_n, d_n is a polynomial in m with nonnegative integer
//! coefficients. They are generated exactly with the derivative-polynomial
//! method: each derivative of sn, cn or dn is a polynomial in s = sn (with
//! coefficients in Z[m]) times one of the factors 1, cn, dn or cn·dn. Using
//!
//! ```text
//! sn' = cn·dn,  cn' = -sn·dn,  dn' = -m·sn·cn,  cn² = 1 - sn²,  dn² = 1 - m·sn²
//! ```
//!
//! differentiation becomes a linear map on those polynomials, and the value
//! at z = 0 (where s = 0 and cn = dn = 1) is the constant term in s. All
//! arithmetic is in Z[m], so integrality holds by construction.
//!
//! d_n is obtained from c_n through the reciprocal-parameter transformation
//! dn(z,m) = cn(√m·z, 1/m), i.e. d_n(m) = m^n · c_n(1/m).

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Polynomial in m with arbitrary-precision integer coefficients.
///
/// `coefficients()[i]` is the coefficient of m^i. Trailing zeros are trimmed,
/// so the zero polynomial is the empty sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The coefficient of m^i (zero past the degree).
    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Exact value at an integer point.
    pub fn eval_exact(&self, m: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * m + c)
    }

    /// Exact value at m = 1, the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Floating-point value at complex `m`, Horner order.
    pub fn eval(&self, m: Complex64) -> Complex64 {
        eval_polynomial(self, m)
    }

    pub fn derivative(&self) -> IntegerPolynomial {
        differentiate_polynomial(self)
    }

    /// `m^n · p(1/m)`; requires `n >= degree`.
    fn reflect(&self, n: usize) -> IntegerPolynomial {
        debug_assert!(self.degree().is_none_or(|d| d <= n));
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(BigInt::to_string).collect()
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}")?,
            }
            match i {
                0 => {}
                1 => f.write_str("m")?,
                _ => write!(f, "m^{i}")?,
            }
        }
        Ok(())
    }
}

/// Σ coeff_i · m^i in floating point, highest index first.
pub fn eval_polynomial(p: &IntegerPolynomial, m: Complex64) -> Complex64 {
    p.coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * m + big_to_f64(c)
        })
}

/// Exact d/dm.
pub fn differentiate_polynomial(p: &IntegerPolynomial) -> IntegerPolynomial {
    IntegerPolynomial::new(
        p.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Which of the three functions a coefficient family belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionKind {
    Sn,
    Cn,
    Dn,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 3] = [FunctionKind::Sn, FunctionKind::Cn, FunctionKind::Dn];

    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Sn => "sn",
            FunctionKind::Cn => "cn",
            FunctionKind::Dn => "dn",
        }
    }

    /// Power of z multiplying the n-th coefficient: 2n+1 for sn, 2n otherwise.
    pub fn z_power(self, n: usize) -> usize {
        match self {
            FunctionKind::Sn => 2 * n + 1,
            FunctionKind::Cn | FunctionKind::Dn => 2 * n,
        }
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The families s_n, c_n, d_n for n = 0..=N. Immutable once generated.
#[derive(Debug)]
pub struct CoefficientTable {
    sn: Vec<IntegerPolynomial>,
    cn: Vec<IntegerPolynomial>,
    dn: Vec<IntegerPolynomial>,
    max_index: usize,
    scaled: std::sync::OnceLock<crate::eval::ScaledSeries>,
}

/// One exported row: `{"kind": "sn", "n": 2, "coeffs": ["1", "14", "1"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub kind: FunctionKind,
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl CoefficientTable {
    /// Generates the three families up to index `max_index`.
    ///
    /// Cost grows like N⁵ limb operations (N³ polynomial entries of
    /// O(N log N) bits). In an optimized build N = 100 takes milliseconds and
    /// N = 360 about four seconds on one core; the N = 360 table holds
    /// roughly 80 MB. Beyond N ≈ 600 generation becomes impractical.
    pub fn generate(max_index: usize) -> Self {
        let (sn, cn) = rayon::join(
            || derivative_chain(Chain::Sn, max_index),
            || derivative_chain(Chain::Cn, max_index),
        );
        let dn = cn
            .iter()
            .enumerate()
            .map(|(n, c)| c.reflect(n))
            .collect();
        Self {
            sn,
            cn,
            dn,
            max_index,
            scaled: std::sync::OnceLock::new(),
        }
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn family(&self, kind: FunctionKind) -> &[IntegerPolynomial] {
        match kind {
            FunctionKind::Sn => &self.sn,
            FunctionKind::Cn => &self.cn,
            FunctionKind::Dn => &self.dn,
        }
    }

    pub fn get(&self, kind: FunctionKind, n: usize) -> Option<&IntegerPolynomial> {
        self.family(kind).get(n)
    }

    pub fn rows(&self) -> impl Iterator<Item = CoefficientRow> + '_ {
        FunctionKind::ALL.into_iter().flat_map(move |kind| {
            self.family(kind)
                .iter()
                .enumerate()
                .map(move |(n, p)| CoefficientRow {
                    kind,
                    n,
                    coeffs: p.to_decimal_strings(),
                })
        })
    }

    /// JSON array with one row object per line; byte-identical for equal N.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[\n");
        let mut first = true;
        for row in self.rows() {
            if !first {
                out.push_str(",\n");
            }
            first = false;
            out.push_str(&serde_json::to_string(&row).expect("row serializes"));
        }
        out.push_str("\n]\n");
        out
    }

    pub(crate) fn scaled(&self) -> &crate::eval::ScaledSeries {
        self.scaled
            .get_or_init(|| crate::eval::ScaledSeries::build(self))
    }
}

/// Shorthand for [`CoefficientTable::generate`].
pub fn generate_table(max_index: usize) -> CoefficientTable {
    CoefficientTable::generate(max_index)
}

#[derive(Clone, Copy)]
enum Chain {
    Sn,
    Cn,
}

/// Multiplier of the current derivative: f^(k) = P(s) · factor.
#[derive(Clone, Copy)]
enum Factor {
    One,
    CnDn,
    Cn,
    Dn,
}

/// Little-endian 64-bit limbs of a nonnegative integer.
type Limbs = Vec<u64>;
/// Polynomial in m with `Limbs` coefficients.
type MPoly = Vec<Limbs>;

const NONE: (u64, &MPoly, usize, Option<usize>) = (0, &Vec::new(), 0, None);

/// Runs the derivative recurrence for sn or cn and returns s_n (or c_n) for
/// n = 0..=max_index.
///
/// The coefficient of s^j in the k-th derivative has sign σ_k·(-1)^(j/2)
/// (j stepping by two), so in every update below the contributions of
/// P[j+1], P[j-1] and P[j-3] carry the same sign and never cancel. The
/// recurrence therefore runs on magnitudes only, and the constant term of
/// derivative 2n+1 (resp. 2n) is s_n (resp. c_n) itself, the (-1)^n of the
/// series being exactly that sign pattern.
fn derivative_chain(chain: Chain, max_index: usize) -> Vec<IntegerPolynomial> {
    let (mut factor, mut poly, last_order) = match chain {
        // sn = s
        Chain::Sn => (Factor::One, vec![MPoly::new(), vec![vec![1]]], 2 * max_index + 1),
        // cn = 1 · cn
        Chain::Cn => (Factor::Cn, vec![vec![vec![1]]], 2 * max_index),
    };
    let mut next: Vec<MPoly> = Vec::new();
    let mut out = Vec::with_capacity(max_index + 1);

    for order in 0..=last_order {
        let wanted = match chain {
            Chain::Sn => order % 2 == 1,
            Chain::Cn => order % 2 == 0,
        };
        if wanted {
            let constant = poly.first().map(Vec::as_slice).unwrap_or_default();
            let n = order / 2;
            let coeffs = match chain {
                Chain::Sn => (0..=n).map(|i| limbs_to_big(&constant[i.min(n - i)])).collect(),
                Chain::Cn => constant.iter().map(|l| limbs_to_big(l)).collect(),
            };
            out.push(IntegerPolynomial::new(coeffs));
        }
        if order == last_order {
            break;
        }
        // Powers s^j with j > remaining orders never reach the constant term.
        let keep = last_order - order - 1;
        let palindrome = matches!(chain, Chain::Sn).then_some(order + 1);
        factor = differentiate_step(factor, &poly, &mut next, keep, palindrome);
        std::mem::swap(&mut poly, &mut next);
    }
    out
}

/// One differentiation: writes the magnitudes of the polynomial of
/// (P · factor)' into `out`, truncated to s^0..=s^keep, and returns the new
/// factor.
///
/// For the sn chain every coefficient of s^j in derivative k is palindromic
/// in m of degree (k + j - 1)/2, because √m·sn(z,m) = sn(√m·z, 1/m). The
/// update only moves from m^(i-1) to m^i, so the low half of each
/// palindrome is closed under it; `palindrome = Some(k)` keeps only
/// m^0..=m^(D/2 + 1) for output derivative k.
///
/// With A = P[j+1], B = P[j-1], C = P[j-3]:
///
/// ```text
/// 1     -> cn·dn : (j+1)A
/// cn·dn -> 1     : (j+1)A + j(1+m)B + (j-1)mC
/// cn    -> dn    : (j+1)A + jB
/// dn    -> cn    : (j+1)A + jmB
/// ```
fn differentiate_step(
    factor: Factor,
    poly: &[MPoly],
    out: &mut Vec<MPoly>,
    keep: usize,
    palindrome: Option<usize>,
) -> Factor {
    let (next_factor, s_growth) = match factor {
        Factor::One => (Factor::CnDn, 0),
        Factor::CnDn => (Factor::One, 3),
        Factor::Cn => (Factor::Dn, 1),
        Factor::Dn => (Factor::Cn, 1),
    };
    let len = (poly.len() + s_growth).min(keep + 1);
    out.resize_with(len, MPoly::new);
    let empty = MPoly::new();
    let term = |j: Option<usize>| j.and_then(|j| poly.get(j)).unwrap_or(&empty);

    for (j, dst) in out.iter_mut().enumerate() {
        let a = term(Some(j + 1));
        let b = term(j.checked_sub(1));
        let c = term(j.checked_sub(3));
        // Degree of the palindromes in the input derivative (order k - 1).
        let source_degree =
            |jj: Option<usize>| palindrome.zip(jj).map(|(order, jj)| (order + jj - 2) / 2);
        let j = j as u64;
        // (weight, polynomial, shift in m, palindrome degree)
        let parts: [(u64, &MPoly, usize, Option<usize>); 4] = match factor {
            Factor::One => [(j + 1, a, 0, source_degree(Some(j as usize + 1))), NONE, NONE, NONE],
            Factor::CnDn => {
                let jb = (j as usize).checked_sub(1);
                let jc = (j as usize).checked_sub(3);
                [
                    (j + 1, a, 0, source_degree(Some(j as usize + 1))),
                    (j, b, 0, source_degree(jb)),
                    (j, b, 1, source_degree(jb)),
                    (j.saturating_sub(1), c, 1, source_degree(jc)),
                ]
            }
            Factor::Cn => [(j + 1, a, 0, None), (j, b, 0, None), NONE, NONE],
            Factor::Dn => [(j + 1, a, 0, None), (j, b, 1, None), NONE, NONE],
        };
        let needed = parts
            .iter()
            .filter(|(w, p, _, _)| *w != 0 && !p.is_empty())
            .map(|&(_, p, shift, degree)| match degree {
                Some(d) => d + 1 + shift,
                None => p.len() + shift,
            })
            .max()
            .unwrap_or(0);
        let needed = match palindrome {
            Some(order) => needed.min((order + j as usize - 1) / 4 + 1),
            None => needed,
        };
        dst.resize_with(needed, Limbs::new);
        for (i, limbs) in dst.iter_mut().enumerate() {
            let mut sources: [(u64, &[u64]); 4] = [(0, &[]); 4];
            for (slot, &(w, p, shift, degree)) in sources.iter_mut().zip(&parts) {
                let Some(k) = i.checked_sub(shift) else { continue };
                let k = match degree {
                    Some(d) if k > d => continue,
                    Some(d) => k.min(d - k),
                    None => k,
                };
                if let Some(src) = p.get(k) {
                    *slot = (w, src.as_slice());
                }
            }
            linear_combination(limbs, &sources);
        }
        while dst.last().is_some_and(Vec::is_empty) {
            dst.pop();
        }
    }
    next_factor
}

/// dst = Σ weight · src over at most four sources with weights below 2^32.
fn linear_combination(dst: &mut Limbs, sources: &[(u64, &[u64]); 4]) {
    let mut active = [(0u64, &[][..]); 4];
    let mut count = 0;
    for &(w, s) in sources {
        if w != 0 && !s.is_empty() {
            active[count] = (w, s);
            count += 1;
        }
    }
    dst.clear();
    match count {
        0 => {}
        1 => combine::<1>(dst, [active[0]]),
        2 => combine::<2>(dst, [active[0], active[1]]),
        3 => combine::<3>(dst, [active[0], active[1], active[2]]),
        _ => combine::<4>(dst, active),
    }
}

fn combine<const K: usize>(dst: &mut Limbs, sources: [(u64, &[u64]); K]) {
    debug_assert!(sources.iter().all(|&(w, _)| w < 1 << 32));
    let short = sources.iter().map(|(_, s)| s.len()).min().unwrap_or(0);
    let long = sources.iter().map(|(_, s)| s.len()).max().unwrap_or(0);
    dst.reserve(long + 1);
    let mut carry: u128 = 0;
    // Four products below 2^96 plus a carry below 2^34 cannot overflow.
    for l in 0..short {
        let mut acc = carry;
        for &(w, s) in &sources {
            acc += u128::from(w) * u128::from(s[l]);
        }
        dst.push(acc as u64);
        carry = acc >> 64;
    }
    for l in short..long {
        let mut acc = carry;
        for &(w, s) in &sources {
            if let Some(&x) = s.get(l) {
                acc += u128::from(w) * u128::from(x);
            }
        }
        dst.push(acc as u64);
        carry = acc >> 64;
    }
    while carry != 0 {
        dst.push(carry as u64);
        carry >>= 64;
    }
    while dst.last() == Some(&0) {
        dst.pop();
    }
}

fn limbs_to_big(limbs: &[u64]) -> BigInt {
    let digits: Vec<u32> = limbs
        .iter()
        .flat_map(|&l| [l as u32, (l >> 32) as u32])
        .collect();
    BigInt::from(num_bigint::BigUint::new(digits))
}

/// Converts a big integer to the nearest-ish f64 (saturating to ±inf).
pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// `num / den` as f64 for huge operands, accurate to a few ulps.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let (nm, ne) = split_mantissa(num);
    let (dm, de) = split_mantissa(den);
    scale_by_pow2(nm / dm, ne - de)
}

/// x = mantissa · 2^exponent with |mantissa| < 2^64.
fn split_mantissa(x: &BigInt) -> (f64, i64) {
    let bits = x.bits() as i64;
    let shift = (bits - 64).max(0);
    let top: BigInt = x >> shift as usize;
    (top.to_f64().expect("64-bit value fits"), shift)
}

fn scale_by_pow2(x: f64, e: i64) -> f64 {
    let half = (e / 2) as i32;
    x * 2f64.powi(half) * 2f64.powi((e - e / 2) as i32)
}
