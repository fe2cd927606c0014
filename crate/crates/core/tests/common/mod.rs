#![allow(dead_code)]

use std::sync::OnceLock;

use ellipk::{generate_table, jacobi_real_agm, CoefficientTable, Complex64, DEFAULT_TABLE_N};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Full-size table shared by every test in a binary.
pub fn table() -> &'static CoefficientTable {
    static T: OnceLock<CoefficientTable> = OnceLock::new();
    T.get_or_init(|| generate_table(DEFAULT_TABLE_N))
}

pub type Poly = Vec<BigInt>;

fn add_into(acc: &mut Poly, p: &Poly, scale: &BigInt) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (a, c) in acc.iter_mut().zip(p) {
        *a += c * scale;
    }
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// z^k/k!-scaled Taylor coefficients of sn, cn, dn in Z[m] up to order
/// `max_order`, from sn' = cn·dn, cn' = -sn·dn, dn' = -m·sn·cn and the
/// binomial (Leibniz) rule for products.
pub fn taylor_oracle(max_order: usize) -> [Vec<Poly>; 3] {
    let mut s: Vec<Poly> = vec![Vec::new()];
    let mut c: Vec<Poly> = vec![vec![BigInt::one()]];
    let mut d: Vec<Poly> = vec![vec![BigInt::one()]];
    let mut binom: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..max_order {
        let (mut cd, mut sd, mut sc) = (Poly::new(), Poly::new(), Poly::new());
        for j in 0..=k {
            add_into(&mut cd, &mul(&c[j], &d[k - j]), &binom[j]);
            add_into(&mut sd, &mul(&s[j], &d[k - j]), &binom[j]);
            add_into(&mut sc, &mul(&s[j], &c[k - j]), &binom[j]);
        }
        s.push(trim(cd));
        c.push(trim(sd.into_iter().map(|x| -x).collect()));
        // -m·sn·cn shifts the coefficients up one power of m.
        let mut msc = vec![BigInt::zero()];
        msc.extend(sc.into_iter().map(|x| -x));
        d.push(trim(msc));
        // Row k+1 of Pascal's triangle.
        let mut next = vec![BigInt::one(); k + 2];
        for j in 1..=k {
            next[j] = &binom[j - 1] + &binom[j];
        }
        binom = next;
    }
    [s, c, d]
}

/// (s_n, c_n, d_n) for n = 0..=max_n from [`taylor_oracle`], with the
/// alternating signs removed.
pub fn coefficient_oracle(max_n: usize) -> [Vec<Poly>; 3] {
    let [s, c, d] = taylor_oracle(2 * max_n + 1);
    let unsign = |p: &Poly, n: usize| -> Poly {
        if n % 2 == 0 {
            p.clone()
        } else {
            p.iter().map(|x| -x).collect()
        }
    };
    [
        (0..=max_n).map(|n| unsign(&s[2 * n + 1], n)).collect(),
        (0..=max_n).map(|n| unsign(&c[2 * n], n)).collect(),
        (0..=max_n).map(|n| unsign(&d[2 * n], n)).collect(),
    ]
}

/// sn, cn, dn at complex z = x + iy for real m ∈ [0, 1], from real-argument
/// AGM values and the addition formulas with the imaginary transformation.
pub fn complex_argument_oracle(z: Complex64, m: f64) -> (Complex64, Complex64, Complex64) {
    let a = jacobi_real_agm(z.re, m).unwrap();
    let b = jacobi_real_agm(z.im, 1.0 - m).unwrap();
    let (s, c, d) = (a.sn, a.cn, a.dn);
    let (s1, c1, d1) = (b.sn, b.cn, b.dn);
    let den = c1 * c1 + m * s * s * s1 * s1;
    (
        Complex64::new(s * d1, c * d * s1 * c1) / den,
        Complex64::new(c * c1, -s * d * s1 * d1) / den,
        Complex64::new(d * c1 * d1, -m * s * c * s1) / den,
    )
}
