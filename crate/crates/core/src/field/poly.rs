//! Dense univariate polynomial helpers used by the field implementations.
//!
//! Polynomials are coefficient vectors in ascending degree order. The `q_`
//! family works over `BigRational`, the `z_` family over `BigInt`, and the
//! `p_` family over the prime field `GF(p)` with coefficients in `0..p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QPoly = Vec<BigRational>;
pub type ZPoly = Vec<BigInt>;
pub type PPoly = Vec<u64>;

/// Drops trailing zero coefficients in place.
pub fn q_trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn q_deg(p: &QPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    q_trim(&mut out);
    out
}

/// Euclidean division: returns `(quotient, remainder)` with
/// `deg(remainder) < deg(divisor)`. Panics if the divisor is zero.
pub fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = q_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.clone();
    q_trim(&mut rem);
    let mut quot = QPoly::new();
    while let Some(dr) = q_deg(&rem) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let coeff = &rem[dr] / &lead;
        if quot.len() <= shift {
            quot.resize(shift + 1, BigRational::zero());
        }
        quot[shift] = coeff.clone();
        for i in 0..=db {
            let t = &coeff * &b[i];
            rem[shift + i] -= t;
        }
        q_trim(&mut rem);
    }
    (quot, rem)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g` and `g` monic
/// (or zero when both inputs are zero).
pub fn q_ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    q_trim(&mut r0);
    q_trim(&mut r1);
    let mut s0 = vec![BigRational::one()];
    let mut s1 = QPoly::new();
    let mut t0 = QPoly::new();
    let mut t1 = vec![BigRational::one()];
    while q_deg(&r1).is_some() {
        let (q, r) = q_divrem(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        let t = q_sub(&t0, &q_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(d) = q_deg(&r0) {
        let lead = r0[d].clone();
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c /= &lead;
        }
    }
    (r0, s0, t0)
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    q_trim(&mut out);
    out
}

pub fn z_trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    z_trim(&mut out);
    out
}

/// Exact division of integer polynomials; panics if the division leaves a
/// remainder (callers only divide known multiples).
pub fn z_div_exact(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut rem = a.clone();
    z_trim(&mut rem);
    let db = b.iter().rposition(|c| !c.is_zero()).expect("zero divisor");
    let lead = b[db].clone();
    let mut quot = ZPoly::new();
    while let Some(dr) = rem.iter().rposition(|c| !c.is_zero()) {
        assert!(dr >= db, "inexact polynomial division");
        let shift = dr - db;
        let (coeff, r) = num_integer::Integer::div_rem(&rem[dr], &lead);
        assert!(r.is_zero(), "inexact polynomial division");
        if quot.len() <= shift {
            quot.resize(shift + 1, BigInt::zero());
        }
        quot[shift] = coeff.clone();
        for i in 0..=db {
            let t = &coeff * &b[i];
            rem[shift + i] -= t;
        }
        z_trim(&mut rem);
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    quot
}

pub fn p_trim(p: &mut PPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn p_deg(p: &PPoly) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn p_mul(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = mod_add(out[i + j], mod_mul(ai, bj, p), p);
        }
    }
    p_trim(&mut out);
    out
}

pub fn p_rem(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let db = p_deg(b).expect("division by zero polynomial");
    let lead_inv = mod_inv(b[db], p);
    let mut rem = a.clone();
    p_trim(&mut rem);
    while let Some(dr) = p_deg(&rem) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let coeff = mod_mul(rem[dr], lead_inv, p);
        for i in 0..=db {
            let t = mod_mul(coeff, b[i], p);
            rem[shift + i] = mod_sub(rem[shift + i], t, p);
        }
        p_trim(&mut rem);
    }
    rem
}

/// Extended Euclid over `GF(p)[x]`: returns `(g, s, t)` with `s*a + t*b = g`
/// and `g` monic when nonzero.
pub fn p_ext_gcd(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly, PPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    p_trim(&mut r0);
    p_trim(&mut r1);
    let mut s0: PPoly = vec![1];
    let mut s1: PPoly = Vec::new();
    let mut t0: PPoly = Vec::new();
    let mut t1: PPoly = vec![1];
    while let Some(d1) = p_deg(&r1) {
        // One long-division step producing quotient q with r0 = q*r1 + r.
        let mut q: PPoly = Vec::new();
        let lead_inv = mod_inv(r1[d1], p);
        let mut rem = r0.clone();
        while let Some(d0) = p_deg(&rem) {
            if d0 < d1 {
                break;
            }
            let shift = d0 - d1;
            let coeff = mod_mul(rem[d0], lead_inv, p);
            if q.len() <= shift {
                q.resize(shift + 1, 0);
            }
            q[shift] = coeff;
            for i in 0..=d1 {
                let t = mod_mul(coeff, r1[i], p);
                rem[shift + i] = mod_sub(rem[shift + i], t, p);
            }
            p_trim(&mut rem);
        }
        let s = p_sub(&s0, &p_mul(&q, &s1, p), p);
        let t = p_sub(&t0, &p_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(d) = p_deg(&r0) {
        let inv = mod_inv(r0[d], p);
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c = mod_mul(*c, inv, p);
        }
    }
    (r0, s0, t0)
}

fn p_sub(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = mod_sub(out[i], c, p);
    }
    p_trim(&mut out);
    out
}

pub fn mod_add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn mod_sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    mod_pow(a, p - 2, p)
}
