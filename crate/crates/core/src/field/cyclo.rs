//! Cyclotomic field contexts: `Q(zeta_m)` as `Q[x]/(Phi_m)`.
//!
//! Elements are coefficient vectors of length `phi(m)`. Multiplication
//! reduces through a per-conductor table of `x^(phi(m)+i) mod Phi_m` rows,
//! computed once and cached for the life of the process.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{self, QPoly, ZPoly};
use crate::{Error, Result};

/// Euler totient by trial-division factorization.
pub fn phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            while m % d == 0 {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// The m-th cyclotomic polynomial over the integers, ascending coefficients,
/// computed as `(x^m - 1) / prod_(d|m, d<m) Phi_d`.
pub fn cyclotomic_polynomial(m: u64) -> ZPoly {
    assert!(m >= 1);
    let mut numerator: ZPoly = vec![BigInt::zero(); m as usize + 1];
    numerator[0] = -BigInt::one();
    numerator[m as usize] = BigInt::one();
    let mut acc: ZPoly = vec![BigInt::one()];
    for d in 1..m {
        if m % d == 0 {
            acc = poly::z_mul(&acc, &cyclotomic_cached(d));
        }
    }
    poly::z_div_exact(&numerator, &acc)
}

fn cyclotomic_cached(m: u64) -> ZPoly {
    static CACHE: OnceLock<Mutex<HashMap<u64, ZPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let p = cyclotomic_polynomial(m);
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// Shared per-conductor data: the minimal polynomial and reduction rows.
pub struct CycloCtx {
    pub m: u64,
    pub degree: usize,
    /// `Phi_m` as rationals, ascending, monic of degree `degree`.
    pub modulus: QPoly,
    /// Coefficients of `x^degree mod Phi_m`, the single substitution row
    /// used to fold higher powers down.
    top_row: Vec<BigRational>,
}

impl CycloCtx {
    /// Fetches (building and caching on first use) the context for `m`.
    pub fn get(m: u64) -> Result<Arc<CycloCtx>> {
        if m < 1 {
            return Err(Error::InvalidField(format!("conductor {m}")));
        }
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloCtx>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = cache.lock().unwrap().get(&m) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(CycloCtx::build(m));
        cache.lock().unwrap().insert(m, ctx.clone());
        Ok(ctx)
    }

    fn build(m: u64) -> CycloCtx {
        let z_mod = cyclotomic_cached(m);
        let degree = z_mod.len() - 1;
        let modulus: QPoly = z_mod
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Phi_m is monic, so x^degree = -(lower coefficients).
        let top_row: Vec<BigRational> = modulus[..degree].iter().map(|c| -c).collect();
        CycloCtx {
            m,
            degree,
            modulus,
            top_row,
        }
    }

    /// Reduces an arbitrary-length coefficient vector to length `degree`,
    /// folding the highest power down one step at a time. Each substitution
    /// strictly lowers the top degree, so this terminates for any input.
    pub fn reduce(&self, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree;
        while coeffs.len() > d {
            let top = coeffs.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - d;
            for (j, r) in self.top_row.iter().enumerate() {
                if !r.is_zero() {
                    coeffs[shift + j] += &top * r;
                }
            }
        }
        coeffs.resize(d, BigRational::zero());
        coeffs
    }

    /// Product of two reduced coefficient vectors, reduced.
    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut raw = vec![BigRational::zero(); 2 * self.degree.max(1)];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    raw[i + j] += ai * bj;
                }
            }
        }
        self.reduce(raw)
    }

    /// Multiplicative inverse of a reduced coefficient vector.
    pub fn inv(&self, a: &[BigRational]) -> Result<Vec<BigRational>> {
        let mut ap: QPoly = a.to_vec();
        poly::q_trim(&mut ap);
        if ap.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = poly::q_ext_gcd(&ap, &self.modulus);
        if poly::q_deg(&g) != Some(0) {
            // Phi_m is irreducible over Q, so any nonzero element is a unit.
            return Err(Error::DivisionByZero);
        }
        let scale = g[0].clone();
        let mut out: Vec<BigRational> = s.iter().map(|c| c / &scale).collect();
        out.resize(self.degree, BigRational::zero());
        Ok(self.reduce(out))
    }

    /// Coefficient vector of `zeta_m^k` for any integer `k`.
    pub fn power_of_zeta(&self, k: i64) -> Vec<BigRational> {
        let k = k.rem_euclid(self.m as i64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        self.reduce(raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(coeffs: &[i64]) -> ZPoly {
        coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), zp(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), zp(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), zp(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), zp(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), zp(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), zp(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), zp(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_degree_is_phi() {
        for m in [5, 7, 9, 16, 28, 40, 84] {
            let p = cyclotomic_polynomial(m);
            assert_eq!(p.len() as u64 - 1, phi(m), "conductor {m}");
        }
    }

    #[test]
    fn phi_105_has_coefficient_minus_two() {
        // Smallest conductor with a cyclotomic coefficient outside {-1,0,1}.
        let p = cyclotomic_polynomial(105);
        assert_eq!(p[7], BigInt::from(-2));
    }

    #[test]
    fn totient_values() {
        assert_eq!(phi(1), 1);
        assert_eq!(phi(12), 4);
        assert_eq!(phi(40), 16);
        assert_eq!(phi(84), 24);
    }

    #[test]
    fn zeta_power_has_exact_order() {
        let ctx = CycloCtx::get(12).unwrap();
        let z = ctx.power_of_zeta(1);
        let mut acc = z.clone();
        for k in 2..=12u64 {
            acc = ctx.mul(&acc, &z);
            let is_one = acc
                .iter()
                .enumerate()
                .all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() });
            assert_eq!(is_one, k == 12, "zeta_12^{k}");
        }
    }

    #[test]
    fn inverse_of_one_plus_zeta() {
        let ctx = CycloCtx::get(8).unwrap();
        let mut a = ctx.power_of_zeta(1);
        a[0] += BigRational::one(); // 1 + zeta_8
        let inv = ctx.inv(&a).unwrap();
        let prod = ctx.mul(&a, &inv);
        assert!(prod[0].is_one() && prod[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn reduction_matches_polynomial_remainder() {
        // Oracle: reduce x^k by long division against Phi_m and compare.
        let ctx = CycloCtx::get(40).unwrap();
        for k in 0..80usize {
            let mut raw = vec![BigRational::zero(); k + 1];
            raw[k] = BigRational::one();
            let fast = ctx.reduce(raw.clone());
            let (_, mut slow) = poly::q_divrem(&raw, &ctx.modulus);
            slow.resize(ctx.degree, BigRational::zero());
            assert_eq!(fast, slow, "x^{k} mod Phi_40");
        }
    }
}
