//! Finite field contexts: `GF(p^k)` as `GF(p)[x]/(f)` where `f` is the
//! lexicographically least monic irreducible polynomial of degree `k`.
//!
//! "Lexicographically least" orders candidates by their non-leading
//! coefficient vector read as an ascending base-`p` integer, so the defining
//! polynomial (and hence every element's coordinate vector) is canonical.
//! For example `GF(9)` is built as `GF(3)[x]/(x^2 + 1)`, making `x` a square
//! root of `-1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::poly::{self, PPoly};
use crate::{Error, Result};

/// Shared per-field data for `GF(p^k)`.
pub struct FiniteCtx {
    pub p: u64,
    pub k: u32,
    /// Monic irreducible modulus, ascending coefficients, length `k + 1`.
    pub modulus: PPoly,
    /// Field size `p^k`.
    pub order: u64,
    /// Prime factorization of `p^k - 1` (distinct primes).
    unit_group_prime_factors: Vec<u64>,
}

impl FiniteCtx {
    pub fn get(p: u64, k: u32) -> Result<Arc<FiniteCtx>> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree 0".into()));
        }
        let order = (p as u128).checked_pow(k).filter(|&n| n <= u64::MAX as u128);
        let Some(order) = order else {
            return Err(Error::InvalidField(format!("field size {p}^{k} overflows")));
        };
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<FiniteCtx>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(ctx) = cache.lock().unwrap().get(&(p, k)) {
            return Ok(ctx.clone());
        }
        let modulus = least_irreducible(p, k);
        let ctx = Arc::new(FiniteCtx {
            p,
            k,
            modulus,
            order: order as u64,
            unit_group_prime_factors: super::cyclo::prime_factors(order as u64 - 1),
        });
        cache.lock().unwrap().insert((p, k), ctx.clone());
        Ok(ctx)
    }

    /// Normalizes a coefficient vector to length `k` (reducing high terms).
    pub fn reduce(&self, coeffs: &PPoly) -> Vec<u64> {
        let mut r = if coeffs.len() > self.k as usize {
            poly::p_rem(coeffs, &self.modulus, self.p)
        } else {
            coeffs.iter().map(|&c| c % self.p).collect()
        };
        r.resize(self.k as usize, 0);
        r
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let prod = poly::p_mul(&a.to_vec(), &b.to_vec(), self.p);
        self.reduce(&prod)
    }

    pub fn inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        let mut ap: PPoly = a.to_vec();
        poly::p_trim(&mut ap);
        if ap.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = poly::p_ext_gcd(&ap, &self.modulus, self.p);
        debug_assert_eq!(g, vec![1], "modulus must be irreducible");
        let mut out = s;
        out.resize(self.k as usize, 0);
        Ok(self.reduce(&out))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &[u64]) -> Result<u64> {
        if a.iter().all(|&c| c == 0) {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.order - 1;
        for &q in &self.unit_group_prime_factors {
            while ord % q == 0 && is_one(&self.pow(a, ord / q)) {
                ord /= q;
            }
        }
        Ok(ord)
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = vec![0; self.k as usize];
        acc[0] = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The least generator of the multiplicative group, in enumeration order
    /// of coordinate vectors.
    pub fn generator(&self) -> Vec<u64> {
        for idx in 1..self.order {
            let cand = self.element_from_index(idx);
            if self.element_order(&cand).unwrap() == self.order - 1 {
                return cand;
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    /// Enumerates elements by base-`p` digits of `idx`.
    pub fn element_from_index(&self, mut idx: u64) -> Vec<u64> {
        let mut out = vec![0; self.k as usize];
        for slot in out.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        out
    }
}

fn is_one(a: &[u64]) -> bool {
    a.first() == Some(&1) && a[1..].iter().all(|&c| c == 0)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Finds the lexicographically least monic irreducible of degree `k` over
/// `GF(p)`, ordering candidates by their constant-to-`x^(k-1)` coefficients
/// read as a base-`p` integer.
fn least_irreducible(p: u64, k: u32) -> PPoly {
    if k == 1 {
        // x itself: elements are just scalars.
        return vec![0, 1];
    }
    let count = (p as u128).pow(k);
    let mut c: u128 = 0;
    while c < count {
        let mut cand: PPoly = Vec::with_capacity(k as usize + 1);
        let mut rest = c;
        for _ in 0..k {
            cand.push((rest % p as u128) as u64);
            rest /= p as u128;
        }
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        c += 1;
    }
    unreachable!("irreducibles of degree {k} exist over GF({p})")
}

/// Rabin's test: `f` of degree `k` is irreducible iff `x^(p^k) = x (mod f)`
/// and `gcd(x^(p^(k/q)) - x, f) = 1` for every prime `q | k`.
fn is_irreducible(f: &PPoly, p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    let x: PPoly = vec![0, 1];
    let frob = |e: u32| -> PPoly {
        // x^(p^e) mod f by repeated p-th powering.
        let mut acc = x.clone();
        for _ in 0..e {
            acc = p_pow_mod(&acc, p, f, p);
        }
        acc
    };
    let top = frob(k);
    if poly_sub_mod(&top, &x, p, f) != Vec::<u64>::new() {
        return false;
    }
    for q in super::cyclo::prime_factors(k as u64) {
        let e = k / q as u32;
        let diff = poly_sub_mod(&frob(e), &x, p, f);
        let (g, _, _) = poly::p_ext_gcd(&diff, f, p);
        if g != vec![1] {
            return false;
        }
    }
    true
}

fn p_pow_mod(a: &PPoly, mut e: u64, modulus: &PPoly, p: u64) -> PPoly {
    let mut base = poly::p_rem(a, modulus, p);
    let mut acc: PPoly = vec![1];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly::p_rem(&poly::p_mul(&acc, &base, p), modulus, p);
        }
        base = poly::p_rem(&poly::p_mul(&base, &base, p), modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_sub_mod(a: &PPoly, b: &PPoly, p: u64, modulus: &PPoly) -> PPoly {
    let mut out = poly::p_rem(a, modulus, p);
    let br = poly::p_rem(b, modulus, p);
    if out.len() < br.len() {
        out.resize(br.len(), 0);
    }
    for (i, &c) in br.iter().enumerate() {
        out[i] = poly::mod_sub(out[i], c, p);
    }
    poly::p_trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf9_modulus_is_x_squared_plus_one() {
        let ctx = FiniteCtx::get(3, 2).unwrap();
        assert_eq!(ctx.modulus, vec![1, 0, 1]);
        // So x plays the role of a square root of -1.
        let x = vec![0, 1];
        assert_eq!(ctx.mul(&x, &x), vec![2, 0]);
    }

    #[test]
    fn gf4_modulus_is_x_squared_plus_x_plus_one() {
        let ctx = FiniteCtx::get(2, 2).unwrap();
        assert_eq!(ctx.modulus, vec![1, 1, 1]);
    }

    #[test]
    fn gf8_modulus() {
        // Candidates below x^3 + x + 1 in the digit order are reducible.
        let ctx = FiniteCtx::get(2, 3).unwrap();
        assert_eq!(ctx.modulus, vec![1, 1, 0, 1]);
    }

    #[test]
    fn gf27_modulus() {
        // x^3 + 2x + 1 is the least irreducible cubic over GF(3).
        let ctx = FiniteCtx::get(3, 3).unwrap();
        assert_eq!(ctx.modulus, vec![1, 2, 0, 1]);
    }

    #[test]
    fn inverse_and_order() {
        let ctx = FiniteCtx::get(3, 2).unwrap();
        for idx in 1..9 {
            let a = ctx.element_from_index(idx);
            let inv = ctx.inv(&a).unwrap();
            assert!(is_one(&ctx.mul(&a, &inv)));
            let ord = ctx.element_order(&a).unwrap();
            assert_eq!(8 % ord, 0);
            assert!(is_one(&ctx.pow(&a, ord)));
            for d in 1..ord {
                assert!(!is_one(&ctx.pow(&a, d)), "order of {a:?} is not minimal");
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for (p, k) in [(2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (7, 1)] {
            let ctx = FiniteCtx::get(p, k).unwrap();
            let g = ctx.generator();
            assert_eq!(ctx.element_order(&g).unwrap(), ctx.order - 1, "GF({p}^{k})");
        }
    }

    #[test]
    fn rejects_nonprime_characteristic() {
        assert!(FiniteCtx::get(6, 1).is_err());
        assert!(FiniteCtx::get(1, 1).is_err());
    }
}
