//! Square roots in exact fields.
//!
//! Finite fields are searched exhaustively. Rational radicands inside a
//! cyclotomic field are assembled multiplicatively from quadratic Gauss
//! sums: `sqrt 2 = z8 + z8^-1`, and for an odd prime `q` the sum
//! `g = sum_t legendre(t, q) z_q^t` satisfies `g^2 = (-1)^((q-1)/2) q`.
//! Negative signs use `i = z4`. Every constructed root is squared and
//! compared against the radicand before it is returned.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::mod_pow;
use super::{Field, FieldElement};
use crate::{Error, Result};

const TRIAL_DIVISION_BOUND: u64 = 1_000_000;
const FINITE_SEARCH_BOUND: u64 = 1_000_000;

pub(super) fn sqrt(elem: &FieldElement) -> Result<FieldElement> {
    if elem.is_zero() {
        return Ok(elem.field().zero());
    }
    match elem.field() {
        Field::Rational => rational_sqrt(elem),
        Field::Finite { .. } => finite_sqrt(elem),
        Field::Cyclotomic { conductor } => cyclotomic_sqrt(elem, conductor),
    }
}

fn rational_sqrt(elem: &FieldElement) -> Result<FieldElement> {
    let r = elem.repr_rational().expect("rational representation");
    if r.is_negative() {
        return Err(Error::NoSquareRoot(format!("{r} is negative in Q")));
    }
    let num = int_sqrt_exact(r.numer());
    let den = int_sqrt_exact(r.denom());
    match (num, den) {
        (Some(n), Some(d)) => Ok(elem
            .field()
            .from_rational(&BigRational::new(n, d))
            .expect("characteristic zero")),
        _ => Err(Error::NoSquareRoot(format!("{r} is not a square in Q"))),
    }
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

fn finite_sqrt(elem: &FieldElement) -> Result<FieldElement> {
    let field = elem.field();
    let count = field.element_count().expect("finite field");
    if count > FINITE_SEARCH_BOUND {
        return Err(Error::NoSquareRoot(format!(
            "field {} too large for exhaustive root search",
            field.name()
        )));
    }
    for cand in field.elements()? {
        if cand.checked_mul(&cand)? == *elem {
            return Ok(cand);
        }
    }
    Err(Error::NoSquareRoot(format!(
        "{elem} is not a square in {}",
        field.name()
    )))
}

fn cyclotomic_sqrt(elem: &FieldElement, conductor: u64) -> Result<FieldElement> {
    let Some(r) = elem.as_rational() else {
        return Err(Error::NoSquareRoot(
            "only rational radicands are supported in cyclotomic fields".into(),
        ));
    };
    let field = elem.field();
    // sqrt(n/d) = sqrt(n*d) / d with n*d an integer.
    let negative = r.is_negative();
    let nd: BigInt = (r.numer() * r.denom()).abs();
    let (square_part, squarefree) = split_square(&nd)?;
    let mut acc = field
        .from_rational(&BigRational::new(square_part, r.denom().clone()))
        .expect("characteristic zero");
    if negative {
        acc = acc.checked_mul(&unit_i(field, conductor)?)?;
    }
    for q in squarefree {
        let factor = if q == 2 {
            sqrt_two(field, conductor)?
        } else {
            sqrt_odd_prime(field, conductor, q)?
        };
        acc = acc.checked_mul(&factor)?;
    }
    if acc.checked_mul(&acc)? == *elem {
        Ok(acc)
    } else {
        Err(Error::NoSquareRoot(format!(
            "gauss sum construction failed to square to {elem}"
        )))
    }
}

/// Splits `|n|` as `s^2 * q1*...*qk` with distinct primes `qi`.
fn split_square(n: &BigInt) -> Result<(BigInt, Vec<u64>)> {
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut squarefree = Vec::new();
    let mut d: u64 = 2;
    while BigInt::from(d) * BigInt::from(d) <= rest && d <= TRIAL_DIVISION_BOUND {
        let big_d = BigInt::from(d);
        let mut e = 0u32;
        while (&rest % &big_d).is_zero() {
            rest /= &big_d;
            e += 1;
        }
        if e > 0 {
            square *= big_d.pow(e / 2);
            if e % 2 == 1 {
                squarefree.push(d);
            }
        }
        d += 1;
    }
    if rest > BigInt::one() {
        // Remaining cofactor is prime (trial division passed its square
        // root) unless it exceeded the bound.
        if BigInt::from(TRIAL_DIVISION_BOUND) * BigInt::from(TRIAL_DIVISION_BOUND) < rest {
            return Err(Error::NoSquareRoot(format!(
                "radicand factor {rest} is too large to factor"
            )));
        }
        let (q_digits, sign_ok) = (rest.to_u64_digits().1, rest.is_positive());
        debug_assert!(sign_ok && q_digits.len() == 1);
        squarefree.push(q_digits[0]);
    }
    Ok((square, squarefree))
}

fn require_divisor(conductor: u64, needed: u64, what: &str) -> Result<()> {
    if conductor % needed == 0 {
        Ok(())
    } else {
        Err(Error::NoSquareRoot(format!(
            "{what} needs conductor divisible by {needed}, have {conductor}"
        )))
    }
}

fn unit_i(field: Field, conductor: u64) -> Result<FieldElement> {
    require_divisor(conductor, 4, "sqrt(-1)")?;
    field.root_of_unity(4)
}

fn sqrt_two(field: Field, conductor: u64) -> Result<FieldElement> {
    require_divisor(conductor, 8, "sqrt(2)")?;
    let z8 = field.root_of_unity(8)?;
    z8.checked_add(&z8.inverse()?)
}

fn sqrt_odd_prime(field: Field, conductor: u64, q: u64) -> Result<FieldElement> {
    require_divisor(conductor, q, &format!("sqrt({q})"))?;
    let zq = field.root_of_unity(q)?;
    let mut g = field.zero();
    for t in 1..q {
        let term = zq.pow(t as i64)?;
        if mod_pow(t, (q - 1) / 2, q) == 1 {
            g = g.checked_add(&term)?;
        } else {
            g = g.checked_sub(&term)?;
        }
    }
    if q % 4 == 1 {
        Ok(g)
    } else {
        // g^2 = -q here, so divide by i to land on +q.
        require_divisor(conductor, 4, &format!("sqrt({q}) with {q} = 3 mod 4"))?;
        g.checked_div(&unit_i(field, conductor)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_squares_to(root: &FieldElement, target: &FieldElement) {
        assert_eq!(root.checked_mul(root).unwrap(), *target);
    }

    #[test]
    fn rational_square_roots() {
        let q = Field::rational();
        assert_eq!(q.ratio(9, 4).unwrap().sqrt().unwrap(), q.ratio(3, 2).unwrap());
        assert_eq!(q.zero().sqrt().unwrap(), q.zero());
        assert!(q.integer(2).sqrt().is_err());
        assert!(q.integer(-1).sqrt().is_err());
    }

    #[test]
    fn sqrt_minus_one_in_conductor_four() {
        let f = Field::cyclotomic(4).unwrap();
        let target = f.integer(-1);
        assert_squares_to(&target.sqrt().unwrap(), &target);
    }

    #[test]
    fn sqrt_two_in_conductor_eight() {
        let f = Field::cyclotomic(8).unwrap();
        for n in [2i64, -2, 8, -1] {
            let target = f.integer(n);
            assert_squares_to(&target.sqrt().unwrap(), &target);
        }
        let half = f.ratio(-1, 2).unwrap();
        assert_squares_to(&half.sqrt().unwrap(), &half);
    }

    #[test]
    fn sqrt_three_in_conductor_twelve() {
        let f = Field::cyclotomic(12).unwrap();
        for n in [3i64, -3, 12] {
            let target = f.integer(n);
            assert_squares_to(&target.sqrt().unwrap(), &target);
        }
    }

    #[test]
    fn sqrt_five_in_conductor_five() {
        // 5 = 1 mod 4, so no factor of i is needed and conductor 5 suffices.
        let f = Field::cyclotomic(5).unwrap();
        let target = f.integer(5);
        assert_squares_to(&target.sqrt().unwrap(), &target);
        assert!(f.integer(-5).sqrt().is_err()); // -1 needs 4 | conductor
    }

    #[test]
    fn sqrt_minus_one_half_in_conductor_forty() {
        let f = Field::cyclotomic(40).unwrap();
        let target = f.ratio(-1, 2).unwrap();
        assert_squares_to(&target.sqrt().unwrap(), &target);
    }

    #[test]
    fn sqrt_minus_one_in_conductor_eighty_four() {
        let f = Field::cyclotomic(84).unwrap();
        let target = f.integer(-1);
        assert_squares_to(&target.sqrt().unwrap(), &target);
    }

    #[test]
    fn conductor_obstructions_are_reported() {
        let f = Field::cyclotomic(3).unwrap();
        assert!(matches!(f.integer(-1).sqrt(), Err(Error::NoSquareRoot(_))));
        let f8 = Field::cyclotomic(8).unwrap();
        assert!(matches!(f8.integer(3).sqrt(), Err(Error::NoSquareRoot(_))));
    }

    #[test]
    fn nonrational_cyclotomic_radicand_is_rejected() {
        let f = Field::cyclotomic(8).unwrap();
        let z = f.root_of_unity(8).unwrap();
        assert!(matches!(z.sqrt(), Err(Error::NoSquareRoot(_))));
    }

    #[test]
    fn finite_field_square_roots() {
        let f9 = Field::finite(3, 2).unwrap();
        let m1 = f9.integer(-1);
        assert_squares_to(&m1.sqrt().unwrap(), &m1);
        // A generator of GF(9)* has order 8 and cannot be a square.
        let g = f9.root_of_unity(8).unwrap();
        assert!(g.sqrt().is_err());
        // In characteristic 2 every element is a square.
        let f4 = Field::finite(2, 2).unwrap();
        for e in f4.elements().unwrap() {
            assert_squares_to(&e.sqrt().unwrap(), &e);
        }
    }

    #[test]
    fn square_then_sqrt_round_trips_over_a_sample() {
        let q = Field::rational();
        for n in [1i64, 4, 30, 49, 360] {
            let e = q.integer(n);
            let sq = e.checked_mul(&e).unwrap();
            assert_eq!(sq.sqrt().unwrap(), e);
        }
    }
}
