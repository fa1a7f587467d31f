//! Exact field arithmetic over `Q`, cyclotomic fields, and finite fields.
//!
//! A [`Field`] value names the field; a [`FieldElement`] carries its field
//! tag alongside its representation, so mixed-field arithmetic is caught at
//! the boundary. Checked operations return [`Result`]; the operator
//! overloads panic on mixed fields and are meant for code paths (matrix
//! kernels, module actions) where homogeneity has already been validated.
//!
//! Representations:
//! * `Q`: a `BigRational`.
//! * `Q(zeta_m)`: a length-`phi(m)` coefficient vector over `Q` in the power
//!   basis `1, z, ..., z^(phi(m)-1)` modulo the m-th cyclotomic polynomial.
//! * `GF(p^k)`: a length-`k` coefficient vector over `GF(p)` modulo the
//!   lexicographically least monic irreducible of degree `k`.

pub mod cyclo;
pub mod finite;
pub mod poly;
mod sqrt;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};
use cyclo::CycloCtx;
use finite::FiniteCtx;

/// An exact coefficient field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    /// The rational numbers.
    Rational,
    /// `Q(zeta_m)` for the given conductor `m >= 1`.
    Cyclotomic { conductor: u64 },
    /// `GF(p^degree)`.
    Finite { p: u64, degree: u32 },
}

impl Field {
    pub fn rational() -> Field {
        Field::Rational
    }

    /// Cyclotomic field of the given conductor; builds and caches the
    /// reduction tables eagerly so later arithmetic is infallible.
    pub fn cyclotomic(conductor: u64) -> Result<Field> {
        CycloCtx::get(conductor)?;
        Ok(Field::Cyclotomic { conductor })
    }

    /// `GF(p^degree)`; validates primality of `p` eagerly.
    pub fn finite(p: u64, degree: u32) -> Result<Field> {
        FiniteCtx::get(p, degree)?;
        Ok(Field::Finite { p, degree })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational | Field::Cyclotomic { .. } => 0,
            Field::Finite { p, .. } => *p,
        }
    }

    /// Number of elements, for finite fields.
    pub fn element_count(&self) -> Option<u64> {
        match self {
            Field::Finite { p, degree } => Some(p.pow(*degree)),
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.integer(0)
    }

    pub fn one(&self) -> FieldElement {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let repr = match self {
            Field::Rational => Repr::Rational(BigRational::from_integer(n.clone())),
            Field::Cyclotomic { conductor } => {
                let ctx = CycloCtx::get(*conductor).expect("validated conductor");
                let mut coeffs = vec![BigRational::zero(); ctx.degree];
                if ctx.degree > 0 {
                    coeffs[0] = BigRational::from_integer(n.clone());
                }
                Repr::Cyclotomic(coeffs)
            }
            Field::Finite { p, degree } => {
                let r = n.mod_floor_u64(*p);
                let mut coeffs = vec![0u64; *degree as usize];
                coeffs[0] = r;
                Repr::Finite(coeffs)
            }
        };
        FieldElement { field: *self, repr }
    }

    /// Embeds `num/den`; fails in characteristic `p` when `p | den`.
    pub fn ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Embeds an arbitrary rational; fails in characteristic `p` when the
    /// denominator vanishes mod `p`.
    pub fn from_rational(&self, r: &BigRational) -> Result<FieldElement> {
        match self {
            Field::Rational => Ok(FieldElement {
                field: *self,
                repr: Repr::Rational(r.clone()),
            }),
            Field::Cyclotomic { conductor } => {
                let ctx = CycloCtx::get(*conductor)?;
                let mut coeffs = vec![BigRational::zero(); ctx.degree];
                coeffs[0] = r.clone();
                Ok(FieldElement {
                    field: *self,
                    repr: Repr::Cyclotomic(coeffs),
                })
            }
            Field::Finite { .. } => {
                let num = self.from_bigint(r.numer());
                let den = self.from_bigint(r.denom());
                num.checked_div(&den).map_err(|_| {
                    Error::Module(format!(
                        "denominator {} vanishes in {}",
                        r.denom(),
                        self.name()
                    ))
                })
            }
        }
    }

    /// A primitive root of unity of exactly the given order, when one exists.
    pub fn root_of_unity(&self, order: u64) -> Result<FieldElement> {
        if order == 0 {
            return Err(Error::NoRootOfUnity {
                order,
                field: self.name(),
            });
        }
        match self {
            Field::Rational => match order {
                1 => Ok(self.one()),
                2 => Ok(self.integer(-1)),
                _ => Err(Error::NoRootOfUnity {
                    order,
                    field: self.name(),
                }),
            },
            Field::Cyclotomic { conductor } => {
                // zeta_m has exact order m, so zeta_m^(m/d) has exact order d.
                let m = *conductor;
                if m % order != 0 {
                    // Odd orders also embed via -zeta^((m/2d)) tricks, but we
                    // keep the contract simple: the conductor must expose it.
                    return Err(Error::NoRootOfUnity {
                        order,
                        field: self.name(),
                    });
                }
                let ctx = CycloCtx::get(m)?;
                Ok(FieldElement {
                    field: *self,
                    repr: Repr::Cyclotomic(ctx.power_of_zeta((m / order) as i64)),
                })
            }
            Field::Finite { p, degree } => {
                let ctx = FiniteCtx::get(*p, *degree)?;
                if (ctx.order - 1) % order != 0 {
                    return Err(Error::NoRootOfUnity {
                        order,
                        field: self.name(),
                    });
                }
                let g = ctx.generator();
                let z = ctx.pow(&g, (ctx.order - 1) / order);
                Ok(FieldElement {
                    field: *self,
                    repr: Repr::Finite(z),
                })
            }
        }
    }

    /// All elements of a finite field, in canonical enumeration order.
    pub fn elements(&self) -> Result<Vec<FieldElement>> {
        match self {
            Field::Finite { p, degree } => {
                let ctx = FiniteCtx::get(*p, *degree)?;
                Ok((0..ctx.order)
                    .map(|i| FieldElement {
                        field: *self,
                        repr: Repr::Finite(ctx.element_from_index(i)),
                    })
                    .collect())
            }
            _ => Err(Error::InvalidField(format!(
                "cannot enumerate infinite field {}",
                self.name()
            ))),
        }
    }

    /// A pseudorandom element, for seeded self-checks. Rational and
    /// cyclotomic draws use small numerators so downstream arithmetic stays
    /// fast; finite draws are uniform.
    pub fn random_element(&self, rng: &mut impl rand::Rng) -> FieldElement {
        match self {
            Field::Rational => {
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=4);
                self.ratio(num, den).expect("nonzero denominator")
            }
            Field::Cyclotomic { conductor } => {
                let ctx = CycloCtx::get(*conductor).expect("validated conductor");
                let coeffs = (0..ctx.degree)
                    .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
                    .collect();
                FieldElement {
                    field: *self,
                    repr: Repr::Cyclotomic(coeffs),
                }
            }
            Field::Finite { p, degree } => {
                let ctx = FiniteCtx::get(*p, *degree).expect("validated field");
                let idx = rng.gen_range(0..ctx.order);
                FieldElement {
                    field: *self,
                    repr: Repr::Finite(ctx.element_from_index(idx)),
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Cyclotomic { conductor } => format!("Q(zeta_{conductor})"),
            Field::Finite { p, degree } => {
                if *degree == 1 {
                    format!("GF({p})")
                } else {
                    format!("GF({p}^{degree})")
                }
            }
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        let (_, digits) = m.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Rational(BigRational),
    Cyclotomic(Vec<BigRational>),
    Finite(Vec<u64>),
}

/// An element tagged with its field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(r) => r.is_zero(),
            Repr::Cyclotomic(c) => c.iter().all(|x| x.is_zero()),
            Repr::Finite(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// The element as a rational number, when it lies in the prime field of
    /// characteristic zero (constant cyclotomic vectors included).
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rational(r) => Some(r.clone()),
            Repr::Cyclotomic(c) => {
                if c[1..].iter().all(|x| x.is_zero()) {
                    Some(c.first().cloned().unwrap_or_else(BigRational::zero))
                } else {
                    None
                }
            }
            Repr::Finite(_) => None,
        }
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field.name(), other.field.name()))
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Cyclotomic(a), Repr::Cyclotomic(b)) => {
                Repr::Cyclotomic(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Repr::Finite(a), Repr::Finite(b)) => {
                let p = self.field.characteristic();
                Repr::Finite(
                    a.iter()
                        .zip(b)
                        .map(|(&x, &y)| poly::mod_add(x, y, p))
                        .collect(),
                )
            }
            _ => unreachable!("same field implies same representation"),
        };
        Ok(FieldElement {
            field: self.field,
            repr,
        })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked_add(&(-other))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Cyclotomic(a), Repr::Cyclotomic(b)) => {
                let Field::Cyclotomic { conductor } = self.field else {
                    unreachable!()
                };
                let ctx = CycloCtx::get(conductor)?;
                Repr::Cyclotomic(ctx.mul(a, b))
            }
            (Repr::Finite(a), Repr::Finite(b)) => {
                let Field::Finite { p, degree } = self.field else {
                    unreachable!()
                };
                let ctx = FiniteCtx::get(p, degree)?;
                Repr::Finite(ctx.mul(a, b))
            }
            _ => unreachable!("same field implies same representation"),
        };
        Ok(FieldElement {
            field: self.field,
            repr,
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        let repr = match &self.repr {
            Repr::Rational(r) => {
                if r.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Repr::Rational(r.recip())
            }
            Repr::Cyclotomic(c) => {
                let Field::Cyclotomic { conductor } = self.field else {
                    unreachable!()
                };
                Repr::Cyclotomic(CycloCtx::get(conductor)?.inv(c)?)
            }
            Repr::Finite(c) => {
                let Field::Finite { p, degree } = self.field else {
                    unreachable!()
                };
                Repr::Finite(FiniteCtx::get(p, degree)?.inv(c)?)
            }
        };
        Ok(FieldElement {
            field: self.field,
            repr,
        })
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let (mut base, mut e) = if e < 0 {
            (self.inverse()?, e.unsigned_abs())
        } else {
            (self.clone(), e as u64)
        };
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            base = base.checked_mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Applies the `p^power`-power Frobenius; identity on characteristic 0
    /// prime fields is not provided, so this errors outside finite fields.
    pub fn frobenius(&self, power: u32) -> Result<FieldElement> {
        match self.field {
            Field::Finite { p, .. } => {
                let mut e: u64 = 1;
                for _ in 0..power {
                    e = e.checked_mul(p).ok_or_else(|| {
                        Error::InvalidField("frobenius exponent overflow".into())
                    })?;
                }
                self.pow(e as i64)
            }
            _ => Err(Error::InvalidField(format!(
                "frobenius undefined on {}",
                self.field.name()
            ))),
        }
    }

    /// Multiplicative order of a nonzero element of a finite field.
    pub fn multiplicative_order(&self) -> Result<u64> {
        match (&self.field, &self.repr) {
            (Field::Finite { p, degree }, Repr::Finite(c)) => {
                FiniteCtx::get(*p, *degree)?.element_order(c)
            }
            _ => Err(Error::InvalidField(format!(
                "multiplicative order only computed over finite fields, not {}",
                self.field.name()
            ))),
        }
    }

    /// A square root in the same field, if one can be found.
    ///
    /// Over `Q` this requires a perfect-square rational. Over `Q(zeta_m)`
    /// the radicand must be rational; the root is assembled from quadratic
    /// Gauss sums, so the conductor must be divisible by 4 (for `i`), 8 (for
    /// `sqrt 2`), `q` (for `sqrt q`, prime `q = 1 mod 4`) or `4q` (prime
    /// `q = 3 mod 4`) as the factorization demands. Over `GF(p^k)` the
    /// search is exhaustive.
    pub fn sqrt(&self) -> Result<FieldElement> {
        sqrt::sqrt(self)
    }

    pub(crate) fn repr_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub(crate) fn repr_cyclotomic(&self) -> Option<&[BigRational]> {
        match &self.repr {
            Repr::Cyclotomic(c) => Some(c),
            _ => None,
        }
    }

    pub(crate) fn repr_finite(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Finite(c) => Some(c),
            _ => None,
        }
    }

    pub(crate) fn from_cyclotomic_coeffs(field: Field, coeffs: Vec<BigRational>) -> FieldElement {
        FieldElement {
            field,
            repr: Repr::Cyclotomic(coeffs),
        }
    }

    pub(crate) fn from_finite_coeffs(field: Field, coeffs: Vec<u64>) -> FieldElement {
        FieldElement {
            field,
            repr: Repr::Finite(coeffs),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let repr = match &self.repr {
            Repr::Rational(r) => Repr::Rational(-r),
            Repr::Cyclotomic(c) => Repr::Cyclotomic(c.iter().map(|x| -x).collect()),
            Repr::Finite(c) => {
                let p = self.field.characteristic();
                Repr::Finite(c.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
            }
        };
        FieldElement {
            field: self.field,
            repr,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field arithmetic")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(r) => write!(f, "{r}"),
            Repr::Cyclotomic(c) => {
                let mut first = true;
                for (i, coeff) in c.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    if first {
                        first = false;
                        if i == 0 {
                            write!(f, "{coeff}")?;
                        } else if coeff.is_one() {
                            write!(f, "z^{i}")?;
                        } else if (-coeff).is_one() {
                            write!(f, "-z^{i}")?;
                        } else {
                            write!(f, "{coeff}*z^{i}")?;
                        }
                    } else {
                        let (sign, mag) = if coeff.is_negative() {
                            ("-", -coeff)
                        } else {
                            ("+", coeff.clone())
                        };
                        if mag.is_one() {
                            write!(f, " {sign} z^{i}")?;
                        } else {
                            write!(f, " {sign} {mag}*z^{i}")?;
                        }
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
            Repr::Finite(c) => {
                if c.len() == 1 || c[1..].iter().all(|&x| x == 0) {
                    write!(f, "{}", c[0])
                } else {
                    let mut first = true;
                    for (i, &coeff) in c.iter().enumerate() {
                        if coeff == 0 {
                            continue;
                        }
                        if !first {
                            write!(f, " + ")?;
                        }
                        first = false;
                        match (i, coeff) {
                            (0, _) => write!(f, "{coeff}")?,
                            (_, 1) => write!(f, "x^{i}")?,
                            _ => write!(f, "{coeff}*x^{i}")?,
                        }
                    }
                    Ok(())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_round_trip() {
        let q = Field::rational();
        let a = q.ratio(3, 4).unwrap();
        let b = q.ratio(-2, 5).unwrap();
        let s = a.checked_add(&b).unwrap();
        assert_eq!(s, q.ratio(7, 20).unwrap());
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p, q.ratio(-3, 10).unwrap());
        assert_eq!(a.inverse().unwrap(), q.ratio(4, 3).unwrap());
    }

    #[test]
    fn mixed_field_addition_is_an_error() {
        let a = Field::rational().one();
        let b = Field::finite(5, 1).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(Error::MixedFields(_, _))));
    }

    #[test]
    fn cyclotomic_root_orders() {
        let f = Field::cyclotomic(12).unwrap();
        for order in [1u64, 2, 3, 4, 6, 12] {
            let z = f.root_of_unity(order).unwrap();
            assert!(z.pow(order as i64).unwrap().is_one());
            for d in 1..order {
                if order % d == 0 {
                    assert!(!z.pow(d as i64).unwrap().is_one(), "order {order} div {d}");
                }
            }
        }
        assert!(f.root_of_unity(5).is_err());
    }

    #[test]
    fn i_squares_to_minus_one_in_conductor_twelve() {
        let f = Field::cyclotomic(12).unwrap();
        let i = f.root_of_unity(4).unwrap();
        assert_eq!(i.checked_mul(&i).unwrap(), f.integer(-1));
    }

    #[test]
    fn finite_field_roots_of_unity() {
        let f = Field::finite(3, 2).unwrap();
        let i = f.root_of_unity(4).unwrap();
        assert_eq!(i.checked_mul(&i).unwrap(), f.integer(-1));
        assert_eq!(i.multiplicative_order().unwrap(), 4);
        let g = f.root_of_unity(8).unwrap();
        assert_eq!(g.multiplicative_order().unwrap(), 8);
        assert!(f.root_of_unity(5).is_err());
    }

    #[test]
    fn frobenius_is_field_automorphism() {
        let f = Field::finite(3, 3).unwrap();
        let a = f.root_of_unity(13).unwrap();
        let b = f.root_of_unity(26).unwrap();
        let fr = |x: &FieldElement| x.frobenius(1).unwrap();
        assert_eq!(
            fr(&a.checked_add(&b).unwrap()),
            fr(&a).checked_add(&fr(&b)).unwrap()
        );
        assert_eq!(
            fr(&a.checked_mul(&b).unwrap()),
            fr(&a).checked_mul(&fr(&b)).unwrap()
        );
        // Frobenius cubed is the identity on GF(27).
        assert_eq!(a.frobenius(3).unwrap(), a);
    }

    #[test]
    fn ratio_fails_when_denominator_vanishes() {
        let f = Field::finite(3, 1).unwrap();
        assert!(f.ratio(1, 3).is_err());
        assert_eq!(f.ratio(1, 2).unwrap(), f.integer(2));
    }

    #[test]
    fn from_rational_into_cyclotomic_is_constant() {
        let f = Field::cyclotomic(8).unwrap();
        let half = f.ratio(1, 2).unwrap();
        assert_eq!(half.as_rational().unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(half.checked_add(&half).unwrap(), f.one());
    }

    #[test]
    fn element_enumeration_matches_order() {
        let f = Field::finite(2, 2).unwrap();
        let elems = f.elements().unwrap();
        assert_eq!(elems.len(), 4);
        let distinct: std::collections::HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn display_forms() {
        let q = Field::rational();
        assert_eq!(q.ratio(-3, 2).unwrap().to_string(), "-3/2");
        let c = Field::cyclotomic(4).unwrap();
        let i = c.root_of_unity(4).unwrap();
        let e = i.checked_add(&c.one()).unwrap();
        assert_eq!(e.to_string(), "1 + z^1");
        let f = Field::finite(3, 2).unwrap();
        // sqrt(-1) scans in enumeration order and lands on x before 2x.
        let x = f.integer(-1).sqrt().unwrap();
        assert_eq!(x.to_string(), "x^1");
        // root_of_unity goes through the canonical generator 1 + x instead.
        let i = f.root_of_unity(4).unwrap();
        assert_eq!(i.to_string(), "2*x^1");
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let f = Field::finite(7, 1).unwrap();
        let a = f.integer(3);
        assert_eq!(a.pow(-1).unwrap(), f.integer(5)); // 3 * 5 = 15 = 1 mod 7
        assert_eq!(a.pow(0).unwrap(), f.one());
        assert_eq!(a.pow(6).unwrap(), f.one());
    }
}
