//! Exact scalar arithmetic over the rationals and prime fields.
//!
//! Every coefficient handled by the crate is a [`Scalar`]. Rationals are kept
//! in lowest terms with a positive denominator (guaranteed by
//! [`BigRational`]), residues are kept reduced modulo their prime.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("degenerate equation: leading and linear coefficients are both zero")]
    DegenerateEquation,
    #[error("invalid scalar literal `{0}`")]
    InvalidLiteral(String),
}

/// The coefficient field: either ℚ or a prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// A prime field, after checking primality by trial division.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// 0 for ℚ, p for F_p.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Scalar::Residue { value: v.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Residue { value: r.to_u64().expect("residue fits in u64"), modulus: p }
            }
        }
    }

    /// `num / den` interpreted in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, FieldError> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        n.checked_div(&d)
    }

    /// Parses `-3`, `3/2` or a bare residue. Values outside `[0, p)` are
    /// reduced; a fraction over F_p is read as `num · den⁻¹`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let text = text.trim();
        let bad = || FieldError::InvalidLiteral(text.to_string());
        let parse_int = |s: &str| -> Result<BigInt, FieldError> {
            let s = s.trim();
            let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(s).map_err(|_| bad())
        };
        match text.split_once('/') {
            None => Ok(self.from_bigint(&parse_int(text)?)),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                self.from_ratio(&n, &d)
            }
        }
    }

    /// Whether `s` is an element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }

    /// All elements of a prime field in ascending order; `None` over ℚ.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some((0..p).map(move |value| Scalar::Residue { value, modulus: p })),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp {p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128 % m as u128;
    let m128 = m as u128;
    let mut base = b as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rationals by value, residues by representative; rationals sort first.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => (p, a).cmp(&(q, b)),
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator sugar for internal use: all scalars inside one computation share a
// field, so a mismatch here is a programming error and panics.
macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect(concat!("scalar ", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// The roots in the field of `c2·ξ² + c1·ξ + c0`, ascending and without
/// repetition. A zero `c2` degrades to the linear case.
///
/// Over ℚ the discriminant must be the square of a rational, tested with
/// exact integer square roots. Over F_p every residue is tried.
pub fn solve_quadratic(c2: &Scalar, c1: &Scalar, c0: &Scalar, spec: FieldSpec) -> Result<Vec<Scalar>, FieldError> {
    for s in [c2, c1, c0] {
        if s.field() != spec {
            return Err(FieldError::FieldMismatch(spec, s.field()));
        }
    }
    if c2.is_zero() && c1.is_zero() {
        return Err(FieldError::DegenerateEquation);
    }
    if c2.is_zero() {
        return Ok(vec![-(c0 / c1)]);
    }
    let mut roots = match spec {
        FieldSpec::Rationals => {
            let disc = &(c1 * c1) - &(&spec.from_i64(4) * &(c2 * c0));
            let Scalar::Rational(d) = &disc else { unreachable!() };
            match rational_sqrt(d) {
                None => Vec::new(),
                Some(s) => {
                    let s = Scalar::Rational(s);
                    let two_a = &spec.from_i64(2) * c2;
                    let minus_b = -c1;
                    vec![&(&minus_b + &s) / &two_a, &(&minus_b - &s) / &two_a]
                }
            }
        }
        FieldSpec::PrimeField(_) => {
            spec.elements().expect("prime field").filter(|r| (&(&(c2 * r) + c1) * r + c0.clone()).is_zero()).collect()
        }
    };
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        FieldSpec::Rationals.from_ratio(&BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn rational_sum_is_exact() {
        assert_eq!(&q(1, 3) + &q(1, 6), q(1, 2));
        assert_eq!(q(1, 2).to_string(), "1/2");
        assert_eq!(q(-6, 2).to_string(), "-3");
    }

    #[test]
    fn residue_inverse() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.from_i64(2).inv().unwrap(), f5.from_i64(3));
        assert_eq!(f5.from_i64(7), f5.from_i64(2));
        assert_eq!(f5.from_i64(-1).to_string(), "4");
    }

    #[test]
    fn zero_absorbs() {
        let x = q(17, 5);
        assert!((&q(0, 1) * &x).is_zero());
    }

    #[test]
    fn errors() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.zero().inv(), Err(FieldError::DivisionByZero));
        assert!(matches!(q(1, 1).checked_add(&f5.one()), Err(FieldError::FieldMismatch(..))));
        assert_eq!(FieldSpec::prime(6), Err(FieldError::NotPrime(6)));
        assert_eq!(FieldSpec::prime(1), Err(FieldError::NotPrime(1)));
        assert!(FieldSpec::Rationals.parse_scalar("1/0").is_err());
        assert!(FieldSpec::Rationals.parse_scalar("x").is_err());
    }

    #[test]
    fn parsing() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(FieldSpec::Rationals.parse_scalar("3/2").unwrap(), q(3, 2));
        assert_eq!(FieldSpec::Rationals.parse_scalar("-3").unwrap(), q(-3, 1));
        assert_eq!(f5.parse_scalar("7").unwrap(), f5.from_i64(2));
        assert_eq!(f5.parse_scalar("1/2").unwrap(), f5.from_i64(3));
    }

    #[test]
    fn quadratic_over_rationals() {
        let f = FieldSpec::Rationals;
        let roots = solve_quadratic(&f.one(), &f.from_i64(-5), &f.from_i64(6), f).unwrap();
        assert_eq!(roots, vec![f.from_i64(2), f.from_i64(3)]);
        let none = solve_quadratic(&f.one(), &f.zero(), &f.one(), f).unwrap();
        assert!(none.is_empty());
        // 4ξ² − 1 = 0 → ±1/2
        let halves = solve_quadratic(&f.from_i64(4), &f.zero(), &f.from_i64(-1), f).unwrap();
        assert_eq!(halves, vec![q(-1, 2), q(1, 2)]);
        // double root
        let double = solve_quadratic(&f.one(), &f.from_i64(-2), &f.one(), f).unwrap();
        assert_eq!(double, vec![f.one()]);
        let linear = solve_quadratic(&f.zero(), &f.from_i64(2), &f.from_i64(-3), f).unwrap();
        assert_eq!(linear, vec![q(3, 2)]);
        assert_eq!(solve_quadratic(&f.zero(), &f.zero(), &f.one(), f), Err(FieldError::DegenerateEquation));
    }

    #[test]
    fn quadratic_over_f5() {
        let f5 = FieldSpec::prime(5).unwrap();
        let roots = solve_quadratic(&f5.one(), &f5.zero(), &f5.one(), f5).unwrap();
        // oracle: substitute every residue
        let expected: Vec<Scalar> =
            (0..5).map(|r| f5.from_i64(r)).filter(|r| (&(r * r) + &f5.one()).is_zero()).collect();
        assert_eq!(expected, vec![f5.from_i64(2), f5.from_i64(3)]);
        assert_eq!(roots, expected);
    }

    fn rational() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    fn residue() -> impl Strategy<Value = Scalar> {
        (0i64..7).prop_map(|v| FieldSpec::PrimeField(7).from_i64(v))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn residue_field_axioms(a in residue(), b in residue(), c in residue()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn quadratic_roots_are_exactly_the_zeros(c2 in -4i64..5, c1 in -9i64..10, c0 in -9i64..10, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
            prop_assume!(c2 != 0 || c1 != 0);
            let fp = FieldSpec::prime(p).unwrap();
            let (a, b, c) = (fp.from_i64(c2), fp.from_i64(c1), fp.from_i64(c0));
            if a.is_zero() && b.is_zero() {
                return Ok(());
            }
            let roots = solve_quadratic(&a, &b, &c, fp).unwrap();
            for r in fp.elements().unwrap() {
                let value = &(&(&a * &r) + &b) * &r + c.clone();
                prop_assert_eq!(value.is_zero(), roots.contains(&r));
            }
            // over ℚ, reconstruct the polynomial from its roots when there are two
            let f = FieldSpec::Rationals;
            let (a, b, c) = (f.from_i64(c2), f.from_i64(c1), f.from_i64(c0));
            let roots = solve_quadratic(&a, &b, &c, f).unwrap();
            for r in &roots {
                prop_assert!((&(&(&a * r) + &b) * r + c.clone()).is_zero());
            }
            if roots.len() == 2 {
                prop_assert_eq!(-(&a * &(&roots[0] + &roots[1])), b.clone());
                prop_assert_eq!(&a * &(&roots[0] * &roots[1]), c.clone());
            }
        }
    }
}
