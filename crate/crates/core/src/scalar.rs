//! Exact field arithmetic over the rationals and prime fields.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("malformed scalar `{0}`")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum FieldKind {
    Rationals,
    Prime(u64),
}

/// The coefficient field: either `Q` or `GF(p)` for a verified prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(FieldKind);

impl FieldSpec {
    pub const fn rationals() -> Self {
        FieldSpec(FieldKind::Rationals)
    }

    /// Prime field of order `p`. Primality is checked with a deterministic
    /// Miller-Rabin test valid for every `u64`.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime_u64(p) {
            Ok(FieldSpec(FieldKind::Prime(p)))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            FieldKind::Rationals => None,
            FieldKind::Prime(p) => Some(p),
        }
    }

    pub fn is_rationals(&self) -> bool {
        self.0 == FieldKind::Rationals
    }

    pub fn zero(&self) -> Scalar {
        match self.0 {
            FieldKind::Rationals => Scalar::rat(BigRational::zero()),
            FieldKind::Prime(p) => Scalar::res(0, p),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.0 {
            FieldKind::Rationals => Scalar::rat(BigRational::from_integer(BigInt::from(v))),
            FieldKind::Prime(p) => Scalar::res((v as i128).rem_euclid(p as i128) as u64, p),
        }
    }

    pub fn from_u64(&self, v: u64) -> Scalar {
        match self.0 {
            FieldKind::Rationals => Scalar::rat(BigRational::from_integer(BigInt::from(v))),
            FieldKind::Prime(p) => Scalar::res(v % p, p),
        }
    }

    /// Scalar `num / den`; over `GF(p)` the denominator must be invertible.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self.0 {
            FieldKind::Rationals => Ok(Scalar::rat(BigRational::new(num.clone(), den.clone()))),
            FieldKind::Prime(_) => {
                let n = self.reduce_bigint(num);
                let d = self.reduce_bigint(den);
                n.checked_div(&d)
            }
        }
    }

    fn reduce_bigint(&self, v: &BigInt) -> Scalar {
        let p = self.modulus().expect("prime field");
        let r = v.mod_floor(&BigInt::from(p));
        Scalar::res(r.to_u64().expect("residue fits"), p)
    }

    /// Parses `[+-]digits[/digits]`. Denominators are accepted over both
    /// kinds of field; over `GF(p)` they must be invertible.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::Malformed(text.to_string());
        let t = text.trim();
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (num_s, den_s) = match body.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (body, None),
        };
        let digits = |s: &str| -> Result<BigInt, ScalarError> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::parse_bytes(s.as_bytes(), 10).ok_or_else(bad)
        };
        let mut num = digits(num_s)?;
        if neg {
            num = -num;
        }
        let den = match den_s {
            Some(d) => digits(d)?,
            None => BigInt::one(),
        };
        self.from_ratio(&num, &den)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::Prime(p) => write!(f, "GF {}", p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Rat(BigRational),
    Res(u64, u64),
}

/// An element of a [`FieldSpec`]. Rationals are kept in lowest terms with a
/// positive denominator; residues lie in `[0, p)`.
///
/// The operator impls (`+`, `-`, `*`) panic on a field mismatch; use the
/// `checked_*` methods or [`field_arith`] when operands come from untrusted
/// sources.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Value);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl Scalar {
    fn rat(r: BigRational) -> Self {
        // BigRational::new already reduces and fixes the sign.
        Scalar(Value::Rat(r))
    }

    fn res(v: u64, p: u64) -> Self {
        Scalar(Value::Res(v, p))
    }

    pub fn field(&self) -> FieldSpec {
        match self.0 {
            Value::Rat(_) => FieldSpec::rationals(),
            Value::Res(_, p) => FieldSpec(FieldKind::Prime(p)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Value::Rat(r) => r.is_zero(),
            Value::Res(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Value::Rat(r) => r.is_one(),
            Value::Res(v, _) => *v == 1,
        }
    }

    /// Residue value, for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self.0 {
            Value::Res(v, _) => Some(v),
            Value::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Value::Rat(r) => Some(r),
            Value::Res(..) => None,
        }
    }

    /// Re-applies the storage normalization. A no-op on every value built
    /// through the public API.
    pub fn normalize(&self) -> Scalar {
        match &self.0 {
            Value::Rat(r) => Scalar::rat(BigRational::new(r.numer().clone(), r.denom().clone())),
            Value::Res(v, p) => Scalar::res(v % p, *p),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(a, b))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Value::Rat(a), Value::Rat(b)) => Scalar::rat(a + b),
            (Value::Res(a, p), Value::Res(b, _)) => {
                Scalar::res(((*a as u128 + *b as u128) % *p as u128) as u64, *p)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Value::Rat(a), Value::Rat(b)) => Scalar::rat(a * b),
            (Value::Res(a, p), Value::Res(b, _)) => {
                Scalar::res(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match &self.0 {
            Value::Rat(r) => Scalar::rat(r.recip()),
            Value::Res(v, p) => Scalar::res(pow_mod(*v, *p - 2, *p), *p),
        })
    }

    /// Sign and magnitude for display. Residues above `p/2` are shown as
    /// negatives of their complement so that `-1` prints as `-1`.
    pub fn signed_parts(&self) -> (bool, String) {
        match &self.0 {
            Value::Rat(r) => {
                let neg = r.is_negative();
                let a = r.abs();
                let s = if a.denom().is_one() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                };
                (neg, s)
            }
            Value::Res(v, p) => {
                if *v > *p / 2 {
                    (true, (*p - *v).to_string())
                } else {
                    (false, v.to_string())
                }
            }
        }
    }

    /// Total order used only for canonical tie-breaking, never for arithmetic.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (&self.0, &other.0) {
            (Value::Rat(a), Value::Rat(b)) => a.cmp(b),
            (Value::Res(a, _), Value::Res(b, _)) => a.cmp(b),
            (Value::Rat(_), Value::Res(..)) => Ordering::Less,
            (Value::Res(..), Value::Rat(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Value::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Res(v, _) => write!(f, "{}", v),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Value::Rat(r) => Scalar::rat(-r),
            Value::Res(v, p) => Scalar::res(if *v == 0 { 0 } else { *p - *v }, *p),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1 % m as u128;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin; the witness set below is exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        FieldSpec::rationals().parse_scalar(s).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(field_arith(&q("1/2"), &q("1/3"), ArithOp::Add).unwrap(), q("5/6"));
    }

    #[test]
    fn prime_field_division() {
        let f5 = FieldSpec::prime(5).unwrap();
        let r = field_arith(&f5.one(), &f5.from_i64(2), ArithOp::Div).unwrap();
        assert_eq!(r, f5.from_i64(3));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let err = field_arith(&q("1"), &q("0"), ArithOp::Div).unwrap_err();
        assert_eq!(err, ScalarError::DivisionByZero);
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(f7.parse_scalar("1/7").is_err());
    }

    #[test]
    fn field_mismatch() {
        let f7 = FieldSpec::prime(7).unwrap();
        let err = field_arith(&q("1"), &f7.one(), ArithOp::Mul).unwrap_err();
        assert!(matches!(err, ScalarError::FieldMismatch(..)));
    }

    #[test]
    fn primality() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(0).is_err());
        assert!(FieldSpec::prime(2).is_ok());
        // 2^61 - 1 is a Mersenne prime; 2^61 + 1 is divisible by 3.
        assert!(FieldSpec::prime((1 << 61) - 1).is_ok());
        assert!(FieldSpec::prime((1 << 61) + 1).is_err());
        // Carmichael number.
        assert!(!is_prime_u64(561));
        let small: alloc::vec::Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            small,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn lowest_terms_and_sign() {
        let s = q("-4/6");
        assert_eq!(s.to_string(), "-2/3");
        assert_eq!(q("+12/4").to_string(), "3");
    }

    #[test]
    fn malformed_scalars() {
        let f = FieldSpec::rationals();
        for bad in ["", "-", "1/", "/2", "1.5", "x", "1/2/3", "--1"] {
            assert!(f.parse_scalar(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn negative_residues_wrap() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.from_i64(-1).residue(), Some(6));
        assert_eq!(f7.parse_scalar("-3").unwrap().residue(), Some(4));
        assert_eq!(f7.from_i64(-1).signed_parts(), (true, "1".into()));
    }

    #[test]
    fn large_prime_mul_does_not_overflow() {
        let p = (1u64 << 61) - 1;
        let f = FieldSpec::prime(p).unwrap();
        let a = f.from_u64(p - 1);
        assert_eq!((&a * &a), f.one());
        assert_eq!(a.inv().unwrap(), a);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field() -> impl Strategy<Value = FieldSpec> {
            prop_oneof![
                Just(FieldSpec::rationals()),
                Just(FieldSpec::prime(2).unwrap()),
                Just(FieldSpec::prime(101).unwrap()),
                Just(FieldSpec::prime((1 << 61) - 1).unwrap()),
            ]
        }

        proptest! {
            #[test]
            fn div_undoes_mul(f in field(), a in -50i64..50, an in 1i64..9, b in -50i64..50, bd in 1i64..9) {
                let a = f.from_ratio(&a.into(), &an.into());
                let b = f.from_ratio(&b.into(), &bd.into());
                if let (Ok(a), Ok(b)) = (a, b) {
                    if !a.is_zero() {
                        let ab = &a * &b;
                        prop_assert_eq!(ab.checked_div(&a).unwrap(), b);
                    }
                }
            }

            #[test]
            fn normalize_is_idempotent(f in field(), n in -1000i64..1000, d in 1i64..50) {
                if let Ok(s) = f.from_ratio(&n.into(), &d.into()) {
                    prop_assert_eq!(s.normalize(), s.clone());
                    prop_assert_eq!(s.normalize().normalize(), s);
                }
            }
        }
    }
}
