//! Exact rationals and univariate polynomials over them.
//!
//! Every polynomial is stored in the monomial basis: `coeffs[i]` is the
//! coefficient of `m^i`. The divided-power view
//! `P(m) = Σ α_i m^i / i!` is exposed through [`QPoly::alpha_coeffs`] and
//! [`QPoly::from_alpha`]. Polynomials are totally ordered by their sign at
//! infinity ([`QPoly::lex_at_infinity`]), which is the order every stability
//! decision in this crate relies on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Rational {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Rational {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Rational {
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"p"` or `"p/q"`. Decimal points and exponents are rejected.
    fn from_str(s: &str) -> Result<Rational> {
        let bad = || Error::InvalidInput(format!("not an exact rational: {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_i64() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;

        impl serde::de::Visitor<'_> for Visitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
                Ok(Rational::from(v))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
                Ok(Rational::from(BigInt::from(v)))
            }

            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<Rational, E> {
                Err(E::custom(format!("floating point value {v} rejected; write rationals as \"p/q\"")))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(Visitor)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Generalized binomial coefficient `x (x-1) ... (x-d+1) / d!`.
///
/// The top may be any rational, so `gen_binomial(-1, 0) = 1` and
/// `gen_binomial(3/2, 2) = 3/8`.
pub fn gen_binomial(x: &Rational, d: usize) -> Rational {
    let mut num = Rational::one();
    for k in 0..d {
        num = num * (x - Rational::from(k as i64));
    }
    num / Rational::from(factorial(d))
}

/// Integer-top binomial, falling-factorial convention (so negative tops are allowed).
pub fn int_binomial(n: &BigInt, d: usize) -> BigInt {
    let mut num = BigInt::one();
    for k in 0..d {
        num *= n - BigInt::from(k);
    }
    // exact: a product of d consecutive integers is divisible by d!
    num.div_floor(&factorial(d))
}

/// A univariate polynomial in `m` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> QPoly {
        QPoly::from_coeffs(vec![c])
    }

    /// `a·m + b`
    pub fn linear(a: Rational, b: Rational) -> QPoly {
        QPoly::from_coeffs(vec![b, a])
    }

    /// Builds from monomial coefficients, lowest degree first; trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> QPoly {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// `Σ alphas[i] m^i / i!`.
    pub fn from_alpha(alphas: &[Rational]) -> QPoly {
        QPoly::from_coeffs(alphas.iter().enumerate().map(|(i, a)| a / Rational::from(factorial(i))).collect())
    }

    /// Coefficients in the divided-power basis: `alpha[i] = i! · coeffs[i]`.
    pub fn alpha_coeffs(&self) -> Vec<Rational> {
        self.coeffs.iter().enumerate().map(|(i, c)| c * Rational::from(factorial(i))).collect()
    }

    /// Coefficients `a_i` with `P(m) = Σ a_i · binom(m + i, i)`.
    pub fn binomial_coeffs(&self) -> Vec<Rational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut rest = self.clone();
        let mut out = vec![Rational::zero(); deg + 1];
        for i in (0..=deg).rev() {
            let basis = binomial_basis(i);
            let a = rest.coeff(i) / basis.coeff(i);
            rest = &rest - &basis.scale(&a);
            out[i] = a;
        }
        debug_assert!(rest.is_zero());
        out
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn eval(&self, m: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * m + c)
    }

    pub fn eval_int(&self, m: i64) -> Rational {
        self.eval(&Rational::from(m))
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Sign of `self(m) - other(m)` for all sufficiently large `m`.
    ///
    /// Equivalent to comparing coefficient vectors from the top degree down
    /// after padding both to a common length.
    pub fn lex_at_infinity(&self, other: &QPoly) -> Ordering {
        let n = self.coeffs.len().max(other.coeffs.len());
        for i in (0..n).rev() {
            match self.coeff(i).cmp(&other.coeff(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Whether `self(m) ≥ 0` for all sufficiently large `m`.
    pub fn eventually_nonnegative(&self) -> bool {
        self.leading().is_none_or(|c| c.is_positive())
    }

    /// The reduced polynomial `P / α_d(P)`; its top α-coefficient is 1.
    pub fn reduced(&self) -> Result<QPoly> {
        let top = self.top_alpha()?;
        Ok(self.scale(&top.recip()))
    }

    /// The slope `α_{d-1} / α_d`, with `d` the degree of `self`.
    pub fn slope(&self) -> Result<Rational> {
        let d = self.degree().ok_or(Error::ZeroSheaf)?;
        self.slope_in_dim(d)
    }

    /// The slope `α_{d-1} / α_d` for an explicitly supplied dimension `d`.
    pub fn slope_in_dim(&self, d: usize) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::ZeroSheaf);
        }
        if d == 0 {
            return Err(Error::DimensionZero);
        }
        let alpha = self.alpha_coeffs();
        let top = alpha.get(d).cloned().unwrap_or_default();
        if top.is_zero() {
            return Err(Error::ZeroSheaf);
        }
        let below = alpha.get(d - 1).cloned().unwrap_or_default();
        Ok(below / top)
    }

    /// The multiplicity `α_d`, which must be positive.
    pub fn top_alpha(&self) -> Result<Rational> {
        let d = self.degree().ok_or(Error::ZeroSheaf)?;
        let top = self.coeffs[d].clone() * Rational::from(factorial(d));
        if !top.is_positive() {
            return Err(Error::NonPositiveLeading);
        }
        Ok(top)
    }

    /// `P(m + k)`.
    pub fn shift(&self, k: &Rational) -> QPoly {
        // Horner with the linear polynomial (m + k)
        let lin = QPoly::linear(Rational::one(), k.clone());
        self.coeffs.iter().rev().fold(QPoly::zero(), |acc, c| &(&acc * &lin) + &QPoly::constant(c.clone()))
    }
}

/// `binom(m + i, i)` as a polynomial in `m`.
fn binomial_basis(i: usize) -> QPoly {
    let mut p = QPoly::constant(Rational::one());
    for j in 1..=i {
        let j = j as i64;
        p = &p * &QPoly::linear(Rational::new(1, j), Rational::one());
    }
    p
}

impl PartialOrd for QPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The eventual order, which is total.
impl Ord for QPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_at_infinity(other)
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        *self = &*self + rhs;
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        &self - &rhs
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| &acc + &p)
    }
}

impl<'a> std::iter::Sum<&'a QPoly> for QPoly {
    fn sum<I: Iterator<Item = &'a QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| &acc + p)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag == Rational::one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("m")?,
                1 => write!(f, "{mag}m")?,
                _ if unit => write!(f, "m^{i}")?,
                _ => write!(f, "{mag}m^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Serialized as the list of monomial coefficients, lowest degree first.
impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Vec::<Rational>::deserialize(deserializer).map(QPoly::from_coeffs)
    }
}
