//! Exact scalar kernel.
//!
//! [`ExactScalar`] is an arbitrary-precision rational kept in lowest terms,
//! [`GaussianExact`] a complex number with rational parts. Every identity in
//! the crate is summed in these types; floating point only appears in
//! quadrature and in human-readable output.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Rising factorial `x (x+1) ... (x+n-1)`.
pub trait Pochhammer: Sized {
    fn pochhammer(&self, n: usize) -> Self;
}

pub fn pochhammer<T: Pochhammer>(x: &T, n: usize) -> T {
    x.pochhammer(n)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        ExactScalar(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactScalar(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        ExactScalar(self.0.recip())
    }

    pub fn checked_recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    pub fn pow(&self, exp: i32) -> Self {
        ExactScalar(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Exact conversion of a finite float.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(ExactScalar)
    }

    /// Nearest binary64 value (round-half-even).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Rounds to a binary floating value with `precision_bits` significant
    /// bits.
    pub fn to_float(&self, precision_bits: u32) -> BinaryFloat {
        assert!(precision_bits >= 53, "precision must be at least 53 bits");
        BinaryFloat::round(self, precision_bits)
    }
}

impl Pochhammer for ExactScalar {
    fn pochhammer(&self, n: usize) -> Self {
        let mut acc = ExactScalar::one();
        let mut x = self.clone();
        let one = ExactScalar::one();
        for _ in 0..n {
            acc *= &x;
            x += &one;
        }
        acc
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        ExactScalar(r)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        ExactScalar::from_integer(n)
    }
}

macro_rules! scalar_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactScalar {
            fn from(n: $t) -> Self {
                ExactScalar::from_integer(BigInt::from(n))
            }
        }
    )*};
}
scalar_from_int!(i32, i64, u32, u64, usize);

// Owned and borrowed operator impls for a single-field newtype.
macro_rules! forward_binops {
    ($ty:ident, $(($tr:ident, $method:ident, $atr:ident, $amethod:ident, $op:tt)),*) => {$(
        impl $tr<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $ty(&self.0 $op &rhs.0)
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty(self.0 $op rhs.0)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $ty(self.0 $op &rhs.0)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty(&self.0 $op rhs.0)
            }
        }
        impl $atr<&$ty> for $ty {
            fn $amethod(&mut self, rhs: &$ty) {
                let lhs = std::mem::take(&mut self.0);
                self.0 = lhs $op &rhs.0;
            }
        }
        impl $atr<$ty> for $ty {
            fn $amethod(&mut self, rhs: $ty) {
                let lhs = std::mem::take(&mut self.0);
                self.0 = lhs $op rhs.0;
            }
        }
    )*};
}

forward_binops!(
    ExactScalar,
    (Add, add, AddAssign, add_assign, +),
    (Sub, sub, SubAssign, sub_assign, -),
    (Mul, mul, MulAssign, mul_assign, *),
    (Div, div, DivAssign, div_assign, /)
);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `"p/q"` or `"p"` with an optional sign. `offset` is added to
/// reported error positions.
fn parse_rational(text: &str, offset: usize) -> Result<ExactScalar> {
    let parse_int = |s: &str, at: usize, signed: bool| -> Result<BigInt> {
        let digits = if signed {
            s.strip_prefix(['+', '-']).unwrap_or(s)
        } else {
            s
        };
        if digits.is_empty() {
            return Err(Error::parse(at, "expected digits"));
        }
        if let Some(bad) = digits.find(|c: char| !c.is_ascii_digit()) {
            let lead = s.len() - digits.len();
            return Err(Error::parse(
                at + lead + bad,
                format!("unexpected character {:?}", &digits[bad..bad + 1]),
            ));
        }
        Ok(s.trim_start_matches('+').parse::<BigInt>().expect("validated digits"))
    };
    match text.split_once('/') {
        None => Ok(ExactScalar::from_integer(parse_int(text, offset, true)?)),
        Some((num, den)) => {
            let n = parse_int(num, offset, true)?;
            let den_at = offset + num.len() + 1;
            let d = parse_int(den, den_at, false)?;
            if d.is_zero() {
                return Err(Error::parse(den_at, "zero denominator"));
            }
            Ok(ExactScalar::new(n, d))
        }
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s.trim(), 0)
    }
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianExact {
    pub re: ExactScalar,
    pub im: ExactScalar,
}

impl GaussianExact {
    pub fn new(re: ExactScalar, im: ExactScalar) -> Self {
        GaussianExact { re, im }
    }

    pub fn real(re: ExactScalar) -> Self {
        GaussianExact {
            re,
            im: ExactScalar::zero(),
        }
    }

    pub fn i() -> Self {
        GaussianExact::new(ExactScalar::zero(), ExactScalar::one())
    }

    pub fn zero() -> Self {
        GaussianExact::real(ExactScalar::zero())
    }

    pub fn one() -> Self {
        GaussianExact::real(ExactScalar::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianExact::new(self.re.clone(), -&self.im)
    }

    /// `z * conj(z) = re^2 + im^2`.
    pub fn norm_sq(&self) -> ExactScalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return None;
        }
        Some(GaussianExact::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Real part if the imaginary part is exactly zero.
    pub fn into_real(self) -> Option<ExactScalar> {
        self.im.is_zero().then_some(self.re)
    }
}

pub fn norm_sq(z: &GaussianExact) -> ExactScalar {
    z.norm_sq()
}

impl From<ExactScalar> for GaussianExact {
    fn from(re: ExactScalar) -> Self {
        GaussianExact::real(re)
    }
}

impl Pochhammer for GaussianExact {
    fn pochhammer(&self, n: usize) -> Self {
        let mut acc = GaussianExact::one();
        let mut x = self.clone();
        let one = ExactScalar::one();
        for _ in 0..n {
            acc = &acc * &x;
            x.re += &one;
        }
        acc
    }
}

impl Add<&GaussianExact> for &GaussianExact {
    type Output = GaussianExact;
    fn add(self, rhs: &GaussianExact) -> GaussianExact {
        GaussianExact::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussianExact> for &GaussianExact {
    type Output = GaussianExact;
    fn sub(self, rhs: &GaussianExact) -> GaussianExact {
        GaussianExact::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussianExact> for &GaussianExact {
    type Output = GaussianExact;
    fn mul(self, rhs: &GaussianExact) -> GaussianExact {
        GaussianExact::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&GaussianExact> for &GaussianExact {
    type Output = GaussianExact;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianExact) -> GaussianExact {
        self * &rhs.recip().expect("complex division by zero")
    }
}

impl Add<&ExactScalar> for &GaussianExact {
    type Output = GaussianExact;
    fn add(self, rhs: &ExactScalar) -> GaussianExact {
        GaussianExact::new(&self.re + rhs, self.im.clone())
    }
}

impl Sub<&ExactScalar> for &GaussianExact {
    type Output = GaussianExact;
    fn sub(self, rhs: &ExactScalar) -> GaussianExact {
        GaussianExact::new(&self.re - rhs, self.im.clone())
    }
}

impl Mul<&ExactScalar> for &GaussianExact {
    type Output = GaussianExact;
    fn mul(self, rhs: &ExactScalar) -> GaussianExact {
        GaussianExact::new(&self.re * rhs, &self.im * rhs)
    }
}

impl Neg for &GaussianExact {
    type Output = GaussianExact;
    fn neg(self) -> GaussianExact {
        GaussianExact::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for GaussianExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GaussianExact {
    type Err = Error;

    /// Accepts `"a/b+c/di"`, `"a/b"`, `"c/di"`, `"i"`, `"-i"`, `"3-i"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(0, "empty input"));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussianExact::real(parse_rational(s, 0)?));
        };
        // Split at the last sign that is not leading.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_text, im_text, im_at) = match split {
            Some(k) => (&body[..k], &body[k..], k),
            None => ("", body, 0),
        };
        let re = if re_text.is_empty() {
            ExactScalar::zero()
        } else {
            parse_rational(re_text, 0)?
        };
        let im = match im_text {
            "" | "+" => ExactScalar::one(),
            "-" => -ExactScalar::one(),
            t => parse_rational(t, im_at)?,
        };
        Ok(GaussianExact::new(re, im))
    }
}

/// `mantissa * 2^exponent`, with `|mantissa|` holding exactly the requested
/// number of significant bits (or zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFloat {
    pub mantissa: BigInt,
    pub exponent: i64,
    pub precision_bits: u32,
}

impl BinaryFloat {
    fn round(x: &ExactScalar, bits: u32) -> Self {
        if x.is_zero() {
            return BinaryFloat {
                mantissa: BigInt::zero(),
                exponent: 0,
                precision_bits: bits,
            };
        }
        let negative = x.is_negative();
        let p = x.numer().abs();
        let q = x.denom().clone();
        let bits_i = i64::from(bits);
        let mut e = p.bits() as i64 - q.bits() as i64 - bits_i;
        let lo = BigInt::one() << (bits - 1);
        let hi = BigInt::one() << bits;
        let (mut quot, rem, den) = loop {
            // quot = floor(p / (q 2^e))
            let (num, den) = if e >= 0 {
                (p.clone(), &q << (e as u64))
            } else {
                (&p << ((-e) as u64), q.clone())
            };
            let (quot, rem) = num.div_rem(&den);
            if quot >= hi {
                e += 1;
            } else if quot < lo {
                e -= 1;
            } else {
                break (quot, rem, den);
            }
        };
        let twice = &rem << 1u32;
        let round_up = match twice.cmp(&den) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => quot.is_odd(),
            std::cmp::Ordering::Less => false,
        };
        if round_up {
            quot += 1;
            if quot == hi {
                quot = lo;
                e += 1;
            }
        }
        let mantissa = if negative { -quot } else { quot };
        BinaryFloat {
            mantissa,
            exponent: e,
            precision_bits: bits,
        }
    }

    /// Converts to binary64. Exact when `precision_bits == 53` and the value
    /// is in the normal range.
    pub fn to_f64(&self) -> f64 {
        if self.mantissa.sign() == Sign::NoSign {
            return 0.0;
        }
        let excess = (self.mantissa.bits() as i64 - 53).max(0);
        let m = (&self.mantissa >> (excess as u64)).to_f64().unwrap_or(f64::NAN);
        let mut e = self.exponent + excess;
        // Scale in steps that stay inside the finite range.
        let mut out = m;
        while e > 0 {
            let step = e.min(1000);
            out *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 {
            let step = (-e).min(1000);
            out /= 2f64.powi(step as i32);
            e += step;
        }
        out
    }
}
