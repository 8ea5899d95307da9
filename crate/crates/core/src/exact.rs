//! Exact arithmetic substrate.
//!
//! Every moment the engine produces for an integer power is a rational number
//! times an integer power of `sqrt(pi)`. [`ExactValue`] carries exactly that
//! shape, and [`gamma_exact`] / [`gamma_ratio`] produce it from gamma functions
//! at positive integer and half-odd arguments.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand constructor used all over the crate and its tests.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Rising factorial `a (a+1) ... (a+k-1)`; the empty product is 1.
pub fn pochhammer(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// A number of the form `m/2` for integer `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInteger { twice: 2 * value }
    }

    pub fn from_rational(x: &Rational) -> Result<Self> {
        let doubled = x * int(2);
        if !doubled.is_integer() {
            return Err(Error::NotHalfInteger(x.to_string()));
        }
        doubled
            .to_integer()
            .to_i64()
            .map(Self::from_twice)
            .ok_or_else(|| Error::NotHalfInteger(x.to_string()))
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_positive(self) -> bool {
        self.twice > 0
    }

    pub fn to_rational(self) -> Rational {
        rat(self.twice, 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        HalfInteger::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: Self) -> Self {
        HalfInteger::from_twice(self.twice - rhs.twice)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// `coeff * pi^(sqrtpi_exp / 2)`.
///
/// Zero is always stored with `sqrtpi_exp == 0`, so structural equality is
/// numeric equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactValue {
    coeff: Rational,
    sqrtpi_exp: i64,
}

impl ExactValue {
    pub fn new(coeff: Rational, sqrtpi_exp: i64) -> Self {
        if coeff.is_zero() {
            ExactValue::zero()
        } else {
            ExactValue { coeff, sqrtpi_exp }
        }
    }

    pub fn rational(coeff: Rational) -> Self {
        ExactValue::new(coeff, 0)
    }

    pub fn zero() -> Self {
        ExactValue {
            coeff: Rational::zero(),
            sqrtpi_exp: 0,
        }
    }

    pub fn one() -> Self {
        ExactValue::rational(Rational::one())
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn sqrtpi_exp(&self) -> i64 {
        self.sqrtpi_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.sqrtpi_exp == 0).then_some(&self.coeff)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        ExactValue::new(&self.coeff * factor, self.sqrtpi_exp)
    }

    pub fn recip(&self) -> Self {
        ExactValue::new(self.coeff.recip(), -self.sqrtpi_exp)
    }

    pub fn checked_add(&self, rhs: &ExactValue) -> Result<ExactValue> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.sqrtpi_exp != rhs.sqrtpi_exp {
            return Err(Error::MixedSqrtPi {
                left: self.sqrtpi_exp,
                right: rhs.sqrtpi_exp,
            });
        }
        Ok(ExactValue::new(&self.coeff + &rhs.coeff, self.sqrtpi_exp))
    }

    pub fn checked_sub(&self, rhs: &ExactValue) -> Result<ExactValue> {
        self.checked_add(&-rhs)
    }

    pub fn to_f64(&self) -> f64 {
        to_float(self, 53)
    }
}

impl From<Rational> for ExactValue {
    fn from(coeff: Rational) -> Self {
        ExactValue::rational(coeff)
    }
}

impl Mul for &ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: &ExactValue) -> ExactValue {
        ExactValue::new(&self.coeff * &rhs.coeff, self.sqrtpi_exp + rhs.sqrtpi_exp)
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: ExactValue) -> ExactValue {
        &self * &rhs
    }
}

impl Div for &ExactValue {
    type Output = ExactValue;
    fn div(self, rhs: &ExactValue) -> ExactValue {
        assert!(!rhs.is_zero(), "division of ExactValue by zero");
        ExactValue::new(&self.coeff / &rhs.coeff, self.sqrtpi_exp - rhs.sqrtpi_exp)
    }
}

impl Div for ExactValue {
    type Output = ExactValue;
    fn div(self, rhs: ExactValue) -> ExactValue {
        &self / &rhs
    }
}

impl Neg for &ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        ExactValue::new(-&self.coeff, self.sqrtpi_exp)
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        -&self
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrtpi_exp == 0 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt(pi)^{}", self.coeff, self.sqrtpi_exp)
        }
    }
}

/// Gamma at a positive integer or half-odd argument.
pub fn gamma_exact(x: HalfInteger) -> Result<ExactValue> {
    if !x.is_positive() {
        return Err(Error::NonPositiveArgument(x.to_string()));
    }
    if x.is_integer() {
        let m = (x.twice() / 2) as u64;
        return Ok(ExactValue::rational(Rational::from_integer(factorial(m - 1))));
    }
    // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
    let m = ((x.twice() - 1) / 2) as u64;
    let num = factorial(2 * m);
    let den = (BigInt::one() << (2 * m as usize)) * factorial(m);
    Ok(ExactValue::new(Rational::new(num, den), 1))
}

/// `Gamma(num) / Gamma(den)`, telescoped through the functional equation when
/// the arguments differ by an integer.
pub fn gamma_ratio(num: HalfInteger, den: HalfInteger) -> Result<ExactValue> {
    for x in [num, den] {
        if !x.is_positive() {
            return Err(Error::NonPositiveArgument(x.to_string()));
        }
    }
    let diff = num.twice() - den.twice();
    if diff % 2 != 0 {
        return Ok(&gamma_exact(num)? / &gamma_exact(den)?);
    }
    let steps = (diff / 2).unsigned_abs();
    if diff >= 0 {
        Ok(ExactValue::rational(pochhammer(&den.to_rational(), steps)))
    } else {
        Ok(ExactValue::rational(pochhammer(&num.to_rational(), steps).recip()))
    }
}

const PI_CACHE_BITS: u64 = 4096;

fn arctan_recip_fixed(x: u64, bits: u64) -> BigInt {
    // arctan(1/x) * 2^bits
    let one = BigInt::one() << bits as usize;
    let x_big = BigInt::from(x);
    let x_sq = &x_big * &x_big;
    let mut power = &one / &x_big;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &x_sq;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn compute_pi_fixed(bits: u64) -> BigInt {
    let guard = 32;
    let work = bits + guard;
    let pi = BigInt::from(16) * arctan_recip_fixed(5, work) - BigInt::from(4) * arctan_recip_fixed(239, work);
    pi >> guard as usize
}

/// `floor(pi * 2^bits)` up to a couple of units in the last place.
fn pi_fixed(bits: u64) -> BigInt {
    static CACHE: OnceLock<BigInt> = OnceLock::new();
    if bits <= PI_CACHE_BITS {
        let cached = CACHE.get_or_init(|| compute_pi_fixed(PI_CACHE_BITS));
        cached >> (PI_CACHE_BITS - bits) as usize
    } else {
        compute_pi_fixed(bits)
    }
}

/// Rounds the positive fraction `num/den` to `precision` significant bits
/// (ties to even) and returns it as an `f64`.
fn round_positive_ratio(num: &BigInt, den: &BigInt, precision: u32) -> f64 {
    let precision = i64::from(precision);
    let mut shift = precision - (num.bits() as i64 - den.bits() as i64);
    loop {
        let (scaled_num, scaled_den) = if shift >= 0 {
            (num << shift as usize, den.clone())
        } else {
            (num.clone(), den << (-shift) as usize)
        };
        let (mut quotient, remainder) = scaled_num.div_rem(&scaled_den);
        let bits = quotient.bits() as i64;
        if bits > precision {
            shift -= bits - precision;
            continue;
        }
        if bits < precision {
            shift += precision - bits;
            continue;
        }
        let twice_rem: BigInt = remainder << 1;
        match twice_rem.cmp(&scaled_den) {
            std::cmp::Ordering::Greater => quotient += 1,
            std::cmp::Ordering::Equal if quotient.is_odd() => quotient += 1,
            _ => {}
        }
        let mantissa = quotient.to_f64().expect("mantissa fits in f64");
        return scale_by_pow2(mantissa, -shift);
    }
}

fn scale_by_pow2(mut value: f64, mut exp: i64) -> f64 {
    while exp > 1000 {
        value *= 2f64.powi(1000);
        exp -= 1000;
    }
    while exp < -1000 {
        value *= 2f64.powi(-1000);
        exp += 1000;
    }
    value * 2f64.powi(exp as i32)
}

/// Converts an exact value to floating point, rounded to `precision`
/// significant bits (clamped to `1..=53`).
pub fn to_float(value: &ExactValue, precision: u32) -> f64 {
    let precision = precision.clamp(1, 53);
    if value.is_zero() {
        return 0.0;
    }
    let negative = value.coeff.is_negative();
    let mut num = value.coeff.numer().abs();
    let mut den = value.coeff.denom().clone();
    let e = value.sqrtpi_exp;
    if e != 0 {
        let width = u64::from(precision) + 96 + 8 * e.unsigned_abs();
        // sqrt(pi * 2^(2w)) = sqrt(pi) * 2^w
        let pi_scaled = pi_fixed(2 * width);
        let root = BigInt::from_biguint(Sign::Plus, pi_scaled.magnitude().sqrt());
        let power = root.pow(e.unsigned_abs() as u32);
        let unit = BigInt::one() << (width * e.unsigned_abs()) as usize;
        if e > 0 {
            num *= power;
            den *= unit;
        } else {
            num *= unit;
            den *= power;
        }
    }
    let magnitude = round_positive_ratio(&num, &den, precision);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Canonical structured rendering: (numerator, denominator, sqrtpi exponent)
/// as decimal strings.
pub fn canonical_parts(value: &ExactValue) -> (String, String, String) {
    (
        value.coeff.numer().to_string(),
        value.coeff.denom().to_string(),
        value.sqrtpi_exp.to_string(),
    )
}

/// Inverse of [`canonical_parts`].
pub fn from_canonical_parts(num: &str, den: &str, sqrtpi_exp: &str) -> Option<ExactValue> {
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    let exp: i64 = sqrtpi_exp.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(ExactValue::new(Rational::new(num, den), exp))
}
