//! Exact rationals and their string form.
//!
//! Coordinates everywhere in this crate are [`Rational`]s. Values whose
//! numerator and denominator fit in an `i64` are stored inline and computed
//! with machine integers; anything larger is held as a `BigRational`. The
//! representation is canonical, so derived equality and hashing are value
//! equality. The text form is always `"p/q"` in lowest terms with `q > 0`,
//! which is what the JSON documents use.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, denominator positive.
    Small(i64, i64),
    /// Reduced and not representable as `Small`.
    Big(BigRational),
}

impl Rational {
    /// `p/q` reduced. Panics on `q == 0`.
    pub fn new(p: BigInt, q: BigInt) -> Self {
        Self::from_big(BigRational::new(p, q))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    /// Reduces `n/d` computed in 128-bit arithmetic.
    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        if let (Ok(n64), Ok(d64)) = (i64::try_from(n), i64::try_from(d)) {
            return Self::from_i64_pair(n64, d64);
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    /// Reduces `n/d` with `d > 0`.
    fn from_i64_pair(n: i64, d: i64) -> Self {
        if d == 1 {
            return Rational(Repr::Small(n, 1));
        }
        let g = n.unsigned_abs().gcd(&d.unsigned_abs());
        if g <= 1 {
            return Rational(Repr::Small(n, d));
        }
        let g = g as i64;
        Rational(Repr::Small(n / g, d / g))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    /// Truncates toward zero.
    pub fn to_integer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n / d),
            Repr::Big(r) => r.to_integer(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> i8 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i8,
            Repr::Big(r) => {
                if r.is_negative() {
                    -1
                } else if r.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(n.div_floor(d), 1)),
            Repr::Big(r) => Self::from_big(r.floor()),
        }
    }

    fn add_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Rational(Repr::Small(s, 1));
                    }
                }
                if b == d {
                    return Self::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                Self::from_i128(*a as i128 * *d as i128 + *c as i128 * *b as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(p) = a.checked_mul(*c) {
                        return Rational(Repr::Small(p, 1));
                    }
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }

    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                Self::from_i128(*d as i128, *n as i128)
            }
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Self::from_big(-self.to_big()),
            },
            Repr::Big(r) => Self::from_big(-r.clone()),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    a.cmp(c)
                } else {
                    (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
                }
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $atr:ident, $amethod:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, $b: &Rational) -> Rational {
                let $a = self;
                $body
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, o: Rational) -> Rational {
                self.$method(&o)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, o: &Rational) -> Rational {
                (&self).$method(o)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, o: Rational) -> Rational {
                (&self).$method(&o)
            }
        }
        impl $atr<&Rational> for Rational {
            fn $amethod(&mut self, o: &Rational) {
                *self = (&*self).$method(o);
            }
        }
        impl $atr<Rational> for Rational {
            fn $amethod(&mut self, o: Rational) {
                *self = (&*self).$method(&o);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign, |a, b| a.add_ref(b));
binop!(Sub, sub, SubAssign, sub_assign, |a, b| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, MulAssign, mul_assign, |a, b| a.mul_ref(b));
binop!(Div, div, DivAssign, div_assign, |a, b| a.mul_ref(&b.recip()));

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// `p/q`, reduced. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::from_i128(p as i128, q as i128)
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Formats as `p/q` with the denominator always present.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`. Rejects zero denominators and
/// non-reduced input is accepted but normalized.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Exact decimal rendering rounded half away from zero to `digits`
/// fractional digits. Trailing zeros are kept so columns line up.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.numer() * &scale;
    let denom = r.denom();
    let (mut q, rem) = scaled.div_rem(&denom);
    // round half away from zero
    if (rem.abs() * 2u32) >= denom {
        if scaled.is_negative() {
            q -= 1;
        } else {
            q += 1;
        }
    }
    let negative = q.is_negative();
    let digits_str = q.abs().to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if digits == 0 {
        out.push_str(&digits_str);
        return out;
    }
    let padded = format!("{:0>width$}", digits_str, width = digits + 1);
    let split = padded.len() - digits;
    let _ = write!(out, "{}.{}", &padded[..split], &padded[split..]);
    out
}

/// Lossy conversion, only used for human-facing summaries.
pub fn to_f64(r: &Rational) -> f64 {
    to_decimal(r, 17).parse().unwrap_or(f64::NAN)
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_always_has_denominator() {
        assert_eq!(format_rational(&int(3)), "3/1");
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(6, -9)), "-2/3");
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn small_and_big_agree() {
        let big = rat(i64::MAX, 3) * int(9);
        assert_eq!(big.to_string(), format!("{}", BigInt::from(i64::MAX) * 3));
        assert_eq!(&big / &int(9), rat(i64::MAX, 3));
        assert_eq!(-int(i64::MIN), int(i64::MAX) + int(1));
        assert!(rat(1, 3) < rat(1, 2));
        assert!(big > int(i64::MAX));
        assert_eq!(rat(1, 6) + rat(1, 3), rat(1, 2));
        assert_eq!(rat(-7, 2).floor(), int(-4));
        assert_eq!((rat(5, 2) - rat(1, 2)), int(2));
        assert!(rat(-1, 5).is_negative());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&rat(-1, 2), 0), "-1");
        assert_eq!(to_decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&int(-1), 3), "-1.000");
        assert_eq!(to_decimal(&zero(), 2), "0.00");
    }
}
