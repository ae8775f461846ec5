//! Exact scalars: rationals and elements of a real quadratic field `Q(sqrt(D))`.
//!
//! [`Rat`] keeps small values inline as a reduced `i64` pair and only spills to
//! `BigRational` when a result no longer fits. The canonical form is unique, so
//! structural equality and hashing agree with numeric equality.
//!
//! [`Scalar`] is `a + b*sqrt(D)` with rational `a`, `b`. A scalar with `b = 0`
//! carries no discriminant, which lets rational and quadratic values mix freely
//! as long as every irrational operand uses the same `D`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, denominator positive, numerator never `i64::MIN`.
    Small(i64, i64),
    /// Only used when the reduced value does not fit `Small`.
    Big(BigRational),
}

/// An exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128) as i64
}

impl Rat {
    pub fn zero() -> Self {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rat(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rat::from_i128(n as i128, 1)
    }

    /// `n / d`; panics when `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rat::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rat(Repr::Small(n as i64, d as i64))
        } else {
            Rat(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    /// Canonicalizes a `BigRational` (which is already reduced by `num`).
    pub fn from_big(r: BigRational) -> Self {
        let r = if r.denom().is_negative() {
            BigRational::new(r.numer().clone(), r.denom().clone())
        } else {
            r
        };
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(r)),
        }
    }

    pub fn from_bigints(n: BigInt, d: BigInt) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        Rat::from_big(BigRational::new(n, d))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
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

    /// Numerator and denominator when both fit in `i64`.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Rat {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Rat::from_i128(*d as i128, *n as i128)
            }
            Repr::Big(r) => Rat::from_big(r.recip()),
        }
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n.div_floor(d)),
            Repr::Big(r) => r.floor().to_integer(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn pow2(&self) -> Rat {
        self * self
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_big(BigRational::from_integer(n))
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Rat::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                    Rat::from_i128(n, *b as i128 * *d as i128)
                }
            }
            _ => Rat::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Rat::from_i128(*a as i128 - *c as i128, *b as i128)
                } else {
                    let n = *a as i128 * *d as i128 - *c as i128 * *b as i128;
                    Rat::from_i128(n, *b as i128 * *d as i128)
                }
            }
            _ => Rat::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rat::zero();
                }
                let g1 = gcd_i64(*a, *d);
                let g2 = gcd_i64(*c, *b);
                let n = (*a / g1) as i128 * (*c / g2) as i128;
                let m = (*b / g2) as i128 * (*d / g1) as i128;
                Rat::from_i128(n, m)
            }
            _ => Rat::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        self * &rhs.recip()
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat(Repr::Small(-n, *d)),
            Repr::Big(r) => Rat::from_big(-r.clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<$ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Rat, Add, add);
forward_owned_binop!(Rat, Sub, sub);
forward_owned_binop!(Rat, Mul, mul);
forward_owned_binop!(Rat, Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse::<BigInt>().ok()
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let bad = || Error::parse(s, "expected an integer or a fraction p/q");
        let s = s.trim();
        match s.split_once('/') {
            None => parse_int(s).map(Rat::from).ok_or_else(bad),
            Some((n, d)) => {
                let n = parse_int(n).ok_or_else(bad)?;
                let d = parse_int(d).ok_or_else(bad)?;
                if d.is_zero() {
                    return Err(Error::parse(s, "zero denominator"));
                }
                Ok(Rat::from_bigints(n, d))
            }
        }
    }
}

/// The ambient field of a function: `Q` or `Q(sqrt(D))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumberField {
    Rational,
    Sqrt(u32),
}

impl NumberField {
    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            NumberField::Rational => x.is_rational(),
            NumberField::Sqrt(d) => x.root == 0 || x.root == *d,
        }
    }

    /// The smallest field containing every value, or an error if two values use
    /// different square roots.
    pub fn of<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Result<NumberField> {
        let mut field = NumberField::Rational;
        for v in values {
            if v.root != 0 {
                match field {
                    NumberField::Rational => field = NumberField::Sqrt(v.root),
                    NumberField::Sqrt(d) if d == v.root => {}
                    NumberField::Sqrt(d) => return Err(Error::MixedField(d, v.root)),
                }
            }
        }
        Ok(field)
    }
}

pub fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d as u64 {
        if d as u64 % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// An exact real number `a + b*sqrt(root)`; `root == 0` exactly when `b == 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    a: Rat,
    b: Rat,
    root: u32,
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        self.root.hash(state);
    }
}

fn join_roots(r: u32, s: u32) -> u32 {
    match (r, s) {
        (0, s) => s,
        (r, 0) => r,
        (r, s) if r == s => r,
        (r, s) => panic!("mixing sqrt({r}) and sqrt({s}) in one computation"),
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::from(Rat::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::from(Rat::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from(Rat::new(n, d))
    }

    /// `a + b*sqrt(d)`; `d` must be square-free and at least 2.
    pub fn quadratic(a: Rat, b: Rat, d: u32) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::parse(&d.to_string(), "sqrt argument must be a square-free integer >= 2"));
        }
        Ok(Scalar::normalized(a, b, d))
    }

    fn normalized(a: Rat, b: Rat, root: u32) -> Self {
        if b.is_zero() {
            Scalar { a, b, root: 0 }
        } else {
            Scalar { a, b, root }
        }
    }

    pub fn rat_part(&self) -> &Rat {
        &self.a
    }

    pub fn quad_part(&self) -> &Rat {
        &self.b
    }

    /// The discriminant, or 0 for a rational value.
    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn is_rational(&self) -> bool {
        self.root == 0
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.root == 0 && self.a.is_zero()
    }

    /// Exact sign of the represented real number.
    pub fn sign(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a^2 against D*b^2.
        let a2 = self.a.pow2();
        let db2 = &self.b.pow2() * &Rat::from_int(self.root as i64);
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.root as f64).sqrt()
    }

    /// Greatest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.floor();
        }
        let mut n = BigInt::from(self.to_f64().floor() as i64);
        loop {
            let below = (self - &Scalar::from(Rat::from(n.clone()))).sign() >= 0;
            let above = (self - &Scalar::from(Rat::from(&n + 1))).sign() < 0;
            match (below, above) {
                (true, true) => return n,
                (false, _) => n -= 1,
                (_, false) => n += 1,
            }
        }
    }

    /// Representative in `[0, 1)`.
    pub fn frac(&self) -> Scalar {
        let fl = self.floor();
        if fl.is_zero() {
            self.clone()
        } else {
            self - &Scalar::from(Rat::from(fl))
        }
    }

    pub fn recip(&self) -> Scalar {
        Scalar::one() / self
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Scalar {
        Scalar::normalized(&self.a * r, &self.b * r, self.root)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Rat> for Scalar {
    fn from(a: Rat) -> Self {
        Scalar { a, b: Rat::zero(), root: 0 }
    }
}

impl From<&Rat> for Scalar {
    fn from(a: &Rat) -> Self {
        Scalar::from(a.clone())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.root == 0 && rhs.root == 0 {
            return Scalar::from(&self.a + &rhs.a);
        }
        let root = join_roots(self.root, rhs.root);
        Scalar::normalized(&self.a + &rhs.a, &self.b + &rhs.b, root)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.root == 0 && rhs.root == 0 {
            return Scalar::from(&self.a - &rhs.a);
        }
        let root = join_roots(self.root, rhs.root);
        Scalar::normalized(&self.a - &rhs.a, &self.b - &rhs.b, root)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.root == 0 && rhs.root == 0 {
            return Scalar::from(&self.a * &rhs.a);
        }
        let root = join_roots(self.root, rhs.root);
        let d = Rat::from_int(root as i64);
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &d);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        Scalar::normalized(a, b, root)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        if rhs.root == 0 {
            let inv = rhs.a.recip();
            return self.mul_rat(&inv);
        }
        // Multiply through by the conjugate c - d*sqrt(D).
        let root = join_roots(self.root, rhs.root);
        let conj = Scalar::normalized(rhs.a.clone(), -&rhs.b, root);
        let norm = &rhs.a.pow2() - &(&rhs.b.pow2() * &Rat::from_int(root as i64));
        (self * &conj).mul_rat(&norm.recip())
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::normalized(-&self.a, -&self.b, self.root)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

forward_owned_binop!(Scalar, Add, add);
forward_owned_binop!(Scalar, Sub, sub);
forward_owned_binop!(Scalar, Mul, mul);
forward_owned_binop!(Scalar, Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.root == 0 && other.root == 0 {
            return self.a.cmp(&other.a);
        }
        (self - other).sign().cmp(&0)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 0 {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.signum() > 0 {
                write!(f, "+")?;
            }
        }
        write!(f, "{}*sqrt({})", self.b, self.root)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, `r/s*sqrt(D)`, `p/q+r/s*sqrt(D)`, `p/q-sqrt(D)` and so on.
    fn from_str(text: &str) -> Result<Scalar> {
        let trimmed = text.trim();
        let b = trimmed.as_bytes();
        for (k, c) in b.iter().enumerate() {
            // Spaces may only surround the operators, never split a number.
            if c.is_ascii_whitespace() {
                let prev = b[..k].iter().rev().find(|c| !c.is_ascii_whitespace());
                let next = b[k..].iter().find(|c| !c.is_ascii_whitespace());
                if matches!((prev, next), (Some(p), Some(n)) if p.is_ascii_alphanumeric() && n.is_ascii_alphanumeric()) {
                    return Err(Error::parse(text, "unexpected space"));
                }
            }
        }
        let s: String = trimmed.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(idx) = s.find("sqrt(") else {
            return Ok(Scalar::from(s.parse::<Rat>()?));
        };
        let inner = s[idx + 5..]
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(text, "expected `sqrt(D)` at the end"))?;
        let d: u32 = inner
            .parse()
            .map_err(|_| Error::parse(text, "sqrt argument must be a positive integer"))?;

        let head = &s[..idx];
        let (coef_text, has_star) = match head.strip_suffix('*') {
            Some(h) => (h, true),
            None => (head, false),
        };
        // The coefficient is the trailing run of digits and '/', preceded by an optional sign.
        let coef_start = coef_text
            .rfind(|c: char| !(c.is_ascii_digit() || c == '/'))
            .map_or(0, |p| p + 1);
        if has_star && coef_start == coef_text.len() {
            return Err(Error::parse(text, "missing coefficient before `*sqrt`"));
        }
        let (rat_text, sign) = if coef_start == 0 {
            ("", 1)
        } else {
            let sign_pos = coef_start - 1;
            let sign = match &coef_text[sign_pos..coef_start] {
                "+" => 1,
                "-" => -1,
                _ => return Err(Error::parse(text, "expected `+` or `-` before the sqrt term")),
            };
            (&coef_text[..sign_pos], sign)
        };
        let digits = &coef_text[coef_start..];
        let coef = if digits.is_empty() { Rat::one() } else { digits.parse::<Rat>()? };
        let coef = if sign < 0 { -coef } else { coef };
        let a = if rat_text.is_empty() { Rat::zero() } else { rat_text.parse::<Rat>()? };
        Scalar::quadratic(a, coef, d)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Least `q >= 1` with `q*x` integral for every `x`. Fails on irrational input.
pub fn lcm_denominator<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> Result<u64> {
    let mut q = BigInt::one();
    for x in xs {
        let r = x.as_rat().ok_or_else(|| Error::Irrational(x.to_string()))?;
        q = q.lcm(&r.denom());
    }
    q.to_u64().ok_or_else(|| Error::InvalidFunction(format!("common denominator {q} is too large")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Scalar::quadratic(Rat::zero(), Rat::zero(), 2).unwrap().sign(), 0);
        assert_eq!(s("-1/100+1/200*sqrt(2)").sign(), -1);
        assert_eq!(s("1/2-1/4*sqrt(2)").sign(), 1);
        assert_eq!(s("-1/2+1/4*sqrt(2)").sign(), -1);
    }

    #[test]
    fn lcm_examples() {
        let xs = [s("0"), s("1/5"), s("4/5")];
        assert_eq!(lcm_denominator(&xs).unwrap(), 5);
        assert_eq!(lcm_denominator(&[s("1/4"), s("1/6")]).unwrap(), 12);
        assert!(matches!(lcm_denominator(&[s("sqrt(2)")]), Err(Error::Irrational(_))));
    }

    #[test]
    fn text_forms_round_trip() {
        for t in ["0", "-3/20", "7", "1/200*sqrt(2)", "1/2-1/4*sqrt(2)", "-1*sqrt(3)", "3/4+2*sqrt(5)"] {
            assert_eq!(s(t).to_string(), t);
        }
        assert_eq!(s("sqrt(2)").to_string(), "1*sqrt(2)");
        assert_eq!(s("2/4").to_string(), "1/2");
        assert_eq!(s("1/2 + 0*sqrt(2)").to_string(), "1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for t in ["", "1/0", "abc", "1//2", "sqrt(4)", "1/2*sqrt(2", "*sqrt(2)", "1/2 3"] {
            assert!(t.parse::<Scalar>().is_err(), "{t:?} should not parse");
        }
    }

    #[test]
    fn small_values_spill_to_big_and_back() {
        let big = Rat::new(i64::MAX, 3);
        let sq = &big * &big;
        assert!(sq.as_small().is_none());
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(back.as_small().is_some());
        let m = Rat::new(i64::MIN + 1, 1);
        assert_eq!(-(-&m), m);
    }

    #[test]
    fn quadratic_division_and_floor() {
        let x = s("1+1*sqrt(2)");
        let y = s("3-2*sqrt(2)");
        let q = &x / &y;
        assert_eq!(&q * &y, x);
        assert_eq!(x.floor(), BigInt::from(2));
        assert_eq!((-x.clone()).floor(), BigInt::from(-3));
        assert_eq!(s("1/200*sqrt(2)").floor(), BigInt::from(0));
        assert_eq!(s("13/5").frac(), s("3/5"));
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixing_roots_panics() {
        let _ = s("sqrt(2)") + s("sqrt(3)");
    }

    #[test]
    fn field_of_values() {
        assert_eq!(NumberField::of(&[s("1/2"), s("sqrt(2)")]).unwrap(), NumberField::Sqrt(2));
        assert!(NumberField::of(&[s("sqrt(3)"), s("sqrt(2)")]).is_err());
    }
}
