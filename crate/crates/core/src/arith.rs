//! Exact integers, rationals and dyadic intervals.
//!
//! Integers and rationals are backed by `num-bigint` / `num-rational`; the
//! dyadic types are ours. Every interval operation returns an enclosure of
//! the exact image, and the only rounding that ever happens is the explicit
//! outward rounding in [`DyadicInterval::round_outward`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_int(x: &Integer) -> Sign {
        match x.sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    pub fn of_rat(q: &Rational) -> Sign {
        Sign::of_int(q.numer())
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn pow(self, e: usize) -> Sign {
        match self {
            Sign::Negative if e % 2 == 1 => Sign::Negative,
            Sign::Zero if e > 0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

/// Number of bits of `|x|`, i.e. `1 + floor(lg |x|)`, with `bitsize(0) = 1`.
/// With `with_sign` one extra bit is counted for the sign.
pub fn bitsize(x: &Integer, with_sign: bool) -> u64 {
    let b = if x.is_zero() { 1 } else { x.bits() };
    if with_sign {
        b + 1
    } else {
        b
    }
}

/// `ceil(lg x)` for `x >= 1`; zero for `x <= 1`.
pub fn lg_ceil_u64(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as u64
    }
}

/// `ceil(lg x)` for a positive big integer; zero for `x <= 1`.
pub fn lg_ceil(x: &Integer) -> u64 {
    if *x <= Integer::one() {
        return 0;
    }
    (x - 1u32).bits()
}

/// `floor(lg x)` for positive `x`.
pub fn lg_floor(x: &Integer) -> u64 {
    assert!(x.is_positive(), "lg of a non-positive integer");
    x.bits() - 1
}

/// Exact dyadic upper bound for `lg x` with `frac_bits` fractional bits.
pub fn log2_upper(x: &Integer, frac_bits: u32) -> Rational {
    log2_bound(x, frac_bits, true)
}

/// Exact dyadic lower bound for `lg x` with `frac_bits` fractional bits.
pub fn log2_lower(x: &Integer, frac_bits: u32) -> Rational {
    log2_bound(x, frac_bits, false)
}

fn log2_bound(x: &Integer, frac_bits: u32, upper: bool) -> Rational {
    assert!(x.is_positive(), "lg of a non-positive integer");
    let x = x.abs();
    let bits = x.bits();
    // Keep 64 leading bits; the truncated value brackets x.
    let (shift, mut t) = if bits > 64 {
        let s = bits - 64;
        (s, &x >> s)
    } else {
        (0, x.clone())
    };
    if upper && shift > 0 {
        t += 1u32;
    }
    // p * 2^e brackets t^(2^k) from the requested side; p keeps at most
    // 128 bits, rounding after each squaring.
    let mut p = t;
    let mut e: u64 = 0;
    for _ in 0..frac_bits {
        p = &p * &p;
        e *= 2;
        let pb = p.bits();
        if pb > 128 {
            let s = pb - 128;
            let q = &p >> s;
            let inexact = (&q << s) != p;
            p = q;
            if upper && inexact {
                p += 1u32;
            }
            e += s;
        }
    }
    // lg(p 2^e) lies in [bits + e - 1, bits + e)
    let pb = p.bits();
    let j = if upper {
        if p == (Integer::one() << (pb - 1)) {
            pb - 1 + e
        } else {
            pb + e
        }
    } else {
        pb - 1 + e
    };
    let denom = Integer::one() << frac_bits;
    Rational::new(Integer::from(j) + Integer::from(shift) * &denom, denom)
}

/// Order of two rationals by cross-multiplication. `Ord` on `BigRational`
/// recurses along the continued fraction and can exhaust the stack when two
/// long rationals agree on many partial quotients.
pub fn cmp_rat(a: &Rational, b: &Rational) -> Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn int_rat(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_integer(s: &str) -> Result<Integer, Error> {
    Integer::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = parse_integer(p)?;
            let q = parse_integer(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(parse_integer(s)?)),
    }
}

/// `floor(q * 2^k)` for any integer `k`.
fn floor_scaled(q: &Rational, k: i64) -> Integer {
    let (mut n, mut d) = (q.numer().clone(), q.denom().clone());
    if k >= 0 {
        n <<= k as u64;
    } else {
        d <<= (-k) as u64;
    }
    n.div_floor(&d)
}

/// A dyadic rational `mant * 2^exp`, kept normalized (odd mantissa, or zero
/// with exponent zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: Integer,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: Integer, exp: i64) -> Dyadic {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic::new(Integer::zero(), 0)
    }

    pub fn from_int(x: Integer) -> Dyadic {
        Dyadic::new(x, 0)
    }

    pub fn pow2(e: i64) -> Dyadic {
        Dyadic::new(Integer::one(), e)
    }

    pub fn mantissa(&self) -> &Integer {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        Sign::of_int(&self.mant)
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn shl(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            // odd mantissa over a power of two is already in lowest terms
            Rational::new_raw(self.mant.clone(), Integer::one() << (-self.exp) as u64)
        }
    }

    /// Largest multiple of `2^k` that is `<= self`.
    pub fn floor_at(&self, k: i64) -> Dyadic {
        if self.exp >= k {
            return self.clone();
        }
        let s = (k - self.exp) as u64;
        Dyadic::new(self.mant.div_floor(&(Integer::one() << s)), k)
    }

    /// Smallest multiple of `2^k` that is `>= self`.
    pub fn ceil_at(&self, k: i64) -> Dyadic {
        if self.exp >= k {
            return self.clone();
        }
        let s = (k - self.exp) as u64;
        Dyadic::new(self.mant.div_ceil(&(Integer::one() << s)), k)
    }

    pub fn floor_of(q: &Rational, k: i64) -> Dyadic {
        Dyadic::new(floor_scaled(q, -k), k)
    }

    pub fn ceil_of(q: &Rational, k: i64) -> Dyadic {
        let neg = -q;
        -Dyadic::floor_of(&neg, k)
    }

    /// Bits needed above the binary point, `floor(lg |x|) + 1` (zero for 0).
    pub fn magnitude_bits(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            self.mant.bits() as i64 + self.exp
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if self.exp >= 0 {
            ((&self.mant << self.exp as u64) * q.denom()).cmp(q.numer())
        } else {
            (&self.mant * q.denom()).cmp(&(q.numer() << (-self.exp) as u64))
        }
    }

    /// Exact midpoint.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        (a + b).shl(-1)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dyadic, Error> {
        let s = s.trim();
        match s.split_once("*2^") {
            Some((m, e)) => {
                let e: i64 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad dyadic exponent in {s:?}")))?;
                Ok(Dyadic::new(parse_integer(m)?, e))
            }
            None => Ok(Dyadic::from_int(parse_integer(s)?)),
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, other: &Dyadic) -> Dyadic {
        self + &(-other)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> DyadicInterval {
        assert!(lo <= hi, "inverted dyadic interval");
        DyadicInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> DyadicInterval {
        DyadicInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(x: &Integer) -> DyadicInterval {
        DyadicInterval::point(Dyadic::from_int(x.clone()))
    }

    pub fn zero() -> DyadicInterval {
        DyadicInterval::point(Dyadic::zero())
    }

    /// Tightest enclosure of `[a, b]` on the grid `2^k`.
    pub fn enclose(a: &Rational, b: &Rational, k: i64) -> DyadicInterval {
        DyadicInterval::new(Dyadic::floor_of(a, k), Dyadic::ceil_of(b, k))
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    /// Whether the width is at most `2^-l`.
    pub fn width_at_most(&self, l: i64) -> bool {
        self.width() <= Dyadic::pow2(-l)
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo.cmp_rational(q) != Ordering::Greater && self.hi.cmp_rational(q) != Ordering::Less
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != Sign::Positive && self.hi.sign() != Sign::Negative
    }

    /// Sign of every member when the interval excludes zero.
    pub fn certain_sign(&self) -> Option<Sign> {
        if self.lo.sign() == Sign::Positive {
            Some(Sign::Positive)
        } else if self.hi.sign() == Sign::Negative {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn is_subset_of(&self, other: &DyadicInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> Dyadic {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Lower bound on `|x|` over the interval (zero if it straddles).
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else if self.lo.sign() == Sign::Positive {
            self.lo.clone()
        } else {
            self.hi.abs()
        }
    }

    /// Rounds the endpoints outward onto the grid `2^k`.
    pub fn round_outward(&self, k: i64) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.floor_at(k),
            hi: self.hi.ceil_at(k),
        }
    }

    pub fn shl(&self, k: i64) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.shl(k),
            hi: self.hi.shl(k),
        }
    }

    pub fn mul_dyadic(&self, d: &Dyadic) -> DyadicInterval {
        let a = &self.lo * d;
        let b = &self.hi * d;
        if d.sign() == Sign::Negative {
            DyadicInterval { lo: b, hi: a }
        } else {
            DyadicInterval { lo: a, hi: b }
        }
    }

    pub fn mul_int(&self, k: &Integer) -> DyadicInterval {
        self.mul_dyadic(&Dyadic::from_int(k.clone()))
    }

    pub fn add_dyadic(&self, d: &Dyadic) -> DyadicInterval {
        DyadicInterval {
            lo: &self.lo + d,
            hi: &self.hi + d,
        }
    }

    /// Interval Horner evaluation of an integer polynomial (ascending
    /// coefficients), rounding every intermediate outward onto `2^k`.
    pub fn eval_int_poly(coeffs: &[Integer], x: &DyadicInterval, k: i64) -> DyadicInterval {
        let mut acc = DyadicInterval::zero();
        for c in coeffs.iter().rev() {
            acc = (&acc * x).add_dyadic(&Dyadic::from_int(c.clone()));
            acc = acc.round_outward(k);
        }
        acc
    }
}

impl Add for &DyadicInterval {
    type Output = DyadicInterval;
    fn add(self, o: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &DyadicInterval {
    type Output = DyadicInterval;
    fn sub(self, o: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Neg for &DyadicInterval {
    type Output = DyadicInterval;
    fn neg(self) -> DyadicInterval {
        DyadicInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &DyadicInterval {
    type Output = DyadicInterval;
    fn mul(self, o: &DyadicInterval) -> DyadicInterval {
        let pos = |x: &Dyadic| x.sign() != Sign::Negative;
        let neg = |x: &Dyadic| x.sign() != Sign::Positive;
        let (a, b, c, d) = (&self.lo, &self.hi, &o.lo, &o.hi);
        // Sign-case split avoids computing all four products in the common cases.
        if pos(a) && pos(c) {
            return DyadicInterval { lo: a * c, hi: b * d };
        }
        if neg(b) && neg(d) {
            return DyadicInterval { lo: b * d, hi: a * c };
        }
        if pos(a) && neg(d) {
            return DyadicInterval { lo: b * c, hi: a * d };
        }
        if neg(b) && pos(c) {
            return DyadicInterval { lo: a * d, hi: b * c };
        }
        let ps = [a * c, a * d, b * c, b * d];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        DyadicInterval { lo, hi }
    }
}

/// Dyadic enclosure of `q` of width at most `2^-l`, with endpoints on the
/// grid `2^-(l+1)`.
pub fn dyadic_approx(q: &Rational, l: u32) -> DyadicInterval {
    let k = -(l as i64) - 1;
    DyadicInterval::enclose(q, q, k)
}
