//! Real algebraic numbers `alpha = (A, I)`: a square-free integer polynomial
//! and an interval holding exactly one of its real roots.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};

use crate::arith::{cmp_rat, fmt_rational, DyadicInterval, Integer, Rational, Sign};
use crate::error::{Error, Result};
use crate::introot::{refine, RootInterval, RootKind};
use crate::poly::{gcd, modp, rem_positive, square_free_part, sturm_sequence, sturm_variations, IntPoly};

/// Interval-evaluation precisions tried by [`RealAlgebraic::sign_at`] before
/// the exact Sturm–Tarski query, unless `g` is certified coprime to `A`.
const FAST_PATH_BITS: [u32; 4] = [32, 64, 128, 256];

pub struct RealAlgebraic {
    a: IntPoly,
    interval: (Rational, Rational),
    /// Best isolating interval so far; only ever shrinks.
    cache: Mutex<RootInterval>,
}

impl Clone for RealAlgebraic {
    fn clone(&self) -> Self {
        RealAlgebraic {
            a: self.a.clone(),
            interval: self.interval.clone(),
            cache: Mutex::new(self.enclosure()),
        }
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RealAlgebraic({}, [{}, {}])",
            self.a,
            fmt_rational(&self.interval.0),
            fmt_rational(&self.interval.1)
        )
    }
}

/// Number of roots of square-free `f` in the closed interval `[lo, hi]`.
fn count_closed(f: &IntPoly, lo: &Rational, hi: &Rational) -> usize {
    if lo == hi {
        return usize::from(f.sign_at_rational(lo) == Sign::Zero);
    }
    let seq = sturm_sequence(f, &f.derivative());
    let at_lo = usize::from(f.sign_at_rational(lo) == Sign::Zero);
    sturm_variations(&seq, lo) - sturm_variations(&seq, hi) + at_lo
}

/// Validates `(A, [lo, hi])`. A non-square-free `A` is replaced by its
/// square-free part.
pub fn make_algebraic(a: &IntPoly, lo: &Rational, hi: &Rational) -> Result<RealAlgebraic> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo > hi {
        return Err(Error::InvalidParams("interval endpoints out of order".into()));
    }
    if a.deg() == 0 {
        return Err(Error::NotIsolating { roots: 0 });
    }
    let a = if a.is_square_free() { a.clone() } else { square_free_part(a) };
    let roots = count_closed(&a, lo, hi);
    if roots != 1 {
        return Err(Error::NotIsolating { roots });
    }
    let cache = if a.sign_at_rational(lo) == Sign::Zero {
        RootInterval::exact(lo.clone(), 1)
    } else if a.sign_at_rational(hi) == Sign::Zero {
        RootInterval::exact(hi.clone(), 1)
    } else {
        RootInterval::open(lo.clone(), hi.clone(), 1)
    };
    Ok(RealAlgebraic { a, interval: (lo.clone(), hi.clone()), cache: Mutex::new(cache) })
}

impl RealAlgebraic {
    /// `alpha = q` with defining polynomial `den * x - num`.
    pub fn from_rational(q: &Rational) -> RealAlgebraic {
        let a = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        RealAlgebraic {
            a,
            interval: (q.clone(), q.clone()),
            cache: Mutex::new(RootInterval::exact(q.clone(), 1)),
        }
    }

    /// The (square-free) defining polynomial.
    pub fn poly(&self) -> &IntPoly {
        &self.a
    }

    pub fn degree(&self) -> usize {
        self.a.deg()
    }

    /// The validated input interval.
    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.interval.0, &self.interval.1)
    }

    /// Current best isolating interval.
    pub fn enclosure(&self) -> RootInterval {
        self.cache.lock().expect("cache lock").clone()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.enclosure().kind {
            RootKind::Exact(q) => Some(q),
            RootKind::Open { .. } => None,
        }
    }

    /// Refines the cached interval to width at most `2^-l` and returns it.
    pub fn refine_to(&self, l: u32) -> RootInterval {
        let mut c = self.cache.lock().expect("cache lock");
        if c.width() > Rational::new(Integer::one(), Integer::one() << l as usize) {
            *c = refine(&self.a, &c, l);
        }
        c.clone()
    }

    /// Dyadic interval containing `alpha` of width at most `2^-l`.
    pub fn approximate(&self, l: u32) -> DyadicInterval {
        let r = self.refine_to(l + 1);
        let k = -(l as i64) - 2;
        DyadicInterval::enclose(r.lo(), r.hi(), k)
    }

    /// Exact sign of `g(alpha)`.
    pub fn sign_at(&self, g: &IntPoly) -> Sign {
        if g.is_zero() {
            return Sign::Zero;
        }
        if g.deg() == 0 {
            return Sign::of_int(&g.lc());
        }
        if let Some(q) = self.as_rational() {
            return g.sign_at_rational(&q);
        }
        let coprime = modp::coprime_certificate(&self.a, g);
        let mut bits = FAST_PATH_BITS[0];
        loop {
            if let Some(s) = self.sign_by_intervals(g, bits) {
                return s;
            }
            if let Some(q) = self.as_rational() {
                return g.sign_at_rational(&q);
            }
            if !coprime && bits >= *FAST_PATH_BITS.last().unwrap() {
                return self.sign_by_sturm(g);
            }
            bits *= 2;
        }
    }

    /// Interval Horner evaluation of `g` over an enclosure of width `2^-bits`.
    fn sign_by_intervals(&self, g: &IntPoly, bits: u32) -> Option<Sign> {
        let x = self.approximate(bits);
        let k = -(bits as i64) - x.mag().magnitude_bits().max(0) * g.deg() as i64 - 8;
        DyadicInterval::eval_int_poly(g.coeffs(), &x, k).certain_sign()
    }

    /// Tarski query: sign variations of the Sturm sequence of `(A, A' g mod A)`
    /// across an isolating interval equal `sign g(alpha)`.
    fn sign_by_sturm(&self, g: &IntPoly) -> Sign {
        let h = rem_positive(&(&self.a.derivative() * g), &self.a);
        if h.is_zero() {
            return Sign::Zero;
        }
        let enc = self.enclosure();
        let seq = sturm_sequence(&self.a, &h);
        let v = sturm_variations(&seq, enc.lo()) as i64 - sturm_variations(&seq, enc.hi()) as i64;
        match v {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => unreachable!("isolating interval holds one root"),
        }
    }

    /// Exact order of two algebraic numbers.
    pub fn compare(&self, other: &RealAlgebraic) -> Ordering {
        if let (Some(p), Some(q)) = (self.as_rational(), other.as_rational()) {
            return p.cmp(&q);
        }
        if self.equals(other) {
            return Ordering::Equal;
        }
        let mut l = 8;
        loop {
            let (a, b) = (self.refine_to(l), other.refine_to(l));
            if cmp_rat(a.hi(), b.lo()) == Ordering::Less {
                return Ordering::Less;
            }
            if cmp_rat(b.hi(), a.lo()) == Ordering::Less {
                return Ordering::Greater;
            }
            l *= 2;
        }
    }

    fn equals(&self, other: &RealAlgebraic) -> bool {
        let (a, b) = (self.enclosure(), other.enclosure());
        let lo = if cmp_rat(a.lo(), b.lo()) == Ordering::Less { b.lo() } else { a.lo() }.clone();
        let hi = if cmp_rat(a.hi(), b.hi()) == Ordering::Less { a.hi() } else { b.hi() }.clone();
        if cmp_rat(&lo, &hi) == Ordering::Greater {
            return false;
        }
        let g = gcd(&self.a, &other.a);
        g.deg() >= 1 && count_closed(&g, &lo, &hi) >= 1
    }

    /// Sign of `alpha - q`.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self.sign_at(&IntPoly::new(vec![-q.numer().clone(), q.denom().clone()])) {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    /// An upper bound `2^k >= |alpha|`, `k >= 0`.
    pub fn magnitude_log2(&self) -> i64 {
        let e = self.enclosure();
        let m = e.lo().abs().max(e.hi().abs());
        let c = m.ceil().to_integer();
        if c.is_zero() {
            0
        } else {
            crate::arith::lg_ceil(&c) as i64
        }
    }
}
