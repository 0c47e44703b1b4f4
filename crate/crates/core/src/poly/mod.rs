//! Dense exact polynomials.
//!
//! [`Poly<R>`] is generic over a small [`Ring`] trait so that the same
//! pseudo-remainder, resultant and subresultant code runs over `Z`, `Q` and
//! `Z[x]`. Coefficients are stored in ascending degree order and trailing
//! zeros are always stripped, so the zero polynomial is the empty vector.

mod biv;
mod int;
pub mod modp;
mod subres;
#[cfg(test)]
mod seq_tests;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{Integer, Rational};

pub use biv::{bipoly_from_rows, deg_x, subst_y, transpose};
pub use int::{
    gcd, reduce_mod, rem_positive, sign_variations, square_free_part, sturm_sequence,
    sturm_variations, yun_squarefree_factorization, SquareFreeFactorization,
};
pub use subres::{
    eval_seq_at_rational, fix_sturm_signs, prem, prem_coeff, resultant, resultant_bivariate,
    signed_remainder_seq, subresultant_chain, ChainEntry, EvalPoint, SignedRemainderSeq,
};

/// The operations the generic polynomial code needs from its coefficients.
///
/// `r_div_exact` is only ever called when the division is known to be exact
/// (content removal, subresultant normalizations); it panics otherwise.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_add(&self, o: &Self) -> Self;
    fn r_sub(&self, o: &Self) -> Self;
    fn r_mul(&self, o: &Self) -> Self;
    fn r_neg(&self) -> Self;
    fn r_scale(&self, k: &Integer) -> Self;
    fn r_div_exact(&self, o: &Self) -> Self;

    fn r_pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::r_one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.r_mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.r_mul(&base);
            }
        }
        acc
    }
}

impl Ring for Integer {
    fn r_zero() -> Self {
        Integer::zero()
    }
    fn r_one() -> Self {
        Integer::one()
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_scale(&self, k: &Integer) -> Self {
        self * k
    }
    fn r_div_exact(&self, o: &Self) -> Self {
        let (q, r) = num_integer::Integer::div_rem(self, o);
        assert!(r.is_zero(), "inexact integer division");
        q
    }
}

impl Ring for Rational {
    fn r_zero() -> Self {
        Rational::zero()
    }
    fn r_one() -> Self {
        Rational::one()
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_scale(&self, k: &Integer) -> Self {
        self * Rational::from_integer(k.clone())
    }
    fn r_div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

/// Dense univariate polynomial, `c[i]` is the coefficient of degree `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    c: Vec<R>,
}

/// Polynomial with integer coefficients.
pub type IntPoly = Poly<Integer>;
/// Polynomial with rational coefficients.
pub type RatPoly = Poly<Rational>;
/// `Z[x][y]`: a polynomial in `y` whose coefficients are `IntPoly`s in `x`.
pub type BiPoly = Poly<IntPoly>;

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.r_is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(R::r_one())
    }

    pub fn constant(r: R) -> Self {
        Poly::new(vec![r])
    }

    /// `r * X^k`
    pub fn monomial(r: R, k: usize) -> Self {
        let mut c = vec![R::r_zero(); k];
        c.push(r);
        Poly::new(c)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Poly::monomial(R::r_one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree of a nonzero polynomial; zero for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::r_zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::r_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn scale(&self, r: &R) -> Self {
        if r.r_is_zero() {
            return Poly::zero();
        }
        Poly::new(self.c.iter().map(|x| x.r_mul(r)).collect())
    }

    pub fn scale_int(&self, k: &Integer) -> Self {
        Poly::new(self.c.iter().map(|x| x.r_scale(k)).collect())
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![R::r_zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x.r_scale(&Integer::from(i)))
                .collect(),
        )
    }

    /// Divides every coefficient exactly by `r`.
    pub fn div_exact_scalar(&self, r: &R) -> Self {
        Poly::new(self.c.iter().map(|x| x.r_div_exact(r)).collect())
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::r_zero();
        for c in self.c.iter().rev() {
            acc = acc.r_mul(x).r_add(c);
        }
        acc
    }

    /// Coefficients reversed: `X^deg * p(1/X)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Poly::new(c)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect())
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Poly::zero();
        }
        let dd = d.deg();
        if self.deg() < dd {
            panic!("inexact polynomial division");
        }
        let dlc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![R::r_zero(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.r_is_zero() {
                continue;
            }
            let t = top.r_div_exact(&dlc);
            for (j, dc) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].r_sub(&t.r_mul(dc));
            }
            q[k] = t;
        }
        assert!(r.iter().all(|x| x.r_is_zero()), "inexact polynomial division");
        Poly::new(q)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn r_zero() -> Self {
        Poly::zero()
    }
    fn r_one() -> Self {
        Poly::one()
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_neg(&self) -> Self {
        -self
    }
    fn r_scale(&self, k: &Integer) -> Self {
        self.scale_int(k)
    }
    fn r_div_exact(&self, o: &Self) -> Self {
        if o.is_constant() {
            self.div_exact_scalar(&o.lc())
        } else {
            self.div_exact(o)
        }
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => a.r_add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => a.r_sub(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.r_neg(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![R::r_zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.r_is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].r_add(&a.r_mul(b));
            }
        }
        Poly::new(c)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            c: self.c.iter().map(|x| x.r_neg()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl IntPoly {
    pub fn from_i64s(c: &[i64]) -> IntPoly {
        Poly::new(c.iter().map(|&x| Integer::from(x)).collect())
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> Integer {
        self.c
            .iter()
            .map(num_traits::Signed::abs)
            .max()
            .unwrap_or_else(Integer::zero)
    }

    /// Maximum coefficient bitsize.
    pub fn bitsize(&self, with_sign: bool) -> u64 {
        self.c
            .iter()
            .map(|x| crate::arith::bitsize(x, with_sign))
            .max()
            .unwrap_or(1)
    }

    pub fn to_rat(&self) -> RatPoly {
        self.map(|x| Rational::from_integer(x.clone()))
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Integer::zero();
            let a = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl RatPoly {
    /// Clears denominators: returns the positive rational content and the
    /// primitive integer polynomial with `self = content * prim`.
    pub fn to_primitive_int(&self) -> (Rational, IntPoly) {
        if self.is_zero() {
            return (Rational::zero(), IntPoly::zero());
        }
        let den = self
            .c
            .iter()
            .fold(Integer::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
        let ints = IntPoly::new(
            self.c
                .iter()
                .map(|q| q.numer() * (&den / q.denom()))
                .collect(),
        );
        let cont = ints.content();
        let prim = ints.div_exact_scalar(&cont);
        (Rational::new(cont, den), prim)
    }
}

mod serde_impls {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{BiPoly, IntPoly};
    use crate::arith::parse_integer;

    impl Serialize for IntPoly {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(self.c.iter().map(|x| x.to_string()))
        }
    }

    impl<'de> Deserialize<'de> for IntPoly {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            let c = v
                .iter()
                .map(|s| parse_integer(s).map_err(D::Error::custom))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(IntPoly::new(c))
        }
    }

    impl Serialize for BiPoly {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(self.c.iter())
        }
    }

    impl<'de> Deserialize<'de> for BiPoly {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            Ok(BiPoly::new(Vec::<IntPoly>::deserialize(d)?))
        }
    }
}
