//! Integer-polynomial specifics: content, gcd, square-free machinery,
//! classical Sturm sequences and sign-preserving reduction.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{modp, prem, IntPoly};
use crate::arith::{Integer, Rational, Sign};

impl IntPoly {
    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> Integer {
        let mut g = Integer::zero();
        for c in self.coeffs() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    /// Divides by the positive content, keeping the sign pattern.
    pub fn positive_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        self.div_exact_scalar(&self.content())
    }

    pub fn eval_rational(&self, q: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs().iter().rev() {
            acc = acc * q + Rational::from_integer(c.clone());
        }
        acc
    }

    /// `d^deg * f(p/d)` for `d > 0`; same sign as `f(p/d)`.
    pub fn eval_homogeneous(&self, p: &Integer, d: &Integer) -> Integer {
        let mut acc = Integer::zero();
        let mut dpow = Integer::one();
        for c in self.coeffs().iter().rev() {
            acc = acc * p + c * &dpow;
            dpow *= d;
        }
        acc
    }

    pub fn sign_at_rational(&self, q: &Rational) -> Sign {
        Sign::of_int(&self.eval_homogeneous(q.numer(), q.denom()))
    }

    pub fn sign_at_int(&self, x: &Integer) -> Sign {
        Sign::of_int(&self.eval(x))
    }

    /// Sign of `f(x)` as `x -> +inf` (`positive`) or `-inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> Sign {
        let s = Sign::of_int(&self.lc());
        if !positive && self.deg() % 2 == 1 {
            s.flip()
        } else {
            s
        }
    }

    /// `f(x + 1)`.
    pub fn taylor_shift_one(&self) -> IntPoly {
        let mut c = self.coeffs().to_vec();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        IntPoly::new(c)
    }

    /// `2^(k*deg) * f(x / 2^k)`, for `k >= 0`.
    pub fn scale_down_pow2(&self, k: u64) -> IntPoly {
        let n = self.deg() as u64;
        IntPoly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c << ((n - i as u64) * k) as usize)
                .collect(),
        )
    }

    /// `f(c * x)` for an integer `c`.
    pub fn scale_var(&self, c: &Integer) -> IntPoly {
        let mut pow = Integer::one();
        let mut out = Vec::with_capacity(self.coeffs().len());
        for a in self.coeffs() {
            out.push(a * &pow);
            pow *= c;
        }
        IntPoly::new(out)
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn is_square_free(&self) -> bool {
        if self.deg() <= 1 {
            return true;
        }
        let d = self.derivative();
        modp::coprime_certificate(self, &d) || gcd(self, &d).deg() == 0
    }
}

/// `|lc(b)|^(deg a - deg b + 1) * a mod b`; a positive multiple of the true remainder.
pub fn rem_positive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() || a.deg() < b.deg() {
        return a.clone();
    }
    let r = prem(a, b);
    let e = a.deg() - b.deg() + 1;
    if b.lc().is_negative() && e % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Reduces every polynomial modulo `a`: the exact remainders over `Q`, all
/// multiplied by their common positive denominator, so values at any root of
/// `a` keep their signs and ratios.
pub fn reduce_mod(list: &[IntPoly], a: &IntPoly) -> Vec<IntPoly> {
    let m = a.deg();
    let excess = |p: &IntPoly| if p.is_zero() || p.deg() < m { 0 } else { p.deg() - m + 1 };
    let big_e = list.iter().map(excess).max().unwrap_or(0);
    let la = a.lc().abs();
    let reduced: Vec<IntPoly> = list
        .iter()
        .map(|p| {
            let r = rem_positive(p, a);
            let extra = big_e - excess(p);
            if extra > 0 {
                r.scale_int(&num_traits::pow(la.clone(), extra))
            } else {
                r
            }
        })
        .collect();
    // Exact remainders over Q cleared by their common denominator.
    let g = reduced
        .iter()
        .fold(Integer::zero(), |g, p| g.gcd(&p.content()))
        .gcd(&num_traits::pow(la, big_e));
    if g.is_zero() || g.is_one() {
        return reduced;
    }
    reduced.iter().map(|p| p.div_exact_scalar(&g)).collect()
}

/// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
pub fn gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    if f.is_zero() {
        return g.primitive_part();
    }
    if g.is_zero() {
        return f.primitive_part();
    }
    if f.deg() == 0 || g.deg() == 0 || modp::coprime_certificate(f, g) {
        return IntPoly::one();
    }
    let (mut a, mut b) = (f.primitive_part(), g.primitive_part());
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = prem(&a, &b);
        a = b;
        b = r.primitive_part();
    }
    a.primitive_part()
}

/// `f / gcd(f, f')`, primitive with positive leading coefficient.
pub fn square_free_part(f: &IntPoly) -> IntPoly {
    assert!(!f.is_zero(), "square-free part of the zero polynomial");
    let p = f.primitive_part();
    if p.deg() <= 1 {
        return p;
    }
    let d = p.derivative();
    if modp::coprime_certificate(&p, &d) {
        return p;
    }
    let g = gcd(&p, &d);
    p.div_exact(&g).primitive_part()
}

/// `f = content * prod factor^mult`.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareFreeFactorization {
    pub content: Integer,
    /// Pairwise coprime, square-free, primitive factors with positive leading
    /// coefficient, in strictly increasing multiplicity.
    pub factors: Vec<(IntPoly, usize)>,
}

impl SquareFreeFactorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, k) in &self.factors {
            for _ in 0..*k {
                acc = &acc * f;
            }
        }
        acc
    }
}

/// Yun's square-free factorization.
pub fn yun_squarefree_factorization(f: &IntPoly) -> SquareFreeFactorization {
    assert!(!f.is_zero(), "square-free factorization of the zero polynomial");
    let p = f.primitive_part();
    let content = f.lc() / p.lc();
    if p.deg() == 0 {
        return SquareFreeFactorization { content, factors: Vec::new() };
    }
    let dp = p.derivative();
    if modp::coprime_certificate(&p, &dp) {
        return SquareFreeFactorization { content, factors: vec![(p, 1)] };
    }
    let a0 = gcd(&p, &dp);
    let mut b = p.div_exact(&a0);
    let mut d = &dp.div_exact(&a0) - &b.derivative();
    let mut factors = Vec::new();
    let mut i = 1;
    while b.deg() > 0 {
        let a = gcd(&b, &d);
        let nb = b.div_exact(&a);
        let c = if d.is_zero() { d.clone() } else { d.div_exact(&a) };
        d = &c - &nb.derivative();
        if a.deg() > 0 {
            factors.push((a.primitive_part(), i));
        }
        b = nb;
        i += 1;
    }
    SquareFreeFactorization { content, factors }
}

/// Classical Sturm sequence `f, g, -rem, ...` with contents removed; the
/// remainders are positive multiples of the Euclidean ones.
pub fn sturm_sequence(f: &IntPoly, g: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![f.clone()];
    if g.is_zero() {
        return seq;
    }
    seq.push(g.clone());
    loop {
        let n = seq.len();
        if seq[n - 1].deg() == 0 {
            break;
        }
        let r = rem_positive(&seq[n - 2], &seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-r.positive_primitive());
    }
    seq
}

/// Sign variations of a sign list, zeros skipped.
pub fn sign_variations(signs: impl IntoIterator<Item = Sign>) -> usize {
    let mut last = Sign::Zero;
    let mut v = 0;
    for s in signs {
        if s == Sign::Zero {
            continue;
        }
        if last != Sign::Zero && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Sign variations of a Sturm sequence at a rational point.
pub fn sturm_variations(seq: &[IntPoly], q: &Rational) -> usize {
    sign_variations(seq.iter().map(|p| p.sign_at_rational(q)))
}
