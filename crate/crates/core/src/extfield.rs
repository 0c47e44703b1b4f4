//! Polynomials `B_alpha = sum b_i(alpha) y^i` with coefficients in `Z[alpha]`,
//! stored as `B(x, y)` with every `b_i` reduced below `deg A`.

use serde::Serialize;

use crate::algebraic::RealAlgebraic;
use crate::arith::{bitsize, lg_ceil_u64, DyadicInterval, Rational, Sign};
use crate::error::{Error, Result};
use crate::introot::root_bound_log2;
use crate::poly::{reduce_mod, signed_remainder_seq, subst_y, BiPoly, IntPoly, SignedRemainderSeq};

#[derive(Clone, Debug)]
pub struct AlgPoly {
    alpha: RealAlgebraic,
    b: BiPoly,
}

/// Answer of [`AlgPoly::is_square_free`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareFree {
    Yes,
    No,
    /// Reserved for a decision that needs `A` irreducible; the resultant test
    /// used here never produces it.
    RequiresIrreducible,
}

/// Reduces every coefficient modulo `A` with one common positive factor.
pub fn reduce_mod_a(raw: &[IntPoly], a: &IntPoly) -> Vec<IntPoly> {
    reduce_mod(raw, a)
}

impl AlgPoly {
    /// Builds `B_alpha` from raw coefficients (any `x`-degree).
    pub fn new(alpha: RealAlgebraic, raw: &BiPoly) -> Result<AlgPoly> {
        if raw.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let reduced = BiPoly::new(reduce_mod_a(raw.coeffs(), alpha.poly()));
        if reduced.deg() != raw.deg() || alpha.sign_at(&reduced.lc()) == Sign::Zero {
            return Err(Error::LeadingCoefficientVanishes);
        }
        Ok(AlgPoly { alpha, b: reduced })
    }

    pub fn alpha(&self) -> &RealAlgebraic {
        &self.alpha
    }

    /// `B(x, y)`.
    pub fn bipoly(&self) -> &BiPoly {
        &self.b
    }

    pub fn coeff(&self, i: usize) -> IntPoly {
        self.b.coeff(i)
    }

    /// `n = deg_y B`.
    pub fn degree(&self) -> usize {
        self.b.deg()
    }

    /// Degree of `A`.
    pub fn m(&self) -> usize {
        self.alpha.degree()
    }

    /// Largest coefficient bitsize of `B`, sign bit included.
    pub fn sigma(&self) -> u64 {
        self.b
            .coeffs()
            .iter()
            .flat_map(|c| c.coeffs().iter())
            .map(|c| bitsize(c, true))
            .max()
            .unwrap_or(1)
    }

    /// Largest `x`-degree among the coefficients.
    pub fn eta(&self) -> usize {
        crate::poly::deg_x(&self.b)
    }

    /// Sturm–Habicht sequence of `(B, dB/dy)` with respect to `y`.
    pub fn sturm_habicht(&self) -> SignedRemainderSeq {
        signed_remainder_seq(&self.b, &self.b.derivative())
    }

    /// Whether `gcd(B_alpha, B_alpha')` is constant, decided exactly: the last
    /// subresultant is `res_y(B, dB/dy)`, which specializes correctly because
    /// `b_n(alpha) != 0`, and vanishes at `alpha` iff `B_alpha` has a repeated root.
    pub fn is_square_free(&self) -> SquareFree {
        self.is_square_free_with(&self.sturm_habicht())
    }

    pub fn is_square_free_with(&self, seq: &SignedRemainderSeq) -> SquareFree {
        if self.degree() <= 1 {
            return SquareFree::Yes;
        }
        let i = seq.len() - 1;
        if seq.index[i] != 0 {
            return SquareFree::No;
        }
        match self.alpha.sign_at(&seq.elements[i].coeff(0)) {
            Sign::Zero => SquareFree::No,
            _ => SquareFree::Yes,
        }
    }

    /// Sign of `B_alpha(q)`.
    pub fn endpoint_sign(&self, q: &Rational) -> Sign {
        self.alpha.sign_at(&subst_y(&self.b, q))
    }

    /// Sign of `B_alpha(y)` as `y -> +inf` or `-inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> Sign {
        let s = self.alpha.sign_at(&self.b.lc());
        if !positive && self.degree() % 2 == 1 {
            s.flip()
        } else {
            s
        }
    }

    /// Dyadic enclosure of `b_i(alpha)` of width at most `2^-l`.
    pub fn coeff_enclosure(&self, i: usize, l: u32) -> DyadicInterval {
        let bi = self.coeff(i);
        if bi.deg() == 0 {
            return DyadicInterval::from_int(&bi.coeff(0));
        }
        let m = self.m() as u64;
        let mag = root_bound_log2(self.alpha.poly());
        let mut extra = self.sigma() + 2 * lg_ceil_u64(m.max(2)) + (m - 1) * (mag + 1) + 2;
        loop {
            let x = self.alpha.approximate(l + extra as u32);
            let k = -(l as i64) - 2;
            let v = DyadicInterval::eval_int_poly(bi.coeffs(), &x, k - extra as i64);
            let v = v.round_outward(k);
            if v.width_at_most(l as i64) {
                return v;
            }
            extra *= 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::make_algebraic;
    use crate::arith::rat;
    use crate::poly::bipoly_from_rows;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn alpha(a: &[i64], lo: i64, hi: i64) -> RealAlgebraic {
        make_algebraic(&p(a), &rat(lo, 1), &rat(hi, 1)).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_a(&[p(&[0, 0, 1])], &p(&[-2, 0, 1])), vec![p(&[2])]);
        assert_eq!(reduce_mod_a(&[p(&[0, 0, 0, 1])], &p(&[-3, 0, 1])), vec![p(&[0, 3])]);
        assert_eq!(reduce_mod_a(&[p(&[0, 1, 0, 0, 1])], &p(&[-1, -1, 1])), vec![p(&[2, 4])]);
    }

    #[test]
    fn leading_coefficient_checks() {
        let a = alpha(&[-2, 0, 1], 1, 2);
        // (x^2 - 2) y + 1: leading coefficient vanishes at sqrt 2.
        let b = bipoly_from_rows(&[&[1], &[-2, 0, 1]]);
        assert_eq!(AlgPoly::new(a.clone(), &b).unwrap_err(), Error::LeadingCoefficientVanishes);
        let b = bipoly_from_rows(&[&[1], &[1, 0, 0, 1]]);
        let ap = AlgPoly::new(a, &b).unwrap();
        assert_eq!(ap.coeff(1), p(&[1, 2]));
    }

    #[test]
    fn square_freeness() {
        let s2 = alpha(&[-2, 0, 1], 1, 2);
        let b = bipoly_from_rows(&[&[0, -1], &[], &[1]]);
        assert_eq!(AlgPoly::new(s2.clone(), &b).unwrap().is_square_free(), SquareFree::Yes);
        // (y - alpha)^2 = y^2 - 2 alpha y + alpha^2
        let b = bipoly_from_rows(&[&[0, 0, 1], &[0, -2], &[1]]);
        assert_eq!(AlgPoly::new(s2, &b).unwrap().is_square_free(), SquareFree::No);
        let s3 = alpha(&[-3, 0, 1], 1, 2);
        let b = bipoly_from_rows(&[&[0, 0, -1], &[], &[], &[], &[1]]);
        assert_eq!(AlgPoly::new(s3, &b).unwrap().is_square_free(), SquareFree::Yes);
        // Repeated root only at the conjugate: (y - x)^2 with A reducible.
        let r = make_algebraic(&p(&[2, -3, 1]), &rat(0, 1), &rat(3, 2)).unwrap();
        let b = bipoly_from_rows(&[&[0, 0, 1], &[0, -2], &[1]]);
        assert_eq!(AlgPoly::new(r, &b).unwrap().is_square_free(), SquareFree::No);
    }

    #[test]
    fn endpoint_signs() {
        let s3 = alpha(&[-3, 0, 1], 1, 2);
        let b = AlgPoly::new(s3, &bipoly_from_rows(&[&[0, 0, -1], &[], &[], &[], &[1]])).unwrap();
        assert_eq!(b.endpoint_sign(&rat(0, 1)), Sign::Negative);
        assert_eq!(b.endpoint_sign(&rat(2, 1)), Sign::Positive);
        let s2 = alpha(&[-2, 0, 1], 1, 2);
        let b = AlgPoly::new(s2, &bipoly_from_rows(&[&[0, -1], &[1]])).unwrap();
        assert_eq!(b.endpoint_sign(&rat(1, 1)), Sign::Negative);
        assert_eq!(b.endpoint_sign(&rat(3, 2)), Sign::Positive);
    }

    #[test]
    fn enclosures() {
        let s2 = alpha(&[-2, 0, 1], 1, 2);
        let b = AlgPoly::new(s2.clone(), &bipoly_from_rows(&[&[0, -1], &[], &[1]])).unwrap();
        let e = b.coeff_enclosure(0, 8);
        assert!(e.width_at_most(8));
        assert!(e.contains_rational(&rat(-141421356, 100000000)));
        assert_eq!(b.coeff_enclosure(2, 8), DyadicInterval::from_int(&1.into()));
        let b = AlgPoly::new(s2, &bipoly_from_rows(&[&[3], &[1, 1]])).unwrap();
        let e = b.coeff_enclosure(1, 10);
        assert!(e.width_at_most(10));
        assert!(e.contains_rational(&rat(241421356, 100000000)));
        let finer = b.coeff_enclosure(1, 11);
        assert!(finer.is_subset_of(&e.round_outward(-12)) || finer.is_subset_of(&e));
    }
}
