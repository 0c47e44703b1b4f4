//! Helpers for `Z[x][y]`.

use num_traits::{One, Zero};

use super::{BiPoly, IntPoly, Poly};
use crate::arith::{Integer, Rational};

/// Builds `B` from rows of `x`-coefficients; row `i` is `b_i(x)`.
pub fn bipoly_from_rows(rows: &[&[i64]]) -> BiPoly {
    Poly::new(rows.iter().map(|r| IntPoly::from_i64s(r)).collect())
}

/// Largest `x`-degree among the coefficients.
pub fn deg_x(b: &BiPoly) -> usize {
    b.coeffs().iter().map(|c| c.deg()).max().unwrap_or(0)
}

/// Swaps the roles of `x` and `y`.
pub fn transpose(b: &BiPoly) -> BiPoly {
    if b.is_zero() {
        return BiPoly::zero();
    }
    let dx = deg_x(b);
    let mut rows = vec![vec![Integer::zero(); b.deg() + 1]; dx + 1];
    for (i, bi) in b.coeffs().iter().enumerate() {
        for (j, c) in bi.coeffs().iter().enumerate() {
            rows[j][i] = c.clone();
        }
    }
    Poly::new(rows.into_iter().map(IntPoly::new).collect())
}

/// `d^n * B(x, p/d)` with `q = p/d`, `d > 0`, `n = deg_y B`.
pub fn subst_y(b: &BiPoly, q: &Rational) -> IntPoly {
    let (p, d) = (q.numer(), q.denom());
    let mut acc = IntPoly::zero();
    let mut dpow = Integer::one();
    for bi in b.coeffs().iter().rev() {
        // acc = acc * p + b_i * d^(n - i)
        acc = &acc.scale_int(p) + &bi.scale_int(&dpow);
        dpow *= d;
    }
    acc
}
