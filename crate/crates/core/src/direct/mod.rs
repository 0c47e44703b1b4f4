//! Solvers working directly in `Q(alpha)[y]`: Sturm sequences evaluated
//! through sign determination at `alpha`, and Descartes bisection on
//! interval approximations of the coefficients.

mod bitstream;
mod sturm;

pub use bitstream::{bitstream_isolate, variation_verdict, Verdict};
pub use sturm::{sturm_isolate, SturmCounter};

use num_traits::{One, Zero};

use crate::arith::{lg_ceil, Dyadic, Integer, Rational};
use crate::error::Result;
use crate::extfield::AlgPoly;
use crate::poly::{BiPoly, IntPoly};

/// Smallest `k >= 0` with every real root of `B_alpha` strictly inside
/// `(-2^k, 2^k)`, from certified enclosures: `|xi| < 1 + max |b_i| / |b_n|`.
pub fn root_bound_log2(b: &AlgPoly) -> u64 {
    let n = b.degree();
    let mut l = 16;
    let lead = loop {
        let e = b.coeff_enclosure(n, l);
        if !e.contains_zero() {
            break e.mig();
        }
        l *= 2;
    };
    let mut top = Dyadic::zero();
    for i in 0..n {
        let m = b.coeff_enclosure(i, 8).mag();
        if m > top {
            top = m;
        }
    }
    let bound = Rational::one() + top.to_rational() / lead.to_rational();
    lg_ceil(&bound.ceil().to_integer())
}

/// `B(x, -y)`.
pub fn reflect(b: &AlgPoly) -> Result<AlgPoly> {
    let coeffs: Vec<IntPoly> = b
        .bipoly()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    AlgPoly::new(b.alpha().clone(), &BiPoly::new(coeffs))
}

/// Divides `B_alpha` by `y - p/q` for a known root `p/q`, up to the positive
/// factor `q^(n-1)`. The remainder vanishes at `alpha` and is dropped.
pub fn deflate(b: &AlgPoly, r: &Rational) -> Result<AlgPoly> {
    let n = b.degree();
    let (p, q) = (r.numer().clone(), r.denom().clone());
    // f_{i-1} = q^(n-i) b_i + p f_i, then the quotient is sum f_i q^i y^i.
    let mut f = vec![IntPoly::zero(); n];
    f[n - 1] = b.coeff(n);
    let mut qp = Integer::one();
    for i in (1..n).rev() {
        qp *= &q;
        f[i - 1] = &b.coeff(i).scale_int(&qp) + &f[i].scale_int(&p);
    }
    let mut qi = Integer::one();
    for c in f.iter_mut() {
        *c = c.scale_int(&qi);
        qi *= &q;
    }
    let g = f
        .iter()
        .flat_map(|c| c.coeffs().iter())
        .fold(Integer::zero(), |g, c| num_integer::Integer::gcd(&g, c));
    if !g.is_zero() && !g.is_one() {
        for c in f.iter_mut() {
            *c = c.div_exact_scalar(&g);
        }
    }
    AlgPoly::new(b.alpha().clone(), &BiPoly::new(f))
}
