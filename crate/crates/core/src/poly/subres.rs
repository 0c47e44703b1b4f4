//! Pseudo-remainders, resultants and subresultant sequences.

use super::{biv, BiPoly, IntPoly, Poly, Ring};
use crate::arith::Rational;

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
///
/// When `deg a < deg b` the result is `a` itself.
pub fn prem<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
    assert!(!b.is_zero(), "pseudo-division by zero");
    if a.is_zero() || a.deg() < b.deg() {
        return a.clone();
    }
    let db = b.deg();
    let l = b.lc();
    let bc = b.coeffs();
    let mut r: Vec<R> = a.coeffs().to_vec();
    let mut e = a.deg() - db + 1;
    for top in (db..=a.deg()).rev() {
        let t = r[top].clone();
        r.truncate(top);
        e -= 1;
        for x in r.iter_mut() {
            *x = x.r_mul(&l);
        }
        if !t.r_is_zero() {
            let k = top - db;
            for (j, bj) in bc.iter().enumerate().take(db) {
                r[k + j] = r[k + j].r_sub(&t.r_mul(bj));
            }
        }
    }
    let r = Poly::new(r);
    if e > 0 {
        r.scale(&l.r_pow(e))
    } else {
        r
    }
}

/// Resultant by the subresultant PRS; equals the Sylvester determinant.
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> R {
    if a.is_zero() || b.is_zero() {
        return R::r_zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            negate = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let apply = |x: R, negate: bool| if negate { x.r_neg() } else { x };
    if b.deg() == 0 {
        return apply(b.lc().r_pow(a.deg()), negate);
    }
    let mut g = R::r_one();
    let mut h = R::r_one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        if r.is_zero() {
            return R::r_zero();
        }
        a = b;
        b = r.div_exact_scalar(&g.r_mul(&h.r_pow(delta)));
        g = a.lc();
        if delta > 0 {
            h = g.r_pow(delta).r_div_exact(&h.r_pow(delta - 1));
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg();
    let res = b.lc().r_pow(da).r_div_exact(&h.r_pow(da - 1));
    apply(res, negate)
}

/// Resultant with respect to `x` of `B(x, y)` and `A(x)`, as a polynomial in `y`.
///
/// Oriented so that it equals `lc(A)^(deg_x B) * prod B(alpha_j, y)` over the
/// complex roots of `A`; with `deg_x B = 0` this is `B^(deg A)`.
pub fn resultant_bivariate(b: &BiPoly, a: &IntPoly) -> IntPoly {
    let bx = biv::transpose(b);
    let ax: BiPoly = a.map(|c| IntPoly::constant(c.clone()));
    resultant(&ax, &bx)
}

/// One entry of a subresultant chain.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainEntry<R: Ring> {
    /// Formal index `j`: the entry is `S_j`.
    pub index: usize,
    pub poly: Poly<R>,
    /// `deg S_j < j`.
    pub defective: bool,
}

/// Nonzero subresultants `S_p = f, S_{p-1} = g, ...` in decreasing index
/// order (Ducos' variant of the subresultant PRS). Requires
/// `deg f >= deg g`, `f != 0`.
pub fn subresultant_chain<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Vec<ChainEntry<R>> {
    assert!(!f.is_zero(), "subresultant chain of the zero polynomial");
    let p = f.deg();
    let mut out = vec![ChainEntry {
        index: p,
        poly: f.clone(),
        defective: false,
    }];
    if g.is_zero() {
        return out;
    }
    assert!(g.deg() <= p, "subresultant chain needs deg f >= deg g");
    if p == 0 {
        out.push(ChainEntry { index: 0, poly: g.clone(), defective: false });
        return out;
    }
    let q = g.deg();
    out.push(ChainEntry {
        index: p - 1,
        poly: g.clone(),
        defective: q < p - 1,
    });
    let mut s = g.lc().r_pow(p - q);
    let mut a = if q < p - 1 {
        let c = g.scale(&g.lc().r_pow(p - q - 1));
        out.push(ChainEntry { index: q, poly: c.clone(), defective: false });
        c
    } else {
        g.clone()
    };
    if q == 0 {
        return out;
    }
    // `a` is the non-defective S_d, `s` its principal coefficient; the
    // update below is homogeneous in `a`, so starting from a multiple of g is fine.
    let mut b = prem(f, &-g);
    loop {
        if b.is_zero() {
            break;
        }
        let d = a.deg();
        let e = b.deg();
        out.push(ChainEntry { index: d - 1, poly: b.clone(), defective: e + 1 < d });
        let delta = d - e;
        let c = if delta > 1 {
            let lb = b.lc();
            b.scale(&lb.r_pow(delta - 1)).div_exact_scalar(&s.r_pow(delta - 1))
        } else {
            b.clone()
        };
        if delta > 1 {
            out.push(ChainEntry { index: e, poly: c.clone(), defective: false });
        }
        if e == 0 {
            break;
        }
        b = prem(&a, &-&b).div_exact_scalar(&s.r_pow(delta).r_mul(&a.lc()));
        a = c;
        s = a.lc();
    }
    out
}

/// Sturm–Habicht sequence: subresultants of `(f, g)` with respect to `y`,
/// each `S_j` multiplied by `(-1)^(k(k-1)/2)`, `k = deg f - j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedRemainderSeq {
    pub elements: Vec<BiPoly>,
    /// Formal index of each element.
    pub index: Vec<usize>,
    /// `true` where the element's degree is below its formal index.
    pub defective: Vec<bool>,
}

impl SignedRemainderSeq {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Last nonzero element.
    pub fn last(&self) -> &BiPoly {
        self.elements.last().expect("sequence holds at least f")
    }
}

pub fn signed_remainder_seq(f: &BiPoly, g: &BiPoly) -> SignedRemainderSeq {
    let n = f.deg();
    let chain = subresultant_chain(f, g);
    let mut seq = SignedRemainderSeq {
        elements: Vec::with_capacity(chain.len()),
        index: Vec::with_capacity(chain.len()),
        defective: Vec::with_capacity(chain.len()),
    };
    for e in chain {
        let k = n - e.index;
        let flip = (k * k.saturating_sub(1) / 2) % 2 == 1;
        seq.elements.push(if flip { -e.poly } else { e.poly });
        seq.index.push(e.index);
        seq.defective.push(e.defective);
    }
    seq
}

/// Where to specialize `y` in [`eval_seq_at_rational`].
#[derive(Clone, Debug, PartialEq)]
pub enum EvalPoint {
    Finite(Rational),
    PosInf,
    NegInf,
}

/// Specializes every element at `y = q`, clearing the denominator of `q`
/// by a positive power so signs are preserved. At `±inf` each element is
/// replaced by its leading `y`-coefficient times `(±1)^deg`.
pub fn eval_seq_at_rational(s: &SignedRemainderSeq, q: &EvalPoint) -> Vec<IntPoly> {
    s.elements
        .iter()
        .map(|e| match q {
            EvalPoint::Finite(q) => biv::subst_y(e, q),
            EvalPoint::PosInf => e.lc(),
            EvalPoint::NegInf => {
                if e.deg() % 2 == 1 {
                    -e.lc()
                } else {
                    e.lc()
                }
            }
        })
        .collect()
}

/// Coefficient of `X^j` in `prem(u, v)` for `j < deg v`, computed from the
/// coefficients of index `>= j` only.
pub fn prem_coeff<R: Ring>(u: &Poly<R>, v: &Poly<R>, j: usize) -> R {
    let dv = v.deg();
    assert!(j < dv, "prem_coeff needs j below deg v");
    if u.is_zero() || u.deg() < dv {
        return u.coeff(j);
    }
    let du = u.deg();
    let l = v.lc();
    let vc = v.coeffs();
    let mut r: Vec<R> = (j..=du).map(|k| u.coeff(k)).collect();
    for top in (dv..=du).rev() {
        let t = r[top - j].clone();
        r.truncate(top - j);
        for x in r.iter_mut() {
            *x = x.r_mul(&l);
        }
        if !t.r_is_zero() {
            let shift = top - dv;
            for (i, vi) in vc.iter().enumerate().take(dv) {
                let k = shift + i;
                if k >= j {
                    r[k - j] = r[k - j].r_sub(&t.r_mul(vi));
                }
            }
        }
    }
    r.first().cloned().unwrap_or_else(R::r_zero)
}

impl SignedRemainderSeq {
    /// Entries that stay non-defective after specializing `x`: those whose
    /// coefficient of `y^index` has nonzero sign under `sign`. Returned with
    /// their degree after specialization.
    pub fn select_nondefective(
        &self,
        mut sign: impl FnMut(&IntPoly) -> crate::arith::Sign,
    ) -> Vec<(BiPoly, usize)> {
        self.elements
            .iter()
            .zip(&self.index)
            .filter(|(e, &j)| sign(&e.coeff(j)) != crate::arith::Sign::Zero)
            .map(|(e, &j)| (e.clone(), j))
            .collect()
    }
}

/// Turns a list of polynomials proportional to the successive remainders of
/// `f, g` (as returned by [`SignedRemainderSeq::select_nondefective`], possibly
/// rescaled by positive factors) into a genuine Sturm sequence `U_0 = f,
/// U_1 = g, U_{i+1} ~ -rem(U_{i-1}, U_i)` by fixing the sign of each element.
/// `sign` gives the sign of an `x`-coefficient at the specialization point.
pub fn fix_sturm_signs(
    list: Vec<(BiPoly, usize)>,
    mut sign: impl FnMut(&IntPoly) -> crate::arith::Sign,
) -> Vec<(BiPoly, usize)> {
    use crate::arith::Sign;
    let mut out: Vec<(BiPoly, usize)> = Vec::with_capacity(list.len());
    let mut lc_signs: Vec<Sign> = Vec::with_capacity(list.len());
    for (t, d) in list {
        let s = sign(&t.coeff(d));
        if out.len() < 2 {
            lc_signs.push(s);
            out.push((t, d));
            continue;
        }
        let n = out.len();
        let (u0, d0) = &out[n - 2];
        let (u1, d1) = &out[n - 1];
        let delta = d0 - d1;
        // sign of lc(rem(U0, U1)) = sign(coeff_d prem(U0, U1)) * sign(lc U1)^(delta+1)
        let rem_lc = sign(&prem_coeff(u0, u1, d)).times(lc_signs[n - 1].pow(delta + 1));
        let want = rem_lc.flip();
        if s == want {
            lc_signs.push(s);
            out.push((t, d));
        } else {
            lc_signs.push(s.flip());
            out.push((-t, d));
        }
    }
    out
}
