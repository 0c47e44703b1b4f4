//! Real root isolation and refinement for integer polynomials.
//!
//! Isolation is Descartes' rule of signs with bisection (the Vincent–
//! Collins–Akritas scheme) on the square-free part; refinement is quadratic
//! interval refinement (secant guesses on a grid, falling back to bisection).

use std::cmp::Ordering;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::{cmp_rat, fmt_rational, lg_ceil, Integer, Rational, Sign};
use crate::error::{Error, Result};
use crate::poly::{sign_variations, yun_squarefree_factorization, IntPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootKind {
    Exact(Rational),
    Open { lo: Rational, hi: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub kind: RootKind,
    pub mult: usize,
}

impl RootInterval {
    pub fn exact(q: Rational, mult: usize) -> RootInterval {
        RootInterval { kind: RootKind::Exact(q), mult }
    }

    pub fn open(lo: Rational, hi: Rational, mult: usize) -> RootInterval {
        assert!(cmp_rat(&lo, &hi) == Ordering::Less, "open root interval must have lo < hi");
        RootInterval { kind: RootKind::Open { lo, hi }, mult }
    }

    pub fn lo(&self) -> &Rational {
        match &self.kind {
            RootKind::Exact(q) => q,
            RootKind::Open { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rational {
        match &self.kind {
            RootKind::Exact(q) => q,
            RootKind::Open { hi, .. } => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, RootKind::Exact(_))
    }

    pub fn width(&self) -> Rational {
        self.hi() - self.lo()
    }

    /// Closed-interval membership.
    pub fn contains(&self, q: &Rational) -> bool {
        cmp_rat(self.lo(), q) != Ordering::Greater && cmp_rat(q, self.hi()) != Ordering::Greater
    }
}

impl Serialize for RootInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match &self.kind {
            RootKind::Exact(q) => {
                m.serialize_entry("kind", "exact")?;
                m.serialize_entry("value", &fmt_rational(q))?;
                if self.mult > 1 {
                    m.serialize_entry("mult", &self.mult)?;
                }
            }
            RootKind::Open { lo, hi } => {
                m.serialize_entry("kind", "open")?;
                m.serialize_entry("lo", &fmt_rational(lo))?;
                m.serialize_entry("hi", &fmt_rational(hi))?;
                m.serialize_entry("mult", &self.mult)?;
            }
        }
        m.end()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsolationStats {
    pub engine: &'static str,
    pub nodes: u64,
    pub max_depth: u32,
    pub max_endpoint_bits: u64,
    /// Sturm solver: number of sign-variation evaluations.
    pub sequence_evaluations: u64,
    /// Bitstream solver: largest coefficient precision used, in bits.
    pub max_precision: u64,
    /// Bitstream solver: precision doublings triggered by undecided nodes.
    pub restarts: u64,
    /// Roots that landed exactly on a subdivision point.
    pub exact_hits: u64,
    /// Audit mode: verdicts checked against exact counts, and disagreements.
    pub audit_checks: u64,
    pub audit_mismatches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolationResult {
    /// Sorted, pairwise disjoint.
    pub roots: Vec<RootInterval>,
    pub stats: IsolationStats,
}

/// `1 + max_{i<n} |a_i| / |a_n|`, an upper bound on the modulus of every
/// complex root, never larger than [`cauchy_root_bound_paper`].
pub fn cauchy_root_bound(f: &IntPoly) -> Rational {
    assert!(f.deg() >= 1, "root bound of a constant");
    let n = f.deg();
    let m = f.coeffs()[..n].iter().map(|c| c.abs()).max().unwrap_or_else(Integer::zero);
    let sharp = Rational::one() + Rational::new(m, f.lc().abs());
    sharp.min(cauchy_root_bound_paper(f))
}

/// `2 * max |a_i|`.
pub fn cauchy_root_bound_paper(f: &IntPoly) -> Rational {
    Rational::from_integer(f.max_abs() * 2)
}

/// Smallest `k >= 0` with `2^k >= cauchy_root_bound(f)`.
pub fn root_bound_log2(f: &IntPoly) -> u64 {
    let b = cauchy_root_bound(f);
    let c = b.ceil().to_integer();
    lg_ceil(&c)
}

/// Lowers `k` while Descartes certifies that `f` has no roots at or above `2^(k-1)`.
fn tighten_bound(f: &IntPoly, mut k: u64) -> u64 {
    while k > 0 {
        let shifted = f.scale_var(&(Integer::one() << (k - 1) as usize)).taylor_shift_one();
        if shifted.coeff(0).is_zero() || coeff_variations(&shifted) != 0 {
            break;
        }
        k -= 1;
    }
    k
}

/// `(1 + x)^n f((a + b x) / (1 + x))` up to a positive factor.
fn mobius(f: &IntPoly, a: &Rational, b: &Rational) -> IntPoly {
    let d = num_integer::Integer::lcm(a.denom(), b.denom());
    let a1 = a.numer() * (&d / a.denom());
    let b1 = b.numer() * (&d / b.denom());
    let num = IntPoly::new(vec![a1, b1]);
    let den = IntPoly::new(vec![d.clone(), d]);
    let n = f.deg();
    let mut num_pows = vec![IntPoly::one()];
    let mut den_pows = vec![IntPoly::one()];
    for i in 0..n {
        num_pows.push(&num_pows[i] * &num);
        den_pows.push(&den_pows[i] * &den);
    }
    let mut acc = IntPoly::zero();
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(&num_pows[i] * &den_pows[n - i]).scale_int(c);
    }
    acc
}

fn coeff_variations(p: &IntPoly) -> usize {
    sign_variations(p.coeffs().iter().map(Sign::of_int))
}

/// Descartes' bound on the number of roots of `f` in the open interval `(a, b)`.
pub fn descartes_count(f: &IntPoly, a: &Rational, b: &Rational) -> usize {
    assert!(a < b, "descartes_count needs a < b");
    coeff_variations(&mobius(f, a, b))
}

/// Variations of `(x + 1)^n P(1 / (x + 1))`: Descartes' bound for `(0, 1)`.
fn unit_variations(p: &IntPoly) -> usize {
    coeff_variations(&p.reverse().taylor_shift_one())
}

fn check_deadline(deadline: Option<Instant>) -> Result<()> {
    match deadline {
        Some(t) if Instant::now() >= t => Err(Error::Timeout),
        _ => Ok(()),
    }
}

fn endpoint_bits(q: &Rational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

/// Roots of square-free `f` in `(0, 2^k)`; intervals are `(c/2^j, (c+1)/2^j) * 2^k`.
fn isolate_positive(
    f: &IntPoly,
    k: u64,
    stats: &mut IsolationStats,
    deadline: Option<Instant>,
) -> Result<Vec<RootInterval>> {
    let scale = Rational::from_integer(Integer::one() << k as usize);
    let p0 = f.scale_var(&(Integer::one() << k as usize));
    let mut out = Vec::new();
    // (P, c, j): roots of P in (0,1) are the roots of f in (c/2^j, (c+1)/2^j) * 2^k.
    let mut stack = vec![(p0, Integer::zero(), 0u32)];
    while let Some((p, c, j)) = stack.pop() {
        check_deadline(deadline)?;
        stats.nodes += 1;
        stats.max_depth = stats.max_depth.max(j);
        let v = unit_variations(&p);
        if v == 0 {
            continue;
        }
        let den = Rational::from_integer(Integer::one() << j as usize);
        if v == 1 {
            let lo = Rational::from_integer(c.clone()) / &den * &scale;
            let hi = Rational::from_integer(&c + 1) / &den * &scale;
            out.push(RootInterval::open(lo, hi, 1));
            continue;
        }
        let left = p.scale_down_pow2(1);
        let right = left.taylor_shift_one();
        if right.coeff(0).is_zero() {
            let mid = Rational::from_integer(&c * 2 + 1) / (&den * Rational::from_integer(Integer::from(2))) * &scale;
            out.push(RootInterval::exact(mid, 1));
        }
        stack.push((right, &c * 2 + 1, j + 1));
        stack.push((left, c * 2, j + 1));
    }
    Ok(out)
}

/// Moves endpoints of an isolating interval off roots so that `f` changes
/// sign strictly between them. `f` square-free with exactly one root in (lo, hi).
fn separate_endpoints(f: &IntPoly, r: RootInterval) -> RootInterval {
    let (mut lo, mut hi) = match r.kind {
        RootKind::Exact(_) => return r,
        RootKind::Open { lo, hi } => (lo, hi),
    };
    loop {
        let (sl, sh) = (f.sign_at_rational(&lo), f.sign_at_rational(&hi));
        if sl != Sign::Zero && sh != Sign::Zero {
            return RootInterval::open(lo, hi, r.mult);
        }
        let mid = (&lo + &hi) / Rational::from_integer(Integer::from(2));
        if f.sign_at_rational(&mid) == Sign::Zero {
            return RootInterval::exact(mid, r.mult);
        }
        if descartes_count(f, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Isolates the real roots of a square-free polynomial.
pub fn isolate_square_free(f: &IntPoly, deadline: Option<Instant>) -> Result<IsolationResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut stats = IsolationStats { engine: "descartes-bisection", ..Default::default() };
    let mut roots = Vec::new();
    if f.deg() == 0 {
        return Ok(IsolationResult { roots, stats });
    }
    let mut g = f.clone();
    if g.coeff(0).is_zero() {
        roots.push(RootInterval::exact(Rational::zero(), 1));
        g = IntPoly::new(g.coeffs()[1..].to_vec());
    }
    if g.deg() >= 1 {
        let k = root_bound_log2(&g);
        let pos = isolate_positive(&g, tighten_bound(&g, k), &mut stats, deadline)?;
        let gr = g.reflect();
        let neg = isolate_positive(&gr, tighten_bound(&gr, k), &mut stats, deadline)?;
        for r in neg {
            roots.push(match r.kind {
                RootKind::Exact(q) => RootInterval::exact(-q, 1),
                RootKind::Open { lo, hi } => RootInterval::open(-hi, -lo, 1),
            });
        }
        roots.extend(pos);
    }
    let mut roots: Vec<RootInterval> = roots.into_iter().map(|r| separate_endpoints(f, r)).collect();
    roots.sort_by(|a, b| cmp_rat(a.lo(), b.lo()));
    stats.max_endpoint_bits = roots
        .iter()
        .map(|r| endpoint_bits(r.lo()).max(endpoint_bits(r.hi())))
        .max()
        .unwrap_or(0);
    Ok(IsolationResult { roots, stats })
}

/// Isolates the distinct real roots of `f` with their multiplicities.
pub fn isolate(f: &IntPoly) -> IsolationResult {
    isolate_with_deadline(f, None).expect("no deadline")
}

pub fn isolate_with_deadline(f: &IntPoly, deadline: Option<Instant>) -> Result<IsolationResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fac = yun_squarefree_factorization(f);
    if fac.factors.len() <= 1 {
        let mult = fac.factors.first().map_or(1, |(_, k)| *k);
        let sfp = fac.factors.first().map_or_else(IntPoly::one, |(p, _)| p.clone());
        let mut res = isolate_square_free(&sfp, deadline)?;
        for r in &mut res.roots {
            r.mult = mult;
        }
        return Ok(res);
    }
    let sfp = fac.factors.iter().fold(IntPoly::one(), |acc, (p, _)| &acc * p);
    let mut res = isolate_square_free(&sfp, deadline)?;
    for r in &mut res.roots {
        r.mult = fac
            .factors
            .iter()
            .find(|(p, _)| match &r.kind {
                RootKind::Exact(q) => p.sign_at_rational(q) == Sign::Zero,
                RootKind::Open { lo, hi } => p.sign_at_rational(lo) != p.sign_at_rational(hi),
            })
            .map(|(_, k)| *k)
            .expect("every root belongs to one square-free factor");
    }
    Ok(res)
}

/// Shrinks an isolating interval of a root of square-free `f` to width `<= 2^-l`.
///
/// Secant steps on a grid of `2^e` parts with `e` doubling on success and
/// halving on failure (bisection). Endpoints are kept as integers over a
/// common denominator `d 2^s`, so no rational normalization happens per step.
pub fn refine(f: &IntPoly, r: &RootInterval, l: u32) -> RootInterval {
    let (lo, hi) = match &r.kind {
        RootKind::Exact(_) => return r.clone(),
        RootKind::Open { lo, hi } => (lo, hi),
    };
    let d = num_integer::Integer::lcm(lo.denom(), hi.denom());
    let mut a = lo.numer() * (&d / lo.denom());
    let mut b = hi.numer() * (&d / hi.denom());
    let mut s: usize = 0;
    let n = f.deg();
    let ev = |x: &Integer, s: usize| f.eval_homogeneous(x, &(&d << s));
    let mut fa = ev(&a, s);
    let mut fb = ev(&b, s);
    let sl = Sign::of_int(&fa);
    debug_assert!(sl != Sign::Zero && Sign::of_int(&fb) == sl.flip());
    let exact = |m: Integer, s: usize| RootInterval::exact(Rational::new(m, &d << s), r.mult);
    let mut e: usize = 2;
    // width (b - a) / (d 2^s) > 2^-l
    while ((&b - &a) << l as usize) > (&d << s) {
        let w = &b - &a;
        // Secant guess snapped to the grid of 2^e parts.
        let num = (fa.abs()) << e;
        let den = (&fa - &fb).abs();
        let j = ((num << 1usize) + &den) / (den << 1usize);
        let j = j.min(Integer::one() << e);
        let se = s + e;
        let m = (&a << e) + &j * &w;
        let sm = Sign::of_int(&ev(&m, se));
        if sm == Sign::Zero {
            return exact(m, se);
        }
        let (ca, cb) = if sm == sl { (m.clone(), &m + &w) } else { (&m - &w, m) };
        let mut done = false;
        if ca >= (&a << e) && cb <= (&b << e) {
            let (fca, fcb) = (ev(&ca, se), ev(&cb, se));
            if fca.is_zero() {
                return exact(ca, se);
            }
            if fcb.is_zero() {
                return exact(cb, se);
            }
            if Sign::of_int(&fca) == sl && Sign::of_int(&fcb) == sl.flip() {
                (a, b, fa, fb, s) = (ca, cb, fca, fcb, se);
                e *= 2;
                done = true;
            }
        }
        if !done {
            let m = &a + &b;
            let fm = ev(&m, s + 1);
            a <<= 1usize;
            b <<= 1usize;
            s += 1;
            match Sign::of_int(&fm) {
                Sign::Zero => return exact(m, s),
                t if t == sl => {
                    a = m;
                    fa = fm;
                    fb <<= n;
                }
                _ => {
                    b = m;
                    fb = fm;
                    fa <<= n;
                }
            }
            e = (e / 2).max(2);
        }
    }
    RootInterval::open(Rational::new(a, &d << s), Rational::new(b, &d << s), r.mult)
}
