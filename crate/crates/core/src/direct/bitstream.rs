use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{cmp_rat, Dyadic, DyadicInterval, Integer, Rational, Sign};
use crate::bounds::{direct_bounds, InstanceParams};
use crate::error::{Error, Result};
use crate::extfield::{AlgPoly, SquareFree};
use crate::introot::{IsolationResult, IsolationStats, RootInterval};
use crate::solve::SolveOptions;

use super::sturm::endpoint_bits;
use super::{deflate, reflect, root_bound_log2, SturmCounter};

/// Outcome of Descartes' test on a polynomial with interval coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every consistent polynomial has no sign variation.
    Zero,
    /// Every consistent polynomial has exactly one.
    One,
    /// Every consistent polynomial has at least this many.
    AtLeast(usize),
    /// Coefficients straddling zero leave the count undecided.
    Unknown,
}

/// Certified sign-variation verdict for the coefficient intervals of the
/// transformed polynomial `(1 + x)^n Q(1 / (1 + x))`.
pub fn variation_verdict(coeffs: &[DyadicInterval]) -> Verdict {
    let signs: Vec<Option<Sign>> = coeffs.iter().map(|c| c.certain_sign()).collect();
    let straddles = signs.iter().any(|s| s.is_none());
    let min_v = crate::poly::sign_variations(signs.iter().filter_map(|s| *s));
    if !straddles {
        return match min_v {
            0 => Verdict::Zero,
            1 => Verdict::One,
            v => Verdict::AtLeast(v),
        };
    }
    // Largest count over every choice of sign (or zero) for the straddling entries.
    // best[s] = most variations of a prefix whose last nonzero sign is s (0: none, 1: +, 2: -).
    let mut best: [Option<usize>; 3] = [Some(0), None, None];
    for s in &signs {
        best = match s {
            Some(Sign::Positive) => extend(&best, &[1]),
            Some(Sign::Negative) => extend(&best, &[2]),
            Some(Sign::Zero) => best,
            None => {
                let mut both = extend(&best, &[1, 2]);
                for (b, k) in both.iter_mut().zip(best) {
                    *b = (*b).max(k);
                }
                both
            }
        };
    }
    let max_v = best.iter().flatten().copied().max().unwrap_or(0);
    if max_v == 0 {
        Verdict::Zero
    } else if min_v == 1 && max_v == 1 {
        Verdict::One
    } else if min_v >= 2 {
        Verdict::AtLeast(min_v)
    } else {
        Verdict::Unknown
    }
}

fn extend(best: &[Option<usize>; 3], choices: &[usize]) -> [Option<usize>; 3] {
    let mut next = [None; 3];
    for &sign in choices {
        for (last, v) in best.iter().enumerate() {
            if let Some(v) = v {
                let cand = v + (last != 0 && last != sign) as usize;
                next[sign] = next[sign].max(Some(cand));
            }
        }
    }
    next
}

fn taylor_shift_one(c: &mut [DyadicInterval]) {
    let n = c.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            c[j] = &c[j] + &c[j + 1];
        }
    }
}

/// Rounds outward keeping about `prec` bits relative to the magnitude.
fn round_rel(c: &DyadicInterval, prec: u64) -> DyadicInterval {
    if c.certain_sign() == Some(Sign::Zero) {
        return c.clone();
    }
    let mag = c.mag().magnitude_bits();
    c.round_outward(mag - prec as i64)
}

fn transform(q: &[DyadicInterval]) -> Vec<DyadicInterval> {
    let mut t: Vec<DyadicInterval> = q.iter().rev().cloned().collect();
    taylor_shift_one(&mut t);
    t
}

/// `P(2^(k-d) (c + t))` for the node `(c, c + 1) * 2^(k-d)`.
fn node_poly(p: &[DyadicInterval], k: u64, c: &Integer, d: u32) -> Vec<DyadicInterval> {
    let e = k as i64 - d as i64;
    let mut a: Vec<DyadicInterval> = p.iter().enumerate().map(|(i, x)| x.shl(e * i as i64)).collect();
    if !c.is_zero() {
        let n = a.len();
        for i in 0..n.saturating_sub(1) {
            for j in (i..n - 1).rev() {
                a[j] = &a[j] + &a[j + 1].mul_int(c);
            }
        }
    }
    a
}

struct Node {
    c: Integer,
    d: u32,
    poly: Vec<DyadicInterval>,
    prec: u64,
    retried: bool,
}

struct State {
    l: u64,
    cap: u64,
    stats: IsolationStats,
}

impl State {
    fn raise(&mut self) -> Result<()> {
        if self.l >= self.cap {
            return Err(Error::PrecisionCapExceeded { cap: self.cap });
        }
        self.l = (self.l * 2).min(self.cap);
        self.stats.restarts += 1;
        self.stats.max_precision = self.stats.max_precision.max(self.l);
        Ok(())
    }

    fn working_bits(&self, n: usize) -> u64 {
        self.l + 2 * n as u64 + 16
    }
}

enum Half {
    Done(Vec<(Rational, Rational)>),
    Hit(Rational),
}

fn enclosures(b: &AlgPoly, l: u64) -> Vec<DyadicInterval> {
    (0..=b.degree()).map(|i| b.coeff_enclosure(i, l as u32)).collect()
}

fn dyadic_at(c: &Integer, e: i64) -> Rational {
    Dyadic::new(c.clone(), e).to_rational()
}

/// Roots of `b` in `(0, 2^k)`; `b(0) != 0`.
fn run_half(b: &AlgPoly, k: u64, st: &mut State, opts: &SolveOptions) -> Result<Half> {
    let n = b.degree();
    let mut p_l = st.l;
    let mut p = enclosures(b, p_l);
    let counter = opts.audit.then(|| SturmCounter::new(b));
    let mut out = Vec::new();
    let root_poly = node_poly(&p, k, &Integer::zero(), 0);
    let mut stack = vec![Node { c: Integer::zero(), d: 0, poly: root_poly, prec: st.l, retried: false }];
    while let Some(mut nd) = stack.pop() {
        opts.check_deadline()?;
        if nd.prec < st.l {
            if p_l < st.l {
                p_l = st.l;
                p = enclosures(b, p_l);
            }
            nd.poly = node_poly(&p, k, &nd.c, nd.d);
            nd.prec = st.l;
        }
        st.stats.nodes += 1;
        st.stats.max_depth = st.stats.max_depth.max(nd.d);
        let e = k as i64 - nd.d as i64;
        let verdict = variation_verdict(&transform(&nd.poly));
        if let Verdict::Zero | Verdict::One = verdict {
            let lo = dyadic_at(&nd.c, e);
            let hi = dyadic_at(&(&nd.c + 1u32), e);
            let claimed = (verdict == Verdict::One) as usize;
            if let Some(counter) = &counter {
                st.stats.audit_checks += 1;
                if counter.count_open(&lo, &hi) != claimed {
                    st.stats.audit_mismatches += 1;
                }
            }
            if claimed == 1 {
                out.push((lo, hi));
            }
            continue;
        }
        let starved = verdict == Verdict::Unknown || nd.d as u64 > k + st.l;
        if starved && !nd.retried {
            if nd.prec == st.l {
                st.raise()?;
            }
            nd.retried = true;
            nd.prec = 0;
            stack.push(nd);
            continue;
        }
        let mid_c = &nd.c * 2u32 + 1u32;
        let mid = dyadic_at(&mid_c, e - 1);
        if b.endpoint_sign(&mid) == Sign::Zero {
            return Ok(Half::Hit(mid));
        }
        let bits = st.working_bits(n);
        let left: Vec<DyadicInterval> =
            nd.poly.iter().enumerate().map(|(i, x)| round_rel(&x.shl(-(i as i64)), bits)).collect();
        let mut right = left.clone();
        taylor_shift_one(&mut right);
        let right: Vec<DyadicInterval> = right.iter().map(|x| round_rel(x, bits)).collect();
        let d = nd.d + 1;
        stack.push(Node { c: mid_c, d, poly: right, prec: nd.prec, retried: false });
        stack.push(Node { c: &nd.c * 2u32, d, poly: left, prec: nd.prec, retried: false });
    }
    Ok(Half::Done(out))
}

/// Precision cap `4 (Sigma_B + n tau_B) + 64` from the instance's bounds.
pub fn precision_cap(b: &AlgPoly) -> Result<u64> {
    let params = InstanceParams::of_instance(b);
    let db = direct_bounds(&params)?;
    let sig = db.sigma_b.expect("direct bounds give Sigma_B").to_integer();
    let tb = db.tau_b.expect("direct bounds give tau_B").to_integer();
    let cap = (sig + tb * Integer::from(params.n)) * 4u32 + 64u32;
    Ok(cap.to_u64().unwrap_or(u64::MAX))
}

pub fn bitstream_isolate(b: &AlgPoly, opts: &SolveOptions) -> Result<IsolationResult> {
    let stats = IsolationStats { engine: "bitstream-descartes", ..Default::default() };
    if b.degree() == 0 {
        return Ok(IsolationResult { roots: vec![], stats });
    }
    if opts.check_square_free && b.is_square_free() == SquareFree::No {
        return Err(Error::NotSquareFree);
    }
    let cap = precision_cap(b)?;
    let l = 64.min(cap);
    let mut st = State { l, cap, stats };
    st.stats.max_precision = l;
    let mut roots = Vec::new();
    let mut cur = b.clone();
    loop {
        opts.check_deadline()?;
        if cur.degree() == 0 {
            break;
        }
        let zero = Rational::zero();
        if cur.endpoint_sign(&zero) == Sign::Zero {
            st.stats.exact_hits += 1;
            roots.push(RootInterval::exact(zero.clone(), 1));
            cur = deflate(&cur, &zero)?;
            continue;
        }
        let k = root_bound_log2(&cur);
        let pos = match run_half(&cur, k, &mut st, opts)? {
            Half::Hit(r) => {
                st.stats.exact_hits += 1;
                cur = deflate(&cur, &r)?;
                roots.push(RootInterval::exact(r, 1));
                continue;
            }
            Half::Done(v) => v,
        };
        let refl = reflect(&cur)?;
        let neg = match run_half(&refl, k, &mut st, opts)? {
            Half::Hit(r) => {
                st.stats.exact_hits += 1;
                let r = -r;
                cur = deflate(&cur, &r)?;
                roots.push(RootInterval::exact(r, 1));
                continue;
            }
            Half::Done(v) => v,
        };
        roots.extend(pos.into_iter().map(|(lo, hi)| RootInterval::open(lo, hi, 1)));
        roots.extend(neg.into_iter().map(|(lo, hi)| RootInterval::open(-hi, -lo, 1)));
        break;
    }
    roots.sort_by(|a, b| cmp_rat(a.lo(), b.lo()));
    let mut stats = st.stats;
    stats.max_endpoint_bits = roots
        .iter()
        .map(|r| endpoint_bits(r.lo()).max(endpoint_bits(r.hi())))
        .max()
        .unwrap_or(0);
    Ok(IsolationResult { roots, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::make_algebraic;
    use crate::arith::rat;
    use crate::poly::{bipoly_from_rows, IntPoly};

    fn iv(lo: i64, hi: i64) -> DyadicInterval {
        DyadicInterval::new(Dyadic::from_int(lo.into()), Dyadic::from_int(hi.into()))
    }

    fn inst(a: &[i64], lo: i64, hi: i64, rows: &[&[i64]]) -> AlgPoly {
        let alpha = make_algebraic(&IntPoly::from_i64s(a), &rat(lo, 1), &rat(hi, 1)).unwrap();
        AlgPoly::new(alpha, &bipoly_from_rows(rows)).unwrap()
    }

    fn audited() -> SolveOptions {
        SolveOptions { audit: true, ..Default::default() }
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(variation_verdict(&[iv(1, 2), iv(3, 4), iv(1, 1)]), Verdict::Zero);
        assert_eq!(variation_verdict(&[iv(1, 2), iv(-3, -1)]), Verdict::One);
        assert_eq!(variation_verdict(&[iv(1, 2), iv(-1, 1), iv(1, 2)]), Verdict::Unknown);
        assert_eq!(variation_verdict(&[iv(1, 2), iv(-2, -1), iv(1, 2)]), Verdict::AtLeast(2));
        // a straddle that cannot add variations
        assert_eq!(variation_verdict(&[iv(1, 2), iv(-1, 1), iv(-2, -1)]), Verdict::One);
        assert_eq!(variation_verdict(&[iv(-1, 1), iv(1, 2), iv(-2, -1), iv(1, 1)]), Verdict::AtLeast(2));
        assert_eq!(variation_verdict(&[iv(0, 0), iv(2, 3)]), Verdict::Zero);
    }

    #[test]
    fn fourth_roots_of_two() {
        let b = inst(&[-2, 0, 1], 1, 2, &[&[0, -1], &[], &[1]]);
        let r = bitstream_isolate(&b, &audited()).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots[0].contains(&rat(-11892, 10000)) && r.roots[1].contains(&rat(11892, 10000)));
        assert_eq!(r.stats.audit_mismatches, 0);
        assert!(r.stats.audit_checks > 0);
    }

    #[test]
    fn square_root_of_sqrt3() {
        let b = inst(&[-3, 0, 1], 1, 2, &[&[0, 0, -1], &[], &[], &[], &[1]]);
        let r = bitstream_isolate(&b, &audited()).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots[1].contains(&rat(131607, 100000)));
        assert_eq!(r.stats.audit_mismatches, 0);
    }

    #[test]
    fn exact_roots_are_deflated() {
        // (2y - 1)(y + 1)(y - a) and a root at zero: times y
        let b = inst(&[-2, 0, 1], 1, 2, &[&[], &[0, 1], &[-1, -1], &[1, -2], &[2]]);
        let r = bitstream_isolate(&b, &audited()).unwrap();
        assert_eq!(r.roots.len(), 4);
        assert!(r.stats.exact_hits >= 1);
        assert!(r.roots[0].contains(&rat(-1, 1)));
        assert_eq!(r.roots[1], RootInterval::exact(rat(0, 1), 1));
        assert!(r.roots[2].contains(&rat(1, 2)));
        assert!(r.roots[3].contains(&rat(14142, 10000)));
    }

    #[test]
    fn mignotte_cluster_is_split() {
        // y^10 - 2 a^2 y^2 + 4 a y - 2, a the root of x^3 - 3x^2 - 1 in (3, 4)
        let b = inst(&[-1, 0, -3, 1], 3, 4, &[&[-2], &[0, 4], &[0, 0, -2], &[], &[], &[], &[], &[], &[], &[], &[1]]);
        let r = bitstream_isolate(&b, &audited()).unwrap();
        let s = crate::direct::sturm_isolate(&b, &SolveOptions::default()).unwrap();
        assert_eq!(r.roots.len(), s.roots.len());
        assert_eq!(r.stats.audit_mismatches, 0);
        // a ~ 3.1038, 1/a ~ 0.32219, h = a^-6 ~ 1.1e-3
        let near: Vec<_> = r.roots.iter().filter(|x| x.lo() >= &rat(32, 100) && x.hi() <= &rat(325, 1000)).collect();
        assert_eq!(near.len(), 2, "{:?}", r.roots);
    }

    #[test]
    fn rejects_repeated_roots() {
        let b = inst(&[-2, 0, 1], 1, 2, &[&[0, 0, 1], &[0, -2], &[1]]);
        assert_eq!(bitstream_isolate(&b, &SolveOptions::default()).unwrap_err(), Error::NotSquareFree);
    }
}
