use num_traits::Zero;

use crate::arith::{cmp_rat, Rational, Sign};
use crate::error::{Error, Result};
use crate::extfield::{AlgPoly, SquareFree};
use crate::introot::{IsolationResult, IsolationStats, RootInterval};
use crate::poly::{fix_sturm_signs, reduce_mod, subst_y, BiPoly, SignedRemainderSeq};
use crate::solve::SolveOptions;

use super::root_bound_log2;

/// Sturm sequence of `B_alpha` with coefficients in `Z[alpha]`, built once
/// from the Sturm–Habicht sequence of `B` and specialized at `alpha`.
pub struct SturmCounter<'a> {
    b: &'a AlgPoly,
    seq: Vec<BiPoly>,
}

impl<'a> SturmCounter<'a> {
    pub fn new(b: &'a AlgPoly) -> SturmCounter<'a> {
        SturmCounter::from_seq(b, &b.sturm_habicht())
    }

    pub fn from_seq(b: &'a AlgPoly, sh: &SignedRemainderSeq) -> SturmCounter<'a> {
        let alpha = b.alpha();
        let a = alpha.poly();
        let sel: Vec<(BiPoly, usize)> = sh
            .select_nondefective(|c| alpha.sign_at(c))
            .into_iter()
            .map(|(e, d)| (BiPoly::new(reduce_mod(e.coeffs(), a)), d))
            .collect();
        let seq = fix_sturm_signs(sel, |c| alpha.sign_at(c))
            .into_iter()
            .map(|(e, _)| e)
            .collect();
        SturmCounter { b, seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Sign variations at `q`, and whether `q` is a root of `B_alpha`.
    pub fn variations(&self, q: &Rational) -> (usize, bool) {
        let alpha = self.b.alpha();
        let signs: Vec<Sign> = self.seq.iter().map(|u| alpha.sign_at(&subst_y(u, q))).collect();
        (crate::poly::sign_variations(signs.iter().copied()), signs[0] == Sign::Zero)
    }

    /// Number of distinct roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &Rational, hi: &Rational) -> usize {
        let (vl, _) = self.variations(lo);
        let (vh, hroot) = self.variations(hi);
        vl - vh - hroot as usize
    }
}

struct Node {
    lo: Rational,
    hi: Rational,
    vlo: usize,
    vhi: usize,
    lo_root: bool,
    hi_root: bool,
    depth: u32,
}

pub fn sturm_isolate(b: &AlgPoly, opts: &SolveOptions) -> Result<IsolationResult> {
    let mut stats = IsolationStats { engine: "sturm", ..Default::default() };
    if b.degree() == 0 {
        return Ok(IsolationResult { roots: vec![], stats });
    }
    let sh = b.sturm_habicht();
    if opts.check_square_free && b.is_square_free_with(&sh) == SquareFree::No {
        return Err(Error::NotSquareFree);
    }
    let counter = SturmCounter::from_seq(b, &sh);
    opts.check_deadline()?;

    let k = root_bound_log2(b) as usize;
    let m = Rational::from_integer(crate::arith::Integer::from(1u32) << k);
    let two = Rational::from_integer(2.into());
    let (vlo, _) = counter.variations(&-&m);
    let (vhi, _) = counter.variations(&m);
    stats.sequence_evaluations += 2;
    let mut roots = Vec::new();
    let mut stack = vec![Node { lo: -&m, hi: m, vlo, vhi, lo_root: false, hi_root: false, depth: 0 }];
    while let Some(nd) = stack.pop() {
        opts.check_deadline()?;
        stats.nodes += 1;
        stats.max_depth = stats.max_depth.max(nd.depth);
        let count = nd.vlo - nd.vhi - nd.hi_root as usize;
        if count == 0 {
            continue;
        }
        if count == 1 && !nd.lo_root && !nd.hi_root {
            roots.push(RootInterval::open(nd.lo, nd.hi, 1));
            continue;
        }
        let mid = (&nd.lo + &nd.hi) / &two;
        let (vm, mroot) = counter.variations(&mid);
        stats.sequence_evaluations += 1;
        if mroot {
            stats.exact_hits += 1;
            roots.push(RootInterval::exact(mid.clone(), 1));
        }
        let d = nd.depth + 1;
        stack.push(Node {
            lo: mid.clone(),
            hi: nd.hi,
            vlo: vm,
            vhi: nd.vhi,
            lo_root: mroot,
            hi_root: nd.hi_root,
            depth: d,
        });
        stack.push(Node { lo: nd.lo, hi: mid, vlo: nd.vlo, vhi: vm, lo_root: nd.lo_root, hi_root: mroot, depth: d });
    }
    roots.sort_by(|a, b| cmp_rat(a.lo(), b.lo()));
    stats.max_endpoint_bits = roots
        .iter()
        .map(|r| endpoint_bits(r.lo()).max(endpoint_bits(r.hi())))
        .max()
        .unwrap_or(0);
    Ok(IsolationResult { roots, stats })
}

pub(crate) fn endpoint_bits(q: &Rational) -> u64 {
    if q.is_zero() {
        return 1;
    }
    q.numer().bits().max(q.denom().bits())
}
