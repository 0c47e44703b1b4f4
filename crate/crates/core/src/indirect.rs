//! The indirect solver: eliminate `alpha` with a resultant, isolate the real
//! roots of the resulting integer polynomial, keep the ones that are roots
//! of `B_alpha`.

use std::time::Instant;

use serde::Serialize;

use crate::arith::Sign;
use crate::error::{Error, Result};
use crate::extfield::{AlgPoly, SquareFree};
use crate::introot::{isolate_square_free, IsolationResult, RootInterval, RootKind};
use crate::poly::{resultant_bivariate, yun_squarefree_factorization, IntPoly};
use crate::solve::SolveOptions;

#[derive(Clone, Debug, Default, Serialize)]
pub struct StageTimes {
    pub resultant_ms: f64,
    pub squarefree_ms: f64,
    pub isolate_ms: f64,
    pub filter_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndirectTrace {
    #[serde(rename = "R")]
    pub r: IntPoly,
    /// Square-free factors of `R` with multiplicities.
    pub r_factors: Vec<(IntPoly, usize)>,
    #[serde(rename = "C")]
    pub c: IntPoly,
    pub candidates: Vec<RootInterval>,
    pub kept: Vec<bool>,
    /// Signs of `B_alpha` at each candidate's endpoints (equal for exact candidates).
    pub endpoint_signs: Vec<(i32, i32)>,
    pub times: StageTimes,
}

/// `R(y) = res_x(B(x, y), A(x))`.
pub fn compute_r(b: &AlgPoly) -> Result<IntPoly> {
    let r = resultant_bivariate(b.bipoly(), b.alpha().poly());
    if r.is_zero() {
        return Err(Error::ResultantZero);
    }
    Ok(r)
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn indirect_isolate(b: &AlgPoly, opts: &SolveOptions) -> Result<(IsolationResult, IndirectTrace)> {
    if opts.check_square_free && b.is_square_free() == SquareFree::No {
        return Err(Error::NotSquareFree);
    }
    let mut times = StageTimes::default();
    let t = Instant::now();
    let r = compute_r(b)?;
    times.resultant_ms = ms_since(t);
    opts.check_deadline()?;

    let t = Instant::now();
    let fac = yun_squarefree_factorization(&r);
    let c = match fac.factors.as_slice() {
        [(f, _)] => f.clone(),
        fs => fs.iter().fold(IntPoly::one(), |acc, (f, _)| &acc * f),
    };
    times.squarefree_ms = ms_since(t);
    opts.check_deadline()?;

    let t = Instant::now();
    let cand = isolate_square_free(&c, opts.deadline)?;
    times.isolate_ms = ms_since(t);

    let t = Instant::now();
    let mut kept = Vec::with_capacity(cand.roots.len());
    let mut signs = Vec::with_capacity(cand.roots.len());
    let mut roots = Vec::new();
    for root in &cand.roots {
        opts.check_deadline()?;
        let (keep, s) = match &root.kind {
            RootKind::Exact(q) => {
                let s = b.endpoint_sign(q);
                (s == Sign::Zero, (s, s))
            }
            RootKind::Open { lo, hi } => {
                let (sl, sh) = (b.endpoint_sign(lo), b.endpoint_sign(hi));
                (sl.times(sh) == Sign::Negative, (sl, sh))
            }
        };
        kept.push(keep);
        signs.push((s.0.to_i32(), s.1.to_i32()));
        if keep {
            roots.push(RootInterval { kind: root.kind.clone(), mult: 1 });
        }
    }
    times.filter_ms = ms_since(t);

    let mut stats = cand.stats.clone();
    stats.engine = "resultant+descartes";
    let trace = IndirectTrace {
        r,
        r_factors: fac.factors,
        c,
        candidates: cand.roots,
        kept,
        endpoint_signs: signs,
        times,
    };
    Ok((IsolationResult { roots, stats }, trace))
}
