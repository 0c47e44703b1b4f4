//! Options and dispatch shared by the three solvers.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extfield::AlgPoly;
use crate::arith::{Integer, Rational, Sign};
use crate::introot::{IsolationResult, RootInterval, RootKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Indirect,
    Sturm,
    Bitstream,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Indirect, Method::Sturm, Method::Bitstream];

    pub fn name(self) -> &'static str {
        match self {
            Method::Indirect => "indirect",
            Method::Sturm => "sturm",
            Method::Bitstream => "bitstream",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "indirect" => Ok(Method::Indirect),
            "sturm" => Ok(Method::Sturm),
            "bitstream" => Ok(Method::Bitstream),
            _ => Err(Error::InvalidParams(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub deadline: Option<Instant>,
    /// Verify square-freeness of `B_alpha` before solving. Callers that
    /// generated the instance square-free may skip it.
    pub check_square_free: bool,
    /// Bitstream solver: check every certified node against an exact count.
    pub audit: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { deadline: None, check_square_free: true, audit: false }
    }
}

impl SolveOptions {
    pub fn with_timeout(mut self, t: Duration) -> Self {
        self.deadline = Some(Instant::now() + t);
        self
    }

    pub fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(t) if Instant::now() >= t => Err(Error::Timeout),
            _ => Ok(()),
        }
    }
}

/// Runs one solver.
pub fn solve(b: &AlgPoly, method: Method, opts: &SolveOptions) -> Result<IsolationResult> {
    match method {
        Method::Indirect => crate::indirect::indirect_isolate(b, opts).map(|(r, _)| r),
        Method::Sturm => crate::direct::sturm_isolate(b, opts),
        Method::Bitstream => crate::direct::bitstream_isolate(b, opts),
    }
}

/// Bisects an isolating interval of a root of `B_alpha` until its width is
/// at most `2^-l`. The endpoints of `r` must not be roots.
pub fn refine_root(b: &AlgPoly, r: &RootInterval, l: u32) -> RootInterval {
    let (mut lo, mut hi) = match &r.kind {
        RootKind::Exact(_) => return r.clone(),
        RootKind::Open { lo, hi } => (lo.clone(), hi.clone()),
    };
    let target = Rational::new(1.into(), Integer::from(1u32) << l as usize);
    let s_lo = b.endpoint_sign(&lo);
    debug_assert!(s_lo != Sign::Zero && b.endpoint_sign(&hi) == s_lo.flip());
    let two = Rational::from_integer(2.into());
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        match b.endpoint_sign(&mid) {
            Sign::Zero => return RootInterval::exact(mid, r.mult),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    RootInterval::open(lo, hi, r.mult)
}
