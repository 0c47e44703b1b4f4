//! Instance families and the solver comparison runner.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebraic::make_algebraic;
use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};
use crate::extfield::{AlgPoly, SquareFree};
use crate::introot::{isolate, RootKind};
use crate::poly::modp::irreducible_certificate;
use crate::poly::{BiPoly, IntPoly};
use crate::solve::{solve, Method, SolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Random,
    Laguerre,
    Wilkinson,
    Mignotte,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Laguerre => "laguerre",
            Family::Wilkinson => "wilkinson",
            Family::Mignotte => "mignotte",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "random" => Ok(Family::Random),
            "laguerre" => Ok(Family::Laguerre),
            "wilkinson" => Ok(Family::Wilkinson),
            "mignotte" => Ok(Family::Mignotte),
            _ => Err(Error::InvalidParams(format!("unknown family {s:?}"))),
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize, bits: u32, nonzero_lead: bool) -> IntPoly {
    let r = (1i64 << bits) - 1;
    loop {
        let c: Vec<Integer> = (0..=deg).map(|_| Integer::from(rng.gen_range(-r..=r))).collect();
        if !nonzero_lead || !c[deg].is_zero() {
            return IntPoly::new(c);
        }
    }
}

fn algebraic_root(a: &IntPoly, index: usize) -> Result<crate::algebraic::RealAlgebraic> {
    let roots = isolate(a).roots;
    let r = roots.get(index).ok_or(Error::NotIsolating { roots: 0 })?;
    match &r.kind {
        RootKind::Exact(q) => make_algebraic(a, q, q),
        RootKind::Open { lo, hi } => make_algebraic(a, lo, hi),
    }
}

/// Random irreducible `A` of degree `m` with a real root, a random real root
/// `alpha`, and random `b_i` of degree `< m`, resampled until `B_alpha` is
/// square-free. Coefficients are uniform with absolute value below `2^bits`.
pub fn gen_random(m: usize, n: usize, bits: u32, seed: u64) -> Result<AlgPoly> {
    if m < 2 || n < 1 || !(1..=62).contains(&bits) {
        return Err(Error::InvalidParams("random family needs m >= 2, n >= 1, 1 <= bits <= 62".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, count) = loop {
        let a = random_poly(&mut rng, m, bits, true);
        if !irreducible_certificate(&a) {
            continue;
        }
        let count = isolate(&a).roots.len();
        if count > 0 {
            break (a, count);
        }
    };
    let alpha = algebraic_root(&a, rng.gen_range(0..count))?;
    loop {
        let coeffs: Vec<IntPoly> = (0..=n).map(|_| random_poly(&mut rng, m - 1, bits, false)).collect();
        let raw = BiPoly::new(coeffs);
        if raw.deg() != n {
            continue;
        }
        match AlgPoly::new(alpha.clone(), &raw) {
            Ok(b) if b.is_square_free() == SquareFree::Yes => return Ok(b),
            _ => continue,
        }
    }
}

fn binomial(n: usize, k: usize) -> Integer {
    let mut c = Integer::one();
    for i in 0..k {
        c = c * Integer::from(n - i) / Integer::from(i + 1);
    }
    c
}

/// `m! L_m(x) = sum_k (-1)^k C(m, k) m!/k! x^k`.
pub fn laguerre_poly(m: usize) -> IntPoly {
    let mut c = vec![Integer::zero(); m + 1];
    let mut f = Integer::one(); // m!/k!
    for k in (0..=m).rev() {
        let v = binomial(m, k) * &f;
        c[k] = if k % 2 == 1 { -v } else { v };
        f *= Integer::from(k.max(1));
    }
    IntPoly::new(c)
}

fn smallest_laguerre_root(m: usize) -> Result<crate::algebraic::RealAlgebraic> {
    algebraic_root(&laguerre_poly(m), 0)
}

/// `n! L_n^(alpha)(y)` with `alpha` the smallest root of `L_m`.
pub fn gen_laguerre(m: usize, n: usize) -> Result<AlgPoly> {
    if m < 2 || n < 1 {
        return Err(Error::InvalidParams("laguerre family needs m >= 2, n >= 1".into()));
    }
    let alpha = smallest_laguerre_root(m)?;
    // b_i = (-1)^i C(n, i) prod_{t = i+1}^{n} (x + t)
    let mut coeffs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut p = IntPoly::constant(binomial(n, i));
        for t in i + 1..=n {
            p = &p * &IntPoly::new(vec![Integer::from(t), Integer::one()]);
        }
        coeffs.push(if i % 2 == 1 { -&p } else { p });
    }
    AlgPoly::new(alpha, &BiPoly::new(coeffs))
}

/// `prod_{k=1}^{n} (y - k alpha)` with `alpha` the smallest root of `L_m`.
pub fn gen_wilkinson(m: usize, n: usize) -> Result<AlgPoly> {
    if m < 2 || n < 1 {
        return Err(Error::InvalidParams("wilkinson family needs m >= 2, n >= 1".into()));
    }
    let alpha = smallest_laguerre_root(m)?;
    let mut b = BiPoly::one();
    for k in 1..=n as i64 {
        let factor = BiPoly::new(vec![IntPoly::from_i64s(&[0, -k]), IntPoly::one()]);
        b = &b * &factor;
    }
    AlgPoly::new(alpha, &b)
}

/// `y^n - 2 (alpha^k y - 1)^2` over `A = x^m - a x^(m-1) - 1`, `alpha` in
/// `(a, a + 1)`, `k = floor((m - 1) / 2)`.
pub fn gen_mignotte(m: usize, n: usize, a: i64) -> Result<AlgPoly> {
    if m < 3 || n < 3 || a < 3 {
        return Err(Error::InvalidParams("mignotte family needs m >= 3, n >= 3, a >= 3".into()));
    }
    let mut ac = vec![Integer::zero(); m + 1];
    ac[0] = Integer::from(-1);
    ac[m - 1] = Integer::from(-a);
    ac[m] = Integer::one();
    let alpha = make_algebraic(&IntPoly::new(ac), &Rational::from_integer(a.into()), &Rational::from_integer((a + 1).into()))?;
    let k = (m - 1) / 2;
    let mut coeffs = vec![IntPoly::zero(); n + 1];
    coeffs[0] = IntPoly::from_i64s(&[-2]);
    coeffs[1] = IntPoly::monomial(Integer::from(4), k);
    coeffs[2] = IntPoly::monomial(Integer::from(-2), 2 * k);
    coeffs[n] = &coeffs[n] + &IntPoly::one();
    AlgPoly::new(alpha, &BiPoly::new(coeffs))
}

/// Builds one instance of a family. `seed` and `bits` only affect `Random`.
pub fn generate(family: Family, m: usize, n: usize, bits: u32, seed: u64) -> Result<AlgPoly> {
    match family {
        Family::Random => gen_random(m, n, bits, seed),
        Family::Laguerre => gen_laguerre(m, n),
        Family::Wilkinson => gen_wilkinson(m, n),
        Family::Mignotte => gen_mignotte(m, n, 3),
    }
}

#[derive(Clone, Debug)]
pub struct BenchSpec {
    pub family: Family,
    pub ms: Vec<usize>,
    pub ns: Vec<usize>,
    pub coeff_bits: u32,
    pub seed: u64,
    pub repetitions: usize,
    pub methods: Vec<Method>,
    pub timeout: Option<Duration>,
    /// Leave the timing columns empty, making the output reproducible.
    pub record_times: bool,
}

impl Default for BenchSpec {
    fn default() -> Self {
        BenchSpec {
            family: Family::Random,
            ms: vec![2],
            ns: vec![10],
            coeff_bits: 10,
            seed: 1,
            repetitions: 10,
            methods: Method::ALL.to_vec(),
            timeout: None,
            record_times: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub family: &'static str,
    pub m: usize,
    pub n: usize,
    pub method: &'static str,
    pub runs: usize,
    pub completed: usize,
    pub mean_ms: Option<f64>,
    pub median_ms: Option<f64>,
    /// Root count per completed run, joined by `;` when they differ.
    pub roots: String,
    pub mean_nodes: Option<f64>,
    pub max_depth: u32,
    pub max_precision: u64,
    pub status: &'static str,
    /// Root counts match every other method on the same instances.
    pub agree: bool,
}

/// Seed of repetition `rep` for the random family.
pub fn instance_seed(seed: u64, m: usize, n: usize, rep: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ ((m as u64) << 40) ^ ((n as u64) << 20) ^ rep as u64
}

struct Run {
    ms: f64,
    roots: usize,
    nodes: u64,
    depth: u32,
    precision: u64,
}

/// Runs every method on every instance of the grid. Rows are ordered by
/// `(m, n, method)`; within a group, `agree` is false when two methods
/// report different root counts on the same instance.
pub fn run_benchmark(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    if spec.repetitions == 0 || spec.methods.is_empty() {
        return Err(Error::InvalidParams("need at least one repetition and one method".into()));
    }
    let mut rows = Vec::new();
    for &m in &spec.ms {
        for &n in &spec.ns {
            let instances: Vec<AlgPoly> = (0..spec.repetitions)
                .map(|r| generate(spec.family, m, n, spec.coeff_bits, instance_seed(spec.seed, m, n, r)))
                .collect::<Result<_>>()?;
            // counts[method][rep]
            let mut counts: Vec<Vec<Option<usize>>> = Vec::new();
            let mut group = Vec::new();
            for &method in &spec.methods {
                let mut runs = Vec::new();
                let mut rep_counts = Vec::new();
                let mut timed_out = false;
                for b in &instances {
                    let mut opts = SolveOptions { check_square_free: false, ..Default::default() };
                    if let Some(t) = spec.timeout {
                        opts = opts.with_timeout(t);
                    }
                    let t0 = Instant::now();
                    match solve(b, method, &opts) {
                        Ok(res) => {
                            let ms = t0.elapsed().as_secs_f64() * 1e3;
                            rep_counts.push(Some(res.roots.len()));
                            runs.push(Run {
                                ms,
                                roots: res.roots.len(),
                                nodes: res.stats.nodes,
                                depth: res.stats.max_depth,
                                precision: res.stats.max_precision,
                            });
                        }
                        Err(Error::Timeout) => {
                            timed_out = true;
                            rep_counts.push(None);
                        }
                        Err(e) => return Err(e),
                    }
                }
                counts.push(rep_counts);
                group.push(summarize(spec, m, n, method, instances.len(), &runs, timed_out));
            }
            for (i, row) in group.iter_mut().enumerate() {
                row.agree = counts.iter().all(|other| {
                    other.iter().zip(&counts[i]).all(|(a, b)| a.is_none() || b.is_none() || a == b)
                });
            }
            rows.extend(group);
        }
    }
    Ok(rows)
}

fn summarize(
    spec: &BenchSpec,
    m: usize,
    n: usize,
    method: Method,
    total: usize,
    runs: &[Run],
    timed_out: bool,
) -> BenchRow {
    let k = runs.len();
    let mut times: Vec<f64> = runs.iter().map(|r| r.ms).collect();
    times.sort_by(|a, b| a.total_cmp(b));
    let (mean, median) = if k == 0 || !spec.record_times {
        (None, None)
    } else {
        let median = if k % 2 == 1 { times[k / 2] } else { (times[k / 2 - 1] + times[k / 2]) / 2.0 };
        (Some(times.iter().sum::<f64>() / k as f64), Some(median))
    };
    let mut counts: Vec<usize> = runs.iter().map(|r| r.roots).collect();
    counts.dedup();
    BenchRow {
        family: spec.family.name(),
        m,
        n,
        method: method.name(),
        runs: total,
        completed: k,
        mean_ms: mean,
        median_ms: median,
        roots: counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";"),
        mean_nodes: (k > 0).then(|| runs.iter().map(|r| r.nodes as f64).sum::<f64>() / k as f64),
        max_depth: runs.iter().map(|r| r.depth).max().unwrap_or(0),
        max_precision: runs.iter().map(|r| r.precision).max().unwrap_or(0),
        status: if timed_out { "timeout" } else { "ok" },
        agree: true,
    }
}

/// Writes rows as CSV with a header line.
pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}
