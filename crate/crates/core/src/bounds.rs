//! Closed-form bounds on root magnitude, separation and resultant size.
//!
//! Every `lg` of an integer parameter is the exact ceiling, so the
//! parameter-only bounds are integers. Bounds computed from a concrete
//! polynomial use exact dyadic upper bounds on logarithms.

use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::arith::{bitsize, fmt_rational, lg_ceil_u64, log2_lower, log2_upper, Integer, Rational};
use crate::error::{Error, Result};
use crate::extfield::AlgPoly;
use crate::poly::{resultant, square_free_part, IntPoly};

/// Size parameters of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceParams {
    /// Degree of `A`.
    pub m: u64,
    /// Degree of `B` in `y`.
    pub n: u64,
    /// Coefficient bitsize of `A`.
    pub tau: u64,
    /// Coefficient bitsize of `B`.
    pub sigma: u64,
    /// Largest `x`-degree of the `b_i`.
    pub eta: u64,
    /// Number of extensions.
    pub ell: u64,
}

impl InstanceParams {
    /// Parameters with `eta = m - 1` and a single extension.
    pub fn new(m: u64, n: u64, tau: u64, sigma: u64) -> Result<InstanceParams> {
        InstanceParams { m, n, tau, sigma, eta: m.saturating_sub(1), ell: 1 }.validated()
    }

    pub fn with_ell(self, ell: u64) -> Result<InstanceParams> {
        InstanceParams { ell, ..self }.validated()
    }

    pub fn validated(self) -> Result<InstanceParams> {
        let bad = |what: &str| Err(Error::InvalidParams(what.to_string()));
        if self.m < 1 {
            return bad("m must be at least 1");
        }
        if self.n < 1 {
            return bad("n must be at least 1");
        }
        if self.tau < 1 || self.sigma < 1 {
            return bad("tau and sigma must be at least 1");
        }
        if self.eta >= self.m {
            return bad("eta must be below m");
        }
        if self.ell < 1 {
            return bad("ell must be at least 1");
        }
        Ok(self)
    }

    /// Measured from an instance; bitsizes count the sign bit.
    pub fn of_instance(b: &AlgPoly) -> InstanceParams {
        InstanceParams {
            m: b.m() as u64,
            n: b.degree().max(1) as u64,
            tau: b.alpha().poly().bitsize(true),
            sigma: b.sigma(),
            eta: b.eta() as u64,
            ell: 1,
        }
    }
}

fn ser_opt<S: Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

/// Upper bounds, as base-2 logarithms where the quantity is a magnitude or
/// separation. Entries a given calculator does not produce are `None`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BoundReport {
    /// `lg` of a bound on the absolute value of every root.
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    pub root_magnitude_log: Option<Rational>,
    /// Upper bound on `-lg` of the root separation.
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    pub neg_log_sep: Option<Rational>,
    /// Upper bound on `-sum lg` of the per-root separations.
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    pub neg_log_sigma: Option<Rational>,
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    pub resultant_degree: Option<Rational>,
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    pub resultant_bitsize: Option<Rational>,
    /// `lg` bound on `|b_i(alpha) / b_n(alpha)|`.
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    pub tau_b: Option<Rational>,
    /// Bound on the aggregate separation of `B_alpha` used for precision budgets.
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    pub sigma_b: Option<Rational>,
    /// Discriminant-based forms (univariate only).
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    pub neg_log_sep_disc: Option<Rational>,
    #[serde(serialize_with = "ser_opt", skip_serializing_if = "Option::is_none")]
    pub neg_log_sigma_disc: Option<Rational>,
}

fn int(x: u64) -> Integer {
    Integer::from(x)
}

fn q(x: Integer) -> Option<Rational> {
    Some(Rational::from_integer(x))
}

fn int_u128(x: u128) -> Integer {
    Integer::from(x)
}

fn lg(x: u64) -> Integer {
    int(lg_ceil_u64(x))
}

const FRAC_BITS: u32 = 16;

/// Bounds for a univariate integer polynomial `f` of degree `p >= 1`:
/// parameter forms in `(p, tau)` with `tau` the unsigned coefficient
/// bitsize, and discriminant forms computed from the square-free part.
pub fn univariate_bounds(f: &IntPoly) -> Result<BoundReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.deg() as u64;
    let tau = f.bitsize(false);
    let mut r = BoundReport {
        root_magnitude_log: Some(log2_upper(&(f.max_abs() * 2u32), FRAC_BITS)),
        ..Default::default()
    };
    if p < 2 {
        return Ok(r);
    }
    let (pi, ti) = (int(p), int(tau));
    r.neg_log_sep = q(&pi * 2u32 * lg(p) + &pi * &ti);
    r.neg_log_sigma = q(&pi * &pi * 3u32 + &pi * &ti * 3u32 + &pi * 4u32 * lg(p));

    let red = square_free_part(f);
    let pr = red.deg() as u64;
    if pr >= 2 {
        let disc = (resultant(&red, &red.derivative()) / red.lc()).abs();
        let norm2_sq: Integer = red.coeffs().iter().map(|c| c * c).sum();
        // lg ||f||_2 = lg(||f||_2^2) / 2
        let lg_norm = log2_upper(&norm2_sq, FRAC_BITS) / Rational::from_integer(int(2));
        let half = Rational::new(Integer::one(), int(2));
        let lg_p = log2_upper(&int(pr), FRAC_BITS);
        let sep = -(&half * log2_lower(&(&disc * 3u32), FRAC_BITS))
            + Rational::new(int(pr + 2), int(2)) * &lg_p
            + Rational::from_integer(int(pr - 1)) * &lg_norm;
        let agg = -(&half * log2_lower(&disc, FRAC_BITS))
            + Rational::new(int(pr * pr - pr - 2), int(2))
            + Rational::from_integer(int(2 * pr - 1)) * &lg_norm;
        r.neg_log_sep_disc = Some(sep);
        r.neg_log_sigma_disc = Some(agg);
    }
    Ok(r)
}

/// `-log2` of the separation bound for `C`.
pub fn indirect_neg_log_sep(p: &InstanceParams) -> u128 {
    let (m, n) = (p.m as u128, p.n as u128);
    m * m * n * ((p.tau + p.sigma) as u128 + 4 * lg_ceil_u64(4 * p.m * p.n) as u128)
}

/// `-log2` of the direct separation bound for `B_alpha`.
pub fn direct_neg_log_sep(p: &InstanceParams) -> u128 {
    let inner = p.sigma * lg_ceil_u64(p.m * p.n) + p.tau + 5 * lg_ceil_u64(p.m);
    12 * (p.m * p.n) as u128 * inner as u128
}

/// Bounds for the square-free polynomial `C` produced by the indirect solver.
pub fn indirect_bounds(p: &InstanceParams) -> Result<BoundReport> {
    let p = p.validated()?;
    if p.ell != 1 {
        return Err(Error::InvalidParams("indirect bounds need ell = 1".into()));
    }
    let (m, n) = (int(p.m), int(p.n));
    let ts = int(p.tau + p.sigma);
    let l = lg(4 * p.m * p.n);
    Ok(BoundReport {
        root_magnitude_log: q(&m * &ts + &m * 2u32 * &l),
        neg_log_sep: q(int_u128(indirect_neg_log_sep(&p))),
        neg_log_sigma: q(&m * &m * &n * 3u32 * (&n + &ts + &l * 6u32)),
        resultant_degree: q(&m * &n),
        resultant_bitsize: q(&m * &ts + &m * 3u32 * &l),
        ..Default::default()
    })
}

/// Bounds for `B_alpha` itself.
pub fn direct_bounds(p: &InstanceParams) -> Result<BoundReport> {
    let p = p.validated()?;
    if p.ell != 1 {
        return Err(Error::InvalidParams("direct bounds need ell = 1".into()));
    }
    let (m, n, tau, sigma) = (int(p.m), int(p.n), int(p.tau), int(p.sigma));
    let lg_mn = lg(p.m * p.n);
    let lg_m = lg(p.m);
    let inner = &sigma * &lg_mn + &tau + &lg_m * 5u32;
    Ok(BoundReport {
        root_magnitude_log: q(&m * (&tau + &sigma + &lg_m * 5u32)),
        neg_log_sep: q(int_u128(direct_neg_log_sep(&p))),
        neg_log_sigma: q(&m * &n * 14u32 * &inner),
        tau_b: q(&m * &sigma * 2u32 + &m * &tau * 2u32 + &m * 6u32 * &lg_m),
        sigma_b: q(&m * &n * 14u32 * (&tau + &sigma * &lg_mn) + &n * lg(p.n)),
        ..Default::default()
    })
}

/// Bounds for the polynomial produced by eliminating `ell` extensions.
pub fn multi_ext_bounds(p: &InstanceParams) -> Result<BoundReport> {
    let p = p.validated()?;
    let (n, tau, sigma, ell) = (int(p.n), int(p.tau), int(p.sigma), int(p.ell));
    let ml: Integer = num_traits::pow(int(p.m), p.ell as usize);
    let l = lg(p.m * p.n * p.ell);
    let t = &ell * &ell * &tau + &sigma;
    Ok(BoundReport {
        root_magnitude_log: q(&ml * (&t + &ell * 2u32 * &l)),
        neg_log_sep: q(&ml * &ml * &n * (&t + &ell * 4u32 * &l)),
        neg_log_sigma: q(&ml * &ml * &n * (&t + &n + &ell * 6u32 * &l)),
        resultant_degree: q(&n * &ml),
        resultant_bitsize: q(&ml * (&t + &ell * 3u32 * &l)),
        ..Default::default()
    })
}

/// Degree and bitsize bounds for `res_x(B, A)`.
pub fn resultant_size_bound(m: u64, eta: u64, n: u64, sigma: u64, tau: u64) -> (u64, Integer) {
    let bits = int(m * sigma + eta * tau) + int(m) * lg(n + 1) + int(m + eta) * lg(m + eta);
    (m * n, bits)
}

/// Bitsize of an integer polynomial as used by [`resultant_size_bound`].
pub fn poly_bitsize(f: &IntPoly) -> u64 {
    f.coeffs().iter().map(|c| bitsize(c, false)).max().unwrap_or(1)
}

/// Bound reports for a concrete instance, keyed by calculator.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceBounds {
    pub params: InstanceParams,
    pub indirect: BoundReport,
    pub direct: BoundReport,
    pub resultant_degree: u64,
    #[serde(serialize_with = "ser_int")]
    pub resultant_bitsize: Integer,
}

fn ser_int<S: Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn instance_bounds(b: &AlgPoly) -> Result<InstanceBounds> {
    let params = InstanceParams::of_instance(b).validated()?;
    let (d, bits) = resultant_size_bound(params.m, params.eta, params.n, params.sigma, params.tau);
    Ok(InstanceBounds {
        params,
        indirect: indirect_bounds(&params)?,
        direct: direct_bounds(&params)?,
        resultant_degree: d,
        resultant_bitsize: bits,
    })
}

/// The integer value of a bound entry; parameter-only bounds are integers.
pub fn as_integer(v: &Option<Rational>) -> Integer {
    let v = v.as_ref().expect("bound present");
    if v.is_integer() {
        v.to_integer()
    } else {
        v.ceil().to_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn params(m: u64, n: u64, tau: u64, sigma: u64) -> InstanceParams {
        InstanceParams::new(m, n, tau, sigma).unwrap()
    }

    #[test]
    fn univariate_examples() {
        let f = IntPoly::from_i64s(&[-2, 0, 1]);
        let r = univariate_bounds(&f).unwrap();
        // 2 ||f||_inf = 4 <= 2^(tau + 1) = 8
        assert_eq!(r.root_magnitude_log, Some(rat(2, 1)));
        assert_eq!(r.neg_log_sep, Some(rat(8, 1)));
        let d = r.neg_log_sep_disc.unwrap();
        assert!(d <= rat(9, 10) && d >= rat(8, 10), "{d}");
        // true separation 2 sqrt 2
        assert!(d >= rat(-3, 2));
    }

    #[test]
    fn indirect_examples() {
        let r = indirect_bounds(&params(2, 4, 2, 2)).unwrap();
        assert_eq!(r.resultant_degree, Some(rat(8, 1)));
        assert_eq!(r.neg_log_sep, Some(rat(384, 1)));
        let r = indirect_bounds(&params(1, 7, 2, 2)).unwrap();
        assert_eq!(r.resultant_degree, Some(rat(7, 1)));
    }

    #[test]
    fn direct_examples() {
        let r = direct_bounds(&params(2, 4, 2, 2)).unwrap();
        assert_eq!(r.neg_log_sep, Some(rat(1248, 1)));
        assert_eq!(r.tau_b, Some(rat(28, 1)));
        assert_eq!(r.root_magnitude_log, Some(rat(18, 1)));
    }

    #[test]
    fn multi_extension_examples() {
        let r = multi_ext_bounds(&params(2, 2, 1, 1).with_ell(2).unwrap()).unwrap();
        assert_eq!(r.neg_log_sep, Some(rat(928, 1)));
        let p = params(3, 5, 2, 2);
        assert_eq!(multi_ext_bounds(&p).unwrap().resultant_degree, indirect_bounds(&p).unwrap().resultant_degree);
        let r = multi_ext_bounds(&params(2, 1, 1, 1).with_ell(3).unwrap()).unwrap();
        assert_eq!(r.resultant_degree, Some(rat(8, 1)));
    }

    #[test]
    fn resultant_size_examples() {
        assert_eq!(resultant_size_bound(2, 1, 4, 2, 2), (8, Integer::from(18)));
        // single linear A: sigma + lg(n + 1)
        assert_eq!(resultant_size_bound(1, 0, 4, 3, 5), (4, Integer::from(3 + 3)));
        let r = IntPoly::from_i64s(&[9, 0, 0, 0, -6, 0, 0, 0, 1]);
        assert_eq!(poly_bitsize(&r), 4);
        assert!(poly_bitsize(&r) <= 18);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(InstanceParams::new(0, 1, 1, 1).is_err());
        let p = InstanceParams { eta: 3, ..params(3, 1, 1, 1) };
        assert!(p.validated().is_err());
        assert!(indirect_bounds(&params(2, 2, 1, 1).with_ell(2).unwrap()).is_err());
    }

    #[test]
    fn monotone_in_each_parameter() {
        let base = params(3, 4, 5, 6);
        let bump = |f: &dyn Fn(&mut InstanceParams)| {
            let mut p = base;
            f(&mut p);
            p
        };
        let variants = [
            bump(&|p| p.m += 1),
            bump(&|p| p.n += 1),
            bump(&|p| p.tau += 1),
            bump(&|p| p.sigma += 1),
        ];
        for v in variants {
            for (a, b) in [
                (indirect_bounds(&base).unwrap(), indirect_bounds(&v).unwrap()),
                (direct_bounds(&base).unwrap(), direct_bounds(&v).unwrap()),
                (multi_ext_bounds(&base).unwrap(), multi_ext_bounds(&v).unwrap()),
            ] {
                assert!(a.neg_log_sep <= b.neg_log_sep);
                assert!(a.neg_log_sigma <= b.neg_log_sigma);
                assert!(a.root_magnitude_log <= b.root_magnitude_log);
            }
        }
        let e2 = multi_ext_bounds(&base.with_ell(2).unwrap()).unwrap();
        assert!(multi_ext_bounds(&base).unwrap().neg_log_sep <= e2.neg_log_sep);
    }
}
