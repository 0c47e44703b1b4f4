//! JSON instance files: `{"A": [...], "I": ["lo", "hi"], "B": [[...], ...]}`.
//! Coefficients are ascending; they may be given as strings or integers.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebraic::make_algebraic;
use crate::arith::{fmt_rational, parse_integer, parse_rational, Integer, Rational};
use crate::error::{Error, Result};
use crate::extfield::AlgPoly;
use crate::poly::{BiPoly, IntPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub a: IntPoly,
    pub lo: Rational,
    pub hi: Rational,
    pub b: BiPoly,
}

#[derive(Serialize, Deserialize)]
struct Raw {
    #[serde(rename = "A")]
    a: Vec<Value>,
    #[serde(rename = "I")]
    i: Vec<Value>,
    #[serde(rename = "B")]
    b: Vec<Vec<Value>>,
}

fn int_of(v: &Value) -> Result<Integer> {
    match v {
        Value::String(s) => parse_integer(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_integer(&n.to_string()),
        _ => Err(Error::Parse(format!("expected an integer, got {v}"))),
    }
}

fn rat_of(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

fn poly_of(vs: &[Value]) -> Result<IntPoly> {
    Ok(IntPoly::new(vs.iter().map(int_of).collect::<Result<_>>()?))
}

fn strings(p: &IntPoly) -> Vec<Value> {
    p.coeffs().iter().map(|c| Value::String(c.to_string())).collect()
}

impl Instance {
    pub fn from_json(s: &str) -> Result<Instance> {
        let raw: Raw = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.i.len() != 2 {
            return Err(Error::Parse("\"I\" must hold two endpoints".into()));
        }
        Ok(Instance {
            a: poly_of(&raw.a)?,
            lo: rat_of(&raw.i[0])?,
            hi: rat_of(&raw.i[1])?,
            b: BiPoly::new(raw.b.iter().map(|r| poly_of(r)).collect::<Result<_>>()?),
        })
    }

    pub fn to_json(&self) -> String {
        let raw = Raw {
            a: strings(&self.a),
            i: vec![Value::String(fmt_rational(&self.lo)), Value::String(fmt_rational(&self.hi))],
            b: self.b.coeffs().iter().map(strings).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("instance serializes")
    }

    /// Validates and builds `B_alpha`.
    pub fn to_alg_poly(&self) -> Result<AlgPoly> {
        let alpha = make_algebraic(&self.a, &self.lo, &self.hi)?;
        AlgPoly::new(alpha, &self.b)
    }

    pub fn of_alg_poly(b: &AlgPoly) -> Instance {
        let (lo, hi) = b.alpha().interval();
        Instance { a: b.alpha().poly().clone(), lo: lo.clone(), hi: hi.clone(), b: b.bipoly().clone() }
    }
}
