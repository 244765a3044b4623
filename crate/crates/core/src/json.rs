//! JSON form of series:
//! `{"min_exp": "p/q", "trunc": "p/q" | "inf", "coeffs": [["p/q", [re, im]], …]}`.
//! A bare coefficient list is accepted on input as an exact series.

use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::coeff::{big_to_f64, format_rational, parse_rational, Coeff, GaussRat};
use crate::error::{Result, WkbError};
use crate::series::{Exp, PuiseuxSeries};

/// Coefficients with a JSON representation.
pub trait JsonCoeff: Coeff {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn bad(msg: impl Into<String>) -> WkbError {
    WkbError::InvalidInput(msg.into())
}

fn rational_of(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| bad(format!("bad rational {:?}", s))),
        Value::Number(n) => parse_rational(&n.to_string()).ok_or_else(|| bad(format!("bad number {}", n))),
        _ => Err(bad(format!("expected a number, got {}", v))),
    }
}

fn pair(v: &Value) -> Result<(&Value, &Value)> {
    match v {
        Value::Array(a) if a.len() == 2 => Ok((&a[0], &a[1])),
        Value::Array(a) if a.len() == 1 => Ok((&a[0], &Value::Null)),
        _ => Err(bad(format!("expected [re, im], got {}", v))),
    }
}

impl JsonCoeff for GaussRat {
    fn to_json(&self) -> Value {
        json!([format_rational(&self.re), format_rational(&self.im)])
    }
    fn from_json(v: &Value) -> Result<Self> {
        let (re, im) = pair(v)?;
        let im = if im.is_null() { BigRational::from_integer(0.into()) } else { rational_of(im)? };
        Ok(GaussRat::new(rational_of(re)?, im))
    }
}

impl JsonCoeff for Complex64 {
    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self> {
        let (re, im) = pair(v)?;
        let im = if im.is_null() { 0.0 } else { big_to_f64(&rational_of(im)?) };
        Ok(Complex64::new(big_to_f64(&rational_of(re)?), im))
    }
}

fn exp_string(e: Exp) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

fn exp_of(v: &Value) -> Result<Exp> {
    let r = rational_of(v)?;
    let n: i64 = r.numer().try_into().map_err(|_| bad("exponent too large"))?;
    let d: i64 = r.denom().try_into().map_err(|_| bad("exponent too large"))?;
    Ok(Exp::new(n, d))
}

pub fn series_to_json<C: JsonCoeff>(s: &PuiseuxSeries<C>) -> Value {
    let coeffs: Vec<Value> = s.terms().iter().map(|(e, c)| json!([exp_string(*e), c.to_json()])).collect();
    json!({
        "min_exp": exp_string(s.min_exp()),
        "trunc": s.trunc_order().map_or_else(|| "inf".to_string(), exp_string),
        "coeffs": coeffs,
    })
}

pub fn series_from_json<C: JsonCoeff>(v: &Value) -> Result<PuiseuxSeries<C>> {
    let (list, trunc) = match v {
        Value::Array(a) => (a, None),
        Value::Object(o) => {
            let list = o.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing coeffs"))?;
            let trunc = match o.get("trunc") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) if s == "inf" => None,
                Some(t) => Some(exp_of(t)?),
            };
            (list, trunc)
        }
        _ => return Err(bad("series must be an object or a list of terms")),
    };
    let mut terms = Vec::with_capacity(list.len());
    for t in list {
        let (e, c) = pair(t)?;
        terms.push((exp_of(e)?, C::from_json(c)?));
    }
    PuiseuxSeries::from_terms(terms, trunc)
}

/// Parse inline JSON text.
pub fn parse_series<C: JsonCoeff>(text: &str) -> Result<PuiseuxSeries<C>> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("malformed series JSON: {}", e)))?;
    series_from_json(&v)
}
