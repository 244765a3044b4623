//! Parsers for command-line values.

use std::path::Path;

use num_complex::Complex64;
use wkb_core::json::parse_series;
use wkb_core::{GaussRat, PuiseuxSeries};

use crate::CliError;

/// `re`, `re,im` or polar `r@theta`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {:?} in {:?}", t, s));
    let z = if let Some((r, t)) = s.split_once('@') {
        Complex64::from_polar(num(r)?, num(t)?)
    } else if let Some((re, im)) = s.split_once(',') {
        Complex64::new(num(re)?, num(im)?)
    } else {
        Complex64::new(num(s)?, 0.0)
    };
    if !z.is_finite() {
        return Err(format!("{:?} is not finite", s));
    }
    Ok(z)
}

/// `a,b` as two unsigned integers.
pub fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b, got {:?}", s))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad integer {:?}", t));
    Ok((n(a)?, n(b)?))
}

/// Inline JSON or a path to a JSON file.
pub fn load_series(arg: &str) -> Result<PuiseuxSeries<GaussRat>, CliError> {
    let t = arg.trim_start();
    let text = if t.starts_with('[') || t.starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Usage(format!("cannot read series file {:?}: {}", arg, e)))?
    };
    Ok(parse_series(&text)?)
}

pub fn load_optional(arg: &Option<String>) -> Result<PuiseuxSeries<GaussRat>, CliError> {
    match arg {
        Some(a) => load_series(a),
        None => Ok(PuiseuxSeries::zero()),
    }
}

/// Polyline nodes from a JSON file: `[[re, im], …]`.
pub fn load_polyline(path: &str) -> Result<Vec<Complex64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read contour file {:?}: {}", path, e)))?;
    let nodes: Vec<(f64, f64)> =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed contour file: {}", e)))?;
    Ok(nodes.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("0.5,-2").unwrap(), Complex64::new(0.5, -2.0));
        let p = parse_complex("2@1.5707963267948966").unwrap();
        assert!((p - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        assert!(parse_complex("x").is_err());
        assert_eq!(parse_pair("12,3").unwrap(), (12, 3));
    }
}
