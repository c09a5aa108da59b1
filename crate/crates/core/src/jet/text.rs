//! Text and JSON forms of jets.
//!
//! The compact text form is `source,target;c1,c2,…`. Scalars are rationals
//! (`3/2`), Gaussian rationals (`1/2-3i`) or floats (`0.25+1e-3i`).

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{jet_compose, jet_invert, Jet, JetError};
use crate::algebra::field::{Field, Q};
use crate::algebra::quad::Quadratic;

/// Splits `a±bi` into the real text and the imaginary coefficient text.
fn split_complex(s: &str) -> (Option<&str>, Option<&str>) {
    let Some(body) = s.strip_suffix('i') else { return (Some(s), None) };
    let bytes = body.as_bytes();
    let mut cut = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx];
        if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            cut = Some(idx);
            break;
        }
    }
    match cut {
        Some(i) => (Some(&body[..i]), Some(&body[i..])),
        None => (None, Some(body)),
    }
}

fn imag_text(s: &str) -> String {
    match s {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.trim_start_matches('+').to_string(),
    }
}

fn parse_rational(s: &str) -> Result<Q, JetError> {
    let s = s.trim();
    let bad = || JetError::Parse(format!("not a rational number: '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Exact rational or Gaussian-rational scalar.
pub fn parse_scalar_exact(s: &str) -> Result<Quadratic, JetError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    match split_complex(&s) {
        (Some(re), None) => Ok(Quadratic::rational(parse_rational(re)?)),
        (re, Some(im)) => {
            let re = match re {
                Some(r) => parse_rational(r)?,
                None => <Q as Field>::zero(),
            };
            Ok(Quadratic::gaussian(re, parse_rational(&imag_text(im))?))
        }
        (None, None) => Err(JetError::Parse("empty scalar".into())),
    }
}

pub fn parse_scalar_float(s: &str) -> Result<Complex64, JetError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let num = |t: &str| -> Result<f64, JetError> {
        if let Ok(q) = parse_rational(t) {
            return Ok(crate::algebra::field::q_to_f64(&q));
        }
        t.parse::<f64>().map_err(|_| JetError::Parse(format!("not a number: '{t}'")))
    };
    match split_complex(&s) {
        (Some(re), None) => Ok(Complex64::new(num(re)?, 0.0)),
        (re, Some(im)) => {
            let re = match re {
                Some(r) => num(r)?,
                None => 0.0,
            };
            Ok(Complex64::new(re, num(&imag_text(im))?))
        }
        (None, None) => Err(JetError::Parse("empty scalar".into())),
    }
}

fn looks_float(s: &str) -> bool {
    s.contains(['.', 'e', 'E', 'n', 'N'])
}

fn fmt_float(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// A jet with exact (Gaussian-rational) or float entries. Mixed operations
/// promote to float.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyJet {
    Exact(Jet<Quadratic>),
    Float(Jet<Complex64>),
}

/// JSON shape `{source, target, coeffs, exact}` with scalars as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetJson {
    pub source: String,
    pub target: String,
    pub coeffs: Vec<String>,
    pub exact: bool,
}

impl AnyJet {
    pub fn is_exact(&self) -> bool {
        matches!(self, AnyJet::Exact(_))
    }

    pub fn to_float(&self) -> Jet<Complex64> {
        match self {
            AnyJet::Exact(j) => j.map(Quadratic::to_complex),
            AnyJet::Float(j) => j.clone(),
        }
    }

    fn from_parts(source: &str, target: &str, coeffs: &[&str], exact: bool) -> Result<Self, JetError> {
        if exact {
            let c = coeffs.iter().map(|s| parse_scalar_exact(s)).collect::<Result<Vec<_>, _>>()?;
            Ok(AnyJet::Exact(Jet::new(parse_scalar_exact(source)?, parse_scalar_exact(target)?, c)?))
        } else {
            let c = coeffs.iter().map(|s| parse_scalar_float(s)).collect::<Result<Vec<_>, _>>()?;
            Ok(AnyJet::Float(Jet::new(parse_scalar_float(source)?, parse_scalar_float(target)?, c)?))
        }
    }

    /// Parses `source,target;c1,c2,…`.
    pub fn parse(text: &str) -> Result<Self, JetError> {
        let (head, tail) = text.split_once(';').unwrap_or((text, ""));
        let (source, target) = head
            .split_once(',')
            .ok_or_else(|| JetError::Parse(format!("expected 'source,target;c1,…', got '{text}'")))?;
        let coeffs: Vec<&str> = if tail.trim().is_empty() { vec![] } else { tail.split(',').collect() };
        let exact = !looks_float(text);
        Self::from_parts(source, target, &coeffs, exact)
    }

    pub fn to_text(&self) -> String {
        let (s, t, c) = self.strings();
        format!("{s},{t};{}", c.join(","))
    }

    fn strings(&self) -> (String, String, Vec<String>) {
        match self {
            AnyJet::Exact(j) => (j.source().to_string(), j.target().to_string(), j.coeffs().iter().map(|x| x.to_string()).collect()),
            AnyJet::Float(j) => (fmt_float(j.source()), fmt_float(j.target()), j.coeffs().iter().map(fmt_float).collect()),
        }
    }

    pub fn to_json(&self) -> JetJson {
        let (source, target, coeffs) = self.strings();
        JetJson { source, target, coeffs, exact: self.is_exact() }
    }

    pub fn from_json(j: &JetJson) -> Result<Self, JetError> {
        let c: Vec<&str> = j.coeffs.iter().map(String::as_str).collect();
        Self::from_parts(&j.source, &j.target, &c, j.exact)
    }

    pub fn compose(g: &AnyJet, f: &AnyJet) -> Result<AnyJet, JetError> {
        match (g, f) {
            (AnyJet::Exact(g), AnyJet::Exact(f)) => Ok(AnyJet::Exact(jet_compose(g, f)?)),
            _ => Ok(AnyJet::Float(jet_compose(&g.to_float(), &f.to_float())?)),
        }
    }

    pub fn invert(&self) -> Result<AnyJet, JetError> {
        match self {
            AnyJet::Exact(j) => Ok(AnyJet::Exact(jet_invert(j)?)),
            AnyJet::Float(j) => Ok(AnyJet::Float(jet_invert(j)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qi};

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar_exact("3/2").unwrap(), Quadratic::rational(q(3, 2)));
        assert_eq!(parse_scalar_exact("1/2-3i").unwrap(), Quadratic::gaussian(q(1, 2), qi(-3)));
        assert_eq!(parse_scalar_exact("-i").unwrap(), Quadratic::gaussian(qi(0), qi(-1)));
        assert_eq!(parse_scalar_float("1e-3+2.5i").unwrap(), Complex64::new(1e-3, 2.5));
        assert_eq!(parse_scalar_float("-2e+1").unwrap(), Complex64::new(-20.0, 0.0));
        assert!(parse_scalar_exact("1/0").is_err());
    }

    #[test]
    fn text_round_trip_and_compose() {
        let f = AnyJet::parse("0,0;2,1").unwrap();
        let g = AnyJet::parse("0,0;3,1").unwrap();
        assert_eq!(AnyJet::compose(&g, &f).unwrap().to_text(), "0,0;6,7");
        assert_eq!(f.invert().unwrap().to_text(), "0,0;1/2,-1/8");
        let z = AnyJet::parse("i,1/2;1-i,3").unwrap();
        assert_eq!(AnyJet::parse(&z.to_text()).unwrap(), z);
    }

    #[test]
    fn mixed_promotes_to_float() {
        let f = AnyJet::parse("0,0;2,1").unwrap();
        let g = AnyJet::parse("0.0,0;3,1").unwrap();
        let h = AnyJet::compose(&g, &f).unwrap();
        assert!(!h.is_exact());
        assert_eq!(h.to_text(), "0,0;6,7");
    }

    #[test]
    fn json_round_trip() {
        let f = AnyJet::parse("1,2;1/3,-4,5i").unwrap();
        let j = f.to_json();
        assert_eq!(AnyJet::from_json(&j).unwrap(), f);
        assert!(j.exact);
    }
}
