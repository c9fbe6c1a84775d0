//! Text descriptors: complex literals `re+imi` and map lines such as
//! `henon d=2 a=1+0i c=-10+0i` or `poly [c0,c1,c2] a=0.3+0i`.

use crate::map::{HenonMap, MapError};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("bad complex literal `{0}`")]
    Complex(String),
    #[error("bad map descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Parses `1`, `-2.5`, `3i`, `-i`, `1+0i`, `1e-3-2.5e2i`.
pub fn parse_complex(s: &str) -> Result<Complex64, ParseError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || ParseError::Complex(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err());
    };
    // Split at the last sign that is not leading and not part of an exponent.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re_s, im_s) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_s {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| err())?,
    };
    let re = re_s.parse::<f64>().map_err(|_| err())?;
    let z = Complex64::new(re, im);
    if z.is_finite() {
        Ok(z)
    } else {
        Err(err())
    }
}

/// Inverse of [`parse_complex`]: `re+imi` with shortest round-trip digits.
pub fn format_complex(z: Complex64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im.is_sign_negative() {
        format!("{}{}i", z.re, im)
    } else {
        format!("{}+{}i", z.re, im)
    }
}

impl FromStr for HenonMap {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |m: &str| ParseError::Descriptor(format!("{m} in `{s}`"));
        if let Some(rest) = s.strip_prefix("henon") {
            let (mut d, mut a, mut c) = (None, None, None);
            for tok in rest.split_whitespace() {
                let (k, v) = tok.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                match k {
                    "d" => d = Some(v.parse::<usize>().map_err(|_| bad("bad degree"))?),
                    "a" => a = Some(parse_complex(v)?),
                    "c" => c = Some(parse_complex(v)?),
                    _ => return Err(bad("unknown key")),
                }
            }
            let d = d.unwrap_or(2);
            let a = a.ok_or_else(|| bad("missing a"))?;
            let c = c.ok_or_else(|| bad("missing c"))?;
            Ok(HenonMap::normal(d, a, c)?)
        } else if let Some(rest) = s.strip_prefix("poly") {
            let rest = rest.trim();
            let open = rest.find('[').ok_or_else(|| bad("missing ["))?;
            let close = rest.find(']').ok_or_else(|| bad("missing ]"))?;
            let coeffs = rest[open + 1..close]
                .split(',')
                .map(parse_complex)
                .collect::<Result<Vec<_>, _>>()?;
            let tail = rest[close + 1..].trim();
            let a_s = tail.strip_prefix("a=").ok_or_else(|| bad("missing a="))?;
            Ok(HenonMap::new(coeffs, parse_complex(a_s)?)?)
        } else {
            Err(bad("expected `henon` or `poly`"))
        }
    }
}

impl fmt::Display for HenonMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normal_form_c() {
            Some(c) => write!(f, "henon d={} a={} c={}", self.degree(), format_complex(self.a()), format_complex(c)),
            None => {
                let cs: Vec<String> = self.poly().coeffs.iter().map(|&c| format_complex(c)).collect();
                write!(f, "poly [{}] a={}", cs.join(","), format_complex(self.a()))
            }
        }
    }
}
