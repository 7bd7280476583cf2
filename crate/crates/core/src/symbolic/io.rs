//! `.st3` symbolic tensors and exact transform files.
//!
//! `.st3` is JSON:
//!
//! ```json
//! {"dims": [2, 2, 2],
//!  "entries": [{"num": ["0", "1"], "den": ["1", "1", "1/2", "1/6"]}, ...]}
//! ```
//!
//! Entries are slice-major then row-major. Coefficient lists are ascending in
//! degree; tokens are integers or `a/b`. An empty or omitted `den` means 1.
//!
//! Exact transforms use the `.mat` header with kind `rational` (or `real`,
//! whose decimal tokens are read exactly): `mat <p> rational` followed by
//! `p*p` tokens row-major.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::SymMatrix;
use super::poly::Poly;
use super::ratfun::RatFun;
use super::tensor::{SymTensor3, SymTransform};
use crate::error::{Error, Result};
use crate::io::Tokens;

#[derive(Serialize, Deserialize)]
struct Doc {
    dims: [usize; 3],
    entries: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    num: Vec<String>,
    #[serde(default, skip_serializing_if = "is_one_list")]
    den: Vec<String>,
}

fn is_one_list(v: &[String]) -> bool {
    v.len() == 1 && v[0] == "1"
}

/// Parses `7`, `-3/4` or a plain decimal such as `0.125` exactly.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    let tok = tok.trim();
    if let Some((n, d)) = tok.split_once('/') {
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n.parse().ok()?, d));
    }
    if let Some((int, frac)) = tok.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        if !int.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{int}{frac}").parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(digits, scale);
        return Some(if neg { -v } else { v });
    }
    Some(BigRational::from_integer(tok.parse().ok()?))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn poly_from_tokens(tokens: &[String], line: usize) -> Result<Poly> {
    tokens
        .iter()
        .map(|t| {
            parse_rational(t).ok_or_else(|| Error::Parse {
                line,
                msg: format!("invalid coefficient `{t}`"),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Poly::from_coeffs)
}

fn poly_tokens(p: &Poly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(format_rational).collect()
}

pub fn parse_st3(text: &str) -> Result<SymTensor3> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let [m, n, p] = doc.dims;
    if m == 0 || n == 0 || p == 0 {
        return Err(Error::Parse {
            line: 1,
            msg: "dimensions must be positive".into(),
        });
    }
    if doc.entries.len() != m * n * p {
        return Err(Error::Parse {
            line: 1,
            msg: format!(
                "{m}x{n}x{p} tensor needs {} entries, found {}",
                m * n * p,
                doc.entries.len()
            ),
        });
    }
    let entries = doc
        .entries
        .iter()
        .map(|e| {
            let num = poly_from_tokens(&e.num, 1)?;
            let den = if e.den.is_empty() {
                Poly::one()
            } else {
                poly_from_tokens(&e.den, 1)?
            };
            RatFun::new(num, den)
        })
        .collect::<Result<Vec<_>>>()?;
    SymTensor3::from_vec(m, n, p, entries)
}

pub fn format_st3(a: &SymTensor3) -> String {
    let (m, n, p) = a.dims();
    let doc = Doc {
        dims: [m, n, p],
        entries: a
            .entries()
            .iter()
            .map(|e| Entry {
                num: poly_tokens(e.num()),
                den: poly_tokens(e.den()),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_sym_mat(text: &str) -> Result<SymTransform> {
    let mut tok = Tokens::new(text);
    tok.expect("mat")?;
    let p = tok.usize("p")?;
    let line = tok.line();
    match tok.next("kind")? {
        "rational" | "real" => {}
        other => {
            return Err(Error::Parse {
                line,
                msg: format!("exact transforms must be `rational` or `real`, found `{other}`"),
            })
        }
    }
    let mut rows = vec![Vec::with_capacity(p); p];
    for row in rows.iter_mut() {
        for _ in 0..p {
            let line = tok.line();
            let t = tok.next("entry")?;
            row.push(parse_rational(t).ok_or_else(|| Error::Parse {
                line,
                msg: format!("invalid rational `{t}`"),
            })?);
        }
    }
    tok.finish()?;
    SymTransform::from_rational_rows(&rows)
}

pub fn format_sym_mat(m: &SymMatrix) -> String {
    let mut out = format!("mat {} rational\n", m.nrows());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format_rational(&m.get(i, j).as_constant().unwrap_or_else(BigRational::zero)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_st3(path: impl AsRef<Path>) -> Result<SymTensor3> {
    parse_st3(&std::fs::read_to_string(path)?)
}

pub fn write_st3(a: &SymTensor3, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, format_st3(a))?)
}

pub fn read_sym_transform(path: impl AsRef<Path>) -> Result<SymTransform> {
    parse_sym_mat(&std::fs::read_to_string(path)?)
}
