//! Plain-text formats for numeric tensors (`.t3`) and transforms (`.mat`).
//!
//! ```text
//! t3 <m> <n> <p> <real|complex>
//! <m*n*p entries, slice-major then row-major; complex entries are "re im">
//!
//! mat <p> <real|complex>
//! <p*p entries, row-major>
//! ```
//!
//! Values are written with 17 significant digits, one entry per line, so a
//! write/read cycle is bit-exact. Lines starting with `#` are ignored on read.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{CMatrix, Tensor3};
use crate::transform::Transform;

/// Formats a float with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Real,
    Complex,
}

/// Whitespace tokens paired with their 1-based line numbers.
pub(crate) struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'))
            .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)))
            .collect();
        Self { items, pos: 0 }
    }

    pub(crate) fn line(&self) -> usize {
        self.items
            .get(self.pos)
            .or_else(|| self.items.last())
            .map_or(1, |(l, _)| *l)
    }

    pub(crate) fn next(&mut self, what: &str) -> Result<&'a str> {
        let line = self.line();
        let tok = self.items.get(self.pos).ok_or_else(|| Error::Parse {
            line,
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(tok.1)
    }

    pub(crate) fn expect(&mut self, word: &str) -> Result<()> {
        let line = self.line();
        let tok = self.next(word)?;
        if tok != word {
            return Err(Error::Parse {
                line,
                msg: format!("expected `{word}`, found `{tok}`"),
            });
        }
        Ok(())
    }

    pub(crate) fn usize(&mut self, what: &str) -> Result<usize> {
        let line = self.line();
        let tok = self.next(what)?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("invalid {what} `{tok}`"),
        })
    }

    fn f64(&mut self) -> Result<f64> {
        let line = self.line();
        let tok = self.next("number")?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("invalid number `{tok}`"),
        })
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.pos < self.items.len() {
            return Err(Error::Parse {
                line: self.line(),
                msg: format!("trailing token `{}`", self.items[self.pos].1),
            });
        }
        Ok(())
    }
}

fn kind(tokens: &mut Tokens<'_>) -> Result<Kind> {
    let line = tokens.line();
    match tokens.next("kind")? {
        "real" => Ok(Kind::Real),
        "complex" => Ok(Kind::Complex),
        other => Err(Error::Parse {
            line,
            msg: format!("kind must be `real` or `complex`, found `{other}`"),
        }),
    }
}

fn entries(tokens: &mut Tokens<'_>, kind: Kind, count: usize) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let re = tokens.f64()?;
        let im = if kind == Kind::Complex { tokens.f64()? } else { 0.0 };
        out.push(Complex64::new(re, im));
    }
    Ok(out)
}

fn push_entry(out: &mut String, z: Complex64, kind: Kind) {
    match kind {
        Kind::Real => writeln!(out, "{}", fmt_f64(z.re)),
        Kind::Complex => writeln!(out, "{} {}", fmt_f64(z.re), fmt_f64(z.im)),
    }
    .expect("writing to a String cannot fail");
}

pub fn parse_t3(text: &str) -> Result<Tensor3> {
    let mut tok = Tokens::new(text);
    tok.expect("t3")?;
    let m = tok.usize("m")?;
    let n = tok.usize("n")?;
    let p = tok.usize("p")?;
    if m == 0 || n == 0 || p == 0 {
        return Err(Error::Parse {
            line: 1,
            msg: "dimensions must be positive".into(),
        });
    }
    let k = kind(&mut tok)?;
    let data = entries(&mut tok, k, m * n * p)?;
    tok.finish()?;
    Tensor3::from_vec(m, n, p, data)
}

pub fn format_t3(a: &Tensor3) -> String {
    let (m, n, p) = a.dims();
    let k = if a.is_real() { Kind::Real } else { Kind::Complex };
    let mut out = format!("t3 {m} {n} {p} {}\n", if k == Kind::Real { "real" } else { "complex" });
    for &z in a.as_slice() {
        push_entry(&mut out, z, k);
    }
    out
}

pub fn parse_mat(text: &str) -> Result<CMatrix> {
    let mut tok = Tokens::new(text);
    tok.expect("mat")?;
    let p = tok.usize("p")?;
    if p == 0 {
        return Err(Error::Parse {
            line: 1,
            msg: "p must be positive".into(),
        });
    }
    let k = kind(&mut tok)?;
    let data = entries(&mut tok, k, p * p)?;
    tok.finish()?;
    Ok(CMatrix::from_row_slice(p, p, &data))
}

pub fn format_mat(m: &CMatrix) -> String {
    let real = m.iter().all(|z| z.im == 0.0);
    let k = if real { Kind::Real } else { Kind::Complex };
    let mut out = format!("mat {} {}\n", m.nrows(), if real { "real" } else { "complex" });
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            push_entry(&mut out, m[(i, j)], k);
        }
    }
    out
}

pub fn read_t3(path: impl AsRef<Path>) -> Result<Tensor3> {
    parse_t3(&std::fs::read_to_string(path)?)
}

pub fn write_t3(a: &Tensor3, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, format_t3(a))?)
}

pub fn read_transform(path: impl AsRef<Path>) -> Result<Transform> {
    Transform::new(parse_mat(&std::fs::read_to_string(path)?)?)
}

pub fn write_transform(t: &Transform, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, format_mat(t.matrix()))?)
}

/// Flat `key value` report, one pair per line.
pub fn format_report<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        writeln!(out, "{k} {}", fmt_f64(v)).expect("writing to a String cannot fail");
    }
    out
}
