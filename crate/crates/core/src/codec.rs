//! Text format for colorings.
//!
//! ```text
//! palette <r> length <n> encoding <plain|rle>
//! <body>
//! ```
//!
//! A plain body is whitespace-separated color indices; an rle body is
//! whitespace-separated `<value>x<count>` tokens. The canonical writer puts
//! 32 tokens per line separated by single spaces, every line ending in `\n`,
//! and uses maximal runs for rle. Canonical files decode and re-encode
//! byte-for-byte.

use std::fmt::Write as _;

use crate::coloring::Coloring;
use crate::error::{Error, Result};

const TOKENS_PER_LINE: usize = 32;

/// Colorings shorter than this are written in plain encoding by default.
pub const PLAIN_THRESHOLD: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Plain,
    Rle,
}

impl Encoding {
    pub fn as_str(self) -> &'static str {
        match self {
            Encoding::Plain => "plain",
            Encoding::Rle => "rle",
        }
    }

    pub fn default_for(len: usize) -> Encoding {
        if len < PLAIN_THRESHOLD {
            Encoding::Plain
        } else {
            Encoding::Rle
        }
    }
}

/// Maximal runs as `(value, count)`.
pub fn runs(values: &[u32]) -> Vec<(u32, usize)> {
    let mut out: Vec<(u32, usize)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((last, n)) if *last == v => *n += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Single-line rle form, `"0x2 1x2 ..."`.
pub fn rle_string(values: &[u32]) -> String {
    let mut s = String::new();
    for (i, (v, n)) in runs(values).into_iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{v}x{n}").unwrap();
    }
    s
}

/// Inverse of [`rle_string`]; accepts any whitespace between tokens.
pub fn parse_rle_string(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for (col, tok) in tokens(s) {
        let (v, n) = parse_rle_token(tok).map_err(|m| Error::parse(1, col, m))?;
        out.extend(std::iter::repeat(v).take(n));
    }
    Ok(out)
}

fn parse_rle_token(tok: &str) -> std::result::Result<(u32, usize), String> {
    let (v, n) = tok
        .split_once('x')
        .ok_or_else(|| format!("expected <value>x<count>, found {tok:?}"))?;
    let v: u32 = v.parse().map_err(|_| format!("bad color value in {tok:?}"))?;
    let n: usize = n.parse().map_err(|_| format!("bad run count in {tok:?}"))?;
    if n == 0 {
        return Err(format!("run count must be positive in {tok:?}"));
    }
    Ok((v, n))
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let tok = &trimmed[..end];
        let col = offset + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((col, tok))
    })
}

/// Writes the canonical file text.
pub fn encode(coloring: &Coloring, encoding: Encoding) -> String {
    let mut out = format!(
        "palette {} length {} encoding {}\n",
        coloring.palette(),
        coloring.len(),
        encoding.as_str()
    );
    let toks: Vec<String> = match encoding {
        Encoding::Plain => coloring.values().iter().map(|v| v.to_string()).collect(),
        Encoding::Rle => runs(coloring.values())
            .into_iter()
            .map(|(v, n)| format!("{v}x{n}"))
            .collect(),
    };
    for chunk in toks.chunks(TOKENS_PER_LINE) {
        out.push_str(&chunk.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a coloring file, reporting the line and column of the first
/// problem.
pub fn decode(text: &str) -> Result<(Coloring, Encoding)> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((i, l)) => break (i + 1, l),
            None => return Err(Error::parse(1, 1, "missing header line")),
        }
    };
    let (header_line, header_text) = header;
    let htoks: Vec<(usize, &str)> = tokens(header_text).collect();
    let expect = |idx: usize, word: &str| -> Result<()> {
        match htoks.get(idx) {
            Some((_, t)) if *t == word => Ok(()),
            Some((c, t)) => Err(Error::parse(
                header_line,
                *c,
                format!("expected {word:?}, found {t:?}"),
            )),
            None => Err(Error::parse(
                header_line,
                header_text.len() + 1,
                format!("header ends before {word:?}"),
            )),
        }
    };
    let number = |idx: usize, what: &str| -> Result<u64> {
        match htoks.get(idx) {
            Some((c, t)) => t
                .parse()
                .map_err(|_| Error::parse(header_line, *c, format!("expected {what}, found {t:?}"))),
            None => Err(Error::parse(
                header_line,
                header_text.len() + 1,
                format!("header ends before {what}"),
            )),
        }
    };
    expect(0, "palette")?;
    let palette = number(1, "a palette size")?;
    expect(2, "length")?;
    let length = number(3, "a length")?;
    expect(4, "encoding")?;
    let encoding = match htoks.get(5) {
        Some((_, "plain")) => Encoding::Plain,
        Some((_, "rle")) => Encoding::Rle,
        Some((c, t)) => {
            return Err(Error::parse(
                header_line,
                *c,
                format!("unknown encoding {t:?}"),
            ))
        }
        None => {
            return Err(Error::parse(
                header_line,
                header_text.len() + 1,
                "header ends before the encoding",
            ))
        }
    };
    if let Some((c, t)) = htoks.get(6) {
        return Err(Error::parse(header_line, *c, format!("unexpected {t:?} in header")));
    }
    let palette = u32::try_from(palette)
        .map_err(|_| Error::parse(header_line, htoks[1].0, "palette too large"))?;
    let length = usize::try_from(length)
        .map_err(|_| Error::parse(header_line, htoks[3].0, "length too large"))?;
    if palette == 0 && length > 0 {
        return Err(Error::parse(
            header_line,
            htoks[1].0,
            "palette must be at least 1 for a nonempty coloring",
        ));
    }

    let mut values: Vec<u32> = Vec::with_capacity(length.min(1 << 24));
    let mut last_pos = (header_line, header_text.len() + 1);
    for (i, line) in lines {
        let lineno = i + 1;
        for (col, tok) in tokens(line) {
            let (v, n) = match encoding {
                Encoding::Plain => {
                    let v: u32 = tok.parse().map_err(|_| {
                        Error::parse(lineno, col, format!("expected a color index, found {tok:?}"))
                    })?;
                    (v, 1)
                }
                Encoding::Rle => {
                    parse_rle_token(tok).map_err(|m| Error::parse(lineno, col, m))?
                }
            };
            if v >= palette {
                return Err(Error::parse(
                    lineno,
                    col,
                    format!("color {v} is outside palette {palette}"),
                ));
            }
            if values.len() + n > length {
                return Err(Error::parse(
                    lineno,
                    col,
                    format!("body has more than the declared {length} positions"),
                ));
            }
            values.extend(std::iter::repeat(v).take(n));
        }
        last_pos = (lineno, line.len() + 1);
    }
    if values.len() != length {
        return Err(Error::parse(
            last_pos.0,
            last_pos.1,
            format!("body has {} positions, header declares {length}", values.len()),
        ));
    }
    Ok((Coloring::new(palette, values)?, encoding))
}
