//! Plain-text file formats and word rendering.
//!
//! Code file (constant dimension):
//!
//! ```text
//! q n poly k d tag count
//! <k rows of n symbols>   repeated count times
//! ```
//!
//! `poly` is comma-separated, low degree first. Symbols in a row are
//! concatenated digits when `q <= 10` and comma-separated otherwise.
//!
//! Constant weight code file:
//!
//! ```text
//! # field q n poly        optional comment lines
//! N w d count
//! <comma-separated support>   one line per word
//! ```

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::cdc::{ConstantDimensionCode, Provenance};
use crate::error::{Error, Result};
use crate::fdtw::{ConstantWeightCode, CwWord};
use crate::field::FieldContext;
use crate::subspace::Subspace;

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn parse_u64(tok: &str, line: usize, what: &str) -> Result<u64> {
    tok.trim().parse().map_err(|_| Error::format(line, format!("bad {what}: {tok:?}")))
}

/// `q n poly`, the field descriptor used in headers.
pub fn field_spec(field: &FieldContext) -> String {
    format!("{} {} {}", field.q(), field.n(), join(field.poly(), ","))
}

pub fn render_row(q: u32, row: &[u32]) -> String {
    if q <= 10 {
        row.iter().map(|d| char::from_digit(*d, 10).expect("digit")).collect()
    } else {
        join(row, ",")
    }
}

fn parse_row(q: u32, n: usize, text: &str, line: usize) -> Result<Vec<u32>> {
    let row: Vec<u32> = if q <= 10 {
        text.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::format(line, format!("bad symbol {c:?}"))))
            .collect::<Result<_>>()?
    } else {
        text.split(',')
            .map(|t| parse_u64(t, line, "symbol").map(|v| v as u32))
            .collect::<Result<_>>()?
    };
    if row.len() != n {
        return Err(Error::format(line, format!("row has {} symbols, expected {n}", row.len())));
    }
    if let Some(&s) = row.iter().find(|&&s| s >= q) {
        return Err(Error::format(line, format!("symbol {s} out of range for q={q}")));
    }
    Ok(row)
}

pub fn write_cdc(cdc: &ConstantDimensionCode) -> String {
    let mut out = format!(
        "{} {} {} {} {}\n",
        field_spec(cdc.field()),
        cdc.k(),
        cdc.declared_d(),
        cdc.tag(),
        cdc.len()
    );
    for w in cdc.words() {
        for row in w.rows() {
            out.push_str(&render_row(cdc.q(), row));
            out.push('\n');
        }
    }
    out
}

/// Parses a code file. Distances are re-checked when the pair count is at
/// most `pair_cap`; otherwise the code is returned unverified.
pub fn read_cdc(text: &str, pair_cap: u64) -> Result<ConstantDimensionCode> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (hl, header) = lines.next().ok_or_else(|| Error::format(1, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 7 {
        return Err(Error::format(hl, "header must be `q n poly k d tag count`"));
    }
    let q = parse_u64(toks[0], hl, "q")? as u32;
    let n = parse_u64(toks[1], hl, "n")? as usize;
    let poly = toks[2]
        .split(',')
        .map(|t| parse_u64(t, hl, "coefficient").map(|v| v as u32))
        .collect::<Result<Vec<_>>>()?;
    let k = parse_u64(toks[3], hl, "k")? as usize;
    let d = parse_u64(toks[4], hl, "d")? as usize;
    let tag: Provenance = toks[5].parse().map_err(|e: Error| Error::format(hl, e.to_string()))?;
    let count = parse_u64(toks[6], hl, "count")? as usize;
    let field = Arc::new(FieldContext::new(q, n, Some(&poly))?);

    let mut words = Vec::with_capacity(count);
    for _ in 0..count {
        let mut rows = Vec::with_capacity(k);
        let mut first = 0;
        for r in 0..k {
            let (ln, l) = lines.next().ok_or_else(|| Error::format(hl, "file ends early"))?;
            if r == 0 {
                first = ln;
            }
            rows.push(parse_row(q, n, l, ln)?);
        }
        let w = Subspace::from_rref(q, n, rows).map_err(|e| Error::format(first, e.to_string()))?;
        words.push(w);
    }
    if let Some((ln, l)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(Error::format(ln, format!("unexpected trailing content {l:?}")));
    }
    let mut cdc = ConstantDimensionCode::new(field, k, d, words, tag)?;
    cdc.verify(pair_cap)?;
    Ok(cdc)
}

pub fn save_cdc(cdc: &ConstantDimensionCode, path: &Path) -> Result<()> {
    std::fs::write(path, write_cdc(cdc))?;
    Ok(())
}

pub fn load_cdc(path: &Path, pair_cap: u64) -> Result<ConstantDimensionCode> {
    read_cdc(&std::fs::read_to_string(path)?, pair_cap)
}

/// Constant weight code text; `field`, when given, is recorded in a comment.
pub fn write_cw(code: &ConstantWeightCode, field: Option<&FieldContext>) -> String {
    let mut out = String::new();
    if let Some(f) = field {
        writeln!(out, "# field {}", field_spec(f)).unwrap();
    }
    writeln!(out, "{} {} {} {}", code.len(), code.weight(), code.declared_d(), code.size()).unwrap();
    for w in code.words() {
        out.push_str(&emit_support(w));
        out.push('\n');
    }
    out
}

/// Field descriptor from a `# field q n poly` comment, if present.
pub fn cw_field(text: &str) -> Result<Option<FieldContext>> {
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        let Some(rest) = l.strip_prefix('#') else { break };
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if toks.first() == Some(&"field") {
            if toks.len() != 4 {
                return Err(Error::format(i + 1, "field comment must be `# field q n poly`"));
            }
            let q = parse_u64(toks[1], i + 1, "q")? as u32;
            let n = parse_u64(toks[2], i + 1, "n")? as usize;
            let poly = toks[3]
                .split(',')
                .map(|t| parse_u64(t, i + 1, "coefficient").map(|v| v as u32))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(FieldContext::new(q, n, Some(&poly))?));
        }
    }
    Ok(None)
}

pub fn read_cw(text: &str) -> Result<ConstantWeightCode> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).skip_while(|(_, l)| l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| Error::format(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 {
        return Err(Error::format(hl, "header must be `N w d count`"));
    }
    let len = parse_u64(toks[0], hl, "N")? as usize;
    let w = parse_u64(toks[1], hl, "w")? as usize;
    let d = parse_u64(toks[2], hl, "d")? as usize;
    let count = parse_u64(toks[3], hl, "count")? as usize;
    let mut words = Vec::with_capacity(count);
    for _ in 0..count {
        let (ln, l) = lines.next().ok_or_else(|| Error::format(hl, "file ends early"))?;
        let word = parse_support(len, l).map_err(|e| Error::format(ln, e.to_string()))?;
        if word.weight() != w {
            return Err(Error::format(ln, format!("word of weight {} in a code of weight {w}", word.weight())));
        }
        words.push(word);
    }
    if let Some((ln, l)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(Error::format(ln, format!("unexpected trailing content {l:?}")));
    }
    ConstantWeightCode::new(len, w, d, words)
}

pub fn save_cw(code: &ConstantWeightCode, field: Option<&FieldContext>, path: &Path) -> Result<()> {
    std::fs::write(path, write_cw(code, field))?;
    Ok(())
}

pub fn load_cw(path: &Path) -> Result<ConstantWeightCode> {
    read_cw(&std::fs::read_to_string(path)?)
}

pub fn emit_support(word: &CwWord) -> String {
    join(word.support(), ",")
}

pub fn parse_support(len: usize, text: &str) -> Result<CwWord> {
    let text = text.trim();
    if text.is_empty() {
        return CwWord::new(len, Vec::new());
    }
    let support = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("bad position {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    CwWord::new(len, support)
}

/// Bitmap as hex, position 0 in the most significant bit, padded to
/// `⌈N/4⌉` digits.
pub fn emit_hex(word: &CwWord) -> String {
    let mut nibbles = vec![0u8; word.len().div_ceil(4)];
    for &p in word.support() {
        nibbles[p as usize / 4] |= 8 >> (p % 4);
    }
    nibbles.iter().map(|&b| char::from_digit(b as u32, 16).unwrap()).collect()
}

pub fn parse_hex(len: usize, text: &str) -> Result<CwWord> {
    let text = text.trim();
    let text = text.strip_prefix("0x").unwrap_or(text);
    if text.len() != len.div_ceil(4) {
        return Err(Error::InvalidParameter(format!(
            "hex word has {} digits, expected {} for N={len}",
            text.len(),
            len.div_ceil(4)
        )));
    }
    let mut support = Vec::new();
    for (i, c) in text.chars().enumerate() {
        let v = c
            .to_digit(16)
            .ok_or_else(|| Error::InvalidParameter(format!("bad hex digit {c:?}")))?;
        for b in 0..4 {
            if v & (8 >> b) != 0 {
                support.push((4 * i + b) as u32);
            }
        }
    }
    CwWord::new(len, support)
}

/// Parses either form: hex when prefixed with `0x`, supports otherwise.
pub fn parse_word(len: usize, text: &str) -> Result<CwWord> {
    if text.trim().starts_with("0x") {
        parse_hex(len, text)
    } else {
        parse_support(len, text)
    }
}
