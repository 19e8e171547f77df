//! Line-oriented syntax for groups, words, elements and endomorphism files.
//!
//! ```text
//! # F3 witness
//! group free n=2 m=1
//! endo type1
//! phi x1 = x1
//! phi x2 = x2
//! Q = [[3]]
//! P = [[1],[0]]
//! fixphi = all
//! ```
//!
//! A first-kind block may add `phiinv x<i> = <word>` lines (a known inverse
//! of `φ`) and `fixphi = all | [w1, w2, …]` (the fixed subgroup of `φ`).
//! A second-kind block has `z = <word>`, `l = [..]`, `h = [..]`, `Q`, `P`.
//! Words are products of `x<k>`, `x<k>^<e>`, `X<k>` (`= x<k>^-1`),
//! parenthesised words with exponents, and `1`; factors may be separated by
//! spaces or `*`.

use crate::error::{Error, Result};
use crate::freegrp::{FreeHomo, FreeWord};
use crate::prodgrp::{AmbientSpec, EndoType1, EndoType2, Endomorphism, FixPhi, ProdElement};
use crate::{Int, IntMatrix};
use std::fmt::Write as _;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

struct WordParser<'a> {
    s: &'a [u8],
    pos: usize,
    rank: usize,
}

impl WordParser<'_> {
    fn skip(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_whitespace() || self.s[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| perr(format!("expected an integer at offset {}", start)))
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip();
            self.number()
        } else {
            Ok(1)
        }
    }

    fn word(&mut self, nested: bool) -> Result<FreeWord> {
        let mut acc = FreeWord::identity();
        loop {
            self.skip();
            let factor = match self.peek() {
                None => break,
                Some(b')') if nested => break,
                Some(c @ (b'x' | b'X')) => {
                    self.pos += 1;
                    let k = self.number()?;
                    if k <= 0 || k as usize > self.rank {
                        return Err(Error::GeneratorOutOfRange {
                            index: k.max(0) as usize,
                            rank: self.rank,
                        });
                    }
                    let g = FreeWord::gen(k as usize);
                    let g = if c == b'X' { g.inverse() } else { g };
                    g.pow(self.exponent()?)
                }
                Some(b'1') => {
                    self.pos += 1;
                    FreeWord::identity().pow(self.exponent()?)
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.word(true)?;
                    if self.peek() != Some(b')') {
                        return Err(perr("unbalanced parenthesis"));
                    }
                    self.pos += 1;
                    inner.pow(self.exponent()?)
                }
                Some(c) => {
                    return Err(perr(format!(
                        "unexpected '{}' at offset {}",
                        c as char, self.pos
                    )))
                }
            };
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }
}

/// Parses a word over `x1..x<rank>`.
pub fn parse_word(s: &str, rank: usize) -> Result<FreeWord> {
    let mut p = WordParser {
        s: s.as_bytes(),
        pos: 0,
        rank,
    };
    let w = p.word(false)?;
    if p.pos != p.s.len() {
        return Err(perr(format!("trailing input in word '{}'", s)));
    }
    Ok(w)
}

fn parse_int(s: &str) -> Result<Int> {
    s.trim()
        .parse()
        .map_err(|_| perr(format!("bad integer '{}'", s.trim())))
}

/// `[1,-2,3]`; `[]` is the empty vector.
pub fn parse_vector(s: &str) -> Result<Vec<Int>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| perr(format!("expected [..], got '{}'", s.trim())))?;
    if body.is_empty() {
        return Ok(vec![]);
    }
    body.split(',').map(parse_int).collect()
}

/// `[[1,0],[0,1]]`; `[]` has no rows and `[[],[]]` has no columns.
pub fn parse_matrix(s: &str) -> Result<IntMatrix> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| perr(format!("expected [[..],..], got '{}'", s.trim())))?;
    if body.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    let mut rows = Vec::new();
    let mut rest = body;
    loop {
        let inner = rest
            .strip_prefix('[')
            .ok_or_else(|| perr(format!("expected a row in '{}'", s.trim())))?;
        let close = inner
            .find(']')
            .ok_or_else(|| perr(format!("unclosed row in '{}'", s.trim())))?;
        rows.push(parse_vector(&format!("[{}]", &inner[..close]))?);
        rest = &inner[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| perr(format!("expected ',' between rows in '{}'", s.trim())))?;
    }
    let cols = rows[0].len();
    IntMatrix::from_rows(rows, cols).map_err(|_| perr(format!("ragged matrix '{}'", s.trim())))
}

/// `free n=2 m=1` or `surface g=2 m=1`, with an optional leading `group`.
pub fn parse_ambient(s: &str) -> Result<AmbientSpec> {
    let mut toks = s.split_whitespace().peekable();
    if toks.peek() == Some(&"group") {
        toks.next();
    }
    let kind = toks.next().ok_or_else(|| perr("empty group header"))?;
    let mut base = None;
    let mut m = None;
    for tok in toks {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| perr(format!("expected key=value, got '{}'", tok)))?;
        let val: usize = val
            .parse()
            .map_err(|_| perr(format!("bad value in '{}'", tok)))?;
        match (kind, key) {
            ("free", "n") | ("surface", "g") => base = Some(val),
            (_, "m") => m = Some(val),
            _ => return Err(perr(format!("unknown key '{}' for {} group", key, kind))),
        }
    }
    let base = base.ok_or_else(|| perr(format!("{} group without rank", kind)))?;
    let m = m.ok_or_else(|| perr("group header without m"))?;
    match kind {
        "free" => Ok(AmbientSpec::free(base, m)),
        "surface" => AmbientSpec::surface(base, m),
        _ => Err(perr(format!("unknown group kind '{}'", kind))),
    }
}

/// `(x1 x2, [0,1])` or the printed form `x1 x2 ; [0,1]`.
pub fn parse_element(s: &str, amb: &AmbientSpec) -> Result<ProdElement> {
    let t = s.trim();
    let (word, vec) = if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let cut = inner
            .rfind('[')
            .ok_or_else(|| perr(format!("element '{}' has no exponent vector", t)))?;
        let w = inner[..cut].trim_end();
        let w = w
            .strip_suffix(',')
            .ok_or_else(|| perr(format!("expected ',' in element '{}'", t)))?;
        (w, &inner[cut..])
    } else {
        t.split_once(';')
            .ok_or_else(|| perr(format!("element '{}' must be (w, [a]) or w ; [a]", t)))?
    };
    let e = ProdElement::new(parse_word(word, amb.base_rank())?, parse_vector(vec)?);
    amb.check_element(&e)?;
    Ok(e)
}

/// Words separated by commas or newlines, inside optional brackets;
/// `#` starts a comment.
pub fn parse_basis(s: &str, rank: usize) -> Result<Vec<FreeWord>> {
    let body: String = s
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(",");
    let body = body.trim();
    let body = body
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .unwrap_or(body);
    body.split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| parse_word(w, rank))
        .collect()
}

fn parse_fix_phi(s: &str, rank: usize) -> Result<FixPhi> {
    match s.trim() {
        "all" | "whole" => Ok(FixPhi::Whole),
        t if t.starts_with('[') => Ok(FixPhi::Basis(parse_basis(t, rank)?)),
        t => Err(perr(format!("fixphi must be 'all' or [..], got '{}'", t))),
    }
}

/// One endomorphism of a file, with optional name and fixed-subgroup hint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoEntry {
    pub name: Option<String>,
    pub endo: Endomorphism,
    pub fix_phi: Option<FixPhi>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoFile {
    pub ambient: AmbientSpec,
    pub entries: Vec<EndoEntry>,
}

impl EndoFile {
    /// The entry named `name`, or the first one.
    pub fn entry(&self, name: Option<&str>) -> Result<&EndoEntry> {
        match name {
            None => self.entries.first(),
            Some(n) => self.entries.iter().find(|e| e.name.as_deref() == Some(n)),
        }
        .ok_or_else(|| Error::MissingData(format!("no endomorphism {}", name.unwrap_or(""))))
    }
}

#[derive(Default)]
struct Block {
    kind: String,
    name: Option<String>,
    line: usize,
    phi: Vec<Option<FreeWord>>,
    phiinv: Vec<Option<FreeWord>>,
    q: Option<IntMatrix>,
    p: Option<IntMatrix>,
    z: Option<FreeWord>,
    l: Option<Vec<Int>>,
    h: Option<Vec<Int>>,
    fix_phi: Option<FixPhi>,
}

fn missing(what: &str, line: usize) -> Error {
    Error::MissingData(format!("{} (block at line {})", what, line))
}

impl Block {
    fn finish(self, amb: &AmbientSpec) -> Result<EndoEntry> {
        let k = amb.base_rank();
        let q = match self.q {
            Some(q) => q,
            None if amb.m == 0 => IntMatrix::zeros(0, 0),
            None => return Err(missing("Q", self.line)),
        };
        let p = match self.p {
            Some(p) => p,
            None if amb.m == 0 => IntMatrix::zeros(k, 0),
            None => return Err(missing("P", self.line)),
        };
        let endo = match self.kind.as_str() {
            "type1" => {
                let images = self
                    .phi
                    .into_iter()
                    .enumerate()
                    .map(|(i, w)| w.ok_or_else(|| missing(&format!("phi x{}", i + 1), self.line)))
                    .collect::<Result<Vec<_>>>()?;
                let mut e = EndoType1::new(amb, FreeHomo::new(images, k)?, q, p)?;
                if self.phiinv.iter().any(Option::is_some) {
                    let inv = self
                        .phiinv
                        .into_iter()
                        .enumerate()
                        .map(|(i, w)| {
                            w.ok_or_else(|| missing(&format!("phiinv x{}", i + 1), self.line))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    e = e.with_inverse(amb, FreeHomo::new(inv, k)?)?;
                }
                Endomorphism::Type1(e)
            }
            _ => Endomorphism::Type2(EndoType2::new(
                amb,
                self.z.ok_or_else(|| missing("z", self.line))?,
                self.l.ok_or_else(|| missing("l", self.line))?,
                self.h.ok_or_else(|| missing("h", self.line))?,
                q,
                p,
            )?),
        };
        Ok(EndoEntry {
            name: self.name,
            endo,
            fix_phi: self.fix_phi,
        })
    }
}

/// Parses a group header followed by one or more `endo` blocks.
pub fn parse_endo_file(text: &str) -> Result<EndoFile> {
    let mut amb: Option<AmbientSpec> = None;
    let mut blocks: Vec<Block> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| match e {
            Error::Parse(msg) => Error::Parse(format!("line {}: {}", lineno, msg)),
            other => other,
        };
        if let Some(rest) = line.strip_prefix("group") {
            if amb.is_some() {
                return Err(perr(format!("line {}: second group header", lineno)));
            }
            amb = Some(parse_ambient(rest).map_err(at)?);
            continue;
        }
        let a = amb
            .as_ref()
            .ok_or_else(|| perr(format!("line {}: group header must come first", lineno)))?;
        let k = a.base_rank();
        if let Some(rest) = line.strip_prefix("endo") {
            let mut toks = rest.split_whitespace();
            let kind = toks.next().unwrap_or("");
            if kind != "type1" && kind != "type2" {
                return Err(perr(format!("line {}: expected 'endo type1' or 'endo type2'", lineno)));
            }
            blocks.push(Block {
                kind: kind.into(),
                name: toks.next().map(String::from),
                line: lineno,
                phi: vec![None; k],
                phiinv: vec![None; k],
                ..Default::default()
            });
            continue;
        }
        let block = blocks
            .last_mut()
            .ok_or_else(|| perr(format!("line {}: data outside an endo block", lineno)))?;
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| perr(format!("line {}: expected '<key> = <value>'", lineno)))?;
        let key: Vec<&str> = lhs.split_whitespace().collect();
        let type1 = block.kind == "type1";
        match key.as_slice() {
            [slot @ ("phi" | "phiinv"), gen] if type1 => {
                let i = gen
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| perr(format!("line {}: expected x<i>, got '{}'", lineno, gen)))?;
                if i == 0 || i > k {
                    return Err(Error::GeneratorOutOfRange { index: i, rank: k });
                }
                let w = parse_word(rhs, k).map_err(at)?;
                let target = if *slot == "phi" { &mut block.phi } else { &mut block.phiinv };
                if target[i - 1].replace(w).is_some() {
                    return Err(perr(format!("line {}: {} x{} given twice", lineno, slot, i)));
                }
            }
            ["fixphi"] if type1 => block.fix_phi = Some(parse_fix_phi(rhs, k).map_err(at)?),
            ["Q"] => block.q = Some(parse_matrix(rhs).map_err(at)?),
            ["P"] => block.p = Some(parse_matrix(rhs).map_err(at)?),
            ["z"] if !type1 => block.z = Some(parse_word(rhs, k).map_err(at)?),
            ["l"] if !type1 => block.l = Some(parse_vector(rhs).map_err(at)?),
            ["h"] if !type1 => block.h = Some(parse_vector(rhs).map_err(at)?),
            _ => {
                return Err(perr(format!(
                    "line {}: unknown key '{}' in {} block",
                    lineno,
                    lhs.trim(),
                    block.kind
                )))
            }
        }
    }
    let ambient = amb.ok_or_else(|| perr("missing group header"))?;
    if blocks.is_empty() {
        return Err(Error::MissingData("no endo block".into()));
    }
    let entries = blocks
        .into_iter()
        .map(|b| b.finish(&ambient))
        .collect::<Result<Vec<_>>>()?;
    Ok(EndoFile { ambient, entries })
}

pub fn format_vector(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn format_fix_phi(f: &FixPhi) -> String {
    match f {
        FixPhi::Whole => "all".into(),
        FixPhi::Basis(b) => {
            let parts: Vec<String> = b.iter().map(|w| w.to_string()).collect();
            format!("[{}]", parts.join(", "))
        }
    }
}

/// Serializes one entry as an `endo` block. Composites have no file form.
pub fn format_endo(entry: &EndoEntry) -> Result<String> {
    let mut out = String::new();
    let name = entry.name.as_deref().map(|n| format!(" {}", n)).unwrap_or_default();
    match &entry.endo {
        Endomorphism::Type1(e) => {
            writeln!(out, "endo type1{}", name).unwrap();
            for (i, w) in e.phi().images().iter().enumerate() {
                writeln!(out, "phi x{} = {}", i + 1, w).unwrap();
            }
            writeln!(out, "Q = {}", e.q()).unwrap();
            writeln!(out, "P = {}", e.p()).unwrap();
            if let Some(inv) = e.user_inverse() {
                for (i, w) in inv.images().iter().enumerate() {
                    writeln!(out, "phiinv x{} = {}", i + 1, w).unwrap();
                }
            }
            if let Some(f) = &entry.fix_phi {
                writeln!(out, "fixphi = {}", format_fix_phi(f)).unwrap();
            }
        }
        Endomorphism::Type2(e) => {
            writeln!(out, "endo type2{}", name).unwrap();
            writeln!(out, "z = {}", e.z()).unwrap();
            writeln!(out, "l = {}", format_vector(e.l())).unwrap();
            writeln!(out, "h = {}", format_vector(e.h())).unwrap();
            writeln!(out, "Q = {}", e.q()).unwrap();
            writeln!(out, "P = {}", e.p()).unwrap();
        }
        Endomorphism::Composite(_) => {
            return Err(Error::InvalidEndomorphism(
                "composites have no file representation".into(),
            ))
        }
    }
    Ok(out)
}

pub fn format_endo_file(file: &EndoFile) -> Result<String> {
    let mut out = format!("group {}\n", file.ambient);
    for e in &file.entries {
        out.push_str(&format_endo(e)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F3_WITNESS: &str = "\
# F3 witness
group free n=2 m=1
endo type1
phi x1 = x1
phi x2 = x2
Q = [[3]]
P = [[1],
     [0]]   # wrapped lines are not allowed, see below
";

    #[test]
    fn words() {
        let w = parse_word("x1^2 X2 (x1 x2)^-1 1 x3", 3).unwrap();
        assert_eq!(w, FreeWord::reduce([1, 1, -2, -2, -1, 3]));
        assert_eq!(parse_word("x1*x2^-1", 2).unwrap(), FreeWord::reduce([1, -2]));
        assert_eq!(parse_word(" 1 ", 2).unwrap(), FreeWord::identity());
        assert_eq!(parse_word("x1^0", 2).unwrap(), FreeWord::identity());
        assert!(matches!(parse_word("x0", 2), Err(Error::GeneratorOutOfRange { .. })));
        assert!(matches!(parse_word("x3", 2), Err(Error::GeneratorOutOfRange { .. })));
        assert!(matches!(parse_word("y1", 2), Err(Error::Parse(_))));
        assert!(matches!(parse_word("(x1", 2), Err(Error::Parse(_))));
        assert!(matches!(parse_word("x1)", 2), Err(Error::Parse(_))));
        let printed = FreeWord::reduce([1, 1, -2, 1]);
        assert_eq!(parse_word(&printed.to_string(), 2).unwrap(), printed);
    }

    #[test]
    fn matrices_and_vectors() {
        assert_eq!(parse_matrix("[[1, 0], [0,-1]]").unwrap(), IntMatrix::from_i64(&[&[1, 0], &[0, -1]]));
        assert_eq!(parse_matrix("[]").unwrap().rows(), 0);
        let p = parse_matrix("[[],[]]").unwrap();
        assert_eq!((p.rows(), p.cols()), (2, 0));
        assert!(parse_matrix("[[1,2],[3]]").is_err());
        assert!(parse_matrix("[1,2]").is_err());
        assert_eq!(parse_vector("[ 1, -2 ]").unwrap(), vec![Int::from(1), Int::from(-2)]);
        assert!(parse_vector("[1,a]").is_err());
    }

    #[test]
    fn ambients_and_elements() {
        let a = parse_ambient("group free n=2 m=1").unwrap();
        assert_eq!(a, AmbientSpec::free(2, 1));
        assert_eq!(parse_ambient(&a.to_string()).unwrap(), a);
        assert!(matches!(parse_ambient("surface g=1 m=1"), Err(Error::NotHyperbolic(1))));
        assert!(parse_ambient("torus g=1 m=1").is_err());
        let e = parse_element("(x1, [0])", &a).unwrap();
        assert_eq!(e, ProdElement::from_i64(&[1], &[0]));
        assert_eq!(parse_element(&e.to_string(), &a).unwrap(), e);
        assert!(matches!(parse_element("(x1, [0,1])", &a), Err(Error::Dimension(_))));
        assert!(matches!(parse_element("(x0, [0])", &a), Err(Error::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn endo_files_round_trip() {
        let bad = parse_endo_file(F3_WITNESS);
        assert!(matches!(bad, Err(Error::Parse(_))));
        let text = F3_WITNESS.replace("[[1],\n     [0]]   # wrapped lines are not allowed, see below", "[[1],[0]]");
        let f = parse_endo_file(&text).unwrap();
        assert_eq!(f.ambient, AmbientSpec::free(2, 1));
        let again = parse_endo_file(&format_endo_file(&f).unwrap()).unwrap();
        assert_eq!(again, f);

        let t2 = "group free n=2 m=1\nendo type2 psi\nz = x1\nl = [1]\nh = [0,0]\nQ = [[0]]\nP = [[0],[0]]\n";
        let f = parse_endo_file(t2).unwrap();
        assert_eq!(f.entry(Some("psi")).unwrap().name.as_deref(), Some("psi"));
        assert_eq!(parse_endo_file(&format_endo_file(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn fixphi_and_inverse_lines() {
        let t = "group free n=2 m=1\nendo type1\nphi x1 = x1 x2\nphi x2 = x2\nphiinv x1 = x1 X2\nphiinv x2 = x2\nQ = [[1]]\nP = [[0],[0]]\nfixphi = [x2]\n";
        let f = parse_endo_file(t).unwrap();
        let e = f.entry(None).unwrap();
        assert_eq!(e.fix_phi, Some(FixPhi::Basis(vec![FreeWord::gen(2)])));
        assert_eq!(parse_endo_file(&format_endo_file(&f).unwrap()).unwrap(), f);
        let wrong = t.replace("phiinv x1 = x1 X2", "phiinv x1 = x1");
        assert!(matches!(parse_endo_file(&wrong), Err(Error::Verification(_))));
    }

    #[test]
    fn error_classes() {
        let head = "group free n=2 m=1\nendo type1\nphi x1 = x1\nphi x2 = x2\n";
        assert!(matches!(parse_endo_file(&format!("{}Q = [[1]]\n", head)), Err(Error::MissingData(_))));
        assert!(matches!(
            parse_endo_file(&format!("{}Q = [[1,0],[0,1]]\nP = [[0],[0]]\n", head)),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(parse_endo_file("endo type1\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_endo_file("group free n=2 m=1\n"), Err(Error::MissingData(_))));
        assert!(matches!(
            parse_endo_file(&format!("{}Q = [[1]]\nP = [[0],[0]]\nfoo = 1\n", head)),
            Err(Error::Parse(_))
        ));
        assert_eq!(parse_basis("[x1, x2^2]\n", 2).unwrap().len(), 2);
        assert_eq!(parse_basis("x1\n# c\nx1 x2\n", 2).unwrap().len(), 2);
    }
}
