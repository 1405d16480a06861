//! The line-oriented algebra description format.
//!
//! ```text
//! # comments start with '#'
//! algebra dual over GF(3)
//! vertices 1
//! arrow x : 1 -> 1
//! relation x*x = 0
//! option max_len 8
//! ```
//!
//! Relation terms are `[coeff*]arrow(*arrow)*`, read right to left: in
//! `beta*alpha` the arrow `alpha` acts first.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec};
use crate::presentation::{build_algebra, FiniteDimAlgebra, Quiver, RelationElem};

pub const DEFAULT_MAX_LEN: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParsedTerm {
    #[serde(serialize_with = "ser_rational")]
    pub coeff: BigRational,
    /// Arrow labels as written (leftmost acts last).
    pub word: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParsedRelation {
    pub terms: Vec<ParsedTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraFile {
    pub name: String,
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<ParsedRelation>,
    pub options: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(String),
    Star,
    Plus,
    Minus,
    Eq,
    Colon,
    To,
    LParen,
    RParen,
    Slash,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn lex(line_no: usize, text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '*' => Some(Tok::Star),
            '+' => Some(Tok::Plus),
            '=' => Some(Tok::Eq),
            ':' => Some(Tok::Colon),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(t) = single {
            out.push((col, t));
            i += 1;
        } else if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                out.push((col, Tok::To));
                i += 2;
            } else {
                out.push((col, Tok::Minus));
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            if s.chars().all(|c| c.is_ascii_digit()) {
                out.push((col, Tok::Num(s)));
            } else {
                out.push((col, Tok::Word(s)));
            }
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((col, Tok::Word(chars[start..i].iter().collect())));
        } else {
            return Err(perr(line_no, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    line: usize,
    toks: &'a [(usize, Tok)],
    pos: usize,
    end_col: usize,
}

impl Cursor<'_> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end_col)
    }
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }
    fn err(&self, msg: impl Into<String>) -> Error {
        perr(self.line, self.col(), msg)
    }
    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }
    /// A label: a word or a bare number (vertex labels are often numerals).
    fn label(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(s)) | Some(Tok::Num(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }
    fn done(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

pub fn parse(text: &str) -> Result<AlgebraFile> {
    let mut name = None;
    let mut field = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relations = Vec::new();
    let mut options = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = lex(line, content)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor { line, toks: &toks, pos: 0, end_col: content.chars().count() + 1 };
        let Some(Tok::Word(kw)) = c.next() else {
            return Err(perr(line, toks[0].0, "expected a keyword"));
        };
        match kw.as_str() {
            "algebra" => {
                if name.is_some() {
                    return Err(perr(line, 1, "second algebra header"));
                }
                name = Some(c.label("algebra name")?);
                match c.next() {
                    Some(Tok::Word(w)) if w == "over" => {}
                    _ => return Err(perr(line, toks.get(c.pos - 1).map(|t| t.0).unwrap_or(1), "expected 'over'")),
                }
                field = Some(parse_field(&mut c)?);
                c.done()?;
            }
            "vertices" => {
                if vertices.is_some() {
                    return Err(perr(line, 1, "vertices declared twice"));
                }
                let mut vs = Vec::new();
                while c.peek().is_some() {
                    let col = c.col();
                    let v = c.label("vertex label")?;
                    if vs.contains(&v) {
                        return Err(perr(line, col, format!("duplicate vertex {v}")));
                    }
                    vs.push(v);
                }
                if vs.is_empty() {
                    return Err(c.err("expected at least one vertex"));
                }
                vertices = Some(vs);
            }
            "arrow" => {
                let Some(vs) = vertices.as_ref() else {
                    return Err(perr(line, 1, "arrow before vertices"));
                };
                let col = c.col();
                let label = match c.next() {
                    Some(Tok::Word(w)) => w,
                    _ => return Err(perr(line, col, "expected arrow name")),
                };
                if arrows.iter().any(|a| a.0 == label) || vs.contains(&label) {
                    return Err(perr(line, col, format!("duplicate label {label}")));
                }
                c.expect(Tok::Colon, "':'")?;
                let scol = c.col();
                let s = c.label("source vertex")?;
                c.expect(Tok::To, "'->'")?;
                let tcol = c.col();
                let t = c.label("target vertex")?;
                c.done()?;
                for (v, col) in [(&s, scol), (&t, tcol)] {
                    if !vs.contains(v) {
                        return Err(perr(line, col, format!("undeclared vertex {v}")));
                    }
                }
                arrows.push((label, s, t));
            }
            "relation" => {
                relations.push(parse_relation(&mut c, &arrows)?);
            }
            "option" => {
                let col = c.col();
                let key = match c.next() {
                    Some(Tok::Word(w)) => w,
                    _ => return Err(perr(line, col, "expected option key")),
                };
                let neg = if c.peek() == Some(&Tok::Minus) {
                    c.pos += 1;
                    true
                } else {
                    false
                };
                let vcol = c.col();
                let value: i64 = match c.next() {
                    Some(Tok::Num(n)) => n.parse().map_err(|_| perr(line, vcol, "integer out of range"))?,
                    _ => return Err(perr(line, vcol, "expected integer value")),
                };
                c.done()?;
                options.insert(key, if neg { -value } else { value });
            }
            other => return Err(perr(line, 1, format!("unknown keyword '{other}'"))),
        }
    }
    let name = name.ok_or_else(|| perr(1, 1, "missing 'algebra' header"))?;
    let vertices = vertices.ok_or_else(|| perr(1, 1, "missing 'vertices' line"))?;
    let file = AlgebraFile { name, field: field.unwrap(), vertices, arrows, relations, options };
    file.check_parallel()?;
    Ok(file)
}

fn parse_field(c: &mut Cursor<'_>) -> Result<FieldSpec> {
    let col = c.col();
    match c.next() {
        Some(Tok::Word(w)) if w == "QQ" => Ok(FieldSpec::rationals()),
        Some(Tok::Word(w)) if w == "GF" => {
            c.expect(Tok::LParen, "'('")?;
            let pcol = c.col();
            let p: u64 = match c.next() {
                Some(Tok::Num(n)) => n.parse().map_err(|_| perr(c.line, pcol, "modulus out of range"))?,
                _ => return Err(perr(c.line, pcol, "expected a prime")),
            };
            c.expect(Tok::RParen, "')'")?;
            if p >= 1 << 31 {
                return Err(perr(c.line, pcol, "modulus too large"));
            }
            FieldSpec::prime(p).map_err(|e| perr(c.line, pcol, e.to_string()))
        }
        _ => Err(perr(c.line, col, "expected GF(p) or QQ")),
    }
}

fn parse_relation(c: &mut Cursor<'_>, arrows: &[(String, String, String)]) -> Result<ParsedRelation> {
    let mut terms = Vec::new();
    let mut sign = BigRational::one();
    if c.peek() == Some(&Tok::Minus) {
        c.pos += 1;
        sign = -sign;
    }
    loop {
        let mut coeff = sign.clone();
        if let Some(Tok::Num(n)) = c.peek().cloned() {
            c.pos += 1;
            let mut value = BigRational::from_integer(n.parse::<BigInt>().unwrap());
            if c.peek() == Some(&Tok::Slash) {
                c.pos += 1;
                let dcol = c.col();
                match c.next() {
                    Some(Tok::Num(d)) => {
                        let d: BigInt = d.parse().unwrap();
                        if d.is_zero() {
                            return Err(perr(c.line, dcol, "zero denominator"));
                        }
                        value /= BigRational::from_integer(d);
                    }
                    _ => return Err(perr(c.line, dcol, "expected denominator")),
                }
            }
            coeff *= value;
            c.expect(Tok::Star, "'*' after coefficient")?;
        }
        let mut word = Vec::new();
        loop {
            let col = c.col();
            match c.next() {
                Some(Tok::Word(w)) => {
                    if !arrows.iter().any(|a| a.0 == w) {
                        return Err(perr(c.line, col, format!("undeclared arrow {w}")));
                    }
                    word.push(w);
                }
                _ => return Err(perr(c.line, col, "expected arrow name")),
            }
            if c.peek() == Some(&Tok::Star) {
                c.pos += 1;
            } else {
                break;
            }
        }
        // composability, checked right to left
        for w in word.windows(2) {
            let later = arrows.iter().find(|a| a.0 == w[0]).unwrap();
            let earlier = arrows.iter().find(|a| a.0 == w[1]).unwrap();
            if earlier.2 != later.1 {
                return Err(c.err(format!("{} then {} do not compose", w[1], w[0])));
            }
        }
        terms.push(ParsedTerm { coeff, word });
        match c.next() {
            Some(Tok::Plus) => sign = BigRational::one(),
            Some(Tok::Minus) => sign = -BigRational::one(),
            Some(Tok::Eq) => break,
            _ => return Err(perr(c.line, c.toks.get(c.pos - 1).map(|t| t.0).unwrap_or(c.end_col), "expected '+', '-' or '='")),
        }
    }
    let zcol = c.col();
    match c.next() {
        Some(Tok::Num(z)) if z.chars().all(|ch| ch == '0') => {}
        _ => return Err(perr(c.line, zcol, "relation must end with '= 0'")),
    }
    c.done()?;
    Ok(ParsedRelation { terms })
}

impl AlgebraFile {
    fn endpoints(&self, word: &[String]) -> (String, String) {
        let find = |w: &String| self.arrows.iter().find(|a| &a.0 == w).unwrap();
        (find(word.last().unwrap()).1.clone(), find(&word[0]).2.clone())
    }

    fn check_parallel(&self) -> Result<()> {
        for (i, r) in self.relations.iter().enumerate() {
            let ends: Vec<_> = r.terms.iter().map(|t| self.endpoints(&t.word)).collect();
            if ends.iter().any(|e| *e != ends[0]) {
                return Err(Error::InvalidRelation(format!("relation {} has non-parallel terms", i + 1)));
            }
        }
        Ok(())
    }

    pub fn option(&self, key: &str) -> Option<i64> {
        self.options.get(key).copied()
    }

    pub fn max_len(&self) -> usize {
        self.option("max_len").map(|v| v.max(0) as usize).unwrap_or(DEFAULT_MAX_LEN)
    }

    pub fn seed(&self) -> u64 {
        self.option("seed").unwrap_or(0) as u64
    }

    pub fn quiver(&self) -> Result<Quiver> {
        Quiver::new(self.vertices.clone(), self.arrows.clone())
    }

    /// Build the algebra over `field` (which may differ from the declared one).
    pub fn build<F: Field>(&self, field: F, max_len: usize) -> Result<FiniteDimAlgebra<F>> {
        let q = self.quiver()?;
        let mut rels = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let mut terms = Vec::with_capacity(r.terms.len());
            for t in &r.terms {
                let words: Vec<&str> = t.word.iter().map(String::as_str).collect();
                let p = q.path_from_written(&words)?;
                terms.push((coerce(&field, &t.coeff)?, p));
            }
            rels.push(RelationElem::new(&field, terms)?);
        }
        Ok(build_algebra(q, rels, field, max_len)?.with_name(self.name.clone()))
    }

    /// Canonical text; `parse(to_text(f)) == f`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let field = if self.field.is_finite() { format!("GF({})", self.field.characteristic) } else { "QQ".into() };
        writeln!(s, "algebra {} over {}", self.name, field).unwrap();
        writeln!(s, "vertices {}", self.vertices.join(" ")).unwrap();
        for (a, src, tgt) in &self.arrows {
            writeln!(s, "arrow {a} : {src} -> {tgt}").unwrap();
        }
        for r in &self.relations {
            let mut line = String::from("relation");
            for (i, t) in r.terms.iter().enumerate() {
                let neg = t.coeff.is_negative();
                let mag = t.coeff.abs();
                line.push_str(match (i, neg) {
                    (0, false) => " ",
                    (0, true) => " -",
                    (_, false) => " + ",
                    (_, true) => " - ",
                });
                if !mag.is_one() {
                    write!(line, "{}*", fmt_rational(&mag)).unwrap();
                }
                line.push_str(&t.word.join("*"));
            }
            line.push_str(" = 0");
            writeln!(s, "{line}").unwrap();
        }
        for (k, v) in &self.options {
            writeln!(s, "option {k} {v}").unwrap();
        }
        s
    }

    /// Same file over a different field.
    pub fn with_field(&self, field: FieldSpec) -> Self {
        AlgebraFile { field, ..self.clone() }
    }
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Map a rational coefficient into `field`; fails if the denominator vanishes.
pub fn coerce<F: Field>(field: &F, r: &BigRational) -> Result<F::Elem> {
    let to = |b: &BigInt| -> F::Elem {
        match field.spec().characteristic {
            0 => {
                let v: i64 = b.try_into().expect("coefficient fits i64");
                field.from_i64(v)
            }
            p => {
                let m = ((b % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                field.from_i64(i64::try_from(&m).unwrap())
            }
        }
    };
    let num = to(r.numer());
    let den = to(r.denom());
    let inv = field
        .inv(&den)
        .ok_or_else(|| Error::InvalidRelation(format!("denominator {} vanishes in {}", r.denom(), field.spec())))?;
    Ok(field.mul(&num, &inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: &str = "algebra quartic over GF(5)\nvertices 1 2\narrow alpha : 1 -> 2\narrow beta : 2 -> 1\nrelation beta*alpha*beta*alpha = 0\n";

    #[test]
    fn parses_quartic_cycle() {
        let f = parse(A).unwrap();
        assert_eq!(f.vertices.len(), 2);
        assert_eq!(f.arrows.len(), 2);
        assert_eq!(f.relations[0].terms[0].word, vec!["beta", "alpha", "beta", "alpha"]);
    }

    #[test]
    fn round_trip() {
        let text = "algebra b over GF(5)\nvertices 1 2\narrow x : 1 -> 2\narrow y : 2 -> 1\narrow z : 2 -> 2\n\
                    relation y*x = 0\nrelation z*x = 0\nrelation y*z = 0\nrelation z*z - x*y = 0\noption seed 3\n";
        let f = parse(text).unwrap();
        assert_eq!(parse(&f.to_text()).unwrap(), f);
        assert_eq!(f.to_text(), text);
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse("algebra a over GF(3)\nvertices 1\nthis is garbage\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse("algebra a over GF(3)\nvertices 1\narrow x : 1 -> 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 16, .. }), "{err:?}");
        let err = parse("algebra a over GF(4)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn rational_coefficients() {
        let f = parse("algebra q over QQ\nvertices 1\narrow x : 1 -> 1\nrelation 1/2*x*x*x - 3*x*x*x*x = 0\n").unwrap();
        assert_eq!(f.relations[0].terms[0].coeff, BigRational::new(1.into(), 2.into()));
        assert_eq!(parse(&f.to_text()).unwrap(), f);
    }
}
