//! A small Dirac-notation language for writing states.
//!
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := coeff ('*' ket | '*'? '(' ketsum ')') | ket
//! ketsum  := ket (('+'|'-') ket)*
//! coeff   := cfactor (('*'|'/') cfactor)*
//! cfactor := number | number 'i' | 'i' | 'pi' | 'sqrt' '(' csum ')' | 'exp' '(' csum ')'
//!          | '(' csum ')' | '-' cfactor
//! csum    := coeff (('+'|'-') coeff)*
//! ket     := '|' labels '>'
//! labels  := digit+ | label (',' label)+
//! ```
//!
//! Whitespace is ignored. Without commas every digit of a ket is one
//! particle's label; with commas labels may have several digits. Functions
//! are evaluated in complex double precision, so `sqrt(-1)` is `i`.
//!
//! ```
//! use gconc::ket::parse_ket;
//! let bell = parse_ket("1/sqrt(2)*|00> + 1/sqrt(2)*|11>", None).unwrap();
//! assert_eq!(bell.dims().as_slice(), &[2, 2]);
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dims::QuditDims;
use crate::error::{Error, Result};
use crate::qstate::PureState;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Ket(Vec<usize>),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Imag(v) => format!("number {v}i"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Ket(_) => "ket".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(offset: usize, expected: impl Into<String>, found: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        expected: expected.into(),
        found: found.into(),
    }
}

fn found_char(text: &str, at: usize) -> String {
    text[at..]
        .chars()
        .next()
        .map_or_else(|| "end of input".to_string(), |c| format!("{c:?}"))
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    let skip_ws = |mut p: usize| {
        while p < bytes.len() && (bytes[p] as char).is_ascii_whitespace() {
            p += 1;
        }
        p
    };
    loop {
        pos = skip_ws(pos);
        let Some(&b) = bytes.get(pos) else {
            toks.push((Tok::End, pos));
            return Ok(toks);
        };
        let start = pos;
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'|' => {
                let (labels, end) = lex_ket(text, pos + 1)?;
                toks.push((Tok::Ket(labels), start));
                pos = end;
                continue;
            }
            b'0'..=b'9' | b'.' => {
                let (value, end) = lex_number(text, pos)?;
                pos = end;
                let ident_follows = bytes
                    .get(pos + 1)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
                if bytes.get(pos) == Some(&b'i') && !ident_follows {
                    pos += 1;
                    toks.push((Tok::Imag(value), start));
                } else {
                    toks.push((Tok::Num(value), start));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let end = bytes[pos..]
                    .iter()
                    .position(|c| !c.is_ascii_alphanumeric() && *c != b'_')
                    .map_or(bytes.len(), |k| pos + k);
                toks.push((Tok::Ident(text[pos..end].to_string()), start));
                pos = end;
                continue;
            }
            _ => return Err(syntax(pos, "term", found_char(text, pos))),
        };
        toks.push((tok, start));
        pos += 1;
    }
}

fn lex_number(text: &str, start: usize) -> Result<(f64, usize)> {
    let bytes = text.as_bytes();
    let mut end = start;
    while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
        end += 1;
    }
    // optional exponent, only when digits follow
    if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
        let mut k = end + 1;
        if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
            k += 1;
        }
        if k < bytes.len() && bytes[k].is_ascii_digit() {
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            end = k;
        }
    }
    text[start..end]
        .parse::<f64>()
        .map(|v| (v, end))
        .map_err(|_| syntax(start, "number", format!("{:?}", &text[start..end])))
}

/// Lexes the body of a ket after the opening `|`; returns labels and the offset after `>`.
fn lex_ket(text: &str, mut pos: usize) -> Result<(Vec<usize>, usize)> {
    let bytes = text.as_bytes();
    let mut groups: Vec<String> = vec![String::new()];
    let mut saw_comma = false;
    loop {
        while pos < bytes.len() && (bytes[pos] as char).is_ascii_whitespace() {
            pos += 1;
        }
        match bytes.get(pos) {
            Some(b'>') => {
                if groups.iter().any(String::is_empty) {
                    return Err(syntax(pos, "label", "'>'"));
                }
                pos += 1;
                break;
            }
            Some(c) if c.is_ascii_digit() => groups.last_mut().unwrap().push(*c as char),
            Some(b',') => {
                if groups.last().unwrap().is_empty() {
                    return Err(syntax(pos, "label", "','"));
                }
                saw_comma = true;
                groups.push(String::new());
            }
            _ => {
                let expected = if groups.last().unwrap().is_empty() {
                    "label"
                } else {
                    "'>'"
                };
                return Err(syntax(pos, expected, found_char(text, pos)));
            }
        }
        pos += 1;
    }
    let labels = if saw_comma {
        groups
            .iter()
            .map(|g| {
                g.parse::<usize>()
                    .map_err(|_| syntax(pos, "label", g.clone()))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        groups[0].bytes().map(|c| (c - b'0') as usize).collect()
    };
    Ok((labels, pos))
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    terms: Vec<(Vec<usize>, Complex64)>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> Error {
        syntax(self.offset(), expected, self.peek().describe())
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    /// `(` directly followed by a ket opens a ket sum rather than a coefficient.
    fn ketsum_ahead(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Tok::LParen) && matches!(self.peek_at(k + 1), Tok::Ket(_))
    }

    fn expr(&mut self) -> Result<()> {
        let mut sign = 1.0;
        if *self.peek() == Tok::Minus {
            self.bump();
            sign = -1.0;
        } else if *self.peek() == Tok::Plus {
            self.bump();
        }
        self.term(sign)?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    self.term(1.0)?;
                }
                Tok::Minus => {
                    self.bump();
                    self.term(-1.0)?;
                }
                Tok::End => return Ok(()),
                _ => return Err(self.err("'+', '-' or end of input")),
            }
        }
    }

    fn term(&mut self, sign: f64) -> Result<()> {
        if let Tok::Ket(labels) = self.peek().clone() {
            self.bump();
            self.terms.push((labels, Complex64::new(sign, 0.0)));
            return Ok(());
        }
        if self.ketsum_ahead(0) {
            return self.ketsum(Complex64::new(sign, 0.0));
        }
        let coeff = self.coeff()? * sign;
        if *self.peek() == Tok::Star {
            self.bump();
            if let Tok::Ket(labels) = self.peek().clone() {
                self.bump();
                self.terms.push((labels, coeff));
                return Ok(());
            }
        }
        if self.ketsum_ahead(0) {
            return self.ketsum(coeff);
        }
        Err(self.err("'*' followed by a ket or '('"))
    }

    fn ketsum(&mut self, coeff: Complex64) -> Result<()> {
        self.expect(Tok::LParen, "'('")?;
        let mut sign = 1.0;
        loop {
            let Tok::Ket(labels) = self.peek().clone() else {
                return Err(self.err("ket"));
            };
            self.bump();
            self.terms.push((labels, coeff * sign));
            match self.peek() {
                Tok::Plus => sign = 1.0,
                Tok::Minus => sign = -1.0,
                Tok::RParen => {
                    self.bump();
                    return Ok(());
                }
                _ => return Err(self.err("'+', '-' or ')'")),
            }
            self.bump();
        }
    }

    fn coeff(&mut self) -> Result<Complex64> {
        let mut value = self.cfactor()?;
        loop {
            match self.peek() {
                Tok::Star if !matches!(self.peek_at(1), Tok::Ket(_)) && !self.ketsum_ahead(1) => {
                    self.bump();
                    value *= self.cfactor()?;
                }
                Tok::Slash => {
                    self.bump();
                    value /= self.cfactor()?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn csum(&mut self) -> Result<Complex64> {
        let mut value = self.coeff()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    value += self.coeff()?;
                }
                Tok::Minus => {
                    self.bump();
                    value -= self.coeff()?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn parenthesized(&mut self) -> Result<Complex64> {
        self.expect(Tok::LParen, "'('")?;
        let v = self.csum()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(v)
    }

    fn cfactor(&mut self) -> Result<Complex64> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Complex64::new(v, 0.0))
            }
            Tok::Imag(v) => {
                self.bump();
                Ok(Complex64::new(0.0, v))
            }
            Tok::Minus => {
                self.bump();
                // 0 - z keeps a zero imaginary part positive, so sqrt(-1) = i
                Ok(Complex64::new(0.0, 0.0) - self.cfactor()?)
            }
            Tok::LParen => self.parenthesized(),
            Tok::Ident(name) => match name.as_str() {
                "i" => {
                    self.bump();
                    Ok(Complex64::i())
                }
                "pi" => {
                    self.bump();
                    Ok(Complex64::new(PI, 0.0))
                }
                "sqrt" => {
                    self.bump();
                    Ok(self.parenthesized()?.sqrt())
                }
                "exp" => {
                    self.bump();
                    Ok(self.parenthesized()?.exp())
                }
                _ => Err(self.err("number, 'i', 'pi', 'sqrt', 'exp' or '('")),
            },
            _ => Err(self.err("coefficient or ket")),
        }
    }
}

/// Parses a ket expression. With `dims = None` each particle's dimension is
/// inferred as its largest label plus one (at least 2).
///
/// The result is normalized; [`PureState::was_normalized`] reports whether the
/// written coefficients were off unit norm by more than `1e-6`.
pub fn parse_ket(text: &str, dims: Option<&QuditDims>) -> Result<PureState> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        terms: Vec::new(),
    };
    parser.expr()?;
    let terms = parser.terms;

    let arity = terms[0].0.len();
    if let Some((labels, _)) = terms.iter().find(|(l, _)| l.len() != arity) {
        return Err(Error::DimensionMismatch(format!(
            "kets have {} and {} particles",
            arity,
            labels.len()
        )));
    }
    let dims = match dims {
        Some(d) => {
            if d.len() != arity {
                return Err(Error::DimensionMismatch(format!(
                    "kets have {arity} particles but dims list {}",
                    d.len()
                )));
            }
            for (labels, _) in &terms {
                if let Some(k) = (0..arity).find(|&k| labels[k] >= d.dim(k)) {
                    return Err(Error::DimensionMismatch(format!(
                        "label {} out of range for particle {k} of dimension {}",
                        labels[k],
                        d.dim(k)
                    )));
                }
            }
            d.clone()
        }
        None => QuditDims::new(
            (0..arity)
                .map(|k| {
                    terms
                        .iter()
                        .map(|(l, _)| l[k] + 1)
                        .max()
                        .unwrap_or(2)
                        .max(2)
                })
                .collect(),
        )?,
    };

    let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
    for (labels, c) in &terms {
        amps[dims.flat_index(labels)] += c;
    }
    PureState::from_amplitudes(dims, amps)
}

/// Writes a state back in the ket language, one term per nonzero amplitude.
/// Numbers use the shortest round-trip decimal form, so
/// `parse_ket(&render(s), Some(s.dims()))` reproduces the amplitudes.
pub fn render(state: &PureState) -> String {
    let dims = state.dims();
    let wide = dims.as_slice().iter().any(|&d| d > 10);
    let mut out = String::new();
    for (flat, a) in state.amplitudes().iter().enumerate() {
        if *a == Complex64::new(0.0, 0.0) {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let labels = dims.labels(flat);
        let labels = if wide {
            labels
                .iter()
                .map(|j| j.to_string())
                .collect::<Vec<_>>()
                .join(",")
        } else {
            labels.iter().map(|j| j.to_string()).collect()
        };
        let sign = if a.im.is_sign_negative() { '-' } else { '+' };
        out.push_str(&format!("({}{}{}i)*|{}>", a.re, sign, a.im.abs(), labels));
    }
    out
}
