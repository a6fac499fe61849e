use std::collections::HashMap;
use std::fmt::Write as _;

use crate::algebra::{
    build_model, BaseCharDesc, CharKind, GenType, GeneratorDesc, ModelDescription, ModelError, ModelFlags, ModelSpec,
    Role,
};
use crate::exactalg::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelFileError {
    #[error("syntax error at {0}")]
    Syntax(#[from] ParseError),
    #[error("[{section}] {error}")]
    Semantic { section: &'static str, error: ModelError },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Header,
    Scalars,
    BaseChars,
    Lattice,
    Generators,
    Flags,
}

/// A piece of text together with its 1-based line and column.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Span<'a> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }

    fn sub(&self, start: usize, end: usize) -> Span<'a> {
        Span { text: &self.text[start..end], line: self.line, column: self.column + self.text[..start].chars().count() }
    }

    fn trim(&self) -> Span<'a> {
        let start = self.text.len() - self.text.trim_start().len();
        let end = self.text.trim_end().len().max(start);
        self.sub(start, end)
    }

    /// Splits at `sep` outside parentheses.
    fn split(&self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in self.text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                c if c == sep && depth == 0 => {
                    out.push(self.sub(start, i));
                    start = i + ch.len_utf8();
                }
                _ => {}
            }
        }
        out.push(self.sub(start, self.text.len()));
        out
    }

    fn split_once(&self, sep: char) -> Option<(Span<'a>, Span<'a>)> {
        let i = self.text.find(sep)?;
        Some((self.sub(0, i), self.sub(i + sep.len_utf8(), self.text.len())))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser {
    scalars: HashMap<String, Scalar>,
}

impl Parser {
    fn scalar(&self, s: Span) -> Result<Scalar, ParseError> {
        let t = s.trim();
        if let Some(v) = self.scalars.get(t.text) {
            return Ok(v.clone());
        }
        let inner = t.text.strip_prefix('(').and_then(|x| x.strip_suffix(')'));
        let (body, shift) = match inner {
            Some(b) => (b, 1),
            None => (t.text, 0),
        };
        body.parse::<Scalar>().map_err(|e| ParseError {
            line: t.line,
            column: t.column + shift + body[..e.offset.min(body.len())].chars().count(),
            message: format!("malformed scalar `{}`: {}", body, e.message),
        })
    }

    /// A signed sum of terms `coefficient * g1 ^ g2 ^ ...`; returns
    /// `(coefficient, generator names)` per term.
    fn expression(&self, s: Span) -> Result<Vec<(Scalar, Vec<String>)>, ParseError> {
        let s = s.trim();
        let mut terms = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let mut sign = 1i64;
        let bytes: Vec<(usize, char)> = s.text.char_indices().collect();
        let mut pieces = Vec::new();
        for (k, &(i, ch)) in bytes.iter().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 => {
                    // a sign directly after `^` is an exponent, not a term separator
                    let prev = bytes[..k].iter().rev().find(|(_, c)| !c.is_whitespace()).map(|x| x.1);
                    if matches!(prev, Some('^') | Some('*')) {
                        continue;
                    }
                    let piece = s.sub(start, i);
                    if !piece.text.trim().is_empty() {
                        pieces.push((sign, piece));
                    } else if !pieces.is_empty() || k > 0 && bytes[..k].iter().any(|(_, c)| !c.is_whitespace()) {
                        return Err(s.sub(i, i + 1).err("unexpected sign"));
                    }
                    sign = if ch == '-' { -1 } else { 1 };
                    start = i + 1;
                }
                _ => {}
            }
        }
        let last = s.sub(start, s.text.len());
        if last.text.trim().is_empty() {
            if !pieces.is_empty() || start > 0 {
                return Err(last.err("expression ends with a sign"));
            }
            if s.text.trim() == "0" || s.text.trim().is_empty() {
                return Ok(terms);
            }
        }
        pieces.push((sign, last));
        for (sign, piece) in pieces {
            let piece = piece.trim();
            if piece.text == "0" {
                continue;
            }
            let mut coeff = Scalar::from_int(sign);
            let mut factors = Vec::new();
            let mut pos = 0;
            let mut depth = 0i32;
            let mut parts = Vec::new();
            for (i, ch) in piece.text.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    '*' | '^' if depth == 0 => {
                        parts.push(piece.sub(pos, i));
                        pos = i + 1;
                    }
                    _ => {}
                }
            }
            parts.push(piece.sub(pos, piece.text.len()));
            for part in parts {
                let p = part.trim();
                if p.text.is_empty() {
                    return Err(p.err("empty factor"));
                }
                if is_identifier(p.text) && !self.scalars.contains_key(p.text) && p.text != "i" {
                    factors.push(p.text.to_string());
                } else {
                    coeff = &coeff * &self.scalar(p)?;
                }
            }
            terms.push((coeff, factors));
        }
        Ok(terms)
    }

    fn char_expr(&self, s: Span) -> Result<Vec<(String, i64)>, ParseError> {
        let s = s.trim();
        if s.text == "1" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for f in s.split('*') {
            let f = f.trim();
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => {
                    let e = e.trim();
                    let v: i64 = e.text.parse().map_err(|_| e.err(format!("bad exponent `{}`", e.text)))?;
                    (n.trim(), v)
                }
                None => (f, 1),
            };
            if !is_identifier(name.text) {
                return Err(name.err(format!("expected a character name, found `{}`", name.text)));
            }
            out.push((name.text.to_string(), exp));
        }
        Ok(out)
    }

    fn one_form(&self, s: Span) -> Result<Vec<(String, Scalar)>, ParseError> {
        let mut out = Vec::new();
        for (c, f) in self.expression(s)? {
            if f.len() != 1 {
                return Err(s.err("a log-derivative must be a sum of multiples of single generators"));
            }
            out.push((f[0].clone(), c));
        }
        Ok(out)
    }
}

/// Parses the `key = value` attribute list following `name:`.
fn attributes<'a>(s: Span<'a>) -> Result<Vec<(Span<'a>, Span<'a>)>, ParseError> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.text.is_empty() {
            continue;
        }
        let (k, v) = item.split_once('=').ok_or_else(|| item.err("expected `key = value`"))?;
        out.push((k.trim(), v.trim()));
    }
    Ok(out)
}

fn parse_bool(v: Span) -> Result<bool, ParseError> {
    match v.text {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(v.err(format!("expected true or false, found `{}`", v.text))),
    }
}

/// Parses model-file text into an unvalidated description.
pub fn parse_description(text: &str) -> Result<ModelDescription, ParseError> {
    let mut desc = ModelDescription::default();
    let mut parser = Parser { scalars: HashMap::new() };
    let mut section = Section::Header;
    for (n, raw) in text.lines().enumerate() {
        let line_text = raw.split('#').next().unwrap_or("");
        let line = Span { text: line_text, line: n + 1, column: 1 }.trim();
        if line.text.is_empty() {
            continue;
        }
        if line.text.starts_with('[') {
            section = match line.text {
                "[scalars]" => Section::Scalars,
                "[base_chars]" => Section::BaseChars,
                "[lattice]" => Section::Lattice,
                "[generators]" => Section::Generators,
                "[flags]" => Section::Flags,
                _ => return Err(line.err(format!("unknown section `{}`", line.text))),
            };
            continue;
        }
        match section {
            Section::Header => {
                let (k, v) = line.split_once('=').ok_or_else(|| line.err("expected `name = ...`"))?;
                if k.trim().text != "name" {
                    return Err(k.trim().err(format!("unknown header key `{}`", k.trim().text)));
                }
                desc.name = v.trim().text.to_string();
            }
            Section::Scalars => {
                let (k, v) = line.split_once('=').ok_or_else(|| line.err("expected `name = scalar`"))?;
                let k = k.trim();
                if !is_identifier(k.text) || k.text == "i" {
                    return Err(k.err(format!("invalid scalar name `{}`", k.text)));
                }
                let value = parser.scalar(v)?;
                parser.scalars.insert(k.text.to_string(), value);
            }
            Section::Lattice => {
                let t = line.text;
                let inner = t
                    .strip_prefix('(')
                    .and_then(|x| x.strip_suffix(')'))
                    .ok_or_else(|| line.err("expected `(a, b, ...)`"))?;
                let body = line.sub(1, 1 + inner.len());
                let mut row = Vec::new();
                for e in body.split(',') {
                    let e = e.trim();
                    row.push(e.text.parse::<i64>().map_err(|_| e.err(format!("bad integer `{}`", e.text)))?);
                }
                desc.lattice.push(row);
            }
            Section::Flags => {
                let (k, v) = line.split_once('=').ok_or_else(|| line.err("expected `flag = true|false`"))?;
                let (k, v) = (k.trim(), v.trim());
                match k.text {
                    "complex_parallelizable" => desc.flags.complex_parallelizable = parse_bool(v)?,
                    "assumption12" => desc.flags.assumption12 = parse_bool(v)?,
                    _ => return Err(k.err(format!("unknown flag `{}`", k.text))),
                }
            }
            Section::BaseChars => {
                let (name, rest) = line.split_once(':').ok_or_else(|| line.err("expected `name: attributes`"))?;
                let name = name.trim();
                if !is_identifier(name.text) {
                    return Err(name.err(format!("invalid character name `{}`", name.text)));
                }
                let mut c = BaseCharDesc {
                    name: name.text.to_string(),
                    kind: CharKind::General,
                    conj: (name.text.to_string(), 1),
                    dlog10: Vec::new(),
                    dlog01: Vec::new(),
                    unitary_part: None,
                };
                for (k, v) in attributes(rest)? {
                    match k.text {
                        "kind" => {
                            c.kind =
                                CharKind::parse(v.text).ok_or_else(|| v.err(format!("unknown kind `{}`", v.text)))?
                        }
                        "conj" => {
                            let e = parser.char_expr(v)?;
                            if e.len() != 1 {
                                return Err(v.err("conjugate must be a single base character or its inverse"));
                            }
                            c.conj = e[0].clone();
                        }
                        "dlog10" => c.dlog10 = parser.one_form(v)?,
                        "dlog01" => c.dlog01 = parser.one_form(v)?,
                        "unitary" => c.unitary_part = Some(parser.char_expr(v)?),
                        _ => return Err(k.err(format!("unknown attribute `{}`", k.text))),
                    }
                }
                desc.base_chars.push(c);
            }
            Section::Generators => {
                let (name, rest) = line.split_once(':').ok_or_else(|| line.err("expected `name: attributes`"))?;
                let name = name.trim();
                if !is_identifier(name.text) {
                    return Err(name.err(format!("invalid generator name `{}`", name.text)));
                }
                let mut g = GeneratorDesc {
                    name: name.text.to_string(),
                    kind: GenType::Holomorphic,
                    action_char: Vec::new(),
                    differential: Vec::new(),
                    role: Role::Nil,
                };
                for (k, v) in attributes(rest)? {
                    match k.text {
                        "type" => {
                            g.kind = match v.text {
                                "10" | "(1,0)" => GenType::Holomorphic,
                                "01" | "(0,1)" => GenType::Antiholomorphic,
                                _ => return Err(v.err(format!("type must be 10 or 01, found `{}`", v.text))),
                            }
                        }
                        "char" => g.action_char = parser.char_expr(v)?,
                        "d" => g.differential = parser.expression(v)?,
                        "role" => {
                            g.role = match v.text {
                                "abelian" => Role::Abelian,
                                "nil" => Role::Nil,
                                _ => return Err(v.err(format!("role must be abelian or nil, found `{}`", v.text))),
                            }
                        }
                        _ => return Err(k.err(format!("unknown attribute `{}`", k.text))),
                    }
                }
                desc.generators.push(g);
            }
        }
    }
    Ok(desc)
}

fn section_of(e: &ModelError) -> &'static str {
    match e {
        ModelError::WrongTypeInDlog { .. }
        | ModelError::KindMismatch { .. }
        | ModelError::ConjugationNotInvolution { .. }
        | ModelError::ConjugateWeightMismatch { .. }
        | ModelError::DlogNotClosed { .. } => "base_chars",
        ModelError::LatticeDimension { .. } => "lattice",
        ModelError::UnknownCharacter { context, .. } | ModelError::UnknownGenerator { context, .. }
            if context.starts_with("base") =>
        {
            "base_chars"
        }
        _ => "generators",
    }
}

/// Parses and validates a model file.
pub fn parse_model(text: &str) -> Result<ModelSpec, ModelFileError> {
    let desc = parse_description(text)?;
    build_model(&desc).map_err(|error| ModelFileError::Semantic { section: section_of(&error), error })
}

fn write_scalar_coeff(out: &mut String, c: &Scalar, first: bool) {
    let neg_real = c.is_real() && c.re() < &num_traits::Zero::zero();
    let mag = if neg_real { -c.clone() } else { c.clone() };
    if !first {
        out.push_str(if neg_real { " - " } else { " + " });
    } else if neg_real {
        out.push('-');
    }
    if !mag.is_one() {
        if mag.is_real() {
            let _ = write!(out, "{mag}*");
        } else {
            let _ = write!(out, "({mag})*");
        }
    }
}

fn write_expression(out: &mut String, terms: &[(Scalar, Vec<String>)]) {
    if terms.is_empty() {
        out.push('0');
    }
    for (k, (c, f)) in terms.iter().enumerate() {
        write_scalar_coeff(out, c, k == 0);
        out.push_str(&f.join("^"));
    }
}

fn write_char(out: &mut String, c: &[(String, i64)]) {
    if c.is_empty() {
        out.push('1');
    }
    let parts: Vec<String> = c.iter().map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") }).collect();
    out.push_str(&parts.join("*"));
}

/// Renders a description in the model-file format.
pub fn write_description(d: &ModelDescription) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name = {}", d.name);
    out.push_str("\n[base_chars]\n");
    for c in &d.base_chars {
        let _ = write!(out, "{}: kind = {}, conj = ", c.name, c.kind.as_str());
        write_char(&mut out, std::slice::from_ref(&c.conj));
        for (label, form) in [("dlog10", &c.dlog10), ("dlog01", &c.dlog01)] {
            if form.is_empty() {
                continue;
            }
            let _ = write!(out, ", {label} = ");
            let terms: Vec<(Scalar, Vec<String>)> = form.iter().map(|(g, s)| (s.clone(), vec![g.clone()])).collect();
            write_expression(&mut out, &terms);
        }
        if let Some(u) = &c.unitary_part {
            out.push_str(", unitary = ");
            write_char(&mut out, u);
        }
        out.push('\n');
    }
    out.push_str("\n[lattice]\n");
    for row in &d.lattice {
        let parts: Vec<String> = row.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "({})", parts.join(", "));
    }
    out.push_str("\n[generators]\n");
    for g in &d.generators {
        let kind = if g.kind == GenType::Holomorphic { "10" } else { "01" };
        let _ = write!(out, "{}: type = {kind}, char = ", g.name);
        write_char(&mut out, &g.action_char);
        if !g.differential.is_empty() {
            out.push_str(", d = ");
            write_expression(&mut out, &g.differential);
        }
        if g.role == Role::Abelian {
            out.push_str(", role = abelian");
        }
        out.push('\n');
    }
    let ModelFlags { complex_parallelizable, assumption12 } = d.flags;
    let _ =
        write!(out, "\n[flags]\ncomplex_parallelizable = {complex_parallelizable}\nassumption12 = {assumption12}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "name = ex
[scalars]
h = 1/2
[base_chars]
chi: kind = unitary, conj = chi^-1, dlog10 = h*x1, dlog01 = -h*cx1
[lattice]
(2)
[generators]
x1: type = 10, char = 1, role = abelian
y1: type = 10, char = chi
y2: type = 10, char = 1, d = y1^cy1
y3: type = 10, char = chi^-1, d = cy1^y2
[flags]
assumption12 = true
";

    #[test]
    fn parses_and_builds() {
        let m = parse_model(EXAMPLE).unwrap();
        assert_eq!(m.declared().count(), 4);
        assert_eq!(m.n_generators(), 8);
        assert_eq!(m.n_chars(), 1);
        assert!(m.flags.assumption12);
    }

    #[test]
    fn round_trip() {
        let d = parse_description(EXAMPLE).unwrap();
        let again = parse_description(&write_description(&d)).unwrap();
        assert_eq!(d, again);
        assert_eq!(build_model(&d).unwrap(), build_model(&again).unwrap());
    }

    #[test]
    fn empty_generators_give_unit_algebra() {
        let m = parse_model("name = unit\n[generators]\n").unwrap();
        assert_eq!(m.n_generators(), 0);
    }

    #[test]
    fn malformed_scalar_location() {
        let err = parse_description("[scalars]\nh = 1//2\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 7));
    }

    #[test]
    fn complex_coefficients_and_signs() {
        let p = Parser { scalars: HashMap::new() };
        let s = Span { text: "-a^b + (1/2-3/4*i)*c^e - 2*f", line: 1, column: 1 };
        let t = p.expression(s).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].0, Scalar::from_int(-1));
        assert_eq!(t[1].0, "1/2-3/4*i".parse().unwrap());
        assert_eq!(t[2], (Scalar::from_int(-2), vec!["f".to_string()]));
    }

    #[test]
    fn semantic_errors_carry_section() {
        let bad = EXAMPLE.replace("y2: type = 10, char = 1", "y2: type = 10, char = chi");
        assert!(matches!(parse_model(&bad), Err(ModelFileError::Semantic { section: "generators", .. })));
    }
}
