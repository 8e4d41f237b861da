//! Sectioned problem files.
//!
//! ```text
//! # comments start with '#'
//! [extension]
//! generator = "s"
//! minpoly = "s^2 - t"
//! automorphisms = ["s", "-s"]
//!
//! [algebra]
//! n = 2
//! unit = ["1", "1"]
//! e1*e1 = ["1", "0"]        # omitted products are zero
//! e2*e2 = ["0", "1"]
//! # or: preset = "split-etale 2" | "matrix 2" | "dual-numbers"
//!
//! [cocycle]
//! p_inv = [
//!   ["1", "1"],
//!   ["s", "-s"],
//! ]
//! ```
//!
//! Values are quoted expressions, integers, or bracketed lists; a value may
//! continue over several lines while brackets are open.

use std::collections::BTreeMap;

use crate::algebra::{dual_numbers, matrix_algebra, split_etale, StructureAlgebra};
use crate::descent::CocycleData;
use crate::dfield::{parse_element, ExtElem, ExtensionField, Expr, Field, Rational, Rationals};
use crate::error::{Error, Result};
use crate::exactla::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Str(String),
    Int(i64),
    List(Vec<Value>),
}

#[derive(Clone, Debug)]
struct Entry {
    value: Value,
    line: usize,
}

type Section = BTreeMap<String, Entry>;

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Problem { line, msg: msg.into() })
}

/// Attaches a line number to errors that do not carry one.
fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Problem { .. } => e,
        other => Error::Problem {
            line,
            msg: other.to_string(),
        },
    })
}

struct ValueParser<'a> {
    chars: Vec<char>,
    at: usize,
    line: usize,
    _src: &'a str,
}

impl ValueParser<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].is_whitespace() {
            self.at += 1;
        }
    }

    fn value(&mut self) -> Result<Value> {
        self.skip_ws();
        match self.chars.get(self.at) {
            Some('"') => {
                self.at += 1;
                let start = self.at;
                while self.at < self.chars.len() && self.chars[self.at] != '"' {
                    self.at += 1;
                }
                if self.at == self.chars.len() {
                    return err(self.line, "unterminated string");
                }
                let s: String = self.chars[start..self.at].iter().collect();
                self.at += 1;
                Ok(Value::Str(s))
            }
            Some('[') => {
                self.at += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    if self.chars.get(self.at) == Some(&']') {
                        self.at += 1;
                        return Ok(Value::List(items));
                    }
                    items.push(self.value()?);
                    self.skip_ws();
                    match self.chars.get(self.at) {
                        Some(',') => self.at += 1,
                        Some(']') => {}
                        _ => return err(self.line, "expected `,` or `]` in list"),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() || *c == '-' => {
                let start = self.at;
                self.at += 1;
                while self.at < self.chars.len() && self.chars[self.at].is_ascii_digit() {
                    self.at += 1;
                }
                let s: String = self.chars[start..self.at].iter().collect();
                s.parse().map(Value::Int).or_else(|_| err(self.line, format!("bad integer `{s}`")))
            }
            Some(c) => err(self.line, format!("unexpected `{c}` in value")),
            None => err(self.line, "missing value"),
        }
    }
}

fn parse_value(text: &str, line: usize) -> Result<Value> {
    let mut p = ValueParser {
        chars: text.chars().collect(),
        at: 0,
        line,
        _src: text,
    };
    let v = p.value()?;
    p.skip_ws();
    if p.at != p.chars.len() {
        return err(line, "trailing characters after value");
    }
    Ok(v)
}

/// Net bracket depth of a line, ignoring brackets inside strings.
fn bracket_delta(line: &str) -> i64 {
    let mut depth = 0;
    let mut in_str = false;
    for c in line.chars() {
        match c {
            '"' => in_str = !in_str,
            '[' if !in_str => depth += 1,
            ']' if !in_str => depth -= 1,
            _ => {}
        }
    }
    depth
}

fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

fn split_sections(text: &str) -> Result<BTreeMap<String, Section>> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current: Option<String> = None;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l)));
    while let Some((lineno, raw)) = lines.next() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim();
            if !matches!(name, "extension" | "algebra" | "cocycle") {
                return err(lineno, format!("unknown section [{name}]"));
            }
            if sections.contains_key(name) {
                return err(lineno, format!("duplicate section [{name}]"));
            }
            sections.insert(name.to_string(), Section::new());
            current = Some(name.to_string());
            continue;
        }
        let Some((key, rest)) = line.split_once('=') else {
            return err(lineno, "expected `key = value`");
        };
        let Some(section) = current.as_ref() else {
            return err(lineno, "entry outside of any section");
        };
        let key: String = key.chars().filter(|c| !c.is_whitespace()).collect();
        let mut value = rest.to_string();
        let mut depth = bracket_delta(rest);
        while depth > 0 {
            let Some((_, more)) = lines.next() else {
                return err(lineno, "unclosed `[`");
            };
            depth += bracket_delta(more);
            value.push('\n');
            value.push_str(more);
        }
        let value = parse_value(&value, lineno)?;
        let sec = sections.get_mut(section).expect("current section exists");
        if sec.contains_key(&key) {
            return err(lineno, format!("duplicate key `{key}`"));
        }
        sec.insert(key, Entry { value, line: lineno });
    }
    Ok(sections)
}

fn as_str(e: &Entry) -> Result<&str> {
    match &e.value {
        Value::Str(s) => Ok(s),
        _ => err(e.line, "expected a quoted string"),
    }
}

fn as_str_list(v: &Value, line: usize) -> Result<Vec<&str>> {
    match v {
        Value::List(items) => items
            .iter()
            .map(|i| match i {
                Value::Str(s) => Ok(s.as_str()),
                _ => err(line, "expected a list of quoted strings"),
            })
            .collect(),
        _ => err(line, "expected a list"),
    }
}

/// A parsed problem. Sections are optional; commands ask for what they need.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub extension: Option<ExtensionField>,
    pub algebra: Option<StructureAlgebra<Rational>>,
    pub p_inv: Option<Matrix<ExtElem>>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sections = split_sections(text)?;
        let extension = sections.remove("extension").map(|s| parse_extension(&s)).transpose()?;
        let algebra = sections.remove("algebra").map(|s| parse_algebra(&s)).transpose()?;
        let p_inv = match sections.remove("cocycle") {
            None => None,
            Some(s) => {
                let field = extension.clone().unwrap_or_else(ExtensionField::trivial);
                Some(parse_cocycle(&s, &field, algebra.as_ref().map(StructureAlgebra::dim))?)
            }
        };
        Ok(ProblemFile {
            extension,
            algebra,
            p_inv,
        })
    }

    pub fn algebra(&self) -> Result<&StructureAlgebra<Rational>> {
        self.algebra
            .as_ref()
            .ok_or_else(|| Error::Usage("problem file has no [algebra] section".into()))
    }

    /// The extension, or `F` itself when the section is omitted.
    pub fn field(&self) -> ExtensionField {
        self.extension.clone().unwrap_or_else(ExtensionField::trivial)
    }

    /// Cocycle data; the trivial cocycle when `[cocycle]` is omitted.
    pub fn cocycle(&self) -> Result<CocycleData> {
        let field = self.field();
        match &self.p_inv {
            Some(p) => CocycleData::new(field, p.clone()),
            None => Ok(CocycleData::trivial(field, self.algebra()?.dim())),
        }
    }
}

fn known_keys(section: &Section, name: &str, allowed: &[&str], prefix_ok: impl Fn(&str) -> bool) -> Result<()> {
    for (k, e) in section {
        if !allowed.contains(&k.as_str()) && !prefix_ok(k) {
            return err(e.line, format!("unknown key `{k}` in [{name}]"));
        }
    }
    Ok(())
}

fn parse_extension(s: &Section) -> Result<ExtensionField> {
    known_keys(s, "extension", &["generator", "minpoly", "automorphisms"], |_| false)?;
    let gen_entry = s.get("generator").ok_or(Error::Problem {
        line: 0,
        msg: "[extension] needs `generator`".into(),
    })?;
    let generator = as_str(gen_entry)?.trim().to_string();
    let valid_ident = generator.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && generator.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid_ident || generator == "t" {
        return err(gen_entry.line, format!("invalid generator name `{generator}`"));
    }
    let mp = s.get("minpoly").ok_or(Error::Problem {
        line: gen_entry.line,
        msg: "[extension] needs `minpoly`".into(),
    })?;
    let coeffs = at(mp.line, Expr::parse(as_str(mp)?).and_then(|e| e.eval_polynomial(&generator)))?;
    let field = at(mp.line, ExtensionField::new(&generator, coeffs))?;
    match s.get("automorphisms") {
        None if field.degree() == 1 => Ok(field),
        None => err(mp.line, "[extension] needs `automorphisms` for degree > 1"),
        Some(a) => {
            let images = as_str_list(&a.value, a.line)?
                .into_iter()
                .map(|txt| at(a.line, parse_element(&field, txt)))
                .collect::<Result<Vec<_>>>()?;
            at(a.line, field.with_automorphisms(images))
        }
    }
}

fn is_product_key(k: &str) -> bool {
    product_indices(k).is_some()
}

/// `e<i>*e<j>` with 1-based indices.
fn product_indices(k: &str) -> Option<(usize, usize)> {
    let (a, b) = k.split_once('*')?;
    let i = a.strip_prefix('e')?.parse::<usize>().ok()?;
    let j = b.strip_prefix('e')?.parse::<usize>().ok()?;
    (i >= 1 && j >= 1).then_some((i - 1, j - 1))
}

fn parse_algebra(s: &Section) -> Result<StructureAlgebra<Rational>> {
    known_keys(s, "algebra", &["n", "unit", "preset"], is_product_key)?;
    if let Some(p) = s.get("preset") {
        if s.len() > 1 {
            return err(p.line, "`preset` cannot be combined with other [algebra] keys");
        }
        let text = as_str(p)?;
        let words: Vec<&str> = text.split_whitespace().collect();
        let size = |w: Option<&&str>| -> Result<usize> {
            w.and_then(|x| x.parse().ok())
                .filter(|&k: &usize| k >= 1)
                .ok_or(Error::Problem {
                    line: p.line,
                    msg: format!("preset `{text}` needs a positive size"),
                })
        };
        return match words.first() {
            Some(&"split-etale") => Ok(split_etale(size(words.get(1))?)),
            Some(&"matrix") => Ok(matrix_algebra(size(words.get(1))?)),
            Some(&"dual-numbers") if words.len() == 1 => Ok(dual_numbers()),
            _ => err(p.line, format!("unknown preset `{text}`")),
        };
    }
    let n_entry = s.get("n").ok_or(Error::Problem {
        line: 0,
        msg: "[algebra] needs `n` or `preset`".into(),
    })?;
    let n = match n_entry.value {
        Value::Int(n) if n >= 1 => n as usize,
        _ => return err(n_entry.line, "`n` must be a positive integer"),
    };
    let q = Rationals;
    let parse_vec = |e: &Entry, what: &str| -> Result<Vec<Rational>> {
        let items = as_str_list(&e.value, e.line)?;
        if items.len() != n {
            return err(e.line, format!("{what} needs {n} coordinates, got {}", items.len()));
        }
        items.into_iter().map(|t| at(e.line, parse_element(&q, t))).collect()
    };
    let unit_entry = s.get("unit").ok_or(Error::Problem {
        line: n_entry.line,
        msg: "[algebra] needs `unit`".into(),
    })?;
    let unit = parse_vec(unit_entry, "unit")?;
    let mut constants = vec![q.zero(); n * n * n];
    for (k, e) in s {
        let Some((i, j)) = product_indices(k) else {
            continue;
        };
        if i >= n || j >= n {
            return err(e.line, format!("product `{k}` out of range for n = {n}"));
        }
        let v = parse_vec(e, k)?;
        let start = (i * n + j) * n;
        constants[start..start + n].clone_from_slice(&v);
    }
    StructureAlgebra::new(n, constants, unit)
}

fn parse_cocycle(s: &Section, field: &ExtensionField, n: Option<usize>) -> Result<Matrix<ExtElem>> {
    known_keys(s, "cocycle", &["p_inv"], |_| false)?;
    let e = s.get("p_inv").ok_or(Error::Problem {
        line: 0,
        msg: "[cocycle] needs `p_inv`".into(),
    })?;
    let Value::List(rows) = &e.value else {
        return err(e.line, "`p_inv` must be a list of rows");
    };
    let rows = rows
        .iter()
        .map(|r| {
            as_str_list(r, e.line)?
                .into_iter()
                .map(|txt| at(e.line, parse_element(field, txt)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let size = n.unwrap_or(rows.len());
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return err(e.line, format!("`p_inv` must be {size}x{size}"));
    }
    at(e.line, Matrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUADRATIC: &str = r#"
# quadratic étale twist
[extension]
generator = "s"
minpoly = "s^2 - t"
automorphisms = ["s", "-s"]

[algebra]
n = 2
unit = ["1", "1"]
e1*e1 = ["1", "0"]
e2*e2 = ["0", "1"]

[cocycle]
p_inv = [
  ["1", "1"],   # w1 = e1 + e2
  ["s", "-s"],
]
"#;

    #[test]
    fn parses_quadratic() {
        let p = ProblemFile::parse(QUADRATIC).unwrap();
        assert_eq!(p.algebra.as_ref().unwrap(), &split_etale(2));
        assert_eq!(p.field().degree(), 2);
        assert_eq!(p.p_inv.as_ref().unwrap().rows(), 2);
        assert!(p.cocycle().is_ok());
    }

    #[test]
    fn too_many_automorphisms() {
        let text = QUADRATIC.replace(r#"["s", "-s"]"#, r#"["s", "-s", "s"]"#);
        let e = ProblemFile::parse(&text).unwrap_err();
        assert!(matches!(e, Error::Problem { line: 6, .. }), "{e}");
        assert!(e.to_string().contains("exactly 2 automorphisms"));
    }

    #[test]
    fn wrong_shape() {
        let text = QUADRATIC.replace(r#"["s", "-s"],"#, r#"["s", "-s", "0"],"#);
        let e = ProblemFile::parse(&text).unwrap_err();
        assert!(matches!(e, Error::Problem { line: 15, .. }), "{e}");
    }

    #[test]
    fn non_squarefree_minpoly() {
        let text = QUADRATIC.replace("s^2 - t", "s^2 - 2*s + 1").replace(r#"["s", "-s"]"#, r#"["s", "2 - s"]"#);
        let e = ProblemFile::parse(&text).unwrap_err();
        assert!(e.to_string().contains("squarefree"), "{e}");
    }

    #[test]
    fn undeclared_generator() {
        let text = QUADRATIC.replace(r#"["s", "-s"],"#, r#"["u", "-s"],"#);
        assert!(ProblemFile::parse(&text).is_err());
        let no_ext = "[algebra]\npreset = \"split-etale 2\"\n[cocycle]\np_inv = [[\"1\", \"1\"], [\"s\", \"-s\"]]\n";
        assert!(ProblemFile::parse(no_ext).is_err());
    }

    #[test]
    fn presets_and_errors() {
        let p = ProblemFile::parse("[algebra]\npreset = \"matrix 2\"\n").unwrap();
        assert_eq!(p.algebra.unwrap(), matrix_algebra(2));
        assert!(ProblemFile::parse("[algebra]\npreset = \"octonions\"\n").is_err());
        assert!(ProblemFile::parse("[nope]\n").is_err());
        assert!(ProblemFile::parse("n = 2\n").is_err());
        assert!(ProblemFile::parse("[algebra]\nn = 2\nunit = [\"1\"]\n").is_err());
        assert!(ProblemFile::parse("[algebra]\nn = 2\nunit = [\"1\", \"t\"]\n").is_err());
        assert!(ProblemFile::parse("[algebra]\nn = 1\nunit = [\"1\"]\ne2*e1 = [\"1\"]\n").is_err());
        assert!(ProblemFile::parse("[algebra]\nn = 1\nunit = [\"1\"\n").is_err());
    }
}
