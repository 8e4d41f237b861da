use std::fmt;

use crate::dfield::Field;
use crate::exactla::AffineMatrixSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Line {
    Text(String),
    Check { name: String, ok: bool },
}

/// Deterministic textual output of a command: free text interleaved with
/// named pass/fail checks, in the order they were produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    command: String,
    lines: Vec<Line>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            lines: Vec::new(),
        }
    }

    pub fn command(&self) -> &str {
        &self.command
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(Line::Text(text.into()));
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) -> bool {
        self.lines.push(Line::Check { name: name.into(), ok });
        ok
    }

    pub fn checks(&self) -> impl Iterator<Item = (&str, bool)> {
        self.lines.iter().filter_map(|l| match l {
            Line::Check { name, ok } => Some((name.as_str(), *ok)),
            Line::Text(_) => None,
        })
    }

    pub fn passed(&self) -> bool {
        self.checks().all(|(_, ok)| ok)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Appends an affine-space block: dimension, point and basis matrices.
    pub fn space<K: Field>(&mut self, k: &K, label: &str, s: &AffineMatrixSpace<K::Elem>) {
        let Some(point) = s.point() else {
            self.line(format!("{label}: empty"));
            return;
        };
        self.line(format!("{label}: dimension {}", s.basis().len()));
        self.line("  point:");
        for row in point.render(k) {
            self.line(format!("    {row}"));
        }
        for (i, b) in s.basis().iter().enumerate() {
            self.line(format!("  basis {}:", i + 1));
            for row in b.render(k) {
                self.line(format!("    {row}"));
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        for l in &self.lines {
            match l {
                Line::Text(t) => writeln!(f, "{t}")?,
                Line::Check { name, ok } => {
                    writeln!(f, "check {name}: {}", if *ok { "PASS" } else { "FAIL" })?
                }
            }
        }
        let total = self.checks().count();
        let good = self.checks().filter(|(_, ok)| *ok).count();
        let verdict = if good == total { "PASS" } else { "FAIL" };
        writeln!(f, "result: {verdict} ({good}/{total} checks)")
    }
}
