//! Plain-text table files.
//!
//! A table file is an optional run of `#` comment lines, a header
//! `loop <n>` or `group <n>`, `n` rows of `n` whitespace-separated indices,
//! and optionally a line `labels <l₀> … <lₙ₋₁>`. Blank lines and later
//! comments are ignored.
//!
//! An external spec file has the sections `B`, `H`, `sigma`, `l` and `m`,
//! each a line holding only the section name followed by its rows.

use std::fmt::Write as _;
use std::str::FromStr;

use semiloop::semidirect::{validate_external, ExternalSpec};
use semiloop::{FiniteGroup, FiniteLeftLoop, Permutation};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Loop,
    Group,
}

impl TableKind {
    fn name(self) -> &'static str {
        match self {
            TableKind::Loop => "loop",
            TableKind::Group => "group",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFile {
    pub kind: TableKind,
    pub rows: Vec<Vec<usize>>,
    pub labels: Option<Vec<String>>,
    /// Leading comment lines, without the `#`.
    pub comments: Vec<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_row(line_no: usize, text: &str) -> CliResult<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("'{tok}' is not a non-negative integer")))
        })
        .collect()
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

impl TableFile {
    pub fn from_loop(b: &FiniteLeftLoop) -> Self {
        TableFile {
            kind: TableKind::Loop,
            rows: b.rows(),
            labels: b.labels().map(|l| l.to_vec()),
            comments: Vec::new(),
        }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        TableFile {
            kind: TableKind::Group,
            rows: g.rows(),
            labels: g.labels().map(|l| l.to_vec()),
            comments: Vec::new(),
        }
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comments.push(comment.into());
        self
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let comments = text
            .lines()
            .map(str::trim)
            .take_while(|l| l.is_empty() || l.starts_with('#'))
            .filter_map(|l| l.strip_prefix('#'))
            .map(|l| l.strip_prefix(' ').unwrap_or(l).to_string())
            .collect();
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let mut parts = header.split_whitespace();
        let kind = match parts.next() {
            Some("loop") => TableKind::Loop,
            Some("group") => TableKind::Group,
            other => {
                return Err(parse_err(
                    hline,
                    format!("expected 'loop <n>' or 'group <n>', found {:?}", other.unwrap_or("")),
                ))
            }
        };
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(hline, "header needs an order"))?;
        if n == 0 {
            return Err(parse_err(hline, "order must be positive"));
        }
        if parts.next().is_some() {
            return Err(parse_err(hline, "trailing text after the order"));
        }
        let mut rows = Vec::with_capacity(n);
        let mut labels = None;
        for (no, line) in lines {
            if let Some(rest) = line.strip_prefix("labels") {
                if labels.is_some() {
                    return Err(parse_err(no, "labels given twice"));
                }
                let l: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if l.len() != n {
                    return Err(parse_err(no, format!("{} labels for order {n}", l.len())));
                }
                labels = Some(l);
                continue;
            }
            if rows.len() == n {
                return Err(parse_err(no, format!("more than {n} rows")));
            }
            let row = parse_row(no, line)?;
            if row.len() != n {
                return Err(parse_err(no, format!("row has {} entries, expected {n}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(parse_err(no, format!("entry {v} out of range")));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(parse_err(
                text.lines().count().max(1),
                format!("found {} rows, expected {n}", rows.len()),
            ));
        }
        if rows[0].iter().enumerate().any(|(i, &v)| i != v)
            || rows.iter().enumerate().any(|(i, r)| r[0] != i)
        {
            return Err(parse_err(hline, "index 0 must be the identity"));
        }
        Ok(TableFile {
            kind,
            rows,
            labels,
            comments,
        })
    }

    pub fn load(path: &str) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text).map_err(|e| e.in_file(path))
    }

    /// Canonical text: comments, header, rows with single spaces, labels.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{} {}", self.kind.name(), self.order());
        for row in &self.rows {
            let _ = writeln!(out, "{}", join(row));
        }
        if let Some(l) = &self.labels {
            let _ = writeln!(out, "labels {}", l.join(" "));
        }
        out
    }

    pub fn to_loop(&self) -> CliResult<FiniteLeftLoop> {
        let b = FiniteLeftLoop::validate(self.rows.clone())?;
        Ok(match &self.labels {
            Some(l) => b.with_labels(l.clone())?,
            None => b,
        })
    }

    pub fn to_group(&self) -> CliResult<FiniteGroup> {
        let g = FiniteGroup::validate(self.rows.clone())?;
        Ok(match &self.labels {
            Some(l) => g.with_labels(l.clone())?,
            None => g,
        })
    }

    pub fn expect_kind(self, kind: TableKind) -> CliResult<Self> {
        if self.kind != kind {
            return Err(CliError::Input(format!(
                "expected a {} table, found a {} table",
                kind.name(),
                self.kind.name()
            )));
        }
        Ok(self)
    }
}

impl FromStr for TableFile {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        TableFile::parse(s)
    }
}

pub(crate) fn join(row: &[usize]) -> String {
    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

const SECTIONS: [&str; 5] = ["B", "H", "sigma", "l", "m"];

/// The five sections of an external spec, as raw rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalSpecFile {
    pub b: Vec<Vec<usize>>,
    pub h: Vec<Vec<usize>>,
    pub sigma: Vec<Vec<usize>>,
    pub l: Vec<Vec<usize>>,
    pub m: Vec<Vec<usize>>,
}

impl ExternalSpecFile {
    pub fn from_spec(spec: &ExternalSpec) -> Self {
        ExternalSpecFile {
            b: spec.b().rows(),
            h: spec.h().rows(),
            sigma: (0..spec.h().order())
                .map(|k| spec.sigma(k).images().to_vec())
                .collect(),
            l: spec.l_rows(),
            m: spec.m_rows(),
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut sections: Vec<(usize, Vec<Vec<usize>>)> = vec![(0, Vec::new()); 5];
        let mut seen = [false; 5];
        let mut current: Option<usize> = None;
        for (no, line) in content_lines(text) {
            if let Some(i) = SECTIONS.iter().position(|&s| s == line) {
                if seen[i] {
                    return Err(parse_err(no, format!("section {line} given twice")));
                }
                seen[i] = true;
                sections[i].0 = no;
                current = Some(i);
                continue;
            }
            let i = current.ok_or_else(|| parse_err(no, "rows before the first section"))?;
            sections[i].1.push(parse_row(no, line)?);
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(parse_err(text.lines().count().max(1), format!("missing section {}", SECTIONS[i])));
        }
        let mut it = sections.into_iter().map(|(_, rows)| rows);
        Ok(ExternalSpecFile {
            b: it.next().unwrap_or_default(),
            h: it.next().unwrap_or_default(),
            sigma: it.next().unwrap_or_default(),
            l: it.next().unwrap_or_default(),
            m: it.next().unwrap_or_default(),
        })
    }

    pub fn load(path: &str) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text).map_err(|e| e.in_file(path))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, rows) in SECTIONS.iter().zip([&self.b, &self.h, &self.sigma, &self.l, &self.m]) {
            let _ = writeln!(out, "{name}");
            for r in rows {
                let _ = writeln!(out, "{}", join(r));
            }
        }
        out
    }

    /// Builds the spec and runs every condition; the first failing
    /// condition is reported with its witness.
    pub fn to_spec(&self) -> CliResult<ExternalSpec> {
        let b = FiniteLeftLoop::validate(self.b.clone())?;
        let h = FiniteGroup::validate(self.h.clone())?;
        let sigma = self
            .sigma
            .iter()
            .map(|r| Permutation::new(r.clone()))
            .collect::<semiloop::Result<Vec<_>>>()?;
        let spec = ExternalSpec::new(b, h, sigma, self.l.clone(), self.m.clone())?;
        if let Some(f) = validate_external(&spec).first_failure() {
            return Err(CliError::Core(semiloop::Error::ExternalCondition {
                condition: f.name.to_string(),
                witness: f.witness.clone().unwrap_or_default(),
            }));
        }
        Ok(spec)
    }
}
