//! Line-oriented code description files.
//!
//! ```text
//! # comment
//! field p=2 m=1
//! ambient n=4
//! subspace U1: 1000, 0100
//! matrix M: 1 0 0 1, 0 1 1 0
//! genpoly C1: coeffs=1,2,2,1 length=6 shift=1
//! family C: U1 C1
//! ```
//!
//! Rows are comma-separated. A row is either a run of digits (prime fields
//! with `p <= 10`) or whitespace-separated entries; extension-field entries
//! are coefficient tuples such as `[1 0 1]`. `modulus=` lists the coefficients
//! of the defining polynomial from the constant term up.

use std::fmt::Write as _;
use std::path::Path;

use super::CliError;
use crate::algebra::{Field, Matrix, Polynomial};
use crate::code::{LinearCode, SubspaceCode};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldHeader {
    pub p: u32,
    pub m: u32,
    pub modulus: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Subspace { rows: Vec<Vec<u32>> },
    Matrix { cols: usize, rows: Vec<Vec<u32>> },
    GenPoly { coeffs: Vec<u32>, length: usize, shift: u32 },
    Family { members: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub header: FieldHeader,
    pub field: Field,
    pub ambient: usize,
    pub blocks: Vec<(String, Block)>,
}

fn syntax(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { line, msg: msg.into() }
}

/// Splits on whitespace outside brackets.
fn tokens(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn key_values(line: usize, toks: &[String]) -> Result<Vec<(String, String)>, CliError> {
    toks.iter()
        .map(|t| {
            t.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| syntax(line, format!("expected key=value, found `{t}`")))
        })
        .collect()
}

fn parse_uint<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| syntax(line, format!("expected a non-negative integer, found `{s}`")))
}

/// A field element: an integer in `[0, q)` or a bracketed coefficient tuple.
pub fn parse_element(field: &Field, line: usize, s: &str) -> Result<u32, CliError> {
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let coords: Vec<u32> = inner.split_whitespace().map(|c| parse_uint(line, c)).collect::<Result<_, _>>()?;
        if coords.len() != field.m() as usize || coords.iter().any(|&c| c >= field.p()) {
            return Err(syntax(line, format!("`{s}` is not an element of F_{}", field.q())));
        }
        return field.from_coords(&coords).map_err(|e| syntax(line, e.to_string()));
    }
    let v: u64 = parse_uint(line, s)?;
    field.check(v).map_err(|_| syntax(line, format!("entry {v} out of range for F_{}", field.q())))
}

fn parse_row(field: &Field, line: usize, s: &str, width: usize) -> Result<Vec<u32>, CliError> {
    let toks = tokens(s);
    let compact = toks.len() == 1
        && width > 1
        && field.is_prime_field()
        && field.p() <= 10
        && toks[0].chars().all(|c| c.is_ascii_digit());
    let row: Vec<u32> = if compact {
        toks[0].chars().map(|c| parse_element(field, line, &c.to_string())).collect::<Result<_, _>>()?
    } else {
        toks.iter().map(|t| parse_element(field, line, t)).collect::<Result<_, _>>()?
    };
    if row.len() != width {
        return Err(CliError::DimensionMismatch { line, expected: width, found: row.len() });
    }
    Ok(row)
}

fn parse_rows(field: &Field, line: usize, s: &str, width: usize) -> Result<Vec<Vec<u32>>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|r| parse_row(field, line, r, width)).collect()
}

fn render_row(field: &Field, row: &[u32]) -> String {
    if field.is_prime_field() && field.p() <= 10 && row.len() > 1 {
        row.iter().map(|x| x.to_string()).collect()
    } else {
        row.iter().map(|&x| field.format(x)).collect::<Vec<_>>().join(" ")
    }
}

fn render_rows(field: &Field, rows: &[Vec<u32>]) -> String {
    rows.iter().map(|r| render_row(field, r)).collect::<Vec<_>>().join(", ")
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

impl CodeFile {
    pub fn new(field: &Field, ambient: usize) -> CodeFile {
        CodeFile {
            header: FieldHeader { p: field.p(), m: field.m(), modulus: field.modulus().map(|m| m.to_vec()) },
            field: field.clone(),
            ambient,
            blocks: Vec::new(),
        }
    }

    pub fn load(path: &Path) -> Result<CodeFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        CodeFile::parse(&text)
    }

    pub fn parse(text: &str) -> Result<CodeFile, CliError> {
        let mut header: Option<(FieldHeader, Field)> = None;
        let mut ambient: Option<usize> = None;
        let mut blocks: Vec<(String, Block)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            match keyword {
                "field" => {
                    if header.is_some() {
                        return Err(CliError::BadFieldHeader { line, msg: "duplicate field header".into() });
                    }
                    header = Some(parse_header(line, rest)?);
                }
                "ambient" => {
                    if header.is_none() {
                        return Err(CliError::BadFieldHeader { line, msg: "ambient before field".into() });
                    }
                    let kv = key_values(line, &tokens(rest))?;
                    match kv.as_slice() {
                        [(k, v)] if k == "n" => {
                            let n: usize = parse_uint(line, v)?;
                            if n == 0 {
                                return Err(syntax(line, "ambient dimension must be positive"));
                            }
                            ambient = Some(n);
                        }
                        _ => return Err(syntax(line, "expected `ambient n=<int>`")),
                    }
                }
                "subspace" | "matrix" | "genpoly" | "family" => {
                    let Some((_, field)) = &header else {
                        return Err(CliError::BadFieldHeader { line, msg: "missing field header".into() });
                    };
                    let n = ambient.ok_or_else(|| syntax(line, "missing `ambient` line"))?;
                    let (head, body) =
                        rest.split_once(':').ok_or_else(|| syntax(line, "expected `:` after block name"))?;
                    let head = tokens(head);
                    let name = head.first().cloned().ok_or_else(|| syntax(line, "missing block name"))?;
                    if !valid_name(&name) {
                        return Err(syntax(line, format!("invalid name `{name}`")));
                    }
                    if blocks.iter().any(|(b, _)| *b == name) {
                        return Err(syntax(line, format!("duplicate name `{name}`")));
                    }
                    let opts = key_values(line, &head[1..])?;
                    let block = match keyword {
                        "subspace" => {
                            if !opts.is_empty() {
                                return Err(syntax(line, "subspace takes no options"));
                            }
                            Block::Subspace { rows: parse_rows(field, line, body, n)? }
                        }
                        "matrix" => {
                            let mut cols = n;
                            for (k, v) in &opts {
                                match k.as_str() {
                                    "cols" => cols = parse_uint(line, v)?,
                                    _ => return Err(syntax(line, format!("unknown matrix option `{k}`"))),
                                }
                            }
                            Block::Matrix { cols, rows: parse_rows(field, line, body, cols)? }
                        }
                        "genpoly" => parse_genpoly(field, line, body, n)?,
                        _ => {
                            let members = tokens(body);
                            if members.is_empty() {
                                return Err(syntax(line, "empty family"));
                            }
                            for m in &members {
                                match blocks.iter().find(|(b, _)| b == m) {
                                    None => return Err(CliError::UndefinedName { name: m.clone(), line: Some(line) }),
                                    Some((_, Block::Family { .. })) => {
                                        return Err(syntax(line, format!("`{m}` is a family, not a subspace")))
                                    }
                                    Some((_, Block::Matrix { cols, .. })) if *cols != n => {
                                        return Err(CliError::DimensionMismatch { line, expected: n, found: *cols })
                                    }
                                    _ => {}
                                }
                            }
                            Block::Family { members }
                        }
                    };
                    blocks.push((name, block));
                }
                other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
            }
        }
        let (header, field) = header.ok_or(CliError::BadFieldHeader { line: 0, msg: "missing field header".into() })?;
        let ambient = ambient.ok_or_else(|| syntax(0, "missing `ambient` line"))?;
        Ok(CodeFile { header, field, ambient, blocks })
    }

    pub fn render(&self) -> String {
        let f = &self.field;
        let mut s = String::new();
        let _ = write!(s, "field p={} m={}", self.header.p, self.header.m);
        if let Some(m) = &self.header.modulus {
            let _ = write!(s, " modulus={}", m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "ambient n={}", self.ambient);
        for (name, block) in &self.blocks {
            match block {
                Block::Subspace { rows } => {
                    let _ = writeln!(s, "subspace {name}: {}", render_rows(f, rows));
                }
                Block::Matrix { cols, rows } => {
                    if *cols == self.ambient {
                        let _ = writeln!(s, "matrix {name}: {}", render_rows(f, rows));
                    } else {
                        let _ = writeln!(s, "matrix {name} cols={cols}: {}", render_rows(f, rows));
                    }
                }
                Block::GenPoly { coeffs, length, shift } => {
                    let cs: Vec<String> = coeffs.iter().map(|&c| f.format(c)).collect();
                    let _ = writeln!(
                        s,
                        "genpoly {name}: coeffs={} length={length} shift={}",
                        cs.join(","),
                        f.format(*shift)
                    );
                }
                Block::Family { members } => {
                    let _ = writeln!(s, "family {name}: {}", members.join(" "));
                }
            }
        }
        s
    }

    pub fn push_subspace(&mut self, name: &str, u: &Subspace) {
        self.blocks.push((name.to_string(), Block::Subspace { rows: u.basis().row_vecs() }));
    }

    pub fn push_family(&mut self, name: &str, members: Vec<String>) {
        self.blocks.push((name.to_string(), Block::Family { members }));
    }

    /// Adds every member as `{prefix}{i}` (1-based) and a family `name`.
    pub fn push_code(&mut self, name: &str, prefix: &str, code: &SubspaceCode) {
        let mut names = Vec::with_capacity(code.len());
        for (i, u) in code.members().iter().enumerate() {
            let member = format!("{prefix}{}", i + 1);
            self.push_subspace(&member, u);
            names.push(member);
        }
        self.push_family(name, names);
    }

    fn block(&self, name: &str) -> Result<&Block, CliError> {
        self.blocks
            .iter()
            .find(|(b, _)| b == name)
            .map(|(_, b)| b)
            .ok_or_else(|| CliError::UndefinedName { name: name.to_string(), line: None })
    }

    /// The subspace named by a subspace, square-width matrix or genpoly block.
    pub fn subspace(&self, name: &str) -> Result<Subspace, CliError> {
        let f = &self.field;
        match self.block(name)? {
            Block::Subspace { rows } => Ok(Subspace::span(f, self.ambient, rows)?),
            Block::Matrix { cols, rows } => {
                if *cols != self.ambient {
                    return Err(CliError::DimensionMismatch { line: 0, expected: self.ambient, found: *cols });
                }
                Ok(Subspace::span(f, self.ambient, rows)?)
            }
            Block::GenPoly { coeffs, length, shift } => {
                let g = Polynomial::new(f, coeffs.clone())?;
                Ok(LinearCode::constacyclic(&g, *length, *shift)?.subspace())
            }
            Block::Family { .. } => Err(CliError::Usage(format!("`{name}` is a family, not a subspace"))),
        }
    }

    pub fn family(&self, name: &str) -> Result<SubspaceCode, CliError> {
        match self.block(name)? {
            Block::Family { members } => {
                let subs = members.iter().map(|m| self.subspace(m)).collect::<Result<Vec<_>, _>>()?;
                Ok(SubspaceCode::new(subs)?)
            }
            _ => Err(CliError::Usage(format!("`{name}` is not a family"))),
        }
    }

    pub fn matrix(&self, name: &str) -> Result<Matrix, CliError> {
        match self.block(name)? {
            Block::Matrix { cols, rows } => Ok(Matrix::from_rows(&self.field, *cols, rows)?),
            _ => Err(CliError::Usage(format!("`{name}` is not a matrix"))),
        }
    }

    /// Every matrix block in file order.
    pub fn matrices(&self) -> Result<Vec<Matrix>, CliError> {
        self.blocks
            .iter()
            .filter(|(_, b)| matches!(b, Block::Matrix { .. }))
            .map(|(name, _)| self.matrix(name))
            .collect()
    }

    /// Names of the subspace-valued blocks, in file order.
    pub fn subspace_names(&self) -> Vec<&str> {
        self.blocks.iter().filter(|(_, b)| !matches!(b, Block::Family { .. })).map(|(n, _)| n.as_str()).collect()
    }
}

fn parse_header(line: usize, rest: &str) -> Result<(FieldHeader, Field), CliError> {
    let bad = |msg: String| CliError::BadFieldHeader { line, msg };
    let kv = key_values(line, &tokens(rest)).map_err(|e| bad(e.to_string()))?;
    let (mut p, mut m, mut modulus) = (None, 1u32, None);
    for (k, v) in kv {
        match k.as_str() {
            "p" => p = Some(v.parse::<u32>().map_err(|_| bad(format!("bad p `{v}`")))?),
            "m" => m = v.parse::<u32>().map_err(|_| bad(format!("bad m `{v}`")))?,
            "modulus" => {
                let cs = v
                    .split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad(format!("bad modulus `{v}`")))?;
                modulus = Some(cs);
            }
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| bad("missing p".into()))?;
    if m == 0 {
        return Err(bad("m must be positive".into()));
    }
    let field = match &modulus {
        Some(cs) => {
            if cs.len() != m as usize + 1 {
                return Err(bad(format!("modulus has degree {} but m={m}", cs.len().saturating_sub(1))));
            }
            Field::with_modulus(p, cs).map_err(|e| bad(e.to_string()))?
        }
        None => Field::new(p, m).map_err(|e| bad(e.to_string()))?,
    };
    Ok((FieldHeader { p, m, modulus }, field))
}

fn parse_genpoly(field: &Field, line: usize, body: &str, n: usize) -> Result<Block, CliError> {
    let kv = key_values(line, &tokens(body))?;
    let (mut coeffs, mut length, mut shift) = (None, None, None);
    for (k, v) in kv {
        match k.as_str() {
            "coeffs" => {
                coeffs =
                    Some(v.split(',').map(|c| parse_element(field, line, c.trim())).collect::<Result<Vec<_>, _>>()?)
            }
            "length" => length = Some(parse_uint::<usize>(line, &v)?),
            "shift" => shift = Some(parse_element(field, line, &v)?),
            other => return Err(syntax(line, format!("unknown genpoly key `{other}`"))),
        }
    }
    let coeffs = coeffs.ok_or_else(|| syntax(line, "genpoly needs coeffs="))?;
    let length = length.ok_or_else(|| syntax(line, "genpoly needs length="))?;
    let shift = shift.unwrap_or(1);
    if length != n {
        return Err(CliError::DimensionMismatch { line, expected: n, found: length });
    }
    let g = Polynomial::new(field, coeffs.clone()).map_err(|e| syntax(line, e.to_string()))?;
    LinearCode::constacyclic(&g, length, shift).map_err(|e| syntax(line, e.to_string()))?;
    Ok(Block::GenPoly { coeffs, length, shift })
}
