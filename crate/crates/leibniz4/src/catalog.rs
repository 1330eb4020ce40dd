//! Algebra inventory: the built-in structure tables and the text format for
//! algebra files.
//!
//! File grammar, one statement per line (`#` starts a comment):
//!
//! ```text
//! name: L_8
//! dim: 4
//! params: a
//! restrict: a, a+1
//! e1 e2 = -e2
//! e3 e1 = a e3
//! ```
//!
//! `params:` declares scalar parameters, `restrict:` lists polynomials that
//! are nonzero throughout the family, and every product not mentioned is
//! zero. Statements may also be separated by `;`. A missing `name:` defaults
//! to `unnamed` and a missing `dim:` to 4. Basis indices are 1-based in
//! files and 0-based in code. The names `i` (imaginary unit) and `t`
//! (degeneration variable) are reserved and rejected as parameters.

use crate::algebra::{is_nilpotent, is_solvable, AlgebraStructure};
use crate::exactmath::parse::parse_scalar;
use crate::exactmath::Scalar;
use once_cell::sync::Lazy;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown algebra label {0}")]
    UnknownLabel(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Classification flags, re-derived from the structure at load time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tags {
    pub lie: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub standard: bool,
}

/// A labelled structure together with its derived classification.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub structure: AlgebraStructure,
    pub tags: Tags,
}

impl CatalogEntry {
    pub fn label(&self) -> &str {
        &self.structure.label
    }
}

fn err(line: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        line,
        message: message.into(),
    }
}

// ---- Parsing ----

/// Parses one algebra file and derives its classification tags.
pub fn parse_algebra(text: &str) -> Result<CatalogEntry, CatalogError> {
    let structure = parse_structure(text)?;
    Ok(classify(structure))
}

/// Wraps a structure in a catalog entry, recomputing the tags.
pub fn classify(structure: AlgebraStructure) -> CatalogEntry {
    let tags = Tags {
        lie: structure.is_lie(),
        nilpotent: is_nilpotent(&structure).0,
        solvable: is_solvable(&structure).0,
        standard: crate::separation::check_standard(&structure),
    };
    CatalogEntry { structure, tags }
}

/// Parses the structure alone, without tag derivation.
pub fn parse_structure(text: &str) -> Result<AlgebraStructure, CatalogError> {
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut params: Vec<String> = Vec::new();
    let mut restrict_lines: Vec<(usize, String)> = Vec::new();
    let mut product_lines: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let uncommented = raw.split('#').next().unwrap_or("");
        for stmt in uncommented.split(';') {
            let line = stmt.trim();
            if line.is_empty() {
                continue;
            }
            classify_line(
                line,
                line_no,
                &mut name,
                &mut dim,
                &mut params,
                &mut restrict_lines,
                &mut product_lines,
            )?;
        }
    }

    let name = name.unwrap_or_else(|| "unnamed".to_string());
    let dim = dim.unwrap_or(4);
    let mut structure = AlgebraStructure::zero(&name, dim);
    structure.params = params.clone();

    for (line_no, rest) in restrict_lines {
        for chunk in rest.split(',') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let s = parse_scalar(chunk, Some(&params))
                .map_err(|e| err(line_no, format!("restriction {chunk:?}: {e}")))?;
            if s.is_zero() {
                return Err(err(line_no, "restriction is identically zero"));
            }
            structure.restrictions.push(s.numer().clone());
        }
    }

    for (line_no, line) in product_lines {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| err(line_no, "expected `e<i> e<j> = ...`"))?;
        let (i, j) = parse_product_lhs(lhs)
            .ok_or_else(|| err(line_no, format!("bad product left side {:?}", lhs.trim())))?;
        if i == 0 || j == 0 || i > dim || j > dim {
            return Err(err(line_no, format!("basis index out of range in {lhs:?}")));
        }
        for (coeff, k) in parse_combination(rhs, &params).map_err(|m| err(line_no, m))? {
            if k == 0 || k > dim {
                return Err(err(line_no, format!("basis index e{k} out of range")));
            }
            let current = structure.c(i - 1, j - 1, k - 1).clone();
            structure.set(i - 1, j - 1, k - 1, current.add(&coeff));
        }
    }

    structure
        .validate()
        .map_err(|e| err(0, format!("invalid structure: {e}")))?;
    Ok(structure)
}

#[allow(clippy::too_many_arguments)]
fn classify_line(
    line: &str,
    line_no: usize,
    name: &mut Option<String>,
    dim: &mut Option<usize>,
    params: &mut Vec<String>,
    restrict_lines: &mut Vec<(usize, String)>,
    product_lines: &mut Vec<(usize, String)>,
) -> Result<(), CatalogError> {
    if let Some(rest) = line.strip_prefix("name:") {
        *name = Some(rest.trim().to_string());
    } else if let Some(rest) = line.strip_prefix("dim:") {
        *dim = Some(
            rest.trim()
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("bad dimension {:?}", rest.trim())))?,
        );
    } else if let Some(rest) = line.strip_prefix("params:") {
        for p in rest.split(',') {
            let p = p.trim();
            if p.is_empty() {
                continue;
            }
            if p == "i" || p == "t" || !p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(err(line_no, format!("bad parameter name {p:?}")));
            }
            params.push(p.to_string());
        }
    } else if let Some(rest) = line.strip_prefix("restrict:") {
        restrict_lines.push((line_no, rest.to_string()));
    } else {
        product_lines.push((line_no, line.to_string()));
    }
    Ok(())
}

fn parse_product_lhs(lhs: &str) -> Option<(usize, usize)> {
    let mut it = lhs.trim().split_whitespace();
    let first = it.next()?;
    let second = it.next()?;
    if it.next().is_some() {
        return None;
    }
    Some((parse_basis_token(first)?, parse_basis_token(second)?))
}

fn parse_basis_token(tok: &str) -> Option<usize> {
    tok.strip_prefix('e')?.parse::<usize>().ok()
}

/// Splits a linear combination such as `-e2 - (a+1) e4` into scalar
/// coefficients and 1-based basis indices.
fn parse_combination(rhs: &str, params: &[String]) -> Result<Vec<(Scalar, usize)>, String> {
    let mut out = Vec::new();
    for term in split_terms(rhs) {
        let term = term.trim();
        if term.is_empty() {
            return Err("empty term".to_string());
        }
        let (prefix, k) = split_basis_suffix(term)
            .ok_or_else(|| format!("term {term:?} does not end in a basis vector"))?;
        let prefix = prefix.trim().trim_end_matches('*').trim();
        let coeff = match prefix {
            "" | "+" => Scalar::one(),
            "-" => Scalar::one().neg(),
            other => parse_scalar(other, Some(params))
                .map_err(|e| format!("coefficient {other:?}: {e}"))?,
        };
        out.push((coeff, k));
    }
    Ok(out)
}

/// Splits at top-level `+`/`-`, keeping each sign with the following term.
fn split_terms(rhs: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut buf = String::new();
    let mut depth = 0usize;
    for ch in rhs.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 && !buf.trim().is_empty() => {
                terms.push(std::mem::take(&mut buf));
            }
            _ => {}
        }
        buf.push(ch);
    }
    if !buf.trim().is_empty() {
        terms.push(buf);
    }
    terms
}

/// Splits `... e<k>` into the coefficient prefix and the basis index.
fn split_basis_suffix(term: &str) -> Option<(&str, usize)> {
    let term = term.trim_end();
    let digits_start = term.rfind(|c: char| !c.is_ascii_digit())? + 1;
    if digits_start >= term.len() {
        return None;
    }
    let head = &term[..digits_start];
    if !head.ends_with('e') {
        return None;
    }
    let before = head[..head.len() - 1].chars().last();
    match before {
        None => {}
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            // `e` must start the basis token, not end an identifier.
            if c == '_' || c.is_ascii_alphabetic() {
                return None;
            }
        }
        Some(_) => {}
    }
    let k = term[digits_start..].parse::<usize>().ok()?;
    Some((&head[..head.len() - 1], k))
}

// ---- Serialization ----

/// Renders a structure in the file grammar; `parse_structure` inverts this.
pub fn serialize_algebra(a: &AlgebraStructure) -> String {
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", a.label));
    out.push_str(&format!("dim: {}\n", a.dim));
    if !a.params.is_empty() {
        out.push_str(&format!("params: {}\n", a.params.join(", ")));
    }
    if !a.restrictions.is_empty() {
        let rendered: Vec<String> = a
            .restrictions
            .iter()
            .map(|r| Scalar::from_poly(r.clone()).to_string())
            .collect();
        out.push_str(&format!("restrict: {}\n", rendered.join(", ")));
    }
    for i in 0..a.dim {
        for j in 0..a.dim {
            let mut terms: Vec<String> = Vec::new();
            for k in 0..a.dim {
                let c = a.c(i, j, k);
                if c.is_zero() {
                    continue;
                }
                terms.push(render_term(c, k + 1));
            }
            if terms.is_empty() {
                continue;
            }
            let mut rhs = terms[0].clone();
            for t in &terms[1..] {
                if let Some(rest) = t.strip_prefix('-') {
                    rhs.push_str(" - ");
                    rhs.push_str(rest.trim_start());
                } else {
                    rhs.push_str(" + ");
                    rhs.push_str(t);
                }
            }
            out.push_str(&format!("e{} e{} = {}\n", i + 1, j + 1, rhs));
        }
    }
    out
}

fn render_term(c: &Scalar, k: usize) -> String {
    if c.is_one() {
        return format!("e{k}");
    }
    if c.neg().is_one() {
        return format!("-e{k}");
    }
    let s = c.to_string();
    if s.chars().skip(1).any(|ch| ch == '+' || ch == '-') {
        format!("({s}) e{k}")
    } else {
        format!("{s} e{k}")
    }
}

// ---- Built-in inventory ----

static ALGEBRA_SOURCES: &[&str] = &[
    include_str!("../bundle/algebras/R_1.txt"),
    include_str!("../bundle/algebras/R_2.txt"),
    include_str!("../bundle/algebras/R_3.txt"),
    include_str!("../bundle/algebras/sl_2.txt"),
    include_str!("../bundle/algebras/g_4.txt"),
    include_str!("../bundle/algebras/g_5.txt"),
    include_str!("../bundle/algebras/N_3.txt"),
    include_str!("../bundle/algebras/L_2n.txt"),
    include_str!("../bundle/algebras/L_5n.txt"),
    include_str!("../bundle/algebras/L_11n.txt"),
    include_str!("../bundle/algebras/zero.txt"),
    include_str!("../bundle/algebras/L_2.txt"),
    include_str!("../bundle/algebras/L_4.txt"),
    include_str!("../bundle/algebras/L_5.txt"),
    include_str!("../bundle/algebras/L_6.txt"),
    include_str!("../bundle/algebras/L_7.txt"),
    include_str!("../bundle/algebras/L_8.txt"),
    include_str!("../bundle/algebras/L_9.txt"),
    include_str!("../bundle/algebras/L_10.txt"),
    include_str!("../bundle/algebras/L_11.txt"),
    include_str!("../bundle/algebras/L_12.txt"),
    include_str!("../bundle/algebras/L_13.txt"),
    include_str!("../bundle/algebras/L_14.txt"),
    include_str!("../bundle/algebras/L_15.txt"),
    include_str!("../bundle/algebras/L_16.txt"),
    include_str!("../bundle/algebras/L_17.txt"),
    include_str!("../bundle/algebras/L_18.txt"),
    include_str!("../bundle/algebras/L_19.txt"),
    include_str!("../bundle/algebras/L_21.txt"),
    include_str!("../bundle/algebras/L_22.txt"),
    include_str!("../bundle/algebras/L_23.txt"),
    include_str!("../bundle/algebras/L_24.txt"),
    include_str!("../bundle/algebras/L_25.txt"),
    include_str!("../bundle/algebras/L_26.txt"),
    include_str!("../bundle/algebras/L_27.txt"),
    include_str!("../bundle/algebras/L_28.txt"),
    include_str!("../bundle/algebras/L_29.txt"),
    include_str!("../bundle/algebras/L_30.txt"),
    include_str!("../bundle/algebras/L_32.txt"),
    include_str!("../bundle/algebras/L_33.txt"),
    include_str!("../bundle/algebras/L_34.txt"),
    include_str!("../bundle/algebras/L_35.txt"),
    include_str!("../bundle/algebras/L_36.txt"),
    include_str!("../bundle/algebras/L_37.txt"),
    include_str!("../bundle/algebras/L_38.txt"),
    include_str!("../bundle/algebras/L_39.txt"),
    include_str!("../bundle/algebras/L_40.txt"),
    include_str!("../bundle/algebras/L_41.txt"),
    include_str!("../bundle/algebras/L_44.txt"),
];

static BUILTINS: Lazy<BTreeMap<String, CatalogEntry>> = Lazy::new(|| {
    let mut map = BTreeMap::new();
    for src in ALGEBRA_SOURCES {
        let entry = parse_algebra(src).expect("built-in algebra parses");
        map.insert(entry.label().to_string(), entry);
    }
    map
});

/// Looks up a built-in entry; a parameter superscript such as `L_9^a` or
/// `L_21^{a,b}` resolves to the base family label.
pub fn builtin(label: &str) -> Result<&'static CatalogEntry, CatalogError> {
    if let Some(e) = BUILTINS.get(label) {
        return Ok(e);
    }
    if let Some((base, _)) = label.split_once('^') {
        if let Some(e) = BUILTINS.get(base) {
            return Ok(e);
        }
    }
    Err(CatalogError::UnknownLabel(label.to_string()))
}

/// All built-in labels in sorted order.
pub fn builtin_labels() -> Vec<&'static str> {
    BUILTINS.keys().map(|s| s.as_str()).collect()
}

/// Loads every `*.txt` algebra file from a directory, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    let mut out = Vec::new();
    for path in files {
        let text = std::fs::read_to_string(&path)?;
        out.push(parse_algebra(&text).map_err(|e| match e {
            CatalogError::Parse { line, message } => CatalogError::Parse {
                line,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })?);
    }
    Ok(out)
}
