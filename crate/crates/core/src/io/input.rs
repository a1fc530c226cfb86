//! The sectioned job file: `[ring]`, `[module]`, `[params]` with `key = value` lines.

use super::poly_parse::parse_poly;
use crate::algebra::{GradedMatrix, GradedRing, Poly, RingRef};
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::sync::Arc;

const MAX_VARS: usize = 26;
const MAX_ENTRIES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub p: u64,
    pub vars: Vec<String>,
    pub degs: Vec<u32>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub matrix: Vec<Vec<String>>,
    pub row_twists: Vec<i32>,
    pub col_twists: Vec<i32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub n: Option<usize>,
    pub smax: Option<usize>,
    pub g: Vec<String>,
}

/// A validated job; every polynomial is stored in canonical printed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Option<String>,
    pub ring: RingSpec,
    pub module: Option<ModuleSpec>,
    pub params: Params,
}

impl JobSpec {
    /// `R = Q/(relations)`.
    pub fn ring(&self) -> Result<RingRef> {
        let q = self.ambient()?;
        let rels = self.relations(&q)?;
        Ok(Arc::new(q.with_relations(rels)?))
    }

    pub fn ambient(&self) -> Result<RingRef> {
        let vars: Vec<&str> = self.ring.vars.iter().map(String::as_str).collect();
        Ok(Arc::new(GradedRing::new(self.ring.p, &vars, &self.ring.degs, Vec::new())?))
    }

    pub fn relations(&self, q: &GradedRing) -> Result<Vec<Poly>> {
        self.ring.relations.iter().map(|s| q.parse(s)).collect()
    }

    /// The module presentation, or the residue field when no `[module]` section was given.
    pub fn module_matrix(&self, q: &GradedRing) -> Result<GradedMatrix> {
        let Some(m) = &self.module else {
            return GradedMatrix::new(vec![0], q.weights().iter().map(|&w| w as i32).collect(), vec![q.vars()]);
        };
        let entries = m.matrix.iter().map(|row| row.iter().map(|s| q.parse(s)).collect()).collect::<Result<_>>()?;
        GradedMatrix::new(m.row_twists.clone(), m.col_twists.clone(), entries)
    }

    pub fn g_elements(&self, a: &GradedRing) -> Result<Vec<Poly>> {
        self.params.g.iter().map(|s| a.parse(s)).collect()
    }

    pub fn operator_ring(&self) -> Result<GradedRing> {
        GradedRing::operator_ring(self.ring.p, self.ring.relations.len())
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// A comma-separated item with its 1-based column.
fn split_items(value: &str, col: usize) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in value.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        out.push((piece.trim().to_string(), col + start + lead));
        start += piece.len() + 1;
    }
    if out.len() == 1 && out[0].0.is_empty() {
        out.clear();
    }
    out
}

fn parse_uint<T: std::str::FromStr>(s: &str, line: usize, col: usize) -> Result<T> {
    s.parse().map_err(|_| parse_err(line, col, format!("expected a nonnegative integer, found `{s}`")))
}

fn parse_int(s: &str, line: usize, col: usize) -> Result<i32> {
    s.parse().map_err(|_| parse_err(line, col, format!("expected an integer, found `{s}`")))
}

fn check_identifier(s: &str, line: usize, col: usize) -> Result<()> {
    let mut chars = s.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok {
        return Err(parse_err(line, col, format!("`{s}` is not a variable name")));
    }
    Ok(())
}

#[derive(Default)]
struct Raw {
    // key -> (value, line, value column)
    ring: Vec<(String, String, usize, usize)>,
    module: Vec<(String, String, usize, usize)>,
    params: Vec<(String, String, usize, usize)>,
    seen: Vec<&'static str>,
}

fn lex(text: &str) -> Result<Raw> {
    let mut raw = Raw::default();
    let mut section: Option<&'static str> = None;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        if trimmed.starts_with('[') {
            let name = match trimmed {
                "[ring]" => "ring",
                "[module]" => "module",
                "[params]" => "params",
                _ => return Err(parse_err(ln, indent + 1, format!("unknown section `{trimmed}`"))),
            };
            if raw.seen.contains(&name) {
                return Err(parse_err(ln, indent + 1, format!("duplicate section `{trimmed}`")));
            }
            raw.seen.push(name);
            section = Some(name);
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(parse_err(ln, indent + 1, "expected `key = value`"));
        };
        let key = line[..eq].trim().to_string();
        let value = &line[eq + 1..];
        let lead = value.len() - value.trim_start().len();
        let vcol = eq + 2 + lead;
        let entry = (key.clone(), value.trim().to_string(), ln, vcol);
        let list = match section {
            Some("ring") => &mut raw.ring,
            Some("module") => &mut raw.module,
            Some("params") => &mut raw.params,
            _ => return Err(parse_err(ln, indent + 1, "key outside of a section")),
        };
        if list.iter().any(|(k, ..)| *k == key) {
            return Err(parse_err(ln, indent + 1, format!("duplicate key `{key}`")));
        }
        list.push(entry);
    }
    Ok(raw)
}

fn check_keys(list: &[(String, String, usize, usize)], allowed: &[&str]) -> Result<()> {
    for (k, _, ln, col) in list {
        if !allowed.contains(&k.as_str()) {
            return Err(parse_err(*ln, col.saturating_sub(k.len() + 3).max(1), format!("unknown key `{k}`")));
        }
    }
    Ok(())
}

fn get<'a>(list: &'a [(String, String, usize, usize)], key: &str) -> Option<(&'a str, usize, usize)> {
    list.iter().find(|(k, ..)| k == key).map(|(_, v, l, c)| (v.as_str(), *l, *c))
}

fn homogeneous_entry(ring: &GradedRing, s: &str, line: usize, col: usize, want: Option<i32>) -> Result<Poly> {
    let f = parse_poly(ring, s, line, col)?;
    match (f.homogeneous_degree(), want) {
        (None, _) => Err(Error::InhomogeneousEntry { line, col, msg: format!("`{s}` is not homogeneous") }),
        (Some(Some(d)), Some(w)) if d as i32 != w => Err(Error::InhomogeneousEntry {
            line,
            col,
            msg: format!("`{s}` has degree {d}, expected {w}"),
        }),
        _ => Ok(f),
    }
}

/// Parses and validates a job file.
pub fn parse_input(text: &str) -> Result<JobSpec> {
    let raw = lex(text)?;
    if !raw.seen.contains(&"ring") {
        return Err(parse_err(1, 1, "missing [ring] section"));
    }
    check_keys(&raw.ring, &["p", "vars", "degs", "relations"])?;
    check_keys(&raw.module, &["matrix", "row_twists", "col_twists"])?;
    check_keys(&raw.params, &["N", "smax", "g"])?;

    let p = match get(&raw.ring, "p") {
        Some((v, l, c)) => parse_uint::<u64>(v, l, c)?,
        None => GradedRing::default_prime(),
    };
    let (vtext, vl, vc) = get(&raw.ring, "vars").ok_or_else(|| parse_err(1, 1, "[ring] needs `vars`"))?;
    let items = split_items(vtext, vc);
    if items.is_empty() {
        return Err(parse_err(vl, vc, "at least one variable is required"));
    }
    if items.len() > MAX_VARS {
        return Err(parse_err(vl, vc, format!("at most {MAX_VARS} variables are supported")));
    }
    let mut vars = Vec::new();
    for (name, col) in &items {
        check_identifier(name, vl, *col)?;
        if vars.contains(name) {
            return Err(parse_err(vl, *col, format!("duplicate variable `{name}`")));
        }
        vars.push(name.clone());
    }
    let degs = match get(&raw.ring, "degs") {
        Some((v, l, c)) => {
            let items = split_items(v, c);
            if items.len() != vars.len() {
                return Err(parse_err(l, c, format!("{} degrees for {} variables", items.len(), vars.len())));
            }
            let mut out = Vec::new();
            for (s, col) in items {
                let d: u32 = parse_uint(&s, l, col)?;
                if d == 0 || d > 64 {
                    return Err(parse_err(l, col, "degrees must lie in 1..=64"));
                }
                out.push(d);
            }
            out
        }
        None => vec![1; vars.len()],
    };
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let q = GradedRing::new(p, &refs, &degs, Vec::new())?;

    let mut relations = Vec::new();
    if let Some((v, l, c)) = get(&raw.ring, "relations") {
        for (s, col) in split_items(v, c) {
            let f = homogeneous_entry(&q, &s, l, col, None)?;
            if f.is_zero() {
                return Err(Error::InhomogeneousEntry { line: l, col, msg: "relations must be nonzero".into() });
            }
            relations.push(q.fmt_poly(&f));
        }
    }
    if relations.len() > 16 {
        return Err(parse_err(1, 1, "at most 16 relations are supported"));
    }

    let module = if raw.seen.contains(&"module") {
        Some(parse_module(&raw, &q)?)
    } else {
        None
    };

    let mut params = Params::default();
    if let Some((v, l, c)) = get(&raw.params, "N") {
        params.n = Some(parse_uint(v, l, c)?);
    }
    if let Some((v, l, c)) = get(&raw.params, "smax") {
        params.smax = Some(parse_uint(v, l, c)?);
    }
    if let Some((v, l, c)) = get(&raw.params, "g") {
        let a = GradedRing::operator_ring(p, relations.len())?;
        for (s, col) in split_items(v, c) {
            let g = homogeneous_entry(&a, &s, l, col, None)?;
            params.g.push(a.fmt_poly(&g));
        }
    }
    Ok(JobSpec { command: None, ring: RingSpec { p, vars, degs, relations }, module, params })
}

fn parse_module(raw: &Raw, q: &GradedRing) -> Result<ModuleSpec> {
    let mut cells: Vec<Vec<(String, usize)>> = Vec::new();
    let mut mline = 1;
    if let Some((v, l, c)) = get(&raw.module, "matrix") {
        mline = l;
        let mut start = 0;
        for row in v.split(';') {
            let lead = row.len() - row.trim_start().len();
            let items = split_items(row.trim(), c + start + lead);
            start += row.len() + 1;
            cells.push(items);
        }
        if cells.iter().all(Vec::is_empty) {
            cells.clear();
        }
    }
    if cells.iter().map(Vec::len).sum::<usize>() > MAX_ENTRIES {
        return Err(parse_err(mline, 1, "matrix too large"));
    }
    let ncols = cells.first().map_or(0, Vec::len);
    if let Some(bad) = cells.iter().position(|r| r.len() != ncols) {
        return Err(parse_err(mline, 1, format!("row {} has {} entries, expected {ncols}", bad + 1, cells[bad].len())));
    }
    let twists = |key: &str| -> Result<Option<Vec<i32>>> {
        match get(&raw.module, key) {
            Some((v, l, c)) => split_items(v, c).into_iter().map(|(s, col)| parse_int(&s, l, col)).collect::<Result<Vec<_>>>().map(Some),
            None => Ok(None),
        }
    };
    let row_twists = match twists("row_twists")? {
        Some(t) => t,
        None => vec![0; cells.len().max(1)],
    };
    if !cells.is_empty() && row_twists.len() != cells.len() {
        return Err(parse_err(mline, 1, format!("{} rows but {} row twists", cells.len(), row_twists.len())));
    }
    if row_twists.len() > MAX_ENTRIES {
        return Err(parse_err(mline, 1, "too many rows"));
    }
    let explicit_cols = twists("col_twists")?;
    if let Some(t) = &explicit_cols {
        if t.len() != ncols {
            return Err(parse_err(mline, 1, format!("{ncols} columns but {} column twists", t.len())));
        }
    }
    let mut matrix = vec![Vec::with_capacity(ncols); row_twists.len()];
    let mut col_twists = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let mut want = explicit_cols.as_ref().map(|t| t[j]);
        for (i, row) in cells.iter().enumerate() {
            let (s, col) = &row[j];
            let f = homogeneous_entry(q, s, mline, *col, want.map(|w| w - row_twists[i]))?;
            if want.is_none() {
                if let Some(Some(d)) = f.homogeneous_degree() {
                    want = Some(row_twists[i] + d as i32);
                }
            }
            matrix[i].push(q.fmt_poly(&f));
        }
        col_twists.push(want.unwrap_or(0));
    }
    Ok(ModuleSpec { matrix, row_twists, col_twists })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Canonical text of a job; `parse_input(&print_job(j)) == j` up to the command field.
pub fn print_job(job: &JobSpec) -> String {
    let mut out = String::new();
    let r = &job.ring;
    writeln!(out, "[ring]").unwrap();
    writeln!(out, "p = {}", r.p).unwrap();
    writeln!(out, "vars = {}", join(&r.vars)).unwrap();
    writeln!(out, "degs = {}", join(&r.degs)).unwrap();
    writeln!(out, "relations = {}", join(&r.relations)).unwrap();
    if let Some(m) = &job.module {
        writeln!(out, "\n[module]").unwrap();
        let rows: Vec<String> = m.matrix.iter().map(|row| join(row)).collect();
        writeln!(out, "matrix = {}", rows.join("; ")).unwrap();
        writeln!(out, "row_twists = {}", join(&m.row_twists)).unwrap();
        writeln!(out, "col_twists = {}", join(&m.col_twists)).unwrap();
    }
    let p = &job.params;
    if p.n.is_some() || p.smax.is_some() || !p.g.is_empty() {
        writeln!(out, "\n[params]").unwrap();
        if let Some(n) = p.n {
            writeln!(out, "N = {n}").unwrap();
        }
        if let Some(s) = p.smax {
            writeln!(out, "smax = {s}").unwrap();
        }
        if !p.g.is_empty() {
            writeln!(out, "g = {}", join(&p.g)).unwrap();
        }
    }
    out
}
