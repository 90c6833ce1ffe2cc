//! Plain-text and JSON instance formats.
//!
//! * graph: `n m`, then `m` lines `u v` or `u v w` (0-based ids, positive
//!   integer weight, no duplicates or self-loops)
//! * table: `n`, then `2^n` lines `mask value` with `value` an integer or `p/q`
//! * matroid: JSON, see [`MatroidSpec`]
//! * weights: lines `id weight`; unlisted ids weigh 0
//! * arcs: lines `a b`, meaning `a ∈ S ⟹ b ∈ S`
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::fs;
use std::path::Path;

use crate::closure::DependencyDigraph;
use crate::error::{Error, Result};
use crate::matroid::{MatroidOracle, MatroidSpec};
use crate::rational::Rational;
use crate::setfn::{SetFunctionOracle, MAX_TABLE_ELEMENTS};
use crate::subset::Subset;

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(Some(line), format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(Some(line), format!("invalid {what} {tok:?}")))
}

fn no_more<'a>(mut toks: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match toks.next() {
        Some(t) => Err(Error::parse(Some(line), format!("unexpected token {t:?}"))),
        None => Ok(()),
    }
}

fn id_in_range(id: usize, n: usize, line: usize) -> Result<usize> {
    if id >= n {
        return Err(Error::parse(
            Some(line),
            format!("element id {id} out of range for n = {n}"),
        ));
    }
    Ok(id)
}

pub fn parse_graph(text: &str) -> Result<SetFunctionOracle> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(None, "empty graph file"))?;
    let mut toks = header.split_whitespace();
    let n: usize = field(toks.next(), hl, "vertex count")?;
    let m: usize = field(toks.next(), hl, "edge count")?;
    no_more(toks, hl)?;
    if n == 0 {
        return Err(Error::parse(Some(hl), "vertex count must be positive"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut weighted = false;
    let mut seen = std::collections::HashMap::new();
    for (ln, l) in lines {
        if edges.len() == m {
            return Err(Error::parse(Some(ln), format!("more than {m} edge lines")));
        }
        let mut toks = l.split_whitespace();
        let u = id_in_range(field(toks.next(), ln, "endpoint")?, n, ln)?;
        let v = id_in_range(field(toks.next(), ln, "endpoint")?, n, ln)?;
        let w = match toks.next() {
            Some(t) => {
                weighted = true;
                let w: u64 = field(Some(t), ln, "weight")?;
                if w == 0 {
                    return Err(Error::parse(Some(ln), "edge weight must be positive"));
                }
                w
            }
            None => 1,
        };
        no_more(toks, ln)?;
        if u == v {
            return Err(Error::parse(Some(ln), format!("self-loop on vertex {u}")));
        }
        if let Some(prev) = seen.insert((u.min(v), u.max(v)), ln) {
            return Err(Error::parse(
                Some(ln),
                format!("duplicate edge ({u}, {v}), first given on line {prev}"),
            ));
        }
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(Error::parse(
            None,
            format!("header promises {m} edges, found {}", edges.len()),
        ));
    }
    if weighted {
        SetFunctionOracle::weighted_graph(n, &edges)
    } else {
        let plain: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        SetFunctionOracle::graph(n, &plain)
    }
}

pub fn parse_table(text: &str) -> Result<SetFunctionOracle> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(None, "empty table file"))?;
    let mut toks = header.split_whitespace();
    let n: usize = field(toks.next(), hl, "element count")?;
    no_more(toks, hl)?;
    if n == 0 {
        return Err(Error::parse(Some(hl), "element count must be positive"));
    }
    if n > MAX_TABLE_ELEMENTS {
        return Err(Error::CapExceeded {
            n,
            cap: MAX_TABLE_ELEMENTS,
        });
    }
    let size = 1usize << n;
    let mut values: Vec<Option<Rational>> = vec![None; size];
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        let mask: usize = field(toks.next(), ln, "mask")?;
        let value: Rational = field(toks.next(), ln, "value")?;
        no_more(toks, ln)?;
        if mask >= size {
            return Err(Error::parse(
                Some(ln),
                format!("mask {mask} out of range for n = {n}"),
            ));
        }
        if value.is_negative() {
            return Err(Error::parse(Some(ln), format!("negative value {value}")));
        }
        if values[mask].replace(value).is_some() {
            return Err(Error::parse(Some(ln), format!("mask {mask} given twice")));
        }
    }
    if let Some(missing) = values.iter().position(Option::is_none) {
        return Err(Error::parse(None, format!("no value for mask {missing}")));
    }
    if values[0] != Some(Rational::ZERO) {
        return Err(Error::parse(
            None,
            "value of mask 0 (the empty set) must be 0",
        ));
    }
    SetFunctionOracle::table(n, values.into_iter().map(Option::unwrap).collect())
}

pub fn parse_matroid(text: &str, n: usize) -> Result<MatroidOracle> {
    let spec: MatroidSpec = serde_json::from_str(text)
        .map_err(|e| Error::parse(Some(e.line()), format!("matroid JSON: {e}")))?;
    spec.build(n)
}

pub fn parse_weights(text: &str, n: usize) -> Result<Vec<u64>> {
    let mut weights = vec![0u64; n];
    let mut given = vec![false; n];
    for (ln, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        let id = id_in_range(field(toks.next(), ln, "element id")?, n, ln)?;
        let w: u64 = field(toks.next(), ln, "weight")?;
        no_more(toks, ln)?;
        if std::mem::replace(&mut given[id], true) {
            return Err(Error::parse(
                Some(ln),
                format!("weight for {id} given twice"),
            ));
        }
        weights[id] = w;
    }
    Ok(weights)
}

pub fn parse_arcs(text: &str, n: usize) -> Result<DependencyDigraph> {
    let mut arcs = Vec::new();
    for (ln, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        let a = id_in_range(field(toks.next(), ln, "arc tail")?, n, ln)?;
        let b = id_in_range(field(toks.next(), ln, "arc head")?, n, ln)?;
        no_more(toks, ln)?;
        arcs.push((a, b));
    }
    DependencyDigraph::new(n, arcs)
}

/// One label per content line, in element order.
pub fn parse_labels(text: &str) -> Vec<String> {
    content_lines(text).map(|(_, l)| l.to_owned()).collect()
}

/// Comma-separated ids, e.g. `0,3,5`.
pub fn parse_id_list(text: &str, n: usize) -> Result<Subset> {
    let mut ids = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let id: usize = tok
            .parse()
            .map_err(|_| Error::parse(None, format!("invalid element id {tok:?}")))?;
        if id >= n {
            return Err(Error::parse(
                None,
                format!("element id {id} out of range for n = {n}"),
            ));
        }
        ids.push(id);
    }
    Subset::from_ids(n, ids)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        path: Some(path.to_owned()),
        line: None,
        msg: e.to_string(),
    })
}

pub fn read_graph(path: &Path) -> Result<SetFunctionOracle> {
    parse_graph(&read(path)?).map_err(|e| e.with_path(path))
}

pub fn read_table(path: &Path) -> Result<SetFunctionOracle> {
    parse_table(&read(path)?).map_err(|e| e.with_path(path))
}

pub fn read_matroid(path: &Path, n: usize) -> Result<MatroidOracle> {
    parse_matroid(&read(path)?, n).map_err(|e| e.with_path(path))
}

pub fn read_weights(path: &Path, n: usize) -> Result<Vec<u64>> {
    parse_weights(&read(path)?, n).map_err(|e| e.with_path(path))
}

pub fn read_arcs(path: &Path, n: usize) -> Result<DependencyDigraph> {
    parse_arcs(&read(path)?, n).map_err(|e| e.with_path(path))
}

pub fn read_labels(path: &Path) -> Result<Vec<String>> {
    Ok(parse_labels(&read(path)?))
}
