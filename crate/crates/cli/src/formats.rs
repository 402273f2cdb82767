//! Text formats: tournament matrices, id lists, DIMACS cnf and `p edge` graphs.

use dwlab_core::reductions::{Balanced3Sat4, CubicGraph, Literal};
use dwlab_core::{Ordering, Tournament, VertexSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> FormatError {
    FormatError {
        line,
        col,
        msg: msg.into(),
    }
}

/// Non-comment lines with their 1-based line numbers. Trailing `\r` and
/// surrounding blanks are stripped; blank lines are skipped.
fn content_lines(
    text: &str,
    comment: impl Fn(&str) -> bool,
) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(move |(_, l)| !l.is_empty() && !comment(l))
}

/// Parses the matrix format: a line holding `n`, then `n` rows of `0`/`1`
/// where row `i`, column `j` is `1` iff `i -> j`. Lines starting with `#`
/// are ignored.
pub fn parse_tournament(text: &str) -> Result<Tournament, FormatError> {
    let mut lines = content_lines(text, |l| l.starts_with('#'));
    let (dim_line, dim) = lines
        .next()
        .ok_or_else(|| err(1, 1, "missing dimension line"))?;
    let n: usize = dim
        .parse()
        .map_err(|_| err(dim_line, 1, format!("malformed dimension {dim:?}")))?;
    if n == 0 {
        return Err(err(dim_line, 1, "dimension must be at least 1"));
    }
    let mut rows: Vec<(usize, Vec<bool>)> = Vec::with_capacity(n);
    for (line, row) in lines.by_ref().take(n) {
        let mut bits = Vec::with_capacity(n);
        for (c, ch) in row.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(err(line, c + 1, format!("unexpected character {ch:?}"))),
            }
        }
        if bits.len() != n {
            return Err(err(
                line,
                bits.len().min(n) + 1,
                format!("row has {} entries, expected {n}", bits.len()),
            ));
        }
        rows.push((line, bits));
    }
    if rows.len() < n {
        let last = rows.last().map_or(dim_line, |r| r.0);
        return Err(err(
            last + 1,
            1,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, 1, "trailing content after the matrix"));
    }
    for (i, (line, bits)) in rows.iter().enumerate() {
        if bits[i] {
            return Err(err(*line, i + 1, format!("self-loop on vertex {i}")));
        }
        for j in 0..i {
            match (rows[j].1[i], bits[j]) {
                (true, true) => {
                    return Err(err(
                        *line,
                        j + 1,
                        format!("both {j}->{i} and {i}->{j} present"),
                    ))
                }
                (false, false) => {
                    return Err(err(*line, j + 1, format!("pair {{{j}, {i}}} undecided")))
                }
                _ => {}
            }
        }
    }
    Ok(Tournament::from_fn(n, |u, v| rows[u].1[v]).expect("matrix validated"))
}

pub fn emit_tournament(t: &Tournament) -> String {
    let n = t.n();
    let mut out = String::with_capacity((n + 1) * (n + 1) + 8);
    out.push_str(&n.to_string());
    out.push('\n');
    for u in 0..n {
        out.extend((0..n).map(|v| if t.has_arc(u, v) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// Whitespace-separated ids on one line, newline terminated.
pub fn emit_ids(ids: &[usize]) -> String {
    let mut s = ids
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}

/// Whitespace-separated 0-based ids; `#` lines are ignored.
pub fn parse_ids(text: &str) -> Result<Vec<usize>, FormatError> {
    let mut ids = Vec::new();
    for (line, l) in content_lines(text, |l| l.starts_with('#')) {
        let mut col = 1;
        for tok in l.split_whitespace() {
            let at = l[col - 1..].find(tok).expect("token comes from the line") + col;
            ids.push(
                tok.parse()
                    .map_err(|_| err(line, at, format!("not a vertex id: {tok:?}")))?,
            );
            col = at + tok.len();
        }
    }
    Ok(ids)
}

pub fn parse_ordering(text: &str, n: usize) -> Result<Ordering, FormatError> {
    let ids = parse_ids(text)?;
    if ids.len() != n {
        return Err(err(
            1,
            1,
            format!("ordering lists {} vertices, tournament has {n}", ids.len()),
        ));
    }
    Ordering::new(ids).map_err(|e| err(1, 1, e.to_string()))
}

pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet, FormatError> {
    let ids = parse_ids(text)?;
    let mut set = VertexSet::new(n);
    for v in ids {
        if v >= n {
            return Err(err(
                1,
                1,
                format!("vertex {v} out of range for {n} vertices"),
            ));
        }
        if !set.insert(v) {
            return Err(err(1, 1, format!("vertex {v} repeated")));
        }
    }
    Ok(set)
}

fn is_dimacs_comment(l: &str) -> bool {
    l.starts_with('c') || l.starts_with('%')
}

fn parse_header<'a>(line: usize, l: &'a str, kind: &str) -> Result<(usize, usize), FormatError> {
    let parts: Vec<&'a str> = l.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "p" || parts[1] != kind {
        return Err(err(line, 1, format!("expected `p {kind} <count> <count>`")));
    }
    let num = |s: &str, col| {
        s.parse::<usize>()
            .map_err(|_| err(line, col, format!("not a count: {s:?}")))
    };
    Ok((num(parts[2], 3)?, num(parts[3], 4)?))
}

/// DIMACS cnf restricted to 3-literal clauses; balance is checked on top.
pub fn parse_cnf(text: &str) -> Result<Balanced3Sat4, FormatError> {
    let mut lines = content_lines(text, is_dimacs_comment);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, 1, "missing `p cnf` header"))?;
    let (vars, clauses) = parse_header(hline, header, "cnf")?;
    let mut out = Vec::with_capacity(clauses);
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = hline;
    for (line, l) in lines {
        last_line = line;
        for tok in l.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| err(line, 1, format!("not a literal: {tok:?}")))?;
            if x == 0 {
                let clause: [Literal; 3] = current.as_slice().try_into().map_err(|_| {
                    err(
                        line,
                        1,
                        format!("clause has {} literals, expected 3", current.len()),
                    )
                })?;
                out.push(clause);
                current.clear();
                continue;
            }
            let var = x.unsigned_abs() as usize;
            if var > vars {
                return Err(err(
                    line,
                    1,
                    format!("variable {var} exceeds the declared {vars}"),
                ));
            }
            current.push(Literal {
                var: var - 1,
                positive: x > 0,
            });
        }
    }
    if !current.is_empty() {
        return Err(err(last_line, 1, "last clause is not terminated by 0"));
    }
    if out.len() != clauses {
        return Err(err(
            hline,
            1,
            format!("header declares {clauses} clauses, found {}", out.len()),
        ));
    }
    Balanced3Sat4::new(vars, out).map_err(|e| err(hline, 1, e.to_string()))
}

/// `p edge N M` followed by `e u v` lines with 1-based endpoints.
pub fn parse_edge_graph(text: &str) -> Result<CubicGraph, FormatError> {
    let mut lines = content_lines(text, is_dimacs_comment);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, 1, "missing `p edge` header"))?;
    let (n, m) = parse_header(hline, header, "edge")?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "e" {
            return Err(err(line, 1, "expected `e <u> <v>`"));
        }
        let end = |s: &str, col| match s.parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
            _ => Err(err(line, col, format!("endpoint {s:?} not in 1..={n}"))),
        };
        edges.push((end(parts[1], 2)?, end(parts[2], 3)?));
    }
    if edges.len() != m {
        return Err(err(
            hline,
            1,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    CubicGraph::new(n, &edges).map_err(|e| err(hline, 1, e.to_string()))
}

pub fn emit_edge_graph(g: &CubicGraph) -> String {
    let mut out = format!("p edge {} {}\n", g.n, g.edges.len());
    for &(u, v) in &g.edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn emit_cnf(f: &Balanced3Sat4) -> String {
    let mut out = format!("p cnf {} {}\n", f.n_vars, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            let v = l.var as i64 + 1;
            out.push_str(&format!("{} ", if l.positive { v } else { -v }));
        }
        out.push_str("0\n");
    }
    out
}
