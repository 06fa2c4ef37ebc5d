use std::fmt::Write as _;

use super::{DimensionMap, Graph};
use crate::error::{Error, Result};

/// `graph <n> <m>`, then `e <u> <v>` lines, then optional `l <v> <label>` lines.
pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("graph {} {}\n", g.n(), g.num_edges());
    for &(u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    for v in 0..g.n() {
        if let Some(l) = g.label(v) {
            writeln!(s, "l {v} {l}").unwrap();
        }
    }
    s
}

pub fn write_graph_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        match g.label(v) {
            Some(l) => writeln!(s, "  {v} [label=\"{}\"];", l.replace('"', "\\\"")).unwrap(),
            None => writeln!(s, "  {v};").unwrap(),
        }
    }
    for &(u, v) in g.edges() {
        writeln!(s, "  {u} -- {v};").unwrap();
    }
    s.push_str("}\n");
    s
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what}")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty graph file"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("graph") {
        return Err(Error::parse(hl, "expected `graph <n> <m>`"));
    }
    let n = parse_num(tok.next(), hl, "vertex count")?;
    let m = parse_num(tok.next(), hl, "edge count")?;
    let mut g = Graph::empty(n);
    for (ln, line) in lines {
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("e") => {
                let u = parse_num(tok.next(), ln, "endpoint")?;
                let v = parse_num(tok.next(), ln, "endpoint")?;
                g.add_edge(u, v).map_err(|e| Error::parse(ln, e.to_string()))?;
            }
            Some("l") => {
                let v = parse_num(tok.next(), ln, "vertex")?;
                if v >= n {
                    return Err(Error::parse(ln, format!("label for vertex {v} out of range")));
                }
                let rest = line[1..].trim_start();
                let label = rest[rest.find(char::is_whitespace).unwrap_or(rest.len())..].trim();
                if label.is_empty() {
                    return Err(Error::parse(ln, "empty label"));
                }
                g.set_label(v, label);
            }
            _ => return Err(Error::parse(ln, format!("unrecognised line `{line}`"))),
        }
    }
    if g.num_edges() != m {
        return Err(Error::parse(
            hl,
            format!("header declares {m} edges, found {}", g.num_edges()),
        ));
    }
    Ok(g)
}

/// Only the `l <v> <label>` lines of the graph format.
pub fn write_labels(g: &Graph) -> String {
    let mut s = String::new();
    for v in 0..g.n() {
        if let Some(l) = g.label(v) {
            writeln!(s, "l {v} {l}").unwrap();
        }
    }
    s
}

/// Per-vertex labels from `l <v> <label>` lines; unlabeled vertices get `None`.
pub fn parse_labels(text: &str, n: usize) -> Result<Vec<Option<String>>> {
    let mut out = vec![None; n];
    for (ln, line) in content_lines(text) {
        let rest = line
            .strip_prefix("l ")
            .ok_or_else(|| Error::parse(ln, "expected `l <v> <label>`"))?
            .trim_start();
        let (v, label) = rest
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::parse(ln, "missing label"))?;
        let v: usize = v.parse().map_err(|_| Error::parse(ln, "bad vertex"))?;
        if v >= n {
            return Err(Error::parse(ln, format!("label for vertex {v} out of range")));
        }
        out[v] = Some(label.trim().to_string());
    }
    Ok(out)
}

/// One `f <v> <d>` line per vertex.
pub fn write_dimension_map(f: &DimensionMap) -> String {
    let mut s = String::new();
    for (v, d) in f.values().iter().enumerate() {
        writeln!(s, "f {v} {d}").unwrap();
    }
    s
}

pub fn parse_dimension_map(text: &str, n: usize) -> Result<DimensionMap> {
    let mut vals = vec![0usize; n];
    for (ln, line) in content_lines(text) {
        let mut tok = line.split_whitespace();
        if tok.next() != Some("f") {
            return Err(Error::parse(ln, "expected `f <v> <d>`"));
        }
        let v = parse_num(tok.next(), ln, "vertex")?;
        let d = parse_num(tok.next(), ln, "dimension")?;
        if v >= n {
            return Err(Error::parse(ln, format!("vertex {v} out of range")));
        }
        if d == 0 {
            return Err(Error::parse(ln, "dimension must be positive"));
        }
        vals[v] = d;
    }
    if let Some(v) = vals.iter().position(|&d| d == 0) {
        return Err(Error::parse(0, format!("no dimension given for vertex {v}")));
    }
    DimensionMap::new(vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip_with_labels() {
        let mut g = Graph::cycle(4).unwrap();
        g.set_label(0, "in");
        g.set_label(2, "~x1 top");
        let text = write_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn graph_parse_errors() {
        assert!(matches!(
            parse_graph("graph 2 1\ne 0 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_graph("graph 2 2\ne 0 1\n").is_err());
        assert!(parse_graph("grph 2 0\n").is_err());
    }

    #[test]
    fn dimension_map_round_trip() {
        let f = DimensionMap::new(vec![2, 3, 2]).unwrap();
        assert_eq!(parse_dimension_map(&write_dimension_map(&f), 3).unwrap(), f);
        assert!(parse_dimension_map("f 0 2\n", 2).is_err());
    }
}
