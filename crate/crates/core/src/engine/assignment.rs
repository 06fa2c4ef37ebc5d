use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::graphs::{DimensionMap, Graph};
use crate::linalg::{Subspace, Vector};

/// A graph together with one subspace `W_v` of `F^t` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceAssignment {
    graph: Graph,
    field: FieldSpec,
    ambient: usize,
    subspaces: Vec<Subspace>,
}

impl SubspaceAssignment {
    pub fn new(graph: Graph, field: FieldSpec, ambient: usize, subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.len() != graph.n() {
            return Err(Error::invalid(format!(
                "{} subspaces for {} vertices",
                subspaces.len(),
                graph.n()
            )));
        }
        for s in &subspaces {
            if s.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), s.field().to_string()));
            }
            if s.ambient() != ambient {
                return Err(Error::AmbientMismatch(ambient, s.ambient()));
            }
        }
        Ok(SubspaceAssignment {
            graph,
            field,
            ambient,
            subspaces,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn subspace(&self, v: usize) -> &Subspace {
        &self.subspaces[v]
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }

    /// Whether every `dim W_v` equals `f(v)`.
    pub fn matches(&self, f: &DimensionMap) -> bool {
        f.len() == self.graph.n() && self.dims() == f.values()
    }

    /// Copy with `W_v` replaced.
    pub fn with_subspace(&self, v: usize, s: Subspace) -> Result<Self> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), s.field().to_string()));
        }
        if s.ambient() != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, s.ambient()));
        }
        let mut out = self.clone();
        out.subspaces[v] = s;
        Ok(out)
    }

    /// Copy with `W_v` narrowed to the line through `x`.
    pub fn pin(&self, v: usize, x: &Vector) -> Result<Self> {
        self.with_subspace(v, Subspace::span(self.field, self.ambient, std::slice::from_ref(x))?)
    }

    /// Induced assignment on `vertices` (renumbered in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Self {
        SubspaceAssignment {
            graph: self.graph.induced(vertices),
            field: self.field,
            ambient: self.ambient,
            subspaces: vertices.iter().map(|&v| self.subspaces[v].clone()).collect(),
        }
    }

    /// `field`, `ambient`, then per vertex `v <id> dim <d>` and its basis rows.
    pub fn to_text(&self) -> String {
        let mut s = format!("field {}\nambient {}\n", self.field, self.ambient);
        for (v, w) in self.subspaces.iter().enumerate() {
            writeln!(s, "v {v} dim {}", w.dim()).unwrap();
            for row in w.basis() {
                writeln!(s, "{row}").unwrap();
            }
        }
        s
    }

    /// Parses the assignment text for a known graph. Rows need not be in
    /// reduced form; they are canonicalized, and `dim` must match their rank.
    pub fn parse(graph: Graph, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .peekable();
        let (field, ambient) = parse_header(&mut lines)?;
        let mut subspaces: Vec<Option<Subspace>> = vec![None; graph.n()];
        while let Some((ln, line)) = lines.next() {
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != 4 || tok[0] != "v" || tok[2] != "dim" {
                return Err(Error::parse(ln, "expected `v <id> dim <d>`"));
            }
            let v: usize = tok[1].parse().map_err(|_| Error::parse(ln, "bad vertex id"))?;
            let d: usize = tok[3].parse().map_err(|_| Error::parse(ln, "bad dimension"))?;
            if v >= graph.n() {
                return Err(Error::parse(ln, format!("vertex {v} out of range")));
            }
            if subspaces[v].is_some() {
                return Err(Error::parse(ln, format!("vertex {v} given twice")));
            }
            let mut rows = Vec::with_capacity(d);
            for _ in 0..d {
                let (rl, row) = lines.next().ok_or_else(|| Error::parse(ln, "missing basis row"))?;
                rows.push(Vector::parse_row(field, row, ambient).map_err(|e| relocate(e, rl))?);
            }
            let s = Subspace::span(field, ambient, &rows)?;
            if s.dim() != d {
                return Err(Error::parse(
                    ln,
                    format!("rows of vertex {v} have rank {}, not {d}", s.dim()),
                ));
            }
            subspaces[v] = Some(s);
        }
        let subspaces = subspaces
            .into_iter()
            .enumerate()
            .map(|(v, s)| s.ok_or_else(|| Error::parse(0, format!("no subspace for vertex {v}"))))
            .collect::<Result<Vec<_>>>()?;
        SubspaceAssignment::new(graph, field, ambient, subspaces)
    }
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => Error::parse(line, other.to_string()),
    }
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(FieldSpec, usize)> {
    let (fl, fline) = lines.next().ok_or_else(|| Error::parse(1, "missing `field` line"))?;
    let field = match fline.strip_prefix("field") {
        Some(rest) => rest.trim().parse::<FieldSpec>().map_err(|e| relocate(e, fl))?,
        None => return Err(Error::parse(fl, "expected `field p|Q`")),
    };
    let (al, aline) = lines.next().ok_or_else(|| Error::parse(fl, "missing `ambient` line"))?;
    let ambient = match aline.strip_prefix("ambient") {
        Some(rest) => rest
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::parse(al, "bad ambient"))?,
        None => return Err(Error::parse(al, "expected `ambient <t>`")),
    };
    if ambient == 0 {
        return Err(Error::parse(al, "ambient dimension must be positive"));
    }
    Ok((field, ambient))
}

/// One nonzero vector per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choice {
    vectors: Vec<Vector>,
}

impl Choice {
    pub fn new(vectors: Vec<Vector>) -> Self {
        Choice { vectors }
    }

    pub fn get(&self, v: usize) -> &Vector {
        &self.vectors[v]
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn set(&mut self, v: usize, x: Vector) {
        self.vectors[v] = x;
    }

    pub fn to_text(&self, field: FieldSpec, ambient: usize) -> String {
        let mut s = format!("field {field}\nambient {ambient}\n");
        for (v, x) in self.vectors.iter().enumerate() {
            writeln!(s, "v {v}\n{x}").unwrap();
        }
        s
    }

    pub fn parse(text: &str, n: usize) -> Result<(FieldSpec, usize, Choice)> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (field, ambient) = parse_header(&mut lines)?;
        let mut vectors: Vec<Option<Vector>> = vec![None; n];
        while let Some((ln, line)) = lines.next() {
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != 2 || tok[0] != "v" {
                return Err(Error::parse(ln, "expected `v <id>`"));
            }
            let v: usize = tok[1].parse().map_err(|_| Error::parse(ln, "bad vertex id"))?;
            if v >= n {
                return Err(Error::parse(ln, format!("vertex {v} out of range")));
            }
            let (rl, row) = lines.next().ok_or_else(|| Error::parse(ln, "missing vector row"))?;
            vectors[v] = Some(Vector::parse_row(field, row, ambient).map_err(|e| relocate(e, rl))?);
        }
        let vectors = vectors
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| Error::parse(0, format!("no vector for vertex {v}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok((field, ambient, Choice { vectors }))
    }
}

/// The first reason a choice is invalid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongVertexCount { expected: usize, found: usize },
    ZeroVector(usize),
    NotInSubspace(usize),
    NotOrthogonal { edge: usize, u: usize, v: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongVertexCount { expected, found } => {
                write!(f, "choice has {found} vectors, graph has {expected} vertices")
            }
            Violation::ZeroVector(v) => write!(f, "vertex {v}: zero vector"),
            Violation::NotInSubspace(v) => write!(f, "vertex {v}: vector not in its subspace"),
            Violation::NotOrthogonal { edge, u, v } => {
                write!(f, "edge {edge} ({u}, {v}): vectors not orthogonal")
            }
        }
    }
}

/// `Ok(None)` for a valid choice, otherwise the first violation found
/// (vertices in index order, then edges in index order).
pub fn verify_choice(a: &SubspaceAssignment, c: &Choice) -> Result<Option<Violation>> {
    let n = a.graph().n();
    if c.len() != n {
        return Ok(Some(Violation::WrongVertexCount {
            expected: n,
            found: c.len(),
        }));
    }
    for (v, x) in c.vectors().iter().enumerate() {
        if x.field() != a.field() {
            return Err(Error::FieldMismatch(a.field().to_string(), x.field().to_string()));
        }
        if x.len() != a.ambient() {
            return Err(Error::AmbientMismatch(a.ambient(), x.len()));
        }
        if x.is_zero() {
            return Ok(Some(Violation::ZeroVector(v)));
        }
        if !a.subspace(v).contains(x) {
            return Ok(Some(Violation::NotInSubspace(v)));
        }
    }
    for (i, &(u, v)) in a.graph().edges().iter().enumerate() {
        if !c.get(u).is_orthogonal(c.get(v)) {
            return Ok(Some(Violation::NotOrthogonal { edge: i, u, v }));
        }
    }
    Ok(None)
}

pub fn is_valid_choice(a: &SubspaceAssignment, c: &Choice) -> bool {
    matches!(verify_choice(a, c), Ok(None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_assignment(field: FieldSpec, wu: &[i64], wv: &[i64]) -> SubspaceAssignment {
        let g = Graph::path(1).unwrap();
        let t = wu.len();
        let s = |r: &[i64]| Subspace::span(field, t, &[Vector::from_i64s(field, r)]).unwrap();
        SubspaceAssignment::new(g, field, t, vec![s(wu), s(wv)]).unwrap()
    }

    #[test]
    fn verify_examples() {
        let q = FieldSpec::rationals();
        let a = edge_assignment(q, &[1, 0], &[0, 1]);
        let e = |i| Vector::unit(q, 2, i);
        assert_eq!(verify_choice(&a, &Choice::new(vec![e(0), e(1)])).unwrap(), None);
        assert_eq!(
            verify_choice(&a, &Choice::new(vec![e(0), e(0)])).unwrap(),
            Some(Violation::NotInSubspace(1))
        );

        let f2 = FieldSpec::prime(2).unwrap();
        let a = edge_assignment(f2, &[1, 1, 0], &[1, 1, 0]);
        let x = Vector::from_i64s(f2, &[1, 1, 0]);
        assert!(is_valid_choice(&a, &Choice::new(vec![x.clone(), x])));
    }

    #[test]
    fn non_orthogonal_edge_reported() {
        let q = FieldSpec::rationals();
        let a = edge_assignment(q, &[1, 1], &[1, 0]);
        let c = Choice::new(vec![Vector::from_i64s(q, &[1, 1]), Vector::from_i64s(q, &[1, 0])]);
        assert_eq!(
            verify_choice(&a, &c).unwrap(),
            Some(Violation::NotOrthogonal { edge: 0, u: 0, v: 1 })
        );
    }

    #[test]
    fn text_round_trip() {
        let f = FieldSpec::prime(5).unwrap();
        let g = Graph::cycle(3).unwrap();
        let subs = (0..3).map(|i| Subspace::random(f, 4, 2, i).unwrap()).collect();
        let a = SubspaceAssignment::new(g.clone(), f, 4, subs).unwrap();
        assert_eq!(SubspaceAssignment::parse(g, &a.to_text()).unwrap(), a);

        let c = Choice::new(a.subspaces().iter().map(|s| s.basis()[0].clone()).collect());
        let (pf, pt, pc) = Choice::parse(&c.to_text(f, 4), 3).unwrap();
        assert_eq!((pf, pt, pc), (f, 4, c));
    }

    #[test]
    fn parse_rejects_rank_mismatch() {
        let g = Graph::empty(1);
        let text = "field 3\nambient 2\nv 0 dim 2\n1 1\n2 2\n";
        assert!(matches!(
            SubspaceAssignment::parse(g, text),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
