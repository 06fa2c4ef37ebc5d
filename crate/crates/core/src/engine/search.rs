use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{Choice, SubspaceAssignment};
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::linalg::Vector;

/// Search limits and the static vertex priority.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Vertices listed first are preferred among equally constrained ones;
    /// unlisted vertices follow in index order. Default: descending degree.
    pub order_hint: Option<Vec<usize>>,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Worker threads; `None` reads `VECCHOOSE_THREADS`, then falls back to
    /// the rayon default.
    pub threads: Option<usize>,
    /// Recorded in the certificate only; the search itself is deterministic.
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Choosable(Choice),
    NoChoice,
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCertificate {
    pub verdict: Verdict,
    pub field: FieldSpec,
    pub nodes: u64,
    pub order: String,
    pub seed: u64,
}

impl SearchCertificate {
    pub fn is_choosable(&self) -> bool {
        matches!(self.verdict, Verdict::Choosable(_))
    }

    pub fn is_no_choice(&self) -> bool {
        matches!(self.verdict, Verdict::NoChoice)
    }

    pub fn witness(&self) -> Option<&Choice> {
        match &self.verdict {
            Verdict::Choosable(c) => Some(c),
            _ => None,
        }
    }
}

type Row = Vec<u32>;

/// Residue arithmetic and the problem data in residue form.
struct Problem {
    p: u64,
    t: usize,
    adj: Vec<Vec<usize>>,
    init: Vec<Vec<Row>>,
    rank: Vec<usize>,
}

impl Problem {
    fn new(a: &SubspaceAssignment, hint: Option<&[usize]>) -> Result<Self> {
        let p = a.field().modulus().ok_or(Error::InfiniteField)? as u64;
        let g = a.graph();
        let n = g.n();
        let init = a
            .subspaces()
            .iter()
            .map(|s| {
                s.basis()
                    .iter()
                    .map(|r| r.entries().iter().map(|x| x.residue().expect("finite")).collect())
                    .collect()
            })
            .collect();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        match hint {
            Some(h) => {
                let mut seen = vec![false; n];
                for &v in h {
                    if v >= n {
                        return Err(Error::invalid(format!("order hint names vertex {v} >= {n}")));
                    }
                    if !seen[v] {
                        seen[v] = true;
                        order.push(v);
                    }
                }
                order.extend((0..n).filter(|&v| !seen[v]));
            }
            None => {
                order.extend(0..n);
                order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
            }
        }
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        Ok(Problem {
            p,
            t: a.ambient(),
            adj: (0..n).map(|v| g.neighbors(v).to_vec()).collect(),
            init,
            rank,
        })
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p) as u32
    }

    fn inv(&self, a: u32) -> u32 {
        let (mut e, mut base, mut acc) = (self.p - 2, a as u64, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u32
    }

    fn dot(&self, x: &[u32], y: &[u32]) -> u32 {
        let mut acc = 0u64;
        for (a, b) in x.iter().zip(y) {
            acc = (acc + *a as u64 * *b as u64) % self.p;
        }
        acc as u32
    }

    /// `row -= c * other`
    fn sub_scaled(&self, row: &mut [u32], c: u32, other: &[u32]) {
        if c == 0 {
            return;
        }
        let neg = (self.p - c as u64) as u32;
        for (a, b) in row.iter_mut().zip(other) {
            *a = ((*a as u64 + neg as u64 * *b as u64) % self.p) as u32;
        }
    }

    fn rref(&self, rows: &mut Vec<Row>) {
        let mut r = 0;
        for c in 0..self.t {
            if r == rows.len() {
                break;
            }
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r {
                    let f = row[c];
                    self.sub_scaled(row, f, &pivot);
                }
            }
            r += 1;
        }
        rows.truncate(r);
    }

    /// `span(basis) ∩ x^⊥`, or `None` when `x` is orthogonal to all of it.
    fn restrict(&self, basis: &[Row], x: &[u32]) -> Option<Vec<Row>> {
        let c: Vec<u32> = basis.iter().map(|b| self.dot(b, x)).collect();
        let i0 = c.iter().position(|&v| v != 0)?;
        let inv = self.inv(c[i0]);
        let mut out: Vec<Row> = Vec::with_capacity(basis.len() - 1);
        for (j, b) in basis.iter().enumerate() {
            if j == i0 {
                continue;
            }
            let mut row = b.clone();
            self.sub_scaled(&mut row, self.mul(c[j], inv), &basis[i0]);
            out.push(row);
        }
        self.rref(&mut out);
        Some(out)
    }

    /// Projective points of `span(basis)` in canonical order.
    fn points<'a>(&'a self, basis: &'a [Row]) -> impl Iterator<Item = Row> + 'a {
        let d = basis.len() as u32;
        let total = (self.p as u128).saturating_pow(d);
        let mut digits = vec![0u64; basis.len()];
        (1..total).filter_map(move |_| {
            for dgt in digits.iter_mut() {
                *dgt += 1;
                if *dgt < self.p {
                    break;
                }
                *dgt = 0;
            }
            if digits.iter().find(|&&x| x != 0) != Some(&1) {
                return None;
            }
            let mut v = vec![0u32; self.t];
            for (c, b) in digits.iter().zip(basis) {
                if *c != 0 {
                    for (a, x) in v.iter_mut().zip(b) {
                        *a = ((*a as u64 + c * *x as u64) % self.p) as u32;
                    }
                }
            }
            Some(v)
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum St {
    Active,
    Decided,
    Peeled,
}

enum Undo {
    Avail(usize, Vec<Row>),
    Chose(usize),
    Peel,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Outcome {
    Sat,
    Unsat,
    Abort,
}

struct Limits<'a> {
    node_budget: Option<u64>,
    deadline: Option<Instant>,
    /// Index of the earliest successful root branch; later branches stop.
    cutoff: Option<(&'a AtomicUsize, usize)>,
}

const CACHE_LIMIT: usize = 1 << 21;

#[derive(Clone)]
struct Solver<'a> {
    pb: &'a Problem,
    avail: Vec<Vec<Row>>,
    chosen: Vec<Option<Row>>,
    state: Vec<St>,
    peeled: Vec<usize>,
    nodes: u64,
    unsat_cache: HashSet<Vec<u32>>,
    peeling: bool,
}

impl<'a> Solver<'a> {
    fn new(pb: &'a Problem) -> Self {
        let n = pb.adj.len();
        Solver {
            pb,
            avail: pb.init.clone(),
            chosen: vec![None; n],
            state: vec![St::Active; n],
            peeled: Vec::new(),
            nodes: 0,
            unsat_cache: HashSet::new(),
            peeling: true,
        }
    }

    fn undo_to(&mut self, trail: &mut Vec<Undo>, mark: usize) {
        while trail.len() > mark {
            match trail.pop().expect("nonempty") {
                Undo::Avail(v, old) => self.avail[v] = old,
                Undo::Chose(v) => {
                    self.state[v] = St::Active;
                    self.chosen[v] = None;
                }
                Undo::Peel => {
                    let v = self.peeled.pop().expect("peeled vertex");
                    self.state[v] = St::Active;
                }
            }
        }
    }

    /// Fixes `x_v = x` and propagates, including vertices forced to a single
    /// line. Returns false on a wipe-out.
    fn assign(&mut self, trail: &mut Vec<Undo>, v: usize, x: Row) -> bool {
        let mut queue = vec![(v, x)];
        while let Some((v, x)) = queue.pop() {
            if self.state[v] != St::Active {
                continue;
            }
            self.state[v] = St::Decided;
            trail.push(Undo::Chose(v));
            for &w in &self.pb.adj[v] {
                if self.state[w] != St::Active {
                    continue;
                }
                if let Some(new) = self.pb.restrict(&self.avail[w], &x) {
                    let old = std::mem::replace(&mut self.avail[w], new);
                    trail.push(Undo::Avail(w, old));
                    match self.avail[w].len() {
                        0 => {
                            self.chosen[v] = Some(x);
                            return false;
                        }
                        1 => queue.push((w, self.avail[w][0].clone())),
                        _ => {}
                    }
                }
            }
            self.chosen[v] = Some(x);
        }
        true
    }

    fn active_degree(&self, v: usize) -> usize {
        self.pb.adj[v].iter().filter(|&&w| self.state[w] == St::Active).count()
    }

    /// Removes vertices whose available dimension exceeds their number of
    /// active neighbours; they are filled in reverse removal order at the end.
    fn peel(&mut self, trail: &mut Vec<Undo>, candidates: &[usize]) {
        if !self.peeling {
            return;
        }
        let mut work: Vec<usize> = candidates.to_vec();
        while let Some(v) = work.pop() {
            if self.state[v] != St::Active || self.avail[v].len() <= self.active_degree(v) {
                continue;
            }
            self.state[v] = St::Peeled;
            self.peeled.push(v);
            trail.push(Undo::Peel);
            work.extend(self.pb.adj[v].iter().copied().filter(|&w| self.state[w] == St::Active));
        }
    }

    /// Connected components of the active vertices among `scope`, smallest
    /// first, ties by best vertex priority.
    fn components(&self, scope: &[usize]) -> Vec<Vec<usize>> {
        let mut seen: HashSet<usize> = HashSet::new();
        let mut comps = Vec::new();
        for &s in scope {
            if self.state[s] != St::Active || !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                for &w in &self.pb.adj[u] {
                    if self.state[w] == St::Active && seen.insert(w) {
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by_key(|c| (c.len(), c.iter().map(|&v| self.pb.rank[v]).min()));
        comps
    }

    fn pick(&self, comp: &[usize]) -> usize {
        *comp
            .iter()
            .min_by_key(|&&v| (self.avail[v].len(), self.pb.rank[v]))
            .expect("nonempty component")
    }

    fn cache_key(&self, comp: &[usize]) -> Vec<u32> {
        let mut key = Vec::new();
        for &v in comp {
            key.push(v as u32);
            key.push(self.avail[v].len() as u32);
            for r in &self.avail[v] {
                key.extend_from_slice(r);
            }
        }
        key
    }

    fn over_limit(&self, lim: &Limits) -> bool {
        if lim.node_budget.is_some_and(|b| self.nodes > b) {
            return true;
        }
        if self.nodes.is_multiple_of(256) {
            if lim.deadline.is_some_and(|d| Instant::now() >= d) {
                return true;
            }
            if let Some((best, me)) = lim.cutoff {
                if best.load(Ordering::Relaxed) < me {
                    return true;
                }
            }
        }
        false
    }

    /// Decides one connected component of active vertices.
    fn solve(&mut self, trail: &mut Vec<Undo>, comp: &[usize], lim: &Limits) -> Outcome {
        let key = self.cache_key(comp);
        if self.unsat_cache.contains(&key) {
            return Outcome::Unsat;
        }
        let v = self.pick(comp);
        let basis = self.avail[v].clone();
        for x in self.pb.points(&basis) {
            self.nodes += 1;
            if self.over_limit(lim) {
                return Outcome::Abort;
            }
            let mark = trail.len();
            match self.branch(trail, v, x, comp, lim) {
                Outcome::Sat => return Outcome::Sat,
                Outcome::Abort => {
                    self.undo_to(trail, mark);
                    return Outcome::Abort;
                }
                Outcome::Unsat => self.undo_to(trail, mark),
            }
        }
        if self.unsat_cache.len() >= CACHE_LIMIT {
            self.unsat_cache.clear();
        }
        self.unsat_cache.insert(key);
        Outcome::Unsat
    }

    fn branch(&mut self, trail: &mut Vec<Undo>, v: usize, x: Row, comp: &[usize], lim: &Limits) -> Outcome {
        if !self.assign(trail, v, x) {
            return Outcome::Unsat;
        }
        self.continue_with(trail, comp, lim)
    }

    /// Peels and splits what remains of `scope`, then solves each piece.
    fn continue_with(&mut self, trail: &mut Vec<Undo>, scope: &[usize], lim: &Limits) -> Outcome {
        let rest: Vec<usize> = scope.iter().copied().filter(|&w| self.state[w] == St::Active).collect();
        self.peel(trail, &rest);
        for comp in self.components(&rest) {
            match self.solve(trail, &comp, lim) {
                Outcome::Sat => {}
                other => return other,
            }
        }
        Outcome::Sat
    }

    /// Completes peeled vertices, last removed first.
    fn fill_peeled(&mut self) -> Result<()> {
        for i in (0..self.peeled.len()).rev() {
            let v = self.peeled[i];
            let mut basis = self.avail[v].clone();
            for &w in &self.pb.adj[v] {
                if let Some(x) = &self.chosen[w] {
                    if let Some(b) = self.pb.restrict(&basis, x) {
                        basis = b;
                    }
                }
            }
            let x = basis
                .first()
                .cloned()
                .ok_or_else(|| Error::internal(format!("peeled vertex {v} lost all freedom")))?;
            self.chosen[v] = Some(x);
        }
        Ok(())
    }

    fn witness(&self, field: FieldSpec) -> Choice {
        Choice::new(
            self.chosen
                .iter()
                .map(|x| {
                    let x = x.as_ref().expect("every vertex chosen");
                    Vector::new(field, x.iter().map(|&r| field.from_i64(r as i64)).collect()).expect("valid vector")
                })
                .collect(),
        )
    }
}

pub(crate) fn thread_count(requested: Option<usize>) -> usize {
    requested
        .or_else(|| std::env::var("VECCHOOSE_THREADS").ok().and_then(|s| s.parse().ok()))
        .filter(|&n| n > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Exact decision for one assignment over a finite field.
///
/// Backtracks over projective points of the available subspace of one vertex
/// at a time, propagating `W ∩ x^⊥` to undecided neighbours. Vertices left
/// with one line are fixed immediately; vertices with more freedom than active
/// neighbours are set aside and completed at the end; independent components
/// are solved separately and refuted components are remembered.
///
/// Each root alternative of each initial component is explored by its own
/// solver, so node counts do not depend on the thread count.
pub fn find_choice(a: &SubspaceAssignment, opts: &SearchOptions) -> Result<SearchCertificate> {
    let pb = Problem::new(a, opts.order_hint.as_deref())?;
    let field = a.field();
    let order = if opts.order_hint.is_some() {
        "mrv/hint"
    } else {
        "mrv/degree"
    }
    .to_string();
    let cert = |verdict, nodes| SearchCertificate {
        verdict,
        field,
        nodes,
        order: order.clone(),
        seed: opts.seed,
    };
    let deadline = opts.time_budget.map(|d| Instant::now() + d);
    let threads = thread_count(opts.threads);

    let n = pb.adj.len();
    let mut root = Solver::new(&pb);
    let mut trail = Vec::new();
    if root.avail.iter().any(Vec::is_empty) {
        return Ok(cert(Verdict::NoChoice, 0));
    }
    for v in 0..n {
        if root.state[v] == St::Active && root.avail[v].len() == 1 {
            let x = root.avail[v][0].clone();
            if !root.assign(&mut trail, v, x) {
                return Ok(cert(Verdict::NoChoice, 0));
            }
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let active: Vec<usize> = all.iter().copied().filter(|&v| root.state[v] == St::Active).collect();
    root.peel(&mut trail, &active);

    let mut total: u64 = 0;
    let budget = opts.node_budget;
    for comp in root.components(&all) {
        let v = root.pick(&comp);
        let points: Vec<Row> = pb.points(&root.avail[v]).collect();
        let best = AtomicUsize::new(usize::MAX);
        let run = |(i, x): (usize, &Row)| -> (Outcome, u64, Option<Solver>) {
            let mut s = root.clone();
            let mut tr = Vec::new();
            s.nodes = 1;
            let lim = Limits {
                node_budget: budget,
                deadline,
                cutoff: Some((&best, i)),
            };
            let out = s.branch(&mut tr, v, x.clone(), &comp, &lim);
            if out == Outcome::Sat {
                best.fetch_min(i, Ordering::Relaxed);
            }
            let nodes = s.nodes;
            (out, nodes, (out == Outcome::Sat).then_some(s))
        };
        let results: Vec<(Outcome, u64, Option<Solver>)> = if threads > 1 && points.len() > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .stack_size(64 << 20)
                .build()
                .map_err(|e| Error::internal(e.to_string()))?;
            pool.install(|| points.par_iter().enumerate().map(run).collect())
        } else {
            let mut out = Vec::new();
            for item in points.iter().enumerate() {
                let r = run(item);
                let stop = r.0 != Outcome::Unsat;
                out.push(r);
                if stop {
                    break;
                }
            }
            out
        };

        let mut found = None;
        for (out, nodes, solver) in results {
            total += nodes;
            if budget.is_some_and(|b| total > b) {
                return Ok(cert(Verdict::Inconclusive("node budget exhausted".into()), total));
            }
            match out {
                Outcome::Unsat => continue,
                Outcome::Abort => {
                    let why = if deadline.is_some_and(|d| Instant::now() >= d) {
                        "time budget exhausted"
                    } else {
                        "node budget exhausted"
                    };
                    return Ok(cert(Verdict::Inconclusive(why.into()), total));
                }
                Outcome::Sat => {
                    found = solver;
                    break;
                }
            }
        }
        let Some(s) = found else {
            return Ok(cert(Verdict::NoChoice, total));
        };
        // adopt the branch's decisions for this component
        for &u in &comp {
            root.state[u] = s.state[u];
            root.chosen[u] = s.chosen[u].clone();
            root.avail[u] = s.avail[u].clone();
        }
        for &u in &s.peeled[root.peeled.len()..] {
            root.peeled.push(u);
        }
    }
    root.fill_peeled()?;
    Ok(cert(Verdict::Choosable(root.witness(field)), total))
}

/// Calls `visit` on every valid choice in canonical order until it returns
/// false or `limit` choices were produced. Returns the number visited.
pub fn for_each_choice(
    a: &SubspaceAssignment,
    limit: Option<u64>,
    mut visit: impl FnMut(&Choice) -> bool,
) -> Result<u64> {
    let pb = Problem::new(a, None)?;
    let n = pb.adj.len();
    let mut s = Solver::new(&pb);
    s.peeling = false;
    let order: Vec<usize> = {
        let mut o: Vec<usize> = (0..n).collect();
        o.sort_by_key(|&v| pb.rank[v]);
        o
    };
    let mut count = 0u64;
    let mut trail = Vec::new();
    enumerate(&mut s, &mut trail, &order, 0, a.field(), limit, &mut count, &mut visit);
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    s: &mut Solver,
    trail: &mut Vec<Undo>,
    order: &[usize],
    i: usize,
    field: FieldSpec,
    limit: Option<u64>,
    count: &mut u64,
    visit: &mut impl FnMut(&Choice) -> bool,
) -> bool {
    if limit.is_some_and(|l| *count >= l) {
        return false;
    }
    let Some(&v) = order.get(i) else {
        *count += 1;
        return visit(&s.witness(field));
    };
    let basis = match s.state[v] {
        St::Active => s.avail[v].clone(),
        // fixed earlier by propagation: this vertex contributes one point
        _ => return enumerate(s, trail, order, i + 1, field, limit, count, visit),
    };
    for x in s.pb.points(&basis) {
        let mark = trail.len();
        // only the decided vertex itself is fixed; neighbours keep all their
        // points so forced lines are still enumerated as single choices
        s.state[v] = St::Decided;
        trail.push(Undo::Chose(v));
        let mut ok = true;
        for &w in &s.pb.adj[v] {
            if s.state[w] != St::Active {
                continue;
            }
            if let Some(new) = s.pb.restrict(&s.avail[w], &x) {
                let old = std::mem::replace(&mut s.avail[w], new);
                trail.push(Undo::Avail(w, old));
                if s.avail[w].is_empty() {
                    ok = false;
                    break;
                }
            }
        }
        s.chosen[v] = Some(x);
        let go_on = !ok || enumerate(s, trail, order, i + 1, field, limit, count, visit);
        s.undo_to(trail, mark);
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::is_valid_choice;
    use crate::graphs::Graph;
    use crate::linalg::Subspace;

    fn uniform(g: Graph, field: FieldSpec, t: usize) -> SubspaceAssignment {
        let subs = vec![Subspace::full(field, t); g.n()];
        SubspaceAssignment::new(g, field, t, subs).unwrap()
    }

    #[test]
    fn triangle_over_gf2_is_choosable() {
        let f = FieldSpec::prime(2).unwrap();
        let a = uniform(Graph::complete(3).unwrap(), f, 3);
        let c = find_choice(&a, &SearchOptions::default()).unwrap();
        assert!(is_valid_choice(&a, c.witness().unwrap()));
    }

    #[test]
    fn triangle_in_plane_has_no_choice_over_gf3() {
        // three pairwise orthogonal vectors cannot fit in a plane over GF(3)
        let f = FieldSpec::prime(3).unwrap();
        let a = uniform(Graph::complete(3).unwrap(), f, 2);
        let c = find_choice(&a, &SearchOptions::default()).unwrap();
        assert!(c.is_no_choice());
    }

    #[test]
    fn edgeless_graph_is_choosable() {
        let f = FieldSpec::prime(5).unwrap();
        let a = uniform(Graph::empty(4), f, 2);
        let c = find_choice(&a, &SearchOptions::default()).unwrap();
        assert!(is_valid_choice(&a, c.witness().unwrap()));
    }

    #[test]
    fn rationals_rejected() {
        let a = uniform(Graph::empty(1), FieldSpec::rationals(), 2);
        assert_eq!(find_choice(&a, &SearchOptions::default()), Err(Error::InfiniteField));
    }

    #[test]
    fn enumeration_counts_edge_choices() {
        // K_2 in GF(2)^2: pairs (x, y) of points with <x, y> = 0
        let f = FieldSpec::prime(2).unwrap();
        let a = uniform(Graph::path(1).unwrap(), f, 2);
        let n = for_each_choice(&a, None, |c| {
            assert!(is_valid_choice(&a, c));
            true
        })
        .unwrap();
        // (1,0)-(0,1), (0,1)-(1,0), (1,1)-(1,1)
        assert_eq!(n, 3);
    }

    #[test]
    fn node_budget_gives_inconclusive() {
        let f = FieldSpec::prime(3).unwrap();
        let a = uniform(Graph::complete(4).unwrap(), f, 3);
        let opts = SearchOptions {
            node_budget: Some(1),
            threads: Some(1),
            ..Default::default()
        };
        let c = find_choice(&a, &opts).unwrap();
        assert!(matches!(c.verdict, Verdict::Inconclusive(_)));
    }
}
