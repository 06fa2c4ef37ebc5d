//! Reference computations for the integration tests, written with plain
//! `u64` arithmetic mod `p` and no library linear algebra.

#![allow(dead_code)]

use vecchoose::engine::{Choice, SubspaceAssignment};
use vecchoose::linalg::{Subspace, Vector};

pub fn residues(v: &Vector) -> Vec<u64> {
    v.entries()
        .iter()
        .map(|s| s.residue().expect("finite field") as u64)
        .collect()
}

pub fn rows(s: &Subspace) -> Vec<Vec<u64>> {
    s.basis().iter().map(residues).collect()
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn dot(x: &[u64], y: &[u64], p: u64) -> u64 {
    x.iter().zip(y).fold(0, |acc, (a, b)| (acc + a * b) % p)
}

pub fn rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let iv = inv(m[r][c], p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c] * iv % p;
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether `x` lies in the row space of `basis`.
pub fn in_span(basis: &[Vec<u64>], x: &[u64], p: u64) -> bool {
    let mut m = basis.to_vec();
    let before = rank(m.clone(), p);
    m.push(x.to_vec());
    rank(m, p) == before
}

/// Projective points of the row space: coefficient vectors whose first
/// nonzero entry is 1.
pub fn points(basis: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let d = basis.len();
    let t = basis.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let total = p.pow(d as u32);
    for code in 1..total {
        let mut c = Vec::with_capacity(d);
        let mut x = code;
        for _ in 0..d {
            c.push(x % p);
            x /= p;
        }
        if c.iter().find(|&&a| a != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0u64; t];
        for (ci, row) in c.iter().zip(basis) {
            for j in 0..t {
                v[j] = (v[j] + ci * row[j]) % p;
            }
        }
        out.push(v);
    }
    out
}

/// Number of valid choices up to scaling, by backtracking in the given
/// vertex order. Stops once `cap` is reached.
pub fn count_choices(a: &SubspaceAssignment, order: &[usize], cap: u64) -> u64 {
    let p = a.field().modulus().expect("finite field") as u64;
    let g = a.graph();
    let pts: Vec<Vec<Vec<u64>>> = (0..g.n()).map(|v| points(&rows(a.subspace(v)), p)).collect();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut chosen: Vec<Option<usize>> = vec![None; g.n()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        order: &[usize],
        pos: &[usize],
        a: &SubspaceAssignment,
        pts: &[Vec<Vec<u64>>],
        chosen: &mut Vec<Option<usize>>,
        p: u64,
        count: &mut u64,
        cap: u64,
    ) {
        if *count >= cap {
            return;
        }
        let Some(&v) = order.get(i) else {
            *count += 1;
            return;
        };
        for (k, x) in pts[v].iter().enumerate() {
            let ok = a
                .graph()
                .neighbors(v)
                .iter()
                .all(|&w| pos[w] > i || dot(x, &pts[w][chosen[w].expect("earlier vertex")], p) == 0);
            if ok {
                chosen[v] = Some(k);
                go(i + 1, order, pos, a, pts, chosen, p, count, cap);
                chosen[v] = None;
            }
        }
    }
    let mut count = 0;
    go(0, order, &pos, a, &pts, &mut chosen, p, &mut count, cap);
    count
}

/// Breadth-first vertex order, every component in turn.
pub fn bfs_order(a: &SubspaceAssignment) -> Vec<usize> {
    let g = a.graph();
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            out.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    out
}

/// Validity of a choice over a finite field, checked from scratch.
pub fn choice_ok(a: &SubspaceAssignment, c: &Choice) -> bool {
    let p = a.field().modulus().expect("finite field") as u64;
    let g = a.graph();
    if c.len() != g.n() {
        return false;
    }
    let xs: Vec<Vec<u64>> = c.vectors().iter().map(residues).collect();
    (0..g.n()).all(|v| xs[v].iter().any(|&e| e != 0) && in_span(&rows(a.subspace(v)), &xs[v], p))
        && g.edges().iter().all(|&(u, v)| dot(&xs[u], &xs[v], p) == 0)
}
