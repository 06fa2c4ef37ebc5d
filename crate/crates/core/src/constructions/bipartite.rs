use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cycles::cycle_bad_assignment;
use super::{first_nonzero, Partial};
use crate::engine::{Choice, SubspaceAssignment};
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::graphs::Graph;
use crate::linalg::{Matrix, Subspace, Vector};

/// Sizes `(l1, l2)` of a complete bipartite graph whose left side is the
/// vertex prefix `0..l1`, as built by [`Graph::complete_bipartite`].
pub fn bipartite_sides(g: &Graph) -> Result<(usize, usize)> {
    let n = g.n();
    if n == 0 {
        return Ok((0, 0));
    }
    let l1 = (0..n).take_while(|&v| v == 0 || !g.has_edge(0, v)).count();
    let l2 = n - l1;
    let ok = g.num_edges() == l1 * l2 && (0..l1).all(|u| (l1..n).all(|v| g.has_edge(u, v)));
    if !ok || l2 == 0 {
        return Err(Error::precondition(
            "graph is not complete bipartite with the left side first",
        ));
    }
    Ok((l1, l2))
}

/// `sum_{i=0}^{k-1} floor((n-1)/(k-i))`.
pub fn lower_as_bound(n: usize, k: usize) -> usize {
    (0..k).map(|i| n.saturating_sub(1) / (k - i)).sum()
}

/// Valid choice on `K_{k,m}` with left dimensions `n` and right dimensions
/// `k`, for `m` up to [`lower_as_bound`]. Left vectors are picked inside
/// the intersection of the fresh `L_j` of the current window `J'`; right
/// vectors are orthogonal to the final `L_j`.
pub fn bipartite_choice(a: &SubspaceAssignment, n: usize) -> Result<Choice> {
    let (k, m) = bipartite_sides(a.graph())?;
    if (0..k).any(|u| a.subspace(u).dim() != n) || (k..k + m).any(|v| a.subspace(v).dim() != k) {
        return Err(Error::precondition(format!(
            "dimensions must be {n} on the left and {k} on the right"
        )));
    }
    let bound = lower_as_bound(n, k);
    if m > bound {
        return Err(Error::precondition(format!("m = {m} exceeds {bound}")));
    }
    let t = a.ambient();
    let mut l: Vec<Subspace> = (0..m).map(|j| a.subspace(k + j).orthogonal_complement()).collect();
    let mut xs = Vec::with_capacity(k);
    let mut next = 0usize;
    for i in 1..=k {
        let size = (n - 1) / (k - i + 1);
        let window = next..(next + size).min(m);
        next = window.end;
        let mut w = a.subspace(i - 1).clone();
        for j in window {
            if l[j].dim() + k == t + (i - 1) {
                w = w.intersect(&l[j])?;
            }
        }
        let x = w
            .first_vector()
            .ok_or_else(|| Error::internal(format!("empty intersection for left vertex {}", i - 1)))?;
        for lj in l.iter_mut() {
            *lj = lj.add_vectors(std::slice::from_ref(&x))?;
        }
        xs.push(x);
    }
    for lj in &l {
        xs.push(first_nonzero(&lj.orthogonal_complement(), "final L_j complement")?);
    }
    Ok(Choice::new(xs))
}

/// One-pass greedy on `K_{l1,l2}` when `l1 < k2` or `l2 < k1`.
pub fn greedy_asymmetric_choice(a: &SubspaceAssignment) -> Result<Choice> {
    let (l1, l2) = bipartite_sides(a.graph())?;
    let dims = a.dims();
    let k1 = dims[..l1].iter().copied().min().unwrap_or(0);
    let k2 = dims[l1..].iter().copied().min().unwrap_or(0);
    let (first, second): (Vec<usize>, Vec<usize>) = if l1 < k2 {
        ((0..l1).collect(), (l1..l1 + l2).collect())
    } else if l2 < k1 {
        ((l1..l1 + l2).collect(), (0..l1).collect())
    } else {
        return Err(Error::precondition(format!("neither {l1} < {k2} nor {l2} < {k1}")));
    };
    let mut part = Partial::new(a);
    for v in first.into_iter().chain(second) {
        part.pick(v)?;
    }
    part.finish()
}

/// Nonzero vectors `b_1..b_m` of `F^n` of which every `t` span `F^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFamily {
    pub field: FieldSpec,
    pub n: usize,
    pub vectors: Vec<Vector>,
    pub t: usize,
}

impl VectorFamily {
    const EXHAUSTIVE_LIMIT: u128 = 200_000;

    /// Checks the spanning property: every `t`-subset when there are at most
    /// `200000` of them, else 2000 seeded random subsets.
    pub fn new(field: FieldSpec, n: usize, vectors: Vec<Vector>, t: usize) -> Result<Self> {
        if vectors
            .iter()
            .any(|v| v.is_zero() || v.len() != n || v.field() != field)
        {
            return Err(Error::invalid("family vectors must be nonzero vectors of F^n"));
        }
        let fam = VectorFamily { field, n, vectors, t };
        if !fam.spans_every_t_subset() {
            return Err(Error::invalid(format!(
                "some {t} vectors of the family do not span F^{n}"
            )));
        }
        Ok(fam)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    fn rank_of(&self, idx: &[usize]) -> usize {
        let rows: Vec<Vector> = idx.iter().map(|&i| self.vectors[i].clone()).collect();
        Matrix::from_rows(self.field, self.n, &rows)
            .expect("uniform length")
            .rank()
    }

    pub fn spans_every_t_subset(&self) -> bool {
        let m = self.vectors.len();
        if self.t > m {
            return true;
        }
        if binomial(m, self.t) <= Self::EXHAUSTIVE_LIMIT {
            let mut idx: Vec<usize> = (0..self.t).collect();
            loop {
                if self.rank_of(&idx) < self.n {
                    return false;
                }
                if !next_combination(&mut idx, m) {
                    return true;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        (0..2000).all(|_| self.rank_of(&sample(&mut rng, m, self.t).into_vec()) == self.n)
    }

    /// `b_i = (1, g_i, ..., g_i^{n-1})` for `g_i = 0, 1, ..., m-1`; every `n` span.
    pub fn vandermonde(field: FieldSpec, n: usize, m: usize) -> Result<Self> {
        if let Some(p) = field.order() {
            if (m as u64) > p {
                return Err(Error::FieldTooSmall(format!("{m} distinct elements needed in GF({p})")));
            }
        }
        let vectors = (0..m)
            .map(|g| {
                let gamma = field.from_i64(g as i64);
                Vector::new(field, (0..n).map(|e| gamma.pow(e as u64)).collect()).expect("same field")
            })
            .collect();
        Self::new(field, n, vectors, n)
    }

    /// The first `m` projective points of `F^n`; every
    /// `(q^{n-1} - 1)/(q - 1) + 1` of them span.
    pub fn projective_reps(field: FieldSpec, n: usize, m: usize) -> Result<Self> {
        let q = field.order().ok_or(Error::InfiniteField)?;
        let pts = Subspace::full(field, n).projective_points()?;
        if m > pts.len() {
            return Err(Error::FieldTooSmall(format!(
                "only {} projective points in F^{n}",
                pts.len()
            )));
        }
        let t = ((q.pow(n as u32 - 1) - 1) / (q - 1) + 1) as usize;
        Self::new(field, n, pts.into_iter().take(m).collect(), t)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Families of assignments on complete bipartite graphs without valid choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Adversarial {
    /// `K_{k, n^k}`, left blocks of `F^{nk}`, right vertices indexed by tuples.
    CoordinateBlocks { n: usize, k: usize },
    /// `K_{k,m}` with right subspaces `span(e_i ⊗ b_j : i)`.
    Tensor { family: VectorFamily, k: usize },
    /// Tensor over the Vandermonde family, `m = k(n-1) + 1`.
    Vandermonde { n: usize, k: usize },
    /// Tensor over projective representatives, `m = k(q^{n-1}-1)/(q-1) + 1`.
    ProjectiveReps { n: usize, k: usize },
    /// `K_{m,m}` on the `k`-subsets of `[2k-1]`.
    KSubsets { k: usize },
    /// `K_{2,n}` for even `n` from `n/2` blocks of the bad square.
    EvenBlock { n: usize },
}

pub fn adversarial_assignment(kind: &Adversarial, field: FieldSpec) -> Result<SubspaceAssignment> {
    match kind {
        Adversarial::CoordinateBlocks { n, k } => coordinate_blocks(field, *n, *k),
        Adversarial::Tensor { family, k } => {
            if family.field != field {
                return Err(Error::FieldMismatch(field.to_string(), family.field.to_string()));
            }
            tensor(family, *k)
        }
        Adversarial::Vandermonde { n, k } => {
            if *n == 0 || *k == 0 {
                return Err(Error::invalid("n and k must be positive"));
            }
            tensor(&VectorFamily::vandermonde(field, *n, k * (n - 1) + 1)?, *k)
        }
        Adversarial::ProjectiveReps { n, k } => {
            let q = field.order().ok_or(Error::InfiniteField)?;
            if *n < 2 || *k == 0 {
                return Err(Error::invalid("need n >= 2 and k >= 1"));
            }
            if q < *k as u64 {
                return Err(Error::FieldTooSmall(format!("q = {q} < k = {k}")));
            }
            let m = k * ((q.pow(*n as u32 - 1) - 1) / (q - 1)) as usize + 1;
            tensor(&VectorFamily::projective_reps(field, *n, m)?, *k)
        }
        Adversarial::KSubsets { k } => ksubsets(field, *k),
        Adversarial::EvenBlock { n } => even_block(field, *n),
    }
}

fn coordinate_blocks(field: FieldSpec, n: usize, k: usize) -> Result<SubspaceAssignment> {
    if n < 1 || k < 1 {
        return Err(Error::invalid("n and k must be positive"));
    }
    let m = n
        .checked_pow(k as u32)
        .filter(|&m| m <= 1 << 16)
        .ok_or_else(|| Error::invalid("n^k too large"))?;
    let t = n * k;
    let mut subs: Vec<Subspace> = (0..k)
        .map(|i| Subspace::coordinate(field, t, &(i * n..(i + 1) * n).collect::<Vec<_>>()))
        .collect();
    for r in 0..m {
        // tuple digits, first coordinate most significant
        let mut digits = vec![0; k];
        let mut x = r;
        for i in (0..k).rev() {
            digits[i] = x % n;
            x /= n;
        }
        let coords: Vec<usize> = digits.iter().enumerate().map(|(i, a)| i * n + a).collect();
        subs.push(Subspace::coordinate(field, t, &coords));
    }
    SubspaceAssignment::new(Graph::complete_bipartite(k, m)?, field, t, subs)
}

fn tensor(family: &VectorFamily, k: usize) -> Result<SubspaceAssignment> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let (field, n) = (family.field, family.n);
    let t = k * n;
    let mut subs: Vec<Subspace> = (0..k)
        .map(|i| Subspace::coordinate(field, t, &(i * n..(i + 1) * n).collect::<Vec<_>>()))
        .collect();
    for b in &family.vectors {
        let rows: Vec<Vector> = (0..k).map(|i| b.embed_block(k, i)).collect();
        subs.push(Subspace::span(field, t, &rows)?);
    }
    SubspaceAssignment::new(Graph::complete_bipartite(k, family.len())?, field, t, subs)
}

fn ksubsets(field: FieldSpec, k: usize) -> Result<SubspaceAssignment> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let t = 2 * k - 1;
    let mut sets = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        sets.push(Subspace::coordinate(field, t, &idx));
        if !next_combination(&mut idx, t) {
            break;
        }
    }
    let m = sets.len();
    let subs = sets.iter().chain(sets.iter()).cloned().collect();
    SubspaceAssignment::new(Graph::complete_bipartite(m, m)?, field, t, subs)
}

fn even_block(field: FieldSpec, n: usize) -> Result<SubspaceAssignment> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::invalid(format!("even block needs a positive even n, got {n}")));
    }
    let base = cycle_bad_assignment(4, field)?;
    // the square u0-u1-u2-u3 as K_{2,2}: left (u0, u2), right (u1, u3)
    let (l1, l2, r1, r2) = (base.subspace(0), base.subspace(2), base.subspace(1), base.subspace(3));
    let kb = n / 2;
    let t = base.ambient() * kb;
    let u1: Vec<Vector> = (0..kb)
        .flat_map(|j| l1.basis().iter().map(move |b| b.embed_block(kb, j)))
        .collect();
    let u2: Vec<Vector> = l2
        .basis()
        .iter()
        .map(|b| (0..kb).fold(Vector::zero(field, t), |acc, j| acc.add(&b.embed_block(kb, j))))
        .collect();
    let mut subs = vec![Subspace::span(field, t, &u1)?, Subspace::span(field, t, &u2)?];
    for j in 0..kb {
        for r in [r1, r2] {
            let rows: Vec<Vector> = r.basis().iter().map(|b| b.embed_block(kb, j)).collect();
            subs.push(Subspace::span(field, t, &rows)?);
        }
    }
    SubspaceAssignment::new(Graph::complete_bipartite(2, n)?, field, t, subs)
}

/// `n - 2 + (q + 1)(t - n + 1)`: the largest family in `GF(q)^n` of which
/// every `t` span.
pub fn ball_bound(n: i64, t: i64, q: i64) -> i64 {
    n - 2 + (q + 1) * (t - n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{find_choice, is_valid_choice, SearchOptions};

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn random_bipartite(
        field: FieldSpec,
        l: usize,
        r: usize,
        dl: usize,
        dr: usize,
        t: usize,
        seed: u64,
    ) -> SubspaceAssignment {
        let subs = (0..l + r)
            .map(|v| Subspace::random(field, t, if v < l { dl } else { dr }, seed * 100 + v as u64).unwrap())
            .collect();
        SubspaceAssignment::new(Graph::complete_bipartite(l, r).unwrap(), field, t, subs).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(lower_as_bound(3, 2), 3);
        assert_eq!(lower_as_bound(4, 3), 5);
        assert_eq!(ball_bound(2, 2, 3), 4);
        assert_eq!(ball_bound(5, 5, 7), 5 - 2 + 8);
    }

    #[test]
    fn lower_as_choices() {
        for seed in 0..20 {
            let a = random_bipartite(gf(2), 2, 3, 3, 2, 5, seed);
            assert!(is_valid_choice(&a, &bipartite_choice(&a, 3).unwrap()));
            let a = random_bipartite(gf(3), 3, 5, 4, 3, 7, seed);
            assert!(is_valid_choice(&a, &bipartite_choice(&a, 4).unwrap()));
        }
        let a = random_bipartite(gf(2), 2, 4, 3, 2, 5, 0);
        assert!(matches!(bipartite_choice(&a, 3), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn greedy_cases() {
        let a = random_bipartite(gf(2), 1, 5, 1, 2, 4, 3);
        assert!(is_valid_choice(&a, &greedy_asymmetric_choice(&a).unwrap()));
        let a = random_bipartite(gf(3), 3, 2, 3, 4, 6, 3);
        assert!(is_valid_choice(&a, &greedy_asymmetric_choice(&a).unwrap()));
        let a = random_bipartite(gf(2), 2, 2, 2, 2, 4, 3);
        assert!(greedy_asymmetric_choice(&a).is_err());
    }

    #[test]
    fn adversarial_small_cases() {
        let opts = SearchOptions::default();
        let a = adversarial_assignment(&Adversarial::CoordinateBlocks { n: 2, k: 2 }, gf(2)).unwrap();
        assert_eq!((a.graph().n(), a.ambient()), (6, 4));
        assert!(find_choice(&a, &opts).unwrap().is_no_choice());
        let a = adversarial_assignment(&Adversarial::Vandermonde { n: 2, k: 2 }, gf(3)).unwrap();
        assert_eq!(a.graph().n(), 5);
        assert!(find_choice(&a, &opts).unwrap().is_no_choice());
        for p in [2, 3] {
            let a = adversarial_assignment(&Adversarial::KSubsets { k: 2 }, gf(p)).unwrap();
            assert!(find_choice(&a, &opts).unwrap().is_no_choice());
        }
        assert!(matches!(
            adversarial_assignment(&Adversarial::Vandermonde { n: 2, k: 3 }, gf(3)),
            Err(Error::FieldTooSmall(_))
        ));
        let a = adversarial_assignment(&Adversarial::ProjectiveReps { n: 2, k: 2 }, gf(3)).unwrap();
        assert!(find_choice(&a, &opts).unwrap().is_no_choice());
    }

    #[test]
    fn even_block_one_block_is_the_square() {
        let q = FieldSpec::rationals();
        let a = adversarial_assignment(&Adversarial::EvenBlock { n: 2 }, q).unwrap();
        let sq = cycle_bad_assignment(4, q).unwrap();
        assert_eq!(
            a.subspaces(),
            &[
                sq.subspace(0).clone(),
                sq.subspace(2).clone(),
                sq.subspace(1).clone(),
                sq.subspace(3).clone()
            ]
        );
    }

    #[test]
    fn vandermonde_every_n_subset_spans() {
        let f = gf(23);
        for n in 2..=4 {
            let fam = VectorFamily::vandermonde(f, n, 20).unwrap();
            assert!(fam.len() as i64 <= ball_bound(n as i64, n as i64, 23));
        }
        let bad = vec![Vector::from_i64s(gf(3), &[1, 0]), Vector::from_i64s(gf(3), &[2, 0])];
        assert!(VectorFamily::new(gf(3), 2, bad, 2).is_err());
    }
}
