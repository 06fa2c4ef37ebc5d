use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A literal over a 0-based variable index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn eval(&self, truth: &[bool]) -> bool {
        truth[self.var] == self.positive
    }

    fn dimacs(&self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

/// 3-CNF formula, each clause on three distinct variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            for (a, l) in c.iter().enumerate() {
                if l.var >= num_vars {
                    return Err(Error::invalid(format!(
                        "clause {} uses variable {} of {num_vars}",
                        i + 1,
                        l.var + 1
                    )));
                }
                if c[..a].iter().any(|m| m.var == l.var) {
                    return Err(Error::RepeatedVariable {
                        clause: i + 1,
                        var: l.var + 1,
                    });
                }
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Occurrences of `x_v` and of its negation.
    pub fn occurrences(&self, v: usize) -> (usize, usize) {
        let mut out = (0, 0);
        for l in self.clauses.iter().flatten().filter(|l| l.var == v) {
            if l.positive {
                out.0 += 1;
            } else {
                out.1 += 1;
            }
        }
        out
    }

    /// Index of the first clause falsified by `truth`.
    pub fn first_unsatisfied(&self, truth: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|l| l.eval(truth)))
    }

    pub fn is_satisfied_by(&self, truth: &[bool]) -> bool {
        truth.len() == self.num_vars && self.first_unsatisfied(truth).is_none()
    }

    /// The eight clauses on `x1, x2, x3` with every sign pattern.
    pub fn all_patterns() -> Self {
        let clauses = (0..8u8)
            .map(|m| {
                std::array::from_fn(|i| Literal {
                    var: i,
                    positive: m >> i & 1 == 0,
                })
            })
            .collect();
        Cnf { num_vars: 3, clauses }
    }

    /// Uniform random 3-CNF.
    pub fn random(num_vars: usize, num_clauses: usize, seed: u64) -> Result<Self> {
        if num_vars < 3 {
            return Err(Error::invalid("random 3-CNF needs at least 3 variables"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let clauses = (0..num_clauses)
            .map(|_| {
                let mut vars: Vec<usize> = Vec::with_capacity(3);
                while vars.len() < 3 {
                    let v = rng.gen_range(0..num_vars);
                    if !vars.contains(&v) {
                        vars.push(v);
                    }
                }
                std::array::from_fn(|i| Literal {
                    var: vars[i],
                    positive: rng.gen(),
                })
            })
            .collect();
        Ok(Cnf { num_vars, clauses })
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            writeln!(s, "{} {} {} 0", c[0].dimacs(), c[1].dimacs(), c[2].dimacs()).unwrap();
        }
        s
    }
}

/// DIMACS CNF; clauses may span lines and must end with `0`.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<(i64, usize)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line == "%" {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() {
                return Err(Error::parse(line_no, "second problem line"));
            }
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`"));
            }
            let n = parts[2]
                .parse()
                .map_err(|_| Error::parse(line_no, "bad variable count"))?;
            let m = parts[3]
                .parse()
                .map_err(|_| Error::parse(line_no, "bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(Error::parse(line_no, "clause before the problem line"));
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(finish_clause(clauses.len() + 1, std::mem::take(&mut current))?);
                continue;
            }
            if lit.unsigned_abs() as usize > n {
                return Err(Error::parse(line_no, format!("literal {lit} exceeds {n} variables")));
            }
            current.push((lit, line_no));
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::parse(last_line.max(1), "missing problem line"));
    };
    if !current.is_empty() {
        return Err(Error::parse(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            last_line,
            format!("header announces {m} clauses, found {}", clauses.len()),
        ));
    }
    Cnf::new(n, clauses)
}

fn finish_clause(index: usize, lits: Vec<(i64, usize)>) -> Result<[Literal; 3]> {
    if lits.len() != 3 {
        return Err(Error::ClauseArity {
            clause: index,
            found: lits.len(),
        });
    }
    let ls: Vec<Literal> = lits
        .iter()
        .map(|&(l, _)| Literal {
            var: l.unsigned_abs() as usize - 1,
            positive: l > 0,
        })
        .collect();
    for a in 0..3 {
        if ls[..a].iter().any(|m| m.var == ls[a].var) {
            return Err(Error::RepeatedVariable {
                clause: index,
                var: ls[a].var + 1,
            });
        }
    }
    Ok([ls[0], ls[1], ls[2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_clause() {
        let c = parse_dimacs("c comment\np cnf 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(c.num_vars(), 3);
        assert_eq!(c.clauses(), &[[Literal::pos(0), Literal::pos(1), Literal::pos(2)]]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_dimacs("p cnf 3 1\n1 1 2 0\n"),
            Err(Error::RepeatedVariable { clause: 1, var: 1 })
        );
        assert_eq!(
            parse_dimacs("p cnf 3 1\n1 2 0\n"),
            Err(Error::ClauseArity { clause: 1, found: 2 })
        );
        assert!(matches!(parse_dimacs("1 2 3 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_dimacs("p cnf 3 1\n1 2 x 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn all_patterns_round_trip() {
        let f = Cnf::all_patterns();
        assert_eq!(f.clauses().len(), 8);
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
        for v in 0..3 {
            assert_eq!(f.occurrences(v), (4, 4));
        }
    }

    #[test]
    fn multi_line_clause() {
        let c = parse_dimacs("p cnf 4 2\n1 -2\n3 0 -4 2 1 0\n").unwrap();
        assert_eq!(c.clauses()[1], [Literal::neg(3), Literal::pos(1), Literal::pos(0)]);
    }
}
