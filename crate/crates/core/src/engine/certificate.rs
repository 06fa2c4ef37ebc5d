use std::fmt::Write as _;

use super::{Choice, SearchCertificate, Verdict};
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::linalg::Vector;

impl SearchCertificate {
    /// Line-oriented text: `verdict`, `field`, `seed`, `order`, `nodes`, then
    /// for a choosable verdict `witness <n>` followed by `v <id>` / row pairs.
    /// No timing information, so equal runs give equal text.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match &self.verdict {
            Verdict::Choosable(_) => s.push_str("verdict choosable\n"),
            Verdict::NoChoice => s.push_str("verdict no_choice\n"),
            Verdict::Inconclusive(why) => writeln!(s, "verdict inconclusive {why}").unwrap(),
        }
        writeln!(s, "field {}", self.field).unwrap();
        writeln!(s, "seed {}", self.seed).unwrap();
        writeln!(s, "order {}", self.order).unwrap();
        writeln!(s, "nodes {}", self.nodes).unwrap();
        if let Verdict::Choosable(c) = &self.verdict {
            writeln!(s, "witness {}", c.len()).unwrap();
            for (v, x) in c.vectors().iter().enumerate() {
                writeln!(s, "v {v}\n{x}").unwrap();
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<SearchCertificate> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (vl, verdict) = keyed(&mut lines, "verdict")?;
        let (fl, field) = keyed(&mut lines, "field")?;
        let field: FieldSpec = field.parse().map_err(|_| Error::parse(fl, "bad field"))?;
        let (sl, seed) = keyed(&mut lines, "seed")?;
        let seed = seed.parse().map_err(|_| Error::parse(sl, "bad seed"))?;
        let (_, order) = keyed(&mut lines, "order")?;
        let (nl, nodes) = keyed(&mut lines, "nodes")?;
        let nodes = nodes.parse().map_err(|_| Error::parse(nl, "bad node count"))?;
        let verdict = match verdict.split_once(' ').map_or((verdict.as_str(), ""), |(a, b)| (a, b)) {
            ("choosable", _) => {
                let (wl, count) = keyed(&mut lines, "witness")?;
                let n: usize = count.parse().map_err(|_| Error::parse(wl, "bad witness size"))?;
                let mut vectors = Vec::with_capacity(n);
                for v in 0..n {
                    let (ln, head) = keyed(&mut lines, "v")?;
                    if head != v.to_string() {
                        return Err(Error::parse(ln, format!("expected `v {v}`")));
                    }
                    let (rl, row) = lines.next().ok_or_else(|| Error::parse(ln, "missing row"))?;
                    let len = row.split_whitespace().count();
                    vectors.push(Vector::parse_row(field, row, len).map_err(|e| Error::parse(rl, e.to_string()))?);
                }
                Verdict::Choosable(Choice::new(vectors))
            }
            ("no_choice", "") => Verdict::NoChoice,
            ("inconclusive", why) => Verdict::Inconclusive(why.to_string()),
            _ => return Err(Error::parse(vl, format!("unknown verdict `{verdict}`"))),
        };
        Ok(SearchCertificate {
            verdict,
            field,
            nodes,
            order,
            seed,
        })
    }
}

fn keyed<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str) -> Result<(usize, String)> {
    let (ln, line) = lines
        .next()
        .ok_or_else(|| Error::parse(0, format!("missing `{key}` line")))?;
    let rest = line
        .strip_prefix(key)
        .filter(|r| r.is_empty() || r.starts_with(' '))
        .ok_or_else(|| Error::parse(ln, format!("expected `{key}`")))?;
    Ok((ln, rest.trim().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let f = FieldSpec::prime(3).unwrap();
        let c = Choice::new(vec![Vector::from_i64s(f, &[1, 2]), Vector::from_i64s(f, &[0, 1])]);
        for verdict in [
            Verdict::Choosable(c),
            Verdict::NoChoice,
            Verdict::Inconclusive("time budget exhausted".into()),
        ] {
            let cert = SearchCertificate {
                verdict,
                field: f,
                nodes: 17,
                order: "mrv/degree".into(),
                seed: 5,
            };
            assert_eq!(SearchCertificate::parse(&cert.to_text()).unwrap(), cert);
        }
    }

    #[test]
    fn rejects_unknown_verdict() {
        assert!(SearchCertificate::parse("verdict maybe\nfield 2\nseed 0\norder x\nnodes 0\n").is_err());
    }
}
