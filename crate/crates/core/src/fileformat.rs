//! Plain-text tournament and profile files.
//!
//! Both formats are line-based ASCII with LF endings and single-space
//! separators, so profiles stay auditable by eye. A tournament file is a
//! header `n <count>` followed by one directed edge `u v` per line (winner
//! `v`); absent pairs are abstentions. A profile file repeats voter blocks:
//! `voter <multiplicity>` followed by that voter's edge lines, each block
//! terminated by a blank line. Lines starting with `#` are comments.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::choice::{pair_count, ChoiceFunction};
use crate::error::{Error, Result};
use crate::profile::IntegerProfile;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::ParseError {
        line,
        msg: msg.into(),
    }
}

/// Content lines with their 1-based numbers; comments and blanks skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, text: &str) -> Result<usize> {
    let mut parts = text.split(' ');
    if parts.next() != Some("n") {
        return Err(parse_err(line, "expected header 'n <count>'"));
    }
    let n: usize = parts
        .next()
        .ok_or_else(|| parse_err(line, "missing candidate count"))?
        .parse()
        .map_err(|_| parse_err(line, "candidate count is not an integer"))?;
    if parts.next().is_some() {
        return Err(parse_err(line, "trailing tokens after header"));
    }
    if n < 3 {
        return Err(parse_err(line, format!("need at least 3 candidates, got {n}")));
    }
    Ok(n)
}

fn parse_edge(line: usize, text: &str, n: usize) -> Result<(usize, usize)> {
    let mut parts = text.split(' ');
    let mut next_index = |what: &str| -> Result<usize> {
        parts
            .next()
            .ok_or_else(|| parse_err(line, format!("missing {what}")))?
            .parse()
            .map_err(|_| parse_err(line, format!("{what} is not an integer")))
    };
    let u = next_index("edge tail")?;
    let v = next_index("edge head")?;
    if parts.next().is_some() {
        return Err(parse_err(line, "trailing tokens after edge"));
    }
    if u >= n || v >= n {
        return Err(parse_err(line, format!("candidate index out of range 0..{n}")));
    }
    if u == v {
        return Err(parse_err(line, "edge endpoints must differ"));
    }
    Ok((u, v))
}

/// Accumulates edges, rejecting duplicates and conflicts with line numbers.
struct EdgeSet {
    n: usize,
    chosen: Vec<Option<(usize, usize)>>, // per pair slot, the stored edge
}

impl EdgeSet {
    fn new(n: usize) -> Self {
        EdgeSet {
            n,
            chosen: vec![None; pair_count(n)],
        }
    }

    fn add(&mut self, line: usize, edge: (usize, usize)) -> Result<()> {
        let (u, v) = edge;
        let slot = crate::choice::pair_slot(self.n, u.min(v), u.max(v));
        match self.chosen[slot] {
            None => {
                self.chosen[slot] = Some(edge);
                Ok(())
            }
            Some(prev) if prev == edge => Err(parse_err(line, "duplicate edge")),
            Some(_) => Err(parse_err(line, "conflicting edge orientations")),
        }
    }

    fn into_choice(self) -> ChoiceFunction {
        let edges: Vec<(usize, usize)> = self.chosen.into_iter().flatten().collect();
        ChoiceFunction::from_edges(self.n, &edges).expect("edges validated during parsing")
    }
}

/// Parse a tournament file.
pub fn parse_tournament(text: &str) -> Result<ChoiceFunction> {
    let mut lines = content_lines(text);
    let (lno, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let n = parse_header(lno, header)?;
    let mut edges = EdgeSet::new(n);
    for (lno, line) in lines {
        let edge = parse_edge(lno, line, n)?;
        edges.add(lno, edge)?;
    }
    Ok(edges.into_choice())
}

/// Canonical text for a tournament: header plus lexicographically sorted
/// edges.
pub fn render_tournament(c: &ChoiceFunction) -> String {
    let mut out = format!("n {}\n", c.n());
    for (u, v) in c.tor_edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parse a profile file.
pub fn parse_profile(text: &str) -> Result<IntegerProfile> {
    let mut lines = content_lines(text).peekable();
    let (lno, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let n = parse_header(lno, header)?;

    let mut voters: Vec<(ChoiceFunction, BigUint)> = Vec::new();
    while let Some((lno, line)) = lines.next() {
        let mut parts = line.split(' ');
        if parts.next() != Some("voter") {
            return Err(parse_err(lno, "expected 'voter <multiplicity>'"));
        }
        let mult: BigUint = parts
            .next()
            .ok_or_else(|| parse_err(lno, "missing multiplicity"))?
            .parse()
            .map_err(|_| parse_err(lno, "multiplicity is not an integer"))?;
        if parts.next().is_some() {
            return Err(parse_err(lno, "trailing tokens after voter header"));
        }
        if mult.is_zero() {
            return Err(parse_err(lno, "multiplicity must be positive"));
        }
        let mut edges = EdgeSet::new(n);
        while let Some(&(elno, eline)) = lines.peek() {
            if eline.starts_with("voter") {
                break;
            }
            lines.next();
            let edge = parse_edge(elno, eline, n)?;
            edges.add(elno, edge)?;
        }
        voters.push((edges.into_choice(), mult));
    }
    if voters.is_empty() {
        return Err(parse_err(lno, "profile lists no voters"));
    }
    IntegerProfile::new(n, voters)
}

/// Canonical text for a profile: duplicates merged, voters ordered by their
/// decision encoding, blocks blank-line terminated.
pub fn render_profile(p: &IntegerProfile) -> String {
    let mut merged: BTreeMap<ChoiceFunction, BigUint> = BTreeMap::new();
    for (c, m) in p.voters() {
        *merged.entry(c.clone()).or_insert_with(BigUint::zero) += m;
    }
    let mut out = format!("n {}\n", p.n());
    for (c, m) in merged {
        out.push_str(&format!("voter {m}\n"));
        for (u, v) in c.tor_edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::majority_of_integer;

    fn t3() -> ChoiceFunction {
        ChoiceFunction::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c3() -> ChoiceFunction {
        ChoiceFunction::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn tournament_round_trip() {
        let text = render_tournament(&t3());
        assert_eq!(text, "n 3\n0 1\n0 2\n1 2\n");
        assert_eq!(parse_tournament(&text).unwrap(), t3());

        let c = c3();
        assert_eq!(parse_tournament(&render_tournament(&c)).unwrap(), c);

        let empty = ChoiceFunction::empty(4).unwrap();
        assert_eq!(render_tournament(&empty), "n 4\n");
        assert_eq!(parse_tournament("n 4\n").unwrap(), empty);
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let text = "# a remark\n\nn 3\n# another\n0 1\n\n1 2\n";
        let c = parse_tournament(text).unwrap();
        assert_eq!(c.tor_edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_tournament("n 3\n0 0\n").unwrap_err();
        assert!(matches!(e, Error::ParseError { line: 2, .. }));

        let e = parse_tournament("n 3\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::ParseError { line: 3, .. }));

        let e = parse_tournament("n 3\n0 1\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::ParseError { line: 3, .. }));

        let e = parse_tournament("n 3\n0 7\n").unwrap_err();
        assert!(matches!(e, Error::ParseError { line: 2, .. }));

        let e = parse_tournament("m 3\n").unwrap_err();
        assert!(matches!(e, Error::ParseError { line: 1, .. }));

        let e = parse_tournament("n 2\n").unwrap_err();
        assert!(matches!(e, Error::ParseError { line: 1, .. }));

        assert!(parse_tournament("").is_err());
    }

    #[test]
    fn profile_round_trip() {
        let p = IntegerProfile::new(
            3,
            vec![
                (c3(), BigUint::from(2u32)),
                (t3(), BigUint::from(1u32)),
                (c3(), BigUint::from(1u32)),
            ],
        )
        .unwrap();
        let text = render_profile(&p);
        let back = parse_profile(&text).unwrap();
        // canonical form merges the duplicate voter
        assert_eq!(back.voters().len(), 2);
        assert_eq!(back.total(), BigUint::from(4u32));
        assert_eq!(majority_of_integer(&back), majority_of_integer(&p));
        // rendering is idempotent on canonical profiles
        assert_eq!(render_profile(&back), text);
    }

    #[test]
    fn profile_with_abstaining_voter() {
        let text = "n 3\nvoter 2\n0 1\n\nvoter 1\n0 1\n1 2\n0 2\n";
        let p = parse_profile(text).unwrap();
        assert_eq!(p.voters().len(), 2);
        assert!(!p.voters()[0].0.is_full());
    }

    #[test]
    fn profile_parse_errors() {
        let e = parse_profile("n 3\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::ParseError { line: 2, .. }));

        let e = parse_profile("n 3\nvoter 0\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::ParseError { line: 2, .. }));

        let e = parse_profile("n 3\n").unwrap_err();
        assert!(matches!(e, Error::ParseError { .. }));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn profile_parse_render_round_trip(
            n in 3usize..=5,
            picks in proptest::collection::vec((0usize..200, 1u32..5), 1..6),
        ) {
            use crate::choice::enumerate_all;
            let universe = enumerate_all(n);
            let voters: Vec<(ChoiceFunction, BigUint)> = picks
                .iter()
                .map(|&(i, m)| (universe[i % universe.len()].clone(), BigUint::from(m)))
                .collect();
            let p = IntegerProfile::new(n, voters).unwrap();
            let parsed = parse_profile(&render_profile(&p)).unwrap();
            proptest::prop_assert_eq!(&parsed, &p.merged());
            // canonical text is a fixed point
            proptest::prop_assert_eq!(render_profile(&parsed), render_profile(&p));
        }
    }
}
