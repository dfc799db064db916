//! Valencies, per-pair statistics, valency point sets, and orbit averages.
//!
//! The valency of a candidate counts the pairs it loses, with undecided
//! pairs counted half. Over ordered pairs, the loser/winner valency pairs
//! form planar point sets whose shifted convex hulls drive the realizability
//! certificate; the per-pair statistic identity lets the stabilizer average
//! of a voter orbit be read off from two counts instead of enumerated.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::choice::{check_stabilizer_cap, ordered_pairs, ChoiceFunction, Permutation};
use crate::error::{Error, Result};
use crate::prob::ProbMatrix;
use crate::rational::{frac, half, in_unit_interval, one, rat, Rational};

pub type Point = (Rational, Rational);

/// A deduplicated set of rational plane points, each keeping every ordered
/// pair that produced it. Points and witness lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PointSet {
    entries: Vec<(Point, Vec<(usize, usize)>)>,
}

impl PointSet {
    fn from_map(map: BTreeMap<Point, BTreeSet<(usize, usize)>>) -> Self {
        PointSet {
            entries: map
                .into_iter()
                .map(|(p, ws)| (p, ws.into_iter().collect()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.entries.binary_search_by(|(q, _)| q.cmp(p)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &[(usize, usize)])> {
        self.entries.iter().map(|(p, ws)| (p, ws.as_slice()))
    }

    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.entries.iter().map(|(p, _)| p)
    }

    /// The lexicographically least witness pair for `p`.
    pub fn least_witness(&self, p: &Point) -> Option<(usize, usize)> {
        self.entries
            .binary_search_by(|(q, _)| q.cmp(p))
            .ok()
            .map(|i| self.entries[i].1[0])
    }
}

/// Valency of `x`: pairs containing `x` that `x` loses, plus half the
/// undecided pairs containing `x`.
pub fn valency(c: &ChoiceFunction, x: usize) -> Rational {
    assert!(x < c.n());
    let mut v = Rational::zero();
    for y in 0..c.n() {
        if y == x {
            continue;
        }
        match c.winner(x, y) {
            Some(w) if w == y => v += one(),
            Some(_) => {}
            None => v += half(),
        }
    }
    v
}

pub fn valencies(c: &ChoiceFunction) -> Vec<Rational> {
    (0..c.n()).map(|x| valency(c, x)).collect()
}

/// Per-candidate valencies plus the valency point sets over ordered pairs,
/// with their shifted variants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValencySignature {
    pub n: usize,
    pub val: Vec<Rational>,
    /// Points `(val(x0), val(x1))` over ordered pairs where `x0` wins.
    pub v0: PointSet,
    /// Points over ordered pairs where `x1` wins.
    pub v1: PointSet,
    /// Points over undecided ordered pairs.
    pub vhalf: PointSet,
    /// `v0` shifted by `-(0, 1)`.
    pub v0star: PointSet,
    /// `v1` shifted by `-(1, 0)`.
    pub v1star: PointSet,
}

pub fn valency_signature(c: &ChoiceFunction) -> ValencySignature {
    let n = c.n();
    let val = valencies(c);
    let mut m0: BTreeMap<Point, BTreeSet<(usize, usize)>> = BTreeMap::new();
    let mut m1: BTreeMap<Point, BTreeSet<(usize, usize)>> = BTreeMap::new();
    let mut mh: BTreeMap<Point, BTreeSet<(usize, usize)>> = BTreeMap::new();
    let mut m0s: BTreeMap<Point, BTreeSet<(usize, usize)>> = BTreeMap::new();
    let mut m1s: BTreeMap<Point, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for (x0, x1) in ordered_pairs(n) {
        let p = (val[x0].clone(), val[x1].clone());
        match c.winner(x0, x1) {
            Some(w) if w == x0 => {
                m0.entry(p.clone()).or_default().insert((x0, x1));
                let shifted = (p.0.clone(), p.1 - one());
                m0s.entry(shifted).or_default().insert((x0, x1));
            }
            Some(_) => {
                m1.entry(p.clone()).or_default().insert((x0, x1));
                let shifted = (p.0 - one(), p.1.clone());
                m1s.entry(shifted).or_default().insert((x0, x1));
            }
            None => {
                mh.entry(p).or_default().insert((x0, x1));
            }
        }
    }
    ValencySignature {
        n,
        val,
        v0: PointSet::from_map(m0),
        v1: PointSet::from_map(m1),
        vhalf: PointSet::from_map(mh),
        v0star: PointSet::from_map(m0s),
        v1star: PointSet::from_map(m1s),
    }
}

/// For a full `c` and an ordered pair `(x, y)`: the side indicator and the
/// two normalized outside counts,
///
/// `side = 1` iff `c{x, y} = y`,
/// `s0 = |{z outside : c{x, z} = z}| / (n - 2)`,
/// `s1 = |{z outside : c{y, z} = z}| / (n - 2)`.
///
/// Equivalently `s0 = (val(x) - side) / (n - 2)` and
/// `s1 = (val(y) - (1 - side)) / (n - 2)`; the test suite holds the two
/// routes equal on every full function at small `n`.
pub fn pair_statistic(c: &ChoiceFunction, x: usize, y: usize) -> Result<(u8, Rational, Rational)> {
    if x == y {
        return Err(Error::SamePair);
    }
    if !c.is_full() {
        return Err(Error::NotFull);
    }
    let n = c.n();
    assert!(x < n && y < n);
    let side = if c.winner(x, y) == Some(y) { 1u8 } else { 0u8 };
    let mut count0 = 0i64;
    let mut count1 = 0i64;
    for z in 0..n {
        if z == x || z == y {
            continue;
        }
        if c.winner(x, z) == Some(z) {
            count0 += 1;
        }
        if c.winner(y, z) == Some(z) {
            count1 += 1;
        }
    }
    let denom = rat(n as i64 - 2);
    Ok((side, rat(count0) / &denom, rat(count1) / &denom))
}

/// The matrix biased at one ordered pair: `t[x][y] = a`, `t[x][z] = s0` and
/// `t[y][z] = s1` for every outside `z`, and 1/2 between outside candidates.
pub fn biased_matrix(
    n: usize,
    x: usize,
    y: usize,
    a: &Rational,
    s0: &Rational,
    s1: &Rational,
) -> Result<ProbMatrix> {
    if x == y {
        return Err(Error::SamePair);
    }
    for &i in &[x, y] {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
    }
    for v in [a, s0, s1] {
        if !in_unit_interval(v) {
            return Err(Error::OutOfUnitInterval(v.to_string()));
        }
    }
    let mut m = ProbMatrix::all_half(n);
    m.set(x, y, a.clone())?;
    for z in 0..n {
        if z != x && z != y {
            m.set(x, z, s0.clone())?;
            m.set(y, z, s1.clone())?;
        }
    }
    Ok(m)
}

/// The biased matrix of a full voter at an ordered pair, via the pair
/// statistic. This is the closed form of `orbit_average(c, [x, y])`.
pub fn biased_matrix_for_pair(c: &ChoiceFunction, x: usize, y: usize) -> Result<ProbMatrix> {
    let (side, s0, s1) = pair_statistic(c, x, y)?;
    biased_matrix(c.n(), x, y, &rat(side as i64), &s0, &s1)
}

/// Exact average of the embedded matrices of `c` over all relabelings fixing
/// every vertex in `fixed` pointwise. Direct stabilizer enumeration.
pub fn orbit_average(c: &ChoiceFunction, fixed: &[usize]) -> Result<ProbMatrix> {
    let n = c.n();
    let fixed: BTreeSet<usize> = fixed.iter().copied().collect();
    for &f in &fixed {
        if f >= n {
            return Err(Error::IndexOutOfRange { index: f, n });
        }
    }
    check_stabilizer_cap(n - fixed.len())?;
    let fixed: Vec<usize> = fixed.into_iter().collect();
    let stab = Permutation::fixing(n, &fixed);
    let w = frac(1, stab.len() as i64);
    let embedded: Vec<ProbMatrix> = stab
        .iter()
        .map(|p| ProbMatrix::of_choice(&c.permuted(p)))
        .collect();
    let parts: Vec<(Rational, &ProbMatrix)> = embedded.iter().map(|m| (w.clone(), m)).collect();
    ProbMatrix::convex_combine(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::{enumerate_all, enumerate_full, pairs};

    fn t3() -> ChoiceFunction {
        ChoiceFunction::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c3() -> ChoiceFunction {
        ChoiceFunction::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn l4() -> ChoiceFunction {
        ChoiceFunction::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn pt(a: i64, b: i64) -> Point {
        (rat(a), rat(b))
    }

    #[test]
    fn valency_counts() {
        let t = t3();
        assert_eq!(valency(&t, 0), rat(2));
        assert_eq!(valency(&t, 2), rat(0));
        for x in 0..3 {
            assert_eq!(valency(&c3(), x), rat(1));
        }
        let single = ChoiceFunction::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(valency(&single, 0), frac(3, 2));
        assert_eq!(valency(&single, 2), rat(1));
    }

    #[test]
    fn valency_sum_is_pair_count() {
        for n in [3usize, 4] {
            let expected = rat((n * (n - 1) / 2) as i64);
            for c in enumerate_all(n) {
                let sum: Rational = valencies(&c).into_iter().sum();
                assert_eq!(sum, expected);
            }
        }
    }

    #[test]
    fn dual_valency_relation_full() {
        for c in enumerate_full(4) {
            let d = c.dual();
            for x in 0..4 {
                assert_eq!(valency(&d, x), rat(3) - valency(&c, x));
            }
        }
    }

    #[test]
    fn valency_is_equivariant() {
        for c in enumerate_all(3) {
            for p in Permutation::all(3) {
                let cp = c.permuted(&p);
                for x in 0..3 {
                    assert_eq!(valency(&cp, p.apply(x)), valency(&c, x));
                }
            }
        }
    }

    #[test]
    fn signature_of_t3() {
        let sig = valency_signature(&t3());
        assert_eq!(sig.val, vec![rat(2), rat(1), rat(0)]);
        let v1: Vec<Point> = sig.v1.points().cloned().collect();
        assert_eq!(v1, vec![pt(1, 0), pt(2, 0), pt(2, 1)]);
        let v1s: Vec<Point> = sig.v1star.points().cloned().collect();
        assert_eq!(v1s, vec![pt(0, 0), pt(1, 0), pt(1, 1)]);
        let v0s: Vec<Point> = sig.v0star.points().cloned().collect();
        assert_eq!(v0s, vec![pt(0, 0), pt(0, 1), pt(1, 1)]);
        assert!(sig.vhalf.is_empty());
        assert_eq!(sig.v1star.least_witness(&pt(1, 1)), Some((0, 1)));
        assert_eq!(sig.v1star.least_witness(&pt(0, 0)), Some((1, 2)));
    }

    #[test]
    fn signature_of_c3_and_empty() {
        let sig = valency_signature(&c3());
        let v1: Vec<Point> = sig.v1.points().cloned().collect();
        assert_eq!(v1, vec![pt(1, 1)]);
        let v1s: Vec<Point> = sig.v1star.points().cloned().collect();
        assert_eq!(v1s, vec![pt(0, 1)]);
        let v0s: Vec<Point> = sig.v0star.points().cloned().collect();
        assert_eq!(v0s, vec![pt(1, 0)]);

        let empty = ChoiceFunction::empty(3).unwrap();
        let sig = valency_signature(&empty);
        assert!(sig.v0.is_empty() && sig.v1.is_empty());
        let vh: Vec<Point> = sig.vhalf.points().cloned().collect();
        assert_eq!(vh, vec![(rat(1), rat(1))]);
    }

    #[test]
    fn flip_symmetry_of_point_sets() {
        for c in enumerate_all(4) {
            let sig = valency_signature(&c);
            for p in sig.v0star.points() {
                assert!(sig.v1star.contains(&(p.1.clone(), p.0.clone())));
            }
            for p in sig.v1star.points() {
                assert!(sig.v0star.contains(&(p.1.clone(), p.0.clone())));
            }
            for p in sig.v0.points() {
                assert!(sig.v1.contains(&(p.1.clone(), p.0.clone())));
            }
        }
    }

    #[test]
    fn pair_statistic_examples() {
        assert_eq!(pair_statistic(&t3(), 0, 1).unwrap(), (1, rat(1), rat(1)));
        assert_eq!(pair_statistic(&t3(), 2, 1).unwrap(), (0, rat(0), rat(0)));
        assert_eq!(pair_statistic(&c3(), 0, 1).unwrap(), (1, rat(0), rat(1)));
        assert_eq!(pair_statistic(&c3(), 0, 0), Err(Error::SamePair));
        let partial = ChoiceFunction::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(pair_statistic(&partial, 0, 1), Err(Error::NotFull));
    }

    #[test]
    fn pair_statistic_matches_valency_formula() {
        for n in [4usize, 5] {
            for c in enumerate_full(n) {
                let val = valencies(&c);
                let denom = rat(n as i64 - 2);
                for (x, y) in ordered_pairs(n) {
                    let (side, s0, s1) = pair_statistic(&c, x, y).unwrap();
                    assert_eq!(s0, (&val[x] - rat(side as i64)) / &denom);
                    assert_eq!(s1, (&val[y] - rat(1 - side as i64)) / &denom);
                }
            }
        }
    }

    #[test]
    fn biased_matrix_examples() {
        let m = biased_matrix(3, 0, 1, &one(), &half(), &half()).unwrap();
        assert_eq!(*m.get(0, 1), one());
        assert_eq!(*m.get(0, 2), half());
        assert_eq!(*m.get(1, 2), half());

        let m = biased_matrix(4, 0, 1, &half(), &half(), &half()).unwrap();
        assert!(m.is_super_balanced());

        let m = biased_matrix(4, 0, 1, &one(), &one(), &one()).unwrap();
        for (x, y) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(*m.get(x, y), one());
        }
        assert_eq!(*m.get(2, 3), half());

        assert!(matches!(
            biased_matrix(3, 0, 1, &rat(2), &half(), &half()),
            Err(Error::OutOfUnitInterval(_))
        ));
    }

    #[test]
    fn orbit_average_trivial_stabilizer() {
        let avg = orbit_average(&t3(), &[0, 1]).unwrap();
        assert_eq!(avg, ProbMatrix::of_choice(&t3()));
    }

    #[test]
    fn orbit_average_l4_example() {
        let avg = orbit_average(&l4(), &[0, 1]).unwrap();
        for (x, y) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(*avg.get(x, y), one());
        }
        assert_eq!(*avg.get(2, 3), half());
    }

    #[test]
    fn orbit_average_equals_biased_matrix() {
        for c in enumerate_full(4) {
            for (x, y) in ordered_pairs(4) {
                assert_eq!(
                    orbit_average(&c, &[x, y]).unwrap(),
                    biased_matrix_for_pair(&c, x, y).unwrap()
                );
            }
        }
    }

    #[test]
    fn orbit_average_three_fixed() {
        // averaging over the stabilizer of three points keeps inside entries
        let avg = orbit_average(&l4(), &[0, 1, 2]).unwrap();
        assert_eq!(*avg.get(0, 1), one());
        assert_eq!(*avg.get(1, 2), one());
    }

    #[test]
    fn signature_row_partition() {
        // every ordered pair lands in exactly one of v0 / v1 / vhalf
        for c in enumerate_all(3) {
            let sig = valency_signature(&c);
            let count = |s: &PointSet| s.iter().map(|(_, ws)| ws.len()).sum::<usize>();
            assert_eq!(count(&sig.v0) + count(&sig.v1) + count(&sig.vhalf), 6);
        }
        let _ = pairs(3);
    }
}
