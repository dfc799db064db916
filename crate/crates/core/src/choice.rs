//! Choice functions on pairs, permutations, and the induced action.
//!
//! A choice function assigns to each unordered pair of candidates a winner
//! from the pair, or leaves the pair undecided (an abstention). Candidates
//! are the indices `0..n`. The associated directed graph has an edge
//! `(x, y)` exactly when `y` is the chosen element of `{x, y}`: edges point
//! at winners.

use std::collections::BTreeSet;
use std::fmt;

use crate::config;
use crate::error::{Error, Result};

/// Slot of the unordered pair `{x, y}` (`x < y`) in triangular layout.
pub(crate) fn pair_slot(n: usize, x: usize, y: usize) -> usize {
    debug_assert!(x < y && y < n);
    x * (2 * n - x - 1) / 2 + (y - x - 1)
}

/// Number of unordered pairs on `n` candidates.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Iterate unordered pairs `(x, y)`, `x < y`, in slot order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
}

/// Iterate ordered pairs `(x, y)`, `x != y`, lexicographically.
pub fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
}

/// A (possibly partial) winner assignment on unordered pairs of `0..n`.
///
/// The derived ordering compares the per-pair digits `undecided < smaller
/// wins < larger wins` slot by slot, which matches the base-3 integer
/// encoding of the decision vector; serializers rely on it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChoiceFunction {
    n: usize,
    decisions: Vec<Option<usize>>,
}

impl ChoiceFunction {
    /// The empty (all-abstaining) function on `n >= 3` candidates.
    pub fn empty(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewCandidates(n));
        }
        Ok(ChoiceFunction {
            n,
            decisions: vec![None; pair_count(n)],
        })
    }

    /// Build from directed edges: edge `(x, y)` records winner `y` on `{x, y}`.
    /// Unlisted pairs stay undecided.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut cf = ChoiceFunction::empty(n)?;
        for &(x, y) in edges {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
            if y >= n {
                return Err(Error::IndexOutOfRange { index: y, n });
            }
            if x == y {
                return Err(Error::SelfPair(x));
            }
            let slot = pair_slot(n, x.min(y), x.max(y));
            match cf.decisions[slot] {
                None => cf.decisions[slot] = Some(y),
                Some(w) if w == y => {} // repeated edge, set semantics
                Some(_) => return Err(Error::ConflictingEdge(x.min(y), x.max(y))),
            }
        }
        Ok(cf)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Winner of `{x, y}`, or `None` when the pair is undecided.
    /// Panics when `x == y` or an index is out of range.
    pub fn winner(&self, x: usize, y: usize) -> Option<usize> {
        assert!(x != y && x < self.n && y < self.n);
        self.decisions[pair_slot(self.n, x.min(y), x.max(y))]
    }

    pub fn is_full(&self) -> bool {
        self.decisions.iter().all(|d| d.is_some())
    }

    /// Number of decided pairs.
    pub fn decided_count(&self) -> usize {
        self.decisions.iter().filter(|d| d.is_some()).count()
    }

    /// Directed edges `(x, y)` with winner `y`, sorted lexicographically.
    pub fn tor_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.decided_count());
        for (x, y) in pairs(self.n) {
            match self.decisions[pair_slot(self.n, x, y)] {
                Some(w) if w == y => edges.push((x, y)),
                Some(_) => edges.push((y, x)),
                None => {}
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Same domain, every decided winner flipped.
    pub fn dual(&self) -> Self {
        let mut decisions = self.decisions.clone();
        for (x, y) in pairs(self.n) {
            let slot = pair_slot(self.n, x, y);
            decisions[slot] = decisions[slot].map(|w| if w == x { y } else { x });
        }
        ChoiceFunction {
            n: self.n,
            decisions,
        }
    }

    /// Relabel candidates: the result `c'` satisfies
    /// `c'{p(x), p(y)} = p(y)  iff  c{x, y} = y`.
    pub fn permuted(&self, p: &Permutation) -> Self {
        assert_eq!(p.n(), self.n);
        let mut out = ChoiceFunction {
            n: self.n,
            decisions: vec![None; pair_count(self.n)],
        };
        for (x, y) in pairs(self.n) {
            if let Some(w) = self.decisions[pair_slot(self.n, x, y)] {
                let (px, py) = (p.apply(x), p.apply(y));
                let pw = p.apply(w);
                out.decisions[pair_slot(self.n, px.min(py), px.max(py))] = Some(pw);
            }
        }
        out
    }
}

impl fmt::Debug for ChoiceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChoiceFunction(n={}, edges={:?})", self.n, self.tor_edges())
    }
}

/// All full choice functions on `n` candidates, in edge-bitmap order.
///
/// Bit `s` of the bitmap is set when the larger element of the pair in slot
/// `s` wins.
pub fn enumerate_full(n: usize) -> Vec<ChoiceFunction> {
    let p = pair_count(n);
    assert!(p < 64, "bitmap enumeration limited to small n");
    let mut out = Vec::with_capacity(1 << p);
    for mask in 0u64..(1 << p) {
        let mut decisions = vec![None; p];
        for (slot, (x, y)) in pairs(n).enumerate() {
            decisions[slot] = Some(if mask >> slot & 1 == 1 { y } else { x });
        }
        out.push(ChoiceFunction { n, decisions });
    }
    out
}

/// All partial choice functions on `n` candidates, in base-3 encoding order
/// (digit 0 = undecided, 1 = smaller wins, 2 = larger wins).
pub fn enumerate_all(n: usize) -> Vec<ChoiceFunction> {
    let p = pair_count(n);
    let total = 3usize.checked_pow(p as u32).expect("enumeration too large");
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0u8; p];
    loop {
        let mut decisions = vec![None; p];
        for (slot, (x, y)) in pairs(n).enumerate() {
            decisions[slot] = match digits[slot] {
                0 => None,
                1 => Some(x),
                _ => Some(y),
            };
        }
        out.push(ChoiceFunction { n, decisions });
        // increment base-3 counter, most significant digit first
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if digits[i] < 2 {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
        }
    }
}

/// A bijection on `0..n`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if seen[v] {
                return Err(Error::RepeatedVertex);
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// All permutations of `0..n` in lexicographic image order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }

    /// The pointwise stabilizer of `fixed`: all permutations with `p(f) = f`
    /// for every `f` in `fixed`, in lexicographic image order.
    pub fn fixing(n: usize, fixed: &[usize]) -> Vec<Permutation> {
        let fixed_set: BTreeSet<usize> = fixed.iter().copied().collect();
        let free: Vec<usize> = (0..n).filter(|v| !fixed_set.contains(v)).collect();
        let mut out = Vec::new();
        let mut assignment = Vec::with_capacity(free.len());
        let mut used = vec![false; free.len()];
        fn rec(
            free: &[usize],
            assignment: &mut Vec<usize>,
            used: &mut Vec<bool>,
            n: usize,
            fixed_set: &BTreeSet<usize>,
            out: &mut Vec<Permutation>,
        ) {
            if assignment.len() == free.len() {
                let mut images: Vec<usize> = (0..n).collect();
                for (i, &pos) in free.iter().enumerate() {
                    images[pos] = free[assignment[i]];
                }
                debug_assert!(fixed_set.iter().all(|&f| images[f] == f));
                out.push(Permutation { images });
                return;
            }
            for j in 0..free.len() {
                if !used[j] {
                    used[j] = true;
                    assignment.push(j);
                    rec(free, assignment, used, n, fixed_set, out);
                    assignment.pop();
                    used[j] = false;
                }
            }
        }
        rec(&free, &mut assignment, &mut used, n, &fixed_set, &mut out);
        out
    }

    /// The lexicographically least permutation (by image sequence) mapping
    /// `from[i]` to `to[i]` for every `i`.
    pub fn least_mapping(n: usize, from: &[usize], to: &[usize]) -> Result<Self> {
        assert_eq!(from.len(), to.len());
        let mut images = vec![usize::MAX; n];
        let mut taken = vec![false; n];
        for (&f, &t) in from.iter().zip(to) {
            if f >= n {
                return Err(Error::IndexOutOfRange { index: f, n });
            }
            if t >= n {
                return Err(Error::IndexOutOfRange { index: t, n });
            }
            if images[f] != usize::MAX || taken[t] {
                return Err(Error::RepeatedVertex);
            }
            images[f] = t;
            taken[t] = true;
        }
        for i in 0..n {
            if images[i] == usize::MAX {
                let v = (0..n).find(|&v| !taken[v]).expect("value available");
                images[i] = v;
                taken[v] = true;
            }
        }
        Ok(Permutation { images })
    }
}

/// Whether a whole-orbit enumeration over `n` candidates is permitted.
pub(crate) fn check_orbit_cap(n: usize) -> Result<()> {
    let cap = config::orbit_cap();
    if n > cap {
        Err(Error::OrbitTooLarge(n, cap))
    } else {
        Ok(())
    }
}

/// Whether a stabilizer enumeration over `free` unfixed candidates is
/// permitted (`free! <= (cap - 2)!`).
pub(crate) fn check_stabilizer_cap(free: usize) -> Result<()> {
    let cap = config::orbit_cap();
    if free + 2 > cap {
        Err(Error::OrbitTooLarge(free + 2, cap))
    } else {
        Ok(())
    }
}

/// The orbit of `d` under all relabelings: the minimal symmetric family
/// containing `d`, deduplicated and sorted.
pub fn sym_closure(d: &ChoiceFunction) -> Result<Vec<ChoiceFunction>> {
    check_orbit_cap(d.n())?;
    let mut orbit = BTreeSet::new();
    for p in Permutation::all(d.n()) {
        orbit.insert(d.permuted(&p));
    }
    Ok(orbit.into_iter().collect())
}
